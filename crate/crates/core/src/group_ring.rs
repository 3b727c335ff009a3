//! The group ring Z/2^m[Q_n(G)] and permutation modules Z/2^m[Q_n / H].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quotient::{project_named, CosetSpace, QuotientElement, QuotientGroup};
use crate::stabilizer::{Group, Named};
use crate::witt::{inv_odd_u64, mask};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RingDescriptor {
    pub group: Group,
    pub level: u32,
    /// Coefficients live in Z/2^bits.
    pub bits: u32,
}

impl RingDescriptor {
    pub fn new(group: Group, level: u32, bits: u32) -> RingDescriptor {
        assert!((1..=63).contains(&bits), "coefficient bits must be in 1..=63");
        RingDescriptor { group, level, bits }
    }

    pub fn modulus_mask(&self) -> u64 {
        mask(self.bits)
    }
}

/// A finitely supported sum of quotient elements with coefficients mod 2^m.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    desc: RingDescriptor,
    terms: BTreeMap<u64, u64>,
}

impl GroupRingElement {
    pub fn zero(desc: RingDescriptor) -> GroupRingElement {
        GroupRingElement { desc, terms: BTreeMap::new() }
    }

    pub fn one(desc: RingDescriptor) -> GroupRingElement {
        GroupRingElement::monomial(desc, &QuotientElement::identity(desc.group, desc.level), 1)
    }

    pub fn monomial(desc: RingDescriptor, q: &QuotientElement, c: i64) -> GroupRingElement {
        assert_eq!((q.group(), q.level()), (desc.group, desc.level), "element outside the ring");
        let mut x = GroupRingElement::zero(desc);
        x.add_term(q.key(), c as u64);
        x
    }

    pub fn of(q: &QuotientElement, bits: u32) -> GroupRingElement {
        GroupRingElement::monomial(RingDescriptor::new(q.group(), q.level(), bits), q, 1)
    }

    /// The image of a named element.
    pub fn named(desc: RingDescriptor, name: Named) -> Result<GroupRingElement> {
        let q = project_named(name, desc.group, desc.level)?;
        Ok(GroupRingElement::monomial(desc, &q, 1))
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.desc
    }

    fn add_term(&mut self, key: u64, c: u64) {
        let m = self.desc.modulus_mask();
        let e = self.terms.entry(key).or_insert(0);
        *e = e.wrapping_add(c) & m;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Terms (element, coefficient), sorted by packed key.
    pub fn terms(&self) -> impl Iterator<Item = (QuotientElement, u64)> + '_ {
        let d = self.desc;
        self.terms.iter().map(move |(&k, &c)| (QuotientElement::from_key(d.group, d.level, k), c))
    }

    /// Terms sorted by digit string, the canonical order for output.
    pub fn sorted_terms(&self) -> Vec<(QuotientElement, u64)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by_cached_key(|(q, _)| q.digits());
        t
    }

    pub fn coeff(&self, q: &QuotientElement) -> u64 {
        self.terms.get(&q.key()).copied().unwrap_or(0)
    }

    pub fn check_compatible(&self, o: &GroupRingElement) -> Result<()> {
        if self.desc != o.desc {
            return Err(Error::DescriptorMismatch(format!("{:?} vs {:?}", self.desc, o.desc)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_compatible(o)?;
        let mut out = self.clone();
        for (&k, &c) in &o.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &GroupRingElement) -> Result<GroupRingElement> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_compatible(o)?;
        let m = self.desc.modulus_mask();
        let mut acc: HashMap<u64, u64> = HashMap::new();
        for (g, a) in self.terms() {
            for (h, b) in o.terms() {
                let e = acc.entry(g.mul(&h).key()).or_insert(0);
                *e = e.wrapping_add(a.wrapping_mul(b));
            }
        }
        let terms = acc.into_iter().map(|(k, c)| (k, c & m)).filter(|(_, c)| *c != 0).collect();
        Ok(GroupRingElement { desc: self.desc, terms })
    }

    fn neg_ref(&self) -> GroupRingElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.desc);
        for (&key, &c) in &self.terms {
            out.add_term(key, c.wrapping_mul(k as u64));
        }
        out
    }

    /// Multiply by the inverse of an odd integer.
    pub fn div_odd(&self, k: i64) -> GroupRingElement {
        assert!(k % 2 != 0, "{k} is not invertible mod 2");
        self.scale(inv_odd_u64(k as u64) as i64)
    }

    pub fn augmentation(&self) -> u64 {
        self.terms.values().fold(0u64, |a, c| a.wrapping_add(*c)) & self.desc.modulus_mask()
    }

    pub fn left_mul(&self, q: &QuotientElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.desc);
        for (g, c) in self.terms() {
            out.add_term(q.mul(&g).key(), c);
        }
        out
    }

    pub fn right_mul(&self, q: &QuotientElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.desc);
        for (g, c) in self.terms() {
            out.add_term(g.mul(q).key(), c);
        }
        out
    }

    /// q x q^-1.
    pub fn conj_by(&self, q: &QuotientElement) -> GroupRingElement {
        let qi = q.inv();
        let mut out = GroupRingElement::zero(self.desc);
        for (g, c) in self.terms() {
            out.add_term(q.mul(&g).mul(&qi).key(), c);
        }
        out
    }

    /// x + w x w^-1 + w^-1 x w.
    pub fn tr_c3(&self) -> Result<GroupRingElement> {
        let w = project_named(Named::Omega, self.desc.group, self.desc.level)?;
        let w2 = w.mul(&w);
        self.try_add(&self.conj_by(&w))?.try_add(&self.conj_by(&w2))
    }

    /// Reduce coefficients to Z/2^bits.
    pub fn reduce_bits(&self, bits: u32) -> GroupRingElement {
        assert!(bits <= self.desc.bits);
        let desc = RingDescriptor { bits, ..self.desc };
        let mut out = GroupRingElement::zero(desc);
        for (&k, &c) in &self.terms {
            out.add_term(k, c);
        }
        out
    }

    /// Push forward along Q_n -> Q_k.
    pub fn reduce_level(&self, level: u32) -> GroupRingElement {
        let desc = RingDescriptor { level, ..self.desc };
        let mut out = GroupRingElement::zero(desc);
        for (g, c) in self.terms() {
            out.add_term(g.reduce_to(level).key(), c);
        }
        out
    }

    /// Dense coefficient vector indexed by `group`.
    pub fn to_dense(&self, group: &QuotientGroup) -> Vec<u64> {
        let mut v = vec![0; group.len()];
        for (g, c) in self.terms() {
            v[group.index_of(&g).expect("support inside the enumerated group")] = c;
        }
        v
    }

    pub fn from_dense(desc: RingDescriptor, group: &QuotientGroup, v: &[u64]) -> GroupRingElement {
        let mut out = GroupRingElement::zero(desc);
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                out.add_term(group.element(i).key(), c);
            }
        }
        out
    }

    /// Sum of all elements of a finite subgroup.
    pub fn sum_of(desc: RingDescriptor, elements: &[QuotientElement]) -> GroupRingElement {
        let mut out = GroupRingElement::zero(desc);
        for g in elements {
            out.add_term(g.key(), 1);
        }
        out
    }

    /// Left action on a permutation module.
    pub fn act(&self, v: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero(v.space.clone(), v.bits);
        let m = mask(v.bits);
        for (c, &vc) in v.coeffs.iter().enumerate() {
            if vc == 0 {
                continue;
            }
            let rep = v.space.representative(c);
            for (g, a) in self.terms() {
                let t = v.space.coset_of(&g.mul(&rep));
                out.coeffs[t] = out.coeffs[t].wrapping_add(a.wrapping_mul(vc)) & m;
            }
        }
        out
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.sorted_terms().iter().map(|(q, c)| format!("{c}*[{}]", q.digit_string())).collect();
        write!(
            f,
            "{{{}}} in Z/2^{}[Q{}({})]",
            parts.join(" + "),
            self.desc.bits,
            self.desc.level,
            self.desc.group.name()
        )
    }
}

macro_rules! ring_op {
    ($tr:ident, $m:ident, $call:ident) => {
        impl $tr<&GroupRingElement> for &GroupRingElement {
            type Output = GroupRingElement;
            /// Panics when the descriptors differ; use the `try_` form to get an error instead.
            fn $m(self, o: &GroupRingElement) -> GroupRingElement {
                self.$call(o).expect("group ring descriptors agree")
            }
        }
        impl $tr<GroupRingElement> for GroupRingElement {
            type Output = GroupRingElement;
            fn $m(self, o: GroupRingElement) -> GroupRingElement {
                (&self).$call(&o).expect("group ring descriptors agree")
            }
        }
        impl $tr<&GroupRingElement> for GroupRingElement {
            type Output = GroupRingElement;
            fn $m(self, o: &GroupRingElement) -> GroupRingElement {
                (&self).$call(o).expect("group ring descriptors agree")
            }
        }
        impl $tr<GroupRingElement> for &GroupRingElement {
            type Output = GroupRingElement;
            fn $m(self, o: GroupRingElement) -> GroupRingElement {
                self.$call(&o).expect("group ring descriptors agree")
            }
        }
    };
}

ring_op!(Add, add, try_add);
ring_op!(Sub, sub, try_sub);
ring_op!(Mul, mul, try_mul);

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.neg_ref()
    }
}

impl Neg for GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.neg_ref()
    }
}

/// An element of Z/2^m[G/H], dense over the cosets.
#[derive(Clone, Debug)]
pub struct ModuleElement {
    space: Arc<CosetSpace>,
    bits: u32,
    coeffs: Vec<u64>,
}

impl PartialEq for ModuleElement {
    fn eq(&self, o: &ModuleElement) -> bool {
        self.bits == o.bits && self.space.len() == o.space.len() && self.coeffs == o.coeffs
    }
}

impl Eq for ModuleElement {}

impl ModuleElement {
    pub fn zero(space: Arc<CosetSpace>, bits: u32) -> ModuleElement {
        let n = space.len();
        ModuleElement { space, bits, coeffs: vec![0; n] }
    }

    pub fn basis(space: Arc<CosetSpace>, bits: u32, c: usize) -> ModuleElement {
        let mut v = ModuleElement::zero(space, bits);
        v.coeffs[c] = 1;
        v
    }

    /// The generator eH.
    pub fn generator(space: Arc<CosetSpace>, bits: u32) -> ModuleElement {
        let c = space.base();
        ModuleElement::basis(space, bits, c)
    }

    pub fn from_coeffs(space: Arc<CosetSpace>, bits: u32, coeffs: Vec<u64>) -> ModuleElement {
        assert_eq!(coeffs.len(), space.len());
        let m = mask(bits);
        ModuleElement { space, bits, coeffs: coeffs.into_iter().map(|c| c & m).collect() }
    }

    pub fn space(&self) -> &Arc<CosetSpace> {
        &self.space
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn augmentation(&self) -> u64 {
        self.coeffs.iter().fold(0u64, |a, c| a.wrapping_add(*c)) & mask(self.bits)
    }

    pub fn add(&self, o: &ModuleElement) -> ModuleElement {
        assert!(Arc::ptr_eq(&self.space, &o.space) || self.space.len() == o.space.len());
        let m = mask(self.bits);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.wrapping_add(*b) & m).collect();
        ModuleElement { space: self.space.clone(), bits: self.bits, coeffs }
    }

    pub fn scale(&self, k: i64) -> ModuleElement {
        let m = mask(self.bits);
        let coeffs = self.coeffs.iter().map(|a| a.wrapping_mul(k as u64) & m).collect();
        ModuleElement { space: self.space.clone(), bits: self.bits, coeffs }
    }

    pub fn sub(&self, o: &ModuleElement) -> ModuleElement {
        self.add(&o.scale(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::{generated_subgroup, DEFAULT_SIZE_CAP};
    use proptest::prelude::*;

    fn setup(level: u32) -> (RingDescriptor, QuotientGroup) {
        let q = QuotientGroup::enumerate(Group::S21, level, DEFAULT_SIZE_CAP).unwrap();
        (RingDescriptor::new(Group::S21, level, 3), q)
    }

    fn random_element(desc: RingDescriptor, q: &QuotientGroup, picks: &[(usize, i64)]) -> GroupRingElement {
        picks.iter().fold(GroupRingElement::zero(desc), |acc, (i, c)| {
            acc + GroupRingElement::monomial(desc, &q.element(i % q.len()), *c)
        })
    }

    #[test]
    fn trace_of_identity_is_three() {
        let (desc, _) = setup(4);
        assert_eq!(GroupRingElement::one(desc).tr_c3().unwrap(), GroupRingElement::one(desc).scale(3));
        let i = GroupRingElement::named(desc, Named::I).unwrap();
        let want = i.clone()
            + GroupRingElement::named(desc, Named::J).unwrap()
            + GroupRingElement::named(desc, Named::K).unwrap();
        assert_eq!(i.tr_c3().unwrap(), want);
    }

    #[test]
    fn mismatched_descriptors_are_rejected() {
        let (desc, _) = setup(4);
        let other = RingDescriptor { bits: 2, ..desc };
        let r = GroupRingElement::one(desc).try_mul(&GroupRingElement::one(other));
        assert!(matches!(r, Err(Error::DescriptorMismatch(_))));
    }

    #[test]
    fn module_action_respects_products() {
        let (desc, q) = setup(5);
        let q = Arc::new(q);
        let p = |n| project_named(n, Group::S21, 5).unwrap();
        let c6 = generated_subgroup(&[p(Named::I).pow(2), p(Named::Omega)], Group::S21, 5, 100).unwrap();
        let space = Arc::new(CosetSpace::new(q.clone(), Arc::new(c6)).unwrap());
        let x = GroupRingElement::named(desc, Named::Alpha).unwrap() - GroupRingElement::one(desc);
        let y = GroupRingElement::named(desc, Named::J).unwrap().scale(3) + GroupRingElement::one(desc);
        let v = ModuleElement::generator(space, 3);
        assert_eq!((&x * &y).act(&v), x.act(&y.act(&v)));
        assert_eq!(x.act(&v).augmentation(), 0);
    }

    proptest! {
        #[test]
        fn ring_axioms(a in proptest::collection::vec((0usize..384, -9i64..9), 0..6),
                       b in proptest::collection::vec((0usize..384, -9i64..9), 0..6),
                       c in proptest::collection::vec((0usize..384, -9i64..9), 0..6)) {
            let (desc, q) = setup(5);
            let (x, y, z) = (random_element(desc, &q, &a), random_element(desc, &q, &b), random_element(desc, &q, &c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            let ax = x.augmentation().wrapping_mul(y.augmentation()) & 7;
            prop_assert_eq!((&x * &y).augmentation(), ax);
            prop_assert_eq!(x.tr_c3().unwrap().augmentation(), x.augmentation().wrapping_mul(3) & 7);
        }
    }
}
