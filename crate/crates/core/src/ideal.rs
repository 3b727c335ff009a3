//! Left ideals of Z/2^m[Q_n(S21)] built from augmentation ideals, and
//! congruence testing modulo them.
//!
//! When an ideal contains Z[G] I(N) for N = F_{k/2} (the kernel of Z[Q_n] -> Z[Q_k]),
//! it is the preimage of its image in Z[Q_k], so spans are computed there. Two
//! sources of such N are recognised: a summand I(F_{k/2}) with k >= 3, and a
//! pair of summands 2 and I(H)^2 for a normal subgroup H. In the second case
//! e - h^2 = 2(e - h) - (e - h)^2 lies in (2, I(H)^2), so I(P) does too for the
//! subgroup P = <h^2 : h in H> (which contains [H, H] and is normal), and any
//! F_{k/2} inside P can be factored out.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group_ring::{GroupRingElement, RingDescriptor};
use crate::howell::{SpanBuilder, Submodule};
use crate::quotient::{generated_subgroup, QuotientElement, QuotientGroup, DEFAULT_SIZE_CAP};
use crate::stabilizer::{digits_in_k, Group};

/// Subgroups of S21 whose augmentation ideals appear in the ideal specs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SubgroupRef {
    S21,
    /// The pro-2 Sylow subgroup F_{1/2} S21.
    Sylow,
    K1,
    /// F_{k/2} S21.
    Filtration(u32),
    /// F_{k/2} K1.
    FiltrationK1(u32),
}

impl SubgroupRef {
    pub fn elements(self, q: &QuotientGroup) -> QuotientGroup {
        match self {
            SubgroupRef::S21 => q.clone(),
            SubgroupRef::Sylow => q.filtration_subgroup(1),
            SubgroupRef::K1 => q.filter(|x| digits_in_k(&x.digits())),
            SubgroupRef::Filtration(k) => q.filtration_subgroup(k),
            SubgroupRef::FiltrationK1(k) => q.filter(|x| x.in_filtration(k) && digits_in_k(&x.digits())),
        }
    }

    /// F_{k/2} with k >= 3 lies inside K1, so both spellings give the same normal subgroup.
    fn deep_filtration(self) -> Option<u32> {
        match self {
            SubgroupRef::Filtration(k) | SubgroupRef::FiltrationK1(k) if k >= 3 => Some(k),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IdealSpec {
    /// The ideal (2^a).
    Scalar(u32),
    /// The left ideal generated by I(H).
    Aug(SubgroupRef),
    /// First factor times augmentation ideals, multiplied on the right one at a time.
    Product(Box<IdealSpec>, Vec<SubgroupRef>),
    /// 2^a times an ideal.
    Scaled(u32, Box<IdealSpec>),
    Sum(Vec<IdealSpec>),
}

impl IdealSpec {
    pub fn aug(h: SubgroupRef) -> IdealSpec {
        IdealSpec::Aug(h)
    }

    /// I(H)^k.
    pub fn aug_power(h: SubgroupRef, k: usize) -> IdealSpec {
        assert!(k >= 1);
        if k == 1 {
            IdealSpec::Aug(h)
        } else {
            IdealSpec::Product(Box::new(IdealSpec::Aug(h)), vec![h; k - 1])
        }
    }

    pub fn product(first: IdealSpec, rest: &[SubgroupRef]) -> IdealSpec {
        IdealSpec::Product(Box::new(first), rest.to_vec())
    }

    pub fn scaled(a: u32, i: IdealSpec) -> IdealSpec {
        IdealSpec::Scaled(a, Box::new(i))
    }

    fn summands(&self) -> Vec<&IdealSpec> {
        match self {
            IdealSpec::Sum(v) => v.iter().collect(),
            other => vec![other],
        }
    }

    /// (2, I(S21)^2).
    pub fn two_and_aug_squared() -> IdealSpec {
        IdealSpec::Sum(vec![IdealSpec::Scalar(1), IdealSpec::aug_power(SubgroupRef::S21, 2)])
    }

    /// (I F_{4/2}K1, I(F_{3/2}K1) I(S21), I(K1)^7, 2 I(K1)^3, 4 I(K1), 8).
    pub fn beta_ideal() -> IdealSpec {
        IdealSpec::Sum(vec![
            IdealSpec::Aug(SubgroupRef::FiltrationK1(4)),
            IdealSpec::product(IdealSpec::Aug(SubgroupRef::FiltrationK1(3)), &[SubgroupRef::S21]),
            IdealSpec::aug_power(SubgroupRef::K1, 7),
            IdealSpec::scaled(1, IdealSpec::aug_power(SubgroupRef::K1, 3)),
            IdealSpec::scaled(2, IdealSpec::Aug(SubgroupRef::K1)),
            IdealSpec::Scalar(3),
        ])
    }

    /// ((IK1)^7, 2(IK1)^3, 4 IK1, 8).
    pub fn certificate_ideal() -> IdealSpec {
        IdealSpec::Sum(vec![
            IdealSpec::aug_power(SubgroupRef::K1, 7),
            IdealSpec::scaled(1, IdealSpec::aug_power(SubgroupRef::K1, 3)),
            IdealSpec::scaled(2, IdealSpec::Aug(SubgroupRef::K1)),
            IdealSpec::Scalar(3),
        ])
    }
}

/// The subgroup <h^2 : h in H>; for a 2-group this is the Frattini subgroup.
pub fn square_subgroup(p: &QuotientGroup) -> Result<QuotientGroup> {
    let squares: Vec<QuotientElement> = {
        let mut seen = HashSet::new();
        p.elements().iter().map(|x| x.mul(x)).filter(|s| seen.insert(*s)).collect()
    };
    generated_subgroup(&squares, p.group(), p.level(), DEFAULT_SIZE_CAP)
}

/// A computed ideal: a Howell basis in Z/2^m[Q_k] for the reduction level k.
#[derive(Clone, Debug)]
pub struct IdealSpan {
    pub level: u32,
    pub reduced_level: u32,
    pub bits: u32,
    group: Arc<QuotientGroup>,
    pub submodule: Submodule,
}

impl IdealSpan {
    pub fn contains(&self, x: &GroupRingElement) -> Result<bool> {
        let d = x.descriptor();
        if d.level != self.level || d.bits != self.bits || d.group != Group::S21 {
            return Err(Error::DescriptorMismatch(format!("{d:?} for an ideal at level {}", self.level)));
        }
        let v = x.reduce_level(self.reduced_level).to_dense(&self.group);
        Ok(self.submodule.contains(&v))
    }

    pub fn log2_size(&self) -> u64 {
        self.submodule.log2_size()
    }
}

/// Choose the level at which the ideal can be computed exactly.
pub fn reduction_level(spec: &IdealSpec, q: &QuotientGroup) -> Result<u32> {
    let n = q.level();
    let mut k = n;
    let parts = spec.summands();
    for part in &parts {
        if let IdealSpec::Aug(h) = part {
            if let Some(d) = h.deep_filtration() {
                k = k.min(d);
            }
        }
    }
    let has_two = parts.iter().any(|p| matches!(p, IdealSpec::Scalar(a) if *a <= 1));
    let squared = parts.iter().find_map(|p| match p {
        IdealSpec::Product(first, rest) => match (&**first, rest.as_slice()) {
            (IdealSpec::Aug(h), [h2])
                if h == h2 && matches!(h, SubgroupRef::S21 | SubgroupRef::Sylow | SubgroupRef::K1) =>
            {
                Some(*h)
            }
            _ => None,
        },
        _ => None,
    });
    if let (true, Some(h)) = (has_two, squared) {
        let p = square_subgroup(&h.elements(q))?;
        if let Some(d) = (3..k).find(|&d| q.filtration_subgroup(d).is_subgroup_of(&p)) {
            k = d;
        }
    }
    Ok(k.max(3))
}

struct Ctx<'a> {
    q: &'a QuotientGroup,
    bits: u32,
}

impl Ctx<'_> {
    fn dim(&self) -> usize {
        self.q.len()
    }

    fn unit(&self, i: usize, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[i] = c;
        v
    }

    fn right_table(&self, h: &QuotientElement) -> Vec<usize> {
        self.q.elements().iter().map(|x| self.q.index_of(&x.mul(h)).unwrap()).collect()
    }

    fn span(&self, spec: &IdealSpec) -> Submodule {
        let m = crate::witt::mask(self.bits);
        let dim = self.dim();
        match spec {
            IdealSpec::Scalar(a) => {
                if *a >= self.bits {
                    return Submodule::zero(dim, self.bits);
                }
                Submodule::span(dim, self.bits, (0..dim).map(|i| self.unit(i, 1 << a)))
            }
            IdealSpec::Aug(h) => {
                let hs = h.elements(self.q);
                let gens = hs.generators();
                let mut b = SpanBuilder::new(dim, self.bits);
                for g in &gens {
                    for x in self.q.elements() {
                        // x (e - g)
                        let xi = self.q.index_of(x).unwrap();
                        let xg = self.q.index_of(&x.mul(g)).unwrap();
                        let mut v = vec![0u64; dim];
                        v[xi] = 1;
                        v[xg] = v[xg].wrapping_sub(1) & m;
                        b.push(v);
                    }
                }
                b.finish()
            }
            IdealSpec::Scaled(a, inner) => {
                let s = self.span(inner);
                if *a >= self.bits {
                    return Submodule::zero(dim, self.bits);
                }
                Submodule::span(dim, self.bits, s.rows().iter().map(|r| r.iter().map(|x| (x << a) & m).collect()))
            }
            IdealSpec::Sum(parts) => {
                let mut b = SpanBuilder::new(dim, self.bits);
                for p in parts {
                    for r in self.span(p).rows() {
                        b.push(r.clone());
                    }
                }
                b.finish()
            }
            IdealSpec::Product(first, rest) => {
                let mut cur = self.span(first);
                for h in rest {
                    let hs = h.elements(self.q);
                    let tables: Vec<Vec<usize>> = hs.elements().iter().map(|x| self.right_table(x)).collect();
                    let mut b = SpanBuilder::new(dim, self.bits);
                    for r in cur.rows() {
                        for t in &tables {
                            // r (e - h): coefficient of x h gets -r[x]
                            let mut v = r.clone();
                            for (x, &c) in r.iter().enumerate() {
                                if c != 0 {
                                    v[t[x]] = v[t[x]].wrapping_sub(c) & m;
                                }
                            }
                            b.push(v);
                        }
                    }
                    cur = b.finish();
                }
                cur
            }
        }
    }
}

/// Span of the ideal inside Z/2^m[Q_n(S21)] with Q_n given by `q`.
pub fn ideal_span(spec: &IdealSpec, q: &QuotientGroup, bits: u32) -> Result<IdealSpan> {
    if q.group() != Group::S21 {
        return Err(Error::DescriptorMismatch("ideals are taken in the group ring of S21".into()));
    }
    let k = reduction_level(spec, q)?;
    ideal_span_at(spec, q, bits, k)
}

/// As `ideal_span` but with an explicit reduction level (k = n disables reduction).
pub fn ideal_span_at(spec: &IdealSpec, q: &QuotientGroup, bits: u32, k: u32) -> Result<IdealSpan> {
    let qk = if k == q.level() {
        Arc::new(q.clone())
    } else {
        Arc::new(QuotientGroup::enumerate(Group::S21, k, DEFAULT_SIZE_CAP)?)
    };
    let sub = Ctx { q: &qk, bits }.span(spec);
    Ok(IdealSpan { level: q.level(), reduced_level: k, bits, group: qk, submodule: sub })
}

/// x - y in the ideal.
pub fn congruent_mod(x: &GroupRingElement, y: &GroupRingElement, ideal: &IdealSpan) -> Result<bool> {
    ideal.contains(&x.try_sub(y)?)
}

/// Convenience: build the descriptor matching an ideal span.
pub fn descriptor_of(ideal: &IdealSpan) -> RingDescriptor {
    RingDescriptor::new(Group::S21, ideal.level, ideal.bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::Named;

    fn q(n: u32) -> QuotientGroup {
        QuotientGroup::enumerate(Group::S21, n, DEFAULT_SIZE_CAP).unwrap()
    }

    fn named(desc: RingDescriptor, n: Named) -> GroupRingElement {
        GroupRingElement::named(desc, n).unwrap()
    }

    #[test]
    fn augmentation_ideal_is_the_kernel_of_augmentation() {
        let g = q(4);
        let span = ideal_span(&IdealSpec::Aug(SubgroupRef::S21), &g, 2).unwrap();
        assert_eq!(span.log2_size(), 2 * (g.len() as u64 - 1));
    }

    #[test]
    fn normal_subgroup_ideal_is_kernel_to_quotient() {
        // Z[G] I(N) has corank |G/N| over Z/2^m.
        let g = q(5);
        let k1 = SubgroupRef::K1.elements(&g);
        let span = ideal_span_at(&IdealSpec::Aug(SubgroupRef::K1), &g, 3, 5).unwrap();
        assert_eq!(span.log2_size(), 3 * (g.len() - g.len() / k1.len()) as u64);
    }

    #[test]
    fn reductions_agree_with_direct_computation() {
        let g = q(4);
        let desc = RingDescriptor::new(Group::S21, 4, 1);
        let spec = IdealSpec::two_and_aug_squared();
        let reduced = ideal_span(&spec, &g, 1).unwrap();
        assert!(reduced.reduced_level < 4);
        let direct = ideal_span_at(&spec, &g, 1, 4).unwrap();
        let one = GroupRingElement::one(desc);
        let samples = [
            one.clone() - named(desc, Named::AlphaI),
            one.clone() - named(desc, Named::Alpha),
            one.clone() + named(desc, Named::I) + named(desc, Named::J) + named(desc, Named::K),
            named(desc, Named::I) - named(desc, Named::J),
            one.clone() - named(desc, Named::AlphaSq),
            one.clone() - named(desc, Named::I),
        ];
        for x in samples.iter() {
            assert_eq!(reduced.contains(x).unwrap(), direct.contains(x).unwrap(), "{x:?}");
        }
        assert!(reduced.contains(&samples[0]).unwrap());
        assert!(!reduced.contains(&samples[1]).unwrap());
        assert!(reduced.contains(&samples[2]).unwrap());

        let beta = IdealSpec::beta_ideal();
        let g5 = q(5);
        let desc5 = RingDescriptor::new(Group::S21, 5, 3);
        let r = ideal_span(&beta, &g5, 3).unwrap();
        assert_eq!(r.reduced_level, 4);
        let d = ideal_span_at(&beta, &g5, 3, 5).unwrap();
        let one5 = GroupRingElement::one(desc5);
        for x in [
            one5.clone() - named(desc5, Named::AlphaSq),
            (one5.clone() - named(desc5, Named::AlphaI)) * (named(desc5, Named::J) - named(desc5, Named::AlphaJ)),
            one5.clone() - named(desc5, Named::AlphaI),
            (one5.clone() - named(desc5, Named::Alpha)).scale(4),
        ] {
            assert_eq!(r.contains(&x).unwrap(), d.contains(&x).unwrap(), "{x:?}");
        }
    }

    #[test]
    fn geometric_sum_identity_mod_eight() {
        // sum_{s<8} x^s = (1-x)^7 + 2x^4(x-1)^3 + 4x^2(x-1) holds in Z/8[x]; check at x = alpha.
        let g = q(6);
        let desc = RingDescriptor::new(Group::S21, 6, 3);
        let x = named(desc, Named::Alpha);
        let one = GroupRingElement::one(desc);
        let pow = |y: &GroupRingElement, k: usize| (0..k).fold(one.clone(), |acc, _| &acc * y);
        let lhs = (0..8).fold(GroupRingElement::zero(desc), |acc, s| acc + pow(&x, s));
        let xm1 = &x - &one;
        let rhs = pow(&(&one - &x), 7) + (pow(&x, 4) * pow(&xm1, 3)).scale(2) + (pow(&x, 2) * xm1).scale(4);
        let eight = ideal_span(&IdealSpec::Scalar(3), &g, 3).unwrap();
        assert!(congruent_mod(&lhs, &rhs, &eight).unwrap());
        assert_eq!(lhs, rhs);
    }
}
