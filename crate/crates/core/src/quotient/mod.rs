//! Finite quotients Q_n(G) = G / F_{n/2}G, their subgroups and coset spaces.
//!
//! An element of Q_n is a unit modulo S^n; it is stored as the residues
//! (a mod 2^ceil(n/2), b mod 2^floor(n/2)) packed into one u64, which is in
//! bijection with the length-n S-digit string.

mod cache;
mod coset;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

pub use cache::{cache_dir_from_env, CACHE_ENV, CACHE_FORMAT_VERSION};
pub use coset::CosetSpace;

use crate::error::{Error, Result};
use crate::order::{witt_precision_for, OrderElement};
use crate::stabilizer::{digits_in_k, named_element, Group, Named};
use crate::witt::{WittNumber, F4};

/// Largest level for which quotient elements can be packed.
pub const MAX_LEVEL: u32 = 32;

/// Default bound on enumerated group sizes.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientElement {
    group: Group,
    level: u8,
    key: u64,
}

fn pack(r: [u64; 4]) -> u64 {
    r[0] | (r[1] << 16) | (r[2] << 32) | (r[3] << 48)
}

fn unpack(k: u64) -> [u64; 4] {
    [k & 0xffff, (k >> 16) & 0xffff, (k >> 32) & 0xffff, k >> 48]
}

fn minimum_level(group: Group) -> u32 {
    match group {
        Group::S2 => 1,
        Group::S21 | Group::K | Group::K1 => 3,
    }
}

pub fn check_level(group: Group, level: u32) -> Result<()> {
    let minimum = minimum_level(group);
    if level < minimum {
        return Err(Error::LevelTooSmall { group, level, minimum });
    }
    if level > MAX_LEVEL {
        return Err(Error::InsufficientPrecision { needed: level, available: MAX_LEVEL });
    }
    Ok(())
}

/// Does the coset g F_{n/2} (g given by its residues mod S^n) meet `group`?
///
/// For the norm condition: det maps F_{n/2}S2 onto 1 + 2^ceil(n/2) Z2, so the
/// coset contains an element of norm +-1 exactly when det(g) = +-1 mod 2^ceil(n/2).
fn coset_meets(group: Group, level: u32, lift: &OrderElement) -> bool {
    if !lift.is_unit() {
        return false;
    }
    if group.inside_k() && !digits_in_k(&lift.digits(3)) {
        return false;
    }
    if group.has_norm_condition() {
        let p = witt_precision_for(level);
        let d = lift.det().truncate(p);
        if d != WittNumber::one(p) && d != -WittNumber::one(p) {
            return false;
        }
    }
    true
}

impl QuotientElement {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn level(&self) -> u32 {
        self.level as u32
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub(crate) fn from_key(group: Group, level: u32, key: u64) -> QuotientElement {
        QuotientElement { group, level: level as u8, key }
    }

    pub fn identity(group: Group, level: u32) -> QuotientElement {
        QuotientElement { group, level: level as u8, key: 1 }
    }

    pub fn is_identity(&self) -> bool {
        self.key == 1
    }

    /// A representative modulo S^(2 ceil(n/2)) whose digits beyond n vanish.
    pub fn lift(&self) -> OrderElement {
        let p = witt_precision_for(self.level as u32);
        let r = unpack(self.key);
        OrderElement::new(WittNumber::from_raw(r[0], r[1], p), WittNumber::from_raw(r[2], r[3], p))
    }

    /// Lift to a larger S-precision with zero digits beyond the level.
    pub fn lift_to(&self, s_precision: u32) -> OrderElement {
        self.lift().extend(s_precision)
    }

    fn from_lift(group: Group, level: u32, g: &OrderElement) -> QuotientElement {
        QuotientElement { group, level: level as u8, key: pack(g.residue_mod_s(level)) }
    }

    pub fn digits(&self) -> Vec<F4> {
        self.lift().digits(self.level as u32)
    }

    pub fn digit_string(&self) -> String {
        self.digits().iter().map(|d| char::from(b'0' + d.code())).collect()
    }

    pub fn from_digits(group: Group, digits: &[F4]) -> Result<QuotientElement> {
        let level = digits.len() as u32;
        check_level(group, level)?;
        let g = OrderElement::from_digits(digits, level);
        project(&g, group, level)
    }

    pub fn mul(&self, o: &QuotientElement) -> QuotientElement {
        debug_assert_eq!((self.group, self.level), (o.group, o.level));
        QuotientElement::from_lift(self.group, self.level as u32, &(self.lift() * o.lift()))
    }

    pub fn inv(&self) -> QuotientElement {
        let g = self.lift().inv().expect("quotient elements are units");
        QuotientElement::from_lift(self.group, self.level as u32, &g)
    }

    pub fn pow(&self, e: i64) -> QuotientElement {
        let g = self.lift().pow(e).expect("quotient elements are units");
        QuotientElement::from_lift(self.group, self.level as u32, &g)
    }

    /// x g x^-1 for x in the same quotient.
    pub fn conj_by(&self, x: &QuotientElement) -> QuotientElement {
        x.mul(self).mul(&x.inv())
    }

    /// Image in a shallower quotient of the same group.
    pub fn reduce_to(&self, level: u32) -> QuotientElement {
        assert!(level <= self.level as u32);
        QuotientElement::from_lift(self.group, level, &self.lift())
    }

    /// View as an element of another group's quotient (no membership check).
    pub fn recast(&self, group: Group) -> QuotientElement {
        QuotientElement { group, ..*self }
    }

    /// Does this element lie in F_{k/2}?
    pub fn in_filtration(&self, k: u32) -> bool {
        let d = self.digits();
        d[0] == F4::ONE && d.iter().take(k as usize).skip(1).all(|x| x.is_zero())
    }
}

impl fmt::Debug for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}({})[{}]", self.level, self.group.name(), self.digit_string())
    }
}

/// The image of g in Q_n(group).
pub fn project(g: &OrderElement, group: Group, level: u32) -> Result<QuotientElement> {
    check_level(group, level)?;
    if g.s_precision() < level {
        return Err(Error::InsufficientPrecision { needed: level, available: g.s_precision() });
    }
    let r = g.residue_mod_s(level);
    let q = QuotientElement { group, level: level as u8, key: pack(r) };
    if !coset_meets(group, level, &q.lift()) {
        return Err(Error::NotInSubgroup(group));
    }
    Ok(q)
}

/// Project a named element.
pub fn project_named(name: Named, group: Group, level: u32) -> Result<QuotientElement> {
    project(&named_element(name, level + 2), group, level)
}

/// A finite group given as a sorted list of quotient elements.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    group: Group,
    level: u32,
    elements: Vec<QuotientElement>,
    index: HashMap<u64, u32>,
}

impl QuotientGroup {
    /// Build from a list of elements (sorted by digit string, duplicates removed).
    pub fn from_elements(group: Group, level: u32, mut elements: Vec<QuotientElement>) -> QuotientGroup {
        elements.sort_by_cached_key(|q| q.digits());
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, q)| (q.key, i as u32)).collect();
        QuotientGroup { group, level, elements, index }
    }

    /// Every element of Q_n(group), in lexicographic digit order.
    pub fn enumerate(group: Group, level: u32, cap: u64) -> Result<QuotientGroup> {
        check_level(group, level)?;
        let free_digits = if group.inside_k() { level.saturating_sub(3) } else { level - 1 };
        let lead: u64 = match group {
            Group::S2 | Group::S21 => 3,
            Group::K | Group::K1 => 2,
        };
        let candidates = lead * 4u64.saturating_pow(free_digits);
        let lower = if group.has_norm_condition() { candidates >> witt_precision_for(level) } else { candidates };
        if lower > cap {
            return Err(Error::SizeCapExceeded { size: lower, cap });
        }
        let p = witt_precision_for(level);
        let teich: Vec<WittNumber> = F4::ALL.iter().map(|d| WittNumber::teichmuller(*d, p)).collect();
        let n = level as usize;
        let mut digits = vec![F4::ZERO; n];
        let choices = |pos: usize| -> &'static [F4] {
            const UNITS: [F4; 3] = F4::UNITS;
            const K2: [F4; 2] = [F4::ZERO, F4::OMEGA];
            match (pos, group.inside_k()) {
                (0, false) => &UNITS,
                (0, true) => &[F4::ONE],
                (1, true) => &[F4::ZERO],
                (2, true) => &K2,
                _ => &F4::ALL,
            }
        };
        let mut slot = vec![0usize; n];
        for (pos, d) in digits.iter_mut().enumerate() {
            *d = choices(pos)[0];
        }
        let mut out = Vec::new();
        loop {
            let mut a = WittNumber::zero(p);
            let mut b = WittNumber::zero(p);
            for (pos, d) in digits.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let t = teich[d.code() as usize].shl((pos / 2) as u32);
                if pos % 2 == 0 {
                    a = a + t;
                } else {
                    b = b + t;
                }
            }
            let g = OrderElement::new(a, b);
            if coset_meets(group, level, &g) {
                out.push(QuotientElement::from_lift(group, level, &g));
                if out.len() as u64 > cap {
                    return Err(Error::SizeCapExceeded { size: out.len() as u64, cap });
                }
            }
            // odometer, last digit fastest
            let mut pos = n;
            loop {
                if pos == 0 {
                    let index = out.iter().enumerate().map(|(i, q)| (q.key, i as u32)).collect();
                    return Ok(QuotientGroup { group, level, elements: out, index });
                }
                pos -= 1;
                let c = choices(pos);
                slot[pos] += 1;
                if slot[pos] < c.len() {
                    digits[pos] = c[slot[pos]];
                    break;
                }
                slot[pos] = 0;
                digits[pos] = c[0];
            }
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[QuotientElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> QuotientElement {
        self.elements[i]
    }

    pub fn index_of(&self, q: &QuotientElement) -> Option<usize> {
        self.index.get(&q.key).map(|&i| i as usize)
    }

    pub fn contains(&self, q: &QuotientElement) -> bool {
        self.index.contains_key(&q.key)
    }

    pub fn identity(&self) -> QuotientElement {
        QuotientElement::identity(self.group, self.level)
    }

    /// The elements lying in F_{k/2}.
    pub fn filtration_subgroup(&self, k: u32) -> QuotientGroup {
        let els = self.elements.iter().filter(|q| q.in_filtration(k)).copied().collect();
        QuotientGroup::from_elements(self.group, self.level, els)
    }

    /// The elements satisfying a predicate.
    pub fn filter(&self, f: impl Fn(&QuotientElement) -> bool) -> QuotientGroup {
        let els = self.elements.iter().filter(|q| f(q)).copied().collect();
        QuotientGroup::from_elements(self.group, self.level, els)
    }

    pub fn is_subgroup_of(&self, other: &QuotientGroup) -> bool {
        self.elements.iter().all(|q| other.contains(q))
    }

    /// x H x^-1 = H for all x in `ambient`.
    pub fn is_normal_in(&self, ambient: &QuotientGroup) -> bool {
        ambient.elements.iter().all(|x| self.elements.iter().all(|h| self.contains(&h.conj_by(x))))
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<QuotientElement> {
        let mut gens: Vec<QuotientElement> = Vec::new();
        let mut span: HashSet<u64> = HashSet::from([self.identity().key]);
        for q in &self.elements {
            if !span.contains(&q.key) {
                gens.push(*q);
                span = generated_subgroup(&gens, self.group, self.level, u64::MAX)
                    .expect("no cap")
                    .elements
                    .iter()
                    .map(|x| x.key)
                    .collect();
                if span.len() == self.len() {
                    break;
                }
            }
        }
        gens
    }
}

/// Closure of a generating set under multiplication.
pub fn generated_subgroup(gens: &[QuotientElement], group: Group, level: u32, cap: u64) -> Result<QuotientGroup> {
    for g in gens {
        if g.group != group || g.level as u32 != level {
            return Err(Error::DescriptorMismatch(format!("generator {g:?} is not in Q{level}({})", group.name())));
        }
    }
    let e = QuotientElement::identity(group, level);
    let mut seen: HashSet<u64> = HashSet::from([e.key]);
    let mut out = vec![e];
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.key) {
                out.push(y);
                if out.len() as u64 > cap {
                    return Err(Error::SizeCapExceeded { size: out.len() as u64, cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(QuotientGroup::from_elements(group, level, out))
}

/// pi x pi^-1, an automorphism of Q_n(S21) (pi normalizes S21 and the filtration).
pub fn pi_conjugate(x: &QuotientElement) -> QuotientElement {
    let n = x.level as u32;
    let pi = named_element(Named::Pi, n);
    let g = pi * x.lift() * pi.inv().expect("pi is a unit");
    QuotientElement::from_lift(x.group, n, &g)
}

/// Search `ambient` for x with x A x^-1 = B. Returns the first such x in element order.
pub fn conjugacy_search(
    ambient: &QuotientGroup,
    a: &[QuotientElement],
    b: &[QuotientElement],
) -> Option<QuotientElement> {
    let target: HashSet<u64> = b.iter().map(|q| q.key).collect();
    let source: HashSet<u64> = a.iter().map(|q| q.key).collect();
    if source.len() != target.len() {
        return None;
    }
    ambient.elements.iter().find(|x| a.iter().all(|h| target.contains(&h.conj_by(x).key))).copied()
}

/// Order of |Q_n| predicted from the graded pieces of S21: gr_{s/2} has order 4 for odd s
/// and for s = 2, and order 2 for even s >= 4.
pub fn s21_order_from_graded(level: u32) -> u64 {
    (1..level).fold(3u64, |acc, s| acc * if s % 2 == 1 || s == 2 { 4 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: Named, level: u32) -> QuotientElement {
        project_named(n, Group::S21, level).unwrap()
    }

    #[test]
    fn identity_key_is_one() {
        let e = project(&OrderElement::one(10), Group::S21, 5).unwrap();
        assert_eq!(e, QuotientElement::identity(Group::S21, 5));
    }

    #[test]
    fn orders_match_brute_force_filter_over_all_units() {
        // Oracle: filter every unit of Q_n(S2) by computing det of its lift.
        for n in 3..=6 {
            let all = QuotientGroup::enumerate(Group::S2, n, DEFAULT_SIZE_CAP).unwrap();
            assert_eq!(all.len() as u64, 3 * 4u64.pow(n - 1));
            let p = witt_precision_for(n);
            let count = all
                .elements()
                .iter()
                .filter(|q| {
                    let d = q.lift().det().truncate(p);
                    d == WittNumber::one(p) || d == -WittNumber::one(p)
                })
                .count() as u64;
            let s21 = QuotientGroup::enumerate(Group::S21, n, DEFAULT_SIZE_CAP).unwrap();
            assert_eq!(s21.len() as u64, count);
            assert_eq!(count, s21_order_from_graded(n));
        }
        assert_eq!(QuotientGroup::enumerate(Group::S21, 8, DEFAULT_SIZE_CAP).unwrap().len(), 12288);
    }

    #[test]
    fn generators_reach_the_whole_quotient() {
        for n in 3..=6 {
            let q = QuotientGroup::enumerate(Group::S21, n, DEFAULT_SIZE_CAP).unwrap();
            let gens = [named(Named::Alpha, n), named(Named::I, n), named(Named::Omega, n)];
            let h = generated_subgroup(&gens, Group::S21, n, DEFAULT_SIZE_CAP).unwrap();
            assert_eq!(h.len(), q.len(), "level {n}");
        }
    }

    #[test]
    fn quaternion_subgroup_has_index_two_at_level_three() {
        let n = 3;
        let g24 = generated_subgroup(&[named(Named::I, n), named(Named::Omega, n)], Group::S21, n, 100).unwrap();
        assert_eq!(g24.len(), 24);
        let q = QuotientGroup::enumerate(Group::S21, n, 100).unwrap();
        assert_eq!(q.len(), 48);
        assert!(g24.is_subgroup_of(&q));
        assert!(!g24.contains(&named(Named::Alpha, n)));
    }

    #[test]
    fn product_is_well_defined() {
        let n = 6;
        let (a, i) = (named_element(Named::Alpha, n + 4), named_element(Named::I, n + 4));
        let lhs = project(&(a * i), Group::S21, n).unwrap();
        let rhs = project(&a, Group::S21, n).unwrap().mul(&project(&i, Group::S21, n).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pi_conjugation_is_an_involution() {
        let q = QuotientGroup::enumerate(Group::S21, 5, DEFAULT_SIZE_CAP).unwrap();
        for x in q.elements() {
            let y = pi_conjugate(x);
            assert!(q.contains(&y));
            assert_eq!(pi_conjugate(&y), *x);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(QuotientGroup::enumerate(Group::S2, 8, 1000), Err(Error::SizeCapExceeded { .. })));
        assert!(matches!(QuotientGroup::enumerate(Group::S21, 2, 1000), Err(Error::LevelTooSmall { .. })));
    }

    #[test]
    fn k1_quotient_and_filtration() {
        let q = QuotientGroup::enumerate(Group::K1, 5, DEFAULT_SIZE_CAP).unwrap();
        let s = QuotientGroup::enumerate(Group::S21, 5, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(q.len() * 24, s.len());
        let f = s.filtration_subgroup(3);
        let k1: Vec<_> = q.elements().iter().map(|x| x.recast(Group::S21)).collect();
        let k1 = QuotientGroup::from_elements(Group::S21, 5, k1);
        assert!(f.is_subgroup_of(&k1));
        assert!(k1.is_normal_in(&s));
        assert_eq!(project_named(Named::I, Group::K1, 5), Err(Error::NotInSubgroup(Group::K1)));
    }

    #[test]
    fn digit_string_round_trip() {
        let q = QuotientGroup::enumerate(Group::S21, 4, DEFAULT_SIZE_CAP).unwrap();
        for x in q.elements() {
            assert_eq!(QuotientElement::from_digits(Group::S21, &x.digits()).unwrap(), *x);
        }
        let ds: Vec<Vec<F4>> = q.elements().iter().map(|x| x.digits()).collect();
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
    }
}
