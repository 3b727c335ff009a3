//! Units of the order: named elements, the subgroups S2, S2^1, K, K^1, the
//! S-adic filtration and its graded pieces.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{witt_precision_for, OrderElement, SVal};
use crate::witt::{WittNumber, F4, MAX_PRECISION};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Group {
    /// All units of the order.
    S2,
    /// Units of reduced norm +-1.
    S21,
    /// The closed subgroup generated by alpha and the filtration piece of level 3/2.
    K,
    /// K intersected with S21.
    K1,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::S2 => "S2",
            Group::S21 => "S21",
            Group::K => "K",
            Group::K1 => "K1",
        }
    }

    pub fn parse(s: &str) -> Option<Group> {
        match s {
            "S2" => Some(Group::S2),
            "S21" => Some(Group::S21),
            "K" => Some(Group::K),
            "K1" => Some(Group::K1),
            _ => None,
        }
    }

    pub fn has_norm_condition(self) -> bool {
        matches!(self, Group::S21 | Group::K1)
    }

    pub fn inside_k(self) -> bool {
        matches!(self, Group::K | Group::K1)
    }
}

/// A group, optionally cut down to a filtration piece F_{k/2}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubgroupTag {
    pub group: Group,
    pub filtration: Option<u32>,
}

impl SubgroupTag {
    pub fn of(group: Group) -> SubgroupTag {
        SubgroupTag { group, filtration: None }
    }

    pub fn filtered(group: Group, k: u32) -> SubgroupTag {
        SubgroupTag { group, filtration: Some(k) }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Named {
    E,
    Omega,
    Pi,
    Alpha,
    I,
    J,
    K,
    SqrtM7,
    AlphaI,
    AlphaJ,
    AlphaK,
    AlphaSq,
    AlphaPi,
    S,
}

impl Named {
    pub const ALL: [Named; 14] = [
        Named::E,
        Named::Omega,
        Named::Pi,
        Named::Alpha,
        Named::I,
        Named::J,
        Named::K,
        Named::SqrtM7,
        Named::AlphaI,
        Named::AlphaJ,
        Named::AlphaK,
        Named::AlphaSq,
        Named::AlphaPi,
        Named::S,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Named::E => "e",
            Named::Omega => "w",
            Named::Pi => "pi",
            Named::Alpha => "alpha",
            Named::I => "i",
            Named::J => "j",
            Named::K => "k",
            Named::SqrtM7 => "sqrt_m7",
            Named::AlphaI => "alpha_i",
            Named::AlphaJ => "alpha_j",
            Named::AlphaK => "alpha_k",
            Named::AlphaSq => "alpha_sq",
            Named::AlphaPi => "alpha_pi",
            Named::S => "S",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Named> {
        Named::ALL.iter().copied().find(|n| n.symbol() == s)
    }
}

struct NamedTable {
    values: Vec<(Named, OrderElement)>,
}

fn build_named(p: u32) -> NamedTable {
    let n = 2 * p;
    let w = |a: i64, b: i64| WittNumber::new(a, b, p);
    let omega = OrderElement::from_witt(w(0, 1));
    let omega2 = omega * omega;
    let pi = OrderElement::from_witt(w(1, 2));
    let sqrt = WittNumber::sqrt_m7(p);
    let alpha_w = w(1, -2) * sqrt.inv().expect("sqrt(-7) is a unit");
    let alpha = OrderElement::from_witt(alpha_w);
    let s = OrderElement::s(n);
    let one = OrderElement::one(n);
    let i = pi.inv().unwrap() * (one - alpha * s);
    let j = omega * i * omega2;
    let k = omega2 * i * omega;
    let alpha_inv = alpha.inv().unwrap();
    let conj = |t: OrderElement| t * alpha * t.inv().unwrap() * alpha_inv;
    let values = vec![
        (Named::E, one),
        (Named::Omega, omega),
        (Named::Pi, pi),
        (Named::Alpha, alpha),
        (Named::I, i),
        (Named::J, j),
        (Named::K, k),
        (Named::SqrtM7, OrderElement::from_witt(sqrt)),
        (Named::AlphaI, conj(i)),
        (Named::AlphaJ, conj(j)),
        (Named::AlphaK, conj(k)),
        (Named::AlphaSq, alpha * alpha),
        (Named::AlphaPi, alpha * pi),
        (Named::S, s),
    ];
    NamedTable { values }
}

fn table() -> &'static NamedTable {
    static TABLE: OnceLock<NamedTable> = OnceLock::new();
    TABLE.get_or_init(|| build_named(MAX_PRECISION))
}

/// A named element modulo S^N (N rounded up to an even number). Values are
/// built once at the maximal precision and truncated, which is exact.
pub fn named_element(name: Named, s_precision: u32) -> OrderElement {
    let p = witt_precision_for(s_precision);
    assert!(p <= MAX_PRECISION, "s-precision {s_precision} above {}", 2 * MAX_PRECISION);
    let v = table().values.iter().find(|(n, _)| *n == name).map(|(_, v)| *v).expect("every name is in the table");
    v.truncate(2 * p)
}

/// The element of valuation >= 0 obtained by evaluating `name` directly at precision
/// `p` rather than truncating; used by tests as an independent construction.
pub fn named_element_direct(name: Named, s_precision: u32) -> OrderElement {
    let t = build_named(witt_precision_for(s_precision));
    t.values.iter().find(|(n, _)| *n == name).unwrap().1
}

/// g h g^-1 h^-1.
pub fn commutator(g: &OrderElement, h: &OrderElement) -> Result<OrderElement> {
    Ok(*g * *h * g.inv()? * h.inv()?)
}

/// g h g^-1.
pub fn conjugate(g: &OrderElement, h: &OrderElement) -> Result<OrderElement> {
    Ok(*g * *h * g.inv()?)
}

/// Largest k with g in F_{k/2}, reported in S-digits.
pub fn filtration_level(g: &OrderElement) -> SVal {
    (*g - OrderElement::one(g.s_precision())).s_valuation()
}

/// (n, a_n) with g = 1 + a_n S^n + ..., a_n != 0.
pub fn graded_leading(g: &OrderElement) -> Result<(u32, F4)> {
    match filtration_level(g) {
        SVal::Exact(n) => Ok((n, g.digits(n + 1)[n as usize])),
        SVal::AtLeast(_) => Err(Error::NoLeadingTerm),
    }
}

/// The S-digit of g at position k (0 when g is deeper than k), requiring g in F_{k/2}.
pub fn graded_digit(g: &OrderElement, k: u32) -> Result<F4> {
    if g.s_precision() <= k {
        return Err(Error::InsufficientPrecision { needed: k + 1, available: g.s_precision() });
    }
    Ok(g.digits(k + 1)[k as usize])
}

/// The representative of +-det(g) congruent to 1 mod 4.
pub fn norm(g: &OrderElement) -> Result<WittNumber> {
    if !g.is_unit() {
        return Err(Error::NonUnit);
    }
    let d = g.det();
    if d.precision() < 2 || d.x() & 3 == 1 {
        Ok(d)
    } else {
        Ok(-d)
    }
}

/// det(g) = +-1 modulo 2^p.
pub fn has_norm_one(g: &OrderElement) -> bool {
    let d = g.det();
    let p = d.precision();
    d == WittNumber::one(p) || d == -WittNumber::one(p)
}

/// Membership from the first three S-digits: a0 = 1, a1 = 0, a2 in {0, w}.
pub fn digits_in_k(d: &[F4]) -> bool {
    d.first() == Some(&F4::ONE)
        && d.get(1).is_none_or(|x| x.is_zero())
        && d.get(2).is_none_or(|x| *x == F4::ZERO || *x == F4::OMEGA)
}

pub fn in_subgroup(g: &OrderElement, tag: SubgroupTag) -> Result<bool> {
    let n = g.s_precision();
    if !g.is_unit() {
        return Ok(false);
    }
    if tag.group.inside_k() && n < 3 {
        return Err(Error::InsufficientPrecision { needed: 3, available: n });
    }
    if let Some(k) = tag.filtration {
        if n < k {
            return Err(Error::InsufficientPrecision { needed: k, available: n });
        }
        if !filtration_level(g).at_least(k) {
            return Ok(false);
        }
    }
    if tag.group.inside_k() && !digits_in_k(&g.digits(3)) {
        return Ok(false);
    }
    if tag.group.has_norm_condition() && !has_norm_one(g) {
        return Ok(false);
    }
    Ok(true)
}

/// x^(2^k) in F4.
pub fn frob_pow(x: F4, k: u32) -> F4 {
    if k % 2 == 0 {
        x
    } else {
        x.frobenius()
    }
}

/// Predicted digit of [a, b] in gr_{(n+m)/2} from the leading digits.
pub fn predicted_commutator_digit(abar: F4, n: u32, bbar: F4, m: u32) -> F4 {
    abar * frob_pow(bbar, n) + frob_pow(abar, m) * bbar
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitCheck {
    pub index: u32,
    pub predicted: F4,
    pub actual: F4,
    pub in_filtration: bool,
}

impl DigitCheck {
    pub fn ok(&self) -> bool {
        self.in_filtration && self.predicted == self.actual
    }
}

/// Check the graded commutator formula for a in F_{n/2}, b in F_{m/2}.
pub fn check_commutator_formula(a: &OrderElement, n: u32, b: &OrderElement, m: u32) -> Result<DigitCheck> {
    for (g, k) in [(a, n), (b, m)] {
        if !filtration_level(g).at_least(k) {
            return Err(Error::NotInSubgroup(Group::S2));
        }
    }
    let abar = graded_digit(a, n)?;
    let bbar = graded_digit(b, m)?;
    let c = commutator(a, b)?;
    let idx = n + m;
    Ok(DigitCheck {
        index: idx,
        predicted: predicted_commutator_digit(abar, n, bbar, m),
        actual: graded_digit(&c, idx)?,
        in_filtration: filtration_level(&c).at_least(idx),
    })
}

/// S-digit index where the square of an element of F_{n/2} has its predicted leading term.
pub fn squaring_index(n: u32) -> u32 {
    match n {
        1 => 2,
        2 => 4,
        _ => n + 2,
    }
}

pub fn predicted_square_digit(abar: F4, n: u32) -> F4 {
    match n {
        1 => abar.pow(3),
        2 => abar + abar * abar,
        _ => abar,
    }
}

/// Check the squaring map gr_{n/2} -> gr against a^2, reading the digit at `index`.
pub fn check_squaring_at(a: &OrderElement, n: u32, index: u32) -> Result<DigitCheck> {
    if !filtration_level(a).at_least(n) {
        return Err(Error::NotInSubgroup(Group::S2));
    }
    let abar = graded_digit(a, n)?;
    let sq = *a * *a;
    Ok(DigitCheck {
        index,
        predicted: predicted_square_digit(abar, n),
        actual: graded_digit(&sq, index)?,
        in_filtration: filtration_level(&sq).at_least(index),
    })
}

pub fn check_squaring(a: &OrderElement, n: u32) -> Result<DigitCheck> {
    check_squaring_at(a, n, squaring_index(n))
}

/// 1 + (digits from position n on), i.e. a generic element of F_{n/2}.
pub fn filtration_element(tail: &[F4], n: u32, s_precision: u32) -> OrderElement {
    let mut d = vec![F4::ZERO; s_precision as usize];
    d[0] = F4::ONE;
    for (k, x) in tail.iter().enumerate() {
        let pos = n as usize + k;
        if pos < d.len() {
            d[pos] = *x;
        }
    }
    OrderElement::from_digits(&d, s_precision)
}
