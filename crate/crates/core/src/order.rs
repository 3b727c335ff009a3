//! The maximal order W<S>/(S^2 = 2, aS = S a^sigma) of the quaternion division
//! algebra over Q2, truncated modulo S^N with N = 2P.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::witt::{mask, WittNumber, F4, MAX_PRECISION};

/// Valuation measured in S-digits (so an element of valuation k/2 reports k).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SVal {
    Exact(u32),
    /// The element vanishes modulo S^N.
    AtLeast(u32),
}

impl SVal {
    /// Lower bound on the number of leading zero S-digits.
    pub fn digits(self) -> u32 {
        match self {
            SVal::Exact(k) | SVal::AtLeast(k) => k,
        }
    }

    pub fn at_least(self, k: u32) -> bool {
        self.digits() >= k
    }
}

impl fmt::Display for SVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SVal::Exact(k) => write!(f, "{k}/2"),
            SVal::AtLeast(k) => write!(f, ">= {k}/2"),
        }
    }
}

/// a + bS with a, b in W mod 2^P.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderElement {
    a: WittNumber,
    b: WittNumber,
}

/// Witt precision needed to hold `n` S-digits.
pub fn witt_precision_for(n: u32) -> u32 {
    n.div_ceil(2)
}

impl OrderElement {
    pub fn new(a: WittNumber, b: WittNumber) -> OrderElement {
        let p = a.precision().min(b.precision());
        OrderElement { a: a.truncate(p), b: b.truncate(p) }
    }

    /// Working precision `n` S-digits is rounded up to the next even number.
    pub fn from_witt(a: WittNumber) -> OrderElement {
        let p = a.precision();
        OrderElement::new(a, WittNumber::zero(p))
    }

    pub fn from_int(k: i64, s_precision: u32) -> OrderElement {
        OrderElement::from_witt(WittNumber::from_int(k, witt_precision_for(s_precision)))
    }

    pub fn one(s_precision: u32) -> OrderElement {
        OrderElement::from_int(1, s_precision)
    }

    pub fn zero(s_precision: u32) -> OrderElement {
        OrderElement::from_int(0, s_precision)
    }

    /// The uniformizer S.
    pub fn s(s_precision: u32) -> OrderElement {
        let p = witt_precision_for(s_precision);
        OrderElement::new(WittNumber::zero(p), WittNumber::one(p))
    }

    pub fn a(&self) -> WittNumber {
        self.a
    }

    pub fn b(&self) -> WittNumber {
        self.b
    }

    pub fn witt_precision(&self) -> u32 {
        self.a.precision()
    }

    /// N: the element is known modulo S^N.
    pub fn s_precision(&self) -> u32 {
        2 * self.a.precision()
    }

    pub fn truncate(&self, s_precision: u32) -> OrderElement {
        let p = witt_precision_for(s_precision);
        OrderElement { a: self.a.truncate(p), b: self.b.truncate(p) }
    }

    pub fn extend(&self, s_precision: u32) -> OrderElement {
        let p = witt_precision_for(s_precision);
        assert!(p <= MAX_PRECISION);
        OrderElement { a: self.a.extend(p), b: self.b.extend(p) }
    }

    /// The Galois action a + bS -> a^sigma + b^sigma S (conjugation by S).
    pub fn galois(&self) -> OrderElement {
        OrderElement { a: self.a.frobenius(), b: self.b.frobenius() }
    }

    /// Reduced norm a a^sigma - 2 b b^sigma, an element of Z/2^P.
    pub fn det(&self) -> WittNumber {
        let d = self.a * self.a.frobenius() - (self.b * self.b.frobenius()).scale(2);
        debug_assert!(d.is_rational());
        d
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_unit()
    }

    /// det^-1 (a^sigma - bS).
    pub fn inv(&self) -> Result<OrderElement> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let d = self.det().inv()?;
        Ok(OrderElement { a: self.a.frobenius() * d, b: -self.b * d })
    }

    pub fn pow(&self, e: i64) -> Result<OrderElement> {
        let mut base = if e < 0 { self.inv()? } else { *self };
        let mut k = e.unsigned_abs();
        let mut acc = OrderElement::one(self.s_precision());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn s_valuation(&self) -> SVal {
        let n = self.s_precision();
        let va = self.a.v2().map(|v| 2 * v);
        let vb = self.b.v2().map(|v| 2 * v + 1);
        match (va, vb) {
            (None, None) => SVal::AtLeast(n),
            (Some(x), None) => SVal::Exact(x),
            (None, Some(y)) => SVal::Exact(y),
            (Some(x), Some(y)) => SVal::Exact(x.min(y)),
        }
    }

    /// Digits a_0, a_1, ... with self = sum teich(a_i) S^i (coefficients on the left).
    /// Even digits come from a, odd digits from b.
    pub fn digits(&self, count: u32) -> Vec<F4> {
        let count = count.min(self.s_precision());
        let da = self.a.digits(count.div_ceil(2));
        let db = self.b.digits(count / 2);
        (0..count as usize).map(|i| if i % 2 == 0 { da[i / 2] } else { db[i / 2] }).collect()
    }

    pub fn from_digits(digits: &[F4], s_precision: u32) -> OrderElement {
        let p = witt_precision_for(s_precision);
        let even: Vec<F4> = digits.iter().step_by(2).copied().collect();
        let odd: Vec<F4> = digits.iter().skip(1).step_by(2).copied().collect();
        OrderElement { a: WittNumber::from_digits(&even, p), b: WittNumber::from_digits(&odd, p) }
    }

    /// Residues (a mod 2^ceil(n/2), b mod 2^floor(n/2)): two elements agree here
    /// exactly when they are congruent modulo S^n.
    pub fn residue_mod_s(&self, n: u32) -> [u64; 4] {
        assert!(n <= self.s_precision(), "residue mod S^{n} needs precision {n}, have {}", self.s_precision());
        let ma = mask(n.div_ceil(2));
        let mb = mask(n / 2);
        [self.a.x() & ma, self.a.y() & ma, self.b.x() & mb, self.b.y() & mb]
    }

    pub fn congruent_mod_s(&self, other: &OrderElement, n: u32) -> Result<bool> {
        let avail = self.s_precision().min(other.s_precision());
        if n > avail {
            return Err(Error::InsufficientPrecision { needed: n, available: avail });
        }
        Ok(self.residue_mod_s(n) == other.residue_mod_s(n))
    }

    /// Left multiplication by a Witt scalar.
    pub fn scale(&self, w: WittNumber) -> OrderElement {
        OrderElement::from_witt(w.truncate(self.witt_precision().min(w.precision()))) * *self
    }
}

impl Add for OrderElement {
    type Output = OrderElement;
    fn add(self, o: OrderElement) -> OrderElement {
        OrderElement::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for OrderElement {
    type Output = OrderElement;
    fn sub(self, o: OrderElement) -> OrderElement {
        OrderElement::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for OrderElement {
    type Output = OrderElement;
    fn neg(self) -> OrderElement {
        OrderElement { a: -self.a, b: -self.b }
    }
}

impl Mul for OrderElement {
    type Output = OrderElement;
    // (a1 + b1 S)(a2 + b2 S) = (a1 a2 + 2 b1 b2^sigma) + (a1 b2 + b1 a2^sigma) S
    fn mul(self, o: OrderElement) -> OrderElement {
        let a = self.a * o.a + (self.b * o.b.frobenius()).scale(2);
        let b = self.a * o.b + self.b * o.a.frobenius();
        OrderElement::new(a, b)
    }
}

impl fmt::Debug for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}]S (mod S^{})", self.a, self.b, self.s_precision())
    }
}

/// Render the first `count` S-digits as "1 + w*S^2 + ...".
pub fn format_digits(digits: &[F4]) -> String {
    let mut terms = Vec::new();
    for (k, d) in digits.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let spow = match k {
            0 => String::new(),
            1 => "S".to_string(),
            _ => format!("S^{k}"),
        };
        let t = match (k, *d) {
            (0, d) => d.to_string(),
            (_, F4::ONE) => spow,
            (_, d) => format!("{d}*{spow}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
