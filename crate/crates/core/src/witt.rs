//! The finite field F4 and the unramified quadratic extension W = Z2[w]/(1+w+w^2),
//! stored as pairs (x, y) meaning x + y*w, truncated modulo 2^P.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported 2-adic precision.
pub const MAX_PRECISION: u32 = 62;

/// An element of F4. Bit 0 is the coefficient of 1, bit 1 the coefficient of w,
/// so addition is xor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const OMEGA: F4 = F4(2);
    pub const OMEGA2: F4 = F4(3);
    pub const ALL: [F4; 4] = [F4::ZERO, F4::ONE, F4::OMEGA, F4::OMEGA2];
    pub const UNITS: [F4; 3] = [F4::ONE, F4::OMEGA, F4::OMEGA2];

    /// Build from the bit code described above (only the low two bits are used).
    pub fn from_bits(b: u8) -> F4 {
        F4(b & 3)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Position in the canonical order 0 < 1 < w < w^2.
    pub fn code(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    // discrete log base w: 1 -> 0, w -> 1, w^2 -> 2
    fn log(self) -> u8 {
        match self.0 {
            1 => 0,
            2 => 1,
            3 => 2,
            _ => unreachable!("log of zero"),
        }
    }

    fn exp(k: u8) -> F4 {
        [F4::ONE, F4::OMEGA, F4::OMEGA2][(k % 3) as usize]
    }

    pub fn pow(self, e: u64) -> F4 {
        if e == 0 {
            return F4::ONE;
        }
        if self.is_zero() {
            return F4::ZERO;
        }
        F4::exp(((self.log() as u64 * (e % 3)) % 3) as u8)
    }

    /// The Frobenius x -> x^2.
    pub fn frobenius(self) -> F4 {
        self.pow(2)
    }

    pub fn inv(self) -> Option<F4> {
        if self.is_zero() {
            None
        } else {
            Some(F4::exp(3 - self.log()))
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F4 {
    type Output = F4;
    fn add(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for F4 {
    type Output = F4;
    fn sub(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }
}

impl Mul for F4 {
    type Output = F4;
    fn mul(self, o: F4) -> F4 {
        if self.is_zero() || o.is_zero() {
            F4::ZERO
        } else {
            F4::exp(self.log() + o.log())
        }
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w^2",
        };
        f.write_str(s)
    }
}

pub(crate) fn mask(prec: u32) -> u64 {
    if prec >= 64 {
        u64::MAX
    } else {
        (1u64 << prec) - 1
    }
}

/// Inverse of an odd integer modulo 2^64.
pub(crate) fn inv_odd_u64(a: u64) -> u64 {
    debug_assert!(a & 1 == 1);
    let mut x = a; // correct to 3 bits
    for _ in 0..5 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
    }
    x
}

/// Interpret a residue modulo 2^prec as the signed representative in [-2^(prec-1), 2^(prec-1)).
pub fn signed_residue(v: u64, prec: u32) -> i64 {
    let v = v & mask(prec);
    if prec == 0 {
        return 0;
    }
    if prec < 64 && v >= (1u64 << (prec - 1)) {
        (v as i128 - (1i128 << prec)) as i64
    } else {
        v as i64
    }
}

/// An element x + y*w of W modulo 2^prec.
///
/// All arithmetic is exact: residues live in u64 with wrapping operations, and
/// 2^prec divides 2^64, so masking at the end gives the true residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WittNumber {
    x: u64,
    y: u64,
    prec: u32,
}

impl WittNumber {
    pub fn new(x: i64, y: i64, prec: u32) -> WittNumber {
        assert!(prec <= MAX_PRECISION, "precision {prec} above {MAX_PRECISION}");
        let m = mask(prec);
        WittNumber { x: (x as u64) & m, y: (y as u64) & m, prec }
    }

    /// Build from raw residues (high bits are discarded).
    pub fn from_raw(x: u64, y: u64, prec: u32) -> WittNumber {
        assert!(prec <= MAX_PRECISION, "precision {prec} above {MAX_PRECISION}");
        let m = mask(prec);
        WittNumber { x: x & m, y: y & m, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> WittNumber {
        WittNumber::new(n, 0, prec)
    }

    pub fn zero(prec: u32) -> WittNumber {
        WittNumber::new(0, 0, prec)
    }

    pub fn one(prec: u32) -> WittNumber {
        WittNumber::new(1, 0, prec)
    }

    pub fn omega(prec: u32) -> WittNumber {
        WittNumber::new(0, 1, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// True when the w-component vanishes, i.e. the element lies in Z/2^P.
    pub fn is_rational(&self) -> bool {
        self.y == 0
    }

    /// Reduce to a smaller precision.
    pub fn truncate(&self, prec: u32) -> WittNumber {
        assert!(prec <= self.prec, "cannot truncate {} to {prec}", self.prec);
        WittNumber::from_raw(self.x, self.y, prec)
    }

    /// Reinterpret the stored residue at a larger precision (high digits zero).
    pub fn extend(&self, prec: u32) -> WittNumber {
        WittNumber::from_raw(self.x, self.y, prec)
    }

    fn meet(&self, o: &WittNumber) -> u32 {
        self.prec.min(o.prec)
    }

    /// x + y w  ->  x + y w^2 = (x - y) - y w.
    pub fn frobenius(&self) -> WittNumber {
        WittNumber::from_raw(self.x.wrapping_sub(self.y), self.y.wrapping_neg(), self.prec)
    }

    /// (x + y w)(x + y w^2) = x^2 - xy + y^2.
    pub fn norm(&self) -> u64 {
        let (x, y) = (self.x, self.y);
        x.wrapping_mul(x).wrapping_sub(x.wrapping_mul(y)).wrapping_add(y.wrapping_mul(y)) & mask(self.prec)
    }

    pub fn is_unit(&self) -> bool {
        self.prec > 0 && (self.x | self.y) & 1 == 1
    }

    pub fn inv(&self) -> Result<WittNumber> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let n = inv_odd_u64(self.norm());
        let c = self.frobenius();
        Ok(WittNumber::from_raw(c.x.wrapping_mul(n), c.y.wrapping_mul(n), self.prec))
    }

    /// 2-adic valuation, None for zero (valuation at least the precision).
    pub fn v2(&self) -> Option<u32> {
        let t = self.x | self.y;
        if t == 0 {
            None
        } else {
            Some(t.trailing_zeros())
        }
    }

    pub fn scale(&self, k: i64) -> WittNumber {
        WittNumber::from_raw(self.x.wrapping_mul(k as u64), self.y.wrapping_mul(k as u64), self.prec)
    }

    /// Multiply by 2^k, dropping digits beyond the precision.
    pub fn shl(&self, k: u32) -> WittNumber {
        if k >= 64 {
            return WittNumber::zero(self.prec);
        }
        WittNumber::from_raw(self.x << k, self.y << k, self.prec)
    }

    pub fn pow(&self, mut e: u64) -> WittNumber {
        let mut base = *self;
        let mut acc = WittNumber::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Reduction modulo 2.
    pub fn residue(&self) -> F4 {
        if self.prec == 0 {
            return F4::ZERO;
        }
        F4::from_bits(((self.x & 1) | ((self.y & 1) << 1)) as u8)
    }

    /// Teichmueller lift of r: the unique root of t^4 = t lifting r, found by
    /// iterating t -> t^4 from any lift until it is stable.
    pub fn teichmuller(r: F4, prec: u32) -> WittNumber {
        let mut t = WittNumber::from_raw((r.bits() & 1) as u64, (r.bits() >> 1) as u64, prec);
        for _ in 0..=prec + 1 {
            let next = t.pow(4);
            if next == t {
                return t;
            }
            t = next;
        }
        t
    }

    /// The first `count` digits d_i with self = sum teich(d_i) 2^i.
    pub fn digits(&self, count: u32) -> Vec<F4> {
        let count = count.min(self.prec);
        let mut out = Vec::with_capacity(count as usize);
        let mut u = *self;
        for k in 0..count {
            let d = u.residue();
            out.push(d);
            let t = WittNumber::teichmuller(d, u.prec);
            let r = u - t;
            // exact division by 2; one digit of precision is consumed
            u = WittNumber::from_raw(r.x >> 1, ((r.y as i64) >> 1) as u64, self.prec - k - 1);
        }
        out
    }

    pub fn from_digits(digits: &[F4], prec: u32) -> WittNumber {
        let mut acc = WittNumber::zero(prec);
        for (i, d) in digits.iter().enumerate().take(prec as usize) {
            if !d.is_zero() {
                acc = acc + WittNumber::teichmuller(*d, prec).shl(i as u32);
            }
        }
        acc
    }

    /// The 2-adic square root of -7 that is 5 mod 8, truncated to `prec` bits.
    ///
    /// Newton iteration on residues mod 2^64; the derivative 2s has valuation one,
    /// so a residue agreeing with the root to k bits squares to -7 mod 2^(k+1).
    pub fn sqrt_m7(prec: u32) -> WittNumber {
        assert!(prec <= MAX_PRECISION);
        let a = (-7i64) as u64;
        let mut s: u64 = 5;
        let mut converged = false;
        for _ in 0..12 {
            let err = a.wrapping_sub(s.wrapping_mul(s));
            if err.trailing_zeros() >= 63 {
                converged = true;
                break;
            }
            let half = ((err as i64) >> 1) as u64;
            s = s.wrapping_add(half.wrapping_mul(inv_odd_u64(s)));
        }
        assert!(converged, "square root of -7 did not converge");
        if s & 7 != 5 {
            s = s.wrapping_neg();
        }
        debug_assert_eq!(s & 7, 5);
        WittNumber::from_raw(s, 0, prec)
    }

    /// Signed representatives of (x, y).
    pub fn signed(&self) -> (i64, i64) {
        (signed_residue(self.x, self.prec), signed_residue(self.y, self.prec))
    }
}

impl Add for WittNumber {
    type Output = WittNumber;
    fn add(self, o: WittNumber) -> WittNumber {
        WittNumber::from_raw(self.x.wrapping_add(o.x), self.y.wrapping_add(o.y), self.meet(&o))
    }
}

impl Sub for WittNumber {
    type Output = WittNumber;
    fn sub(self, o: WittNumber) -> WittNumber {
        WittNumber::from_raw(self.x.wrapping_sub(o.x), self.y.wrapping_sub(o.y), self.meet(&o))
    }
}

impl Neg for WittNumber {
    type Output = WittNumber;
    fn neg(self) -> WittNumber {
        WittNumber::from_raw(self.x.wrapping_neg(), self.y.wrapping_neg(), self.prec)
    }
}

impl Mul for WittNumber {
    type Output = WittNumber;
    // (x1 + y1 w)(x2 + y2 w) = (x1x2 - y1y2) + (x1y2 + x2y1 - y1y2) w
    fn mul(self, o: WittNumber) -> WittNumber {
        let yy = self.y.wrapping_mul(o.y);
        let x = self.x.wrapping_mul(o.x).wrapping_sub(yy);
        let y = self.x.wrapping_mul(o.y).wrapping_add(o.x.wrapping_mul(self.y)).wrapping_sub(yy);
        WittNumber::from_raw(x, y, self.meet(&o))
    }
}

impl fmt::Debug for WittNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.signed();
        write!(f, "({x} + {y}w mod 2^{})", self.prec)
    }
}

impl fmt::Display for WittNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.signed();
        match (x, y) {
            (x, 0) => write!(f, "{x}"),
            (0, y) => write!(f, "{y}w"),
            (x, y) if y < 0 => write!(f, "{x} - {}w", -y),
            (x, y) => write!(f, "{x} + {y}w"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Oracle: arithmetic in Z[w] with i128 and explicit w^2 = -1 - w.
    fn naive_mul(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
        let c0 = a.0 * b.0;
        let c1 = a.0 * b.1 + a.1 * b.0;
        let c2 = a.1 * b.1;
        (c0 - c2, c1 - c2)
    }

    fn reduce(v: (i128, i128), p: u32) -> (u64, u64) {
        let m = 1i128 << p;
        (v.0.rem_euclid(m) as u64, v.1.rem_euclid(m) as u64)
    }

    #[test]
    fn f4_tables() {
        assert_eq!(F4::OMEGA * F4::OMEGA, F4::OMEGA2);
        assert_eq!(F4::OMEGA + F4::ONE, F4::OMEGA2);
        assert_eq!(F4::OMEGA2.frobenius(), F4::OMEGA);
        assert_eq!(F4::OMEGA.inv(), Some(F4::OMEGA2));
        for a in F4::UNITS {
            assert_eq!(a.pow(3), F4::ONE);
        }
    }

    #[test]
    fn products_from_the_worked_examples() {
        let p = 6;
        let a = WittNumber::new(1, 2, p);
        let b = WittNumber::new(1, -2, p);
        assert_eq!(a * b, WittNumber::new(5, 4, p));
        assert_eq!(a * a.frobenius(), WittNumber::from_int(3, p));
        assert_eq!(WittNumber::omega(p).frobenius(), WittNumber::new(-1, -1, p));
    }

    #[test]
    fn teichmuller_lifts() {
        let p = 20;
        assert_eq!(WittNumber::teichmuller(F4::OMEGA, p), WittNumber::omega(p));
        assert_eq!(WittNumber::teichmuller(F4::OMEGA2, p), WittNumber::new(-1, -1, p));
        assert_eq!(WittNumber::teichmuller(F4::ONE, p), WittNumber::one(p));
    }

    #[test]
    fn digits_of_small_numbers() {
        let p = 8;
        assert_eq!(WittNumber::from_int(3, p).digits(2), vec![F4::ONE, F4::ONE]);
        assert_eq!(WittNumber::new(1, 2, p).digits(3), vec![F4::ONE, F4::OMEGA, F4::ZERO]);
        // -1 = 1 + 2 + 4 + ...
        assert_eq!(WittNumber::from_int(-1, p).digits(8), vec![F4::ONE; 8]);
    }

    #[test]
    fn sqrt_m7_against_brute_force() {
        // Oracle: the unique residue mod 2^p that is 5 mod 8 and lifts to a root mod 2^(p+1).
        for p in 3..=14u32 {
            let m = 1u64 << p;
            let m1 = m << 1;
            let target = (m1 - 7) % m1;
            let want: Vec<u64> = (0..m)
                .filter(|&s| s % 8 == 5)
                .filter(|&s| (s * s) % m1 == target || ((s + m) * (s + m)) % m1 == target)
                .collect();
            assert_eq!(want.len(), 1, "p = {p}");
            let got = WittNumber::sqrt_m7(p);
            assert_eq!(got, WittNumber::from_int(want[0] as i64, p), "p = {p}");
        }
        assert_eq!(WittNumber::sqrt_m7(6), WittNumber::from_int(53, 6));
        assert_eq!(WittNumber::sqrt_m7(3), WittNumber::from_int(5, 3));
        let r = WittNumber::sqrt_m7(MAX_PRECISION);
        assert_eq!(r * r, WittNumber::from_int(-7, MAX_PRECISION));
    }

    #[test]
    fn inverse_of_non_unit_fails() {
        assert_eq!(WittNumber::new(2, 4, 10).inv(), Err(Error::NonUnit));
    }

    fn arb_witt(p: u32) -> impl Strategy<Value = WittNumber> {
        (any::<i64>(), any::<i64>()).prop_map(move |(x, y)| WittNumber::new(x, y, p))
    }

    proptest! {
        #[test]
        fn multiplication_matches_integer_oracle(a in any::<(i32, i32)>(), b in any::<(i32, i32)>(), p in 1u32..=40) {
            let want = reduce(naive_mul((a.0 as i128, a.1 as i128), (b.0 as i128, b.1 as i128)), p);
            let got = WittNumber::new(a.0 as i64, a.1 as i64, p) * WittNumber::new(b.0 as i64, b.1 as i64, p);
            prop_assert_eq!((got.x(), got.y()), want);
        }

        #[test]
        fn frobenius_is_a_ring_involution(a in arb_witt(30), b in arb_witt(30)) {
            prop_assert_eq!(a.frobenius().frobenius(), a);
            prop_assert_eq!((a * b).frobenius(), a.frobenius() * b.frobenius());
            prop_assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
        }

        #[test]
        fn digits_round_trip(a in arb_witt(24)) {
            prop_assert_eq!(WittNumber::from_digits(&a.digits(24), 24), a);
        }

        #[test]
        fn inverse_is_two_sided(a in arb_witt(40)) {
            prop_assume!(a.is_unit());
            let inv = a.inv().unwrap();
            prop_assert_eq!(a * inv, WittNumber::one(40));
        }

        #[test]
        fn norm_is_rational(a in arb_witt(40)) {
            prop_assert!((a * a.frobenius()).is_rational());
        }
    }
}
