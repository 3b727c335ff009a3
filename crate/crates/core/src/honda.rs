//! The height-2 Honda formal group law over F4 and the endomorphisms attached to
//! elements of the maximal order.
//!
//! The law is built over Q from the logarithm l(x) = sum x^(4^i) / 2^i as
//! F(x, y) = l^-1(l(x) + l(y)), every coefficient is checked to be 2-integral,
//! and the result is reduced mod 2. Mod 2 the coefficients lie in F2, so a
//! bivariate series is stored as one u64 bit-row per power of x.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::OrderElement;
use crate::witt::F4;

pub const MAX_DEGREE: usize = 64;
pub const DEFAULT_DEGREE: usize = 64;
pub const FGL_FORMAT_VERSION: u32 = 1;

fn low_bits(w: usize) -> u64 {
    if w >= 64 {
        u64::MAX
    } else {
        (1u64 << w) - 1
    }
}

/// Power series over F4 truncated below x^D.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    c: Vec<F4>,
}

impl Series {
    pub fn zero(d: usize) -> Series {
        Series { c: vec![F4::ZERO; d] }
    }

    pub fn monomial(d: usize, a: F4, k: usize) -> Series {
        let mut s = Series::zero(d);
        if k < d {
            s.c[k] = a;
        }
        s
    }

    pub fn x(d: usize) -> Series {
        Series::monomial(d, F4::ONE, 1)
    }

    pub fn degree_bound(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: usize) -> F4 {
        self.c.get(k).copied().unwrap_or(F4::ZERO)
    }

    pub fn coeffs(&self) -> &[F4] {
        &self.c
    }

    pub fn add(&self, o: &Series) -> Series {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| *a + *b).collect() }
    }

    pub fn scale(&self, a: F4) -> Series {
        Series { c: self.c.iter().map(|x| *x * a).collect() }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let d = self.c.len();
        let mut out = Series::zero(d);
        for (i, a) in self.c.iter().enumerate().filter(|(_, a)| **a != F4::ZERO) {
            for (j, b) in o.c[..d - i].iter().enumerate() {
                out.c[i + j] = out.c[i + j] + *a * *b;
            }
        }
        out
    }

    /// self(g(x)); g must have no constant term.
    pub fn compose(&self, g: &Series) -> Series {
        assert_eq!(g.coeff(0), F4::ZERO);
        let d = self.c.len();
        let mut acc = Series::zero(d);
        for k in (0..d).rev() {
            acc = acc.mul(g);
            acc.c[0] = acc.c[0] + self.c[k];
        }
        acc
    }

    /// f(x)^2 = sum c_k^2 x^(2k).
    pub fn frobenius_square(&self) -> Series {
        let d = self.c.len();
        let mut out = Series::zero(d);
        for (k, a) in self.c.iter().enumerate() {
            if 2 * k < d {
                out.c[2 * k] = *a * *a;
            }
        }
        out
    }

    /// Apply the Frobenius of F4 to every coefficient.
    pub fn conjugate_coefficients(&self) -> Series {
        Series { c: self.c.iter().map(|a| a.frobenius()).collect() }
    }

    pub fn leading_terms(&self, count: usize) -> String {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != F4::ZERO)
            .take(count)
            .map(|(k, a)| if *a == F4::ONE { format!("x^{k}") } else { format!("{a}*x^{k}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

// Exact construction over Q.

type RatSeries = Vec<BigRational>;

fn rat_mul(a: &RatSeries, b: &RatSeries) -> RatSeries {
    let d = a.len();
    let mut out = vec![BigRational::zero(); d];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b[..d - i].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow2_inv(i: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << i)
}

/// (exponent 4^i, coefficient 1/2^i) pairs of the logarithm below degree d.
fn log_terms(d: usize) -> Vec<(usize, BigRational)> {
    (0..).map(|i| (4usize.pow(i), pow2_inv(i))).take_while(|(k, _)| *k < d).collect()
}

/// Coefficients of l^-1 below degree d, from e = z - sum_{i >= 1} e^(4^i) / 2^i.
pub fn log_inverse(d: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); d];
    if d > 1 {
        e[1] = BigRational::one();
    }
    let terms = log_terms(d);
    loop {
        let mut next = vec![BigRational::zero(); d];
        if d > 1 {
            next[1] = BigRational::one();
        }
        for (k, c) in terms.iter().skip(1) {
            let mut p = e.clone();
            let mut done = 1;
            while done < *k {
                p = rat_mul(&p, &p);
                done *= 2;
            }
            for (t, v) in p.iter().enumerate() {
                next[t] -= v * c;
            }
        }
        if next == e {
            return e;
        }
        e = next;
    }
}

fn reduce_mod_two(c: &BigRational, what: impl Fn() -> String) -> Result<bool> {
    if c.denom() % 2u32 == BigInt::zero() {
        return Err(Error::Integrality(format!("{} = {c}", what())));
    }
    Ok(c.numer() % 2u32 != BigInt::zero())
}

/// [2](x) = l^-1(2 l(x)) computed over Q, then reduced mod 2.
pub fn rational_two_series(d: usize) -> Result<Series> {
    let e = log_inverse(d);
    let mut two_l = vec![BigRational::zero(); d];
    for (k, c) in log_terms(d) {
        two_l[k] = c * BigRational::from_integer(2.into());
    }
    let mut acc = vec![BigRational::zero(); d];
    for k in (0..d).rev() {
        acc = rat_mul(&acc, &two_l);
        acc[0] += &e[k];
    }
    let mut out = Series::zero(d);
    for (k, c) in acc.iter().enumerate() {
        if reduce_mod_two(c, || format!("coefficient of x^{k} in [2]"))? {
            out.c[k] = F4::ONE;
        }
    }
    Ok(out)
}

/// A formal group law over F2, truncated below total degree D.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fgl {
    d: usize,
    /// bit j of rows[i] is the coefficient of x^i y^j
    rows: Vec<u64>,
}

/// Bivariate polynomial over F2, rows indexed by the first variable.
type Bi = Vec<u64>;

fn bi_mul(p: &Bi, q: &Bi, d: usize) -> Bi {
    let mut out = vec![0u64; d];
    for (a, &pa) in p.iter().enumerate().filter(|(_, r)| **r != 0) {
        for (b, &qb) in q[..d - a].iter().enumerate().filter(|(_, r)| **r != 0) {
            let w = d - a - b;
            let mut acc = 0u64;
            let mut bits = pa & low_bits(w);
            while bits != 0 {
                let s = bits.trailing_zeros();
                acc ^= qb << s;
                bits &= bits - 1;
            }
            out[a + b] ^= acc & low_bits(w);
        }
    }
    out
}

/// The Honda law of height 2 at p = 2, truncated below total degree d.
pub fn honda_fgl(d: usize) -> Result<Fgl> {
    if !(2..=MAX_DEGREE).contains(&d) {
        return Err(Error::Config(format!("degree {d} outside 2..={MAX_DEGREE}")));
    }
    let e = log_inverse(d);
    // u = l(x) + l(y) as sparse (i, j, c)
    let mut u = Vec::new();
    for (k, c) in log_terms(d) {
        u.push((k, 0, c.clone()));
        u.push((0, k, c));
    }
    let zero_rows = || (0..d).map(|i| vec![BigRational::zero(); d - i]).collect::<Vec<_>>();
    let mut p = zero_rows();
    for (i, j, c) in &u {
        p[*i][*j] += c;
    }
    let mut f = zero_rows();
    for k in 1..d {
        if k > 1 {
            let mut next = zero_rows();
            for i in 0..d {
                for j in 0..d - i {
                    if p[i][j].is_zero() {
                        continue;
                    }
                    for (a, b, c) in &u {
                        if i + a + j + b < d {
                            next[i + a][j + b] += &p[i][j] * c;
                        }
                    }
                }
            }
            p = next;
        }
        if !e[k].is_zero() {
            for i in 0..d {
                for j in 0..d - i {
                    if !p[i][j].is_zero() {
                        f[i][j] += &p[i][j] * &e[k];
                    }
                }
            }
        }
    }
    let mut rows = vec![0u64; d];
    for (i, row) in f.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if reduce_mod_two(c, || format!("coefficient of x^{i} y^{j}"))? {
                rows[i] |= 1 << j;
            }
        }
    }
    Ok(Fgl { d, rows })
}

impl Fgl {
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coefficient(&self, i: usize, j: usize) -> bool {
        i < self.d && j < self.d - i && self.rows[i] >> j & 1 == 1
    }

    /// (i, j) with nonzero coefficient, by increasing i then j.
    pub fn terms(&self) -> Vec<(usize, usize)> {
        (0..self.d)
            .flat_map(|i| (0..self.d - i).filter(move |&j| self.rows[i] >> j & 1 == 1).map(move |j| (i, j)))
            .collect()
    }

    pub fn is_unital(&self) -> bool {
        self.rows[0] == 0b10 && (0..self.d).all(|i| self.coefficient(i, 0) == (i == 1))
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().iter().all(|&(i, j)| self.coefficient(j, i))
    }

    /// F(F(x, y), z) = F(x, F(y, z)) below total degree D.
    pub fn is_associative(&self) -> bool {
        let d = self.d;
        let terms = self.terms();
        let powers = |f: &Bi| {
            let mut out = vec![{
                let mut one = vec![0u64; d];
                one[0] = 1;
                one
            }];
            for _ in 1..d {
                out.push(bi_mul(out.last().unwrap(), f, d));
            }
            out
        };
        let pw = powers(&self.rows);
        // t[a][b] is a bit-row in z
        let mut left = vec![vec![0u64; d]; d];
        let mut right = vec![vec![0u64; d]; d];
        for &(i, j) in &terms {
            for (a, &row) in pw[i].iter().enumerate() {
                let mut bits = row;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if a + b + j < d {
                        left[a][b] ^= 1 << j;
                    }
                }
            }
            for (b, &row) in pw[j].iter().enumerate() {
                if i + b < d {
                    right[i][b] ^= row & low_bits(d - i - b);
                }
            }
        }
        left == right
    }

    /// F(f, g) for series without constant term.
    pub fn apply(&self, f: &Series, g: &Series) -> Series {
        let d = self.d.min(f.degree_bound());
        let trunc = |s: &Series| Series { c: s.c[..d].to_vec() };
        let (f, g) = (trunc(f), trunc(g));
        let power_list = |s: &Series| {
            let mut out = vec![Series::monomial(d, F4::ONE, 0)];
            for _ in 1..d {
                out.push(out.last().unwrap().mul(s));
            }
            out
        };
        let (pf, pg) = (power_list(&f), power_list(&g));
        let mut out = Series::zero(d);
        for (i, j) in self.terms() {
            if i < d && j < d {
                out = out.add(&pf[i].mul(&pg[j]));
            }
        }
        out
    }

    /// [2](x) = F(x, x).
    pub fn two_series(&self) -> Series {
        let x = Series::x(self.d);
        self.apply(&x, &x)
    }

    /// The series i(x) with F(x, i(x)) = 0, found one degree at a time.
    pub fn negation_series(&self) -> Series {
        let d = self.d;
        let x = Series::x(d);
        let mut inv = Series::zero(d);
        for k in 1..d {
            // the x^k coefficient of F(x, inv) changes by exactly b_k when b_k x^k is added
            let c = self.apply(&x, &inv).coeff(k);
            inv.c[k] = inv.c[k] + c;
        }
        inv
    }

    pub fn dump(&self) -> FglDump {
        FglDump {
            format_version: FGL_FORMAT_VERSION,
            degree: self.d,
            coefficients: self.terms().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

/// JSON form of the truncated law: the (i, j) with coefficient 1 mod 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FglDump {
    pub format_version: u32,
    pub degree: usize,
    pub coefficients: Vec<[usize; 2]>,
}

/// The endomorphism a_0(x) +_F a_1(x^2) +_F a_2(x^4) +_F ... for gamma = sum a_i S^i.
pub fn endo_series(gamma: &OrderElement, fgl: &Fgl) -> Result<Series> {
    let d = fgl.degree();
    let count = (0..).take_while(|i| 1usize << i < d).count() as u32;
    if gamma.s_precision() < count {
        return Err(Error::InsufficientPrecision { needed: count, available: gamma.s_precision() });
    }
    let mut acc = Series::zero(d);
    for (i, a) in gamma.digits(count).into_iter().enumerate() {
        if a != F4::ZERO {
            acc = fgl.apply(&acc, &Series::monomial(d, a, 1 << i));
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub multiplicative: bool,
    pub additive: bool,
}

impl HomCheck {
    pub fn ok(&self) -> bool {
        self.multiplicative && self.additive
    }
}

/// endo(gamma delta) = endo(gamma) o endo(delta) and endo(gamma + delta) = F(endo gamma, endo delta).
pub fn endo_hom_check(gamma: &OrderElement, delta: &OrderElement, fgl: &Fgl) -> Result<HomCheck> {
    let (g, h) = (endo_series(gamma, fgl)?, endo_series(delta, fgl)?);
    let product = endo_series(&(*gamma * *delta), fgl)?;
    let sum = endo_series(&(*gamma + *delta), fgl)?;
    Ok(HomCheck { multiplicative: product == g.compose(&h), additive: sum == fgl.apply(&g, &h) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::{named_element, Named};
    use crate::witt::WittNumber;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn fgl32() -> &'static Fgl {
        static F: OnceLock<Fgl> = OnceLock::new();
        F.get_or_init(|| honda_fgl(32).unwrap())
    }

    #[test]
    fn low_degree_terms() {
        // l = x + x^4/2 gives F = x + y - (2x^3y + 3x^2y^2 + 2xy^3) + ...; mod 2 only x^2 y^2 survives in degree 4
        let f = honda_fgl(8).unwrap();
        assert!(f.coefficient(1, 0) && f.coefficient(0, 1));
        assert!(f.coefficient(2, 2));
        assert!(!f.coefficient(1, 3) && !f.coefficient(3, 1) && !f.coefficient(1, 1));
        let e = log_inverse(8);
        assert_eq!(e[4], BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn axioms_and_two_series() {
        for d in [16, 64] {
            let f = honda_fgl(d).unwrap();
            assert!(f.is_unital() && f.is_symmetric() && f.is_associative(), "d = {d}");
            assert_eq!(f.two_series(), Series::monomial(d, F4::ONE, 4));
            assert_eq!(rational_two_series(d).unwrap(), Series::monomial(d, F4::ONE, 4));
        }
    }

    #[test]
    fn broken_law_is_not_associative() {
        let mut f = fgl32().clone();
        f.rows[2] ^= 1 << 3;
        f.rows[3] ^= 1 << 2;
        assert!(!f.is_associative());
    }

    #[test]
    fn generators_act_as_expected() {
        let f = fgl32();
        let s = named_element(Named::S, 10);
        assert_eq!(endo_series(&s, f).unwrap(), Series::monomial(32, F4::ONE, 2));
        let w = named_element(Named::Omega, 10);
        assert_eq!(endo_series(&w, f).unwrap(), Series::monomial(32, F4::OMEGA, 1));
        let two = OrderElement::from_int(2, 10);
        assert_eq!(endo_series(&two, f).unwrap(), Series::monomial(32, F4::ONE, 4));
        let one = OrderElement::one(10);
        assert_eq!(endo_series(&one, f).unwrap(), Series::x(32));
    }

    #[test]
    fn i_squared_is_negation() {
        let f = fgl32();
        let i = endo_series(&named_element(Named::I, 12), f).unwrap();
        let neg = f.negation_series();
        assert_eq!(i.compose(&i), neg);
        assert_eq!(endo_series(&OrderElement::from_int(-1, 12), f).unwrap(), neg);
        assert!(f.apply(&Series::x(32), &neg).coeffs().iter().all(|c| *c == F4::ZERO));
    }

    fn witt() -> impl Strategy<Value = WittNumber> {
        (any::<i64>(), any::<i64>()).prop_map(|(x, y)| WittNumber::new(x, y, 6))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn endo_is_a_ring_map(a in witt(), b in witt(), c in witt(), d in witt()) {
            let g = OrderElement::new(a, b);
            let h = OrderElement::new(c, d);
            prop_assert!(endo_hom_check(&g, &h, fgl32()).unwrap().ok());
        }

        #[test]
        fn frobenius_twist(a in witt()) {
            // a S = S a^sigma: endo(a)(x^2) = endo(a^sigma)(x)^2
            let f = fgl32();
            let lhs = endo_series(&OrderElement::from_witt(a), f).unwrap().compose(&Series::monomial(32, F4::ONE, 2));
            let rhs = endo_series(&OrderElement::from_witt(a.frobenius()), f).unwrap().frobenius_square();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
