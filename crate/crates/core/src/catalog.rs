//! Tables of identities among the named elements, evaluated exactly.

use rand::Rng;
use serde::Serialize;

use crate::order::{format_digits, witt_precision_for, OrderElement};
use crate::stabilizer::{
    check_commutator_formula, check_squaring, commutator, filtration_element, named_element, Named,
};
use crate::witt::{WittNumber, F4};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub label: String,
    pub holds: bool,
    pub detail: String,
}

impl Identity {
    fn new(label: impl Into<String>, holds: bool, detail: impl Into<String>) -> Identity {
        Identity { label: label.into(), holds, detail: detail.into() }
    }
}

pub fn all_hold(ids: &[Identity]) -> bool {
    ids.iter().all(|i| i.holds)
}

fn digits_of(spec: &[u8]) -> Vec<F4> {
    spec.iter().map(|&b| F4::from_bits(b)).collect()
}

fn congruence(label: &str, x: &OrderElement, want: &[F4], modulus: u32) -> Identity {
    let n = x.s_precision();
    let target = OrderElement::from_digits(want, n);
    let holds = x.congruent_mod_s(&target, modulus).unwrap_or(false);
    Identity::new(
        format!("{label} = {} mod S^{modulus}", format_digits(want)),
        holds,
        format!("digits {}", format_digits(&x.digits(modulus.min(n)))),
    )
}

/// The leading-term congruences of i, j, -1, alpha, alpha_i, alpha_j, alpha^2 and alpha pi.
pub fn congruence_table(s_precision: u32) -> Vec<Identity> {
    let el = |n| named_element(n, s_precision);
    let m1 = OrderElement::from_int(-1, s_precision);
    vec![
        congruence("i", &el(Named::I), &digits_of(&[1, 1]), 2),
        congruence("j", &el(Named::J), &digits_of(&[1, 3]), 2),
        congruence("-1", &m1, &digits_of(&[1, 0, 1, 0]), 4),
        congruence("alpha", &el(Named::Alpha), &digits_of(&[1, 0, 2, 0]), 4),
        congruence("alpha_i", &el(Named::AlphaI), &digits_of(&[1, 0, 0, 1]), 4),
        congruence("alpha_j", &el(Named::AlphaJ), &digits_of(&[1, 0, 0, 3]), 4),
        congruence("alpha^2", &el(Named::AlphaSq), &digits_of(&[1, 0, 0, 0, 1]), 5),
        congruence("alpha pi", &el(Named::AlphaPi), &digits_of(&[1, 0, 0, 0, 2]), 5),
    ]
}

/// det(pi) = 3 and det(alpha) = -1 mod 2^30, sqrt(-7) = 5 mod 8.
pub fn determinant_facts() -> Vec<Identity> {
    let pi = named_element(Named::Pi, 60);
    let alpha = named_element(Named::Alpha, 60);
    let root = WittNumber::sqrt_m7(30);
    let r8 = root.x() & 7;
    vec![
        Identity::new("det(pi) = 3 mod 2^30", pi.det() == WittNumber::from_int(3, 30), format!("{:?}", pi.det())),
        Identity::new(
            "det(alpha) = -1 mod 2^30",
            alpha.det() == WittNumber::from_int(-1, 30),
            format!("{:?}", alpha.det()),
        ),
        Identity::new(
            "sqrt(-7) = 5 mod 8",
            r8 == 5 && root.is_rational() && (root * root) == WittNumber::from_int(-7, 30),
            format!("sqrt(-7) mod 2^30 = {}", root.x()),
        ),
    ]
}

/// Relations of the quaternion group and of G24 = Q8 x| C3.
pub fn quaternion_relations(s_precision: u32) -> Vec<Identity> {
    let n = s_precision;
    let el = |name| named_element(name, n);
    let (i, j, k, w) = (el(Named::I), el(Named::J), el(Named::K), el(Named::Omega));
    let m1 = OrderElement::from_int(-1, n);
    let one = OrderElement::one(n);
    let eq = |label: &str, a: OrderElement, b: OrderElement| Identity::new(label, a == b, format!("{a:?}"));
    // omega = -(1+i+j+k)/2: check 2 omega + 1 + i + j + k = 0 two digits deeper
    let n2 = n + 2;
    let el2 = |name| named_element(name, n2);
    let sum = OrderElement::one(n2) + el2(Named::I) + el2(Named::J) + el2(Named::K);
    let two_w = OrderElement::from_int(2, n2) * el2(Named::Omega);
    vec![
        eq("i^2 = -1", i * i, m1),
        eq("j^2 = -1", j * j, m1),
        eq("k^2 = -1", k * k, m1),
        eq("i j i = j", i * j * i, j),
        eq("k = i j", k, i * j),
        eq("w^3 = e", w * w * w, one),
        eq("w i w^-1 = j", w * i * w.inv().expect("unit"), j),
        Identity::new("w = -(1+i+j+k)/2", (two_w + sum).s_valuation().at_least(n2), format!("{:?}", two_w + sum)),
    ]
}

/// The commutator relations modulo S^5.
pub fn commutator_table(s_precision: u32) -> Vec<Identity> {
    let el = |n| named_element(n, s_precision);
    let e = OrderElement::one(s_precision);
    let rows = [
        ("i", Named::I, "alpha", Named::Alpha, "alpha_i", el(Named::AlphaI)),
        ("i", Named::I, "alpha_i", Named::AlphaI, "e", e),
        ("i", Named::I, "alpha_j", Named::AlphaJ, "alpha^2", el(Named::AlphaSq)),
        ("i", Named::I, "alpha pi", Named::AlphaPi, "e", e),
        ("j", Named::J, "alpha", Named::Alpha, "alpha_j", el(Named::AlphaJ)),
        ("j", Named::J, "alpha_i", Named::AlphaI, "alpha^2", el(Named::AlphaSq)),
        ("j", Named::J, "alpha_j", Named::AlphaJ, "e", e),
        ("j", Named::J, "alpha pi", Named::AlphaPi, "e", e),
    ];
    rows.iter()
        .map(|(xl, x, yl, y, wl, want)| {
            let c = commutator(&el(*x), &el(*y)).expect("units");
            Identity::new(
                format!("[{xl}, {yl}] = {wl} mod S^5"),
                c.congruent_mod_s(want, 5).unwrap_or(false),
                format!("digits {}", format_digits(&c.digits(5))),
            )
        })
        .collect()
}

/// alpha_i, alpha_i alpha_j, alpha_i alpha_j alpha_k and alpha_i alpha_j alpha_k alpha^2 mod S^8,
/// written as c0 + c1 T with T = alpha S.
pub fn deep_filtration(s_precision: u32) -> Vec<Identity> {
    let n = s_precision.max(8);
    let p = witt_precision_for(n);
    let el = |name| named_element(name, n);
    let w = |a, b| WittNumber::new(a, b, p);
    let t = el(Named::Alpha) * el(Named::S);
    let t_form = |c0: WittNumber, c1: WittNumber| OrderElement::from_witt(c0) + OrderElement::from_witt(c1) * t;
    let (ai, aj, ak, a2) = (el(Named::AlphaI), el(Named::AlphaJ), el(Named::AlphaK), el(Named::AlphaSq));
    let row = |label: &str, x: OrderElement, want: OrderElement| {
        Identity::new(
            label,
            x.congruent_mod_s(&want, 8).unwrap_or(false),
            format!("digits {}", format_digits(&x.digits(8))),
        )
    };
    vec![
        row("alpha_i = 13 + (2+8w)T mod S^8", ai, t_form(w(13, 0), w(2, 8))),
        row("alpha_i alpha_j = 9+8w + (8+14w)T mod S^8", ai * aj, t_form(w(9, 8), w(8, 14))),
        row("alpha_i alpha_j alpha_k = 13+8w mod S^8", ai * aj * ak, t_form(w(13, 8), w(0, 0))),
        row("alpha_i alpha_j alpha_k alpha^2 = 1 mod S^8", ai * aj * ak * a2, OrderElement::one(n)),
    ]
}

/// Outcome of a batch of randomized checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub trials: u64,
    pub passed: u64,
    pub first_failure: Option<String>,
}

impl TrialSummary {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

fn random_tail<R: Rng>(rng: &mut R, len: usize) -> Vec<F4> {
    (0..len).map(|_| F4::from_bits(rng.gen_range(0..4))).collect()
}

/// The graded commutator formula on random pairs with filtration levels 1..=max_level.
pub fn commutator_formula_trials<R: Rng>(rng: &mut R, trials: u64, max_level: u32, s_precision: u32) -> TrialSummary {
    let mut passed = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        let (n, m) = (rng.gen_range(1..=max_level), rng.gen_range(1..=max_level));
        let (ta, tb) = (random_tail(rng, s_precision as usize), random_tail(rng, s_precision as usize));
        let a = filtration_element(&ta, n, s_precision);
        let b = filtration_element(&tb, m, s_precision);
        match check_commutator_formula(&a, n, &b, m) {
            Ok(c) if c.ok() => passed += 1,
            other => {
                first_failure.get_or_insert_with(|| {
                    format!(
                        "a = {} (level {n}), b = {} (level {m}): {other:?}",
                        format_digits(&a.digits(s_precision)),
                        format_digits(&b.digits(s_precision))
                    )
                });
            }
        }
    }
    TrialSummary { trials, passed, first_failure }
}

/// The squaring map on random elements of F_{n/2}.
pub fn squaring_trials<R: Rng>(rng: &mut R, trials: u64, max_level: u32, s_precision: u32) -> TrialSummary {
    let mut passed = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        let n = rng.gen_range(1..=max_level);
        let a = filtration_element(&random_tail(rng, s_precision as usize), n, s_precision);
        match check_squaring(&a, n) {
            Ok(c) if c.ok() => passed += 1,
            other => {
                first_failure.get_or_insert_with(|| {
                    format!("a = {} (level {n}): {other:?}", format_digits(&a.digits(s_precision)))
                });
            }
        }
    }
    TrialSummary { trials, passed, first_failure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn tables_hold() {
        assert_eq!(congruence_table(12).len(), 8);
        assert!(all_hold(&congruence_table(12)));
        assert!(all_hold(&determinant_facts()));
        assert!(all_hold(&quaternion_relations(16)));
        assert!(all_hold(&commutator_table(8)));
        assert!(all_hold(&deep_filtration(8)));
    }

    #[test]
    fn wrong_congruence_is_detected() {
        let x = named_element(Named::Alpha, 8);
        assert!(!congruence("alpha", &x, &digits_of(&[1, 0, 1, 0]), 4).holds);
    }

    #[test]
    fn random_trials_pass() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert!(commutator_formula_trials(&mut rng, 200, 10, 24).ok());
        assert!(squaring_trials(&mut rng, 200, 10, 24).ok());
    }
}
