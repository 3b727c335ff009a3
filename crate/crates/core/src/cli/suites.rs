//! The verification suites run by `s2 verify`.

use std::cell::OnceCell;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::config::Config;
use super::report::{Outcome, Report, Status};
use crate::catalog::{
    commutator_formula_trials, commutator_table, congruence_table, deep_filtration, determinant_facts,
    quaternion_relations, squaring_trials, Identity,
};
use crate::error::{Error, Result};
use crate::honda::{endo_hom_check, endo_series, honda_fgl, rational_two_series, Fgl, Series};
use crate::order::{format_digits, witt_precision_for, OrderElement};
use crate::quotient::{
    cache_dir_from_env, conjugacy_search, generated_subgroup, pi_conjugate, project, project_named,
    s21_order_from_graded, QuotientElement, QuotientGroup, DEFAULT_SIZE_CAP,
};
use crate::resolution::{n1_identities, DualityComplex, ThetaBuild};
use crate::stabilizer::{in_subgroup, named_element, squaring_index, Group, Named, SubgroupTag};
use crate::witt::{WittNumber, F4};

pub const SUITES: [&str; 9] =
    ["congruences", "lie", "subgroups", "quotients", "theta", "duality", "n1", "honda", "all"];

/// Lowest level at which the theta suite runs.
pub const THETA_MIN_LEVEL: u32 = 6;

const HONDA_DEGREE: usize = 64;
const HONDA_SMALL_DEGREE: usize = 32;
const HONDA_TRIALS: u64 = 20;

pub fn check_suite_name(name: &str) -> Result<()> {
    if SUITES.contains(&name) {
        Ok(())
    } else {
        Err(Error::Config(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", "))))
    }
}

/// Run a suite (or all of them) into a fresh report.
pub fn verify(suite: &str, cfg: &Config) -> Result<Report> {
    check_suite_name(suite)?;
    cfg.validate()?;
    let mut report = Report::new(cfg);
    let names: Vec<&str> = if suite == "all" { SUITES[..8].to_vec() } else { vec![suite] };
    for s in names {
        match s {
            "congruences" => congruences(&mut report),
            "lie" => lie(&mut report),
            "subgroups" => subgroups(&mut report),
            "quotients" => quotients(&mut report),
            "theta" => theta(&mut report),
            "duality" => duality(&mut report),
            "n1" => n1(&mut report),
            "honda" => honda(&mut report),
            _ => unreachable!("suite names are checked"),
        }
    }
    Ok(report)
}

fn fail_or_skip(e: Error) -> Outcome {
    match e {
        Error::LevelTooSmall { .. } => Outcome::skipped(e.to_string()),
        e => e.into(),
    }
}

fn run(body: impl FnOnce() -> Result<Outcome>) -> Outcome {
    body().unwrap_or_else(fail_or_skip)
}

fn identities_outcome(ids: &[Identity]) -> Outcome {
    let failures: Vec<&Identity> = ids.iter().filter(|i| !i.holds).collect();
    Outcome::from_bool(failures.is_empty(), json!({ "checked": ids.len(), "identities": ids, "failures": failures }))
}

fn cache_dir(cfg: &Config) -> Option<PathBuf> {
    cfg.cache_dir.clone().or_else(cache_dir_from_env)
}

fn congruences(report: &mut Report) {
    const KEYS: [&str; 8] = ["i", "j", "minus_one", "alpha", "alpha_i", "alpha_j", "alpha_squared", "alpha_pi"];
    let n = report.config().s_precision;
    if n < 5 {
        for key in KEYS {
            report.check("congruences", key, |_| Outcome::skipped(format!("s_precision {n} below 5")));
        }
        return;
    }
    for (key, id) in KEYS.iter().zip(congruence_table(n)) {
        report.check("congruences", key, |_| {
            Outcome::from_bool(id.holds, json!({ "identity": id.label, "observed": id.detail }))
        });
    }
}

/// Largest filtration level <= 10 whose commutators (n + m) stay inside the precision.
fn commutator_max_level(n: u32) -> u32 {
    (n.saturating_sub(1) / 2).min(10)
}

fn squaring_max_level(n: u32) -> u32 {
    (1..=10).take_while(|&k| squaring_index(k) < n).last().unwrap_or(0)
}

fn lie(report: &mut Report) {
    let cfg = report.config().clone();
    let n = cfg.s_precision;
    report.check("lie", "commutator_table", |_| {
        if n < 5 {
            return Outcome::skipped(format!("s_precision {n} below 5"));
        }
        identities_outcome(&commutator_table(n))
    });
    report.check("lie", "deep_filtration", |_| identities_outcome(&deep_filtration(n)));
    report.check("lie", "commutator_formula", |seed| {
        let max = commutator_max_level(n);
        if max == 0 {
            return Outcome::skipped(format!("s_precision {n} too small"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = commutator_formula_trials(&mut rng, cfg.trials, max, n);
        Outcome::from_bool(t.ok(), json!({ "max_filtration_level": max, "result": t }))
    });
    report.check("lie", "squaring", |seed| {
        let max = squaring_max_level(n);
        if max == 0 {
            return Outcome::skipped(format!("s_precision {n} too small"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = squaring_trials(&mut rng, cfg.trials, max, n);
        Outcome::from_bool(t.ok(), json!({ "max_filtration_level": max, "result": t }))
    });
}

fn subgroups(report: &mut Report) {
    let cfg = report.config().clone();
    let n = cfg.s_precision;
    report.check("subgroups", "determinants", |_| identities_outcome(&determinant_facts()));
    report.check("subgroups", "quaternion", |_| identities_outcome(&quaternion_relations(n)));
    report.check("subgroups", "g24", |_| {
        run(|| {
            let level = cfg.level;
            let el = |x| project_named(x, Group::S21, level);
            let g24 = generated_subgroup(&[el(Named::I)?, el(Named::Omega)?], Group::S21, level, DEFAULT_SIZE_CAP)?;
            let q = QuotientGroup::enumerate_cached(Group::S21, level, DEFAULT_SIZE_CAP, cache_dir(&cfg).as_deref())?;
            let ok = g24.len() == 24 && q.len() % 24 == 0 && g24.is_subgroup_of(&q);
            Ok(Outcome::from_bool(
                ok,
                json!({
                    "order": g24.len(),
                    "quotient_order": q.len(),
                    "index": q.len() / g24.len().max(1),
                    "equals_quotient": g24.len() == q.len(),
                }),
            ))
        })
    });
    report.check("subgroups", "membership", |_| {
        run(|| {
            let p = n.max(8);
            let el = |x| named_element(x, p);
            let tag = SubgroupTag::of;
            let cases = [
                ("pi in K", el(Named::Pi), tag(Group::K), true),
                ("pi in K1", el(Named::Pi), tag(Group::K1), false),
                ("pi in S21", el(Named::Pi), tag(Group::S21), false),
                ("i in K", el(Named::I), tag(Group::K), false),
                ("i in S21", el(Named::I), tag(Group::S21), true),
                ("w in S21", el(Named::Omega), tag(Group::S21), true),
                ("alpha in K1", el(Named::Alpha), tag(Group::K1), true),
                ("alpha in F_3/2 K1", el(Named::Alpha), SubgroupTag::filtered(Group::K1, 3), false),
                ("alpha_i in F_3/2 K1", el(Named::AlphaI), SubgroupTag::filtered(Group::K1, 3), true),
                ("alpha_j in F_3/2 K1", el(Named::AlphaJ), SubgroupTag::filtered(Group::K1, 3), true),
                ("alpha_k in F_3/2 K1", el(Named::AlphaK), SubgroupTag::filtered(Group::K1, 3), true),
            ];
            let mut rows = Vec::new();
            let mut ok = true;
            for (label, g, t, want) in cases {
                let got = in_subgroup(&g, t)?;
                ok &= got == want;
                rows.push(json!({ "case": label, "expected": want, "observed": got }));
            }
            Ok(Outcome::from_bool(ok, json!({ "cases": rows })))
        })
    });
    report.check("subgroups", "g24_conjugacy", |_| {
        run(|| {
            let level = cfg.level;
            let r = conjsearch(level, cache_dir(&cfg))?;
            let status = if r["conjugate"] == json!(true) { Status::Pass } else { Status::Inconclusive };
            Ok(Outcome::new(status, r))
        })
    });
}

/// Search Q_n(S21) for x with x G24 x^-1 = pi G24 pi^-1.
pub fn conjsearch(level: u32, cache: Option<PathBuf>) -> Result<Value> {
    let el = |x| project_named(x, Group::S21, level);
    let g24 = generated_subgroup(&[el(Named::I)?, el(Named::Omega)?], Group::S21, level, DEFAULT_SIZE_CAP)?;
    let twisted: Vec<QuotientElement> = g24.elements().iter().map(pi_conjugate).collect();
    let q = QuotientGroup::enumerate_cached(Group::S21, level, DEFAULT_SIZE_CAP, cache.as_deref())?;
    let found = conjugacy_search(&q, g24.elements(), &twisted);
    Ok(json!({
        "level": level,
        "searched": q.len(),
        "conjugate": found.is_some(),
        "witness": found.map(|x| x.digit_string()),
        "note": if found.is_some() { "conjugate at this level" } else { "not conjugate at this level; no claim about the limit" },
    }))
}

fn random_word<R: Rng>(rng: &mut R, gens: &[OrderElement], len: usize) -> Result<OrderElement> {
    let n = gens[0].s_precision();
    let mut x = OrderElement::one(n);
    for _ in 0..len {
        let g = gens[rng.gen_range(0..gens.len())];
        x = x * if rng.gen_bool(0.5) { g } else { g.inv()? };
    }
    Ok(x)
}

fn quotients(report: &mut Report) {
    let cfg = report.config().clone();
    let top = cfg.level.min(6);
    let cache = cache_dir(&cfg);
    report.check("quotients", "orders", |_| {
        if top < 3 {
            return Outcome::skipped(format!("level {} below 3", cfg.level));
        }
        run(|| {
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 3..=top {
                let q = QuotientGroup::enumerate_cached(Group::S21, n, DEFAULT_SIZE_CAP, cache.as_deref())?;
                let predicted = s21_order_from_graded(n);
                ok &= q.len() as u64 == predicted;
                rows.push(json!({ "level": n, "enumerated": q.len(), "predicted": predicted }));
            }
            Ok(Outcome::from_bool(ok, json!({ "levels": rows })))
        })
    });
    report.check("quotients", "generation", |_| {
        if top < 3 {
            return Outcome::skipped(format!("level {} below 3", cfg.level));
        }
        run(|| {
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 3..=top {
                for (group, names) in [
                    (Group::S21, &[Named::Alpha, Named::I, Named::Omega][..]),
                    (Group::S2, &[Named::Pi, Named::Alpha, Named::I, Named::Omega][..]),
                ] {
                    let gens = names.iter().map(|&x| project_named(x, group, n)).collect::<Result<Vec<_>>>()?;
                    let sub = generated_subgroup(&gens, group, n, DEFAULT_SIZE_CAP)?;
                    let q = QuotientGroup::enumerate_cached(group, n, DEFAULT_SIZE_CAP, cache.as_deref())?;
                    let gen_ok = sub.len() == q.len();
                    ok &= gen_ok;
                    rows.push(json!({
                        "level": n,
                        "group": group.name(),
                        "generated": sub.len(),
                        "quotient": q.len(),
                        "generators": names.iter().map(|x| x.symbol()).collect::<Vec<_>>(),
                    }));
                }
            }
            Ok(Outcome::from_bool(ok, json!({ "cases": rows })))
        })
    });
    report.check("quotients", "well_defined", |seed| {
        run(|| {
            let level = cfg.level;
            let q = QuotientGroup::enumerate_cached(Group::S21, level, DEFAULT_SIZE_CAP, cache.as_deref())?;
            let order = q.len() as i64;
            let p = level + 8;
            let gens: Vec<OrderElement> =
                [Named::Alpha, Named::I, Named::Omega].iter().map(|&x| named_element(x, p)).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failure = None;
            for _ in 0..cfg.trials {
                let g = random_word(&mut rng, &gens, 6)?;
                let h = random_word(&mut rng, &gens, 6)?;
                // w^|Q_n| lies in the kernel, so g w^|Q_n| is another lift of the class of g
                let u = random_word(&mut rng, &gens, 3)?.pow(order)?;
                let v = random_word(&mut rng, &gens, 3)?.pow(order)?;
                let (pg, ph) = (project(&g, Group::S21, level)?, project(&h, Group::S21, level)?);
                let lifted = project(&(g * u * h * v), Group::S21, level)?;
                let same_class = project(&(g * u), Group::S21, level)? == pg;
                if !same_class || lifted != pg.mul(&ph) {
                    failure = Some(json!({
                        "g": format_digits(&g.digits(p)),
                        "h": format_digits(&h.digits(p)),
                        "u": format_digits(&u.digits(p)),
                        "v": format_digits(&v.digits(p)),
                    }));
                    break;
                }
            }
            Ok(Outcome::from_bool(
                failure.is_none(),
                json!({ "level": level, "trials": cfg.trials, "witness": failure }),
            ))
        })
    });
    report.check("quotients", "digit_round_trip", |seed| {
        run(|| {
            let level = cfg.level;
            let q = QuotientGroup::enumerate_cached(Group::S21, level, DEFAULT_SIZE_CAP, cache.as_deref())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = cfg.s_precision;
            let prec = witt_precision_for(n);
            let mut failure = None;
            for _ in 0..cfg.trials {
                let g = q.element(rng.gen_range(0..q.len()));
                let back = QuotientElement::from_digits(Group::S21, &g.digits())?;
                let x = OrderElement::new(
                    WittNumber::new(rng.gen(), rng.gen(), prec),
                    WittNumber::new(rng.gen(), rng.gen(), prec),
                )
                .truncate(n);
                let xb = OrderElement::from_digits(&x.digits(n), n);
                if back != g || xb != x {
                    failure = Some(json!({ "quotient_element": g.digit_string(), "order_element": format!("{x:?}") }));
                    break;
                }
            }
            Ok(Outcome::from_bool(failure.is_none(), json!({ "trials": cfg.trials, "witness": failure })))
        })
    });
    report.check("quotients", "cache", |seed| {
        run(|| {
            let level = cfg.level.min(5);
            if level < 3 {
                return Ok(Outcome::skipped(format!("level {} below 3", cfg.level)));
            }
            let dir = std::env::temp_dir().join(format!("morava-s2-cache-check-{}-{seed:016x}", std::process::id()));
            std::fs::create_dir_all(&dir).map_err(|e| Error::Io(e.to_string()))?;
            let fresh = QuotientGroup::enumerate(Group::S21, level, DEFAULT_SIZE_CAP)?;
            let first = QuotientGroup::enumerate_cached(Group::S21, level, DEFAULT_SIZE_CAP, Some(&dir));
            let second = QuotientGroup::enumerate_cached(Group::S21, level, DEFAULT_SIZE_CAP, Some(&dir));
            let _ = std::fs::remove_dir_all(&dir);
            let (first, second) = (first?, second?);
            let ok = first.elements() == fresh.elements() && second.elements() == fresh.elements();
            Ok(Outcome::from_bool(ok, json!({ "level": level, "elements": fresh.len() })))
        })
    });
}

type Built = Result<(DualityComplex, ThetaBuild)>;

fn build(level: u32, bits: u32, cache: Option<&std::path::Path>) -> Built {
    let cx = DualityComplex::with_cache(level, bits, cache)?;
    let b = cx.build_theta()?;
    Ok((cx, b))
}

fn theta(report: &mut Report) {
    let cfg = report.config().clone();
    let names = ["beta", "certificate", "congruence_identities", "mod_two", "pipeline"];
    if cfg.level < THETA_MIN_LEVEL {
        for name in names {
            report.check("theta", name, |_| Outcome::skipped(format!("level {} below {THETA_MIN_LEVEL}", cfg.level)));
        }
        return;
    }
    let cache = cache_dir(&cfg);
    let (tl, bits) = (cfg.theta_level, cfg.coeff_bits);
    let main: OnceCell<Built> = OnceCell::new();
    let small: OnceCell<Built> = OnceCell::new();
    let get_main = || main.get_or_init(|| build(tl, bits, cache.as_deref())).clone();
    let get_small = || small.get_or_init(|| build(THETA_MIN_LEVEL, bits, cache.as_deref())).clone();
    report.check("theta", "pipeline", |_| {
        run(|| {
            let (cx, b) = get_main()?;
            let checks = cx.check_theta(&b.theta)?;
            Ok(Outcome::from_bool(
                checks.all(),
                json!({
                    "level": tl,
                    "coeff_bits": bits,
                    "theta_terms": b.theta.support_len(),
                    "h_is_zero": b.h.is_zero(),
                    "checks": checks,
                }),
            ))
        })
    });
    report.check("theta", "certificate", |_| {
        run(|| {
            let (cx, b) = get_main()?;
            let ok = cx.certify_h(&b.h)?;
            Ok(Outcome::from_bool(ok, json!({ "level": tl, "h_terms": b.h.support_len() })))
        })
    });
    report.check("theta", "mod_two", |_| {
        run(|| {
            let (cx, b) = build(tl, 1, cache.as_deref())?;
            let c = cx.mod_two_congruence(&b.theta)?;
            Ok(Outcome::from_bool(c.holds, json!({ "level": tl, "coeff_bits": 1, "congruence": c })))
        })
    });
    report.check("theta", "beta", |_| {
        run(|| {
            let (cx, b) = get_small()?;
            let c = cx.beta_congruence(&b.theta)?;
            Ok(Outcome::from_bool(c.holds, json!({ "level": THETA_MIN_LEVEL, "coeff_bits": bits, "congruence": c })))
        })
    });
    report.check("theta", "congruence_identities", |_| {
        run(|| {
            let (cx, _) = get_small()?;
            let c = cx.congruence_identities()?;
            Ok(Outcome::from_bool(c.all(), json!({ "level": THETA_MIN_LEVEL, "identities": c })))
        })
    });
}

fn duality(report: &mut Report) {
    let cfg = report.config().clone();
    let cache = cache_dir(&cfg);
    let cx: OnceCell<Result<DualityComplex>> = OnceCell::new();
    let get = || cx.get_or_init(|| DualityComplex::with_cache(cfg.level, cfg.coeff_bits, cache.as_deref())).clone();
    report.check("duality", "n0", |_| {
        run(|| {
            let s = get()?.aug_ideal_generation_check()?;
            Ok(Outcome::from_bool(s.equal, json!({ "level": cfg.level, "span": s })))
        })
    });
    report.check("duality", "dual_identities", |_| {
        run(|| {
            let d = get()?.dual_identity_checks()?;
            Ok(Outcome::from_bool(d.all(), json!({ "level": cfg.level, "checks": d })))
        })
    });
}

fn n1(report: &mut Report) {
    let bits = report.config().coeff_bits;
    report.check("n1", "identities", |_| {
        run(|| {
            let c = n1_identities(bits)?;
            Ok(Outcome::from_bool(c.all(), json!({ "coeff_bits": bits, "identities": c })))
        })
    });
}

fn random_order_element<R: Rng>(rng: &mut R) -> OrderElement {
    let w = |rng: &mut R| WittNumber::new(rng.gen(), rng.gen(), 6);
    OrderElement::new(w(rng), w(rng))
}

fn honda(report: &mut Report) {
    let big: OnceCell<Result<Fgl>> = OnceCell::new();
    let small: OnceCell<Result<Fgl>> = OnceCell::new();
    let get_big = || big.get_or_init(|| honda_fgl(HONDA_DEGREE)).clone();
    let get_small = || small.get_or_init(|| honda_fgl(HONDA_SMALL_DEGREE)).clone();
    report.check("honda", "axioms", |_| {
        run(|| {
            let f = get_big()?;
            let (u, s, a) = (f.is_unital(), f.is_symmetric(), f.is_associative());
            Ok(Outcome::from_bool(
                u && s && a,
                json!({ "degree": HONDA_DEGREE, "unital": u, "symmetric": s, "associative": a, "terms": f.terms().len() }),
            ))
        })
    });
    report.check("honda", "two_series", |_| {
        run(|| {
            let f = get_big()?;
            let want = Series::monomial(HONDA_DEGREE, F4::ONE, 4);
            let (law, rational) = (f.two_series(), rational_two_series(HONDA_DEGREE)?);
            Ok(Outcome::from_bool(
                law == want && rational == want,
                json!({ "degree": HONDA_DEGREE, "from_law": law.leading_terms(4), "from_logarithm": rational.leading_terms(4) }),
            ))
        })
    });
    report.check("honda", "generators", |_| {
        run(|| {
            let f = get_big()?;
            let d = HONDA_DEGREE;
            let cases = [
                ("S", named_element(Named::S, 12), Series::monomial(d, F4::ONE, 2)),
                ("w", named_element(Named::Omega, 12), Series::monomial(d, F4::OMEGA, 1)),
                ("2", OrderElement::from_int(2, 12), Series::monomial(d, F4::ONE, 4)),
                ("e", OrderElement::one(12), Series::x(d)),
            ];
            let mut rows = Vec::new();
            let mut ok = true;
            for (label, g, want) in cases {
                let got = endo_series(&g, &f)?;
                ok &= got == want;
                rows.push(
                    json!({ "element": label, "series": got.leading_terms(4), "expected": want.leading_terms(4) }),
                );
            }
            Ok(Outcome::from_bool(ok, json!({ "degree": d, "cases": rows })))
        })
    });
    report.check("honda", "negation", |_| {
        run(|| {
            let f = get_small()?;
            let i = endo_series(&named_element(Named::I, 12), &f)?;
            let neg = f.negation_series();
            let minus_one = endo_series(&OrderElement::from_int(-1, 12), &f)?;
            let ok = i.compose(&i) == neg && minus_one == neg;
            Ok(Outcome::from_bool(
                ok,
                json!({ "degree": HONDA_SMALL_DEGREE, "i_squared": i.compose(&i).leading_terms(6), "negation": neg.leading_terms(6) }),
            ))
        })
    });
    report.check("honda", "random_homomorphisms", |seed| {
        run(|| {
            let f = get_small()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failure = None;
            for _ in 0..HONDA_TRIALS {
                let (g, h) = (random_order_element(&mut rng), random_order_element(&mut rng));
                let c = endo_hom_check(&g, &h, &f)?;
                if !c.ok() && failure.is_none() {
                    failure = Some(json!({ "gamma": format!("{g:?}"), "delta": format!("{h:?}"), "check": c }));
                }
            }
            Ok(Outcome::from_bool(
                failure.is_none(),
                json!({ "degree": HONDA_SMALL_DEGREE, "trials": HONDA_TRIALS, "witness": failure }),
            ))
        })
    });
    report.check("honda", "frobenius_twist", |seed| {
        run(|| {
            let f = get_small()?;
            let d = HONDA_SMALL_DEGREE;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failure = None;
            for _ in 0..HONDA_TRIALS {
                let a = WittNumber::new(rng.gen(), rng.gen(), 6);
                let lhs = endo_series(&OrderElement::from_witt(a), &f)?.compose(&Series::monomial(d, F4::ONE, 2));
                let rhs = endo_series(&OrderElement::from_witt(a.frobenius()), &f)?.frobenius_square();
                if lhs != rhs && failure.is_none() {
                    failure = Some(json!({ "a": format!("{a:?}") }));
                }
            }
            Ok(Outcome::from_bool(
                failure.is_none(),
                json!({ "degree": d, "trials": HONDA_TRIALS, "witness": failure }),
            ))
        })
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruences_suite_passes_eight_of_eight() {
        let r = verify("congruences", &Config::default()).unwrap();
        let c = r.counts();
        assert_eq!((c.total, c.pass), (8, 8));
    }

    #[test]
    fn theta_is_skipped_below_level_six() {
        let cfg = Config { level: 3, ..Config::default() };
        let r = verify("theta", &cfg).unwrap();
        assert!(r.records().iter().all(|c| c.status == Status::Skipped));
        assert!(!r.failed());
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        assert!(matches!(verify("nope", &Config::default()), Err(Error::Config(_))));
    }

    #[test]
    fn precision_bounds() {
        assert_eq!(commutator_max_level(24), 10);
        assert_eq!(commutator_max_level(16), 7);
        assert!(squaring_index(squaring_max_level(16)) < 16);
    }
}
