//! Acceptance criteria: one PASS/FAIL line per criterion, each under its time budget.
//!
//! Criteria 3 and 6 are checked literally and fail: Q_3(S21) has 48 elements, not 24, because
//! gr_{2/2} S21 is F4 (the digits of -1 and alpha both survive). They are listed in KNOWN_RED
//! with the measured numbers; any other failure makes the process exit nonzero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use morava_s2::catalog::{
    all_hold, commutator_formula_trials, commutator_table, congruence_table, deep_filtration, determinant_facts,
    quaternion_relations,
};
use morava_s2::cli::{verify, Config, Status};
use morava_s2::honda::{endo_hom_check, endo_series, honda_fgl, Series};
use morava_s2::howell::Submodule;
use morava_s2::order::{witt_precision_for, OrderElement};
use morava_s2::quotient::{
    generated_subgroup, project_named, s21_order_from_graded, QuotientElement, QuotientGroup, DEFAULT_SIZE_CAP,
};
use morava_s2::resolution::{n1_identities, DualityComplex};
use morava_s2::stabilizer::{named_element, Group, Named};
use morava_s2::witt::{WittNumber, F4};
use morava_s2::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_RED: [u32; 2] = [3, 6];

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    body: fn() -> Result<(bool, String)>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn c1() -> Result<(bool, String)> {
    let t = congruence_table(12);
    let held = t.iter().filter(|i| i.holds).count();
    Ok((t.len() == 8 && held == 8, format!("{held}/8 congruences hold at s_precision 12")))
}

fn c2() -> Result<(bool, String)> {
    let f = determinant_facts();
    Ok((all_hold(&f), f.iter().map(|i| format!("{}: {}", i.label, i.holds)).collect::<Vec<_>>().join("; ")))
}

fn c3() -> Result<(bool, String)> {
    let rel = quaternion_relations(16);
    let el = |x| project_named(x, Group::S21, 3);
    let g24 = generated_subgroup(&[el(Named::I)?, el(Named::Omega)?], Group::S21, 3, DEFAULT_SIZE_CAP)?;
    let q3 = QuotientGroup::enumerate(Group::S21, 3, DEFAULT_SIZE_CAP)?;
    let held = rel.iter().filter(|i| i.holds).count();
    let whole = g24.len() == q3.len();
    Ok((
        all_hold(&rel) && g24.len() == 24 && whole,
        format!(
            "{held}/{} relations at s_precision 16; |<i, w>| = {}; |Q_3(S21)| = {} (equal: {whole})",
            rel.len(),
            g24.len(),
            q3.len()
        ),
    ))
}

fn c4() -> Result<(bool, String)> {
    let d = deep_filtration(8);
    Ok((all_hold(&d), format!("{}/4 congruences mod S^8", d.iter().filter(|i| i.holds).count())))
}

fn c5() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let t = commutator_formula_trials(&mut rng, 10_000, 10, 24);
    Ok((
        t.ok(),
        format!(
            "{}/{} random pairs (levels 1..10, s_precision 24){}",
            t.passed,
            t.trials,
            t.first_failure.map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    ))
}

/// 3 * prod_{s=1}^{n-1} |gr_{s/2} S21| with gr = F2 for even s and F4 for odd s, as stated.
fn stated_graded_order(n: u32) -> u64 {
    (1..n).fold(3, |acc, s| acc * if s % 2 == 1 { 4 } else { 2 })
}

fn c6() -> Result<(bool, String)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 3..=6 {
        let q = QuotientGroup::enumerate(Group::S21, n, DEFAULT_SIZE_CAP)?;
        // independent brute force: every unit of Q_n(S2) whose lift has det = +-1 mod 2^ceil(n/2)
        let all = QuotientGroup::enumerate(Group::S2, n, DEFAULT_SIZE_CAP)?;
        let modulus = 1u64 << n.div_ceil(2);
        let brute = all
            .elements()
            .iter()
            .filter(|g| {
                let d = g.lift().det();
                d.y() % modulus == 0 && (d.x() % modulus == 1 || (d.x() + 1) % modulus == 0)
            })
            .count();
        ok &= q.len() as u64 == stated_graded_order(n) && brute == q.len();
        rows.push(format!(
            "n={n}: enumerated {} brute {brute} stated {} corrected {}",
            q.len(),
            stated_graded_order(n),
            s21_order_from_graded(n)
        ));
    }
    Ok((ok, rows.join("; ")))
}

fn c7() -> Result<(bool, String)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 3..=6 {
        for (group, names) in [
            (Group::S21, &[Named::Alpha, Named::I, Named::Omega][..]),
            (Group::S2, &[Named::Pi, Named::Alpha, Named::I, Named::Omega][..]),
        ] {
            let gens = names.iter().map(|&x| project_named(x, group, n)).collect::<Result<Vec<_>>>()?;
            let sub = generated_subgroup(&gens, group, n, DEFAULT_SIZE_CAP)?;
            let q = QuotientGroup::enumerate(group, n, DEFAULT_SIZE_CAP)?;
            ok &= sub.len() == q.len();
            rows.push(format!("Q_{n}({}) {}/{}", group.name(), sub.len(), q.len()));
        }
    }
    Ok((ok, rows.join("; ")))
}

fn c8() -> Result<(bool, String)> {
    let t = commutator_table(8);
    Ok((t.len() == 8 && all_hold(&t), format!("{}/8 relations mod S^5", t.iter().filter(|i| i.holds).count())))
}

fn c9() -> Result<(bool, String)> {
    let cx = DualityComplex::new(8, 3)?;
    let b = cx.build_theta()?;
    let c = cx.check_theta(&b.theta)?;
    let ok = c.kernel && c.mod_four && c.c6_well_defined && c.c6_commutes && c.all();
    Ok((
        ok,
        format!(
            "Theta has {} terms; d1 d2 = 0: {}; Theta e1 = (3+i+j+k)e1 mod (4, IK1): {}; C6-equivariant: {}",
            b.theta.support_len(),
            c.kernel,
            c.mod_four,
            c.c6_well_defined && c.c6_commutes
        ),
    ))
}

fn c10() -> Result<(bool, String)> {
    let cx1 = DualityComplex::new(8, 1)?;
    let t1 = cx1.build_theta()?.theta;
    let m2 = cx1.mod_two_congruence(&t1)?;
    let cx6 = DualityComplex::new(6, 3)?;
    let t6 = cx6.build_theta()?.theta;
    let beta = cx6.beta_congruence(&t6)?;
    let ids = cx6.congruence_identities()?;
    Ok((
        m2.holds && beta.holds && ids.factorization && ids.geometric_sum,
        format!(
            "mod (2, I^2) at (8,1): {}; mod J at (6,3): {}; e - alpha_t factorization: {}; geometric sum mod 8: {}",
            m2.holds, beta.holds, ids.factorization, ids.geometric_sum
        ),
    ))
}

fn c11() -> Result<(bool, String)> {
    let s = DualityComplex::new(6, 3)?.aug_ideal_generation_check()?;
    Ok((s.equal && s.dim == 64, format!("rank {}; span 2^{} vs kernel 2^{}", s.dim, s.image_log2, s.kernel_log2)))
}

fn c12() -> Result<(bool, String)> {
    let c = n1_identities(3)?;
    Ok((c.all(), format!("{c:?}")))
}

fn c13() -> Result<(bool, String)> {
    let d = DualityComplex::new(4, 3)?.dual_identity_checks()?;
    Ok((
        d.all(),
        format!(
            "coset identity {}; commuted identity {}; pairing invertible {} (rank {}/{}); d3' well defined {}",
            d.coset_identity,
            d.commuted_identity,
            d.pairing.invertible,
            d.pairing.rank,
            d.pairing.cosets,
            d.d3_well_defined
        ),
    ))
}

fn c14() -> Result<(bool, String)> {
    let f64_ = honda_fgl(64)?;
    let two = f64_.two_series() == Series::monomial(64, F4::ONE, 4);
    let s = endo_series(&named_element(Named::S, 12), &f64_)? == Series::monomial(64, F4::ONE, 2);
    let w = endo_series(&named_element(Named::Omega, 12), &f64_)? == Series::monomial(64, F4::OMEGA, 1);
    let f32_ = honda_fgl(32)?;
    let i = endo_series(&named_element(Named::I, 12), &f32_)?;
    let neg = i.compose(&i) == f32_.negation_series();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0014);
    let mut homs = 0;
    for _ in 0..20 {
        let mut r =
            || OrderElement::new(WittNumber::new(rng.gen(), rng.gen(), 6), WittNumber::new(rng.gen(), rng.gen(), 6));
        let (g, h) = (r(), r());
        homs += endo_hom_check(&g, &h, &f32_)?.ok() as u32;
    }
    Ok((two && s && w && neg && homs == 20, format!(
        "[2] = x^4 mod x^64: {two}; S = x^2: {s}; w = zeta x: {w}; i o i = [-1] mod x^32: {neg}; homomorphisms {homs}/20"
    )))
}

fn c15() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0015);
    let n = 24;
    let p = witt_precision_for(n);
    let q6 = QuotientGroup::enumerate(Group::S21, 6, DEFAULT_SIZE_CAP)?;
    let mut digits_ok = 0;
    for _ in 0..10_000 {
        let x = OrderElement::new(WittNumber::new(rng.gen(), rng.gen(), p), WittNumber::new(rng.gen(), rng.gen(), p))
            .truncate(n);
        let g = q6.element(rng.gen_range(0..q6.len()));
        let ok = OrderElement::from_digits(&x.digits(n), n) == x
            && QuotientElement::from_digits(Group::S21, &g.digits())? == g;
        digits_ok += ok as u32;
    }
    let wd = verify("quotients", &Config { trials: 1000, level: 6, ..Config::default() })?;
    let well_defined = wd.records().iter().any(|r| r.check == "quotients.well_defined" && r.status == Status::Pass);
    let mut canonical = 0;
    for _ in 0..200 {
        let gens: Vec<Vec<u64>> = (0..3).map(|_| (0..5).map(|_| rng.gen_range(0..8)).collect()).collect();
        let a = Submodule::span(5, 3, gens.clone());
        // recombine: add a multiple of one generator to another and permute
        let (s, t, k) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..8u64));
        let mut other = gens.clone();
        if s != t {
            let add: Vec<u64> = gens[t].iter().map(|v| v * k).collect();
            other[s] = other[s].iter().zip(add).map(|(a, b)| (a + b) & 7).collect();
        }
        other.reverse();
        canonical += (a.rows() == Submodule::span(5, 3, other).rows()) as u32;
    }
    let cfg = Config { level: 4, trials: 50, ..Config::default() };
    let r1 = verify("all", &cfg)?.to_jsonl("all");
    let r2 = verify("all", &cfg)?.to_jsonl("all");
    let deterministic = r1 == r2;
    Ok((
        digits_ok == 10_000 && well_defined && canonical == 200 && deterministic,
        format!(
            "digit round trips {digits_ok}/10000; well-definedness (1000 samples): {well_defined}; Howell canonical {canonical}/200; byte-identical reports: {deterministic}"
        ),
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "leading-term congruence table", budget: secs(1), body: c1 },
        Criterion { id: 2, title: "determinants and sqrt(-7)", budget: secs(1), body: c2 },
        Criterion { id: 3, title: "quaternion relations and G24 = Q_3(S21)", budget: secs(5), body: c3 },
        Criterion { id: 4, title: "deep filtration T-forms", budget: secs(1), body: c4 },
        Criterion { id: 5, title: "graded commutator formula", budget: secs(30), body: c5 },
        Criterion { id: 6, title: "|Q_n(S21)| = 3 prod |gr|, n = 3..6", budget: secs(60), body: c6 },
        Criterion { id: 7, title: "topological generators, n = 3..6", budget: secs(60), body: c7 },
        Criterion { id: 8, title: "commutator table mod S^5", budget: secs(1), body: c8 },
        Criterion { id: 9, title: "Theta pipeline at (8, 3)", budget: secs(600), body: c9 },
        Criterion { id: 10, title: "Theta congruences", budget: secs(600), body: c10 },
        Criterion { id: 11, title: "span of gamma(e - alpha)e0 = ker(augmentation)", budget: secs(60), body: c11 },
        Criterion { id: 12, title: "G24/C6 identities", budget: secs(1), body: c12 },
        Criterion { id: 13, title: "dual identities at (4, 3)", budget: secs(60), body: c13 },
        Criterion { id: 14, title: "Honda formal group law", budget: secs(300), body: c14 },
        Criterion { id: 15, title: "infrastructure properties", budget: secs(60), body: c15 },
    ];
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.body)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = elapsed <= c.budget;
        let pass = ok && in_time;
        println!(
            "criterion {:>2} {} {:>8.2}s / {}s  {}: {}{}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            c.title,
            detail,
            if in_time { "" } else { " (over budget)" }
        );
        if !pass && !KNOWN_RED.contains(&c.id) {
            unexpected.push(c.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: only the documented criteria {KNOWN_RED:?} fail");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        ExitCode::FAILURE
    }
}
