//! Finite quotients Q_n of S21 and S2: orders, generators, cosets, conjugacy search.

use std::sync::Arc;

use morava_s2::quotient::{
    conjugacy_search, generated_subgroup, pi_conjugate, project_named, s21_order_from_graded, CosetSpace,
    QuotientGroup, DEFAULT_SIZE_CAP,
};
use morava_s2::stabilizer::{Group, Named};

fn main() -> Result<(), morava_s2::Error> {
    for n in 3..=6 {
        let q = QuotientGroup::enumerate(Group::S21, n, DEFAULT_SIZE_CAP)?;
        let gens = [Named::Alpha, Named::I, Named::Omega]
            .iter()
            .map(|&x| project_named(x, Group::S21, n))
            .collect::<Result<Vec<_>, _>>()?;
        let sub = generated_subgroup(&gens, Group::S21, n, DEFAULT_SIZE_CAP)?;
        println!(
            "|Q_{n}(S21)| = {} (graded prediction {}), <alpha, i, w> has {}",
            q.len(),
            s21_order_from_graded(n),
            sub.len()
        );
    }
    let n = 5;
    let q = Arc::new(QuotientGroup::enumerate(Group::S21, n, DEFAULT_SIZE_CAP)?);
    let el = |x| project_named(x, Group::S21, n);
    let g24 = Arc::new(generated_subgroup(&[el(Named::I)?, el(Named::Omega)?], Group::S21, n, DEFAULT_SIZE_CAP)?);
    let cosets = CosetSpace::new(q.clone(), g24.clone())?;
    println!(
        "Q_{n}/G24 has {} cosets; alpha sends the base coset to {}",
        cosets.len(),
        cosets.act(&el(Named::Alpha)?, cosets.base())
    );
    let twisted: Vec<_> = g24.elements().iter().map(pi_conjugate).collect();
    match conjugacy_search(&q, g24.elements(), &twisted) {
        Some(x) => println!("G24 and its pi-conjugate are conjugate in Q_{n} via {}", x.digit_string()),
        None => println!("G24 and its pi-conjugate are not conjugate in Q_{n}"),
    }
    Ok(())
}
