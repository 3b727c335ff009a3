//! Build Theta at level 8 with coefficients mod 8 and check its defining properties.

use std::time::Instant;

use morava_s2::resolution::DualityComplex;

fn main() -> Result<(), morava_s2::Error> {
    let level = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let t = Instant::now();
    let cx = DualityComplex::new(level, 3)?;
    println!("|Q_{level}| = {}, C0: {} cosets, C1: {} cosets", cx.group().len(), cx.c0().len(), cx.c1().len());
    let build = cx.build_theta()?;
    println!("Theta has {} terms (h has {})", build.theta.support_len(), build.h.support_len());
    let checks = cx.check_theta(&build.theta)?;
    println!("{checks:#?}");

    let cx1 = DualityComplex::new(level, 1)?;
    let theta1 = cx1.build_theta()?.theta;
    let c = cx1.mod_two_congruence(&theta1)?;
    println!("Theta = e + alpha mod (2, I^2): {} (computed at level {})", c.holds, c.reduced_level);
    println!("elapsed: {:?}", t.elapsed());
    Ok(())
}
