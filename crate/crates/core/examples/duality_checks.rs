//! The finite-level identities around the duality complex: generation of ker(augmentation),
//! the dual identities and the G24/C6 relations.

use morava_s2::resolution::{n1_identities, DualityComplex};

fn main() -> Result<(), morava_s2::Error> {
    let cx = DualityComplex::new(6, 3)?;
    let s = cx.aug_ideal_generation_check()?;
    println!("span of gamma(e - alpha)e0 vs ker(augmentation) in Z/8[Q_6/G24] (rank {}): equal = {}", s.dim, s.equal);
    let cx4 = DualityComplex::new(4, 3)?;
    let d = cx4.dual_identity_checks()?;
    println!("dual identities at level 4: {d:#?}");
    println!("G24/C6 relations: {:#?}", n1_identities(3)?);
    Ok(())
}
