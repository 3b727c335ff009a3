//! The height-two Honda formal group law mod 2 and endomorphisms from S-adic digits.

use morava_s2::honda::{endo_hom_check, endo_series, honda_fgl};
use morava_s2::order::OrderElement;
use morava_s2::stabilizer::{named_element, Named};

fn main() -> Result<(), morava_s2::Error> {
    let d = 32;
    let f = honda_fgl(d)?;
    println!("F has {} nonzero terms below degree {d}; associative: {}", f.terms().len(), f.is_associative());
    println!("[2](x) = {}", f.two_series().leading_terms(3));
    for name in [Named::S, Named::Omega, Named::I, Named::Alpha] {
        let s = endo_series(&named_element(name, 12), &f)?;
        println!("{:>6}(x) = {}", name.symbol(), s.leading_terms(4));
    }
    let (g, h) = (named_element(Named::Alpha, 12), named_element(Named::Pi, 12));
    println!("alpha, pi: {:?}", endo_hom_check(&g, &h, &f)?);
    println!("[-1](x) = {}", endo_series(&OrderElement::from_int(-1, 12), &f)?.leading_terms(4));
    Ok(())
}
