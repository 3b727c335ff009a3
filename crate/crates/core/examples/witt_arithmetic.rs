//! Arithmetic in W(F4) mod 2^P: products, inverses, Frobenius and the root of -7.

use morava_s2::witt::{WittNumber, F4};

fn main() -> Result<(), morava_s2::Error> {
    let p = 20;
    let a = WittNumber::new(1, 2, p);
    let b = WittNumber::new(1, -2, p);
    println!("(1+2w)(1-2w) = {}", a * b);
    println!("(1+2w)^-1 = {}", a.inv()?);
    println!("frobenius(w) = {}", WittNumber::omega(p).frobenius());
    let r = WittNumber::sqrt_m7(p);
    println!("sqrt(-7) = {r}, squared = {}, mod 8 = {}", r * r, r.x() & 7);
    let digits = WittNumber::from_int(3, p).digits(4);
    println!("3 has digits {digits:?}");
    println!("teichmuller(w) = {}", WittNumber::teichmuller(F4::OMEGA, p));
    Ok(())
}
