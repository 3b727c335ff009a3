//! Elements a + bS of the maximal order: products, inverses and S-adic digits.

use morava_s2::order::{format_digits, OrderElement};
use morava_s2::stabilizer::{named_element, Named};

fn main() -> Result<(), morava_s2::Error> {
    let n = 12;
    for name in Named::ALL {
        let x = named_element(name, n);
        println!("{:>8} = {} (mod S^{n})", name.symbol(), format_digits(&x.digits(n)));
    }
    let s = OrderElement::s(n);
    let w = named_element(Named::Omega, n);
    println!("S w = w^2 S: {}", s * w == w * w * s);
    println!("S^2 = 2: {}", s * s == OrderElement::from_int(2, n));
    let pi = named_element(Named::Pi, n);
    println!("pi^-1 = {}", format_digits(&pi.inv()?.digits(n)));
    Ok(())
}
