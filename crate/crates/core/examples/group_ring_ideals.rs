//! Group rings Z/2^m[Q_n], canonical spans and ideal membership.

use morava_s2::group_ring::{GroupRingElement, RingDescriptor};
use morava_s2::howell::Submodule;
use morava_s2::ideal::{congruent_mod, ideal_span, IdealSpec, SubgroupRef};
use morava_s2::quotient::{QuotientGroup, DEFAULT_SIZE_CAP};
use morava_s2::stabilizer::{Group, Named};

fn main() -> Result<(), morava_s2::Error> {
    let n = 5;
    let q = QuotientGroup::enumerate(Group::S21, n, DEFAULT_SIZE_CAP)?;
    let desc = RingDescriptor::new(Group::S21, n, 3);
    let r = |x| GroupRingElement::named(desc, x);
    let e = GroupRingElement::one(desc);
    let (i, j, k) = (r(Named::I)?, r(Named::J)?, r(Named::K)?);
    let x = (&e - &i) * (&e - &j);
    println!("(e-i)(e-j) has {} terms, augmentation {}", x.support_len(), x.augmentation());

    let m = Submodule::span(3, 3, [vec![2, 4, 0], vec![0, 2, 6]]);
    println!("span in (Z/8)^3: rows {:?}, size 2^{}", m.rows(), m.log2_size());

    let aug = ideal_span(&IdealSpec::aug(SubgroupRef::S21), &q, 3)?;
    println!("I(S21) has size 2^{} in Z/8[Q_{n}]", aug.log2_size());
    let two_i2 = ideal_span(&IdealSpec::two_and_aug_squared(), &q, 3)?;
    let sum = &e + &i + &j + &k;
    println!("e+i+j+k in (2, I^2): {}", two_i2.contains(&sum)?);
    println!("(e-i)(e-j) = e+i+j+k mod (2, I^2): {}", congruent_mod(&x, &sum, &two_i2)?);
    Ok(())
}
