//! Set partitions: joins, composition through a middle set, and the orbit
//! polynomial of fixed-point-free involutions.

use lmokit::partitions::{compose_with_cir, enumerate_fpfi, fpfi_polynomial, rising_even_product, Involution, Partition};

fn main() -> lmokit::Result<()> {
    let a = Partition::from_labels(&[0, 0, 1, 2]);
    let b = Partition::from_labels(&[0, 1, 1, 2]);
    println!("join of {:?} and {:?} is {:?}", a.blocks(), b.blocks(), a.join(&b)?.blocks());

    // A partition of X ⊔ Y followed by one of Y ⊔ Z, with |X| = 1, |Y| = 3.
    let first = Partition::from_labels(&[0, 0, 1, 1]);
    let second = Partition::from_labels(&[0, 0, 1, 2]);
    let c = compose_with_cir(&first, 1, &second, 3)?;
    println!("composite {:?}, closed middle orbits {:?}", c.partition.blocks(), c.circles);

    for m in 1..=4 {
        let s0 = Involution::standard(2 * m)?;
        println!(
            "2m = {}: {} involutions, orbit polynomial {:?}, expected {:?}",
            2 * m,
            enumerate_fpfi(2 * m).len(),
            fpfi_polynomial(&s0),
            rising_even_product(m)
        );
    }
    Ok(())
}
