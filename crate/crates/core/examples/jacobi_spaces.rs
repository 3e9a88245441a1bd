//! Dimensions of spaces of Jacobi diagrams and reduction to normal form.

use lmokit::jacobi::nf::{chord_slot, free_slot};
use lmokit::jacobi::{normal_form, Anchor, Context, DVec, Diagram};
use lmokit::Q;

fn main() -> lmokit::Result<()> {
    for d in 1..=4 {
        println!("degree {d}: chord diagrams on a circle span {}", chord_slot(0, 1, d)?.dimension());
    }
    for m in 3..=6usize {
        let colors: Vec<u16> = (0..m as u16).collect();
        println!("trees with {m} distinct legs: {}", free_slot(&colors, m - 2)?.dimension());
    }

    // A vertex with legs on one circle reduces to chord diagrams.
    let y = Diagram::assemble(
        vec![Anchor::Circ(0); 3],
        &[0, 1, 2],
        &[[3, 4, 5]],
        &[(0, 3), (1, 4), (2, 5)],
        0,
    );
    let v = DVec::from_diagram(Context::circles(1), 2, y, Q::from_integer(1.into()));
    println!("vertex on a circle: {v}");
    println!("normal form:        {}", normal_form(&v)?);
    Ok(())
}
