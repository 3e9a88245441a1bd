//! Oriented Brauer diagrams: composition with closed loops, tensor products
//! and doubling of components.

use lmokit::brauer::{format_word, OrientedBrauer, Sign};

fn main() -> lmokit::Result<()> {
    let cup = OrientedBrauer::cup(Sign::Plus);
    let cap = OrientedBrauer::cap(Sign::Plus);
    let circle = cup.then(&cap)?;
    println!("cup then cap: {} components, {} closed loops", circle.diagram.num_components(), circle.circles.len());

    let id = OrientedBrauer::identity(&[Sign::Plus]);
    let zig = id.tensor(&OrientedBrauer::cup(Sign::Minus)).then(&OrientedBrauer::cap(Sign::Plus).tensor(&id))?;
    println!(
        "zig-zag from {} to {} encodes as {}",
        format_word(&zig.diagram.source()),
        format_word(&zig.diagram.target()),
        zig.diagram.encode()
    );

    let swap = OrientedBrauer::swap([Sign::Plus, Sign::Minus]);
    let (doubled, copies) = swap.dbl(&[0])?;
    println!("doubling component 0 of the swap: {} -> {}", swap.encode(), doubled.encode());
    println!("copies per old component: {copies:?}");
    println!("reversing component 1: {}", swap.co(1)?.encode());
    Ok(())
}
