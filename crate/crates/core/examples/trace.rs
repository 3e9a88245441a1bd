//! The diagrammatic trace and the `j_n` maps that close circle legs up
//! into vacuum diagrams.

use lmokit::lmo::jmap::{j_n, loop_falling_product, theta, JMode};
use lmokit::lmo::trace::trace_lmo;

fn main() -> lmokit::Result<()> {
    let t = trace_lmo(5)?;
    for m in 2..=5 {
        println!("trace member on {m} legs: {}", t.get(m)?);
    }
    for r in 1..=3 {
        let x = theta(r, r);
        println!("r = {r}: j_r of {r} parallel chords = {}", j_n(&x, r, JMode::Direct)?);
        println!("        expected                   {}", loop_falling_product(r));
    }
    Ok(())
}
