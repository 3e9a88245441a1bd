//! Formal Gaussian integration compared with the rescaled level-one series.

use lmokit::aarhus::{aarhus_invariant, link_gaussian};
use lmokit::lmo::{zlmo, Variant};
use lmokit::tangles::preset;

fn main() -> lmokit::Result<()> {
    for name in ["unknot f=3", "unknot f=-5", "hopf f1=2 f2=1"] {
        let l = preset(name)?;
        let g = link_gaussian(&l, 3)?;
        let integral = aarhus_invariant(&l, 3)?;
        let series = zlmo(&l, 1, 3, Variant::Tilde)?;
        println!("{name}: complete to degree {}", g.complete_degree());
        println!("    integral {integral}");
        println!("    series   {series}");
    }
    match aarhus_invariant(&preset("unknot f=0")?, 3) {
        Err(e) => println!("unknot f=0: {e}"),
        Ok(v) => println!("unknot f=0 unexpectedly gave {v}"),
    }
    Ok(())
}
