//! Level-`n` invariants of surgery presentations and the assembled series.

use lmokit::lmo::{h1_order, omega_e, omega_partial, required_budget, zlmo, Variant};
use lmokit::tangles::{linking, preset};

fn main() -> lmokit::Result<()> {
    for name in ["unknot f=1", "unknot f=2", "unknot f=-3", "hopf f1=2 f2=1"] {
        let l = preset(name)?;
        let k = l.components().closed;
        let om = omega_e(&l, 1, required_budget(k, 1))?;
        let h = h1_order(&linking(&l)?).expect("regular presentation");
        println!("{name}: |H1| = {h}, level one = {}", om.value);
        println!("        rescaled series = {}", zlmo(&l, 1, required_budget(k, 1), Variant::Tilde)?);
    }
    let partial = omega_partial(&preset("unknot f=3")?, 2, 3)?;
    println!("level two of unknot f=3 known to degree {}: {}", partial.known_degree(), partial.value);
    Ok(())
}
