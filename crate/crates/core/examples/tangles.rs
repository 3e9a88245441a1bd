//! Tangle programs: parsing, component bookkeeping, linking matrices and
//! the orientation and doubling operations.

use lmokit::tangles::{linking, parse, preset};

fn main() -> lmokit::Result<()> {
    let text = "id:\n@0 cup:+-\n@2 cup:+-\nx+:1\nx+:1\n@0 cap:+-\n@0 cap:+-";
    let hopf = parse(text)?;
    let comps = hopf.components();
    println!("{} closed and {} open components", comps.closed, comps.open);
    let lk = linking(&hopf)?;
    println!("linking matrix {:?}, inertia (+{}, -{}, 0:{})", lk.matrix, lk.sigma_plus, lk.sigma_minus, lk.sigma_zero);

    let reversed = hopf.co(0)?;
    println!("after reversing component 0: {:?}", linking(&reversed)?.matrix);

    let lens = preset("unknot f=3")?;
    println!("unknot f=3 as a program:\n{}", lens.to_dsl());
    let stabilized = lens.ki(true)?;
    println!("after a stabilization: {:?}", linking(&stabilized)?.matrix);
    Ok(())
}
