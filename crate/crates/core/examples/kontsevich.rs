//! The associator, the unknot normalization and truncated Kontsevich
//! integrals of closed links.

use lmokit::kontsevich::{compute_nu, solve_associator, Kontsevich, MAX_DEGREE};
use lmokit::tangles::preset;

fn main() -> lmokit::Result<()> {
    let phi = solve_associator(MAX_DEGREE)?;
    println!("associator coefficient: {}", phi.coefficient);
    let nu = compute_nu(&phi)?;
    println!("unknot normalization: {}", nu.value);

    let k = Kontsevich::shared(2)?;
    for name in ["unknot f=0", "unknot f=1", "hopf f1=0 f2=0"] {
        let l = preset(name)?;
        println!("{name}: {}", k.normalized(&l)?);
    }
    Ok(())
}
