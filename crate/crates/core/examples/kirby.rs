//! Invariance under stabilization and handle slides.

use lmokit::brauer::Sign::{Minus, Plus};
use lmokit::jacobi::normal_form;
use lmokit::lmo::omega_e;
use lmokit::tangles::{kii_pair, preset, Gen, TangleProgram};

fn main() -> lmokit::Result<()> {
    let l = preset("unknot f=2")?;
    let base = omega_e(&l, 1, 3)?;
    for positive in [true, false] {
        let s = omega_e(&l.ki(positive)?, 1, 3)?;
        let same = normal_form(&s.value.sub(&base.value)?)?.is_zero();
        println!("stabilization with sign {}: unchanged = {same}", if positive { '+' } else { '-' });
    }

    let twist = TangleProgram::new(vec![Plus, Minus], vec![Gen::Cross { pos: 0, positive: true }; 2])?;
    for (name, s) in [("identity", TangleProgram::identity(&[Plus, Minus])), ("full twist", twist)] {
        let (before, after) = kii_pair(&s)?;
        let (a, b) = (omega_e(&before, 1, 3)?, omega_e(&after, 1, 3)?);
        let same = normal_form(&a.value.sub(&b.value)?)?.is_zero();
        println!("handle slide over the {name}: unchanged = {same}");
    }
    Ok(())
}
