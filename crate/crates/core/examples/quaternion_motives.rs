//! The rational quaternions: stuck over Z, reduced once 2 is inverted,
//! and the Severi-Brauer conic in both settings.

use motivecalc::algebra::quaternion;
use motivecalc::exactmath::Field;
use motivecalc::motives::{motive_atom, motive_reduce, severi_brauer_motive, CoefficientRing};

fn main() -> motivecalc::Result<()> {
    let q = Field::rationals();
    let h = quaternion(&q, &q.from_i64(-1), &q.from_i64(-1))?.with_label("H");
    for ring in [CoefficientRing::integers(), CoefficientRing::inverting(&[2])?] {
        let r = motive_reduce(&motive_atom(&h, &ring), &ring)?;
        println!("U(H) over {ring}: {}", r.normal_form);
        for step in &r.trace {
            println!("  {} {} -> {} [{}]", step.rule, step.from, step.to, step.hypothesis);
        }
        println!("SB(H) over {ring}: {}", severi_brauer_motive(&h, &ring)?.normal_form);
    }
    Ok(())
}
