//! Nilpotence of rank-zero classes and localized inversion in K0(P^n).

use motivecalc::k0ring::{localize_invert, nilpotence_witness, K0RingModel, DEFAULT_MAX_EXP};
use motivecalc::motives::CoefficientRing;

fn main() -> motivecalc::Result<()> {
    for name in ["P1", "P2", "P3", "P4"] {
        let m = K0RingModel::builtin(name)?;
        let mut x = vec![0; m.len()];
        x[1] = 1;
        let w = nilpotence_witness(&m, &m.element(&x)?, DEFAULT_MAX_EXP)?;
        println!("{name}: x^{} = 0", w.exponent.unwrap());
    }
    let p2 = K0RingModel::builtin("P2")?;
    let r = CoefficientRing::inverting(&[2, 3])?;
    let a = p2.element(&[6, 1, -2])?;
    let inv = localize_invert(&p2, &a, &r, DEFAULT_MAX_EXP)?;
    println!("({}) ^ -1 over {} = {} (verified: {})", inv.element, r, inv.inverse, inv.verified);
    Ok(())
}
