//! k[e]/(e^2) is the standard warning: U(S) and U(S/J) differ, and the
//! reduction engine refuses the nilinvariance step.

use motivecalc::algebra::{dual_numbers, field_algebra, jacobson_radical, unit_group_order};
use motivecalc::exactmath::Field;
use motivecalc::motives::{nil_reduce, CoefficientRing};

fn main() -> motivecalc::Result<()> {
    let f2 = Field::prime(2)?;
    let s = dual_numbers(&f2)?;
    println!("|units of F2[e]/(e^2)| = {}", unit_group_order(&s)?);
    println!("|units of F2|          = {}", unit_group_order(&field_algebra(&f2)?)?);
    let j = jacobson_radical(&s)?;
    match nil_reduce(&s, &j, &CoefficientRing::integers(), false) {
        Ok(r) => println!("unexpected reduction: {}", r.reduction.normal_form),
        Err(e) => println!("refused: {e}"),
    }
    Ok(())
}
