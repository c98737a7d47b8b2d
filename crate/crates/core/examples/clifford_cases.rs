//! Predicted versus computed structure of C(q) and C_0(q) for a few forms.

use motivecalc::exactmath::Field;
use motivecalc::quadform::{clifford_verify, QuadraticForm};

fn main() -> motivecalc::Result<()> {
    let q = Field::rationals();
    let f5 = Field::prime(5)?;
    let forms = [
        QuadraticForm::diagonal_i64(&q, &[1, 1])?,
        QuadraticForm::diagonal_i64(&q, &[1, -1])?,
        QuadraticForm::diagonal_i64(&q, &[1, 1, 1])?,
        QuadraticForm::diagonal_i64(&q, &[1, 1, 1, -1])?,
        QuadraticForm::diagonal_i64(&q, &[2, 3, -5, 7, 1])?,
        QuadraticForm::diagonal_i64(&f5, &[1, 2, 3, 4])?,
    ];
    for form in &forms {
        let v = clifford_verify(form)?;
        let p = &v.prediction;
        println!(
            "{:<28} delta={:<3} C: {}  C_0: {}  match={}",
            v.form,
            p.delta.representative,
            serde_json::to_string(&p.clifford).unwrap(),
            serde_json::to_string(&p.even_clifford).unwrap(),
            v.matches
        );
    }
    Ok(())
}
