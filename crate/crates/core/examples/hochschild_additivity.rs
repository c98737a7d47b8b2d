//! Hochschild homology is additive on T(A) and Morita invariant.

use motivecalc::algebra::ops::product;
use motivecalc::algebra::{field_algebra, kronecker, matrix, triangular_t, upper_triangular};
use motivecalc::exactmath::Field;
use motivecalc::hochschild::{hh_dims, DEFAULT_MAX_CELLS};

fn main() -> motivecalc::Result<()> {
    let q = Field::rationals();
    let k = field_algebra(&q)?;
    let algebras = [
        k.clone(),
        product(&k, &k)?,
        upper_triangular(&q, 2)?,
        kronecker(&q)?,
        matrix(&q, 2)?,
    ];
    for a in &algebras {
        let h = hh_dims(a, 2, DEFAULT_MAX_CELLS)?;
        print!("{:<16} HH = {:?}", a.label(), h.dims);
        if a.dim() <= 4 {
            let t = hh_dims(&triangular_t(a)?, 2, DEFAULT_MAX_CELLS)?;
            print!("   T(A): {:?} (dim C_2 = {})", t.dims, t.chain_dims[2]);
        }
        println!();
    }
    Ok(())
}
