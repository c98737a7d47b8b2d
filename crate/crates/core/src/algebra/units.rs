//! Unit groups of algebras over finite fields, by enumeration.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

use super::prime::PrimeAlgebra;
use super::Algebra;

/// Enumeration limit on the number of elements.
pub const UNIT_ENUMERATION_CAP: u64 = 1 << 20;

/// Number of invertible elements, counted by testing every element.
pub fn unit_group_order(a: &Algebra) -> Result<u64> {
    let f = a.field();
    let q = f.order().ok_or_else(|| Error::InfiniteField(format!("{} is infinite", f.name())))?;
    let size = q.pow(a.dim() as u32);
    if size > BigUint::from(UNIT_ENUMERATION_CAP) {
        return Err(Error::TooLarge(format!("|A| = {size} exceeds the enumeration cap {UNIT_ENUMERATION_CAP}")));
    }
    let size = size.to_u64().unwrap();
    let pa = PrimeAlgebra::restrict(a);
    let p = pa.p;
    let mut x = vec![0u64; pa.n];
    let mut count = 0u64;
    for _ in 0..size {
        if pa.is_unit(&x) {
            count += 1;
        }
        // next element in base-p counting order
        for c in x.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    Ok(count)
}
