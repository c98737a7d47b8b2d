//! Fibers of the restricted Weyl algebra in characteristic p are central
//! simple of dimension p^2.

use motivecalc::algebra::{is_central_simple, weyl_fiber};

fn main() -> motivecalc::Result<()> {
    for p in [2u64, 3, 5] {
        for (a, b) in [(0, 0), (1, 0), (1, 1)] {
            let w = weyl_fiber(p, a, b)?;
            let c = is_central_simple(&w)?;
            println!("{:<16} dim {:>2}  enveloping rank {:>3} / {:>3}  central simple: {}", w.label(), w.dim(), c.enveloping_rank, c.expected_rank, c.central_simple);
        }
    }
    Ok(())
}
