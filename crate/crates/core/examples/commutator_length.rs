//! Commutator length bounds for powers of a separating twist.

use lefschetz::fibration::commlen::cl_bounds;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (g, k) in [(3, 1), (3, 2), (3, 300), (10, 2), (10, 1000), (100, 2)] {
        let b = cl_bounds(g, k)?;
        let upper = b.upper.map_or("unknown".to_string(), |u| u.to_string());
        println!("g = {g:>3}, k = {k:>4}: {} <= cl(T_c^k) <= {upper}", b.lower);
    }
    Ok(())
}
