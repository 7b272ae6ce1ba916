//! Inserting `T_d^n` changes the torsion of `H₁` of the total space.

use lefschetz::fibration::builders::build_xn;
use lefschetz::homology::noncomplex_flag;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for g in 3..=5 {
        for n in [1, 2, 3, 7, 20] {
            let f = build_xn(g, n)?;
            let h1 = f.h1_total_space()?;
            let flag = noncomplex_flag(&h1, g, f.base_genus, f.is_relatively_minimal()?);
            println!("g = {g}, n = {n:>2}: H1 = {h1:<12} odd b1: {flag}  torelli: {}", f.is_torelli_factorization()?);
        }
    }
    Ok(())
}
