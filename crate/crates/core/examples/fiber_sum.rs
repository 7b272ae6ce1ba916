//! Fiber sums and the subfactorization witness of decomposability.

use lefschetz::fibration::builders::{build_theorem1, build_trivial_bundle};
use lefschetz::fibration::{check_subfactorization, fiber_sum, seam_selection, Gluing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = build_theorem1(3)?;
    let sum = fiber_sum(&f, &f, &Gluing::identity())?;
    println!("sum: base genus {}, {} critical points, relation {}", sum.base_genus, sum.critical_points(), sum.verify_relation()?);
    let v = check_subfactorization(&sum, &seam_selection(&f))?;
    println!("seam witness: {} ({v:?})", v.is_witness());

    let units = f.units().len();
    let proper = (1..(1u32 << units) - 1).filter(|mask| {
        let sel = (0..units).filter(|i| mask & (1 << i) != 0).collect();
        check_subfactorization(&f, &sel).map(|v| v.is_witness()).unwrap_or(false)
    });
    println!("witnesses among proper selections of the original: {}", proper.count());

    let t = build_trivial_bundle(3, 1, None)?;
    let bigger = fiber_sum(&f, &t, &Gluing::identity())?;
    println!("with a trivial bundle over a torus: base genus {}", bigger.base_genus);
    Ok(())
}
