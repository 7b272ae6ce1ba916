//! Commutator length bounds for powers of a separating twist.

use serde::Serialize;

use super::FibrationError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClBounds {
    pub lower: u64,
    pub upper: Option<u64>,
    pub g0: usize,
    pub notes: Vec<String>,
}

/// Bounds on the commutator length of `T_c^k` on `Σ_g`, `c` cutting off a
/// genus-2 subsurface. The lower bound is `⌈1 + k/(6(3g−1))⌉`; the upper
/// bound uses `T_c^{2g0−2}` as a product of `g0` commutators.
pub fn cl_bounds(g: u64, k: u64) -> Result<ClBounds, FibrationError> {
    cl_bounds_with_g0(g, k, 2)
}

pub fn cl_bounds_with_g0(g: u64, k: u64, g0: usize) -> Result<ClBounds, FibrationError> {
    if g == 0 || k == 0 || g0 < 2 {
        return Err(FibrationError::BadParams(format!("cl bounds need g, k >= 1 and g0 >= 2, got g={g}, k={k}, g0={g0}")));
    }
    let d = 6 * (3 * g - 1);
    let lower = 1 + k.div_ceil(d);
    let step = 2 * g0 as u64 - 2;
    let upper = (g > g0 as u64 && k.is_multiple_of(step)).then(|| g0 as u64 * (k / step));
    let mut notes = Vec::new();
    if lower >= 2 {
        notes.push(
            "a product of at most one commutator is never a nontrivial product of separating twists: \
             relatively minimal fibrations over a base of genus <= 1 with Torelli monodromy do not exist"
                .to_string(),
        );
    }
    if g <= 2 {
        notes.push("g <= 2 leaves no room for a separating curve bounding genus 2; upper bound unavailable".into());
    }
    Ok(ClBounds { lower, upper, g0, notes })
}
