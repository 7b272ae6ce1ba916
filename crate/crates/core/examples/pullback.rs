//! Pull a factorization back along random connected covers of the base.

use lefschetz::fibration::builders::build_theorem1;
use lefschetz::fibration::certificate::certify;
use lefschetz::fibration::cover::{pullback, CoverSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = build_theorem1(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=5 {
        let cover = CoverSpec::random_transitive(2, m, &mut rng)?;
        let p = pullback(&f, &cover)?;
        let cert = certify(p.ut.as_ref().expect("push model"), 100, m as u64)?;
        println!(
            "degree {m}: base genus {}, {} critical points, conjugates ok: {}, H1 = {}, certificate: {}",
            p.base_genus,
            p.critical_points(),
            p.verify_peripherals()?,
            p.h1_total_space()?,
            cert.passed()
        );
    }
    Ok(())
}
