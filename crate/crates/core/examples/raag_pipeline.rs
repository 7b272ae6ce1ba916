//! RAAG maps into braid groups and their homology shadow.

use lefschetz::braid::{BraidWord, DEFAULT_BUDGET};
use lefschetz::raag::{self, BraidOracle};
use lefschetz::words::Gen;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 3..=5 {
        for p in 1..=2 {
            let graph = raag::complement_cycle(n)?;
            let psi = raag::build_psi_prime(n, p, None)?;
            let oracle = BraidOracle { strands: 2 * n - 1, budget: DEFAULT_BUDGET };
            let hom = raag::check_raag_hom(&psi.map, &graph, &oracle)?;
            let exact = raag::psi_prime_commutation_graph(n, p, DEFAULT_BUDGET)? == graph;
            let forgetful = raag::check_forgetful_composition(n, p)?;
            let torelli = (0..n).all(|i| {
                let w = psi.map.image(Gen(i as u32)).expect("vertex image").clone();
                raag::omega_symplectic(&BraidWord::from_word(2 * n - 1, w).expect("strands"))
                    .map(|m| m.is_identity())
                    .unwrap_or(false)
            });
            println!("n = {n}, p = {p}: hom {hom}, exact pattern {exact}, forgetful {forgetful}, torelli {torelli}");
        }
    }
    let v = lefschetz::words::Word::parse("v3 v1 v3' v2", &lefschetz::words::Alphabet::raag(5))?;
    let nf = raag::raag_normal_form(&v, &raag::complement_cycle(5)?);
    println!("normal form of v3 v1 v3^-1 v2 in A(C5 complement): {}", nf.display(&lefschetz::words::Alphabet::raag(5)));
    Ok(())
}
