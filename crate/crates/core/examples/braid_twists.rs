//! Twists in the braid group, the Artin action, and forgetting strands.

use std::collections::BTreeSet;

use lefschetz::braid::{self, BraidWord, MarkedCurve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = BraidWord::parse(3, "s1 s2 s1")?;
    let b = BraidWord::parse(3, "s2 s1 s2")?;
    println!("s1 s2 s1 = s2 s1 s2: {}", braid::braid_equal(&a, &b)?);

    let t = braid::full_twist(&MarkedCurve::interval(5, 1, 3)?);
    println!("twist about points 1..3 of 5: {}  pure: {}", t.display(), braid::is_pure(&t));
    let keep: BTreeSet<usize> = [1, 3, 5].into_iter().collect();
    println!("keeping strands 1, 3, 5: {}", braid::delete_strands(&t.pow(2), &keep)?.display());
    println!("linking numbers: {:?}", braid::linking_numbers(&t)?);
    Ok(())
}
