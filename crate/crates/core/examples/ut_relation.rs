//! The product of commutators in the unit tangent bundle group is a power of the fiber class.

use lefschetz::surface::UtContext;
use lefschetz::words::{Alphabet, Gen, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for g0 in 2..=6 {
        let ctx = UtContext::new(g0)?;
        let mut w = Word::identity();
        for j in 0..g0 as u32 {
            w.append(&Word::commutator(&Word::gen(Gen(2 * j)), &Word::gen(Gen(2 * j + 1))));
        }
        let x = ctx.reduce(&w);
        println!("g0 = {g0}: {}  ->  {}", w.display(&Alphabet::unit_tangent(g0, 0)), x.render());
    }
    Ok(())
}
