//! Dehn's algorithm in a closed surface group.

use lefschetz::surface::SurfaceContext;
use lefschetz::words::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = SurfaceContext::new(2)?;
    let alphabet = ctx.alphabet();
    for text in ["a1 b1 a1' b1' a2 b2 a2' b2'", "a1 b1 a1' b1' a2 b2 a2'", "b2 a2 b2' a2' b1 a1 b1' a1'", "a1 a1 b2"] {
        let w = Word::parse(text, &alphabet)?;
        let r = ctx.dehn_reduce(&w)?;
        println!("{text:<32} -> {:<16} trivial: {}", r.display(&alphabet).to_string(), r.is_identity());
    }
    Ok(())
}
