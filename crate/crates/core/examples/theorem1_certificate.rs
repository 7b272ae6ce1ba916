//! Build the two-critical-point Torelli factorization and run every check on it.

use lefschetz::fibration::builders::build_theorem1;
use lefschetz::fibration::certificate::certify_indecomposable;
use lefschetz::fibration::io::factorization_to_json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let f = build_theorem1(g)?;
    println!("{}", factorization_to_json(&f));
    println!("relation:   {}", f.verify_relation()?);
    println!("torelli:    {}", f.is_torelli_factorization()?);
    println!("minimal:    {}", f.is_relatively_minimal()?);
    println!("H1(X):      {}", f.h1_total_space()?);
    let cert = certify_indecomposable(&f, 1000, 42)?;
    for item in &cert.items {
        println!("[{}] {}: {}", if item.passed { "pass" } else { "FAIL" }, item.name, item.detail);
    }
    if let Some(c) = cert.conclusion() {
        println!("{c}");
    }
    Ok(())
}
