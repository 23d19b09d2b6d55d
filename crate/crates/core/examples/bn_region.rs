//! Where ρ̄_k is nonnegative, as CSV on stdout and an SVG plot.
//!
//! `cargo run --example bn_region -- 20 6 region.svg`

use kgonal::numerics::{bn_region, max_gonality, rho, rho_bar};

fn main() -> kgonal::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g: i64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(20);
    let k: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    eprintln!("g = {g}, k = {k}, general gonality {}", max_gonality(g));
    for (r, d) in [(1, k), (2, g - 2), (3, g)] {
        if d >= r && g - d + r >= 1 {
            let rb = rho_bar(g, r, d, k)?;
            eprintln!("r={r} d={d}: rho = {}, rho_bar = {} at l = {:?}", rho(g, r, d)?, rb.value, rb.maximizers);
        }
    }
    let region = bn_region(g, k, 12, 12, 0.05)?;
    print!("{}", region.to_csv());
    if let Some(path) = args.get(2) {
        std::fs::write(path, region.to_svg())?;
    }
    Ok(())
}
