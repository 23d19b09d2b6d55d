//! A type-(1, 2) scroll map on the 5-gonal chain of genus 25: lifting
//! assumptions, edge-length tuning, and how a perturbation breaks the tie.

use kgonal::chain::k_gonal_chain;
use kgonal::rational::q;
use kgonal::scrollar::{embed_in_genus, generate_scrollar, ScrollarType};
use kgonal::tableaux::random_construction_coords;
use kgonal::tropmap::{assign_well_spaced_lengths, build_scroll_map, check_assumptions, naive_well_spacedness};
use rand::SeedableRng;

fn main() -> kgonal::Result<()> {
    let ty = ScrollarType::new(1, 2, 5)?;
    let chain = k_gonal_chain(25, 5)?;
    let t = embed_in_genus(&generate_scrollar(ty, 5, 6)?, 5, 25).expect("fits in genus 25");
    let mut rng = rand::rngs::StdRng::seed_from_u64(0);
    let cons = random_construction_coords(&chain, &t, &mut rng)?;
    let map = build_scroll_map(&chain, &t, ty.a, ty.b, &cons)?;
    let a = check_assumptions(&map)?;
    println!("cycle dims {:?}", a.cycle_dims);
    println!("assumptions pass {}, superabundant {}", a.passed, a.superabundant);

    let (tuned, report) = assign_well_spaced_lengths(&map, q(1000))?;
    for e in report.report.entries.iter() {
        let d: Vec<String> = e.distances.iter().map(|x| x.to_string()).collect();
        println!("cycle {:2}: escape distances [{}] well-spaced {}", e.cycle, d.join(", "), e.well_spaced);
    }
    let first = &report.tuned[0];
    let mut bumped = tuned.clone();
    bumped.set_length(first.edge, first.len + q(1))?;
    bumped.integrate_positions()?;
    println!(
        "after lengthening edge {} at cycle {}: well-spaced {}",
        first.edge,
        first.cycle,
        naive_well_spacedness(&bumped)?.naively_well_spaced
    );
    Ok(())
}
