//! The coordinate-ray map from a generic chain: every cycle spans the
//! target, so the map is not superabundant.

use kgonal::chain::ChainOfCycles;
use kgonal::tableaux::{is_vertex_avoiding, random_construction_coords, random_tableau, Shape};
use kgonal::tropmap::{build_generic_map, check_assumptions, cycle_span};
use rand::SeedableRng;

fn main() -> kgonal::Result<()> {
    let g = 6;
    let chain = ChainOfCycles::from_profile(&[0; 6])?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let profile = chain.profile();
    let (t, cons) = loop {
        let t = random_tableau(Shape::new(&profile, 3, 2), &mut rng).expect("shape is fillable");
        let cons = random_construction_coords(&chain, &t, &mut rng)?;
        if is_vertex_avoiding(&chain, &t, &cons)? {
            break (t, cons);
        }
    };
    println!("tableau {:?}", t.row_slices());
    let map = build_generic_map(&chain, &t, &cons)?;
    println!("{} vertices, {} edges, {} rays", map.vertices.len(), map.edges.len(), map.edges.iter().filter(|e| e.is_ray()).count());
    let dims: Vec<usize> = (1..=g).map(|i| cycle_span(&map, i).map(|s| s.dim)).collect::<kgonal::Result<_>>()?;
    println!("cycle spans {dims:?}");
    let a = check_assumptions(&map)?;
    println!("superabundant {}, chain of cycles {}", a.superabundant, a.chain_of_cycles);
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(path, map.to_svg(0, 1)?)?;
    }
    Ok(())
}
