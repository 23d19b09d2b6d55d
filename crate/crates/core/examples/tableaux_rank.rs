//! Displacement tableaux on a k-gonal chain, the dimension of W^r_d they
//! give, and a rank check against a divisor in each torus.

use kgonal::chain::k_gonal_chain;
use kgonal::numerics::rho_bar;
use kgonal::tableaux::{dim_wrd, enumerate_tableaux, normal_coords, random_construction_coords, rank, torus_dimension, Shape};
use rand::SeedableRng;

fn main() -> kgonal::Result<()> {
    let (g, k) = (8, 3);
    let chain = k_gonal_chain(g, k)?;
    let profile = chain.profile();
    println!("profile {profile:?}");
    let mut rng = rand::rngs::StdRng::seed_from_u64(1);
    let (cols, rows) = (2, 3);
    let d = (g + cols - 1 - rows) as i64;
    let all = enumerate_tableaux(Shape::new(&profile, cols, rows), None);
    println!("{} tableaux of shape {cols}x{rows}", all.len());
    for t in all.iter().take(5) {
        let cons = random_construction_coords(&chain, t, &mut rng)?;
        let div = normal_coords(&chain, t, d, &cons)?;
        println!("{:?}: dim {}, rank of a member {}", t.row_slices(), torus_dimension(t, g), rank(&chain, &div));
    }
    for (r, d) in [(1, 3), (1, 4), (2, 6), (3, 8)] {
        let dim = dim_wrd(&chain, r, d, None)?;
        println!("dim W^{r}_{d} = {} (rho_bar {})", dim.value, rho_bar(g as i64, r, d, k as i64)?.value);
    }
    Ok(())
}
