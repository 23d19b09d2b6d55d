//! Divisor classes on a chain: normal forms, equivalence witnesses,
//! canonical class and Riemann-Roch.

use kgonal::chain::plf::{pl_divisor, principal_witness};
use kgonal::chain::{canonical_divisor, gonality_representatives, is_equivalent, k_gonal_chain, normal_form, ChipList, Location};
use kgonal::rational::{frac, q};
use kgonal::tableaux::rank;

fn main() -> kgonal::Result<()> {
    // Generic cycles get lengths large enough for every coordinate used below.
    let chain = k_gonal_chain(6, 3)?.realized_for(q(12));
    let reps = gonality_representatives(&chain, 3)?;
    println!("E_0 ~ E_1: {}", is_equivalent(&chain, &reps.e0, &reps.e1)?);

    let d = ChipList::new()
        .with(Location::at(1, frac(1, 2)), 1)
        .with(Location::at(3, q(2)), 2)
        .with(Location::Bridge { j: 4, t: frac(1, 3) }, 1)
        .with(Location::w(6), 1);
    let nf = normal_form(&chain, &d)?;
    println!("normal form: degree {}, xi {:?}", nf.d, nf.xi.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let f = principal_witness(&chain, &(d.clone() - nf.to_chips()))?;
    println!("witness divisor reproduces D - normal form: {}", pl_divisor(&chain, &f)?.simplified(&chain)? == (d.clone() - nf.to_chips()).simplified(&chain)?);

    let k = normal_form(&chain, &canonical_divisor(&chain))?;
    let kd = k.minus(&chain, &d)?;
    let (r, rk) = (rank(&chain, &nf), rank(&chain, &kd));
    println!("r(D) = {r}, r(K-D) = {rk}, deg D - g + 1 = {}", nf.d - 6 + 1);
    Ok(())
}
