#![allow(dead_code)]

use kgonal::chain::{k_gonal_chain, ChainOfCycles, ChipList, Location};
use kgonal::rational::{frac, Q};
use kgonal::scrollar::{embed_in_genus, generate_scrollar, ScrollarType};
use kgonal::tableaux::{random_construction_coords, Tableau};
use kgonal::tropmap::{build_scroll_map, TropicalMapSkeleton};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A chain with a random torsion profile: generic cycles mixed with orders 2..=4.
pub fn random_chain(g: usize, rng: &mut StdRng) -> ChainOfCycles {
    let profile: Vec<u32> = (0..g).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(2..=4) }).collect();
    ChainOfCycles::from_profile(&profile).unwrap()
}

/// A random rational in `[lo, hi)` with a small denominator; integers come up often.
pub fn random_q(rng: &mut StdRng, lo: i128, hi: i128) -> Q {
    let den = [1, 1, 2, 3, 5][rng.gen_range(0..5)];
    frac(rng.gen_range(lo * den..hi * den), den)
}

pub fn random_location(chain: &ChainOfCycles, rng: &mut StdRng) -> Location {
    let g = chain.g();
    if g > 1 && rng.gen_bool(0.2) {
        let j = rng.gen_range(1..g);
        let len = chain.bridge(j);
        return Location::Bridge { j, t: len * frac(rng.gen_range(0..=4), 4) };
    }
    let j = rng.gen_range(1..=g);
    Location::at(j, random_q(rng, -3, 3))
}

/// A random divisor of degree `d` with chips of both signs.
pub fn random_chips(chain: &ChainOfCycles, d: i64, rng: &mut StdRng) -> ChipList {
    let mut chips = ChipList::new();
    let extra = rng.gen_range(0..3);
    let pos = d.max(0) + extra;
    let neg = pos - d;
    for _ in 0..pos {
        chips.push(random_location(chain, rng), 1);
    }
    for _ in 0..neg {
        chips.push(random_location(chain, rng), -1);
    }
    chips
}

/// The canonical type-(a, b) scrollar filling with `cols × rows` boxes, relabelled into genus g.
pub fn embedded_scrollar(ty: ScrollarType, cols: usize, rows: usize, g: usize) -> Option<Tableau> {
    let t = generate_scrollar(ty, cols, rows).ok()?;
    embed_in_genus(&t, ty.k, g)
}

/// A scroll map of type (1, 2) on the 5-gonal chain of genus 25.
pub fn genus25_scroll_map(seed: u64) -> TropicalMapSkeleton {
    let ty = ScrollarType::new(1, 2, 5).unwrap();
    let chain = k_gonal_chain(25, 5).unwrap();
    let t = embedded_scrollar(ty, 5, 6, 25).expect("5x6 filling fits in genus 25");
    let mut rng = rng(seed);
    let cons = random_construction_coords(&chain, &t, &mut rng).unwrap();
    build_scroll_map(&chain, &t, 1, 2, &cons).unwrap()
}
