//! Scrollar tableaux of type (1, 2) on the 5-gonal chain: the canonical
//! filling, its contractions, the dimension formula and slope independence.

use kgonal::scrollar::{
    component_dimension_check, embed_in_genus, generate_scrollar, independence_slopes, scrollar_for, t_minus,
    ScrollarType,
};

fn show(t: &kgonal::tableaux::Tableau) {
    for row in t.row_slices() {
        println!("  {row:?}");
    }
}

fn main() -> kgonal::Result<()> {
    let ty = ScrollarType::new(1, 2, 5)?;
    let t = generate_scrollar(ty, 8, 5)?;
    println!("type (1,2), k = 5, 8 columns:");
    show(&t);
    for i in 1..=ty.m(t.cols()) {
        println!("t(-{i}):");
        show(&t_minus(&t, ty, i)?);
    }
    println!("{:?}", component_dimension_check(&t, ty, 25)?);
    let small = embed_in_genus(&generate_scrollar(ty, 5, 6)?, 5, 25).expect("fits in genus 25");
    println!("embedded 5x6 filling:");
    show(&small);
    println!("{:?}", independence_slopes(&small, ty, 25)?);
    for (g, r, d, k) in [(12, 3, 10, 4), (12, 2, 8, 4), (10, 1, 4, 4)] {
        match scrollar_for(g, r, d, k)? {
            Some((ty, t)) => {
                println!("g={g} r={r} d={d} k={k}: type ({}, {}) attains rho_bar", ty.a, ty.b);
                show(&t);
            }
            None => println!("g={g} r={r} d={d} k={k}: no scrollar shape attains rho_bar"),
        }
    }
    Ok(())
}
