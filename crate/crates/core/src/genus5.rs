//! The trigonal chain of genus 5 worked end to end: canonical class, its
//! translates by the pencil, their tableaux, and the certified map to the
//! Hirzebruch surface.

use serde::Serialize;

use crate::chain::io::{chain_to_json, chips_to_json, divisor_to_json};
use crate::chain::{canonical_divisor, gonality_representatives, k_gonal_chain, normal_form, ChainOfCycles, Divisor};
use crate::error::Result;
use crate::rational::q;
use crate::scrollar::ScrollarType;
use crate::tableaux::{construction_coords, contains, psi_bridge_slopes, rank, Tableau, TorusComponent};
use crate::tropmap::{
    assign_well_spaced_lengths, build_scroll_map, check_assumptions, cycle_span, AssumptionReport, TropicalMapSkeleton,
    TuningReport,
};

#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub label: String,
    pub degree: i64,
    pub rank: i64,
    pub divisor: serde_json::Value,
    /// Tableau whose torus contains the class, when one is listed.
    pub tableau: Option<Tableau>,
    pub in_torus: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Genus5Report {
    pub chain: serde_json::Value,
    pub canonical: serde_json::Value,
    pub pencil: serde_json::Value,
    pub ranks: Vec<RankRow>,
    pub pencil_tableau: Tableau,
    /// Slopes of `ψ_0` on the four bridges for the pencil's tableau.
    pub pencil_slopes: Vec<i64>,
    pub cycle_dims: Vec<usize>,
    pub assumptions: AssumptionReport,
    pub tuning: TuningReport,
    pub skeleton: TropicalMapSkeleton,
}

pub fn genus5_chain() -> ChainOfCycles {
    k_gonal_chain(5, 3).expect("the trigonal genus-5 chain exists")
}

fn tab(rows: &[&[u32]]) -> Tableau {
    Tableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("literal tableau")
}

/// `K − i·E` for `i = 0..=3` in normal form.
pub fn canonical_translates(chain: &ChainOfCycles) -> Result<Vec<Divisor>> {
    let e = gonality_representatives(chain, 3)?.e;
    let mut cur = normal_form(chain, &canonical_divisor(chain))?;
    let mut out = vec![cur.clone()];
    for _ in 0..3 {
        cur = cur.minus(chain, &e)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// The scroll map of `K − E` with its tableau `[[1,2,3],[3,4,5]]`, before any length tuning.
pub fn genus5_scroll_map() -> Result<TropicalMapSkeleton> {
    let chain = genus5_chain();
    let k1 = canonical_translates(&chain)?.swap_remove(1);
    let t = tab(&[&[1, 2, 3], &[3, 4, 5]]);
    let ty = ScrollarType::new(1, 1, 3)?;
    build_scroll_map(&chain, &t, ty.a, ty.b, &construction_coords(&chain, &t, &k1))
}

pub fn genus5_report() -> Result<Genus5Report> {
    let chain = genus5_chain();
    let gon = gonality_representatives(&chain, 3)?;
    let translates = canonical_translates(&chain)?;
    let tableaux = [
        Some(tab(&[&[1, 2, 3, 4, 5]])),
        Some(tab(&[&[1, 2, 3], &[3, 4, 5]])),
        Some(tab(&[&[1], &[3], &[5]])),
        None,
    ];
    let labels = ["K", "K-E", "K-2E", "K-3E"];
    let mut ranks = Vec::new();
    for ((d, t), label) in translates.iter().zip(tableaux).zip(labels) {
        let in_torus = match &t {
            Some(t) => Some(contains(&TorusComponent::new(&chain, t)?, d)),
            None => None,
        };
        ranks.push(RankRow {
            label: label.into(),
            degree: d.d,
            rank: rank(&chain, d),
            divisor: divisor_to_json(d),
            tableau: t,
            in_torus,
        });
    }
    let pencil_tableau = tab(&[&[1, 3], &[2, 4], &[3, 5]]);
    let pencil_slopes = psi_bridge_slopes(&pencil_tableau, 5, 0)?;
    let map = genus5_scroll_map()?;
    let cycle_dims = (1..=5).map(|i| cycle_span(&map, i).map(|s| s.dim)).collect::<Result<_>>()?;
    let assumptions = check_assumptions(&map)?;
    let (skeleton, tuning) = assign_well_spaced_lengths(&map, q(1000))?;
    Ok(Genus5Report {
        chain: chain_to_json(&chain),
        canonical: chips_to_json(&chain, &canonical_divisor(&chain)),
        pencil: chips_to_json(&chain, &gon.e),
        ranks,
        pencil_tableau,
        pencil_slopes,
        cycle_dims,
        assumptions,
        tuning,
        skeleton,
    })
}
