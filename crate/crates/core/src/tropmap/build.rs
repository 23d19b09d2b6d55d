//! The two map constructions: coordinate rays for a general divisor, and the
//! map to a scroll for a divisor with a scrollar tableau.

use super::{assemble, coordinate_span, MapKind, Section, TropicalMapSkeleton};
use crate::chain::{gonality_representatives, ChainOfCycles, ChipList, Divisor};
use crate::error::{Error, Result};
use crate::scrollar::{has_vertical_step, is_scrollar, serial_subtract, ScrollarType};
use crate::tableaux::{
    construction_coords, contains, is_vertex_avoiding, normal_coords, special_representatives, Tableau,
    TorusComponent,
};
use crate::rational::Q;

fn unit(n: usize, c: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[c] = 1;
    v
}

fn realize(chain: &ChainOfCycles, divisors: &[&ChipList]) -> ChainOfCycles {
    chain.realized_for(coordinate_span(divisors))
}

/// Map `Ψ = (ψ_0, …, ψ_{r−1})` with `div ψ_i = D_i − D_r`, built from the
/// representatives `D_i` of a vertex-avoiding divisor on a generic chain.
///
/// The ray at a support point of `D_i` points along `e_i`, with `e_r = −(1, …, 1)`.
pub fn build_generic_map(chain: &ChainOfCycles, t: &Tableau, cons: &[Q]) -> Result<TropicalMapSkeleton> {
    if chain.cycles.iter().any(|c| c.mu != 0) {
        return Err(Error::invalid("the coordinate-ray map needs a chain with every cycle generic"));
    }
    let r = t.cols() - 1;
    if r == 0 {
        return Err(Error::invalid("the tableau needs at least two columns"));
    }
    let reps = special_representatives(chain, t, cons)?;
    if !is_vertex_avoiding(chain, t, cons)? {
        return Err(Error::invalid("divisor is not vertex-avoiding; ray bases would coincide"));
    }
    let sections: Vec<Section> = reps
        .into_iter()
        .enumerate()
        .map(|(i, divisor)| Section {
            label: format!("D_{i}"),
            ray: if i < r { unit(r, i) } else { vec![-1; r] },
            divisor,
        })
        .collect();
    let realized = realize(chain, &sections.iter().map(|s| &s.divisor).collect::<Vec<_>>());
    assemble(&realized, MapKind::Generic, sections, r)
}

/// Representatives `D_i` of `d ∈ T(t)`; with `what` set, `d` must also be vertex-avoiding.
fn representatives(chain: &ChainOfCycles, t: &Tableau, d: &Divisor, what: Option<&str>) -> Result<Vec<ChipList>> {
    let cons = construction_coords(chain, t, d);
    if let Some(what) = what {
        if !is_vertex_avoiding(chain, t, &cons)? {
            return Err(Error::invalid(format!("{what} is not vertex-avoiding")));
        }
    }
    special_representatives(chain, t, &cons)
}

/// Map to the scroll of type `(a, b)` for a divisor `D ∈ T(t)` given by
/// construction coordinates relative to the scrollar tableau `t`.
///
/// With `m = ⌊(r+1)/n⌋`, `D′ = D − (m−1)E` and `D″ = D − mE`, the coordinates are
/// `(φ_0, ψ_0, …, ψ_{b−2}, ψ_b, …, ψ_{n−1})` where `div φ_0 = E_0 − E_1`,
/// `div ψ_i = D″_i − D″_{b−1}` for `i < b−1` and `div ψ_i = D′_i − D″_{b−1} − E_1`
/// for `i ≥ b`. When `b = 0` the last family becomes `div ψ_i = D′_i − D′_0`.
pub fn build_scroll_map(
    chain: &ChainOfCycles,
    t: &Tableau,
    a: usize,
    b: usize,
    cons: &[Q],
) -> Result<TropicalMapSkeleton> {
    let k = chain.k.ok_or_else(|| Error::invalid("the scroll map needs a chain of known gonality"))? as usize;
    let ty = ScrollarType::new(a, b, k)?;
    let n = ty.n();
    if !is_scrollar(t, ty) {
        return Err(Error::invalid(format!("tableau is not scrollar of type ({a}, {b}) for k = {k}")));
    }
    if n > 1 && has_vertical_step(t) {
        return Err(Error::invalid("tableau has a vertical step"));
    }
    if cons.len() != chain.g() {
        return Err(Error::ChainMismatch(format!("{} coordinates for genus {}", cons.len(), chain.g())));
    }
    let cols = t.cols();
    if cols < n || cols % n != b {
        return Err(Error::invalid(format!(
            "a tableau with {cols} columns does not reduce to {b} columns by removing blocks of {n}"
        )));
    }
    let m = ty.m(cols);
    let d = chain.g() as i64 + cols as i64 - 1 - t.rows() as i64;
    let div = normal_coords(chain, t, d, cons)?;
    if !contains(&TorusComponent::new(chain, t)?, &div) {
        return Err(Error::invalid("divisor is not in the torus of the tableau"));
    }
    let steps = serial_subtract(chain, t, ty, &div, m)?;
    let (one, two) = (&steps[m - 1], &steps[m]);
    // Only D′_b..D′_{n−1} are used; chips of those on interior vertices are rejected when assembling.
    let d1 = representatives(chain, &one.tableau, &one.divisor, None)?;
    let d2 = if b > 0 { representatives(chain, &two.tableau, &two.divisor, Some("D(-m)"))? } else { Vec::new() };
    let gon = gonality_representatives(chain, k as u32)?;

    let e = |c: usize| -> Vec<i64> {
        if c == 0 {
            let mut v = vec![0; n];
            v[1..].iter_mut().for_each(|x| *x = -1);
            v
        } else {
            unit(n, c)
        }
    };
    let u1 = unit(n, 0);
    let mut u0: Vec<i64> = u1.iter().map(|x| -x).collect();
    for c in b..n {
        for (x, y) in u0.iter_mut().zip(e(c)) {
            *x -= y;
        }
    }
    let mut sections = vec![
        Section { label: "E_0".into(), ray: u1, divisor: gon.e0.clone() },
        Section { label: "E_1".into(), ray: u0, divisor: gon.e1.clone() },
    ];
    for (i, divisor) in d2.into_iter().enumerate() {
        let ray = if i + 1 == b { e(0) } else { e(i + 1) };
        sections.push(Section { label: format!("D''_{i}"), ray, divisor });
    }
    for (i, divisor) in d1.into_iter().enumerate().filter(|(i, _)| *i >= b && *i < n) {
        sections.push(Section { label: format!("D'_{i}"), ray: e(i), divisor });
    }
    let realized = realize(chain, &sections.iter().map(|s| &s.divisor).collect::<Vec<_>>());
    assemble(&realized, MapKind::Scroll, sections, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{canonical_divisor, k_gonal_chain, normal_form};
    use crate::rational::q;
    use crate::tableaux::{lattice_path, tests::tab};

    fn genus5_scroll() -> TropicalMapSkeleton {
        let chain = k_gonal_chain(5, 3).unwrap();
        let e = gonality_representatives(&chain, 3).unwrap().e;
        let k1 = normal_form(&chain, &canonical_divisor(&chain)).unwrap().minus(&chain, &e).unwrap();
        let t = tab(&[&[1, 2, 3], &[3, 4, 5]]);
        let cons = construction_coords(&chain, &t, &k1);
        build_scroll_map(&chain, &t, 1, 1, &cons).unwrap()
    }

    #[test]
    fn genus5_scroll_rays_and_bridges() {
        let map = genus5_scroll();
        assert_eq!(map.n, 2);
        let rays: Vec<(&str, Vec<i64>)> = map.sections.iter().map(|s| (s.label.as_str(), s.ray.clone())).collect();
        assert_eq!(
            rays,
            vec![("E_0", vec![1, 0]), ("E_1", vec![-1, -1]), ("D''_0", vec![0, -1]), ("D'_1", vec![0, 1])]
        );
        assert_eq!(map.sections[2].divisor.simplified(&k_gonal_chain(5, 3).unwrap()).unwrap().degree(), 2);
        let bridge_x: Vec<i64> = map
            .edges
            .iter()
            .filter(|e| matches!(e.role, super::super::EdgeRole::Bridge { .. }))
            .map(|e| e.dir[0])
            .collect();
        assert_eq!(bridge_x, vec![2, 3, 3, 2]);
    }

    #[test]
    fn generic_map_bridges_follow_lattice_path() {
        let chain = ChainOfCycles::from_profile(&[0; 5]).unwrap();
        let t = tab(&[&[1, 2], &[3, 4]]);
        let cons: Vec<Q> = [q(1), q(0), q(1), q(0), crate::rational::frac(1, 3)].to_vec();
        let map = build_generic_map(&chain, &t, &cons).unwrap();
        let path = lattice_path(&t, 5).unwrap();
        let bridges: Vec<Vec<i64>> = map
            .edges
            .iter()
            .filter(|e| matches!(e.role, super::super::EdgeRole::Bridge { .. }))
            .map(|e| e.dir.clone())
            .collect();
        let want: Vec<Vec<i64>> = (1..5).map(|j| vec![path.at(j, 0)]).collect();
        assert_eq!(bridges, want);
    }

    #[test]
    fn rejects_vertex_hitting_divisors() {
        let chain = ChainOfCycles::from_profile(&[0; 5]).unwrap();
        let t = tab(&[&[1, 2], &[3, 4]]);
        let cons: Vec<Q> = [1, 0, 1, 0, 0].iter().map(|&v| q(v)).collect();
        assert!(build_generic_map(&chain, &t, &cons).is_err());
        let torsion = k_gonal_chain(5, 3).unwrap();
        let fine: Vec<Q> = [q(1), q(0), q(1), q(0), crate::rational::frac(1, 3)].to_vec();
        assert!(build_generic_map(&torsion, &t, &fine).is_err());
    }
}
