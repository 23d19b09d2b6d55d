//! Tori `T(t)`, membership in `W^r_d`, divisor rank and `dim W^r_d`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{first_tableau, is_displacement_tableau, min_distinct_symbols, Shape, Tableau};
use crate::chain::{ChainOfCycles, Divisor};
use crate::error::{Error, Result};
use crate::rational::{congruent, q, Q};

/// Classes whose coordinates satisfy `ξ_{t(x,y)} ≡ y − x (mod μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusComponent {
    pub tableau: Tableau,
    pub profile: Vec<u32>,
    /// symbol ↦ required residue `y − x`.
    pub constraints: BTreeMap<u32, Q>,
    pub free: Vec<u32>,
}

impl TorusComponent {
    pub fn new(chain: &ChainOfCycles, t: &Tableau) -> Result<Self> {
        let profile = chain.profile();
        if !is_displacement_tableau(t, &profile) {
            return Err(Error::invalid("not a displacement tableau for this chain"));
        }
        let mut constraints = BTreeMap::new();
        for (x, y, j) in t.boxes() {
            constraints.entry(j).or_insert_with(|| q(y as i128 - x as i128));
        }
        let free = (1..=chain.g() as u32).filter(|j| !constraints.contains_key(j)).collect();
        Ok(TorusComponent { tableau: t.clone(), profile, constraints, free })
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }
}

pub fn contains(torus: &TorusComponent, d: &Divisor) -> bool {
    if d.xi.len() != torus.profile.len() {
        return false;
    }
    torus
        .constraints
        .iter()
        .all(|(&j, &res)| congruent(d.xi[j as usize - 1], res, torus.profile[j as usize - 1]))
}

/// Whether `d` lies in `W^r_{deg d}`.
pub fn in_wrd(chain: &ChainOfCycles, d: &Divisor, r: i64) -> bool {
    let g = chain.g() as i64;
    let s = g - d.d + r;
    if r < 0 {
        return true;
    }
    if s <= 0 {
        return true;
    }
    if s > g {
        return false;
    }
    let profile = chain.profile();
    first_tableau(Shape::new(&profile, r as usize + 1, s as usize).containing(&d.xi)).is_some()
}

/// Rank of the class of `d`, −1 when it has no effective representative.
pub fn rank(chain: &ChainOfCycles, d: &Divisor) -> i64 {
    if d.d < 0 {
        return -1;
    }
    let mut r = 0;
    while r <= d.d && in_wrd(chain, d, r) {
        r += 1;
    }
    r - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimWrd {
    /// Dimension of `W^r_d`, −1 when empty.
    pub value: i64,
    /// False when the search budget ran out; `value` is then a lower bound.
    pub exhaustive: bool,
}

pub fn dim_wrd(chain: &ChainOfCycles, r: i64, d: i64, budget: Option<u64>) -> Result<DimWrd> {
    if r < 0 {
        return Err(Error::invalid(format!("rank must be >= 0, got {r}")));
    }
    let g = chain.g() as i64;
    let s = g - d + r;
    if s <= 0 {
        return Ok(DimWrd { value: g, exhaustive: true });
    }
    if s > g {
        return Ok(DimWrd { value: -1, exhaustive: true });
    }
    let profile = chain.profile();
    let shape = Shape::new(&profile, r as usize + 1, s as usize);
    let (best, exhaustive) = min_distinct_symbols(shape, budget);
    Ok(DimWrd { value: best.map_or(-1, |m| g - m as i64), exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{canonical_divisor, gonality_representatives, k_gonal_chain, normal_form};
    use crate::tableaux::tests::tab;

    fn genus5() -> (ChainOfCycles, Divisor, crate::chain::ChipList) {
        let chain = k_gonal_chain(5, 3).unwrap();
        let k = normal_form(&chain, &canonical_divisor(&chain)).unwrap();
        let e = gonality_representatives(&chain, 3).unwrap().e;
        (chain, k, e)
    }

    #[test]
    fn membership_examples() {
        let (chain, k, e) = genus5();
        let tk = TorusComponent::new(&chain, &tab(&[&[1, 2, 3, 4, 5]])).unwrap();
        assert!(contains(&tk, &k));
        let ed = normal_form(&chain, &e).unwrap();
        let te = TorusComponent::new(&chain, &tab(&[&[1, 3], &[2, 4], &[3, 5]])).unwrap();
        assert!(contains(&te, &ed));
        let k1 = k.minus(&chain, &e).unwrap();
        assert_eq!(k1.xi, [0, -1, 1, 0, -1].iter().map(|&v| q(v)).collect::<Vec<_>>());
        let t1 = TorusComponent::new(&chain, &tab(&[&[1, 2, 3], &[3, 4, 5]])).unwrap();
        assert!(contains(&t1, &k1));
        assert_eq!(tk.dimension(), 0);
    }

    #[test]
    fn genus5_ranks() {
        let (chain, k, e) = genus5();
        let mut d = k.clone();
        let mut ranks = vec![rank(&chain, &d)];
        for _ in 0..3 {
            d = d.minus(&chain, &e).unwrap();
            ranks.push(rank(&chain, &d));
        }
        assert_eq!(ranks, vec![4, 2, 0, -1]);
        assert_eq!(rank(&chain, &Divisor::new(&chain, -1, vec![q(0); 5]).unwrap()), -1);
        assert_eq!(rank(&chain, &normal_form(&chain, &e).unwrap()), 1);
    }

    #[test]
    fn dim_wrd_examples() {
        let chain = k_gonal_chain(5, 3).unwrap();
        assert_eq!(dim_wrd(&chain, 1, 3, None).unwrap().value, 0);
        assert_eq!(dim_wrd(&chain, 2, 5, None).unwrap().value, 0);
        assert_eq!(dim_wrd(&chain, 0, 7, None).unwrap().value, 5);
        assert_eq!(dim_wrd(&chain, 1, 2, None).unwrap().value, -1);
    }
}
