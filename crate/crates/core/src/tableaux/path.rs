//! Lattice paths of tableaux and the divisors `D_i` they produce.

use rand::Rng;
use serde::Serialize;

use super::{is_displacement_tableau, Tableau};
use crate::chain::{is_equivalent, normal_form, ChainOfCycles, ChipList, Divisor, Location};
use crate::error::{Error, Result};
use crate::rational::{congruent, frac, q, Q};

/// `p_0..p_g`, each a vector indexed `0..r`; `p_j(r) = 0` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePath {
    pub r: usize,
    pub p: Vec<Vec<i64>>,
}

impl LatticePath {
    /// `p_j(i)`, with `p_j(r) = 0`.
    pub fn at(&self, j: usize, i: usize) -> i64 {
        if i == self.r {
            0
        } else {
            self.p[j][i]
        }
    }

    pub fn g(&self) -> usize {
        self.p.len() - 1
    }
}

pub fn lattice_path(t: &Tableau, g: usize) -> Result<LatticePath> {
    if t.max_symbol() as usize > g {
        return Err(Error::invalid(format!("symbol {} exceeds genus {g}", t.max_symbol())));
    }
    let r = t.cols() - 1;
    let mut cur: Vec<i64> = (0..r).map(|i| (r - i) as i64).collect();
    let mut p = vec![cur.clone()];
    for j in 1..=g as u32 {
        for x in 0..=r {
            if t.in_column(j, x) {
                if x == r {
                    cur.iter_mut().for_each(|v| *v -= 1);
                } else {
                    cur[x] += 1;
                }
            }
        }
        p.push(cur.clone());
    }
    Ok(LatticePath { r, p })
}

/// Slopes `p_1(i)..p_{g−1}(i)` of `ψ_i` along the bridges.
pub fn psi_bridge_slopes(t: &Tableau, g: usize, i: usize) -> Result<Vec<i64>> {
    let path = lattice_path(t, g)?;
    if i > path.r {
        return Err(Error::invalid(format!("index {i} exceeds r = {}", path.r)));
    }
    Ok((1..g).map(|j| path.at(j, i)).collect())
}

/// Number of symbols `< j` in column `x`.
fn count_below(t: &Tableau, x: usize, j: u32) -> i64 {
    t.column(x).iter().filter(|&&v| v < j).count() as i64
}

/// Coordinates in the normalization `ξ_{t(x,y)} ≡ p_{t(x,y)−1}(x)` from normal-form coordinates.
pub fn construction_coords(chain: &ChainOfCycles, t: &Tableau, d: &Divisor) -> Vec<Q> {
    let r = t.cols() - 1;
    (1..=chain.g())
        .map(|j| chain.cycle(j).canon(d.xi[j - 1] + q(r as i128) - q(count_below(t, r, j as u32) as i128)))
        .collect()
}

/// Inverse of [`construction_coords`] for a class of degree `d`.
pub fn normal_coords(chain: &ChainOfCycles, t: &Tableau, d: i64, cons: &[Q]) -> Result<Divisor> {
    let r = t.cols() - 1;
    let xi = (1..=chain.g())
        .map(|j| cons[j - 1] - q(r as i128) + q(count_below(t, r, j as u32) as i128))
        .collect();
    Divisor::new(chain, d, xi)
}

fn check_inputs(chain: &ChainOfCycles, t: &Tableau, cons: &[Q]) -> Result<LatticePath> {
    if cons.len() != chain.g() {
        return Err(Error::ChainMismatch(format!("{} coordinates for genus {}", cons.len(), chain.g())));
    }
    if !is_displacement_tableau(t, &chain.profile()) {
        return Err(Error::invalid("not a displacement tableau for this chain"));
    }
    lattice_path(t, chain.g())
}

/// `D_i = i·v_1 + (r−i)·w_g + Σ_{j ∉ column i} ⟨ξ_j − p_{j−1}(i)⟩_j` for `i = 0..=r`.
///
/// Verifies that all `D_i` are equivalent and lie in the torus of `t`.
pub fn special_representatives(chain: &ChainOfCycles, t: &Tableau, cons: &[Q]) -> Result<Vec<ChipList>> {
    let path = check_inputs(chain, t, cons)?;
    let g = chain.g();
    for (x, y, j) in t.boxes() {
        let want = q(path.at(j as usize - 1, x) as i128);
        if !congruent(cons[j as usize - 1], want, chain.mu(j as usize)) {
            return Err(Error::invalid(format!(
                "coordinate of symbol {j} must be congruent to p_{}({x}) = {want} (box ({x},{y}))",
                j - 1
            )));
        }
    }
    let r = path.r;
    let mut reps = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let mut d = ChipList::new();
        if i > 0 {
            d.push(Location::v(1), i as i64);
        }
        if r > i {
            d.push(Location::w(g), (r - i) as i64);
        }
        for j in 1..=g {
            if !t.in_column(j as u32, i) {
                d.push(Location::at(j, cons[j - 1] - q(path.at(j - 1, i) as i128)), 1);
            }
        }
        reps.push(d);
    }
    let first = normal_form(chain, &reps[0])?;
    for d in &reps[1..] {
        if !is_equivalent(chain, &reps[0], d)? {
            return Err(Error::internal("representatives D_i are not equivalent"));
        }
    }
    if !super::contains(&super::TorusComponent::new(chain, t)?, &first) {
        return Err(Error::internal("representative lies outside the torus of its tableau"));
    }
    Ok(reps)
}

/// No `ξ_j − p_{j−1}(i)` is `≡ −1`, and `≡ 0` only when `j` lies in column `i`.
pub fn is_vertex_avoiding(chain: &ChainOfCycles, t: &Tableau, cons: &[Q]) -> Result<bool> {
    let path = check_inputs(chain, t, cons)?;
    for i in 0..=path.r {
        for j in 1..=chain.g() {
            let mu = chain.mu(j);
            let a = cons[j - 1] - q(path.at(j - 1, i) as i128);
            if congruent(a, q(-1), mu) {
                return Ok(false);
            }
            if congruent(a, q(0), mu) && !t.in_column(j as u32, i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Construction coordinates satisfying the congruences of `t`, random elsewhere.
/// Free symbols get non-integral values so that they never touch a vertex.
pub fn random_construction_coords<R: Rng>(chain: &ChainOfCycles, t: &Tableau, rng: &mut R) -> Result<Vec<Q>> {
    let path = lattice_path(t, chain.g())?;
    Ok((1..=chain.g())
        .map(|j| {
            let mu = chain.mu(j) as i128;
            match t.boxes_of(j as u32).first() {
                Some(&(x, _)) => {
                    let base = q(path.at(j - 1, x) as i128);
                    if mu > 0 {
                        base + q(mu * rng.gen_range(-1..=1))
                    } else {
                        base
                    }
                }
                None => {
                    let den = [5, 7, 11, 13][rng.gen_range(0..4)];
                    let mut num = rng.gen_range(-4 * den..4 * den);
                    if num % den == 0 {
                        num += 1;
                    }
                    frac(num, den)
                }
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{gonality_representatives, k_gonal_chain};
    use crate::tableaux::tests::tab;

    #[test]
    fn paths() {
        let t = tab(&[&[1, 3], &[2, 4], &[3, 5]]);
        let p = lattice_path(&t, 5).unwrap();
        assert_eq!(p.p, vec![vec![1], vec![2], vec![3], vec![3], vec![2], vec![1]]);
        let k = tab(&[&[1, 2, 3, 4, 5]]);
        let pk = lattice_path(&k, 5).unwrap();
        assert_eq!(pk.p[0], vec![4, 3, 2, 1]);
        assert_eq!(pk.p[4], vec![5, 4, 3, 2]);
        assert_eq!(pk.p[5], vec![4, 3, 2, 1]);
        assert!(lattice_path(&k, 4).is_err());
    }

    #[test]
    fn bridge_slopes() {
        let t = tab(&[&[1, 3], &[2, 4], &[3, 5]]);
        assert_eq!(psi_bridge_slopes(&t, 5, 0).unwrap(), vec![2, 3, 3, 2]);
        assert_eq!(psi_bridge_slopes(&t, 5, 1).unwrap(), vec![0, 0, 0, 0]);
        let k = tab(&[&[1, 2, 3, 4, 5]]);
        assert_eq!(psi_bridge_slopes(&k, 5, 0).unwrap(), vec![5, 5, 5, 5]);
    }

    #[test]
    fn pencil_representatives() {
        let chain = k_gonal_chain(5, 3).unwrap();
        let t = tab(&[&[1, 3], &[2, 4], &[3, 5]]);
        let cons: Vec<Q> = [1, 2, 3, 0, 0].iter().map(|&v| q(v)).collect();
        let reps = special_representatives(&chain, &t, &cons).unwrap();
        let g = gonality_representatives(&chain, 3).unwrap();
        assert_eq!(reps[1].simplified(&chain).unwrap(), g.e1.simplified(&chain).unwrap());
        assert_eq!(reps[0].simplified(&chain).unwrap(), g.e0.simplified(&chain).unwrap());
        assert!(is_vertex_avoiding(&chain, &t, &cons).unwrap());
        let mut bad = cons.clone();
        bad[3] = q(2);
        assert!(!is_vertex_avoiding(&chain, &t, &bad).unwrap());
        assert!(special_representatives(&chain, &t, &bad).is_err());
    }

    #[test]
    fn coordinate_conversion() {
        let chain = k_gonal_chain(5, 3).unwrap();
        let t = tab(&[&[1, 3], &[2, 4], &[3, 5]]);
        let e = normal_form(&chain, &gonality_representatives(&chain, 3).unwrap().e).unwrap();
        let cons = construction_coords(&chain, &t, &e);
        assert_eq!(cons, [1, 2, 0, 0, 0].iter().map(|&v| q(v)).collect::<Vec<_>>());
        assert_eq!(normal_coords(&chain, &t, 3, &cons).unwrap(), e);
    }

    #[test]
    fn random_coords_avoid_vertices_off_tableau() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let chain = k_gonal_chain(5, 3).unwrap();
        let t = tab(&[&[1, 3]]);
        for _ in 0..20 {
            let cons = random_construction_coords(&chain, &t, &mut rng).unwrap();
            let reps = special_representatives(&chain, &t, &cons).unwrap();
            assert_eq!(reps.len(), 2);
        }
    }
}
