//! Scrollar tableaux of type (a, b), their contraction `t(−1)` and the
//! bookkeeping around serial subtraction of the gonality divisor.

use itertools::Itertools;
use serde::Serialize;

use crate::chain::{gonality_representatives, ChainOfCycles, Divisor};
use crate::error::{Error, Result};
use crate::numerics::rho_bar;
use crate::tableaux::{
    contains, is_displacement_tableau, lattice_path, Tableau, TorusComponent,
};

pub use crate::tableaux::has_vertical_step;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScrollarType {
    pub a: usize,
    pub b: usize,
    pub k: usize,
}

impl ScrollarType {
    pub fn new(a: usize, b: usize, k: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::invalid("scroll type needs a > 0"));
        }
        if a + b >= k {
            return Err(Error::invalid(format!("n = a+b = {} must be below k = {k}", a + b)));
        }
        Ok(ScrollarType { a, b, k })
    }

    pub fn n(&self) -> usize {
        self.a + self.b
    }

    /// Number of rows added by each contraction.
    pub fn drop(&self) -> usize {
        self.k - self.n()
    }

    /// The type whose tableaux have `cols` columns: b = cols mod n.
    pub fn for_columns(n: usize, k: usize, cols: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        let b = cols % n;
        ScrollarType::new(n - b, b, k)
    }

    /// m = floor((r+1)/n).
    pub fn m(&self, cols: usize) -> usize {
        cols / self.n()
    }
}

/// Repeats are exactly the (n, n−k) translates, and cols ≡ b (mod n).
pub fn is_scrollar(t: &Tableau, ty: ScrollarType) -> bool {
    let (n, drop) = (ty.n(), ty.drop());
    if t.cols() % n != ty.b % n {
        return false;
    }
    let strict = t.boxes().all(|(x, y, v)| {
        (x == 0 || t.at(x - 1, y) < v) && (y == 0 || t.at(x, y - 1) < v)
    });
    if !strict {
        return false;
    }
    for (x, y, v) in t.boxes() {
        if x + n < t.cols() && y >= drop && t.at(x + n, y - drop) != v {
            return false;
        }
    }
    for j in t.symbols() {
        let boxes = t.boxes_of(j);
        for (&(x1, y1), &(x2, y2)) in boxes.iter().tuple_combinations() {
            let (dx, dy) = (x2 as i64 - x1 as i64, y2 as i64 - y1 as i64);
            if dx == 0 || dx % n as i64 != 0 {
                return false;
            }
            let steps = dx / n as i64;
            if dy != -steps * drop as i64 {
                return false;
            }
        }
    }
    true
}

/// Canonical filling: box (x, y) gets key (y + (k−n)·⌊x/n⌋, x mod n); keys are
/// numbered in row-major order.
pub fn generate_scrollar(ty: ScrollarType, cols: usize, rows: usize) -> Result<Tableau> {
    let (n, drop) = (ty.n(), ty.drop());
    if cols < n || cols % n != ty.b % n {
        return Err(Error::invalid(format!(
            "{cols} columns is not >= n = {n} and congruent to b = {} mod n",
            ty.b
        )));
    }
    if rows < drop {
        return Err(Error::invalid(format!("need at least k-n = {drop} rows, got {rows}")));
    }
    let key = |x: usize, y: usize| (y + drop * (x / n), x % n);
    let keys: Vec<(usize, usize)> = (0..rows)
        .flat_map(|y| (0..cols).map(move |x| key(x, y)))
        .sorted()
        .dedup()
        .collect();
    let label = |k: (usize, usize)| keys.binary_search(&k).expect("key present") as u32 + 1;
    let grid = (0..rows)
        .map(|y| (0..cols).map(|x| label(key(x, y))).collect())
        .collect();
    Tableau::from_rows(grid)
}

/// n(s−ℓ) + ℓk distinct symbols, ℓ = cols − n.
pub fn scrollar_symbol_count(ty: ScrollarType, cols: usize, rows: usize) -> usize {
    let (n, l) = (ty.n() as i64, (cols - ty.n()) as i64);
    (n * (rows as i64 - l) + l * ty.k as i64) as usize
}

/// Increasing relabeling into `1..=g` placing every repeated symbol on the
/// torsion band `k..=g−k+1` of the k-gonal chain; `None` if impossible.
pub fn embed_in_genus(t: &Tableau, k: usize, g: usize) -> Option<Tableau> {
    let symbols: Vec<u32> = t.symbols().into_iter().collect();
    if symbols.len() > g {
        return None;
    }
    let repeated: Vec<u32> = symbols.iter().copied().filter(|&j| t.boxes_of(j).len() > 1).collect();
    let gap = (g - symbols.len()) as u32;
    let last_rep = repeated.last().copied();
    let relabel = |v: u32| {
        let rank = symbols.binary_search(&v).unwrap() as u32 + 1;
        if last_rep.is_some_and(|lr| v > lr) {
            rank + gap
        } else {
            rank
        }
    };
    let out = Tableau::from_rows(
        t.row_slices().iter().map(|r| r.iter().map(|&v| relabel(v)).collect()).collect(),
    )
    .ok()?;
    let profile = crate::chain::k_gonal_profile(g, k as u32);
    is_displacement_tableau(&out, &profile).then_some(out)
}

pub fn t_minus_one(t: &Tableau, ty: ScrollarType) -> Result<Tableau> {
    let (n, drop) = (ty.n(), ty.drop());
    if t.cols() <= n {
        return Err(Error::invalid(format!("t(-1) needs more than n = {n} columns")));
    }
    let (cols, s) = (t.cols() - n, t.rows());
    let grid = (0..s + drop)
        .map(|y| {
            (0..cols)
                .map(|x| if y < s { t.at(x, y) } else { t.at(x + n, y - drop) })
                .collect()
        })
        .collect();
    Tableau::from_rows(grid)
}

/// Inverse of [`t_minus_one`], defined when the contracted tableau has at least n columns.
pub fn t_plus_one(t: &Tableau, ty: ScrollarType) -> Result<Tableau> {
    let (n, drop) = (ty.n(), ty.drop());
    if t.cols() < n || t.rows() <= drop {
        return Err(Error::invalid("tableau too small to invert the contraction"));
    }
    let (cols, s) = (t.cols() + n, t.rows() - drop);
    let grid = (0..s)
        .map(|y| {
            (0..cols)
                .map(|x| if x < t.cols() { t.at(x, y) } else { t.at(x - n, y + drop) })
                .collect()
        })
        .collect();
    Tableau::from_rows(grid)
}

/// `t(−i)`.
pub fn t_minus(t: &Tableau, ty: ScrollarType, i: usize) -> Result<Tableau> {
    let mut cur = t.clone();
    for _ in 0..i {
        cur = t_minus_one(&cur, ty)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct SubtractionStep {
    pub i: usize,
    pub divisor: Divisor,
    pub tableau: Tableau,
    pub contained: bool,
}

/// `D(−i) = D − i·E` for i = 0..=m with membership in `T(t(−i))` at each step.
pub fn serial_subtract(
    chain: &ChainOfCycles,
    t: &Tableau,
    ty: ScrollarType,
    d: &Divisor,
    m: usize,
) -> Result<Vec<SubtractionStep>> {
    let e = gonality_representatives(chain, ty.k as u32)?.e;
    let start = TorusComponent::new(chain, t)?;
    if !contains(&start, d) {
        return Err(Error::invalid("divisor is not in the torus of the tableau"));
    }
    let mut steps = vec![SubtractionStep { i: 0, divisor: d.clone(), tableau: t.clone(), contained: true }];
    let mut cur_d = d.clone();
    let mut cur_t = t.clone();
    for i in 1..=m {
        cur_d = cur_d.minus(chain, &e)?;
        cur_t = t_minus_one(&cur_t, ty)?;
        let contained = contains(&TorusComponent::new(chain, &cur_t)?, &cur_d);
        if !contained {
            return Err(Error::internal(format!(
                "D(-{i}) is not in the torus of t(-{i}) = {:?}",
                cur_t.row_slices()
            )));
        }
        steps.push(SubtractionStep { i, divisor: cur_d.clone(), tableau: cur_t.clone(), contained });
    }
    Ok(steps)
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionCheck {
    pub dim: i64,
    pub ell: i64,
    pub r: i64,
    pub d: i64,
    pub formula: i64,
    pub agrees: bool,
    /// Some scrollar shape on the k-gonal chain of genus g has dimension ρ̄_k(g, r, d).
    pub rho_bar_attained: bool,
}

pub fn component_dimension_check(t: &Tableau, ty: ScrollarType, g: usize) -> Result<DimensionCheck> {
    if !is_scrollar(t, ty) {
        return Err(Error::invalid("tableau is not scrollar of the given type"));
    }
    let (g_i, cols, s) = (g as i64, t.cols() as i64, t.rows() as i64);
    let r = cols - 1;
    let ell = cols - ty.n() as i64;
    let d = g_i + r - s;
    let dim = g_i - t.symbols().len() as i64;
    let formula = g_i - (r - ell + 1) * (g_i - d + r - ell) - ell * ty.k as i64;
    let rho_bar_attained = d >= 0 && scrollar_for(g, r as usize, d as usize, ty.k)?.is_some();
    Ok(DimensionCheck { dim, ell, r, d, formula, agrees: dim == formula, rho_bar_attained })
}

/// A scrollar tableau with r+1 columns and g−d+r rows whose torus on the
/// k-gonal chain has dimension ρ̄_k(g, r, d), if one exists.
pub fn scrollar_for(g: usize, r: usize, d: usize, k: usize) -> Result<Option<(ScrollarType, Tableau)>> {
    let s = g as i64 - d as i64 + r as i64;
    if s <= 0 {
        return Ok(None);
    }
    let s = s as usize;
    let target = rho_bar(g as i64, r as i64, d as i64, k as i64)?.value;
    // Any ℓ reaching ρ̄ qualifies; a scrollar torus can never exceed it.
    for ell in 0..=r {
        let value = crate::numerics::rho(g as i64, (r - ell) as i64, d as i64)? - (ell * k) as i64;
        if value != target {
            continue;
        }
        let n = r + 1 - ell;
        if n == 0 || n >= k || s < k - n {
            continue;
        }
        let ty = ScrollarType::for_columns(n, k, r + 1)?;
        if scrollar_symbol_count(ty, r + 1, s) > g {
            continue;
        }
        let t = generate_scrollar(ty, r + 1, s)?;
        if let Some(emb) = embed_in_genus(&t, k, g) {
            return Ok(Some((ty, emb)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceSlopes {
    pub values: Vec<i64>,
    pub distinct: bool,
}

/// Bridge slopes at β_{k−1} of φ_0+ψ_i (i<b), φ_1+ψ_i (i<b) and ψ_i (b≤i<n),
/// read off the lattice path of t(−m+1).
pub fn independence_slopes(t: &Tableau, ty: ScrollarType, g: usize) -> Result<IndependenceSlopes> {
    let m = ty.m(t.cols());
    if m == 0 {
        return Err(Error::invalid("tableau has fewer than n columns"));
    }
    let tp = t_minus(t, ty, m - 1)?;
    let p = lattice_path(&tp, g)?;
    let j = ty.k - 1;
    if j > g {
        return Err(Error::invalid("k exceeds the genus"));
    }
    let (n, b) = (ty.n(), ty.b);
    let mut values = Vec::with_capacity(2 * b + ty.a);
    values.extend((0..b).map(|i| p.at(j, i)));
    values.extend((0..b).map(|i| p.at(j, n + i)));
    values.extend((b..n).map(|i| p.at(j, i)));
    let distinct = values.iter().all_unique();
    Ok(IndependenceSlopes { values, distinct })
}
