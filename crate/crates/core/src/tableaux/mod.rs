//! μ-displacement tableaux and their enumeration.
//!
//! A tableau is stored as rows; `t(x, y)` is column `x` of row `y`, with
//! `(0, 0)` the top-left box.

mod path;
mod rank;

pub use path::{
    construction_coords, is_vertex_avoiding, lattice_path, normal_coords, psi_bridge_slopes,
    random_construction_coords, special_representatives, LatticePath,
};
pub use rank::{contains, dim_wrd, in_wrd, rank, DimWrd, TorusComponent};

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{congruent, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl TryFrom<Vec<Vec<u32>>> for Tableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        Tableau::from_rows(rows)
    }
}

impl From<Tableau> for Vec<Vec<u32>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || cols == 0 {
            return Err(Error::invalid("tableau must have at least one box"));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged tableau"));
        }
        if rows.iter().flatten().any(|&v| v == 0) {
            return Err(Error::invalid("tableau symbols start at 1"));
        }
        Ok(Tableau { rows })
    }

    pub fn cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn at(&self, x: usize, y: usize) -> u32 {
        self.rows[y][x]
    }

    pub fn row_slices(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn column(&self, x: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[x]).collect()
    }

    pub fn max_symbol(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Boxes `(x, y)` holding symbol `j`.
    pub fn boxes_of(&self, j: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (y, row) in self.rows.iter().enumerate() {
            for (x, &v) in row.iter().enumerate() {
                if v == j {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(y, row)| row.iter().enumerate().map(move |(x, &v)| (x, y, v)))
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<u32> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Row-major reading word.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn in_column(&self, j: u32, x: usize) -> bool {
        self.rows.iter().any(|r| r[x] == j)
    }
}

/// Row and column strictness plus the displacement rule for repeated symbols.
pub fn is_displacement_tableau(t: &Tableau, profile: &[u32]) -> bool {
    let g = profile.len() as u32;
    for (x, y, v) in t.boxes() {
        if v > g {
            return false;
        }
        if x > 0 && t.at(x - 1, y) >= v {
            return false;
        }
        if y > 0 && t.at(x, y - 1) >= v {
            return false;
        }
    }
    for j in t.symbols() {
        let boxes = t.boxes_of(j);
        if boxes.len() < 2 {
            continue;
        }
        let mu = profile[j as usize - 1];
        if mu == 0 {
            return false;
        }
        for (a, &(x1, y1)) in boxes.iter().enumerate() {
            for &(x2, y2) in &boxes[a + 1..] {
                let dist = x1.abs_diff(x2) + y1.abs_diff(y2);
                if dist % mu as usize != 0 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn torus_dimension(t: &Tableau, g: usize) -> usize {
    let used = t.symbols().into_iter().filter(|&j| j as usize <= g).count();
    g - used
}

/// Search space for tableaux of a fixed shape on a torsion profile.
#[derive(Clone, Copy, Debug)]
pub struct Shape<'a> {
    pub profile: &'a [u32],
    pub cols: usize,
    pub rows: usize,
    /// Normal-form coordinates of a divisor; only tableaux whose torus contains it are produced.
    pub residues: Option<&'a [Q]>,
}

impl<'a> Shape<'a> {
    pub fn new(profile: &'a [u32], cols: usize, rows: usize) -> Self {
        Shape { profile, cols, rows, residues: None }
    }

    pub fn containing(mut self, xi: &'a [Q]) -> Self {
        self.residues = Some(xi);
        self
    }

    fn g(&self) -> u32 {
        self.profile.len() as u32
    }
}

struct Search<'a> {
    shape: Shape<'a>,
    grid: Vec<u32>,
    occ: Vec<Vec<(usize, usize)>>,
    distinct: usize,
}

impl<'a> Search<'a> {
    fn new(shape: Shape<'a>) -> Self {
        Search {
            grid: vec![0; shape.cols * shape.rows],
            occ: vec![Vec::new(); shape.g() as usize + 1],
            distinct: 0,
            shape,
        }
    }

    fn candidates(&self, x: usize, y: usize) -> std::ops::RangeInclusive<u32> {
        let s = &self.shape;
        let left = if x > 0 { self.grid[y * s.cols + x - 1] } else { 0 };
        let up = if y > 0 { self.grid[(y - 1) * s.cols + x] } else { 0 };
        let lo = left.max(up) + 1;
        let tail = (s.cols - 1 - x) + (s.rows - 1 - y);
        let hi = s.g().saturating_sub(tail as u32);
        lo..=hi
    }

    fn allowed(&self, x: usize, y: usize, j: u32) -> bool {
        let mu = self.shape.profile[j as usize - 1];
        if let Some(xi) = self.shape.residues {
            if !congruent(xi[j as usize - 1], q(y as i128 - x as i128), mu) {
                return false;
            }
        }
        let prior = &self.occ[j as usize];
        if prior.is_empty() {
            return true;
        }
        if mu == 0 {
            return false;
        }
        prior.iter().all(|&(px, py)| (px.abs_diff(x) + py.abs_diff(y)) % mu as usize == 0)
    }

    fn place(&mut self, x: usize, y: usize, j: u32) {
        self.grid[y * self.shape.cols + x] = j;
        if self.occ[j as usize].is_empty() {
            self.distinct += 1;
        }
        self.occ[j as usize].push((x, y));
    }

    fn unplace(&mut self, x: usize, y: usize, j: u32) {
        self.occ[j as usize].pop();
        if self.occ[j as usize].is_empty() {
            self.distinct -= 1;
        }
        self.grid[y * self.shape.cols + x] = 0;
    }

    fn tableau(&self) -> Tableau {
        Tableau { rows: self.grid.chunks(self.shape.cols).map(|c| c.to_vec()).collect() }
    }

    fn run<F: FnMut(&Search) -> ControlFlow<()>>(&mut self, pos: usize, first: Option<u32>, f: &mut F) -> ControlFlow<()> {
        let s = self.shape;
        if pos == s.cols * s.rows {
            return f(self);
        }
        let (x, y) = (pos % s.cols, pos / s.cols);
        for j in self.candidates(x, y) {
            if pos == 0 && first.is_some_and(|v| v != j) {
                continue;
            }
            if !self.allowed(x, y, j) {
                continue;
            }
            self.place(x, y, j);
            let flow = self.run(pos + 1, first, f);
            self.unplace(x, y, j);
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn run_min_distinct(&mut self, pos: usize, best: &mut Option<usize>, budget: &mut Option<u64>) -> bool {
        let s = self.shape;
        if pos == s.cols * s.rows {
            if best.is_none_or(|b| self.distinct < b) {
                *best = Some(self.distinct);
            }
            return true;
        }
        if best.is_some_and(|b| self.distinct >= b) {
            return true;
        }
        if let Some(b) = budget.as_mut() {
            if *b == 0 {
                return false;
            }
            *b -= 1;
        }
        let (x, y) = (pos % s.cols, pos / s.cols);
        // Repeats first: they keep the distinct count low and tighten the bound early.
        let mut cands: Vec<u32> = self.candidates(x, y).filter(|&j| self.allowed(x, y, j)).collect();
        cands.sort_by_key(|&j| self.occ[j as usize].is_empty());
        let mut complete = true;
        for j in cands {
            self.place(x, y, j);
            complete &= self.run_min_distinct(pos + 1, best, budget);
            self.unplace(x, y, j);
            if !complete {
                break;
            }
        }
        complete
    }
}

/// Visit every tableau of the shape in lexicographic order of the reading word.
pub fn visit_tableaux<F: FnMut(&Tableau) -> ControlFlow<()>>(shape: Shape, mut f: F) {
    let mut search = Search::new(shape);
    let _ = search.run(0, None, &mut |s: &Search| f(&s.tableau()));
}

/// All tableaux of the shape, at most `limit` of them.
pub fn enumerate_tableaux(shape: Shape, limit: Option<usize>) -> Vec<Tableau> {
    let mut out = Vec::new();
    visit_tableaux(shape, |t| {
        out.push(t.clone());
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// Same stream as [`enumerate_tableaux`], split by the top-left symbol across threads.
pub fn enumerate_tableaux_parallel(shape: Shape, limit: Option<usize>) -> Vec<Tableau> {
    let firsts: Vec<u32> = Search::new(shape).candidates(0, 0).collect();
    let parts: Vec<Vec<Tableau>> = std::thread::scope(|scope| {
        let handles: Vec<_> = firsts
            .iter()
            .map(|&v| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut search = Search::new(shape);
                    let _ = search.run(0, Some(v), &mut |s: &Search| {
                        out.push(s.tableau());
                        if limit.is_some_and(|l| out.len() >= l) {
                            ControlFlow::Break(())
                        } else {
                            ControlFlow::Continue(())
                        }
                    });
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration thread")).collect()
    });
    let mut all: Vec<Tableau> = parts.into_iter().flatten().collect();
    if let Some(l) = limit {
        all.truncate(l);
    }
    all
}

pub fn first_tableau(shape: Shape) -> Option<Tableau> {
    enumerate_tableaux(shape, Some(1)).pop()
}

/// Fewest distinct symbols over all tableaux of the shape (`None` when there are none),
/// and whether the search finished. `budget` caps the number of search nodes.
pub fn min_distinct_symbols(shape: Shape, budget: Option<u64>) -> (Option<usize>, bool) {
    let mut best = None;
    let mut budget = budget;
    let complete = Search::new(shape).run_min_distinct(0, &mut best, &mut budget);
    (best, complete)
}

/// A tableau of the shape drawn by randomized backtracking (not uniform).
pub fn random_tableau<R: Rng>(shape: Shape, rng: &mut R) -> Option<Tableau> {
    fn go<R: Rng>(s: &mut Search, pos: usize, rng: &mut R, steps: &mut u32) -> bool {
        let sh = s.shape;
        if pos == sh.cols * sh.rows {
            return true;
        }
        *steps += 1;
        if *steps > 20_000 {
            return false;
        }
        let (x, y) = (pos % sh.cols, pos / sh.cols);
        let mut cands: Vec<u32> = s.candidates(x, y).filter(|&j| s.allowed(x, y, j)).collect();
        cands.shuffle(rng);
        // Bias toward small symbols so that later boxes keep room.
        cands.sort_by_key(|&j| j / 3 + rng.gen_range(0..3));
        for j in cands {
            s.place(x, y, j);
            if go(s, pos + 1, rng, steps) {
                return true;
            }
            s.unplace(x, y, j);
        }
        false
    }
    let mut s = Search::new(shape);
    let mut steps = 0;
    go(&mut s, 0, rng, &mut steps).then(|| s.tableau())
}

pub fn has_vertical_step(t: &Tableau) -> bool {
    (0..t.cols()).any(|x| (1..t.rows()).any(|y| t.at(x, y) == t.at(x, y - 1) + 1))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::SeedableRng;

    pub(crate) fn tab(rows: &[&[u32]]) -> Tableau {
        Tableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    const P5: [u32; 5] = [0, 0, 3, 0, 0];

    #[test]
    fn validation() {
        let t = tab(&[&[1, 3], &[2, 4], &[3, 5]]);
        assert!(is_displacement_tableau(&t, &P5));
        assert!(!is_displacement_tableau(&t, &[0; 5]));
        let k = tab(&[&[1, 2, 3, 4, 5]]);
        assert!(is_displacement_tableau(&k, &P5));
        assert!(is_displacement_tableau(&k, &[0; 5]));
        assert!(!is_displacement_tableau(&tab(&[&[2, 1]]), &P5));
        assert!(Tableau::from_rows(vec![vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let all = enumerate_tableaux(Shape::new(&P5, 2, 3), None);
        assert!(!all.is_empty());
        let t = tab(&[&[1, 3], &[2, 4], &[3, 5]]);
        assert!(all.contains(&t));
        assert!(all.iter().all(|t| is_displacement_tableau(t, &P5)));
        assert!(enumerate_tableaux(Shape::new(&[0, 0], 2, 2), None).is_empty());
        assert_eq!(enumerate_tableaux(Shape::new(&[0; 5], 1, 1), None).len(), 5);
        let words: Vec<Vec<u32>> = all.iter().map(|t| t.reading_word()).collect();
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(words, sorted);
    }

    #[test]
    fn parallel_stream_matches() {
        let profile = [0, 0, 3, 3, 3, 0, 0];
        let shape = Shape::new(&profile, 2, 4);
        assert_eq!(enumerate_tableaux(shape, None), enumerate_tableaux_parallel(shape, None));
    }

    #[test]
    fn dimensions() {
        assert_eq!(torus_dimension(&tab(&[&[1, 2, 3, 4, 5]]), 5), 0);
        assert_eq!(torus_dimension(&tab(&[&[1, 3], &[2, 4], &[3, 5]]), 5), 0);
        assert_eq!(torus_dimension(&tab(&[&[1]]), 5), 4);
    }

    #[test]
    fn min_distinct_agrees_with_enumeration() {
        let profile = [0, 0, 3, 3, 3, 3, 0, 0];
        for (c, r) in [(2, 3), (2, 4), (3, 3), (2, 5)] {
            let shape = Shape::new(&profile, c, r);
            let brute = enumerate_tableaux(shape, None).iter().map(|t| t.symbols().len()).min();
            assert_eq!(min_distinct_symbols(shape, None), (brute, true));
        }
    }

    #[test]
    fn random_tableaux_are_valid() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let profile = [0, 0, 3, 3, 3, 3, 0, 0];
        for _ in 0..50 {
            let t = random_tableau(Shape::new(&profile, 2, 3), &mut rng).unwrap();
            assert!(is_displacement_tableau(&t, &profile));
        }
    }

    #[test]
    fn vertical_steps() {
        assert!(has_vertical_step(&tab(&[&[1, 3], &[2, 4], &[3, 5]])));
        assert!(!has_vertical_step(&tab(&[&[1, 2, 3]])));
    }
}
