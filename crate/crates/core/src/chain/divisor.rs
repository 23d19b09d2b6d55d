use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use super::{k_gonal_profile, ChainOfCycles};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    /// `⟨xi⟩_j`.
    Cycle { j: usize, xi: Q },
    /// Point at distance `t` from `w_j` along bridge `j`.
    Bridge { j: usize, t: Q },
}

impl Location {
    pub fn v(j: usize) -> Self {
        Location::Cycle { j, xi: q(-1) }
    }

    pub fn w(j: usize) -> Self {
        Location::Cycle { j, xi: q(0) }
    }

    pub fn at(j: usize, xi: Q) -> Self {
        Location::Cycle { j, xi }
    }

    fn canonical(&self, chain: &ChainOfCycles) -> Result<Location> {
        match self {
            Location::Cycle { j, xi } => {
                chain.check_index(*j)?;
                Ok(Location::Cycle { j: *j, xi: chain.cycle(*j).canon(*xi) })
            }
            Location::Bridge { j, t } => {
                if *j == 0 || *j >= chain.g() {
                    return Err(Error::invalid(format!("bridge index {j} outside 1..{}", chain.g())));
                }
                let len = chain.bridge(*j);
                if *t < q(0) || *t > len {
                    return Err(Error::invalid(format!("bridge offset {t} outside [0, {len}]")));
                }
                if *t == q(0) {
                    return Ok(Location::w(*j));
                }
                if *t == len {
                    return Ok(Location::Cycle { j: j + 1, xi: chain.cycle(j + 1).canon(q(-1)) });
                }
                Ok(self.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chip {
    pub at: Location,
    pub mult: i64,
}

/// A divisor given by explicit points, before normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChipList {
    pub chips: Vec<Chip>,
}

impl ChipList {
    pub fn new() -> Self {
        ChipList::default()
    }

    pub fn single(at: Location, mult: i64) -> Self {
        ChipList { chips: vec![Chip { at, mult }] }
    }

    pub fn push(&mut self, at: Location, mult: i64) {
        self.chips.push(Chip { at, mult });
    }

    pub fn with(mut self, at: Location, mult: i64) -> Self {
        self.push(at, mult);
        self
    }

    pub fn degree(&self) -> i64 {
        self.chips.iter().map(|c| c.mult).sum()
    }

    pub fn scaled(&self, factor: i64) -> ChipList {
        ChipList {
            chips: self
                .chips
                .iter()
                .map(|c| Chip { at: c.at.clone(), mult: c.mult * factor })
                .collect(),
        }
    }

    /// Merge coincident points, drop zero multiplicities and sort.
    pub fn simplified(&self, chain: &ChainOfCycles) -> Result<ChipList> {
        let mut acc: BTreeMap<Location, i64> = BTreeMap::new();
        for c in &self.chips {
            *acc.entry(c.at.canonical(chain)?).or_default() += c.mult;
        }
        Ok(ChipList {
            chips: acc
                .into_iter()
                .filter(|(_, m)| *m != 0)
                .map(|(at, mult)| Chip { at, mult })
                .collect(),
        })
    }

    pub fn is_effective(&self) -> bool {
        self.chips.iter().all(|c| c.mult >= 0)
    }
}

impl Add for ChipList {
    type Output = ChipList;
    fn add(mut self, rhs: ChipList) -> ChipList {
        self.chips.extend(rhs.chips);
        self
    }
}

impl Neg for ChipList {
    type Output = ChipList;
    fn neg(self) -> ChipList {
        self.scaled(-1)
    }
}

impl Sub for ChipList {
    type Output = ChipList;
    fn sub(self, rhs: ChipList) -> ChipList {
        self + (-rhs)
    }
}

/// A divisor class in normal form `(d−g)·w_g + Σ_j ⟨ξ_j⟩_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divisor {
    pub d: i64,
    #[serde(with = "crate::rational::serde_qvec")]
    pub xi: Vec<Q>,
}

impl Divisor {
    pub fn new(chain: &ChainOfCycles, d: i64, xi: Vec<Q>) -> Result<Self> {
        if xi.len() != chain.g() {
            return Err(Error::ChainMismatch(format!(
                "{} coordinates for a chain of genus {}",
                xi.len(),
                chain.g()
            )));
        }
        let xi = xi
            .into_iter()
            .enumerate()
            .map(|(i, x)| chain.cycles[i].canon(x))
            .collect();
        Ok(Divisor { d, xi })
    }

    pub fn to_chips(&self) -> ChipList {
        let g = self.xi.len();
        let mut out = ChipList::new();
        for (i, x) in self.xi.iter().enumerate() {
            out.push(Location::at(i + 1, *x), 1);
        }
        if self.d != g as i64 {
            out.push(Location::w(g), self.d - g as i64);
        }
        out
    }

    /// ξ_j − (j−1), the linear coordinate of the class.
    pub fn xi_tilde(&self, chain: &ChainOfCycles, j: usize) -> Q {
        chain.cycle(j).canon(self.xi[j - 1] - q(j as i128 - 1))
    }

    pub fn plus(&self, chain: &ChainOfCycles, other: &ChipList) -> Result<Divisor> {
        normal_form(chain, &(self.to_chips() + other.clone()))
    }

    pub fn minus(&self, chain: &ChainOfCycles, other: &ChipList) -> Result<Divisor> {
        normal_form(chain, &(self.to_chips() - other.clone()))
    }
}

/// Left-to-right sweep producing the unique normal form of a chip list.
pub fn normal_form(chain: &ChainOfCycles, chips: &ChipList) -> Result<Divisor> {
    let g = chain.g();
    let mut sum = vec![q(0); g];
    let mut count = vec![0i64; g];
    let mut bridge_in = vec![0i64; g + 1];
    for c in &chips.chips {
        match c.at.canonical(chain)? {
            Location::Cycle { j, xi } => {
                sum[j - 1] += xi * q(c.mult as i128);
                count[j - 1] += c.mult;
            }
            Location::Bridge { j, .. } => bridge_in[j + 1] += c.mult,
        }
    }
    let mut entering = 0i64;
    let mut xi = Vec::with_capacity(g);
    for j in 1..=g {
        entering += bridge_in[j];
        xi.push(chain.cycle(j).canon(sum[j - 1] - q(entering as i128)));
        entering += count[j - 1] - 1;
    }
    let d = chips.degree();
    if entering != d - g as i64 {
        return Err(Error::internal(format!(
            "sweep passed {entering} chips past the last cycle, expected {}",
            d - g as i64
        )));
    }
    Ok(Divisor { d, xi })
}

/// (Σ resident coordinates on γ_j) − (multiplicity strictly left of γ_j), reduced mod μ_j.
pub fn xi_tilde(chain: &ChainOfCycles, chips: &ChipList, j: usize) -> Result<Q> {
    chain.check_index(j)?;
    let mut resident = q(0);
    let mut left = 0i64;
    for c in &chips.chips {
        match c.at.canonical(chain)? {
            Location::Cycle { j: i, xi } if i == j => resident += xi * q(c.mult as i128),
            Location::Cycle { j: i, .. } if i < j => left += c.mult,
            Location::Bridge { j: i, .. } if i < j => left += c.mult,
            _ => {}
        }
    }
    Ok(chain.cycle(j).canon(resident - q(left as i128)))
}

pub fn is_equivalent(chain: &ChainOfCycles, a: &ChipList, b: &ChipList) -> Result<bool> {
    Ok(normal_form(chain, a)? == normal_form(chain, b)?)
}

/// Σ_{j≥2} v_j + Σ_{j<g} w_j: one chip at every trivalent vertex.
pub fn canonical_divisor(chain: &ChainOfCycles) -> ChipList {
    let g = chain.g();
    let mut out = ChipList::new();
    for j in 2..=g {
        out.push(Location::v(j), 1);
    }
    for j in 1..g {
        out.push(Location::w(j), 1);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GonalityReps {
    /// k·v_k.
    pub e: ChipList,
    /// w_g + Σ_{j=g−k+2}^{g} ⟨j−(g+2)⟩_j.
    pub e0: ChipList,
    /// v_1 + Σ_{j=1}^{k−1} ⟨j⟩_j.
    pub e1: ChipList,
}

pub fn gonality_representatives(chain: &ChainOfCycles, k: u32) -> Result<GonalityReps> {
    let g = chain.g();
    if k < 2 || chain.profile() != k_gonal_profile(g, k) {
        return Err(Error::ChainMismatch(format!(
            "chain profile {:?} is not the {k}-gonal profile",
            chain.profile()
        )));
    }
    let k = k as usize;
    if k > g {
        return Err(Error::invalid(format!("gonality {k} exceeds genus {g}")));
    }
    let e = ChipList::single(Location::v(k), k as i64);
    let mut e1 = ChipList::single(Location::v(1), 1);
    for j in 1..k {
        e1.push(Location::at(j, q(j as i128)), 1);
    }
    let mut e0 = ChipList::single(Location::w(g), 1);
    for j in (g + 2 - k)..=g {
        e0.push(Location::at(j, q(j as i128 - (g as i128 + 2))), 1);
    }
    Ok(GonalityReps { e, e0, e1 })
}
