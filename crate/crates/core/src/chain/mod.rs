//! The metric chain of cycles, divisors on it and their normal forms.
//!
//! Cycle `j` (1-based) has a top arc of length `l` from `w_j` to `v_j` and a
//! bottom arc of length `m` from `v_j` back to `w_j`. The point `⟨ξ⟩_j` sits
//! `ξ·m` units counterclockwise from `w_j`, so `w_j = ⟨0⟩_j` and `v_j = ⟨−1⟩_j`.
//! Bridge `j` joins `w_j` to `v_{j+1}`.

mod divisor;
pub mod io;
pub mod plf;

pub use divisor::{
    canonical_divisor, gonality_representatives, is_equivalent, normal_form, xi_tilde, Chip,
    ChipList, Divisor, GonalityReps, Location,
};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{q, reduce_mod, Q};

/// Minimal positive μ with μ·m an integer multiple of ℓ+m.
pub fn torsion_order(l: Q, m: Q) -> Result<u32> {
    if !l.is_positive() || !m.is_positive() {
        return Err(Error::invalid("cycle lengths must be positive"));
    }
    let ratio = m / (l + m);
    u32::try_from(*ratio.denom()).map_err(|_| Error::invalid("torsion order out of range"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub l: Q,
    pub m: Q,
    /// 0 means generic: no two distinct coordinates name the same point.
    pub mu: u32,
}

impl Cycle {
    pub fn generic() -> Self {
        Cycle { l: q(1), m: q(1), mu: 0 }
    }

    pub fn torsion(mu: u32) -> Self {
        if mu == 1 {
            log::warn!("torsion order 1 makes every residue condition vacuous");
            return Cycle { l: q(1), m: q(1), mu };
        }
        Cycle { l: q(mu as i128 - 1), m: q(1), mu }
    }

    pub fn circumference(&self) -> Q {
        self.l + self.m
    }

    /// Canonical coordinate: reduced into `[0, μ)` on torsion cycles, untouched otherwise.
    pub fn canon(&self, xi: Q) -> Q {
        reduce_mod(xi, self.mu)
    }

    /// Counterclockwise arc position in `[0, ℓ+m)` of `⟨ξ⟩`.
    ///
    /// On a generic cycle the stored lengths are only a realization, and it is
    /// faithful on the window `[−C/2m, C/2m)`; coordinates outside it are rejected.
    pub fn arc_of(&self, xi: Q) -> Result<Q> {
        let c = self.circumference();
        if self.mu == 0 {
            let half = c / (q(2) * self.m);
            if xi < -half || xi >= half {
                return Err(Error::invalid(format!(
                    "coordinate {xi} outside the realized window of a generic cycle"
                )));
            }
        }
        let u = xi * self.m;
        let k = (u / c).floor();
        Ok(u - c * k)
    }

    /// Inverse of [`Cycle::arc_of`].
    pub fn xi_of_arc(&self, u: Q) -> Q {
        let c = self.circumference();
        let xi = u / self.m;
        if self.mu == 0 {
            let width = c / self.m;
            if xi >= width / q(2) {
                return xi - width;
            }
            xi
        } else {
            self.canon(xi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainOfCycles {
    pub k: Option<u32>,
    pub cycles: Vec<Cycle>,
    pub bridges: Vec<Q>,
}

impl ChainOfCycles {
    pub fn from_profile(profile: &[u32]) -> Result<Self> {
        if profile.is_empty() {
            return Err(Error::invalid("a chain needs at least one cycle"));
        }
        let cycles = profile
            .iter()
            .map(|&mu| if mu == 0 { Cycle::generic() } else { Cycle::torsion(mu) })
            .collect();
        Ok(ChainOfCycles { k: None, cycles, bridges: vec![q(1); profile.len() - 1] })
    }

    /// Build from explicit lengths; `generic[j]` marks cycles with irrational length ratio.
    pub fn from_lengths(lm: &[(Q, Q)], generic: &[bool], bridges: Vec<Q>) -> Result<Self> {
        if lm.is_empty() || lm.len() != generic.len() || bridges.len() + 1 != lm.len() {
            return Err(Error::invalid("length lists do not describe a chain"));
        }
        if bridges.iter().any(|b| !b.is_positive()) {
            return Err(Error::invalid("bridge lengths must be positive"));
        }
        let mut cycles = Vec::with_capacity(lm.len());
        for (&(l, m), &gen) in lm.iter().zip(generic) {
            let mu = if gen { 0 } else { torsion_order(l, m)? };
            if gen && (!l.is_positive() || !m.is_positive()) {
                return Err(Error::invalid("cycle lengths must be positive"));
            }
            cycles.push(if gen { Cycle { l, m, mu: 0 } } else { Cycle::torsion(mu) });
        }
        Ok(ChainOfCycles { k: None, cycles, bridges })
    }

    pub fn g(&self) -> usize {
        self.cycles.len()
    }

    /// Cycle `j`, 1-based.
    pub fn cycle(&self, j: usize) -> &Cycle {
        &self.cycles[j - 1]
    }

    pub fn mu(&self, j: usize) -> u32 {
        self.cycles[j - 1].mu
    }

    /// Length of bridge `j` (from `w_j` to `v_{j+1}`), 1-based.
    pub fn bridge(&self, j: usize) -> Q {
        self.bridges[j - 1]
    }

    pub fn profile(&self) -> Vec<u32> {
        self.cycles.iter().map(|c| c.mu).collect()
    }

    pub fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.g() {
            return Err(Error::invalid(format!("cycle index {j} outside 1..={}", self.g())));
        }
        Ok(())
    }

    pub fn same_as(&self, other: &ChainOfCycles) -> Result<()> {
        if self.profile() != other.profile() {
            return Err(Error::ChainMismatch(format!(
                "torsion profiles {:?} and {:?} differ",
                self.profile(),
                other.profile()
            )));
        }
        Ok(())
    }

    /// Copy whose generic cycles are long enough to place every coordinate
    /// with |ξ| ≤ `span` faithfully. Torsion cycles and bridges are unchanged.
    pub fn realized_for(&self, span: Q) -> ChainOfCycles {
        let mut out = self.clone();
        let need = q(2) * (span.abs().ceil() + q(2));
        for c in out.cycles.iter_mut().filter(|c| c.mu == 0) {
            if c.circumference() / c.m <= need {
                c.l = need * c.m;
            }
        }
        out
    }

    pub fn set_bridges(&mut self, bridges: Vec<Q>) -> Result<()> {
        if bridges.len() != self.bridges.len() || bridges.iter().any(|b| !b.is_positive()) {
            return Err(Error::invalid("bridge list must have g-1 positive entries"));
        }
        self.bridges = bridges;
        Ok(())
    }
}

/// Torsion profile of the k-gonal chain: k on cycles k..=g−k+1, generic elsewhere.
pub fn k_gonal_profile(g: usize, k: u32) -> Vec<u32> {
    let k_us = k as usize;
    (1..=g)
        .map(|i| if i < k_us || i + k_us >= g + 2 { 0 } else { k })
        .collect()
}

pub fn k_gonal_chain(g: usize, k: u32) -> Result<ChainOfCycles> {
    if k < 2 {
        return Err(Error::invalid(format!("gonality must be >= 2, got {k}")));
    }
    if g < 1 {
        return Err(Error::invalid("genus must be >= 1"));
    }
    if g + 2 < 2 * k as usize {
        log::info!("g < 2k-2: the torsion band is empty and the chain is generic");
    }
    let mut chain = ChainOfCycles::from_profile(&k_gonal_profile(g, k))?;
    chain.k = Some(k);
    Ok(chain)
}
