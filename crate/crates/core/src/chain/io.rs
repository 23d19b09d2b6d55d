//! JSON forms of chains, divisors and chip lists.

use serde::{Deserialize, Serialize};

use super::{normal_form, torsion_order, ChainOfCycles, Chip, ChipList, Cycle, Divisor, Location};
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleJson {
    pub l: String,
    pub m: String,
    pub mu: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainJson {
    pub g: usize,
    #[serde(default)]
    pub k: Option<u32>,
    pub cycles: Vec<CycleJson>,
    pub bridges: Vec<String>,
}

impl From<&ChainOfCycles> for ChainJson {
    fn from(c: &ChainOfCycles) -> Self {
        ChainJson {
            g: c.g(),
            k: c.k,
            cycles: c
                .cycles
                .iter()
                .map(|cy| CycleJson { l: format_q(&cy.l), m: format_q(&cy.m), mu: cy.mu })
                .collect(),
            bridges: c.bridges.iter().map(format_q).collect(),
        }
    }
}

impl TryFrom<ChainJson> for ChainOfCycles {
    type Error = Error;

    fn try_from(j: ChainJson) -> Result<Self> {
        if j.cycles.len() != j.g || j.g == 0 {
            return Err(Error::invalid(format!("g = {} but {} cycles given", j.g, j.cycles.len())));
        }
        if j.bridges.len() + 1 != j.g {
            return Err(Error::invalid(format!("expected {} bridges, got {}", j.g - 1, j.bridges.len())));
        }
        let mut cycles = Vec::with_capacity(j.g);
        for (i, cj) in j.cycles.iter().enumerate() {
            let (l, m) = (parse_q(&cj.l)?, parse_q(&cj.m)?);
            let cycle = if cj.mu == 0 {
                if l <= Q::from_integer(0) || m <= Q::from_integer(0) {
                    return Err(Error::invalid(format!("cycle {}: lengths must be positive", i + 1)));
                }
                Cycle { l, m, mu: 0 }
            } else {
                let norm = Cycle::torsion(cj.mu);
                if cj.mu > 1 && (l, m) != (norm.l, norm.m) {
                    let mu = torsion_order(l, m)?;
                    if mu != cj.mu {
                        return Err(Error::invalid(format!(
                            "cycle {}: lengths ({}, {}) have torsion order {mu}, not {}",
                            i + 1,
                            cj.l,
                            cj.m,
                            cj.mu
                        )));
                    }
                    log::warn!("cycle {}: lengths rescaled to l = mu-1, m = 1", i + 1);
                }
                norm
            };
            cycles.push(cycle);
        }
        let bridges = j.bridges.iter().map(|b| parse_q(b)).collect::<Result<Vec<_>>>()?;
        let mut chain = ChainOfCycles { k: j.k, cycles, bridges: vec![Q::from_integer(1); j.g - 1] };
        chain.set_bridges(bridges)?;
        Ok(chain)
    }
}

pub fn chain_to_json(c: &ChainOfCycles) -> serde_json::Value {
    serde_json::to_value(ChainJson::from(c)).expect("chain serializes")
}

pub fn chain_from_json(v: serde_json::Value) -> Result<ChainOfCycles> {
    let j: ChainJson = serde_json::from_value(v)?;
    j.try_into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocationJson {
    Cycle { cycle: usize, xi: String },
    Vertex { vertex: String },
    Bridge { bridge: usize, t: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChipJson {
    pub at: LocationJson,
    pub mult: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalJson {
    pub d: i64,
    pub xi: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DivisorJson {
    Normal { normal: NormalJson },
    Chips { chips: Vec<ChipJson> },
}

fn parse_vertex(s: &str) -> Result<Location> {
    let bad = || Error::Parse(format!("vertex must look like v3 or w3, got {s:?}"));
    let (kind, idx) = s.split_at(1.min(s.len()));
    let j: usize = idx.parse().map_err(|_| bad())?;
    match kind {
        "v" => Ok(Location::v(j)),
        "w" => Ok(Location::w(j)),
        _ => Err(bad()),
    }
}

impl LocationJson {
    pub fn to_location(&self) -> Result<Location> {
        match self {
            LocationJson::Cycle { cycle, xi } => Ok(Location::at(*cycle, parse_q(xi)?)),
            LocationJson::Vertex { vertex } => parse_vertex(vertex),
            LocationJson::Bridge { bridge, t } => Ok(Location::Bridge { j: *bridge, t: parse_q(t)? }),
        }
    }

    pub fn from_location(chain: &ChainOfCycles, at: &Location) -> Self {
        match at {
            Location::Cycle { j, xi } => {
                let c = chain.cycle(*j);
                if c.canon(*xi) == c.canon(Q::from_integer(-1)) {
                    LocationJson::Vertex { vertex: format!("v{j}") }
                } else if c.canon(*xi) == Q::from_integer(0) {
                    LocationJson::Vertex { vertex: format!("w{j}") }
                } else {
                    LocationJson::Cycle { cycle: *j, xi: format_q(xi) }
                }
            }
            Location::Bridge { j, t } => LocationJson::Bridge { bridge: *j, t: format_q(t) },
        }
    }
}

pub fn chips_to_json(chain: &ChainOfCycles, chips: &ChipList) -> serde_json::Value {
    let list: Vec<ChipJson> = chips
        .chips
        .iter()
        .map(|c| ChipJson { at: LocationJson::from_location(chain, &c.at), mult: c.mult })
        .collect();
    serde_json::to_value(DivisorJson::Chips { chips: list }).expect("chips serialize")
}

pub fn divisor_to_json(d: &Divisor) -> serde_json::Value {
    serde_json::to_value(DivisorJson::Normal {
        normal: NormalJson { d: d.d, xi: d.xi.iter().map(format_q).collect() },
    })
    .expect("divisor serializes")
}

/// Parsed divisor input: either a normal form or a raw chip list.
pub enum DivisorInput {
    Normal(Divisor),
    Chips(ChipList),
}

impl DivisorInput {
    pub fn parse(chain: &ChainOfCycles, v: serde_json::Value) -> Result<Self> {
        let j: DivisorJson = serde_json::from_value(v)?;
        match j {
            DivisorJson::Normal { normal } => {
                let xi = normal.xi.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
                Ok(DivisorInput::Normal(Divisor::new(chain, normal.d, xi)?))
            }
            DivisorJson::Chips { chips } => {
                let mut out = ChipList::new();
                for c in chips {
                    out.chips.push(Chip { at: c.at.to_location()?, mult: c.mult });
                }
                out.simplified(chain)?;
                Ok(DivisorInput::Chips(out))
            }
        }
    }

    pub fn chips(&self) -> ChipList {
        match self {
            DivisorInput::Normal(d) => d.to_chips(),
            DivisorInput::Chips(c) => c.clone(),
        }
    }

    pub fn normalize(&self, chain: &ChainOfCycles) -> Result<Divisor> {
        match self {
            DivisorInput::Normal(d) => Ok(d.clone()),
            DivisorInput::Chips(c) => normal_form(chain, c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{canonical_divisor, k_gonal_chain};
    use serde_json::json;

    #[test]
    fn chain_json_round_trip() {
        let chain = k_gonal_chain(5, 3).unwrap();
        let v = chain_to_json(&chain);
        assert_eq!(v["cycles"][2], json!({"l": "2", "m": "1", "mu": 3}));
        assert_eq!(chain_from_json(v).unwrap(), chain);
    }

    #[test]
    fn torsion_lengths_are_normalized() {
        let v = json!({"g": 1, "k": null, "cycles": [{"l": "1", "m": "2", "mu": 3}], "bridges": []});
        let chain = chain_from_json(v).unwrap();
        assert_eq!((chain.cycle(1).l, chain.cycle(1).m), (Q::from_integer(2), Q::from_integer(1)));
        let bad = json!({"g": 1, "cycles": [{"l": "1", "m": "1", "mu": 3}], "bridges": []});
        assert!(chain_from_json(bad).is_err());
    }

    #[test]
    fn divisor_inputs() {
        let chain = k_gonal_chain(5, 3).unwrap();
        let v = json!({"chips": [
            {"at": {"vertex": "v1"}, "mult": 1},
            {"at": {"cycle": 1, "xi": "1"}, "mult": 1},
            {"at": {"cycle": 2, "xi": "2"}, "mult": 1},
            {"at": {"bridge": 2, "t": "1/2"}, "mult": 0}
        ]});
        let d = DivisorInput::parse(&chain, v).unwrap().normalize(&chain).unwrap();
        assert_eq!(divisor_to_json(&d), json!({"normal": {"d": 3, "xi": ["0", "1", "2", "0", "1"]}}));
        let back = DivisorInput::parse(&chain, divisor_to_json(&d)).unwrap();
        assert_eq!(back.normalize(&chain).unwrap(), d);
        let k = chips_to_json(&chain, &canonical_divisor(&chain));
        assert_eq!(k["chips"][0]["at"], json!({"vertex": "v2"}));
        assert!(DivisorInput::parse(&chain, json!({"chips": [{"at": {"vertex": "x1"}, "mult": 1}]})).is_err());
    }
}
