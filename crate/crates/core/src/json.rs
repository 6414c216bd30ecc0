//! JSON forms of Cartan data, root systems, monoid elements, quivers and
//! ring elements.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::repcalc::{Quiver, RepError};
use crate::rewrite::MonoidElem;
use crate::ring::RingElem;
use crate::roots::{CartanDatum, MultFn, RootError, RootSystem};
use crate::Q;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("bad root key {0:?}")]
    BadRootKey(String),
    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i64>),
    #[error("stated weight {stated:?} differs from the weight {actual:?} of the normal form")]
    WeightMismatch { stated: Vec<i64>, actual: Vec<i64> },
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
}

pub type Result<T> = std::result::Result<T, JsonError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanJson {
    pub order: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

impl CartanJson {
    pub fn from_datum(datum: &CartanDatum) -> Self {
        CartanJson {
            order: datum.labels().to_vec(),
            matrix: datum.matrix().to_vec(),
        }
    }

    pub fn into_datum(self) -> Result<CartanDatum> {
        Ok(CartanDatum::new(self.matrix, self.order)?)
    }
}

pub fn parse_cartan(text: &str) -> Result<CartanDatum> {
    serde_json::from_str::<CartanJson>(text)?.into_datum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub roots: Vec<Vec<i64>>,
    pub euler: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
}

pub fn root_system_json(system: &RootSystem) -> RootSystemJson {
    RootSystemJson {
        roots: system.roots().to_vec(),
        euler: system.euler_matrix().to_vec(),
        symmetrizers: system.datum().symmetrizers().to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidElemJson {
    pub nf: BTreeMap<String, u64>,
    pub weight: Vec<i64>,
}

fn root_key(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn multfn_json(system: &RootSystem, nf: &MultFn) -> MonoidElemJson {
    MonoidElemJson {
        nf: nf.iter().map(|(k, m)| (root_key(system.root(k)), m)).collect(),
        weight: system.weight(nf),
    }
}

pub fn monoid_elem_json(elem: &MonoidElem) -> MonoidElemJson {
    multfn_json(elem.system(), elem.nf())
}

pub fn monoid_elem_from_json(system: &Arc<RootSystem>, j: &MonoidElemJson) -> Result<MonoidElem> {
    let mut nf = MultFn::new();
    for (key, &m) in &j.nf {
        let v: Vec<i64> = key
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| JsonError::BadRootKey(key.clone())))
            .collect::<Result<_>>()?;
        let k = system.root_index(&v).ok_or(JsonError::NotARoot(v))?;
        nf.add(k, m);
    }
    let actual = system.weight(&nf);
    if actual != j.weight {
        return Err(JsonError::WeightMismatch {
            stated: j.weight.clone(),
            actual,
        });
    }
    Ok(MonoidElem::from_nf(system.clone(), nf))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    #[serde(default)]
    pub gamma: BTreeMap<String, String>,
}

pub fn quiver_json(q: &Quiver) -> QuiverJson {
    let v = q.vertices();
    QuiverJson {
        vertices: v.to_vec(),
        arrows: q.arrows().iter().map(|&(s, t)| (v[s].clone(), v[t].clone())).collect(),
        gamma: q
            .gamma()
            .iter()
            .enumerate()
            .map(|(k, &g)| (v[k].clone(), v[g].clone()))
            .collect(),
    }
}

pub fn quiver_from_json(j: &QuiverJson) -> Result<Quiver> {
    let gamma: HashMap<String, String> = j.gamma.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
    Ok(Quiver::from_labels(j.vertices.clone(), &j.arrows, &gamma)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTermJson {
    pub coeff: String,
    pub elem: MonoidElemJson,
}

pub fn ring_elem_json(x: &RingElem<Q>) -> Vec<RingTermJson> {
    x.terms()
        .map(|(e, c)| RingTermJson {
            coeff: c.to_string(),
            elem: monoid_elem_json(&e),
        })
        .collect()
}

pub fn ring_elem_from_json(system: &Arc<RootSystem>, terms: &[RingTermJson]) -> Result<RingElem<Q>> {
    let mut out = RingElem::zero(system.clone());
    for t in terms {
        let c: Q = t
            .coeff
            .parse()
            .map_err(|_| JsonError::BadCoefficient(t.coeff.clone()))?;
        let e = monoid_elem_from_json(system, &t.elem)?;
        out = out.add(&RingElem::from_elem(&e, c)).expect("same system");
    }
    Ok(out)
}
