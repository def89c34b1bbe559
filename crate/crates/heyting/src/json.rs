//! JSON interchange for algebras, topologies and exact rationals.

use std::fs;
use std::path::Path;

use heyting_core::topology::FiniteTopology;
use heyting_core::{HeytingAlgebra, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `{"size": n, "leq": [[0, 1, …], …]}`, row `a` column `b` set iff
/// `a ≤ b`. A flat row-major list of `n²` entries is accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub size: usize,
    pub leq: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Matrix {
    Rows(Vec<Vec<u8>>),
    Flat(Vec<u8>),
}

impl AlgebraJson {
    pub fn of(h: &HeytingAlgebra) -> Self {
        let rows = h
            .to_leq_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(u8::from).collect())
            .collect();
        AlgebraJson {
            size: h.size(),
            leq: Matrix::Rows(rows),
        }
    }

    pub fn to_algebra(&self) -> Result<HeytingAlgebra> {
        let n = self.size;
        let rows: Vec<Vec<u8>> = match &self.leq {
            Matrix::Rows(rows) => rows.clone(),
            Matrix::Flat(flat) if flat.len() == n * n => flat.chunks(n.max(1)).map(<[u8]>::to_vec).collect(),
            Matrix::Flat(flat) => {
                return Err(Error::Format(format!("flat leq has {} entries, expected {}", flat.len(), n * n)))
            }
        };
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Format(format!("leq must be a {n}×{n} matrix")));
        }
        let mut matrix = Vec::with_capacity(n);
        for row in rows {
            let row: Result<Vec<bool>> = row
                .into_iter()
                .map(|v| match v {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Error::Format(format!("leq entry {other} is not 0 or 1"))),
                })
                .collect();
            matrix.push(row?);
        }
        Ok(HeytingAlgebra::from_leq(&matrix)?)
    }
}

/// `{"points": n, "opens": [bitmask, …]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyJson {
    pub points: usize,
    pub opens: Vec<u32>,
}

impl TopologyJson {
    pub fn of(t: &FiniteTopology) -> Self {
        TopologyJson {
            points: t.points(),
            opens: t.opens().to_vec(),
        }
    }

    pub fn to_topology(&self) -> Result<FiniteTopology> {
        Ok(FiniteTopology::new(self.points, self.opens.iter().copied())?)
    }
}

/// `{"num": "2", "den": "3"}`, in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

pub fn rational(r: &Rational) -> serde_json::Value {
    serde_json::to_value(RationalJson::from(r)).expect("plain struct serializes")
}

pub fn read_algebra(path: &Path) -> Result<HeytingAlgebra> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(path.display().to_string(), e.to_string()))?;
    let parsed: AlgebraJson = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    parsed.to_algebra()
}

pub fn read_topology(path: &Path) -> Result<FiniteTopology> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(path.display().to_string(), e.to_string()))?;
    let parsed: TopologyJson = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    parsed.to_topology()
}

#[cfg(test)]
mod tests {
    use super::*;
    use heyting_core::construct::{boolean_algebra, chain};

    #[test]
    fn algebra_round_trip() {
        let h = boolean_algebra(2).unwrap();
        let j = AlgebraJson::of(&h);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"size":4,"leq":[[1,1,1,1],[0,1,0,1],[0,0,1,1],[0,0,0,1]]}"#);
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_algebra().unwrap(), h);
    }

    #[test]
    fn flat_matrix() {
        let j: AlgebraJson = serde_json::from_str(r#"{"size":3,"leq":[1,1,1,0,1,1,0,0,1]}"#).unwrap();
        assert_eq!(j.to_algebra().unwrap(), chain(3).unwrap());
        let bad: AlgebraJson = serde_json::from_str(r#"{"size":3,"leq":[1,1,1,0,1]}"#).unwrap();
        assert!(matches!(bad.to_algebra(), Err(Error::Format(_))));
    }

    #[test]
    fn non_lattice_is_rejected() {
        let j: AlgebraJson = serde_json::from_str(r#"{"size":2,"leq":[[1,0],[0,1]]}"#).unwrap();
        assert!(matches!(j.to_algebra(), Err(Error::Algebra(_))));
    }

    #[test]
    fn rationals() {
        let r = Rational::new(4u32.into(), 6u32.into());
        assert_eq!(rational(&r), serde_json::json!({"num": "2", "den": "3"}));
    }
}
