use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{SchurMap, SymbolKind};
use crate::error::{Error, Result};

/// The JSON symbol format. Complex numbers are `[re, im]` pairs.
///
/// ```json
/// {"type":"compose",
///  "outer":{"type":"blaschke","zeros":[[0.3,0],[0,-0.5]],"rotation":0},
///  "inner":{"type":"moebius","a":[0.5,0],"rotation":0}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SymbolSpec {
    Polynomial {
        coeffs: Vec<[f64; 2]>,
    },
    Moebius {
        a: [f64; 2],
        #[serde(default)]
        rotation: f64,
    },
    Blaschke {
        zeros: Vec<[f64; 2]>,
        #[serde(default)]
        rotation: f64,
    },
    Compose {
        outer: Box<SymbolSpec>,
        inner: Box<SymbolSpec>,
    },
}

fn complex(pair: &[f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl SymbolSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("symbol spec serializes")
    }

    pub fn build(&self) -> Result<SchurMap> {
        match self {
            SymbolSpec::Polynomial { coeffs } => {
                SchurMap::polynomial(coeffs.iter().map(complex).collect())
            }
            SymbolSpec::Moebius { a, rotation } => SchurMap::moebius(complex(a), *rotation),
            SymbolSpec::Blaschke { zeros, rotation } => {
                SchurMap::blaschke(zeros.iter().map(complex).collect(), *rotation)
            }
            SymbolSpec::Compose { outer, inner } => SchurMap::compose(outer.build()?, inner.build()?),
        }
    }

    pub(super) fn from_map(map: &SchurMap) -> Self {
        match map.kind() {
            SymbolKind::Polynomial(p) => SymbolSpec::Polynomial {
                coeffs: p.coeffs().iter().map(pair).collect(),
            },
            SymbolKind::Moebius { a, rotation } => SymbolSpec::Moebius {
                a: pair(a),
                rotation: *rotation,
            },
            SymbolKind::Blaschke { zeros, rotation } => SymbolSpec::Blaschke {
                zeros: zeros.iter().map(pair).collect(),
                rotation: *rotation,
            },
            SymbolKind::Composition { outer, inner } => SymbolSpec::Compose {
                outer: Box::new(Self::from_map(outer)),
                inner: Box::new(Self::from_map(inner)),
            },
        }
    }
}
