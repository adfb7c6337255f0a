//! Stable JSON form of elements:
//! `{"terms":[{"factors":[{"ops":[..],"gen":{"space":..,"index":..},"exp":k}]}]}`.
//! Terms are listed in printing order, factors as printed.

use serde::{Deserialize, Serialize};

use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::space::{Generator, Space};
use crate::word::{AdmissibleGen, DLWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenJson {
    pub space: String,
    pub index: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub ops: Vec<u32>,
    pub gen: GenJson,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

impl From<&Element> for ElementJson {
    fn from(e: &Element) -> ElementJson {
        let terms = e
            .terms()
            .rev()
            .map(|m| TermJson {
                factors: m
                    .factors()
                    .iter()
                    .rev()
                    .map(|(g, exp)| FactorJson {
                        ops: g.ops().to_vec(),
                        gen: GenJson { space: g.gen().space.to_string(), index: g.gen().index },
                        exp: *exp,
                    })
                    .collect(),
            })
            .collect();
        ElementJson { terms }
    }
}

impl TryFrom<&ElementJson> for Element {
    type Error = Error;

    fn try_from(j: &ElementJson) -> Result<Element> {
        let mut out = Element::zero();
        for t in &j.terms {
            let mut m = Monomial::unit();
            for f in &t.factors {
                let space: Space = f.gen.space.parse()?;
                let x: Generator = space.generator(f.gen.index)?;
                let g = AdmissibleGen::new(DLWord::new(f.ops.as_slice(), x)?)?;
                m = m.mul(&Monomial::power(g, f.exp));
            }
            out.toggle(m);
        }
        Ok(out)
    }
}

/// The JSON text of an element, with keys in schema order.
pub fn element_to_json(e: &Element) -> String {
    serde_json::to_string(&ElementJson::from(e)).expect("plain data")
}
