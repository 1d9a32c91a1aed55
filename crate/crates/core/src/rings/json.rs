//! JSON form of ring elements. Coefficients are decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::fgl::{FglKind, FglTruncation};
use super::poly::{IntPolynomial, LaurentPolynomial};
use super::{GradedLaurent, RingElement, RingError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Exponents of `w_j` (H), `e^{omega_j}` (K) or `x_j` (MU).
    pub exponents: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_exponents: Option<Vec<u32>>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElementJson {
    pub theory: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<FglKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    pub text: String,
    pub terms: Vec<TermJson>,
}

impl RingElement {
    pub fn to_json(&self) -> RingElementJson {
        let text = self.render();
        match self {
            RingElement::H(p) => RingElementJson {
                theory: "H".into(),
                rank: p.nvars(),
                degree: None,
                truncation: None,
                law: None,
                generators: None,
                text,
                terms: p
                    .sorted_terms()
                    .into_iter()
                    .map(|(e, c)| TermJson {
                        exponents: e.iter().map(|&x| x as i64).collect(),
                        generator_exponents: None,
                        coefficient: c.to_string(),
                    })
                    .collect(),
            },
            RingElement::K(k) => RingElementJson {
                theory: "K".into(),
                rank: k.poly.nvars(),
                degree: Some(k.degree),
                truncation: None,
                law: None,
                generators: None,
                text,
                terms: k
                    .poly
                    .sorted_terms()
                    .into_iter()
                    .map(|(e, c)| TermJson {
                        exponents: e.clone(),
                        generator_exponents: None,
                        coefficient: c.to_string(),
                    })
                    .collect(),
            },
            RingElement::MU(m) => {
                let rank = m.rank();
                RingElementJson {
                    theory: "MU".into(),
                    rank,
                    degree: None,
                    truncation: Some(m.truncation()),
                    law: Some(m.kind()),
                    generators: Some(m.law().generator_names()),
                    text,
                    terms: m
                        .poly()
                        .sorted_terms()
                        .into_iter()
                        .map(|(e, c)| TermJson {
                            exponents: e[..rank].iter().map(|&x| x as i64).collect(),
                            generator_exponents: Some(e[rank..].to_vec()),
                            coefficient: c.to_string(),
                        })
                        .collect(),
                }
            }
        }
    }

    pub fn from_json(json: &RingElementJson) -> Result<RingElement, RingError> {
        let coeff = |t: &TermJson| -> Result<BigInt, RingError> {
            t.coefficient
                .parse::<BigInt>()
                .map_err(|_| RingError::Malformed(format!("bad coefficient {}", t.coefficient)))
        };
        let check_len = |t: &TermJson| -> Result<(), RingError> {
            if t.exponents.len() != json.rank {
                return Err(RingError::RankMismatch {
                    expected: json.rank,
                    found: t.exponents.len(),
                });
            }
            Ok(())
        };
        match json.theory.as_str() {
            "H" => {
                let mut p = IntPolynomial::zero(json.rank);
                for t in &json.terms {
                    check_len(t)?;
                    let exps = t
                        .exponents
                        .iter()
                        .map(|&x| u32::try_from(x).map_err(|_| RingError::Malformed("negative exponent".into())))
                        .collect::<Result<Vec<_>, _>>()?;
                    p.add_term(exps, coeff(t)?);
                }
                Ok(RingElement::H(p))
            }
            "K" => {
                let mut p = LaurentPolynomial::zero(json.rank);
                for t in &json.terms {
                    check_len(t)?;
                    p.add_term(t.exponents.clone(), coeff(t)?);
                }
                Ok(RingElement::K(GradedLaurent {
                    poly: p,
                    degree: json.degree.unwrap_or(0),
                }))
            }
            "MU" => {
                let truncation = json
                    .truncation
                    .ok_or_else(|| RingError::Malformed("missing truncation".into()))?;
                let law = FglTruncation::new(json.law.unwrap_or(FglKind::Universal), truncation)?;
                let ngen = law.generators().len();
                let mut p = IntPolynomial::zero(json.rank + ngen);
                for t in &json.terms {
                    check_len(t)?;
                    let mut exps = t
                        .exponents
                        .iter()
                        .map(|&x| u32::try_from(x).map_err(|_| RingError::Malformed("negative exponent".into())))
                        .collect::<Result<Vec<_>, _>>()?;
                    let gens = t.generator_exponents.clone().unwrap_or_else(|| vec![0; ngen]);
                    if gens.len() != ngen {
                        return Err(RingError::Malformed("generator exponent length".into()));
                    }
                    exps.extend(gens);
                    p.add_term(exps, coeff(t)?);
                }
                Ok(RingElement::MU(law.element(json.rank, p)?))
            }
            other => Err(RingError::Malformed(format!("unknown theory {other}"))),
        }
    }
}
