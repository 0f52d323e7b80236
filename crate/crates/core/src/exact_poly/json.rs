use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Exps, MPoly};
use super::rational::{format_rational, parse_rational};
use super::vars::{Var, VarTable};

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Exps,
}

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    vars: Vec<Var>,
    terms: Vec<TermJson>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = MPolyJson {
            vars: self.vars().vars().to_vec(),
            terms: self
                .graded_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    coeff: format_rational(c),
                    exps: e.clone(),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MPolyJson::deserialize(deserializer)?;
        let vars = VarTable::new(repr.vars).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            if num_traits::Zero::is_zero(&c) {
                return Err(D::Error::custom("zero coefficient in canonical form"));
            }
            terms.push((t.exps, c));
        }
        let n = terms.len();
        let p = MPoly::from_terms(&vars, terms).map_err(D::Error::custom)?;
        if p.num_terms() != n {
            return Err(D::Error::custom(
                "repeated exponent vector in canonical form",
            ));
        }
        Ok(p)
    }
}
