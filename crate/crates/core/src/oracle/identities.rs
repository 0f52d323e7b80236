use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::projective::projective_bundle_ring;
use super::toy_ring::{random_bundle, random_line_class, ToyBundle, ToyElem, ToyRing};
use crate::chern_calc::{
    reduced_chern_formula, sym_power_det_inverse_chern_bounded, twist_universal, DEFAULT_MAX_RANK,
};
use crate::error::{Error, Result};
use crate::exact_poly::{int, Algebra, MPoly};
use crate::universal::UniversalPolys;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityTag {
    TwistInvariance,
    C1Zero,
    PhiRoundTrip,
    C1FZero,
    ProjectiveRelation,
    ProjectiveFreeBasis,
    ProjectiveTwist,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 7] = [
        IdentityTag::TwistInvariance,
        IdentityTag::C1Zero,
        IdentityTag::PhiRoundTrip,
        IdentityTag::C1FZero,
        IdentityTag::ProjectiveRelation,
        IdentityTag::ProjectiveFreeBasis,
        IdentityTag::ProjectiveTwist,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityTag::TwistInvariance => "twist-invariance",
            IdentityTag::C1Zero => "c1-zero",
            IdentityTag::PhiRoundTrip => "phi-roundtrip",
            IdentityTag::C1FZero => "c1F-zero",
            IdentityTag::ProjectiveRelation => "projective-relation",
            IdentityTag::ProjectiveFreeBasis => "projective-free-basis",
            IdentityTag::ProjectiveTwist => "projective-twist",
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub identity: String,
    pub ring: String,
    pub rank: usize,
    pub seed: u64,
    pub status: Status,
    pub witness: Option<MPoly>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The universal polynomials a toy-ring check specializes, for one rank.
/// Kept as plain data so tests can corrupt individual coefficients.
#[derive(Clone, Debug)]
pub struct IdentityKit {
    pub n: usize,
    /// `c̄_1..c̄_n` over `c1..cn` (closed form).
    pub reduced: Vec<MPoly>,
    /// `c_1(E⊗L)..c_n(E⊗L)` over `c1..cn, t`.
    pub twisted: Vec<MPoly>,
    /// `c_1(F)..c_n(F)` over `c1..cn`.
    pub sym_power: Vec<MPoly>,
    /// `φ_2..φ_n` over `u2..un`.
    pub phi: Vec<MPoly>,
}

impl IdentityKit {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_bounded(n, DEFAULT_MAX_RANK)
    }

    pub fn build_bounded(n: usize, max_rank: usize) -> Result<Self> {
        let universal = UniversalPolys::compute_bounded(n, max_rank)?;
        Ok(IdentityKit {
            n,
            reduced: (1..=n)
                .map(|r| reduced_chern_formula(n, r))
                .collect::<Result<_>>()?,
            twisted: twist_universal(n, "t")?,
            sym_power: sym_power_det_inverse_chern_bounded(n, n, max_rank)?,
            phi: universal.phi,
        })
    }

    /// Copy with the coefficient of the `term`-th term (graded order) of
    /// `φ_{i}` raised by one.
    pub fn with_phi_bumped(&self, i: usize, term: usize) -> Self {
        let mut kit = self.clone();
        kit.phi[i - 2] = bump(&self.phi[i - 2], term);
        kit
    }

    /// Copy with one coefficient of the closed form for `c̄_r` raised by one.
    pub fn with_reduced_bumped(&self, r: usize, term: usize) -> Self {
        let mut kit = self.clone();
        kit.reduced[r - 1] = bump(&self.reduced[r - 1], term);
        kit
    }
}

fn bump(p: &MPoly, term: usize) -> MPoly {
    let target = p.graded_terms()[term].0.clone();
    p.map_coeffs(|e, c| if *e == target { c + int(1) } else { c.clone() })
}

/// A random rank-`n` bundle and line class over a toy ring.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Arc<ToyRing>,
    pub bundle: ToyBundle,
    pub line: ToyElem,
    pub seed: u64,
}

impl Instance {
    pub fn random(ring: &Arc<ToyRing>, n: usize, seed: u64) -> Result<Self> {
        Ok(Instance {
            ring: ring.clone(),
            bundle: random_bundle(ring, n, seed)?,
            line: random_line_class(ring, seed),
            seed,
        })
    }
}

fn eval_chern(p: &MPoly, bundle: &ToyBundle) -> ToyElem {
    p.eval(bundle.classes(), &bundle.ring().one())
}

fn eval_twisted(p: &MPoly, bundle: &ToyBundle, line: &ToyElem) -> ToyElem {
    let mut values = bundle.classes().to_vec();
    values.push(line.clone());
    p.eval(&values, &bundle.ring().one())
}

/// Lowest-degree nonzero graded piece of `diff`.
fn first_component(diff: &MPoly) -> Option<MPoly> {
    diff.graded_components().into_iter().next().map(|(_, p)| p)
}

/// Compares pairs of ring elements; the witness is the first differing
/// graded component of the first unequal pair.
fn compare_all(pairs: impl IntoIterator<Item = (ToyElem, ToyElem)>) -> Option<MPoly> {
    pairs
        .into_iter()
        .find_map(|(lhs, rhs)| first_component(lhs.sub(&rhs).poly()))
}

/// Runs one identity on one instance.
pub fn check_identity(tag: IdentityTag, kit: &IdentityKit, inst: &Instance) -> Result<CheckReport> {
    let n = kit.n;
    if inst.bundle.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: inst.bundle.rank(),
        });
    }
    let bundle = &inst.bundle;
    let witness = match tag {
        IdentityTag::TwistInvariance => {
            let twisted = ToyBundle::new(
                kit.twisted
                    .iter()
                    .map(|p| eval_twisted(p, bundle, &inst.line))
                    .collect(),
            )?;
            compare_all(
                kit.reduced
                    .iter()
                    .map(|r| (eval_chern(r, &twisted), eval_chern(r, bundle))),
            )
        }
        IdentityTag::C1Zero => {
            let special = bundle.with_c1_zero();
            compare_all(
                kit.reduced
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, r)| (eval_chern(r, &special), special.class(k + 1))),
            )
        }
        IdentityTag::PhiRoundTrip => {
            let pushforward: Vec<ToyElem> = kit.sym_power[1..]
                .iter()
                .map(|p| eval_chern(p, bundle))
                .collect();
            let one = inst.ring.one();
            let lhs = crate::universal::brauer_reduced(&kit.phi, &pushforward, &one)?;
            compare_all(
                lhs.into_iter()
                    .zip(&kit.reduced[1..])
                    .map(|(l, r)| (l, eval_chern(r, bundle))),
            )
        }
        IdentityTag::C1FZero => {
            compare_all([(eval_chern(&kit.sym_power[0], bundle), inst.ring.zero())])
        }
        IdentityTag::ProjectiveRelation => {
            let pb = projective_bundle_ring(bundle);
            let residue = pb.relation_residue();
            first_component(&residue.to_mpoly())
        }
        IdentityTag::ProjectiveFreeBasis => {
            let pb = projective_bundle_ring(bundle);
            let bad = (0..=pb.max_degree() + 1).find(|&d| pb.spanned_dim(d) != pb.free_dim(d));
            // witness: ξ^d marks the first degree where the dimensions disagree
            bad.map(|d| {
                let mut exps = vec![0; pb.vars().len()];
                *exps.last_mut().unwrap() = d;
                MPoly::monomial(pb.vars(), exps, int(1))
            })
        }
        IdentityTag::ProjectiveTwist => {
            // Σ c_i(E⊗L) (ξ − t)^{n−i} must vanish in the ring of ℙ(E)
            let pb = projective_bundle_ring(bundle);
            let eta = pb.xi().sub(&pb.from_base(&inst.line));
            let mut acc = eta.pow(n as u32);
            for (k, p) in kit.twisted.iter().enumerate() {
                let c = pb.from_base(&eval_twisted(p, bundle, &inst.line));
                acc = acc.add(&c.mul(&eta.pow((n - k - 1) as u32)));
            }
            first_component(&acc.to_mpoly())
        }
    };
    Ok(CheckReport {
        identity: tag.to_string(),
        ring: inst.ring.id().to_string(),
        rank: n,
        seed: inst.seed,
        status: if witness.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::toy_ring::standard_rings;

    fn p2() -> Arc<ToyRing> {
        standard_rings()
            .into_iter()
            .find(|r| r.id() == "P2-even")
            .unwrap()
    }

    fn rich() -> Arc<ToyRing> {
        standard_rings()
            .into_iter()
            .find(|r| r.id() == "free-trunc6")
            .unwrap()
    }

    #[test]
    fn tags_parse() {
        for tag in IdentityTag::ALL {
            assert_eq!(tag.as_str().parse::<IdentityTag>().unwrap(), tag);
        }
        assert!(matches!(
            "nope".parse::<IdentityTag>(),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn twist_invariance_rank_two() {
        let kit = IdentityKit::build(2).unwrap();
        for seed in 0..5 {
            let report = check_identity(
                IdentityTag::TwistInvariance,
                &kit,
                &Instance::random(&p2(), 2, seed).unwrap(),
            )
            .unwrap();
            assert!(report.passed());
            let report = check_identity(
                IdentityTag::TwistInvariance,
                &kit,
                &Instance::random(&rich(), 2, seed).unwrap(),
            )
            .unwrap();
            assert!(report.passed());
        }
    }

    #[test]
    fn phi_round_trip_rank_three() {
        let kit = IdentityKit::build(3).unwrap();
        for ring in standard_rings() {
            let report = check_identity(
                IdentityTag::PhiRoundTrip,
                &kit,
                &Instance::random(&ring, 3, 5).unwrap(),
            )
            .unwrap();
            assert!(report.passed(), "{}", ring.id());
        }
    }

    #[test]
    fn corrupted_phi_is_caught() {
        let kit = IdentityKit::build(3).unwrap().with_phi_bumped(2, 0);
        let report = check_identity(
            IdentityTag::PhiRoundTrip,
            &kit,
            &Instance::random(&rich(), 3, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(report.status, Status::Fail);
        let witness = report.witness.unwrap();
        assert!(witness.is_homogeneous());
        assert!(!witness.is_zero());
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let kit = IdentityKit::build(2).unwrap();
        let inst = Instance::random(&rich(), 3, 0).unwrap();
        assert!(check_identity(IdentityTag::C1Zero, &kit, &inst).is_err());
    }

    #[test]
    fn report_json_shape() {
        let kit = IdentityKit::build(2).unwrap();
        let report = check_identity(
            IdentityTag::C1FZero,
            &kit,
            &Instance::random(&p2(), 2, 9).unwrap(),
        )
        .unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert_eq!(
            text,
            r#"{"identity":"c1F-zero","ring":"P2-even","rank":2,"seed":9,"status":"pass","witness":null}"#
        );
    }
}
