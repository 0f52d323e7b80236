use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_poly::{int, Algebra, Exps, MPoly, Rational, Var, VarTable, Vars};

/// Presentation of a toy ring: generators with degrees, relations given as
/// lists of `(exponents, coefficient)` terms, and an optional global
/// truncation above `top_degree`.
#[derive(Clone, Debug, Default)]
pub struct ToyRingSpec {
    pub id: String,
    pub generators: Vec<(String, u32)>,
    pub relations: Vec<Vec<(Exps, i64)>>,
    pub top_degree: Option<u32>,
}

impl ToyRingSpec {
    pub fn new(id: impl Into<String>) -> Self {
        ToyRingSpec {
            id: id.into(),
            ..Default::default()
        }
    }

    pub fn generator(mut self, name: &str, degree: u32) -> Self {
        self.generators.push((name.to_string(), degree));
        self
    }

    /// `name^power = 0`.
    pub fn power_relation(mut self, name: &str, power: u32) -> Self {
        let i = self
            .generators
            .iter()
            .position(|(g, _)| g == name)
            .expect("declare the generator first");
        let mut exps = vec![0; self.generators.len()];
        exps[i] = power;
        self.relations.push(vec![(exps, 1)]);
        self
    }

    pub fn relation(mut self, terms: Vec<(Exps, i64)>) -> Self {
        self.relations.push(terms);
        self
    }

    pub fn top_degree(mut self, d: u32) -> Self {
        self.top_degree = Some(d);
        self
    }
}

/// `ℚ[generators] / (monomial relations, everything above the top degree)`.
///
/// Normal forms simply drop killed monomials, so reduction is confluent.
#[derive(Debug, PartialEq, Eq)]
pub struct ToyRing {
    id: String,
    gens: Vars,
    relations: Vec<Exps>,
    top_degree: Option<u32>,
    max_degree: u32,
    basis: Vec<Vec<Exps>>,
}

pub fn make_toy_ring(spec: &ToyRingSpec) -> Result<Arc<ToyRing>> {
    let gens = VarTable::new(
        spec.generators
            .iter()
            .map(|(n, d)| Var::new(n.clone(), *d))
            .collect(),
    )?;
    let mut relations = Vec::new();
    for rel in &spec.relations {
        let poly = MPoly::from_terms(&gens, rel.iter().map(|(e, c)| (e.clone(), int(*c))))?;
        if poly.is_zero() {
            return Err(Error::InvalidRing("zero relation".into()));
        }
        if !poly.is_homogeneous() {
            return Err(Error::InvalidRing(format!(
                "inhomogeneous relation {rel:?}"
            )));
        }
        if poly.num_terms() != 1 {
            return Err(Error::InvalidRing(format!(
                "relation {rel:?} is not a single monomial"
            )));
        }
        let (exps, _) = poly.leading_term().unwrap();
        if exps.iter().all(|&e| e == 0) {
            return Err(Error::InvalidRing(
                "constant relation collapses the ring".into(),
            ));
        }
        relations.push(exps.clone());
    }

    let max_degree = match spec.top_degree {
        Some(top) => top,
        None => {
            let mut total = 0;
            for i in 0..gens.len() {
                let power = relations
                    .iter()
                    .filter(|r| r.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
                    .map(|r| r[i])
                    .min()
                    .ok_or_else(|| {
                        Error::InvalidRing(format!(
                            "generator `{}` is not nilpotent and no top degree is set",
                            gens.name(i)
                        ))
                    })?;
                total += (power - 1) * gens.degree(i);
            }
            total
        }
    };

    let mut ring = ToyRing {
        id: spec.id.clone(),
        gens,
        relations,
        top_degree: spec.top_degree,
        max_degree,
        basis: Vec::new(),
    };
    ring.basis = ring.enumerate_basis();
    Ok(Arc::new(ring))
}

impl ToyRing {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn gens(&self) -> &Vars {
        &self.gens
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_killed(&self, exps: &[u32]) -> bool {
        self.top_degree
            .is_some_and(|top| self.gens.weighted_degree(exps) > top)
            || self
                .relations
                .iter()
                .any(|r| r.iter().zip(exps).all(|(a, b)| b >= a))
    }

    pub fn normal_form(&self, p: &MPoly) -> MPoly {
        p.filter_terms(|e| !self.is_killed(e))
    }

    fn enumerate_basis(&self) -> Vec<Vec<Exps>> {
        fn go(ring: &ToyRing, i: usize, prefix: &mut Exps, deg: u32, out: &mut Vec<Vec<Exps>>) {
            if i == ring.gens.len() {
                if !ring.is_killed(prefix) {
                    out[deg as usize].push(prefix.clone());
                }
                return;
            }
            let step = ring.gens.degree(i);
            let mut k = 0;
            while deg + k * step <= ring.max_degree {
                prefix.push(k);
                go(ring, i + 1, prefix, deg + k * step, out);
                prefix.pop();
                k += 1;
            }
        }
        let mut out = vec![Vec::new(); self.max_degree as usize + 1];
        go(self, 0, &mut Vec::new(), 0, &mut out);
        for piece in &mut out {
            piece.sort();
        }
        out
    }

    /// Standard monomials of degree `d`.
    pub fn basis(&self, d: u32) -> &[Exps] {
        self.basis.get(d as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.basis(d as u32).len()
        }
    }

    /// Dimensions of the graded pieces in degrees `0..=max_degree`.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn zero(self: &Arc<Self>) -> ToyElem {
        ToyElem {
            ring: self.clone(),
            poly: MPoly::zero(&self.gens),
        }
    }

    pub fn one(self: &Arc<Self>) -> ToyElem {
        self.elem(MPoly::one(&self.gens))
    }

    pub fn gen(self: &Arc<Self>, i: usize) -> ToyElem {
        self.elem(MPoly::var(&self.gens, i))
    }

    pub fn elem(self: &Arc<Self>, poly: MPoly) -> ToyElem {
        assert_eq!(
            poly.vars(),
            &self.gens,
            "element must live over the ring generators"
        );
        ToyElem {
            ring: self.clone(),
            poly: self.normal_form(&poly),
        }
    }

    /// Random element of degree `d` with small integer coefficients.
    pub fn random_element(self: &Arc<Self>, d: u32, rng: &mut impl Rng) -> ToyElem {
        let terms: Vec<(Exps, Rational)> = self
            .basis(d)
            .iter()
            .map(|e| (e.clone(), int(rng.gen_range(-3..=3))))
            .collect();
        self.elem(MPoly::from_terms(&self.gens, terms).expect("basis exponents fit"))
    }
}

/// Element of a toy ring, always in normal form.
#[derive(Clone, Debug)]
pub struct ToyElem {
    ring: Arc<ToyRing>,
    poly: MPoly,
}

impl ToyElem {
    pub fn ring(&self) -> &Arc<ToyRing> {
        &self.ring
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn sub(&self, rhs: &ToyElem) -> ToyElem {
        self.add(&rhs.scale(&int(-1)))
    }

    pub fn pow(&self, k: u32) -> ToyElem {
        (0..k).fold(self.ring.one(), |acc, _| acc.mul(self))
    }
}

impl PartialEq for ToyElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.poly == other.poly
    }
}

impl Algebra for ToyElem {
    fn add(&self, rhs: &Self) -> Self {
        ToyElem {
            ring: self.ring.clone(),
            poly: &self.poly + &rhs.poly,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let prod = self
            .poly
            .mul_truncated(&rhs.poly, Some(self.ring.max_degree))
            .expect("same ring");
        ToyElem {
            ring: self.ring.clone(),
            poly: self.ring.normal_form(&prod),
        }
    }

    fn scale(&self, c: &Rational) -> Self {
        ToyElem {
            ring: self.ring.clone(),
            poly: self.poly.scale(c),
        }
    }

    fn zero_like(&self) -> Self {
        self.ring.zero()
    }
}

impl fmt::Display for ToyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exact_poly::render(
            &self.poly,
            crate::exact_poly::Style::Text,
        ))
    }
}

/// The characteristic classes of a rank-`n` bundle over a toy ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ToyBundle {
    classes: Vec<ToyElem>,
}

impl ToyBundle {
    pub fn new(classes: Vec<ToyElem>) -> Result<Self> {
        for (k, c) in classes.iter().enumerate() {
            let d = k as u32 + 1;
            if c.poly.degree().is_some_and(|deg| deg != d) || !c.poly.is_homogeneous() {
                return Err(Error::InvalidRing(format!(
                    "c_{d} is not homogeneous of degree {d}"
                )));
            }
        }
        if classes.is_empty() {
            return Err(Error::RankOutOfRange {
                rank: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        Ok(ToyBundle { classes })
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn ring(&self) -> &Arc<ToyRing> {
        self.classes[0].ring()
    }

    pub fn classes(&self) -> &[ToyElem] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> ToyElem {
        match i {
            0 => self.ring().one(),
            i if i <= self.rank() => self.classes[i - 1].clone(),
            _ => self.ring().zero(),
        }
    }

    /// Same bundle data with `c_1` replaced by zero.
    pub fn with_c1_zero(&self) -> ToyBundle {
        let mut classes = self.classes.clone();
        classes[0] = self.ring().zero();
        ToyBundle { classes }
    }
}

/// Deterministic random bundle: `c_i` drawn from the degree-`i` piece.
pub fn random_bundle(ring: &Arc<ToyRing>, n: usize, seed: u64) -> Result<ToyBundle> {
    if n < 2 {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: 2,
            max: usize::MAX,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ToyBundle::new(
        (1..=n)
            .map(|i| ring.random_element(i as u32, &mut rng))
            .collect(),
    )
}

/// Deterministic random degree-one class, independent of [`random_bundle`]'s stream.
pub fn random_line_class(ring: &Arc<ToyRing>, seed: u64) -> ToyElem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    ring.random_element(1, &mut rng)
}

/// A fixed catalogue of small rings used by the verification suites.
pub fn standard_rings() -> Vec<Arc<ToyRing>> {
    let specs = [
        ToyRingSpec::new("Q"),
        ToyRingSpec::new("P2")
            .generator("h", 1)
            .power_relation("h", 3),
        ToyRingSpec::new("P2-even")
            .generator("h", 2)
            .power_relation("h", 3),
        ToyRingSpec::new("C1xC2")
            .generator("h1", 1)
            .generator("h2", 1)
            .power_relation("h1", 2)
            .power_relation("h2", 2),
        ToyRingSpec::new("P1xP3")
            .generator("a", 1)
            .generator("b", 1)
            .power_relation("a", 2)
            .power_relation("b", 4),
        ToyRingSpec::new("free-trunc6")
            .generator("a", 1)
            .generator("b", 1)
            .generator("c", 2)
            .top_degree(6),
        ToyRingSpec::new("mixed")
            .generator("a", 1)
            .generator("b", 2)
            .generator("c", 3)
            .power_relation("a", 5)
            .power_relation("b", 3)
            .power_relation("c", 2)
            .relation(vec![(vec![1, 1, 1], 1)])
            .top_degree(8),
    ];
    specs
        .iter()
        .map(|s| make_toy_ring(s).expect("catalogue rings are valid"))
        .collect()
}

/// Rank over ℚ of a list of coordinate vectors.
pub fn rank_of(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rational::from_integer(1.into()) / &rows[rank][col];
        let pivot_row: Vec<Rational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_even_grading() {
        let ring = make_toy_ring(
            &ToyRingSpec::new("P2")
                .generator("h", 2)
                .power_relation("h", 3),
        )
        .unwrap();
        assert_eq!(ring.graded_dims(), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn product_of_curves() {
        let ring = make_toy_ring(
            &ToyRingSpec::new("C1xC2")
                .generator("h1", 1)
                .generator("h2", 1)
                .power_relation("h1", 2)
                .power_relation("h2", 2),
        )
        .unwrap();
        assert_eq!(ring.graded_dims(), vec![1, 2, 1]);
        let h1 = ring.gen(0);
        assert!(h1.mul(&h1).is_zero());
        assert!(!h1.mul(&ring.gen(1)).is_zero());
    }

    #[test]
    fn empty_spec_is_the_rationals() {
        let ring = make_toy_ring(&ToyRingSpec::new("Q")).unwrap();
        assert_eq!(ring.graded_dims(), vec![1]);
        let b = random_bundle(&ring, 3, 7).unwrap();
        assert!(b.classes().iter().all(ToyElem::is_zero));
    }

    #[test]
    fn rejects_bad_relations() {
        let inhom = ToyRingSpec::new("bad")
            .generator("a", 1)
            .generator("b", 2)
            .relation(vec![(vec![1, 0], 1), (vec![0, 1], 1)]);
        assert!(
            matches!(make_toy_ring(&inhom), Err(Error::InvalidRing(m)) if m.contains("inhomogeneous"))
        );
        let binomial = ToyRingSpec::new("bad")
            .generator("a", 1)
            .generator("b", 1)
            .relation(vec![(vec![2, 0], 1), (vec![0, 2], -1)]);
        assert!(make_toy_ring(&binomial).is_err());
        let infinite = ToyRingSpec::new("bad").generator("a", 1);
        assert!(make_toy_ring(&infinite).is_err());
        let constant = ToyRingSpec::new("bad")
            .generator("a", 1)
            .power_relation("a", 0);
        assert!(make_toy_ring(&constant).is_err());
    }

    #[test]
    fn bundles_are_reproducible() {
        for ring in standard_rings() {
            let a = random_bundle(&ring, 3, 11).unwrap();
            let b = random_bundle(&ring, 3, 11).unwrap();
            assert_eq!(a, b);
            for (k, c) in a.classes().iter().enumerate() {
                if ring.basis(k as u32 + 1).is_empty() {
                    assert!(c.is_zero());
                }
            }
        }
        assert!(random_bundle(&standard_rings()[1], 1, 0).is_err());
    }

    #[test]
    fn gaussian_rank() {
        let v = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(rank_of(vec![v(&[1, 2]), v(&[2, 4])]), 1);
        assert_eq!(
            rank_of(vec![v(&[1, 2, 0]), v(&[0, 1, 1]), v(&[1, 3, 1])]),
            2
        );
        assert_eq!(rank_of(vec![]), 0);
    }
}
