use std::sync::Arc;

use super::toy_ring::{rank_of, ToyBundle, ToyElem, ToyRing};
use crate::exact_poly::{int, Algebra, MPoly, Rational, Var, Vars};

/// `A[ξ] / (ξ^n + c_1 ξ^{n−1} + … + c_n)` over a toy ring `A`, with
/// `deg ξ = 1`. Elements are stored in the free basis `1, ξ, …, ξ^{n−1}`.
#[derive(Debug)]
pub struct ProjectiveBundleRing {
    base: Arc<ToyRing>,
    classes: Vec<ToyElem>,
    vars: Vars,
}

pub fn projective_bundle_ring(bundle: &ToyBundle) -> Arc<ProjectiveBundleRing> {
    let base = bundle.ring().clone();
    let vars = base
        .gens()
        .with_var(Var::new("xi", 1))
        .expect("base generators do not use `xi`");
    Arc::new(ProjectiveBundleRing {
        base,
        classes: bundle.classes().to_vec(),
        vars,
    })
}

impl ProjectiveBundleRing {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn base(&self) -> &Arc<ToyRing> {
        &self.base
    }

    pub fn max_degree(&self) -> u32 {
        self.base.max_degree() + self.rank() as u32 - 1
    }

    pub fn from_base(self: &Arc<Self>, a: &ToyElem) -> PbElem {
        let mut coeffs = vec![self.base.zero(); self.rank()];
        coeffs[0] = a.clone();
        PbElem {
            ring: self.clone(),
            coeffs,
        }
    }

    pub fn one(self: &Arc<Self>) -> PbElem {
        self.from_base(&self.base.one())
    }

    pub fn xi(self: &Arc<Self>) -> PbElem {
        let mut coeffs = vec![self.base.zero(); self.rank()];
        if self.rank() == 1 {
            // ξ = −c_1 when n = 1
            coeffs[0] = self.classes[0].scale(&int(-1));
        } else {
            coeffs[1] = self.base.one();
        }
        PbElem {
            ring: self.clone(),
            coeffs,
        }
    }

    /// `ξ^n + c_1 ξ^{n−1} + … + c_n`, computed by multiplication in the ring.
    pub fn relation_residue(self: &Arc<Self>) -> PbElem {
        let n = self.rank();
        let xi = self.xi();
        let mut acc = xi.pow(n as u32);
        for i in 1..=n {
            let term = self
                .from_base(&self.classes[i - 1])
                .mul(&xi.pow((n - i) as u32));
            acc = acc.add(&term);
        }
        acc
    }

    /// Dimension of the degree-`d` piece as a free module:
    /// `Σ_{i<n} dim_base(d − i)`.
    pub fn free_dim(&self, d: u32) -> usize {
        (0..self.rank())
            .map(|i| self.base.dim(d as i64 - i as i64))
            .sum()
    }

    /// Dimension of the span of every monomial `g^a ξ^j` of degree `d`,
    /// computed by reducing each one and taking the rank of the coordinates.
    pub fn spanned_dim(self: &Arc<Self>, d: u32) -> usize {
        let xi = self.xi();
        let mut rows = Vec::new();
        for j in 0..=d {
            let xi_j = xi.pow(j);
            for mono in self.all_base_monomials(d - j) {
                let m = self.base.elem(mono);
                rows.push(self.from_base(&m).mul(&xi_j).coordinates(d));
            }
        }
        rank_of(rows)
    }

    /// Every monomial in the base generators of degree `d`, killed or not.
    fn all_base_monomials(&self, d: u32) -> Vec<MPoly> {
        let gens = self.base.gens().clone();
        let mut out = Vec::new();
        fn go(gens: &Vars, i: usize, rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<MPoly>) {
            if i == gens.len() {
                if rest == 0 {
                    out.push(MPoly::monomial(
                        gens,
                        prefix.clone(),
                        Rational::from_integer(1.into()),
                    ));
                }
                return;
            }
            let step = gens.degree(i);
            let mut k = 0;
            while k * step <= rest {
                prefix.push(k);
                go(gens, i + 1, rest - k * step, prefix, out);
                prefix.pop();
                k += 1;
            }
        }
        go(&gens, 0, d, &mut Vec::new(), &mut out);
        out
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }
}

#[derive(Clone, Debug)]
pub struct PbElem {
    ring: Arc<ProjectiveBundleRing>,
    coeffs: Vec<ToyElem>,
}

impl PbElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ToyElem::is_zero)
    }

    pub fn coeffs(&self) -> &[ToyElem] {
        &self.coeffs
    }

    pub fn pow(&self, k: u32) -> PbElem {
        (0..k).fold(self.ring.one(), |acc, _| acc.mul(self))
    }

    pub fn sub(&self, rhs: &PbElem) -> PbElem {
        self.add(&rhs.scale(&int(-1)))
    }

    /// Coordinates of the degree-`d` part in the basis `b·ξ^i`, where `b`
    /// runs over the standard monomials of degree `d − i`.
    pub fn coordinates(&self, d: u32) -> Vec<Rational> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if (i as u32) > d {
                continue;
            }
            for mono in self.ring.base.basis(d - i as u32) {
                out.push(c.poly().coeff(mono));
            }
        }
        out
    }

    /// Flattened to a polynomial over the base generators plus `xi`.
    pub fn to_mpoly(&self) -> MPoly {
        let vars = &self.ring.vars;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for (e, q) in c.poly().terms() {
                let mut exps = e.clone();
                exps.push(i as u32);
                terms.push((exps, q.clone()));
            }
        }
        MPoly::from_terms(vars, terms).expect("lengths match")
    }
}

impl Algebra for PbElem {
    fn add(&self, rhs: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        PbElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let n = self.ring.rank();
        let zero = self.ring.base.zero();
        let mut wide = vec![zero; 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] = wide[i + j].add(&a.mul(b));
                }
            }
        }
        // ξ^k = −Σ_{i=1}^{n} c_i ξ^{k−i} for k ≥ n
        for k in (n..2 * n - 1).rev() {
            let top = std::mem::replace(&mut wide[k], self.ring.base.zero());
            if top.is_zero() {
                continue;
            }
            for i in 1..=n {
                let term = top.mul(&self.ring.classes[i - 1]).scale(&int(-1));
                wide[k - i] = wide[k - i].add(&term);
            }
        }
        wide.truncate(n);
        PbElem {
            ring: self.ring.clone(),
            coeffs: wide,
        }
    }

    fn scale(&self, c: &Rational) -> Self {
        PbElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    fn zero_like(&self) -> Self {
        self.ring.from_base(&self.ring.base.zero())
    }
}
