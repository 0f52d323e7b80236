//! Formal Chern-root calculus: twisting by a line bundle, the determinant,
//! reduced Chern classes, the classes of `S^n E ⊗ det(E)^{-1}`, and the
//! root-shift homomorphism.
//!
//! Chern roots are the degree-one variables `x1..xn`; `e`/`σ` always mean
//! elementary symmetric polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_poly::{
    binomial, elementary_of, product_of_one_plus, rat, MPoly, Rational, Var, VarTable, Vars,
};
use crate::symfun::{compositions, express_in_elementary, express_in_elementary_with_params};

/// Largest rank for which the `S^n E` expansion is attempted by default.
pub const DEFAULT_MAX_RANK: usize = 6;

/// Rank plus Chern classes `c_1..c_n`, all living over one variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernVector {
    classes: Vec<MPoly>,
}

impl ChernVector {
    /// The universal bundle: `c_i` is the variable `ci` of `ℚ[c1..cn]`.
    pub fn free(n: usize) -> Self {
        let vars = VarTable::chern(n);
        ChernVector {
            classes: (0..n).map(|i| MPoly::var(&vars, i)).collect(),
        }
    }

    pub fn new(classes: Vec<MPoly>) -> Result<Self> {
        let first = classes.first().ok_or(Error::RankOutOfRange {
            rank: 0,
            min: 1,
            max: usize::MAX,
        })?;
        for c in &classes[1..] {
            if c.vars() != first.vars() {
                return Err(Error::VarTableMismatch {
                    left: first.vars().to_string(),
                    right: c.vars().to_string(),
                });
            }
        }
        Ok(ChernVector { classes })
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn vars(&self) -> &Vars {
        self.classes[0].vars()
    }

    pub fn classes(&self) -> &[MPoly] {
        &self.classes
    }

    /// `c_i`, with `c_0 = 1` and `c_i = 0` above the rank.
    pub fn class(&self, i: usize) -> MPoly {
        match i {
            0 => MPoly::one(self.vars()),
            i if i <= self.rank() => self.classes[i - 1].clone(),
            _ => MPoly::zero(self.vars()),
        }
    }
}

/// The formal roots `x1..xn` and the shifted roots `f_i = x_i − (Σx)/n`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    vars: Vars,
}

impl RootSystem {
    pub fn new(n: usize) -> Self {
        RootSystem {
            vars: VarTable::roots(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn roots(&self) -> Vec<MPoly> {
        (0..self.rank())
            .map(|i| MPoly::var(&self.vars, i))
            .collect()
    }

    /// `σ_r(x)`, the image of `c_r` under the splitting dictionary.
    pub fn elementary(&self, r: usize) -> MPoly {
        elementary_of(&self.vars, &self.roots(), r)
    }

    pub fn shifted(&self) -> Vec<MPoly> {
        let n = self.rank();
        let mean = self.elementary(1).scale(&rat(1, n as i64));
        self.roots().iter().map(|x| x - &mean).collect()
    }
}

fn check_index(n: usize, r: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: 1,
            max: usize::MAX,
        });
    }
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange { index: r, rank: n });
    }
    Ok(())
}

fn check_rank(n: usize, max_rank: usize) -> Result<()> {
    if !(2..=max_rank).contains(&n) {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: 2,
            max: max_rank,
        });
    }
    Ok(())
}

/// Rewrites a symmetric polynomial in the roots as a polynomial in `c1..cn`.
fn roots_to_chern(p: &MPoly) -> Result<MPoly> {
    express_in_elementary(p)?.rename(&VarTable::chern(p.vars().len()))
}

/// `c̄_r = σ_r(f_1, …, f_n)`, expanded and rewritten in `c1..cn`.
pub fn reduced_chern_roots(n: usize, r: usize) -> Result<MPoly> {
    check_index(n, r)?;
    let roots = RootSystem::new(n);
    roots_to_chern(&elementary_of(roots.vars(), &roots.shifted(), r))
}

/// `c̄_r = Σ_{i=0}^{r} (−1)^{r−i} n^{−(r−i)} C(n−i, r−i) c_1^{r−i} c_i`.
pub fn reduced_chern_formula(n: usize, r: usize) -> Result<MPoly> {
    check_index(n, r)?;
    let cv = ChernVector::free(n);
    let c1 = cv.class(1);
    let mut acc = MPoly::zero(cv.vars());
    for i in 0..=r {
        let k = (r - i) as u32;
        let sign = if k.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let coeff = Rational::new(
            sign * binomial((n - i) as u64, k as u64),
            BigInt::from(n).pow(k),
        );
        acc = &acc + &(&c1.pow(k) * &cv.class(i)).scale(&coeff);
    }
    Ok(acc)
}

/// Universal classes of `E ⊗ L` for rank-`n` `E`: `c_k(E⊗L) = σ_k(x_i + t)`
/// rewritten over `c1..cn, t`.
pub fn twist_universal(n: usize, t: &str) -> Result<Vec<MPoly>> {
    let vars = VarTable::roots(n).with_var(Var::new(t, 1))?;
    let tv = MPoly::var(&vars, n);
    let moved: Vec<MPoly> = (0..n).map(|i| &MPoly::var(&vars, i) + &tv).collect();
    let target = VarTable::chern(n).with_var(Var::new(t, 1))?;
    (1..=n)
        .map(|k| {
            express_in_elementary_with_params(&elementary_of(&vars, &moved, k), n)?.rename(&target)
        })
        .collect()
}

/// Classes of `E ⊗ L` where `c_1(L)` is the fresh degree-one variable `t`.
/// The result lives over the table of `cv` extended by `t`.
pub fn twist(cv: &ChernVector, t: &str) -> Result<ChernVector> {
    let n = cv.rank();
    if cv.vars().index_of(t).is_some() {
        return Err(Error::InvalidVarTable(format!(
            "twist variable `{t}` is not fresh"
        )));
    }
    let target = cv.vars().with_var(Var::new(t, 1))?;
    let mut images: Vec<MPoly> = cv
        .classes()
        .iter()
        .map(|c| c.embed(&target))
        .collect::<Result<_>>()?;
    images.push(MPoly::var(&target, n));
    let classes = twist_universal(n, t)?
        .iter()
        .map(|u| u.substitute(&images, &target))
        .collect::<Result<_>>()?;
    ChernVector::new(classes)
}

/// `c_1(det E) = c_1(E)`.
pub fn det_class(cv: &ChernVector) -> MPoly {
    cv.class(1)
}

/// `c_1(F), …, c_{k_max}(F)` for `F = S^n E ⊗ det(E)^{-1}`, as polynomials
/// in `c1..cn`. The roots of `F` are `Σ m_i f_i` over all `m` with
/// `Σ m_i = n`.
pub fn sym_power_det_inverse_chern(n: usize, k_max: usize) -> Result<Vec<MPoly>> {
    sym_power_det_inverse_chern_bounded(n, k_max, DEFAULT_MAX_RANK)
}

pub fn sym_power_det_inverse_chern_bounded(
    n: usize,
    k_max: usize,
    max_rank: usize,
) -> Result<Vec<MPoly>> {
    check_rank(n, max_rank)?;
    if k_max > n {
        return Err(Error::IndexOutOfRange {
            index: k_max,
            rank: n,
        });
    }
    let f_vars = VarTable::shifted_roots(n);
    let forms: Vec<MPoly> = compositions(n as u32, n)
        .iter()
        .map(|m| {
            MPoly::linear(
                &f_vars,
                &m.iter()
                    .map(|&k| Rational::from_integer(k.into()))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let total = product_of_one_plus(&f_vars, &forms, Some(k_max as u32))?;

    let roots = RootSystem::new(n);
    let in_roots = total.substitute(&roots.shifted(), roots.vars())?;
    let in_chern = roots_to_chern(&in_roots)?;
    Ok((1..=k_max)
        .map(|k| in_chern.graded_component(k as u32))
        .collect())
}

/// The ℚ-algebra endomorphism of `ℚ[c1..cn]` induced by `x_i ↦ f_i`:
/// `c_r ↦ c̄_r`.
pub fn reduce_hom(q: &MPoly) -> Result<MPoly> {
    let n = q.vars().len();
    if (0..n).any(|i| q.vars().degree(i) != i as u32 + 1) {
        return Err(Error::InvalidVarTable(format!(
            "[{}] is not a table of Chern classes",
            q.vars()
        )));
    }
    if n == 0 {
        return Ok(q.clone());
    }
    let roots = RootSystem::new(n);
    let shifted = roots.shifted();
    let images: Vec<MPoly> = (1..=n)
        .map(|r| elementary_of(roots.vars(), &shifted, r))
        .collect();
    let in_roots = q.substitute(&images, roots.vars())?;
    express_in_elementary(&in_roots)?.rename(q.vars())
}

/// Sets `c_1 = 0` in a polynomial over `c1..cn`.
pub fn drop_c1(q: &MPoly) -> MPoly {
    q.filter_terms(|e| e[0] == 0)
}

/// The leading rational `(n−1)/(2n)` in `c̄_2 = c_2 − ((n−1)/2n) c_1²`.
pub fn c2_correction(n: usize) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    rat(n as i64 - 1, 2 * n as i64)
}
