//! The symmetric functions `s_i = σ_i(y_1, …, y_N)` of the forms
//! `y = m_1 x_1 + … + m_n x_n` with `Σ m_i = n`, the triangular solve
//! `e_i = ψ_i(s_1, …, s_n)`, and the universal polynomials `φ_i` with
//! `c̄_i(E) = φ_i(c_2(F), …, c_n(F))` for `F = S^n E ⊗ det(E)^{-1}`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern_calc::DEFAULT_MAX_RANK;
use crate::error::{Error, Result};
use crate::exact_poly::{
    product_of_one_plus, serde_rational_vec, Algebra, MPoly, Rational, VarTable, Vars,
};
use crate::symfun::{compositions, express_in_elementary, Partition};

/// The `N = C(2n−1, n)` coefficient vectors `m` of the forms `y`.
///
/// The first `n` are `y_i = n·x_i`; the rest follow in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YRootSet {
    n: usize,
    coeffs: Vec<Vec<u32>>,
}

impl YRootSet {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Vec<u32>] {
        &self.coeffs
    }

    /// The forms as linear polynomials over `vars` (which needs `n` entries).
    pub fn forms(&self, vars: &Vars) -> Vec<MPoly> {
        self.coeffs
            .iter()
            .map(|m| {
                MPoly::linear(
                    vars,
                    &m.iter()
                        .map(|&k| Rational::from_integer(k.into()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }
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

pub fn y_roots(n: usize) -> Result<YRootSet> {
    y_roots_bounded(n, DEFAULT_MAX_RANK)
}

pub fn y_roots_bounded(n: usize, max_rank: usize) -> Result<YRootSet> {
    check_rank(n, max_rank)?;
    let pure = |i: usize| {
        let mut m = vec![0; n];
        m[i] = n as u32;
        m
    };
    let mut coeffs: Vec<Vec<u32>> = (0..n).map(pure).collect();
    coeffs.extend(
        compositions(n as u32, n)
            .into_iter()
            .filter(|m| !m.contains(&(n as u32))),
    );
    Ok(YRootSet { n, coeffs })
}

/// `s_1, …, s_{r_max}` as polynomials in the roots `x1..xn`.
pub fn s_in_roots(n: usize, r_max: usize, max_rank: usize) -> Result<Vec<MPoly>> {
    let ys = y_roots_bounded(n, max_rank)?;
    if r_max > n {
        return Err(Error::IndexOutOfRange {
            index: r_max,
            rank: n,
        });
    }
    let x = VarTable::roots(n);
    let total = product_of_one_plus(&x, &ys.forms(&x), Some(r_max as u32))?;
    Ok((1..=r_max)
        .map(|r| total.graded_component(r as u32))
        .collect())
}

/// `s_1, …, s_{r_max}` rewritten in `e1..en`.
pub fn s_in_elementary(n: usize, r_max: usize) -> Result<Vec<MPoly>> {
    s_in_elementary_bounded(n, r_max, DEFAULT_MAX_RANK)
}

pub fn s_in_elementary_bounded(n: usize, r_max: usize, max_rank: usize) -> Result<Vec<MPoly>> {
    s_in_roots(n, r_max, max_rank)?
        .iter()
        .map(express_in_elementary)
        .collect()
}

/// One row `s_r = lead·e_r + Σ d_{r,λ} e_λ` of the triangular system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularRow {
    #[serde(with = "crate::exact_poly::serde_rational")]
    pub lead: Rational,
    pub off_diagonal: Vec<OffDiagonal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffDiagonal {
    pub partition: Partition,
    #[serde(with = "crate::exact_poly::serde_rational")]
    pub coeff: Rational,
}

/// Splits each `s_r` (over `e1..en`) into its `e_r` coefficient and the
/// remaining `e_λ` terms, failing unless every row is homogeneous of degree
/// `r`, involves only `e_1..e_r`, and has a positive leading coefficient.
pub fn triangular_rows(s_elementary: &[MPoly]) -> Result<Vec<TriangularRow>> {
    let mut rows = Vec::with_capacity(s_elementary.len());
    for (k, s) in s_elementary.iter().enumerate() {
        let r = k + 1;
        let n = s.vars().len();
        let mut unit = vec![0; n];
        unit[k] = 1;
        let lead = s.coeff(&unit);
        if !lead.is_positive() {
            return Err(Error::Inconsistent(format!(
                "leading coefficient of s_{r} is {lead}, not positive"
            )));
        }
        if !s.is_homogeneous() || s.degree() != Some(r as u32) {
            return Err(Error::Inconsistent(format!(
                "s_{r} is not homogeneous of degree {r}"
            )));
        }
        let mut off_diagonal = Vec::new();
        for (e, c) in s.terms() {
            if *e == unit {
                continue;
            }
            if e[k..].iter().any(|&x| x > 0) {
                return Err(Error::Inconsistent(format!(
                    "s_{r} contains e-monomial {e:?} above the diagonal"
                )));
            }
            off_diagonal.push(OffDiagonal {
                partition: Partition::from_multiplicities(e),
                coeff: c.clone(),
            });
        }
        off_diagonal.sort_by(|a, b| b.partition.cmp(&a.partition));
        rows.push(TriangularRow { lead, off_diagonal });
    }
    Ok(rows)
}

/// Result of the triangular back-substitution.
#[derive(Clone, Debug)]
pub struct PsiSolution {
    pub n: usize,
    pub num_roots: usize,
    /// `s_r` over `e1..en`.
    pub s_elementary: Vec<MPoly>,
    pub rows: Vec<TriangularRow>,
    /// `ψ_r` over `s1..sn`.
    pub psi: Vec<MPoly>,
}

pub fn solve_psi(n: usize) -> Result<PsiSolution> {
    solve_psi_bounded(n, DEFAULT_MAX_RANK)
}

pub fn solve_psi_bounded(n: usize, max_rank: usize) -> Result<PsiSolution> {
    let num_roots = y_roots_bounded(n, max_rank)?.len();
    let s_elementary = s_in_elementary_bounded(n, n, max_rank)?;
    let rows = triangular_rows(&s_elementary)?;
    let e_vars = VarTable::elementary(n);
    let s_vars = VarTable::s_vars(n);

    // e_r = (s_r − Σ d e_λ) / lead, with e_1..e_{r−1} already replaced by ψ
    let mut psi: Vec<MPoly> = Vec::with_capacity(n);
    for (k, (s, row)) in s_elementary.iter().zip(&rows).enumerate() {
        let mut unit = vec![0; n];
        unit[k] = 1;
        let rest = s - &MPoly::monomial(&e_vars, unit, row.lead.clone());
        let mut images = psi.clone();
        images.resize(n, MPoly::zero(&s_vars));
        let rest_in_s = rest.substitute(&images, &s_vars)?;
        let inv = Rational::one() / &row.lead;
        psi.push((&MPoly::var(&s_vars, k) - &rest_in_s).scale(&inv));
    }

    for (k, p) in psi.iter().enumerate() {
        let back = p.substitute(&s_elementary, &e_vars)?;
        if back != MPoly::var(&e_vars, k) {
            return Err(Error::Inconsistent(format!(
                "ψ_{} does not invert the triangular system",
                k + 1
            )));
        }
    }
    Ok(PsiSolution {
        n,
        num_roots,
        s_elementary,
        rows,
        psi,
    })
}

/// `φ_i(u_2, …, u_n) = ψ_i(0, u_2, …, u_n)` for `i = 2..n`.
pub fn compute_phi(sol: &PsiSolution) -> Vec<MPoly> {
    let u = VarTable::u_vars(sol.n);
    let mut images = vec![MPoly::zero(&u)];
    images.extend((0..u.len()).map(|j| MPoly::var(&u, j)));
    sol.psi[1..]
        .iter()
        .map(|p| p.substitute(&images, &u).expect("ψ lives over s1..sn"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalPolys {
    pub n: usize,
    #[serde(rename = "N")]
    pub num_roots: usize,
    /// `ψ_1..ψ_n` over `s1..sn`.
    pub psi: Vec<MPoly>,
    /// `φ_2..φ_n` over `u2..un`.
    pub phi: Vec<MPoly>,
    #[serde(with = "serde_rational_vec")]
    pub lead: Vec<Rational>,
}

impl UniversalPolys {
    pub fn compute(n: usize) -> Result<Self> {
        Self::compute_bounded(n, DEFAULT_MAX_RANK)
    }

    pub fn compute_bounded(n: usize, max_rank: usize) -> Result<Self> {
        Ok(Self::from_solution(&solve_psi_bounded(n, max_rank)?))
    }

    pub fn from_solution(sol: &PsiSolution) -> Self {
        UniversalPolys {
            n: sol.n,
            num_roots: sol.num_roots,
            psi: sol.psi.clone(),
            phi: compute_phi(sol),
            lead: sol.rows.iter().map(|r| r.lead.clone()).collect(),
        }
    }

    /// Reduced classes of a projective bundle from the classes `c_2..c_n`
    /// of its pushforward `π_* ω^{-1}`, evaluated in any ℚ-algebra.
    pub fn brauer_reduced<A: Algebra>(&self, pushforward: &[A], one: &A) -> Result<Vec<A>> {
        brauer_reduced(&self.phi, pushforward, one)
    }
}

/// Evaluates `φ_2..φ_n` at `pushforward = [c_2(F), …, c_n(F)]`.
pub fn brauer_reduced<A: Algebra>(phi: &[MPoly], pushforward: &[A], one: &A) -> Result<Vec<A>> {
    if pushforward.len() != phi.len() {
        return Err(Error::RankMismatch {
            expected: phi.len(),
            got: pushforward.len(),
        });
    }
    Ok(phi.iter().map(|p| p.eval(pushforward, one)).collect())
}

/// True when every `φ_i` has zero constant term.
pub fn phi_has_no_constant(phi: &[MPoly]) -> bool {
    phi.iter().all(|p| p.constant_term().is_zero())
}
