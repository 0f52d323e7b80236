use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::vars::{VarTable, Vars};
use crate::error::{Error, Result};

/// Dense exponent vector, one slot per variable of the table.
pub type Exps = Vec<u32>;

/// A commutative ℚ-algebra that polynomials can be evaluated in.
pub trait Algebra: Clone {
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;

    fn zero_like(&self) -> Self {
        self.scale(&Rational::zero())
    }
}

/// Multivariate polynomial over ℚ in graded variables.
///
/// Terms are kept in a `BTreeMap` with no zero coefficients, so two
/// polynomials over the same table are equal exactly when their maps are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Exps, Rational>,
}

fn mismatch(a: &VarTable, b: &VarTable) -> Error {
    Error::VarTableMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}

fn add_term(terms: &mut BTreeMap<Exps, Rational>, exps: Exps, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(exps) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        add_term(&mut p.terms, vec![0; vars.len()], c);
        p
    }

    /// The `i`-th variable of the table.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range");
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::monomial(vars, exps, Rational::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::UnassignedVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Vars, exps: Exps, coeff: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        add_term(&mut p.terms, exps, coeff);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        vars: &Vars,
        terms: impl IntoIterator<Item = (Exps, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (exps, coeff) in terms {
            if exps.len() != vars.len() {
                return Err(Error::Parse(format!(
                    "exponent vector {exps:?} does not match {} variables",
                    vars.len()
                )));
            }
            add_term(&mut p.terms, exps, coeff);
        }
        Ok(p)
    }

    /// Linear form `Σ coeffs[i]·var_i`.
    pub fn linear(vars: &Vars, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), vars.len());
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let mut exps = vec![0; vars.len()];
            exps[i] = 1;
            (exps, c.clone())
        });
        Self::from_terms(vars, terms).expect("lengths checked")
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical graded-lex order: ascending weighted degree, then
    /// ascending lexicographic exponent vector.
    pub fn graded_terms(&self) -> Vec<(&Exps, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| self.vars.weighted_degree(e));
        terms
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Maximal weighted degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| self.vars.weighted_degree(e))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| self.vars.weighted_degree(e));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// Indices of variables occurring with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    fn same_vars(&self, other: &MPoly) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(mismatch(&self.vars, &other.vars))
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_vars(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.mul_truncated(other, None)
    }

    /// Product with every term of weighted degree above `cap` discarded.
    pub fn mul_truncated(&self, other: &MPoly, cap: Option<u32>) -> Result<MPoly> {
        self.same_vars(other)?;
        let lhs = self.weighted_terms();
        let rhs = other.weighted_terms();
        let mut acc: HashMap<Exps, Rational> = HashMap::new();
        for &(da, ea, ca) in &lhs {
            for &(db, eb, cb) in &rhs {
                if cap.is_some_and(|cap| da + db > cap) {
                    continue;
                }
                let exps: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match acc.get_mut(&exps) {
                    Some(c) => *c += prod,
                    None => {
                        acc.insert(exps, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    fn weighted_terms(&self) -> Vec<(u32, &Exps, &Rational)> {
        self.terms
            .iter()
            .map(|(e, c)| (self.vars.weighted_degree(e), e, c))
            .collect()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exps, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        self.pow_truncated(k, None)
    }

    pub fn pow_truncated(&self, k: u32, cap: Option<u32>) -> MPoly {
        let mut acc = MPoly::one(&self.vars).truncate(cap);
        let mut base = self.truncate(cap);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_truncated(&base, cap).expect("same table");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_truncated(&base, cap).expect("same table");
            }
        }
        acc
    }

    /// Drops every term of weighted degree above `cap`.
    pub fn truncate(&self, cap: Option<u32>) -> MPoly {
        match cap {
            None => self.clone(),
            Some(cap) => self.filter_terms(|e| self.vars.weighted_degree(e) <= cap),
        }
    }

    /// Sum of the terms of weighted degree exactly `d`.
    pub fn graded_component(&self, d: u32) -> MPoly {
        self.filter_terms(|e| self.vars.weighted_degree(e) == d)
    }

    /// The distinct nonzero graded components, ascending by degree.
    pub fn graded_components(&self) -> Vec<(u32, MPoly)> {
        let mut parts: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = self.vars.weighted_degree(e);
            parts
                .entry(d)
                .or_insert_with(|| MPoly::zero(&self.vars))
                .terms
                .insert(e.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn filter_terms(&self, keep: impl Fn(&Exps) -> bool) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Exps, &Rational) -> Rational) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), f(e, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Permutes variables: variable `i` is sent to variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> MPoly {
        assert_eq!(perm.len(), self.vars.len());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; e.len()];
                for (i, &x) in e.iter().enumerate() {
                    out[perm[i]] = x;
                }
                (out, c.clone())
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Evaluates at `values[i]` for variable `i` in an arbitrary algebra.
    /// `one` fixes the target ring and is used for constants.
    pub fn eval<A: Algebra>(&self, values: &[A], one: &A) -> A {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut powers: Vec<Vec<A>> = values.iter().map(|v| vec![v.clone()]).collect();
        let mut acc = one.zero_like();
        for (exps, coeff) in &self.terms {
            let mut term = one.scale(coeff);
            for (i, &k) in exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() < k as usize {
                    let next = cache.last().unwrap().mul(&values[i]);
                    cache.push(next);
                }
                term = term.mul(&cache[k as usize - 1]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; all images live
    /// over `target`.
    pub fn substitute(&self, images: &[MPoly], target: &Vars) -> Result<MPoly> {
        if images.len() < self.vars.len() {
            return Err(Error::UnassignedVariable(
                self.vars.name(images.len()).to_string(),
            ));
        }
        if images.len() > self.vars.len() {
            return Err(Error::InvalidVarTable(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        for img in images {
            if img.vars != *target {
                return Err(mismatch(target, &img.vars));
            }
        }
        Ok(self.eval(images, &MPoly::one(target)))
    }

    /// Substitution keyed by variable name. Variables that do not occur in
    /// `self` may be left out of `assignment`.
    pub fn substitute_named(
        &self,
        assignment: &BTreeMap<String, MPoly>,
        target: &Vars,
    ) -> Result<MPoly> {
        let used = self.support();
        let mut images = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            match assignment.get(self.vars.name(i)) {
                Some(img) => images.push(img.clone()),
                None if !used.contains(&i) => images.push(MPoly::zero(target)),
                None => return Err(Error::UnassignedVariable(self.vars.name(i).to_string())),
            }
        }
        self.substitute(&images, target)
    }

    /// Reinterprets the polynomial over a table of the same shape (same
    /// length and degrees), keeping exponent vectors unchanged.
    pub fn rename(&self, vars: &Vars) -> Result<MPoly> {
        let same_shape = vars.len() == self.vars.len()
            && (0..vars.len()).all(|i| vars.degree(i) == self.vars.degree(i));
        if !same_shape {
            return Err(mismatch(&self.vars, vars));
        }
        Ok(MPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Moves the polynomial into a table containing each of its variables
    /// (matched by name, with equal degree).
    pub fn embed(&self, target: &Vars) -> Result<MPoly> {
        let mut slot = Vec::with_capacity(self.vars.len());
        for v in self.vars.vars() {
            match target.index_of(&v.name) {
                Some(j) if target.degree(j) == v.degree => slot.push(j),
                _ => return Err(mismatch(&self.vars, target)),
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; target.len()];
                for (i, &x) in e.iter().enumerate() {
                    out[slot[i]] = x;
                }
                (out, c.clone())
            })
            .collect();
        Ok(MPoly {
            vars: target.clone(),
            terms,
        })
    }
}

/// `∏ (1 + forms[i])` with every term above weighted degree `cap` discarded.
///
/// The factors are split into chunks multiplied on separate threads; the
/// result is exact, so it does not depend on the split.
pub fn product_of_one_plus(vars: &Vars, forms: &[MPoly], cap: Option<u32>) -> Result<MPoly> {
    use rayon::prelude::*;

    for f in forms {
        if f.vars != *vars {
            return Err(mismatch(vars, &f.vars));
        }
    }
    let serial = |chunk: &[MPoly]| -> MPoly {
        let mut acc = MPoly::one(vars);
        for f in chunk {
            let shifted = acc.mul_truncated(f, cap).expect("tables checked");
            acc = acc.checked_add(&shifted).expect("tables checked");
        }
        acc
    };
    const CHUNK: usize = 16;
    if forms.len() <= CHUNK {
        return Ok(serial(forms));
    }
    let partials: Vec<MPoly> = forms.par_chunks(CHUNK).map(serial).collect();
    Ok(partials.into_par_iter().reduce(
        || MPoly::one(vars),
        |a, b| a.mul_truncated(&b, cap).expect("tables checked"),
    ))
}

impl Algebra for MPoly {
    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("variable tables must agree")
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("variable tables must agree")
    }

    fn scale(&self, c: &Rational) -> Self {
        MPoly::scale(self, c)
    }
}

// Operator sugar panics on mismatched tables; the `checked_*` methods report it.
impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("variable tables must agree")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("variable tables must agree")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("variable tables must agree")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

/// Sum of polynomials over `vars`.
pub fn sum<'a>(vars: &Vars, items: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
    let mut acc = MPoly::zero(vars);
    for p in items {
        for (e, c) in &p.terms {
            add_term(&mut acc.terms, e.clone(), c.clone());
        }
    }
    acc
}

/// Elementary symmetric polynomial `σ_r` of the given polynomials.
pub fn elementary_of(vars: &Vars, items: &[MPoly], r: usize) -> MPoly {
    // dp[k] = σ_k of the prefix processed so far
    let mut dp = vec![MPoly::zero(vars); r + 1];
    dp[0] = MPoly::one(vars);
    for item in items {
        for k in (1..=r).rev() {
            let add = &dp[k - 1] * item;
            dp[k] = &dp[k] + &add;
        }
    }
    dp.swap_remove(r)
}
