use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::exact_poly::{
    elementary_of, format_rational, parse_rational, MPoly, Rational, VarTable, Vars,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "e")]
    Elementary,
}

/// Coordinates of a symmetric polynomial in `n` variables in the monomial
/// basis `m_λ` or the elementary basis `e_λ = e_{λ1} e_{λ2} ⋯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPolyInBasis {
    pub basis: Basis,
    pub n: usize,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymPolyInBasis {
    pub fn new(
        basis: Basis,
        n: usize,
        coeffs: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lam, c) in coeffs {
            let fits = match basis {
                Basis::Monomial => lam.len() <= n,
                Basis::Elementary => lam.largest() as usize <= n,
            };
            if !fits {
                return Err(Error::PartitionTooLarge {
                    partition: lam.parts().to_vec(),
                    n,
                });
            }
            let slot: &mut Rational = map.entry(lam).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(SymPolyInBasis {
            basis,
            n,
            coeffs: map,
        })
    }

    pub fn get(&self, lam: &Partition) -> Rational {
        self.coeffs.get(lam).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Entries ordered by weight, then descending within each weight.
    pub fn entries(&self) -> Vec<(&Partition, &Rational)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            a.weight()
                .cmp(&b.weight())
                .then_with(|| b.parts().cmp(a.parts()))
        });
        v
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Expansion in the root variables `x_vars` (which must have `n` entries).
    pub fn to_mpoly(&self, x_vars: &Vars) -> Result<MPoly> {
        if x_vars.len() != self.n {
            return Err(Error::InvalidVarTable(format!(
                "expected {} root variables",
                self.n
            )));
        }
        let mut acc = MPoly::zero(x_vars);
        for (lam, c) in &self.coeffs {
            let basis_elem = match self.basis {
                Basis::Monomial => monomial_symmetric_in(lam, x_vars)?,
                Basis::Elementary => elementary_product_in(lam, x_vars),
            };
            acc = &acc + &basis_elem.scale(c);
        }
        Ok(acc)
    }

    /// Reads the `e`-basis coordinates off a polynomial in `e1..en`.
    pub fn from_elementary_poly(q: &MPoly) -> Result<Self> {
        let n = q.vars().len();
        let entries = q
            .terms()
            .map(|(e, c)| (Partition::from_multiplicities(e), c.clone()));
        SymPolyInBasis::new(Basis::Elementary, n, entries)
    }
}

impl Serialize for SymPolyInBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            partition: &'a Partition,
            coeff: String,
        }
        let coeffs: Vec<Entry> = self
            .entries()
            .into_iter()
            .map(|(partition, c)| Entry {
                partition,
                coeff: format_rational(c),
            })
            .collect();
        let mut s = serializer.serialize_struct("SymPolyInBasis", 3)?;
        s.serialize_field("basis", &self.basis)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for SymPolyInBasis {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Entry {
            partition: Partition,
            coeff: String,
        }
        #[derive(Deserialize)]
        struct Repr {
            basis: Basis,
            n: usize,
            coeffs: Vec<Entry>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut entries = Vec::new();
        for e in repr.coeffs {
            entries.push((
                e.partition,
                parse_rational(&e.coeff).map_err(D::Error::custom)?,
            ));
        }
        SymPolyInBasis::new(repr.basis, repr.n, entries).map_err(D::Error::custom)
    }
}

/// `m_λ` in `n` variables `x1..xn`: the sum of `x^α` over the distinct
/// rearrangements `α` of `λ` padded with zeros.
pub fn monomial_symmetric(lam: &Partition, n: usize) -> Result<MPoly> {
    monomial_symmetric_in(lam, &VarTable::roots(n))
}

fn monomial_symmetric_in(lam: &Partition, x_vars: &Vars) -> Result<MPoly> {
    let n = x_vars.len();
    if lam.len() > n {
        return Err(Error::PartitionTooLarge {
            partition: lam.parts().to_vec(),
            n,
        });
    }
    let mut exps = lam.padded(n);
    exps.sort_unstable();
    let mut terms = Vec::new();
    loop {
        terms.push((exps.clone(), Rational::one()));
        if !next_permutation(&mut exps) {
            break;
        }
    }
    MPoly::from_terms(x_vars, terms)
}

/// `e_λ = σ_{λ1}(x) σ_{λ2}(x) ⋯` in `n` variables; zero when `λ1 > n`.
pub fn elementary_product(lam: &Partition, n: usize) -> MPoly {
    elementary_product_in(lam, &VarTable::roots(n))
}

fn elementary_product_in(lam: &Partition, x_vars: &Vars) -> MPoly {
    let roots: Vec<MPoly> = (0..x_vars.len()).map(|i| MPoly::var(x_vars, i)).collect();
    let mut acc = MPoly::one(x_vars);
    for &part in lam.parts() {
        if part as usize > roots.len() {
            return MPoly::zero(x_vars);
        }
        acc = &acc * &elementary_of(x_vars, &roots, part as usize);
    }
    acc
}

/// Coordinates of `e_λ` in the monomial basis, found by expanding and
/// collecting orbits.
pub fn elementary_to_monomial(lam: &Partition, n: usize) -> Result<SymPolyInBasis> {
    if lam.len() > n || lam.largest() as usize > n {
        return Err(Error::PartitionTooLarge {
            partition: lam.parts().to_vec(),
            n,
        });
    }
    monomial_coefficients(&elementary_product(lam, n))
}

/// The `m`-basis coordinates of a symmetric polynomial.
pub fn monomial_coefficients(p: &MPoly) -> Result<SymPolyInBasis> {
    check_symmetric(p)?;
    let n = p.vars().len();
    let entries = p
        .terms()
        .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
        .map(|(e, c)| (Partition::from_unsorted(e.clone()), c.clone()));
    SymPolyInBasis::new(Basis::Monomial, n, entries)
}

/// Lexicographic successor; returns false at the last permutation.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn permutation_breaks(p: &MPoly, perm: &[usize], range: std::ops::Range<usize>) -> bool {
    p.terms().any(|(e, c)| {
        let mut image = e.clone();
        for i in range.clone() {
            image[perm[i - range.start] + range.start] = e[i];
        }
        p.coeff(&image) != *c
    })
}

/// Up to this many variables every permutation is tried; beyond it the
/// group generators (a transposition and an n-cycle) are.
const FULL_ORBIT_LIMIT: usize = 6;

fn check_symmetric_range(p: &MPoly, range: std::ops::Range<usize>) -> Result<()> {
    let n = range.len();
    if n <= FULL_ORBIT_LIMIT {
        let mut perm: Vec<usize> = (0..n).collect();
        while next_permutation(&mut perm) {
            if permutation_breaks(p, &perm, range.clone()) {
                return Err(Error::NotSymmetric { witness: perm });
            }
        }
    } else {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        for perm in [swap, cycle] {
            if permutation_breaks(p, &perm, range.clone()) {
                return Err(Error::NotSymmetric { witness: perm });
            }
        }
    }
    Ok(())
}

/// Rejects polynomials that are not invariant under permuting all
/// variables, returning a permutation that moves `p`.
pub fn check_symmetric(p: &MPoly) -> Result<()> {
    check_symmetric_range(p, 0..p.vars().len())
}

fn require_degree_one(vars: &Vars, count: usize) -> Result<()> {
    if count > vars.len() || (0..count).any(|i| vars.degree(i) != 1) {
        return Err(Error::InvalidVarTable(format!(
            "the first {count} variables of [{vars}] must be degree-one roots"
        )));
    }
    Ok(())
}

/// Rewrites a symmetric polynomial in `x1..xn` as a polynomial in
/// `e1..en`, by repeatedly cancelling the lexicographically leading term.
pub fn express_in_elementary(p: &MPoly) -> Result<MPoly> {
    let n = p.vars().len();
    require_degree_one(p.vars(), n)?;
    check_symmetric(p)?;
    reduce_symmetric(p, &VarTable::elementary(n))
}

/// As [`express_in_elementary`], for a polynomial whose first `n_sym`
/// variables are the symmetric roots and whose remaining variables are
/// parameters carried along unchanged. The result lives over
/// `e1..e{n_sym}` followed by the parameters.
pub fn express_in_elementary_with_params(p: &MPoly, n_sym: usize) -> Result<MPoly> {
    let vars = p.vars();
    require_degree_one(vars, n_sym)?;
    let roots = VarTable::new(vars.vars()[..n_sym].to_vec())?;
    let params = VarTable::new(vars.vars()[n_sym..].to_vec())?;
    let target = VarTable::elementary(n_sym).concat(&params)?;

    let mut groups: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rational)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        groups
            .entry(e[n_sym..].to_vec())
            .or_default()
            .push((e[..n_sym].to_vec(), c.clone()));
    }
    let e_vars = VarTable::elementary(n_sym);
    let mut out = Vec::new();
    for (tail, terms) in groups {
        let part = MPoly::from_terms(&roots, terms)?;
        check_symmetric(&part)?;
        for (head, c) in reduce_symmetric(&part, &e_vars)?.terms() {
            let mut exps = head.clone();
            exps.extend_from_slice(&tail);
            out.push((exps, c.clone()));
        }
    }
    MPoly::from_terms(&target, out)
}

fn reduce_symmetric(p: &MPoly, e_vars: &Vars) -> Result<MPoly> {
    let x_vars = p.vars().clone();
    let n = x_vars.len();
    let roots: Vec<MPoly> = (0..n).map(|i| MPoly::var(&x_vars, i)).collect();
    let elementary: Vec<MPoly> = (1..=n).map(|r| elementary_of(&x_vars, &roots, r)).collect();
    let mut cache: HashMap<Vec<u32>, MPoly> = HashMap::new();

    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some((lead, coeff)) = rest.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Inconsistent(format!(
                "leading exponent {lead:?} is not a partition"
            )));
        }
        let a: Vec<u32> = (0..n)
            .map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0))
            .collect();
        let expansion = cache.entry(a.clone()).or_insert_with(|| {
            a.iter()
                .enumerate()
                .fold(MPoly::one(&x_vars), |acc, (i, &k)| {
                    if k == 0 {
                        acc
                    } else {
                        &acc * &elementary[i].pow(k)
                    }
                })
        });
        rest = &rest - &expansion.scale(&coeff);
        out.push((a, coeff));
    }
    MPoly::from_terms(e_vars, out)
}

/// Substitutes `e_i ↦ σ_i(x)` into a polynomial over `e1..en`.
pub fn expand_elementary(q: &MPoly, x_vars: &Vars) -> Result<MPoly> {
    let n = x_vars.len();
    if q.vars().len() != n {
        return Err(Error::InvalidVarTable(format!(
            "expected {n} elementary variables"
        )));
    }
    let roots: Vec<MPoly> = (0..n).map(|i| MPoly::var(x_vars, i)).collect();
    let images: Vec<MPoly> = (1..=n).map(|r| elementary_of(x_vars, &roots, r)).collect();
    q.substitute(&images, x_vars)
}
