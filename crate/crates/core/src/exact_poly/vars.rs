use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub degree: u32,
}

impl Var {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Var {
            name: name.into(),
            degree,
        }
    }
}

/// Ordered list of named graded variables. Exponent vectors are indexed by
/// position in this table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    vars: Vec<Var>,
}

/// Shared handle; polynomials over the same table hold clones of one `Arc`.
pub type Vars = Arc<VarTable>;

impl VarTable {
    pub fn new(vars: Vec<Var>) -> Result<Vars> {
        let mut seen = HashSet::new();
        for v in &vars {
            if v.degree == 0 {
                return Err(Error::InvalidVarTable(format!("`{}` has degree 0", v.name)));
            }
            if v.name.is_empty() || !v.name.chars().all(|c| c.is_ascii_alphanumeric()) {
                return Err(Error::InvalidVarTable(format!(
                    "bad variable name `{}`",
                    v.name
                )));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::InvalidVarTable(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        Ok(Arc::new(VarTable { vars }))
    }

    pub fn empty() -> Vars {
        Arc::new(VarTable { vars: Vec::new() })
    }

    /// `prefix1, …, prefixN` for `first..=last`, with degree given per index.
    pub fn indexed(prefix: &str, first: usize, last: usize, degree: impl Fn(usize) -> u32) -> Vars {
        let vars = (first..=last)
            .map(|i| Var::new(format!("{prefix}{i}"), degree(i)))
            .collect();
        VarTable::new(vars).expect("indexed tables are well formed")
    }

    /// Chern roots `x1..xn`, all of degree one.
    pub fn roots(n: usize) -> Vars {
        Self::indexed("x", 1, n, |_| 1)
    }

    /// Shifted roots `f1..fn`, degree one.
    pub fn shifted_roots(n: usize) -> Vars {
        Self::indexed("f", 1, n, |_| 1)
    }

    /// Chern classes `c1..cn` with `deg ci = i`.
    pub fn chern(n: usize) -> Vars {
        Self::indexed("c", 1, n, |i| i as u32)
    }

    /// Elementary symmetric polynomials `e1..en` with `deg ei = i`.
    pub fn elementary(n: usize) -> Vars {
        Self::indexed("e", 1, n, |i| i as u32)
    }

    /// The power-product symmetric functions `s1..sn`.
    pub fn s_vars(n: usize) -> Vars {
        Self::indexed("s", 1, n, |i| i as u32)
    }

    /// `u2..un`, standing for `c2(F)..cn(F)`.
    pub fn u_vars(n: usize) -> Vars {
        Self::indexed("u", 2, n, |i| i as u32)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.vars[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.vars).map(|(e, v)| e * v.degree).sum()
    }

    pub fn concat(&self, other: &VarTable) -> Result<Vars> {
        VarTable::new(self.vars.iter().chain(&other.vars).cloned().collect())
    }

    pub fn with_var(&self, var: Var) -> Result<Vars> {
        let mut vars = self.vars.clone();
        vars.push(var);
        VarTable::new(vars)
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", v.name, v.degree)?;
        }
        Ok(())
    }
}
