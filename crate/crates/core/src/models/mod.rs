//! Benchmark problems.
//!
//! A [`ProblemSpec`] is a declarative description (variable bounds plus an
//! ordered list of constraints) that [`ProblemSpec::instantiate`] turns into
//! a fresh root [`State`]. Construction is deterministic: equal parameters
//! give equal variable numbering and therefore equal search trees.

mod alpha;
mod golomb;
mod langford;
mod magic_square;
mod queens;

pub use alpha::{alpha, ALPHA_EQUATIONS};
pub use golomb::golomb;
pub use langford::{langford, sequence as langford_sequence};
pub use magic_square::{magic_constant, magic_square};
pub use queens::{queens, queens_global, QueensVariant};

use std::fmt;

use crate::domain::VarId;
use crate::error::{Error, Result};
use crate::propagation::{Propagator, Relation};
use crate::search::SearchMode;
use crate::state::State;

/// Names accepted by [`build`].
pub const MODEL_NAMES: [&str; 6] = ["queens", "queens-s", "magic-square", "alpha", "langford", "golomb"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub params: Vec<i64>,
    /// Initial bounds per variable, indexed by `VarId`.
    pub vars: Vec<(i64, i64)>,
    pub constraints: Vec<Propagator>,
    pub objective: Option<VarId>,
    pub default_mode: SearchMode,
}

impl ProblemSpec {
    fn new(name: &'static str, params: Vec<i64>, default_mode: SearchMode) -> ProblemSpec {
        ProblemSpec { name, params, vars: Vec::new(), constraints: Vec::new(), objective: None, default_mode }
    }

    fn var(&mut self, lo: i64, hi: i64) -> VarId {
        self.vars.push((lo, hi));
        VarId::from(self.vars.len() - 1)
    }

    fn neq(&mut self, x: VarId, y: VarId, cx: i64, cy: i64) {
        self.constraints.push(Propagator::NeqOffset { x, y, cx, cy });
    }

    fn alldiff(&mut self, vars: &[VarId]) {
        self.constraints.push(Propagator::AllDifferent { vars: vars.into() });
    }

    fn linear(&mut self, terms: &[(i64, VarId)], rel: Relation, rhs: i64) {
        self.constraints.push(Propagator::Linear { terms: terms.into(), rel, rhs });
    }

    fn minimize(&mut self, objective: VarId) {
        self.objective = Some(objective);
        self.default_mode = SearchMode::BestSolution { objective };
    }

    /// `name:p1,p2`, or just `name` without parameters.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.to_string()
        } else {
            format!("{}:{}", self.name, self.params_string())
        }
    }

    /// Parameters joined with `:` (safe inside a CSV field).
    pub fn params_string(&self) -> String {
        self.params.iter().map(i64::to_string).collect::<Vec<_>>().join(":")
    }

    /// Search mode for `name`: `first`, `all` or `best` (needs an objective).
    pub fn mode(&self, name: &str) -> Result<SearchMode> {
        match name {
            "first" => Ok(SearchMode::FirstSolution),
            "all" => Ok(SearchMode::AllSolutions),
            "best" => self
                .objective
                .map(|objective| SearchMode::BestSolution { objective })
                .ok_or_else(|| Error::Usage(format!("model {} has no objective", self.label()))),
            "default" => Ok(self.default_mode),
            _ => Err(Error::Usage(format!("unknown mode `{name}` (known: first, all, best, default)"))),
        }
    }

    /// A fresh, unpropagated root state.
    pub fn instantiate(&self) -> Result<State> {
        let mut s = State::new();
        for &(lo, hi) in &self.vars {
            s.add_var(lo, hi)?;
        }
        for c in &self.constraints {
            match c {
                Propagator::NeqOffset { x, y, cx, cy } => s.post_neq_offset(*x, *y, *cx, *cy)?,
                Propagator::AllDifferent { vars } => s.post_alldiff(vars)?,
                Propagator::Linear { terms, rel, rhs } => {
                    let (coeffs, vars): (Vec<i64>, Vec<VarId>) = terms.iter().copied().unzip();
                    match rel {
                        Relation::Eq => s.post_linear_eq(&coeffs, &vars, *rhs)?,
                        Relation::Leq => s.post_linear_leq(&coeffs, &vars, *rhs)?,
                    }
                }
            };
        }
        Ok(s)
    }

    /// Re-evaluates every constraint and initial bound on a raw assignment.
    pub fn check(&self, solution: &[i64]) -> bool {
        solution.len() == self.vars.len()
            && self.vars.iter().zip(solution).all(|(&(lo, hi), &v)| lo <= v && v <= hi)
            && self.constraints.iter().all(|c| c.holds(solution))
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} vars, {} constraints)", self.label(), self.vars.len(), self.constraints.len())
    }
}

fn invalid(model: &str, reason: impl Into<String>) -> Error {
    Error::InvalidModel { model: model.to_string(), reason: reason.into() }
}

/// Builds a model from `name[:p1[,p2]]`, e.g. `queens:8`, `langford:2,4`,
/// `golomb:7`, `alpha`. Parameters may be separated by `,` or `:`.
pub fn build(spec: &str) -> Result<ProblemSpec> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params: Vec<i64> = rest
        .split([',', ':'])
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().parse().map_err(|_| invalid(name, format!("bad parameter `{p}`"))))
        .collect::<Result<_>>()?;
    let one = |default: Option<i64>| -> Result<i64> {
        match (params.as_slice(), default) {
            ([n], _) => Ok(*n),
            ([], Some(d)) => Ok(d),
            _ => Err(invalid(name, "expected exactly one parameter")),
        }
    };
    match name {
        "queens" => queens(one(None)?),
        "queens-s" => queens_global(one(None)?),
        "magic-square" => magic_square(one(None)?),
        "alpha" if params.is_empty() => Ok(alpha()),
        "alpha" => Err(invalid(name, "takes no parameters")),
        "langford" => match params.as_slice() {
            [k, n] => langford(*k, *n),
            _ => Err(invalid(name, "expected two parameters k,n")),
        },
        "golomb" => golomb(one(None)?),
        _ => Err(Error::UnknownModel { name: name.to_string(), known: MODEL_NAMES.join(", ") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry() {
        assert_eq!(build("queens:8").unwrap().label(), "queens:8");
        assert_eq!(build("langford:2,4").unwrap().params, vec![2, 4]);
        assert_eq!(build("langford:2:4").unwrap().label(), "langford:2:4");
        assert_eq!(build("alpha").unwrap().vars.len(), 26);
        assert!(matches!(build("sudoku:9"), Err(Error::UnknownModel { .. })));
        assert!(matches!(build("queens"), Err(Error::InvalidModel { .. })));
        assert!(matches!(build("queens:x"), Err(Error::InvalidModel { .. })));
        assert!(matches!(build("alpha:3"), Err(Error::InvalidModel { .. })));
    }

    #[test]
    fn deterministic_construction() {
        for name in ["queens:10", "queens-s:10", "magic-square:4", "alpha", "langford:3,9", "golomb:8"] {
            assert_eq!(build(name).unwrap(), build(name).unwrap());
            let p = build(name).unwrap();
            assert_eq!(p.instantiate().unwrap().var_count(), p.vars.len());
        }
    }

    #[test]
    fn modes() {
        let g = golomb(5).unwrap();
        assert!(matches!(g.mode("best"), Ok(SearchMode::BestSolution { .. })));
        assert!(queens(5).unwrap().mode("best").is_err());
        assert!(queens(5).unwrap().mode("some").is_err());
    }
}
