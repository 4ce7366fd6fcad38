use super::{invalid, ProblemSpec};
use crate::domain::VarId;
use crate::error::Result;
use crate::propagation::Relation;
use crate::search::SearchMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueensVariant {
    /// One disequality per pair and direction.
    Disequalities,
    /// Three all-different constraints over rows and both diagonals.
    Global,
}

/// `n` queens, one per column, variable `i` is the row of queen `i`, with
/// pairwise disequalities.
pub fn queens(n: i64) -> Result<ProblemSpec> {
    build(n, QueensVariant::Disequalities)
}

/// `n` queens with all-different constraints. The diagonals use auxiliary
/// variables `x_i + i` and `x_i - i`.
pub fn queens_global(n: i64) -> Result<ProblemSpec> {
    build(n, QueensVariant::Global)
}

fn build(n: i64, variant: QueensVariant) -> Result<ProblemSpec> {
    let name = match variant {
        QueensVariant::Disequalities => "queens",
        QueensVariant::Global => "queens-s",
    };
    if n < 4 {
        return Err(invalid(name, format!("n must be at least 4, got {n}")));
    }
    let mut p = ProblemSpec::new(name, vec![n], SearchMode::FirstSolution);
    let x: Vec<VarId> = (0..n).map(|_| p.var(0, n - 1)).collect();
    match variant {
        QueensVariant::Disequalities => {
            for i in 0..x.len() {
                for j in i + 1..x.len() {
                    let (ci, cj) = (i as i64, j as i64);
                    p.neq(x[i], x[j], 0, 0);
                    p.neq(x[i], x[j], ci, cj);
                    p.neq(x[i], x[j], -ci, -cj);
                }
            }
        }
        QueensVariant::Global => {
            let up: Vec<VarId> = (0..n).map(|i| p.var(i, n - 1 + i)).collect();
            let down: Vec<VarId> = (0..n).map(|i| p.var(-i, n - 1 - i)).collect();
            for i in 0..x.len() {
                let c = i as i64;
                p.linear(&[(1, up[i]), (-1, x[i])], Relation::Eq, c);
                p.linear(&[(1, down[i]), (-1, x[i])], Relation::Eq, -c);
            }
            p.alldiff(&x);
            p.alldiff(&up);
            p.alldiff(&down);
        }
    }
    Ok(p)
}
