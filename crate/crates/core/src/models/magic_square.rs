use super::{invalid, ProblemSpec};
use crate::domain::VarId;
use crate::error::Result;
use crate::propagation::Relation;
use crate::search::SearchMode;

pub fn magic_constant(n: i64) -> i64 {
    n * (n * n + 1) / 2
}

/// Cells `x[r*n + c]` hold 1..n², rows, columns and both diagonals sum to
/// the magic constant. The top-left corner is smaller than the two corners
/// adjacent to it.
pub fn magic_square(n: i64) -> Result<ProblemSpec> {
    if n < 3 {
        return Err(invalid("magic-square", format!("n must be at least 3, got {n}")));
    }
    let mut p = ProblemSpec::new("magic-square", vec![n], SearchMode::FirstSolution);
    let k = n as usize;
    let x: Vec<VarId> = (0..k * k).map(|_| p.var(1, n * n)).collect();
    let m = magic_constant(n);
    p.alldiff(&x);
    let line = |p: &mut ProblemSpec, cells: Vec<VarId>| {
        let terms: Vec<(i64, VarId)> = cells.into_iter().map(|v| (1, v)).collect();
        p.linear(&terms, Relation::Eq, m);
    };
    for r in 0..k {
        line(&mut p, (0..k).map(|c| x[r * k + c]).collect());
    }
    for c in 0..k {
        line(&mut p, (0..k).map(|r| x[r * k + c]).collect());
    }
    line(&mut p, (0..k).map(|i| x[i * k + i]).collect());
    line(&mut p, (0..k).map(|i| x[i * k + (k - 1 - i)]).collect());
    p.linear(&[(1, x[0]), (-1, x[k - 1])], Relation::Leq, -1);
    p.linear(&[(1, x[0]), (-1, x[(k - 1) * k])], Relation::Leq, -1);
    Ok(p)
}
