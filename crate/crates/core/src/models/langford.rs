use super::{invalid, ProblemSpec};
use crate::domain::VarId;
use crate::error::Result;
use crate::propagation::Relation;
use crate::search::SearchMode;

/// Langford's problem L(k, n): arrange `k` copies of each of 1..n in a row
/// of length `k*n` so that consecutive copies of `v` have `v` numbers in
/// between. Variable `(v-1)*k + j` is the position of the `j`-th copy of
/// `v`. Mirror images are not excluded.
pub fn langford(k: i64, n: i64) -> Result<ProblemSpec> {
    if k < 2 || n < 2 {
        return Err(invalid("langford", format!("need k >= 2 and n >= 2, got k={k}, n={n}")));
    }
    let mut p = ProblemSpec::new("langford", vec![k, n], SearchMode::AllSolutions);
    let len = k * n;
    let mut all = Vec::new();
    for v in 1..=n {
        let pos: Vec<VarId> = (0..k).map(|_| p.var(0, len - 1)).collect();
        for w in pos.windows(2) {
            p.linear(&[(1, w[1]), (-1, w[0])], Relation::Eq, v + 1);
        }
        all.extend(pos);
    }
    p.alldiff(&all);
    Ok(p)
}

/// Renders a solution as the sequence of numbers it places.
pub fn sequence(k: i64, n: i64, solution: &[i64]) -> Vec<i64> {
    let mut seq = vec![0; (k * n) as usize];
    for (i, &pos) in solution.iter().enumerate() {
        seq[pos as usize] = i as i64 / k + 1;
    }
    seq
}
