use super::{invalid, ProblemSpec};
use crate::domain::VarId;
use crate::error::Result;
use crate::propagation::Relation;
use crate::search::SearchMode;

/// Golomb ruler with `m` marks, minimizing the last mark.
///
/// Variables: marks `x0..x(m-1)` in `[0, m²]` followed by the differences
/// `d_ij = x_j - x_i` for `i < j` (row-major). Marks increase strictly,
/// `x0 = 0`, differences are pairwise distinct, and `d_01 < d_(m-2)(m-1)`
/// removes the mirror image. A span of `j - i` marks covers at least
/// `(j-i)(j-i+1)/2`, which bounds marks and differences from below.
pub fn golomb(m: i64) -> Result<ProblemSpec> {
    if m < 2 {
        return Err(invalid("golomb", format!("need at least 2 marks, got {m}")));
    }
    let mut p = ProblemSpec::new("golomb", vec![m], SearchMode::AllSolutions);
    let ub = m * m;
    let tri = |k: i64| k * (k + 1) / 2;
    let x: Vec<VarId> = (0..m).map(|i| if i == 0 { p.var(0, 0) } else { p.var(tri(i), ub) }).collect();
    let k = m as usize;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let diffs: Vec<VarId> = pairs.iter().map(|&(i, j)| p.var(tri((j - i) as i64), ub)).collect();
    for w in x.windows(2) {
        p.linear(&[(1, w[0]), (-1, w[1])], Relation::Leq, -1);
    }
    for (&(i, j), &d) in pairs.iter().zip(&diffs) {
        p.linear(&[(1, d), (-1, x[j]), (1, x[i])], Relation::Eq, 0);
    }
    if diffs.len() > 1 {
        p.alldiff(&diffs);
    }
    if k > 2 {
        // d_01 is the first difference, d_(m-2)(m-1) the last
        p.linear(&[(1, diffs[0]), (-1, diffs[diffs.len() - 1])], Relation::Leq, -1);
    }
    p.minimize(x[k - 1]);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let p = golomb(4).unwrap();
        assert_eq!(p.vars.len(), 4 + 6);
        assert_eq!(p.objective, Some(VarId(3)));
        // marks 0 1 4 6, differences 1 4 6 3 5 2
        assert!(p.check(&[0, 1, 4, 6, 1, 4, 6, 3, 5, 2]));
        // mirror 0 2 5 6 violates the symmetry break
        assert!(!p.check(&[0, 2, 5, 6, 2, 5, 6, 3, 4, 1]));
        assert!(golomb(1).is_err());
        assert!(golomb(2).unwrap().check(&[0, 1, 1]));
    }
}
