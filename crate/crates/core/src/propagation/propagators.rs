//! Propagator definitions and their filtering rules.
//!
//! Disequality and all-different filter at value consistency, linear
//! relations at bounds consistency. Propagators hold no mutable state: all
//! they know is read from the store when they run.

use crate::domain::{Update, VarId, Wipeout};
use crate::error::{Error, Result};
use crate::propagation::ChangeLog;
use crate::state::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId(pub u32);

impl PropId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Leq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagator {
    /// `x + cx != y + cy`
    NeqOffset { x: VarId, y: VarId, cx: i64, cy: i64 },
    /// Pairwise distinct values.
    AllDifferent { vars: Box<[VarId]> },
    /// `sum(coeff * var) <rel> rhs`
    Linear { terms: Box<[(i64, VarId)]>, rel: Relation, rhs: i64 },
}

impl Propagator {
    pub fn vars(&self) -> Vec<VarId> {
        match self {
            Propagator::NeqOffset { x, y, .. } => vec![*x, *y],
            Propagator::AllDifferent { vars } => vars.to_vec(),
            Propagator::Linear { terms, .. } => terms.iter().map(|&(_, v)| v).collect(),
        }
    }

    /// Evaluates the constraint on a complete assignment.
    pub fn holds(&self, values: &[i64]) -> bool {
        let val = |v: VarId| values[v.index()];
        match self {
            Propagator::NeqOffset { x, y, cx, cy } => val(*x) + cx != val(*y) + cy,
            Propagator::AllDifferent { vars } => {
                let mut seen: Vec<i64> = vars.iter().map(|&v| val(v)).collect();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            }
            Propagator::Linear { terms, rel, rhs } => {
                let lhs: i64 = terms.iter().map(|&(a, v)| a * val(v)).sum();
                match rel {
                    Relation::Eq => lhs == *rhs,
                    Relation::Leq => lhs <= *rhs,
                }
            }
        }
    }

    pub(crate) fn run(&self, id: PropId, s: &mut State, log: &mut ChangeLog) -> Result<(), Wipeout> {
        match self {
            Propagator::NeqOffset { x, y, cx, cy } => {
                if let Some(vx) = s.domain(*x).value() {
                    s.remove_from(*y, vx + cx - cy, log, Some(id))?;
                }
                if let Some(vy) = s.domain(*y).value() {
                    s.remove_from(*x, vy + cy - cx, log, Some(id))?;
                }
                Ok(())
            }
            Propagator::AllDifferent { vars } => all_different(vars, id, s, log),
            Propagator::Linear { terms, rel, rhs } => linear(terms, *rel, *rhs, id, s, log),
        }
    }
}

fn all_different(vars: &[VarId], id: PropId, s: &mut State, log: &mut ChangeLog) -> Result<(), Wipeout> {
    let mut done = vec![false; vars.len()];
    let mut pending: Vec<usize> = (0..vars.len()).filter(|&i| s.domain(vars[i]).is_fixed()).collect();
    pending.reverse();
    while let Some(i) = pending.pop() {
        if done[i] {
            continue;
        }
        done[i] = true;
        let v = s.domain(vars[i]).min();
        for (j, &other) in vars.iter().enumerate() {
            if j == i {
                continue;
            }
            if s.remove_from(other, v, log, Some(id))? && !done[j] && s.domain(other).is_fixed() {
                pending.push(j);
            }
        }
    }
    Ok(())
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

fn term_bounds(a: i64, s: &State, v: VarId) -> (i64, i64) {
    let d = s.domain(v);
    if a > 0 {
        (a * d.min(), a * d.max())
    } else {
        (a * d.max(), a * d.min())
    }
}

fn linear(
    terms: &[(i64, VarId)],
    rel: Relation,
    rhs: i64,
    id: PropId,
    s: &mut State,
    log: &mut ChangeLog,
) -> Result<(), Wipeout> {
    loop {
        let mut lmin: i64 = 0;
        let mut lmax: i64 = 0;
        for &(a, v) in terms {
            let (lo, hi) = term_bounds(a, s, v);
            lmin += lo;
            lmax += hi;
        }
        let mut changed = false;
        for &(a, v) in terms {
            let (tmin, tmax) = term_bounds(a, s, v);
            // a*v must lie in [lo, hi]
            let hi = rhs - (lmin - tmin);
            let lo = match rel {
                Relation::Eq => rhs - (lmax - tmax),
                Relation::Leq => i64::MIN / 4,
            };
            let (vlo, vhi) = if a > 0 {
                (ceil_div(lo, a), floor_div(hi, a))
            } else {
                (ceil_div(hi, a), floor_div(lo, a))
            };
            let upd: Update = if vlo > vhi {
                s.tighten_from(v, 1, 0, log, Some(id))
            } else {
                s.tighten_from(v, vlo, vhi, log, Some(id))
            };
            if upd? {
                changed = true;
                let (nmin, nmax) = term_bounds(a, s, v);
                lmin += nmin - tmin;
                lmax += nmax - tmax;
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// All propagators of a problem plus the variable subscription lists.
#[derive(Debug, Clone, Default)]
pub struct PropagatorSet {
    props: Vec<Propagator>,
    subs: Vec<Vec<PropId>>,
}

impl PropagatorSet {
    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn get(&self, id: PropId) -> &Propagator {
        &self.props[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Propagator> + '_ {
        self.props.iter()
    }

    pub fn subscribers(&self, var: VarId) -> &[PropId] {
        self.subs.get(var.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn ensure_vars(&mut self, n: usize) {
        if self.subs.len() < n {
            self.subs.resize_with(n, Vec::new);
        }
    }

    fn push(&mut self, p: Propagator) -> PropId {
        let id = PropId(self.props.len() as u32);
        let mut vars = p.vars();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            self.subs[v.index()].push(id);
        }
        self.props.push(p);
        id
    }
}

impl State {
    fn post(&mut self, p: Propagator) -> Result<PropId> {
        for v in p.vars() {
            self.check_var(v)?;
        }
        let id = self.props_mut().push(p);
        self.schedule(id);
        Ok(id)
    }

    /// Posts `x + cx != y + cy`.
    pub fn post_neq_offset(&mut self, x: VarId, y: VarId, cx: i64, cy: i64) -> Result<PropId> {
        if x == y {
            return Err(Error::InvalidConstraint(format!("disequality needs two distinct variables, got {x} twice")));
        }
        self.post(Propagator::NeqOffset { x, y, cx, cy })
    }

    pub fn post_alldiff(&mut self, vars: &[VarId]) -> Result<PropId> {
        if vars.len() < 2 {
            return Err(Error::InvalidConstraint("all-different needs at least two variables".into()));
        }
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConstraint("all-different over a repeated variable".into()));
        }
        self.post(Propagator::AllDifferent { vars: vars.into() })
    }

    pub fn post_linear_eq(&mut self, coeffs: &[i64], vars: &[VarId], c: i64) -> Result<PropId> {
        self.post_linear(coeffs, vars, Relation::Eq, c)
    }

    pub fn post_linear_leq(&mut self, coeffs: &[i64], vars: &[VarId], c: i64) -> Result<PropId> {
        self.post_linear(coeffs, vars, Relation::Leq, c)
    }

    fn post_linear(&mut self, coeffs: &[i64], vars: &[VarId], rel: Relation, c: i64) -> Result<PropId> {
        if coeffs.len() != vars.len() || vars.is_empty() {
            return Err(Error::InvalidConstraint(format!(
                "linear constraint with {} coefficients and {} variables",
                coeffs.len(),
                vars.len()
            )));
        }
        if coeffs.contains(&0) {
            return Err(Error::InvalidConstraint("zero coefficient in linear constraint".into()));
        }
        let terms = coeffs.iter().copied().zip(vars.iter().copied()).collect();
        self.post(Propagator::Linear { terms, rel, rhs: c })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::propagation::{LogMode, Outcome};

    fn run(s: &mut State) -> Outcome {
        let mut log = ChangeLog::new(LogMode::ChangedOnly);
        s.propagate(&mut log).outcome
    }

    #[test]
    fn division_rounding() {
        assert_eq!(floor_div(7, 2), 3);
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(floor_div(7, -2), -4);
        assert_eq!(floor_div(-7, -2), 3);
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(7, -2), -3);
        assert_eq!(ceil_div(-7, -2), 4);
        assert_eq!(ceil_div(6, 3), 2);
    }

    #[test]
    fn neq_offset_fires_on_fixed_side() {
        let mut s = State::new();
        let x = s.add_var(3, 3).unwrap();
        let y = s.add_var(1, 8).unwrap();
        s.post_neq_offset(x, y, 0, 1).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert!(!s.domain(y).contains(2));
        assert_eq!(s.domain(y).size(), 7);

        let mut s = State::new();
        let x = s.add_var(1, 8).unwrap();
        let y = s.add_var(1, 8).unwrap();
        s.post_neq_offset(x, y, 0, 1).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert_eq!(s.domain(y), &Domain::new(1, 8).unwrap());

        let mut s = State::new();
        let x = s.add_var(3, 3).unwrap();
        let y = s.add_var(2, 2).unwrap();
        s.post_neq_offset(x, y, 0, 1).unwrap();
        assert_eq!(run(&mut s), Outcome::Inconsistency);
    }

    #[test]
    fn alldiff_chains() {
        let mut s = State::new();
        let x = s.add_var(1, 1).unwrap();
        let y = s.add_var(1, 2).unwrap();
        let z = s.add_var(1, 3).unwrap();
        s.post_alldiff(&[x, y, z]).unwrap();
        assert_eq!(run(&mut s), Outcome::Solved);
        assert_eq!(s.store().values(), Some(vec![1, 2, 3]));

        let mut s = State::new();
        let v: Vec<VarId> = (0..4).map(|_| s.add_var(1, 4).unwrap()).collect();
        s.post_alldiff(&v).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert!(v.iter().all(|&x| s.domain(x).size() == 4));

        let mut s = State::new();
        let x = s.add_var(1, 1).unwrap();
        let y = s.add_var(1, 1).unwrap();
        s.post_alldiff(&[x, y]).unwrap();
        assert_eq!(run(&mut s), Outcome::Inconsistency);
    }

    #[test]
    fn linear_eq_bounds() {
        let mut s = State::new();
        let x = s.add_var(1, 9).unwrap();
        let y = s.add_var(1, 9).unwrap();
        s.post_linear_eq(&[1, 1], &[x, y], 10).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert_eq!(s.domain(x), &Domain::new(1, 9).unwrap());

        let mut s = State::new();
        let x = s.add_var(1, 3).unwrap();
        let y = s.add_var(1, 9).unwrap();
        s.post_linear_eq(&[1, 1], &[x, y], 10).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert_eq!(s.domain(y), &Domain::new(7, 9).unwrap());

        let mut s = State::new();
        let x = s.add_var(1, 2).unwrap();
        let y = s.add_var(1, 2).unwrap();
        s.post_linear_eq(&[1, 1], &[x, y], 10).unwrap();
        assert_eq!(run(&mut s), Outcome::Inconsistency);
    }

    #[test]
    fn linear_leq_strict_order() {
        let mut s = State::new();
        let x = s.add_var(1, 9).unwrap();
        let y = s.add_var(1, 9).unwrap();
        s.post_linear_leq(&[1, -1], &[x, y], -1).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert_eq!(s.domain(x), &Domain::new(1, 8).unwrap());
        assert_eq!(s.domain(y), &Domain::new(2, 9).unwrap());

        let mut s = State::new();
        let x = s.add_var(5, 5).unwrap();
        let y = s.add_var(1, 9).unwrap();
        s.post_linear_leq(&[1, -1], &[x, y], -1).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert_eq!(s.domain(y), &Domain::new(6, 9).unwrap());

        let mut s = State::new();
        let x = s.add_var(9, 9).unwrap();
        let y = s.add_var(1, 9).unwrap();
        s.post_linear_leq(&[1, -1], &[x, y], -1).unwrap();
        assert_eq!(run(&mut s), Outcome::Inconsistency);
    }

    #[test]
    fn linear_with_scaled_coefficients() {
        // 3x - 2y = 1, x in [0,10], y in [0,10]: x in [1,7], y in [1,10]
        let mut s = State::new();
        let x = s.add_var(0, 10).unwrap();
        let y = s.add_var(0, 10).unwrap();
        s.post_linear_eq(&[3, -2], &[x, y], 1).unwrap();
        assert_eq!(run(&mut s), Outcome::FixPoint);
        assert_eq!(s.domain(x), &Domain::new(1, 7).unwrap());
        assert_eq!(s.domain(y), &Domain::new(1, 10).unwrap());
    }

    #[test]
    fn post_validation() {
        let mut s = State::new();
        let x = s.add_var(0, 3).unwrap();
        assert!(s.post_neq_offset(x, x, 0, 1).is_err());
        assert!(s.post_alldiff(&[x]).is_err());
        assert!(s.post_linear_eq(&[1, 2], &[x], 3).is_err());
        assert!(s.post_linear_eq(&[0], &[x], 3).is_err());
        assert!(matches!(s.post_alldiff(&[x, VarId(7)]), Err(Error::UnknownVariable(_))));
        assert_eq!(s.propagator_count(), 0);
    }

    #[test]
    fn holds_evaluates_raw_assignment() {
        let p = Propagator::Linear { terms: vec![(2, VarId(0)), (-1, VarId(1))].into(), rel: Relation::Leq, rhs: 3 };
        assert!(p.holds(&[2, 1]));
        assert!(!p.holds(&[3, 1]));
        let q = Propagator::NeqOffset { x: VarId(0), y: VarId(1), cx: 0, cy: 1 };
        assert!(!q.holds(&[3, 2]));
        assert!(q.holds(&[3, 3]));
    }
}
