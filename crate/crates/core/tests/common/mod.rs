//! Random small problems for property tests.

#![allow(dead_code)]

use proptest::prelude::*;
use recollect::propagation::{ChangeLog, LogMode, Outcome};
use recollect::restoration::rollback;
use recollect::search::branch;
use recollect::models::ProblemSpec;
use recollect::propagation::{Propagator, Relation};
use recollect::{SearchMode, VarId};

pub fn arb_constraint(nvars: usize) -> impl Strategy<Value = Propagator> {
    let var = 0..nvars as u32;
    prop_oneof![
        (var.clone(), var.clone(), -2i64..=2, -2i64..=2)
            .prop_filter("distinct variables", |(x, y, _, _)| x != y)
            .prop_map(|(x, y, cx, cy)| Propagator::NeqOffset { x: VarId(x), y: VarId(y), cx, cy }),
        proptest::sample::subsequence((0..nvars as u32).collect::<Vec<_>>(), 2..=nvars.max(2))
            .prop_map(|vs| Propagator::AllDifferent { vars: vs.into_iter().map(VarId).collect() }),
        (proptest::collection::vec((-3i64..=3, var), 1..=3), any::<bool>(), -6i64..=10)
            .prop_filter_map("nonzero coefficients on distinct variables", |(terms, eq, rhs)| {
                let mut seen = Vec::new();
                let mut out = Vec::new();
                for (a, v) in terms {
                    if a != 0 && !seen.contains(&v) {
                        seen.push(v);
                        out.push((a, VarId(v)));
                    }
                }
                (!out.is_empty()).then(|| Propagator::Linear {
                    terms: out.into(),
                    rel: if eq { Relation::Eq } else { Relation::Leq },
                    rhs,
                })
            }),
    ]
}

/// 2..=`max_vars` variables with bounds inside [-3, 6] and up to
/// `max_constraints` random constraints.
pub fn arb_problem(max_vars: usize, max_constraints: usize) -> impl Strategy<Value = ProblemSpec> {
    (2..=max_vars)
        .prop_flat_map(move |n| {
            (
                proptest::collection::vec((-3i64..=3, 0i64..=3), n),
                proptest::collection::vec(arb_constraint(n), 0..=max_constraints),
            )
        })
        .prop_map(|(bounds, constraints)| ProblemSpec {
            name: "random",
            params: Vec::new(),
            vars: bounds.into_iter().map(|(lo, w)| (lo, lo + w)).collect(),
            constraints,
            objective: None,
            default_mode: SearchMode::AllSolutions,
        })
}

/// Every assignment within the initial bounds that satisfies the problem,
/// in lexicographic order.
pub fn brute_force(p: &ProblemSpec) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut values: Vec<i64> = p.vars.iter().map(|&(lo, _)| lo).collect();
    loop {
        if p.check(&values) {
            out.push(values.clone());
        }
        let mut i = values.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if values[i] < p.vars[i].1 {
                values[i] += 1;
                for (v, &(lo, _)) in values[i + 1..].iter_mut().zip(&p.vars[i + 1..]) {
                    *v = lo;
                }
                break;
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum Op {
    Remove(i64),
    Tighten(i64, i64),
}

pub fn arb_op() -> impl Strategy<Value = Op> {
    prop_oneof![
        (-12i64..12).prop_map(Op::Remove),
        (-12i64..12, -12i64..12).prop_map(|(a, b)| Op::Tighten(a, b)),
    ]
}

/// Applies random mutations (value removals, bound tightenings, branching
/// commits with propagation) after a fix point and checks that undoing the
/// pre-image log restores the store exactly.
pub fn trail_round_trip(p: &ProblemSpec, ops: &[(u32, Op, bool)]) -> Result<(), TestCaseError> {
    let mut s = p.instantiate().unwrap();
    let mut log = ChangeLog::new(LogMode::PreImages);
    if s.propagate(&mut log).outcome != Outcome::FixPoint {
        return Ok(());
    }
    log.clear();
    let snapshot = s.duplicate().unwrap();
    for (var, op, propagate) in ops {
        let var = VarId(var % s.var_count() as u32);
        let _ = match *op {
            Op::Remove(v) => s.remove_value(var, v, &mut log),
            Op::Tighten(a, b) => s.tighten(var, a.min(b), a.max(b), &mut log),
        };
        if *propagate && s.propagate(&mut log).outcome != Outcome::FixPoint {
            break;
        }
        if let Ok(Some(c)) = branch(&s) {
            let _ = s.tighten(c.var, c.pivot, c.pivot, &mut log);
        }
    }
    rollback(&mut s, &log.take_entries());
    prop_assert_eq!(s.store(), snapshot.store());
    prop_assert!(s.is_fix_point());
    Ok(())
}

