//! Builds a problem directly on a `State`: SEND + MORE = MONEY.
//!
//! Shows the propagation API on its own (one round of propagation and the
//! resulting domains) before handing the state to search.

use recollect::propagation::{ChangeLog, LogMode};
use recollect::search::{dfs, SearchMode};
use recollect::{State, Strategy};

fn main() -> recollect::Result<()> {
    let mut s = State::new();
    let letters = ['s', 'e', 'n', 'd', 'm', 'o', 'r', 'y'];
    let v: Vec<_> = letters.iter().map(|_| s.add_var(0, 9)).collect::<Result<_, _>>()?;
    let [sv, e, n, d, m, o, r, y] = v[..] else { unreachable!() };

    s.post_alldiff(&v)?;
    //   1000s + 100e + 10n + d + 1000m + 100o + 10r + e
    // = 10000m + 1000o + 100n + 10e + y
    s.post_linear_eq(
        &[1000, 91, -90, 1, -9000, -900, 10, -1],
        &[sv, e, n, d, m, o, r, y],
        0,
    )?;
    s.post_linear_leq(&[-1], &[sv], -1)?;
    s.post_linear_leq(&[-1], &[m], -1)?;

    let mut log = ChangeLog::new(LogMode::PreImages);
    let root = s.duplicate()?;
    let out = s.propagate(&mut log);
    println!("root propagation: {:?} after {} propagator runs", out.outcome, out.executions);
    for (var, pre) in log.entries() {
        println!("  {} {} -> {}", letters[var.index()], pre, s.domain(var));
    }

    let result = dfs(root, Strategy::Trail, SearchMode::AllSolutions);
    for sol in &result.solutions {
        let word = |w: &str| -> String {
            w.chars().map(|c| sol[letters.iter().position(|&l| l == c).unwrap()].to_string()).collect()
        };
        println!("{} + {} = {}", word("send"), word("more"), word("money"));
    }
    Ok(())
}
