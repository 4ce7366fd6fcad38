//! Lockstep verification: two strategies step through the same tree and
//! their stores are compared after every restore. The second half corrupts
//! one recorded domain to show how a divergence is reported.

use recollect::bench::{lockstep_engines, verify_lockstep, LockstepOptions};
use recollect::models;
use recollect::restoration::Payload;
use recollect::{Distance, Domain, Engine, Flavor, Strategy};

fn main() -> recollect::Result<()> {
    let problem = models::build("golomb:6")?;
    let root = problem.instantiate()?;
    let mode = problem.default_mode;

    for b in Strategy::standard_set(4).into_iter().skip(1) {
        println!("{}", verify_lockstep(&root, mode, Strategy::Copy, b)?);
    }

    let recollect = Strategy::Recollect { distance: Distance::Infinite, adaptive: false, flavor: Flavor::ChunkCentered };
    let mut a = Engine::new(root.duplicate()?, Strategy::Copy, mode);
    let mut b = Engine::new(root.duplicate()?, recollect, mode);
    while b.path().len() < 3 {
        a.step();
        b.step();
    }
    if let Payload::Recollect { record, .. } = &mut b.path_mut().chunks_mut()[2].payload {
        let var = record.entries()[0].0;
        record.corrupt(var, Domain::singleton(-7));
        println!("corrupted the record of {var} in chunk 2");
    }
    println!("{}", lockstep_engines(a, b, LockstepOptions::default())?);
    Ok(())
}
