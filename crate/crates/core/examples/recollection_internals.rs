//! Steps the engine by hand and prints what each chunk of a recollection
//! path holds: the choice, the recorded fix-point domains, and whether the
//! chunk also carries a full copy.

use recollect::models;
use recollect::restoration::Payload;
use recollect::search::Event;
use recollect::{Distance, Engine, Flavor, Strategy};

fn main() -> recollect::Result<()> {
    let problem = models::queens(6)?;
    let strategy = Strategy::Recollect { distance: Distance::Finite(2), adaptive: false, flavor: Flavor::VariableCentered };
    let mut engine = Engine::new(problem.instantiate()?, strategy, problem.default_mode);

    // walk down to the first failure
    while let Some(ev) = engine.step() {
        println!("{ev:?}");
        if matches!(ev, Event::Failure { .. }) {
            break;
        }
    }
    println!();
    for (i, chunk) in engine.path().chunks().iter().enumerate() {
        if let Payload::Recollect { record, copy } = &chunk.payload {
            let copy = if copy.is_some() { " + copy" } else { "" };
            println!("chunk {i}: {} ({} vars recorded{copy})", chunk.choice, record.len());
            for (var, dom) in record.entries() {
                println!("    {var} = {dom}");
            }
        }
    }

    let ev = engine.step();
    println!("\n{ev:?}");
    let s = engine.state().expect("restored state");
    for (var, dom) in s.store().iter() {
        println!("    {var} = {dom}");
    }
    println!("{:?}", engine.restore_stats());
    Ok(())
}
