// Exhaustive search over colour patterns for colourings with no canonical copy.

use canonical_ramsey::oracle::{all_avoiders, avoider_search, er_number, AvoiderSearch, SearchStatus};
use canonical_ramsey::Budget;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let w = avoider_search(2, 2, 3, &mut Budget::unlimited())?.expect("K_{3,3} has an avoider");
    println!("avoider on 3x3: {:?}", w.colours());

    let (avoiders, stats) = all_avoiders(2, 2, 3, true, &mut Budget::unlimited())?;
    println!("{} avoiders, {} nodes", avoiders.len(), stats.nodes);

    let scan = er_number(2, 2, 4, &mut Budget::new(10_000_000))?;
    println!("ER(2,2) {:?}, avoided at {:?}", scan.value, scan.avoided);

    // a search interrupted and resumed from its checkpoint
    let mut s = AvoiderSearch::new(2, 2, 3, false)?;
    let first = s.run(&mut Budget::new(50));
    let mut resumed = AvoiderSearch::resume(&s.checkpoint())?;
    let second = resumed.run(&mut Budget::unlimited());
    println!("{first:?} then {}", matches!(second, SearchStatus::Found(_)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
