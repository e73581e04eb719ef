// Counting and extracting complete sub-boxes of a dense hypergraph.

use canonical_ramsey::extremal::{
    assumption_holds, count_complete_boxes, count_lower_bound, extract_complete_box, ExtractMode,
    ExtremalInstance,
};
use canonical_ramsey::{Budget, ClassSizes, PartiteHypergraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = PartiteHypergraph::random(ClassSizes::new(vec![10, 12])?, 0.6, &mut rng);
    let inst = ExtremalInstance::new(h, vec![1, 3])?;
    let mut budget = Budget::new(1_000_000);

    let count = count_complete_boxes(&inst, &mut budget)?;
    let check = assumption_holds(&inst);
    println!("complete boxes {count}, lower bound {}, hypothesis {}", count_lower_bound(&inst), check.holds());

    for mode in [ExtractMode::ProofGuided, ExtractMode::Exhaustive] {
        let found = extract_complete_box(&inst, mode, &mut budget)?;
        println!("{mode:?}: {:?}", found.as_ref().map(|b| b.classes().to_vec()));
        if let Some(b) = found {
            assert!(inst.hypergraph.contains_box(&b));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
