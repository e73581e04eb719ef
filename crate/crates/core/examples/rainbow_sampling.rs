// Random rainbow boxes, with the sampler hypothesis and deletion log.

use canonical_ramsey::hypergraph::ColouredHypergraph;
use canonical_ramsey::rainbow::{check_simplerain, sample_rainbow_box, sample_rainbow_dense, verify_rainbow_box};
use canonical_ramsey::{ClassSizes, Colour, Colouring, PartiteHypergraph};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let n = 64;
    let sizes = ClassSizes::uniform(2, n)?;
    // Latin square colouring: every colour class is a perfect matching
    let col = Colouring::from_fn(sizes.clone(), |e| ((e[0] + e[1]) % n) as Colour);
    println!("hypothesis per level {:?}", check_simplerain(&"1/64,1/64".parse()?, 3, &sizes)?);

    let run = sample_rainbow_box(&col, 3, 11, 50)?;
    let r = run.result.as_ref().expect("matchings are easy to avoid");
    println!("attempts {}, box {:?}", run.attempts.len(), r.sub_box.classes());
    assert!(verify_rainbow_box(&col, &r.sub_box));

    let h = PartiteHypergraph::complete(ClassSizes::uniform(2, 40)?);
    let ch = ColouredHypergraph::restrict_colouring(&Colouring::injective(h.sizes().clone()), &h)?;
    let dense = sample_rainbow_dense(&ch, 32, None, 5, 10)?;
    println!("dense sampler succeeded: {}", dense.succeeded());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
