// The full case analysis on colourings that land in each branch.

use canonical_ramsey::pipeline::PipelineConfig;
use canonical_ramsey::{find_canonical_copy, ClassSizes, Colour, Colouring, DeltaVec};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("constant", Colouring::constant(ClassSizes::uniform(2, 64)?, 0), "1/2,1/2"),
        ("row", Colouring::from_fn(ClassSizes::uniform(2, 16)?, |e| e[0] as Colour), "1/2,1/2"),
        ("injective", Colouring::injective(ClassSizes::uniform(3, 6)?), "1/2,1/2,1/2"),
        ("pair", Colouring::from_fn(ClassSizes::uniform(3, 8)?, |e| (e[0] * 8 + e[1]) as Colour), "1/2,1/2,1/2"),
    ];
    for (name, col, delta) in cases {
        let dv: DeltaVec = delta.parse()?;
        let out = find_canonical_copy(&col, 2, &dv, 1, &PipelineConfig::default())?;
        let w = out.witness().expect("each case has a witness");
        assert!(w.verify(&col));
        println!("{name}: branch {:?}, J = {}, box {:?}", out.trace.branch, w.j_set, w.sub_box.classes());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
