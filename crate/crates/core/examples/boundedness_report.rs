// Boundedness levels, `j*` and the witnessing fibers.

use canonical_ramsey::{is_bounded, ClassSizes, Colour, Colouring, DeltaVec};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // constant on each row of class 1: level 1 fails for {1}
    let col = Colouring::from_fn(ClassSizes::uniform(2, 8)?, |e| e[0] as Colour);
    let dv: DeltaVec = "1/2,1/2".parse()?;
    let report = is_bounded(&col, &dv)?;
    print!("{}", report.to_text());
    assert_eq!(report.j_star, Some(1));

    let rainbow = Colouring::injective(ClassSizes::uniform(3, 5)?);
    let report = is_bounded(&rainbow, &"1/3,1/3,1/3".parse()?)?;
    assert!(report.is_bounded());
    println!("injective colouring: bounded");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
