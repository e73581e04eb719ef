// Which `J` make a colouring canonical on a given box.

use canonical_ramsey::{classify_box, find_canonical_copy_exhaustive, ClassSizes, Colour, Colouring, JSet, SubBox};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let sizes = ClassSizes::uniform(3, 4)?;
    // colour depends on the first and third vertex only
    let col = Colouring::from_fn(sizes, |e| (e[0] * 4 + e[2]) as Colour);
    let b = SubBox::new(vec![vec![0, 2], vec![1, 3], vec![0, 1]])?;

    let sets = classify_box(&col, &b)?;
    for j in &sets {
        println!("canonical for J = {j}");
    }
    assert_eq!(sets, vec![JSet::from_classes([0, 2])]);

    let w = find_canonical_copy_exhaustive(&col, 2).expect("every 2-box is {1,3}-canonical");
    println!("first canonical 2-box: J = {}, classes {:?}", w.j_set, w.sub_box.classes());
    assert!(w.verify(&col));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
