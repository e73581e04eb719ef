// Reading and writing the text formats used by `phc`.

use canonical_ramsey::io;
use canonical_ramsey::{find_canonical_copy_exhaustive, ClassSizes, Colouring, PartiteHypergraph};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let col = Colouring::constant(ClassSizes::new(vec![2, 3])?, 1);
    let text = io::write_colouring(&col);
    print!("{text}");
    assert_eq!(io::parse_colouring(&text)?, col);

    let h = PartiteHypergraph::from_edges(ClassSizes::new(vec![2, 2])?, [vec![0, 1], vec![1, 0]])?;
    let text = io::write_hypergraph(&h);
    print!("{text}");
    assert_eq!(io::parse_hypergraph(&text)?, h);

    let w = find_canonical_copy_exhaustive(&col, 2).expect("constant colourings are monochromatic");
    let text = io::write_witness(&w);
    print!("{text}");
    assert_eq!(io::parse_witness(&text)?, w);
    assert_eq!(io::parse_box(&text)?, w.sub_box);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
