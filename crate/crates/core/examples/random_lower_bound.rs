// How often a random 3-colouring of a 2x2 box is canonical.

use canonical_ramsey::oracle::random_lb_experiment;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let r = random_lb_experiment(2, 2, 2, 3, 20_000, 42)?;
    println!(
        "hit rate {:.4} ± {:.4} (exact {:.4})",
        r.hit_rate(),
        r.confidence_radius(),
        5.0 / 27.0
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
