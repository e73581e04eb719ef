// Same-colour pairs sorted by the set of classes where they agree.

use canonical_ramsey::boundedness::{check_conflict_bound, ConflictBound};
use canonical_ramsey::{conflict_census, ClassSizes, Colouring, JSet};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let col = Colouring::random(ClassSizes::uniform(2, 6)?, 4, &mut rng);
    let census = conflict_census(&col);
    print!("{}", census.to_text());

    let half = BigRational::new(1.into(), 2.into());
    for j in JSet::proper_subsets(2) {
        match check_conflict_bound(&col, j, &half)? {
            ConflictBound::Holds { pairs, bound } => println!("{j}: {pairs} <= {bound}"),
            ConflictBound::Violated { pairs, bound } => println!("{j}: {pairs} > {bound}"),
            ConflictBound::Inapplicable { bad, allowed } => println!("{j}: not bounded ({bad} > {allowed})"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
