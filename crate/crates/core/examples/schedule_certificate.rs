// The constant schedule as exact monomials `2^α t^β`, checked symbolically.

use canonical_ramsey::schedule::{build_schedule, compare, minimal_valid_t, verify_inequalities, LogMonomial, Variant};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let t_star = minimal_valid_t(3, Variant::General, 1000)?;
    println!("k = 3: least valid t {t_star:?}");
    assert_eq!(t_star, Some(129));

    let report = verify_inequalities(&build_schedule(3, 129, Variant::General)?);
    print!("{}", report.to_text());
    assert!(report.all_hold());

    let special = verify_inequalities(&build_schedule(2, 1000, Variant::K2Special)?);
    for f in special.failing() {
        println!("k2-special fails: {}", f.name);
    }

    // 2^10 against 1000^1, decided without floating point
    println!("{:?}", compare(&LogMonomial::two_pow(10, 1000), &LogMonomial::t_pow(1, 1000)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
