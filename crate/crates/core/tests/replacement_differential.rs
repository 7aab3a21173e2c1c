mod common;

use iba_core::{check_replacement, compose, compute_constraint, model_check, Truth};

#[test]
fn check_replacement_matches_composed_model_check() {
    let mut rng = common::rng(60);
    let (mut checked, mut tries) = (0, 0);
    let mut mismatches = Vec::new();
    while checked < 2000 && tries < 200_000 {
        tries += 1;
        let m = common::random_iba_with_box(&mut rng, 5);
        let claim = common::random_claim(&mut rng, 3);
        if model_check(&m, &claim).unwrap().truth != Truth::Unknown {
            continue;
        }
        let constraints = compute_constraint(&m, &claim).unwrap();
        for (b, c) in &constraints {
            let r = common::random_replacement(&mut rng, &m, b, 4);
            let (n, _) = compose(&m, &r).unwrap();
            let expected = model_check(&n, &claim).unwrap().truth;
            let got = check_replacement(c, &r).unwrap().truth;
            if got != expected {
                mismatches.push(format!(
                    "{m:?}\n{claim:?}\n{r:?}\nexpected {expected} got {got}"
                ));
            }
            checked += 1;
        }
    }
    assert!(checked >= 2000, "only {checked} instances");
    assert!(
        mismatches.is_empty(),
        "{} mismatches of {checked}; first:\n{}",
        mismatches.len(),
        mismatches[0]
    );
}
