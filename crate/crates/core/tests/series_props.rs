//! Property tests of the power-series algebra and the ζ(n) recursion.

mod support {
    pub mod series_properties;
}

use proptest::prelude::*;
use support::series_properties::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn exp_of_log_is_identity(c in normalized_series()) {
        exp_log_identity(&c)?;
    }

    #[test]
    fn product_form_recursion_equals_brute_force((roots, m0, k) in product_data()) {
        product_form_matches_brute_force(&roots, m0, k)?;
    }

    #[test]
    fn zeta_is_scale_covariant((roots, m0, k) in product_data(), rho in 0.25f64..4.0) {
        scaling_invariance(&roots, m0, k, rho)?;
    }
}
