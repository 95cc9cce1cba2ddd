//! Randomised invariants that cut across modules.

use proptest::prelude::*;
use std::f64::consts::PI;
use transmutation::kernel::{FitMethod, FitOptions, KernelApproximation};
use transmutation::potential::{Builtin, Potential};
use transmutation::spectral::{find_eigenvalues, s_n, SearchOptions, SpectralProblem};

fn exp_kernel() -> &'static KernelApproximation {
    static K: std::sync::OnceLock<KernelApproximation> = std::sync::OnceLock::new();
    K.get_or_init(|| {
        let pot = Potential::builtin(Builtin::Exp, PI, 2001, 2).unwrap();
        pot.goursat_kernel(pot.family(20).unwrap(), 20, &FitOptions::with_method(FitMethod::Remez)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transmuted_sine_is_odd_in_omega(x in 0.0f64..PI, w in 0.0f64..80.0) {
        let k = exp_kernel();
        let a = s_n(k, x, w);
        let b = s_n(k, x, -w);
        prop_assert!((a + b).norm() <= 1e-12 * (1.0 + a.norm()), "{a} {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn constant_potential_spectrum_is_shifted(c in 0.0f64..5.0, b in 1.0f64..3.0) {
        // -u'' + c u = w^2 u, u(0) = u(b) = 0: w^2 = (n pi / b)^2 + c.
        // N = 24 resolves the kernel up to b sqrt(c) ~ 7
        let pot = Potential::builtin(Builtin::Const(c), b, 2001, 2).unwrap();
        let k = pot.goursat_kernel(pot.family(24).unwrap(), 24, &FitOptions::dirichlet(FitMethod::Remez)).unwrap();
        let prob = SpectralProblem::new(pot.q.clone(), k, SearchOptions::default()).unwrap();
        let r = find_eigenvalues(&prob, 10).unwrap();
        prop_assert_eq!(r.eigenvalues.len(), 10);
        for e in &r.eigenvalues {
            let want = (e.index as f64 * PI / b).powi(2) + c;
            prop_assert!((e.omega_sq - want).abs() <= 1e-8 * want, "c={} b={} n={}: {} vs {}", c, b, e.index, e.omega_sq, want);
        }
    }
}
