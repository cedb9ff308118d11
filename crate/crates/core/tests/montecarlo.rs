use goldilocks::kernels::closed_form_kernel;
use goldilocks::montecarlo::mc_kernel;
use goldilocks::AngularShape;

#[test]
fn standard_error_shrinks_as_inverse_sqrt_n() {
    let z = 2.0;
    let scaled: Vec<(f64, f64)> = [10_000_u64, 100_000, 1_000_000]
        .into_iter()
        .map(|n| {
            let est = mc_kernel(z, AngularShape::Directional, n, 11).unwrap();
            let root = (n as f64).sqrt();
            (est.stderr_re * root, est.stderr_im * root)
        })
        .collect();
    let (re0, im0) = scaled[2];
    for (re, im) in &scaled {
        assert!((re / re0 - 1.0).abs() < 0.2, "{scaled:?}");
        assert!((im / im0 - 1.0).abs() < 0.2, "{scaled:?}");
    }
}

#[test]
fn seeds_give_independent_estimates() {
    let z = 3.0;
    let exact = closed_form_kernel(z).unwrap().value;
    let a = mc_kernel(z, AngularShape::Directional, 50_000, 1).unwrap();
    let b = mc_kernel(z, AngularShape::Directional, 50_000, 2).unwrap();
    assert_ne!(a.mean, b.mean);
    for est in [a, b] {
        let (sr, si) = est.sigmas_from(exact);
        assert!(sr < 5.0 && si < 5.0);
    }
}
