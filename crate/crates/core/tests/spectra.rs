use spectral_periodic::spectrum::{
    cluster_multiplicities, eigen_distances, eigenpairs_self_adjoint, eigenvalues_self_adjoint, resolvent_norm_grid,
    truncation_coincidence,
};
use spectral_periodic::{sobolev_norm, synth_powerlaw, BandWindow, CoeffVec, Complex64, DiffOpSpec, Discretization, PowerLawKind, SobolevOrder};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn second_order(scale: f64) -> DiffOpSpec {
    let g = synth_powerlaw(PowerLawKind::G, 2.51, 0.0, BandWindow::symmetric(1002)).unwrap();
    DiffOpSpec::derivative(2, -ONE).with_variable(vec![g.scale(Complex64::new(scale, 0.0))], 2.0).unwrap()
}

#[test]
fn weyl_shift_through_matching() {
    let shift = 0.37;
    let base = second_order(1.0);
    let g = synth_powerlaw(PowerLawKind::G, 2.51, 0.0, BandWindow::symmetric(1002)).unwrap();
    let shifted = DiffOpSpec::derivative(2, -ONE)
        .with_variable(vec![g.add(&CoeffVec::constant(Complex64::new(shift, 0.0)))], 2.0)
        .unwrap();
    let w = BandWindow::new(81).unwrap();
    let a = eigenvalues_self_adjoint(&base, w).unwrap();
    let b = eigenvalues_self_adjoint(&shifted, w).unwrap();
    for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
        assert!((y - x - shift).abs() <= 1e-12 * (1.0 + x.abs()));
    }
    assert!(a.max_residual <= 1e-10 && b.max_residual <= 1e-10);
    assert_eq!(a.eigenvalues.len(), 81);
}

#[test]
fn perturbed_clusters_keep_their_counts() {
    let spec = second_order(1e-3);
    let centers: Vec<f64> = (0..=20).map(|m| (m * m) as f64 + 1e-3).collect();
    let expect: Vec<usize> = (0..=20).map(|m| if m == 0 { 1 } else { 2 }).collect();
    for n in [41usize, 81, 161] {
        let rep = eigenvalues_self_adjoint(&spec, BandWindow::new(n).unwrap()).unwrap();
        assert_eq!(cluster_multiplicities(&rep, &centers, 0.1).unwrap(), expect, "N={n}");
    }
}

#[test]
fn strong_potential_changes_counts() {
    // Scanning the potential strength: clusters around the unperturbed
    // centers eventually lose members. Report where, without pinning it.
    let centers: Vec<f64> = (0..=5).map(|m| (m * m) as f64).collect();
    let w = BandWindow::new(41).unwrap();
    let first_change = [1e-3, 1e-2, 0.1, 1.0, 10.0].into_iter().find(|&scale| {
        let rep = eigenvalues_self_adjoint(&second_order(scale), w).unwrap();
        cluster_multiplicities(&rep, &centers, 0.1).unwrap() != vec![1, 2, 2, 2, 2, 2]
    });
    println!("cluster counts first change at potential scale {first_change:?}");
    assert!(first_change.is_some());
}

#[test]
fn eigenvalues_avoid_the_reference_pseudospectrum() {
    let spec = second_order(1.0);
    let test = eigenvalues_self_adjoint(&spec, BandWindow::new(41).unwrap()).unwrap();
    let reference = eigenvalues_self_adjoint(&spec, BandWindow::new(501).unwrap()).unwrap();
    let eps = 10.0 * eigen_distances(&test, &reference).iter().map(|d| d.d).fold(0.0, f64::max);
    let z: Vec<Complex64> = test.eigenvalues.iter().map(|&l| Complex64::new(l, 0.0)).collect();
    let norms = resolvent_norm_grid(&spec, BandWindow::new(501).unwrap(), &z, SobolevOrder(0.0)).unwrap();
    for (l, r) in test.eigenvalues.iter().zip(norms) {
        assert!(r >= 1.0 / eps, "λ = {l}: {r} < {}", 1.0 / eps);
    }
}

#[test]
fn truncation_coincidence_threshold() {
    let spec = second_order(1.0);
    let rep = truncation_coincidence(&spec, BandWindow::new(81).unwrap(), 1.0).unwrap();
    assert!(rep.hausdorff <= 1e-10, "{}", rep.hausdorff);
    assert_eq!(rep.section, rep.full);
    // At N = 11 the tail symbol 36 = σ₀(6) falls inside |z| ≤ 4·11.
    let rep = truncation_coincidence(&spec, BandWindow::new(11).unwrap(), 4.0).unwrap();
    assert!(rep.hausdorff > 0.0);
}

#[test]
fn eigenfunction_norms_grow_like_the_eigenvalue() {
    // ‖v‖_2 / (|λ| + 2)^{⌈s/(k-p)⌉} with s = 2, k = 2, p = 0.
    let (report, vectors) =
        eigenpairs_self_adjoint(&second_order(1.0), BandWindow::new(321).unwrap(), Discretization::FiniteSection).unwrap();
    let ratios: Vec<f64> = report
        .eigenvalues
        .iter()
        .zip(&vectors)
        .take(50)
        .map(|(l, v)| sobolev_norm(v, SobolevOrder(2.0)) / (l.abs() + 2.0))
        .collect();
    let max = ratios.iter().copied().fold(0.0, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(max / min < 1e3, "{max} / {min}");
}

#[test]
fn rescaled_errors_are_flat() {
    let spec = second_order(1.0);
    let test = eigenvalues_self_adjoint(&spec, BandWindow::new(161).unwrap()).unwrap();
    let reference = eigenvalues_self_adjoint(&spec, BandWindow::new(501).unwrap()).unwrap();
    let mut r: Vec<f64> =
        eigen_distances(&test, &reference).into_iter().filter(|d| 1.0 + d.lambda.abs() <= 50.0).map(|d| d.r).collect();
    r.sort_by(f64::total_cmp);
    let median = r[r.len() / 2];
    assert!(r[r.len() - 1] / median < 100.0);
}
