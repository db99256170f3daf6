//! End-to-end certificate runs against closed-form references, at the full
//! certification order on the default grid.

use kscert::classes::{
    build_gk, certify_close_to_convex, certify_membership, certify_positive_real,
    certify_starlike_order, certify_subordinate_moebius, class_ratio, lambda_mu_transform,
    normalize_gk, ClassParams, MoebiusTarget,
};
use kscert::disk::DiskGrid;
use kscert::synthesis::{catalog, random_member};
use kscert::{TruncatedSeries, CERT_ORDER};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn subordination_examples() {
    let grid = DiskGrid::default_grid();
    let halfplane = catalog("halfplane", CERT_ORDER).unwrap();

    let constant = TruncatedSeries::constant(Complex64::new(1.0, 0.0), CERT_ORDER);
    for (a, b) in [(1.0, -1.0), (0.6, -0.2), (0.5, 0.0)] {
        let target = MoebiusTarget::new(a, b).unwrap();
        let report = certify_subordinate_moebius(&constant, &target, &grid).unwrap();
        assert!(report.passed(), "constant 1 must sit inside ({a}, {b})");
    }

    let self_sub =
        certify_subordinate_moebius(&halfplane, &MoebiusTarget::half_plane(), &grid).unwrap();
    assert!(self_sub.passed(), "half-plane map is subordinate to itself");

    let narrow = MoebiusTarget::new(0.5, -0.5).unwrap();
    let out = certify_subordinate_moebius(&halfplane, &narrow, &grid).unwrap();
    assert!(!out.passed(), "half-plane image exceeds a bounded disk image");
}

#[test]
fn membership_examples() {
    let grid = DiskGrid::default_grid();
    let params = ClassParams::new(1, 0.0, 0.0).unwrap();
    let target = MoebiusTarget::half_plane();

    let koebe = catalog("koebe", CERT_ORDER).unwrap();
    let report = certify_membership(&koebe, &koebe, &params, &target, &grid).unwrap();
    assert!(report.passed());

    let identity = catalog("identity", CERT_ORDER).unwrap();
    let mut gentle = vec![0.0; CERT_ORDER + 1];
    gentle[1] = 1.0;
    gentle[2] = 0.5;
    let gentle = TruncatedSeries::from_real(&gentle, "z + z^2/2").unwrap();
    let report = certify_membership(&gentle, &identity, &params, &target, &grid).unwrap();
    assert!(report.passed(), "ratio 1 + z stays in the right half-plane");

    let mut steep = vec![0.0; CERT_ORDER + 1];
    steep[1] = 1.0;
    steep[2] = 2.0;
    let steep = TruncatedSeries::from_real(&steep, "z + 2 z^2").unwrap();
    let report = certify_membership(&steep, &identity, &params, &target, &grid).unwrap();
    assert!(!report.passed(), "ratio 1 + 4z leaves the right half-plane");
}

#[test]
fn starlike_order_certificates() {
    let grid = DiskGrid::default_grid();

    let koebe = catalog("koebe", CERT_ORDER).unwrap();
    let report = certify_starlike_order(&koebe, 0.0, &grid).unwrap();
    assert!(report.passed());
    // closed form: min Re of (1+z)/(1-z) on |z| = r is (1-r)/(1+r)
    assert!((report.margin - (1.0 - 0.99) / (1.0 + 0.99)).abs() < 1e-4);

    let half = catalog("gen_koebe(0.5)", CERT_ORDER).unwrap();
    assert!(certify_starlike_order(&half, 0.5, &grid).unwrap().passed());

    // quadratic example of exact order 1/2: passes at 1/2, fails above it
    let example = catalog("starlike_half_example", CERT_ORDER).unwrap();
    assert!(certify_starlike_order(&example, 0.5, &grid).unwrap().passed());
    assert!(!certify_starlike_order(&example, 0.75, &grid).unwrap().passed());
}

#[test]
fn positive_real_certificates() {
    let grid = DiskGrid::default_grid();
    for name in ["halfplane", "even_halfplane", "moebius(0.5,-0.5)"] {
        let p = catalog(name, CERT_ORDER).unwrap();
        assert!(
            certify_positive_real(&p, &grid).unwrap().passed(),
            "{name} has positive real part"
        );
    }

    let bad = TruncatedSeries::from_real(&[1.0, 3.0], "1 + 3z").unwrap().resized(CERT_ORDER);
    assert!(!certify_positive_real(&bad, &grid).unwrap().passed());
}

#[test]
fn witness_products_cancel_low_coefficients() {
    // the symmetrized product always starts at z^k, for every normalized
    // catalog entry and symmetry order up to 8
    let names = [
        "koebe",
        "koebe_sqrt2",
        "gen_koebe(0.3)",
        "gen_koebe(0.5)",
        "starlike_half_example",
        "identity",
    ];
    for name in names {
        let g = catalog(name, 32).unwrap();
        for k in 1..=8u32 {
            let gk = build_gk(&g, k).unwrap();
            for i in 0..k as usize {
                assert!(
                    gk.coeff(i).norm() <= 1e-10,
                    "{name}, k = {k}: coefficient {i} = {:?}",
                    gk.coeff(i)
                );
            }
            assert!((gk.coeff(k as usize) - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        }
    }
}

#[test]
fn witness_product_closed_form_for_k2() {
    let g = catalog("gen_koebe(0.5)", 64).unwrap();
    let big = normalize_gk(&build_gk(&g, 2).unwrap(), 2).unwrap();
    let want = catalog("koebe_sqrt2", big.order()).unwrap();
    assert!(big.max_abs_diff(&want) < 1e-12, "product collapses to z/(1-z^2)");
}

#[test]
fn certified_member_transform_is_close_to_convex() {
    let grid = DiskGrid::default_grid();
    let params = ClassParams::new(2, 0.5, 0.25).unwrap();
    let target = MoebiusTarget::new(0.9, -0.6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let member = random_member(&mut rng, &params, &target, 512).unwrap();

    let membership =
        certify_membership(&member.f, &member.g, &params, &target, &grid).unwrap();
    assert!(membership.passed());

    let transformed = lambda_mu_transform(&member.f, &params).unwrap();
    let big = normalize_gk(&build_gk(&member.g, 2).unwrap(), 2).unwrap();
    let ctc = certify_close_to_convex(&transformed, &big, &grid).unwrap();
    assert!(ctc.passed(), "membership passes down to the convexity ratio");

    // and the ratio the certificate saw is exactly the synthesized factor
    let ratio = class_ratio(&member.f, &member.g, &params).unwrap();
    assert!(ratio.max_abs_diff(&member.p) < 1e-9);
}

#[test]
fn close_to_convex_reference_cases() {
    let grid = DiskGrid::default_grid();
    let identity = catalog("identity", CERT_ORDER).unwrap();
    assert!(certify_close_to_convex(&identity, &identity, &grid).unwrap().passed());

    let koebe = catalog("koebe", CERT_ORDER).unwrap();
    let report = certify_close_to_convex(&koebe, &koebe, &grid).unwrap();
    assert!(report.passed());
}
