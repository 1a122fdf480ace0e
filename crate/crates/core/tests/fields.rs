mod common;

use cloakwave::fields::{
    dump_field, incident_coefficients, interior_limit, norm_annulus, outgoing_mode0_norm, Domain, FieldSeries,
    GridSpec, IncidentSpec, Part, Reference, Truncation, Which,
};
use cloakwave::mie::{first_resonance, mode_solve, Layer, LayeredMedium, ModeSolution};
use cloakwave::transform::{map_inverse, BlowupMap};
use cloakwave::{CloakConfig, Error};
use common::bessel_j_series;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn random_point(rng: &mut ChaCha8Rng, d: usize, r_lo: f64, r_hi: f64) -> Vec<f64> {
    let r = rng.random_range(r_lo..r_hi);
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = norm(&v);
        if n > 0.1 && n <= 1.0 {
            return v.iter().map(|x| x * r / n).collect();
        }
    }
}

/// Free space filled by one matched layer of the given radius.
fn free_space(d: u32, radius: f64) -> LayeredMedium {
    LayeredMedium::new(d, vec![Layer::new(radius, 1.0, c(1.0))], 1.0).unwrap()
}

/// Composite Simpson weights on `m` (even) intervals of `[a, b]`.
fn simpson(a: f64, b: f64, m: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / m as f64;
    (0..=m)
        .map(|i| {
            let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            (a + i as f64 * h, w * h / 3.0)
        })
        .collect()
}

#[test]
fn plane_wave_coefficients_reproduce_the_wave() {
    let k = 2.0;
    let spec = IncidentSpec::PlaneWave { direction: vec![0.6, 0.8], amplitude: c(1.0) };
    let n = 40;
    let b = incident_coefficients(&spec, 2, k, n, 4.0).unwrap();
    assert_eq!(b[0], c(1.0));
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let x = random_point(&mut rng, 2, 0.0, 4.0);
        let r = norm(&x);
        let cos_g = (0.6 * x[0] + 0.8 * x[1]) / r;
        let gamma = cos_g.clamp(-1.0, 1.0).acos();
        let series: Complex64 = (0..=n).map(|m| b[m] * bessel_j_series(m as u32, k * r) * (m as f64 * gamma).cos()).sum();
        let exact = Complex64::new(0.0, k * r * cos_g).exp();
        assert!((series - exact).norm() < 1e-10, "{series} vs {exact}");
    }
}

#[test]
fn truncation_too_short_is_rejected() {
    let spec = IncidentSpec::plane_wave(2);
    assert!(matches!(incident_coefficients(&spec, 2, 2.0, 5, 4.0), Err(Error::TruncationInsufficient { .. })));
}

#[test]
fn series_evaluation_matches_plane_wave_in_free_space() {
    for d in [2u32, 3] {
        let spec = IncidentSpec::plane_wave(d);
        let f = FieldSeries::solve(free_space(d, 4.5), 2.0, &spec, Domain::Virtual, Truncation::Auto { r_max: 4.5 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let x = random_point(&mut rng, d as usize, 0.0, 4.0);
            let exact = Complex64::new(0.0, 2.0 * x[0]).exp();
            assert!((f.eval(&x).unwrap() - exact).norm() < 1e-10);
        }
    }
}

#[test]
fn point_source_expansion_reproduces_the_kernel() {
    let loc = vec![1.5, -2.0, 2.5];
    assert!((norm(&loc) - 3.535_533_905_932_737_6).abs() < 1e-15);
    let spec = IncidentSpec::PointSource { location: loc.clone(), amplitude: c(1.0) };
    let k = 1.3;
    let f = FieldSeries::solve(free_space(3, 2.2), k, &spec, Domain::Virtual, Truncation::Auto { r_max: 2.0 }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let x = random_point(&mut rng, 3, 0.0, 2.0);
        let dist = norm(&x.iter().zip(&loc).map(|(a, b)| a - b).collect::<Vec<_>>());
        let exact = Complex64::new(0.0, k * dist).exp() / (4.0 * PI * dist);
        let v = f.eval(&x).unwrap();
        assert!((v - exact).norm() <= 1e-8 * exact.norm(), "{v} vs {exact}");
    }
}

/// A field with two prescribed modes inside a matched layer.
fn two_mode_field(d: u32, k: f64, coeffs: [Complex64; 2]) -> FieldSeries {
    let medium = free_space(d, 3.0);
    let modes = (0..2)
        .map(|n| ModeSolution { n, b_n: c(0.0), alpha_n: c(0.0), layer_coeffs: vec![(coeffs[n], c(0.0))], particular: None })
        .collect();
    FieldSeries {
        dimension: d,
        k,
        k_exterior: k,
        truncation: 1,
        modes,
        domain: Domain::Virtual,
        medium,
        incident: None,
        axis: { let mut a = vec![0.0; d as usize]; a[0] = 1.0; a },
    }
}

#[test]
fn parseval_norm_matches_tensor_grid_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for d in [2u32, 3] {
        let coeffs = [
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        ];
        let k = rng.random_range(0.5..3.0);
        let f = two_mode_field(d, k, coeffs);
        let (r_in, r_out) = (0.5, 2.5);
        let parseval = norm_annulus(&f, &Which::Total, r_in, r_out).unwrap().l2;
        let mut sum = 0.0;
        let radial = simpson(r_in, r_out, 400);
        if d == 2 {
            let m = 256;
            for &(r, wr) in &radial {
                for j in 0..m {
                    let th = 2.0 * PI * j as f64 / m as f64;
                    let u = f.eval(&[r * th.cos(), r * th.sin()]).unwrap();
                    sum += wr * r * (2.0 * PI / m as f64) * u.norm_sqr();
                }
            }
        } else {
            let polar = simpson(0.0, PI, 200);
            let m = 4;
            for &(r, wr) in &radial {
                for &(th, wt) in &polar {
                    for j in 0..m {
                        let ph = 2.0 * PI * j as f64 / m as f64;
                        let x = [r * th.cos(), r * th.sin() * ph.cos(), r * th.sin() * ph.sin()];
                        let u = f.eval(&x).unwrap();
                        sum += wr * wt * r * r * th.sin() * (2.0 * PI / m as f64) * u.norm_sqr();
                    }
                }
            }
        }
        assert!(common::rel(parseval, sum.sqrt()) < 1e-7, "d={d}: {parseval} vs {}", sum.sqrt());
    }
}

#[test]
fn outgoing_mode0_norm_closed_form() {
    // |h_0(kr)|² r² = 1/k²
    for k in [0.5, 1.0, 2.0] {
        let v = outgoing_mode0_norm(3, k, 2.0, 4.0).unwrap();
        assert!(common::rel(v, (4.0 * PI * 2.0).sqrt() / k) < 1e-9);
    }
}

#[test]
fn physical_and_virtual_evaluations_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for d in [2u32, 3] {
        let eps = 0.1;
        let config = CloakConfig::homogeneous(d, 1.0, eps, 2.0, 3.0);
        let phys = FieldSeries::cloak(&config, Truncation::Auto { r_max: 4.0 }).unwrap();
        let mut virt = phys.clone();
        virt.domain = Domain::Virtual;
        let map = BlowupMap::new(eps, d).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let x = random_point(&mut rng, d as usize, 0.01, 4.0);
            let a = phys.eval(&x).unwrap();
            let b = virt.eval(&map_inverse(&map, &x).unwrap()).unwrap();
            worst = worst.max((a - b).norm() / b.norm().max(1e-300));
            if norm(&x) > 2.0 {
                assert_eq!(a, virt.eval(&x).unwrap());
            }
        }
        assert!(worst < 1e-12, "d={d}: {worst:e}");
    }
}

#[test]
fn norms_are_stable_under_truncation_doubling() {
    for d in [2u32, 3] {
        let config = CloakConfig::homogeneous(d, 1.0, 0.05, 1.0, 1.0);
        let auto = FieldSeries::cloak(&config, Truncation::Auto { r_max: 4.0 }).unwrap();
        let n = auto.truncation;
        let doubled = FieldSeries::cloak(&config, Truncation::Fixed { n: 2 * n, r_max: 4.0 }).unwrap();
        for which in [Which::Total, Which::Scattered, Which::DiffVsReference(Reference::FreeFieldLimit)] {
            for (r_in, r_out) in [(2.0, 4.0), (0.0, 1.0), (1.2, 1.8)] {
                let a = norm_annulus(&auto, &which, r_in, r_out).unwrap();
                let b = norm_annulus(&doubled, &which, r_in, r_out).unwrap();
                assert!(common::rel(a.l2, b.l2) < 1e-10 && common::rel(a.h1, b.h1) < 1e-10, "d={d} {which:?}");
            }
        }
    }
}

#[test]
fn limit_difference_outside_the_shell_is_the_scattered_field() {
    for d in [2u32, 3] {
        let config = CloakConfig::homogeneous(d, 1.5, 0.1, 1.0, 2.0);
        let f = FieldSeries::cloak(&config, Truncation::Auto { r_max: 4.0 }).unwrap();
        let diff = norm_annulus(&f, &Which::DiffVsReference(Reference::FreeFieldLimit), 2.0, 4.0).unwrap();
        let scat = norm_annulus(&f, &Which::Scattered, 2.0, 4.0).unwrap();
        assert!(common::rel(diff.l2, scat.l2) < 1e-12 && common::rel(diff.h1, scat.h1) < 1e-12);
    }
}

#[test]
fn matched_interior_does_not_scatter() {
    for d in [2u32, 3] {
        let config = CloakConfig::homogeneous(d, 1.0, 1.0, 1.0, 1.0);
        let f = FieldSeries::cloak(&config, Truncation::Auto { r_max: 4.0 }).unwrap();
        assert!(norm_annulus(&f, &Which::Scattered, 0.0, 4.0).unwrap().h1 < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..50 {
            let x = random_point(&mut rng, d as usize, 0.0, 4.5);
            assert!((f.eval(&x).unwrap() - Complex64::new(0.0, x[0]).exp()).norm() < 1e-10);
        }
    }
}

#[test]
fn source_mode_outside_the_inclusion_is_a_spherical_wave() {
    let spec = first_resonance(3, 0, 1.0, 1.0).unwrap();
    let eps = 0.05;
    let config = CloakConfig::homogeneous(3, 1.0, eps, 1.0, spec.sigma0 * 1.01);
    let medium = cloakwave::mie::virtual_medium::<f64>(&config).unwrap();
    let f = FieldSeries::with_interior_source(medium, 1.0, &spec, 1.0, Domain::Virtual).unwrap();
    let shape = |r: f64| f.radial_virtual(Part::Total, r).unwrap()[0].0 * r * Complex64::new(0.0, -r).exp();
    let c0 = shape(0.1);
    for r in [0.2, 0.7, 1.5, 3.9] {
        assert!((shape(r) - c0).norm() <= 1e-12 * c0.norm());
    }
}

#[test]
fn interior_limit_cases() {
    // non-resonant passive interiors: zero
    for d in [2u32, 3] {
        let config = CloakConfig::homogeneous(d, 1.0, 0.1, 1.0, 1.0);
        let lim = interior_limit(d, &config, c(1.0)).unwrap();
        assert_eq!(norm_annulus(&lim, &Which::Total, 0.0, 1.0).unwrap().h1, 0.0);
    }
    // resonant radial mode in 3D: u(0) j0(κ* r)/j0(κ*)
    let spec = first_resonance(3, 0, 1.0, 1.0).unwrap();
    let config = CloakConfig::homogeneous(3, 1.0, 0.1, 1.0, spec.sigma0);
    let lim = interior_limit(3, &config, c(1.0)).unwrap();
    let x = spec.kappa_star;
    let j0 = x.sin() / x;
    let at0 = lim.eval(&[0.0, 0.0, 0.0]).unwrap();
    assert!((at0 - 1.0 / j0).norm() < 1e-12 * (1.0 / j0).abs());
    let r: f64 = 0.6;
    let v = lim.eval(&[0.0, r, 0.0]).unwrap();
    assert!((v - (x * r).sin() / (x * r) / j0).norm() < 1e-12 / j0.abs());
    // resonant 2D interiors have no limit
    let spec = first_resonance(2, 0, 1.0, 1.0).unwrap();
    let config = CloakConfig::homogeneous(2, 1.0, 0.1, 1.0, spec.sigma0);
    assert!(matches!(interior_limit(2, &config, c(1.0)), Err(Error::Unsupported(_))));
}

#[test]
fn grid_dump_of_free_space_has_unit_modulus() {
    let config = CloakConfig::homogeneous(2, 1.0, 1.0, 1.0, 1.0);
    let f = FieldSeries::cloak(&config, Truncation::Auto { r_max: 5.0 }).unwrap();
    let grid = GridSpec { lower: vec![-3.0, -3.0], upper: vec![3.0, 3.0], counts: vec![13, 9] };
    let mut out = Vec::new();
    dump_field(&f, &grid, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,re,im,abs"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 13 * 9);
    // last axis fastest
    assert_eq!((rows[0][0], rows[0][1]), (-3.0, -3.0));
    assert_eq!((rows[1][0], rows[1][1]), (-3.0, -2.25));
    assert_eq!(rows[9][0], -2.5);
    for row in &rows {
        assert!((row[4] - 1.0).abs() < 1e-10);
        // points on |x| = 1 are nudged outward by a relative 1e-9
        assert!((Complex64::new(row[2], row[3]) - Complex64::new(0.0, row[0]).exp()).norm() < 1e-8, "{row:?}");
    }
}

#[test]
fn cloaked_grid_deviation_tracks_the_visibility_norm() {
    let config = CloakConfig::homogeneous(3, 1.0, 1e-3, 1.0, 1.0);
    let f = FieldSeries::cloak(&config, Truncation::Auto { r_max: 5.0 }).unwrap();
    let vis = norm_annulus(&f, &Which::DiffVsReference(Reference::FreeFieldLimit), 2.0, 4.0).unwrap().l2;
    let grid = GridSpec { lower: vec![-2.8, -2.8, 0.0], upper: vec![2.8, 2.8, 0.0], counts: vec![15, 15, 1] };
    let mut out = Vec::new();
    dump_field(&f, &grid, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut worst = 0.0f64;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        if norm(&v[..3]) > 2.0 {
            worst = worst.max((Complex64::new(v[3], v[4]) - Complex64::new(0.0, v[0]).exp()).norm());
        }
    }
    assert!(worst > 0.0 && worst <= 10.0 * vis, "{worst} vs {vis}");
}

#[test]
fn grid_validation() {
    let config = CloakConfig::homogeneous(2, 1.0, 0.5, 1.0, 1.0);
    let f = FieldSeries::cloak(&config, Truncation::Auto { r_max: 5.0 }).unwrap();
    let too_big = GridSpec { lower: vec![-1.0, -1.0], upper: vec![1.0, 1.0], counts: vec![1001, 1000] };
    let outside = GridSpec { lower: vec![-4.0, -4.0], upper: vec![4.0, 4.0], counts: vec![3, 3] };
    for g in [too_big, outside] {
        assert!(matches!(dump_field(&f, &g, &mut Vec::new()), Err(Error::InvalidInput(_))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norms_scale_linearly_with_amplitude(d in 2u32..=3, re in -2.0f64..2.0, im in -2.0f64..2.0, eps in 0.01f64..0.5) {
        prop_assume!(re.hypot(im) > 0.1);
        let mut config = CloakConfig::homogeneous(d, 1.0, eps, 1.0, 2.0);
        let base = norm_annulus(&FieldSeries::cloak(&config, Truncation::Auto { r_max: 4.0 }).unwrap(), &Which::Scattered, 2.0, 4.0).unwrap();
        if let cloakwave::fields::IncidentSpec::PlaneWave { amplitude, .. } = &mut config.incident {
            *amplitude = Complex64::new(re, im);
        }
        let scaled = norm_annulus(&FieldSeries::cloak(&config, Truncation::Auto { r_max: 4.0 }).unwrap(), &Which::Scattered, 2.0, 4.0).unwrap();
        let a = re.hypot(im);
        prop_assert!((scaled.l2 - a * base.l2).abs() <= 1e-9 * a * base.l2);
        prop_assert!((scaled.h1 - a * base.h1).abs() <= 1e-9 * a * base.h1);
    }

    #[test]
    fn norms_are_additive_over_split_annuli(d in 2u32..=3, mid in 2.1f64..3.9) {
        let config = CloakConfig::homogeneous(d, 1.2, 0.1, 1.0, 2.0);
        let f = FieldSeries::cloak(&config, Truncation::Auto { r_max: 4.0 }).unwrap();
        let whole = norm_annulus(&f, &Which::Total, 2.0, 4.0).unwrap().l2;
        let a = norm_annulus(&f, &Which::Total, 2.0, mid).unwrap().l2;
        let b = norm_annulus(&f, &Which::Total, mid, 4.0).unwrap().l2;
        prop_assert!((whole * whole - a * a - b * b).abs() <= 1e-8 * whole * whole);
    }

    #[test]
    fn homogeneous_solve_has_no_outgoing_part(d in 2u32..=3, n in 0usize..10, k in 0.1f64..5.0) {
        let sol = mode_solve(&free_space(d, 1.0), k, n, c(1.0)).unwrap();
        prop_assert!(sol.alpha_n.norm() < 1e-13);
    }
}
