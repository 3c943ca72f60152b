use std::f64::consts::{PI, TAU};

use cs_geometry::coherent::{
    glauber_state, indefinite_su11_signature, indefinite_su11_state, ladder_apply,
    n_sector_projection, su2_state, su3_state, suk_state, FockState, Ladder,
};
use cs_geometry::geometry::bergman::bergman_reproduce;
use cs_geometry::geometry::diff::{complex_hessian, to_real};
use cs_geometry::geometry::quadrature::DiskRule;
use cs_geometry::geometry::{
    bergman_metric, fs_distance, fs_metric_chart, fs_potential, hyperbolic_metric_chart,
    hyperbolic_potential, kahler_metric, pullback_hermitian, scalar_curvature, MetricTensor,
};
use cs_geometry::projective::{
    binomial, inner_product, multi_index_basis, multinomial, overlap_deficit, projectively_equal,
};
use cs_geometry::veronese::{image_signature, target_dimension, veronese_embed, VeroneseMap};
use cs_geometry::{Complex64, InnerProductSpace, MultiIndex, StateVector};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b))
}

fn vector(len: usize, r: f64) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex(r), len)
}

/// Nonzero vector of a random length in `lens`.
fn state(lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = StateVector> {
    lens.prop_flat_map(|n| vector(n, 2.0))
        .prop_filter("nonzero", |v| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
        })
        .prop_map(|v| StateVector::new(v).unwrap())
}

fn signs(len: usize) -> impl Strategy<Value = InnerProductSpace> {
    prop::collection::vec(prop::bool::ANY, len).prop_map(|b| {
        InnerProductSpace::new(b.into_iter().map(|p| if p { 1 } else { -1 }).collect()).unwrap()
    })
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
}

fn max_abs(m: &nalgebra::DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_sesquilinear(
        (u, v, w, space) in (1usize..6).prop_flat_map(|n| (vector(n, 2.0), vector(n, 2.0), vector(n, 2.0), signs(n))),
        alpha in complex(2.0),
        beta in complex(2.0),
    ) {
        let sv = |x: &[Complex64]| StateVector::new(x.to_vec()).unwrap();
        let combo: Vec<Complex64> = v.iter().zip(&w).map(|(a, b)| alpha * a + beta * b).collect();
        let lhs = inner_product(&sv(&u), &sv(&combo), &space).unwrap();
        let rhs = alpha * inner_product(&sv(&u), &sv(&v), &space).unwrap()
            + beta * inner_product(&sv(&u), &sv(&w), &space).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12));
        let lhs = inner_product(&sv(&combo), &sv(&u), &space).unwrap();
        let rhs = alpha.conj() * inner_product(&sv(&v), &sv(&u), &space).unwrap()
            + beta.conj() * inner_product(&sv(&w), &sv(&u), &space).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12));
    }

    #[test]
    fn definite_product_is_positive(v in state(1..=6)) {
        let space = InnerProductSpace::definite(v.len()).unwrap();
        let n = inner_product(&v, &v, &space).unwrap();
        prop_assert!(n.re > 0.0);
        prop_assert!(n.im.abs() <= 1e-15 * n.re);
    }

    #[test]
    fn projective_equality_is_an_equivalence(v in state(1..=5), l1 in complex(3.0), l2 in complex(3.0)) {
        prop_assume!(l1.norm() > 1e-2 && l2.norm() > 1e-2);
        let a = v.scaled(l1).unwrap();
        let b = a.scaled(l2).unwrap();
        let tol = 1e-9;
        prop_assert!(projectively_equal(&v, &v, tol).unwrap());
        prop_assert_eq!(projectively_equal(&v, &a, tol).unwrap(), projectively_equal(&a, &v, tol).unwrap());
        prop_assert!(projectively_equal(&v, &a, tol).unwrap());
        prop_assert!(projectively_equal(&a, &b, tol).unwrap());
        prop_assert!(projectively_equal(&v, &b, tol).unwrap());
    }

    #[test]
    fn veronese_is_homogeneous(p in state(2..=4), lambda in complex(1.5), n in 1u32..=5) {
        let lhs = veronese_embed(&p.scaled(lambda).unwrap(), n).unwrap();
        let rhs = veronese_embed(&p, n).unwrap().scaled(lambda.powu(n)).unwrap();
        let scale = rhs.norm_sqr().sqrt();
        for (a, b) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
            prop_assert!((a - b).norm() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn veronese_norm_is_multiplicative(p in state(2..=4), n in 1u32..=5) {
        let image = veronese_embed(&p, n).unwrap();
        let want = p.norm_sqr().powi(n as i32);
        prop_assert!((image.norm_sqr() - want).abs() <= 1e-10 * want);
    }

    #[test]
    fn veronese_pseudo_norm_is_multiplicative(
        (p, base) in (2usize..=4).prop_flat_map(|k| (vector(k, 2.0), signs(k))),
        n in 1u32..=5,
    ) {
        let p = StateVector::new(p).unwrap();
        prop_assume!(p.norm_sqr() > 1e-3);
        let image = veronese_embed(&p, n).unwrap();
        let sig = image_signature(&base, n).unwrap();
        let lhs = inner_product(&image, &image, &sig).unwrap().re;
        let want = inner_product(&p, &p, &base).unwrap().re.powi(n as i32);
        // Cancellation happens on the scale of the definite norm.
        prop_assert!((lhs - want).abs() <= 1e-10 * p.norm_sqr().powi(n as i32));
    }

    #[test]
    fn signature_counts_sum_to_image_dimension(base in (2usize..=4).prop_flat_map(signs), n in 1u32..=8) {
        let sig = image_signature(&base, n).unwrap();
        let k = base.dim() as u64 - 1;
        prop_assert_eq!((sig.positive_count() + sig.negative_count()) as u64, target_dimension(k, u64::from(n)).unwrap() + 1);
    }

    #[test]
    fn coherent_states_have_unit_norm(
        theta in 0.0..PI, phi in 0.0..TAU, xi in 0.0..PI, eta in 0.0..TAU, n in 1u32..=10,
        p in state(2..=4),
    ) {
        prop_assert!((su2_state(theta, phi, n).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((su3_state(theta, phi, xi, eta, n).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((suk_state(&p, n).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn su2_state_is_a_veronese_image(theta in 0.0..PI, phi in 0.0..TAU, n in 1u32..=10) {
        let base = StateVector::new(vec![
            c((0.5 * theta).cos(), 0.0),
            Complex64::from_polar((0.5 * theta).sin(), phi),
        ]).unwrap();
        let v = veronese_embed(&base, n).unwrap();
        let s = su2_state(theta, phi, n).unwrap();
        for (a, b) in v.amplitudes().iter().zip(s.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn glauber_norm_converges(a in vector(2, 0.7), cutoff in 20u32..=30) {
        prop_assume!(a.iter().map(|z| z.norm_sqr()).sum::<f64>() <= 1.0);
        prop_assert!((glauber_state(&a, cutoff).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn indefinite_states_have_pseudo_norm_sign(tau in 0.0..3.0f64, phi in 0.0..TAU, n in 1u32..=10) {
        let s = indefinite_su11_state(tau, phi, n).unwrap();
        let value = inner_product(&s, &s, &indefinite_su11_signature(n).unwrap()).unwrap().re;
        let want = if n % 2 == 0 { 1.0 } else { -1.0 };
        // Amplitudes grow like cosh(τ)^N and rounding is relative to them.
        prop_assert!((value - want).abs() <= 1e-12 * s.norm_sqr().max(1.0));
    }

    #[test]
    fn indefinite_pseudo_norm_absolute_on_moderate_range(tau in 0.0..1.0f64, phi in 0.0..TAU, n in 1u32..=10) {
        let s = indefinite_su11_state(tau, phi, n).unwrap();
        let value = inner_product(&s, &s, &indefinite_su11_signature(n).unwrap()).unwrap().re;
        let want = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((value - want).abs() <= 1e-12);
    }

    #[test]
    fn glauber_sectors_are_suk_states(a in vector(3, 1.0), n in 1u32..=6, modes in 2usize..=3) {
        let a = &a[..modes];
        prop_assume!(a.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-2);
        let psi = glauber_state(a, 6).unwrap();
        let sector = n_sector_projection(&psi, n).unwrap();
        let want = suk_state(&StateVector::new(a.to_vec()).unwrap(), n).unwrap();
        prop_assert!(overlap_deficit(&sector, &want).unwrap() < 1e-10);
    }

    #[test]
    fn fs_distance_is_a_metric(u in state(4..=4), v in state(4..=4), w in state(4..=4), phase in 0.0..TAU, scale in 0.1..10.0f64) {
        let d = |x: &StateVector, y: &StateVector| fs_distance(x, y).unwrap();
        prop_assert_eq!(d(&u, &v), d(&v, &u));
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w) + 1e-12);
        let moved = v.scaled(Complex64::from_polar(scale, phase)).unwrap();
        prop_assert!((d(&u, &moved) - d(&u, &v)).abs() <= 1e-12);
    }
}

#[test]
fn basis_sizes_match_binomial() {
    for m in 1..=6usize {
        for n in 0..=8u32 {
            let size = multi_index_basis(m, n).unwrap().len() as u64;
            assert_eq!(
                size,
                binomial(u64::from(n) + m as u64 - 1, m as u64 - 1).unwrap(),
                "M={m} N={n}"
            );
        }
    }
}

#[test]
fn multinomials_sum_to_power() {
    for m in 1..=4usize {
        for n in 0..=10u32 {
            let total: u64 = multi_index_basis(m, n)
                .unwrap()
                .iter()
                .map(|i| multinomial(n, i).unwrap())
                .sum();
            assert_eq!(total, (m as u64).pow(n), "M={m} N={n}");
        }
    }
}

#[test]
fn degree_one_target_is_identity() {
    for k in 1..=20 {
        assert_eq!(target_dimension(k, 1).unwrap(), k);
    }
}

#[test]
fn ladder_commutators_on_basis_states() {
    let cutoff = 5;
    for modes in 1..=3usize {
        for n in 0..cutoff {
            for idx in multi_index_basis(modes, n).unwrap() {
                let psi = FockState::basis(&idx, cutoff).unwrap();
                for j in 0..modes {
                    for k in 0..modes {
                        let ab = ladder_apply(
                            Ladder::Annihilate,
                            j,
                            &ladder_apply(Ladder::Create, k, &psi).unwrap(),
                        )
                        .unwrap();
                        let ba = ladder_apply(
                            Ladder::Create,
                            k,
                            &ladder_apply(Ladder::Annihilate, j, &psi).unwrap(),
                        )
                        .unwrap();
                        let mut comm = ab.sub(&ba).unwrap();
                        if j == k {
                            comm = comm.sub(&psi).unwrap();
                        }
                        // Zero up to the rounding of √n·√n against n.
                        assert!(
                            comm.norm_sqr() < 1e-28,
                            "modes={modes} idx={idx} j={j} k={k}"
                        );
                    }
                }
            }
        }
    }
    // Raising a top-degree state leaves the space and is recorded.
    let top = FockState::basis(&MultiIndex::new(vec![cutoff]), cutoff).unwrap();
    assert!(
        ladder_apply(Ladder::Create, 0, &top)
            .unwrap()
            .truncated_mass()
            > 0.0
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fs_metric_is_hessian_of_potential(zeta in (1usize..=3).prop_flat_map(|k| vector(k, 1.5))) {
        let from_potential = kahler_metric(&fs_potential(1.0), &zeta, 1e-3).unwrap();
        let closed = fs_metric_chart(&zeta).unwrap();
        prop_assert!(max_abs(&(from_potential.real_form() - closed.real_form())) < 1e-6);
    }

    #[test]
    fn hyperbolic_metric_is_hessian_of_potential(zeta in (1usize..=3).prop_flat_map(|k| vector(k, 0.5))) {
        prop_assume!(zeta.iter().map(|z| z.norm_sqr()).sum::<f64>() < 0.6);
        let from_potential = kahler_metric(&hyperbolic_potential(1.0), &zeta, 1e-3).unwrap();
        let closed = hyperbolic_metric_chart(&zeta).unwrap();
        prop_assert!(max_abs(&(from_potential.real_form() - closed.real_form())) < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaled_potential_scales_pullback(zeta in (1usize..=2).prop_flat_map(|k| vector(k, 1.0)), n in 1u32..=6) {
        let base = kahler_metric(&fs_potential(1.0), &zeta, 1e-3).unwrap().real_form();
        let scaled = kahler_metric(&fs_potential(f64::from(n)), &zeta, 1e-3).unwrap().real_form();
        let diff = max_abs(&(scaled - base * f64::from(n)));
        prop_assert!(diff <= 1e-8 * f64::from(n) * max_abs(&fs_metric_chart(&zeta).unwrap().real_form()));
    }

    #[test]
    fn curvature_scales_inversely(zeta in (1usize..=2).prop_flat_map(|k| vector(k, 1.0)), n in 2u32..=6) {
        let base_field = |z: &[Complex64]| fs_metric_chart(z);
        let scaled_field = |z: &[Complex64]| Ok::<_, cs_geometry::Error>(fs_metric_chart(z)?.scaled(f64::from(n)));
        let r_base = scalar_curvature(&base_field, &zeta, 1e-3).unwrap();
        let r_scaled = scalar_curvature(&scaled_field, &zeta, 1e-3).unwrap();
        prop_assert!((r_scaled * f64::from(n) - r_base).abs() < 1e-3);
    }

    #[test]
    fn pulled_back_curvature_scales_inversely(z in complex(1.0), n in 2u32..=4) {
        let space = |n: u32| InnerProductSpace::definite(n as usize + 1).unwrap();
        let field = |n: u32| {
            let map = VeroneseMap::new(2, n).unwrap();
            let sp = space(n);
            move |zeta: &[Complex64]| pullback_hermitian(&map.chart_map(0), zeta, &sp, 1e-4)
        };
        let r1 = scalar_curvature(&field(1), &[z], 1e-3).unwrap();
        let rn = scalar_curvature(&field(n), &[z], 1e-3).unwrap();
        prop_assert!((rn * f64::from(n) - r1).abs() < 1e-3);
    }

    #[test]
    fn second_derivatives_match_closed_forms(z in complex(0.5)) {
        prop_assume!(z.norm_sqr() < 0.5);
        // Hessians at step 1e-4 with one Richardson level.
        let fs = kahler_metric(&fs_potential(1.0), &[z], 1e-4).unwrap();
        prop_assert!(max_abs(&(fs.real_form() - fs_metric_chart(&[z]).unwrap().real_form())) < 1e-6);
        let hyp = kahler_metric(&hyperbolic_potential(1.0), &[z], 1e-4).unwrap();
        prop_assert!(max_abs(&(hyp.real_form() - hyperbolic_metric_chart(&[z]).unwrap().real_form())) < 1e-6);
        let bergman = bergman_metric(z, 1e-4).unwrap();
        prop_assert!((bergman - 2.0 / (1.0 - z.norm_sqr()).powi(2)).abs() < 1e-6);
        let lap = complex_hessian(&|x: &[Complex64]| Ok(x[0].norm_sqr().powi(2)), &[z], 1e-4).unwrap();
        prop_assert!((lap[(0, 0)].re - 4.0 * z.norm_sqr()).abs() < 1e-6);
    }

    #[test]
    fn bergman_reproduces_monomials(z in complex(0.6), m in 0u32..=6) {
        prop_assume!(z.norm_sqr() < 0.5);
        let rule = DiskRule::new(24, 48);
        let value = bergman_reproduce(|chi| chi.powu(m), z, &rule).unwrap();
        prop_assert!((value - z.powu(m)).norm() < 1e-6);
    }
}

#[test]
fn metric_tensor_quadratic_form_matches_real_form() {
    let g = fs_metric_chart(&[c(0.3, -0.2), c(0.1, 0.4)]).unwrap();
    let dz = [c(0.5, 1.0), c(-0.25, 0.3)];
    let x = nalgebra::DVector::from_vec(to_real(&dz));
    let via_real = (x.transpose() * g.real_form() * &x)[(0, 0)];
    assert!((g.line_element(&dz).unwrap() - via_real).abs() < 1e-12);
    let _: &MetricTensor = &g;
}
