use std::f64::consts::{FRAC_PI_2, PI};

use ergogap::correlations::{correlation_report, monotone_map_f, mutual_information};
use ergogap::energetics::{ergotropy_report, reg_closed_form, tms_gap, ModePair, RegValue};
use ergogap::phase_space::{
    apply_symplectic, check_physical, local_standardizer, optimal_local_squeezings, standard_form,
    symplectic_eigenvalues, StandardFormParams, SymplecticMatrix,
};
use ergogap::states::{
    bell_mixture_cm, compose_bloch_messiah, fock_superposition_cm, photon_subtract_mode_a,
    photon_subtracted_tms, random_state_at, tms, SamplerRanges,
};
use ergogap::witnesses::{ppt_separable, theorem2_bounds};
use ergogap::{BlochMessiahParams, CovarianceMatrix};
use proptest::prelude::*;

fn bm_params() -> impl Strategy<Value = BlochMessiahParams> {
    (
        1.0..4.0f64,
        -1.0..1.0f64,
        -3.0..3.0f64,
        -3.0..3.0f64,
        0.0..FRAC_PI_2,
        0.0..2.0 * PI,
        0.0..2.0 * PI,
    )
        .prop_map(|(k, g, la, lb, theta, pa, pb)| {
            BlochMessiahParams::new(k, g * (k - 1.0), la.exp(), lb.exp(), theta, pa, pb).unwrap()
        })
}

fn symplectic() -> impl Strategy<Value = SymplecticMatrix> {
    (
        0.0..2.0 * PI,
        0.0..2.0 * PI,
        0.0..FRAC_PI_2,
        -1.0..1.0f64,
        -1.0..1.0f64,
        -1.0..1.0f64,
        0.0..2.0 * PI,
    )
        .prop_map(|(pa, pb, theta, sa, sb, r, pc)| {
            SymplecticMatrix::phase_rotation(pa, pb)
                * SymplecticMatrix::beam_splitter(theta)
                * SymplecticMatrix::local_squeezer(sa.exp(), sb.exp()).unwrap()
                * SymplecticMatrix::two_mode_squeezer(r)
                * SymplecticMatrix::phase_rotation(pc, 0.0)
        })
}

fn local_symplectic() -> impl Strategy<Value = SymplecticMatrix> {
    (0.0..2.0 * PI, 0.0..2.0 * PI, -1.5..1.5f64, -1.5..1.5f64, 0.0..2.0 * PI, 0.0..2.0 * PI)
        .prop_map(|(pa, pb, sa, sb, qa, qb)| {
            SymplecticMatrix::phase_rotation(pa, pb)
                * SymplecticMatrix::local_squeezer(sa.exp(), sb.exp()).unwrap()
                * SymplecticMatrix::phase_rotation(qa, qb)
        })
}

fn modes() -> impl Strategy<Value = ModePair> {
    (0.2..3.0f64, 1.0..10.0f64).prop_map(|(w, alpha)| ModePair::with_ratio(w, alpha).unwrap())
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn symplectic_invariance(p in bm_params(), s in symplectic()) {
        let sigma = compose_bloch_messiah(&p).unwrap();
        let before = symplectic_eigenvalues(&sigma).unwrap();
        let after = symplectic_eigenvalues(&apply_symplectic(&s, &sigma)).unwrap();
        prop_assert!(rel_close(before.nu_plus, after.nu_plus, 1e-8));
        prop_assert!(rel_close(before.nu_minus, after.nu_minus, 1e-8));
    }

    #[test]
    fn composition_recovers_thermal_factors(p in bm_params()) {
        let sigma = compose_bloch_messiah(&p).unwrap();
        prop_assert!(check_physical(&sigma).is_physical);
        let spec = symplectic_eigenvalues(&sigma).unwrap();
        prop_assert!((spec.nu_plus - (p.k + p.gamma.abs())).abs() < 1e-9);
        prop_assert!((spec.nu_minus - (p.k - p.gamma.abs())).abs() < 1e-9);
    }

    #[test]
    fn standard_form_idempotent(
        a in 1.0..6.0f64,
        b in 1.0..6.0f64,
        u in 0.0..1.0f64,
        v in -1.0..1.0f64,
    ) {
        // choose c1 ≥ |c2| inside the physical region
        let cmax = ((a - 1.0) * (b - 1.0)).sqrt().min((a * b - 1.0).sqrt());
        let c1 = u * cmax;
        let c2 = v * c1;
        let params = StandardFormParams { a, b, c1, c2 };
        let sigma = params.to_matrix().unwrap();
        prop_assume!(check_physical(&sigma).is_physical);
        let sf = standard_form(&sigma).unwrap();
        prop_assert!((sf.a - a).abs() < 1e-10);
        prop_assert!((sf.b - b).abs() < 1e-10);
        prop_assert!((sf.c1 - c1).abs() < 1e-10);
        prop_assert!((sf.c2 - c2).abs() < 1e-10);
    }

    #[test]
    fn dual_path_standard_form(p in bm_params()) {
        let sigma = compose_bloch_messiah(&p).unwrap();
        let sf = standard_form(&sigma).unwrap();
        let std = apply_symplectic(&local_standardizer(&p).unwrap(), &sigma);
        let m = std.matrix();
        let scale = m.amax().max(1.0);
        // blocks are diagonal with equal entries per mode
        for (i, j) in [(0, 1), (2, 3), (0, 3), (1, 2)] {
            prop_assert!(m[(i, j)].abs() < 1e-9 * scale, "entry ({i},{j}) = {}", m[(i, j)]);
        }
        prop_assert!((m[(0, 0)] - m[(1, 1)]).abs() < 1e-9 * scale);
        prop_assert!((m[(2, 2)] - m[(3, 3)]).abs() < 1e-9 * scale);
        prop_assert!((m[(0, 0)] - sf.a).abs() < 1e-9 * scale);
        prop_assert!((m[(2, 2)] - sf.b).abs() < 1e-9 * scale);
        let mut direct = [m[(0, 2)].abs(), m[(1, 3)].abs()];
        direct.sort_by(f64::total_cmp);
        prop_assert!((direct[1] - sf.c1.abs()).abs() < 1e-9 * scale);
        prop_assert!((direct[0] - sf.c2.abs()).abs() < 1e-9 * scale);
        let (ra, rb) = optimal_local_squeezings(&p).unwrap();
        prop_assert!(ra > 0.0 && rb > 0.0);
    }

    #[test]
    fn closed_form_reg_matches_pipeline(p in bm_params(), alpha in 1.0..10.0f64) {
        prop_assume!(p.k > 1.0 + 1e-3);
        let sigma = compose_bloch_messiah(&p).unwrap();
        let rep = ergotropy_report(&sigma, &ModePair::with_ratio(1.0, alpha).unwrap()).unwrap();
        prop_assume!(rep.e_global_passive > 1e-6);
        let pipeline = rep.reg.value().unwrap();
        let closed = reg_closed_form(&p, alpha).unwrap();
        prop_assert!(rel_close(pipeline, closed, 1e-9), "{pipeline} vs {closed}");
    }

    #[test]
    fn gap_bounds_and_ergotropy(p in bm_params(), m in modes()) {
        let rep = ergotropy_report(&compose_bloch_messiah(&p).unwrap(), &m).unwrap();
        prop_assert!(rep.gap >= -1e-9);
        prop_assert!(rep.gaussian_ergotropy_global >= rep.gap - 1e-9);
        prop_assert!(rep.gaussian_ergotropy_local >= -1e-9);
    }

    #[test]
    fn gap_vanishes_iff_uncorrelated(p in bm_params(), product in any::<bool>(), m in modes()) {
        // hotter mode on the lower frequency; otherwise a global swap alone
        // lowers the energy of a product state
        let gamma = p.gamma.abs();
        let p = if product {
            BlochMessiahParams { theta: 0.0, gamma, ..p }
        } else {
            BlochMessiahParams { theta: p.theta.clamp(0.05, FRAC_PI_2 - 0.05), gamma, ..p }
        };
        let sigma = compose_bloch_messiah(&p).unwrap();
        let gap = ergotropy_report(&sigma, &m).unwrap().gap;
        let sf = standard_form(&sigma).unwrap();
        let uncorrelated = sf.c1.abs() <= 1e-9 && sf.c2.abs() <= 1e-9;
        prop_assert_eq!(gap <= 1e-9, uncorrelated, "gap {} c = ({}, {})", gap, sf.c1, sf.c2);
    }

    #[test]
    fn local_unitary_invariance(p in bm_params(), l in local_symplectic(), m in modes()) {
        let sigma = compose_bloch_messiah(&p).unwrap();
        let moved = apply_symplectic(&l, &sigma);
        let (r0, r1) = (ergotropy_report(&sigma, &m).unwrap(), ergotropy_report(&moved, &m).unwrap());
        prop_assert!(rel_close(r0.gap, r1.gap, 1e-9));
        if let (RegValue::Value(x), RegValue::Value(y)) = (r0.reg, r1.reg) {
            prop_assert!(rel_close(x, y, 1e-9));
        }
        let (q0, q1) = (mutual_information(&sigma).unwrap(), mutual_information(&moved).unwrap());
        prop_assert!(q0 >= -1e-9);
        prop_assert!(rel_close(q0, q1, 1e-9));
    }

    #[test]
    fn pure_states_gap_and_information(p in bm_params(), m in modes()) {
        let p = BlochMessiahParams { k: 1.0, gamma: 0.0, ..p };
        let sigma = compose_bloch_messiah(&p).unwrap();
        let rep = ergotropy_report(&sigma, &m).unwrap();
        let a = sigma.local_invariants().det_a.sqrt();
        prop_assert!(rel_close(rep.gap, 0.5 * (a - 1.0) * (m.omega_a() + m.omega_b()), 1e-9));
        let (sep, _) = ppt_separable(&sigma);
        prop_assert_eq!(rep.gap <= 1e-9, sep);
        let qmi = mutual_information(&sigma).unwrap();
        prop_assert!(rel_close(monotone_map_f(rep.gap, m.gamma_coef()), qmi, 1e-9));
    }

    #[test]
    fn bound_ordering(k in 1.001..6.0f64, g in -1.0..1.0f64, alpha in 1.0..10.0f64) {
        let gamma = g * (k - 1.0);
        if let Ok((sep, ent)) = theorem2_bounds(k, gamma, alpha) {
            prop_assert!(ent <= sep + 1e-12);
        }
    }

    #[test]
    fn photon_subtraction_routes_agree(k in 1.0..5.0f64, r in 0.01..1.5f64) {
        let z = (-2.0 * r).exp();
        let closed = photon_subtracted_tms(k, z).unwrap().sigma;
        let projected = photon_subtract_mode_a(&tms(k, r).unwrap()).unwrap();
        let scale = closed.matrix().amax();
        prop_assert!((closed.matrix() - projected.matrix()).amax() < 1e-10 * scale);
        prop_assert!(check_physical(&closed).is_physical);
    }
}

#[test]
fn misordered_product_state_is_flagged() {
    let m = ModePair::new(1.0, 2.0).unwrap();
    let rep = ergotropy_report(&CovarianceMatrix::thermal(1.5, 3.0), &m).unwrap();
    assert!(rep.mode_order_flag);
    assert!((rep.gap - 0.75).abs() < 1e-12);
    let rep = ergotropy_report(&CovarianceMatrix::thermal(3.0, 1.5), &m).unwrap();
    assert!(!rep.mode_order_flag);
    assert!(rep.gap.abs() < 1e-12);
}

#[test]
fn monotone_map_reproduces_information() {
    // f is stated with the pure-state QMI; check the k = 1 family explicitly
    let m = ModePair::new(1.0, 2.5).unwrap();
    for r in [0.1, 0.5, 1.0, 2.0] {
        let sigma = tms(1.0, r).unwrap();
        let gap = ergotropy_report(&sigma, &m).unwrap().gap;
        let qmi = mutual_information(&sigma).unwrap();
        assert!(rel_close(monotone_map_f(gap, m.gamma_coef()), qmi, 1e-9));
    }
}

#[test]
fn gap_nonnegative_over_sampler() {
    let ranges = SamplerRanges::default();
    let m = ModePair::new(1.0, 3.0).unwrap();
    for i in 0..10_000u64 {
        let k = 1.0 + 3.0 * ((i % 97) as f64 + 1.0) / 97.0;
        let gamma = (k - 1.0) * (((i % 13) as f64) / 6.0 - 1.0);
        let rec = random_state_at(k, gamma, &ranges, 99, i).unwrap();
        let rep = ergotropy_report(&rec.sigma, &m).unwrap();
        assert!(rep.gap >= -1e-9, "draw {i}: gap {}", rep.gap);
    }
}

#[test]
fn tms_gap_trend() {
    let w = 1.0;
    let m = ModePair::equal(w).unwrap();
    let mut last = 0.0;
    for k in [1.0, 1.5, 2.0, 5.0, 10.0] {
        let g = ergotropy_report(&tms(k, 0.7).unwrap(), &m).unwrap().gap;
        assert!((g - tms_gap(k, 0.7, w)).abs() < 1e-9 * g);
        assert!(g > last);
        last = g;
    }
    let regs: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&k| ergotropy_report(&tms(k, 0.7).unwrap(), &m).unwrap().reg.value().unwrap())
        .collect();
    assert!((regs[2] - regs[1]).abs() < (regs[1] - regs[0]).abs());
    assert!(regs.iter().all(|r| r.is_finite()));
}

#[test]
fn every_constructor_is_physical() {
    let mut states: Vec<CovarianceMatrix> = Vec::new();
    for n in 0..=5 {
        for m in 0..=5 {
            states.push(fock_superposition_cm(n, m).sigma);
        }
        for i in 0..=10 {
            states.push(bell_mixture_cm(n, i as f64 / 10.0).unwrap().sigma);
        }
    }
    for (k, r) in [(1.0, 0.0), (1.0, 2.0), (3.0, 0.4)] {
        states.push(tms(k, r).unwrap());
    }
    for z in [0.05, 0.3, 1.0, 4.0] {
        states.push(photon_subtracted_tms(1.5, z).unwrap().sigma);
    }
    for s in states {
        assert!(check_physical(&s).is_physical, "{s}");
        correlation_report(&s).unwrap();
    }
}
