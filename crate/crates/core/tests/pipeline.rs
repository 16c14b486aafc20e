//! Cross-checks between independent routes to the same dimensions.

use hbl_core::linalg::{rank, Subspace};
use hbl_core::poincare::{
    b_sequence, p_sequence_from_s, poincare_e, series_of, t_specialize_p_from_operator,
    verify_character_recursion,
};
use hbl_core::qalg::{build_e, build_lambda, build_s};
use hbl_core::rmatrix::{dj_r_matrix, flip_operator, phi_n_of, rho, super_flip, HeckeOperator};
use hbl_core::schur::{centralizer_dimension, class_size, multiplicities, sn_character_table};
use hbl_core::symhecke::{x_n, y_n};
use hbl_core::{PowerSeries, Rational, Scalar};

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn quantum_planes_match_symmetrizer_ranks() {
    for (op, max) in [(dj_r_matrix(2), 4), (dj_r_matrix(3), 3)] {
        let s = build_s(&op).unwrap();
        let l = build_lambda(&op).unwrap();
        for n in 1..=max {
            let x = rho(&op, &x_n(n, &op.q).unwrap()).unwrap();
            let y = rho(&op, &y_n(n, &op.q).unwrap()).unwrap();
            assert_eq!(s.graded_dimension(n), rank(&x));
            assert_eq!(l.graded_dimension(n), rank(&y));
            assert_eq!(
                Scalar::integer(s.graded_dimension(n) as i64),
                x.trace().unwrap()
            );
            assert_eq!(
                Scalar::integer(l.graded_dimension(n) as i64),
                y.trace().unwrap()
            );
        }
    }
}

#[test]
fn p_sequence_routes_agree() {
    let ops: Vec<HeckeOperator> = vec![
        dj_r_matrix(2),
        dj_r_matrix(3),
        flip_operator(2),
        flip_operator(3),
    ];
    for op in ops {
        let s = build_s(&op).unwrap();
        let ps = series_of(&s.graded_dimensions(5));
        let from_series = p_sequence_from_s(&ps, 4).unwrap();
        let from_traces = t_specialize_p_from_operator(&op, 4).unwrap();
        assert_eq!(from_series, from_traces, "{}", op.name);
    }
}

#[test]
fn e_series_matches_direct_rank() {
    for op in [dj_r_matrix(2), flip_operator(2), super_flip(1, 1)] {
        let p = t_specialize_p_from_operator(&op, 3).unwrap();
        let series = poincare_e(&p, 3).unwrap();
        let e = build_e(&op).unwrap();
        let direct: Vec<Rational> = e
            .graded_dimensions(3)
            .iter()
            .map(|&x| rat(x as i64))
            .collect();
        assert_eq!(series.coeffs(), direct.as_slice(), "{}", op.name);
    }
}

#[test]
fn b_recursion_matches_intersections() {
    for op in [dj_r_matrix(2), super_flip(1, 1)] {
        let p = t_specialize_p_from_operator(&op, 4).unwrap();
        let b = b_sequence(&p, 4).unwrap();
        let e = build_e(&op).unwrap();
        let direct: Vec<Rational> = e
            .dual_graded_dimensions(4)
            .iter()
            .map(|&x| rat(x as i64))
            .collect();
        assert_eq!(b, direct, "{}", op.name);
    }
}

#[test]
fn e_and_dual_series_are_inverse() {
    for p in [
        vec![rat(2); 6],
        vec![rat(2), rat(0), rat(2), rat(0), rat(2), rat(0)],
    ] {
        let e = poincare_e(&p, 6).unwrap();
        let b = b_sequence(&p, 6).unwrap();
        let dual = PowerSeries::new(b).alternate();
        assert_eq!(e.mul(&dual), PowerSeries::one(6));
    }
}

#[test]
fn phi_image_equals_dual_component() {
    let op = dj_r_matrix(2);
    let e = build_e(&op).unwrap();
    for n in 1..=3 {
        let phi = phi_n_of(&op, n).unwrap();
        let image = Subspace::span(phi.cols(), phi.row_vectors());
        assert_eq!(image, e.dual_component(n));
    }
}

#[test]
fn character_recursion_dj2() {
    let report = verify_character_recursion(&dj_r_matrix(2), 4).unwrap();
    assert!(report.all_hold());
    assert!(!report.rows[0].holds_p0_one);
}

#[test]
fn dj_dimensions_do_not_depend_on_p() {
    let op = dj_r_matrix(2);
    let e = build_e(&op).unwrap();
    let s = build_s(&op).unwrap();
    for p0 in [
        Rational::new(5.into(), 3.into()),
        Rational::new((-7).into(), 2.into()),
    ] {
        let sp = op.specialize(&p0).unwrap();
        assert_eq!(
            build_e(&sp).unwrap().graded_dimensions(3),
            e.graded_dimensions(3)
        );
        assert_eq!(
            build_s(&sp).unwrap().graded_dimensions(4),
            s.graded_dimensions(4)
        );
        assert_eq!(
            build_e(&sp).unwrap().dual_graded_dimensions(4),
            e.dual_graded_dimensions(4)
        );
    }
}

#[test]
fn binomial_dimensions() {
    for d in 2..=3u64 {
        let op = dj_r_matrix(d as usize);
        let e = build_e(&op).unwrap();
        let dims = e.graded_dimensions(2);
        for (n, &x) in dims.iter().enumerate() {
            assert_eq!(x as u64, binomial(d * d + n as u64 - 1, n as u64));
        }
    }
}

#[test]
fn centralizer_equals_e_dimension() {
    for op in [
        dj_r_matrix(2),
        flip_operator(2),
        super_flip(1, 1),
        dj_r_matrix(3),
    ] {
        let max = if op.d == 2 { 4 } else { 2 };
        let e = build_e(&op).unwrap();
        for n in 1..=max {
            assert_eq!(
                centralizer_dimension(&op, n).unwrap(),
                e.graded_dimension(n),
                "{} n={n}",
                op.name
            );
        }
    }
}

#[test]
fn character_table_orthogonality() {
    for n in 1..=6 {
        let t = sn_character_table(n).unwrap();
        let order: i64 = (1..=n as i64).product();
        for (i, a) in t.values.iter().enumerate() {
            for (j, b) in t.values.iter().enumerate() {
                let s: i64 = t
                    .partitions
                    .iter()
                    .enumerate()
                    .map(|(k, mu)| class_size(mu) as i64 * a[k] * b[k])
                    .sum();
                assert_eq!(s, if i == j { order } else { 0 });
            }
        }
    }
}

#[test]
fn multiplicities_vanish_beyond_d_rows() {
    for (d, n) in [(2, 3), (2, 4), (3, 4)] {
        let m = multiplicities(&dj_r_matrix(d), n).unwrap();
        assert_eq!(m.total_dimension(), (d as u64).pow(n as u32));
        for e in &m.entries {
            if e.partition.len() > d {
                assert_eq!(e.multiplicity, 0, "{:?}", e.partition);
            }
        }
    }
}
