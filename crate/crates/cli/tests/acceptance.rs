//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned wall-clock limit.
//!
//! Run with `cargo test -p hbl-cli --test acceptance --release`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hbl_cli::{builtin, RMatrixFile};
use hbl_core::linalg::{rank, Matrix, Subspace};
use hbl_core::poincare::{
    b_sequence, poincare_e, t_specialize_p_from_operator, verify_character_recursion,
};
use hbl_core::qalg::{
    build_e, build_lambda, build_s, distributivity_check, koszul_series_check, Distributivity,
    QuadraticAlgebra, DEFAULT_LATTICE_CAP,
};
use hbl_core::rmatrix::{
    check_hecke, check_yang_baxter, dj_r_matrix, flip_operator, phi_n_of, phi_n_trace, rho,
    super_flip, HeckeOperator,
};
use hbl_core::schur::{bicommutant_check, schur_dimension_check};
use hbl_core::symhecke::{x_n, y_n, HeckeElement, Permutation};
use hbl_core::{Field, Rational, Scalar};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn axioms() -> Outcome {
    let ops = [
        dj_r_matrix(2),
        dj_r_matrix(3),
        flip_operator(1),
        flip_operator(2),
        flip_operator(3),
        super_flip(1, 1),
    ];
    for op in &ops {
        let h = check_hecke(op);
        let yb = check_yang_baxter(op);
        ensure(h.holds && h.witness.is_none(), || {
            format!("{}: hecke {:?}", op.name, h.witness)
        })?;
        ensure(yb.holds && yb.witness.is_none(), || {
            format!("{}: braid {:?}", op.name, yb.witness)
        })?;
    }
    Ok(format!(
        "{} operators, both defects exactly zero",
        ops.len()
    ))
}

fn quantum_planes() -> Outcome {
    for (d, max) in [(2usize, 5usize), (3, 4)] {
        let op = dj_r_matrix(d);
        let s = build_s(&op).map_err(err)?;
        let l = build_lambda(&op).map_err(err)?;
        for n in 0..=max {
            let want_s = binomial((d + n - 1) as u64, n as u64) as usize;
            let want_l = binomial(d as u64, n as u64) as usize;
            let x = rank(&rho(&op, &x_n(n.max(1), &op.q).map_err(err)?).map_err(err)?);
            let y = rank(&rho(&op, &y_n(n.max(1), &op.q).map_err(err)?).map_err(err)?);
            // degree 0 has no symmetrizer; both sides are 1
            let (x, y) = if n == 0 { (1, 1) } else { (x, y) };
            let got = [s.graded_dimension(n), x, l.graded_dimension(n), y];
            ensure(got == [want_s, want_s, want_l, want_l], || {
                format!("dj:{d} n={n}: S/x_n/Lambda/y_n = {got:?}, want {want_s}/{want_l}")
            })?;
        }
    }
    Ok("dj:2 n<=5 and dj:3 n<=4 by direct rank and symmetrizer rank".to_string())
}

fn bialgebra_routes() -> Outcome {
    let op = dj_r_matrix(2);
    let e = build_e(&op).map_err(err)?;
    let p = t_specialize_p_from_operator(&op, 4).map_err(err)?;
    let formula = poincare_e(&p, 4).map_err(err)?;
    let expected = [1u64, 4, 10, 20, 35];
    for n in 0..=4 {
        ensure(*formula.coeff(n) == rat(expected[n] as i64), || {
            format!("formula e_{n} = {}", formula.coeff(n))
        })?;
        ensure(expected[n] == binomial(4 + n as u64 - 1, n as u64), || {
            "binomial".into()
        })?;
        if n <= 3 {
            let direct = e.graded_dimension(n) as u64;
            let central = hbl_core::schur::centralizer_dimension(&op, n).map_err(err)? as u64;
            ensure(direct == expected[n] && central == expected[n], || {
                format!("n={n}: direct {direct}, centralizer {central}")
            })?;
        }
    }
    Ok("1,4,10,20 by three routes; formula gives 35 at n=4".to_string())
}

fn dual_dimensions() -> Outcome {
    let op = dj_r_matrix(2);
    let p = t_specialize_p_from_operator(&op, 5).map_err(err)?;
    let b = b_sequence(&p, 5).map_err(err)?;
    for n in 0..=5 {
        let want = rat(binomial(4, n as u64) as i64);
        let traced = phi_n_trace(&op, n)
            .map_err(err)?
            .eval_at_one()
            .map_err(err)?;
        ensure(b[n] == want && traced == want, || {
            format!("n={n}: recursion {}, trace {traced}", b[n])
        })?;
    }
    let e = build_e(&op).map_err(err)?;
    for n in 1..=3 {
        let phi = phi_n_of(&op, n).map_err(err)?;
        let image = Subspace::span(phi.cols(), phi.row_vectors());
        let meet = e.dual_component_by_intersection(n).map_err(err)?;
        ensure(image == meet, || {
            format!(
                "n={n}: image {} vs intersection {}",
                image.dim(),
                meet.dim()
            )
        })?;
    }
    Ok("b = 1,4,6,4,1,0 by recursion and trace; images equal intersections n<=3".to_string())
}

fn character_recursion() -> Outcome {
    let report = verify_character_recursion(&dj_r_matrix(2), 5).map_err(err)?;
    ensure(report.rows.len() == 5 && report.all_hold(), || {
        let bad: Vec<_> = report
            .rows
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.n)
            .collect();
        format!("fails at n = {bad:?}")
    })?;
    let first = &report.rows[0];
    ensure(!first.holds_p0_one, || {
        "p_0 = 1 unexpectedly holds at n = 1".into()
    })?;
    Ok(format!(
        "symbolic identity for n<=5 with p_0=d; p_0=1 fails at n=1 ({} != {})",
        first.lhs, first.rhs_p0_one
    ))
}

fn super_case() -> Outcome {
    let op = super_flip(1, 1);
    let direct: Vec<u64> = build_e(&op)
        .map_err(err)?
        .graded_dimensions(3)
        .into_iter()
        .map(|x| x as u64)
        .collect();
    let p = t_specialize_p_from_operator(&op, 3).map_err(err)?;
    let alternating: Vec<Rational> = (0..=3)
        .map(|k| rat(1 + if k % 2 == 0 { 1 } else { -1 }))
        .collect();
    ensure(p == alternating, || format!("p = {p:?}"))?;
    let formula = poincare_e(&p, 3).map_err(err)?;
    ensure(direct == [1, 4, 8, 12], || format!("direct {direct:?}"))?;
    for n in 0..=3 {
        ensure(*formula.coeff(n) == rat(direct[n] as i64), || {
            format!("formula at n={n}")
        })?;
    }
    // no C(m+n-1, n) fits: m = 4 from degree 1 would force 10 in degree 2
    ensure(
        (1..=16).all(|m| (1..=3).any(|n| binomial(m + n - 1, n) != direct[n as usize])),
        || "a binomial pattern matches".into(),
    )?;
    Ok("e = 1,4,8,12 by direct rank and formula".to_string())
}

fn distributive<F: Field>(a: &QuadraticAlgebra<F>, n: usize) -> Result<String, String> {
    match distributivity_check(a, n, DEFAULT_LATTICE_CAP).map_err(err)? {
        Distributivity::Distributive { lattice_size } => Ok(format!("{}({lattice_size})", a.label)),
        other => Err(format!("{}: {}", a.label, other.label())),
    }
}

fn koszul() -> Outcome {
    let op = dj_r_matrix(2);
    let s = build_s(&op).map_err(err)?;
    let l = build_lambda(&op).map_err(err)?;
    let e = build_e(&op).map_err(err)?;
    let verdicts = [
        distributive(&s, 4)?,
        distributive(&l, 4)?,
        distributive(&e, 4)?,
    ];
    let sup = build_e(&super_flip(1, 1)).map_err(err)?;
    for a in [&s, &l, &e, &sup] {
        let check = koszul_series_check(a, 4);
        ensure(check.holds(), || {
            format!("{}: series defect at {:?}", a.label, check.first_failure())
        })?;
    }
    Ok(format!(
        "symbolic n=4 lattices distributive {}; series identity through N=4",
        verdicts.join(" ")
    ))
}

fn schur_side() -> Outcome {
    let cases: [(HeckeOperator, usize, u64); 3] = [
        (dj_r_matrix(2), 2, 10),
        (dj_r_matrix(2), 3, 20),
        (super_flip(1, 1), 2, 8),
    ];
    for (op, n, want) in &cases {
        let c = schur_dimension_check(op, *n).map_err(err)?;
        ensure(c.holds() && c.sum_of_squares == *want, || {
            format!(
                "{} n={n}: sum m^2 {}, centralizer {}, dim E {}, sum m f {}",
                op.name, c.sum_of_squares, c.centralizer, c.e_dimension, c.total_dimension
            )
        })?;
    }
    let op = dj_r_matrix(2);
    for n in 1..=3 {
        let (bi, span) = bicommutant_check(&op, n).map_err(err)?;
        ensure(bi == span, || {
            format!("n={n}: bicommutant {bi}, span {span}")
        })?;
    }
    Ok(
        "sum m^2 = centralizer = dim E (10, 20, 8); sum m f = d^n; double centralizer n<=3"
            .to_string(),
    )
}

fn random_element(n: usize, terms: &[(usize, i64)]) -> HeckeElement {
    let all = Permutation::all(n);
    terms
        .iter()
        .fold(HeckeElement::zero(n, Scalar::q()), |acc, &(k, c)| {
            acc.add(
                &HeckeElement::basis(all[k % all.len()].clone(), Scalar::q())
                    .scale(&Scalar::integer(c)),
            )
            .unwrap()
        })
}

fn random_subspace(ambient: usize, rows: &[Vec<i64>]) -> Subspace<Rational> {
    let dense: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().take(ambient).map(|&x| rat(x)).collect())
        .collect();
    Subspace::span_dense(ambient, &dense)
}

fn quiet(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    }
}

fn property_suites() -> Outcome {
    let q = Scalar::q();
    for n in 1..=4 {
        let x = x_n(n, &q).map_err(err)?;
        let y = y_n(n, &q).map_err(err)?;
        ensure(
            x.mul(&x).map_err(err)? == x && y.mul(&y).map_err(err)? == y,
            || format!("n={n}"),
        )?;
        ensure(n < 2 || x.mul(&y).map_err(err)?.is_zero(), || {
            format!("x y at n={n}")
        })?;
        for i in 1..n {
            let t = HeckeElement::generator(i, n, q.clone()).map_err(err)?;
            ensure(t.mul(&x).map_err(err)? == x.scale(&q), || {
                format!("T_{i} x_{n}")
            })?;
            ensure(
                t.mul(&y).map_err(err)? == y.scale(&Scalar::integer(-1)),
                || format!("T_{i} y_{n}"),
            )?;
        }
    }

    let mut runner = TestRunner::new(quiet(16));
    let terms = prop::collection::vec((0usize..24, -2i64..=2), 1..4);
    runner
        .run(&(terms.clone(), terms.clone(), terms), |(a, b, c)| {
            let (a, b, c) = (
                random_element(4, &a),
                random_element(4, &b),
                random_element(4, &c),
            );
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            prop_assert_eq!(left, a.mul(&b.mul(&c).unwrap()).unwrap());
            Ok(())
        })
        .map_err(|e| format!("associativity: {e}"))?;

    let mut runner = TestRunner::new(quiet(48));
    let rows = || prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 0..5);
    runner
        .run(&(rows(), rows()), |(u, v)| {
            let (u, v) = (random_subspace(6, &u), random_subspace(6, &v));
            let sum = u.sum(&v).unwrap();
            let meet = u.intersect(&v).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
            prop_assert!(meet.is_subspace_of(&u) && u.is_subspace_of(&sum));
            Ok(())
        })
        .map_err(|e| format!("dimension law: {e}"))?;

    let mut runner = TestRunner::new(quiet(32));
    runner
        .run(&(-30i64..30, 1i64..9), |(num, den)| {
            prop_assume!(num != 0);
            let p = Rational::new(num.into(), den.into());
            let op = builtin("dj:2").unwrap().specialize(&p).unwrap();
            let file: RMatrixFile = serde_json::from_str(&op.to_file().to_json()).unwrap();
            prop_assert_eq!(file.to_operator().unwrap(), op);
            Ok(())
        })
        .map_err(|e| format!("round trip: {e}"))?;
    let symbolic = builtin("dj:3").map_err(err)?;
    ensure(
        symbolic.to_file().to_operator().map_err(err)? == symbolic,
        || "symbolic round trip".into(),
    )?;
    let m: Matrix<Scalar> = dj_r_matrix(2).r;
    ensure(
        m.to_dense()
            .iter()
            .flatten()
            .all(|x| x.to_string().parse::<Scalar>().ok().as_ref() == Some(x)),
        || "scalar text round trip".into(),
    )?;

    let out = Command::new(env!("CARGO_BIN_EXE_hbl"))
        .args(["report", "--builtin", "dj:2", "-N", "3"])
        .env_remove("HBL_MAX_AMBIENT")
        .output()
        .map_err(err)?;
    ensure(out.status.code() == Some(0), || {
        format!(
            "report exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    let checks = doc["checks"].as_array().map_or(0, |c| c.len());
    Ok(format!(
        "hecke, linalg and round-trip properties hold; report -N 3 exit 0 with {checks} checks"
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "axioms",
            limit: Duration::from_secs(10),
            run: axioms,
        },
        Criterion {
            id: 2,
            title: "quantum-plane dimensions",
            limit: minutes(2),
            run: quantum_planes,
        },
        Criterion {
            id: 3,
            title: "matrix-bialgebra routes",
            limit: minutes(10),
            run: bialgebra_routes,
        },
        Criterion {
            id: 4,
            title: "dual dimensions and Phi_n",
            limit: minutes(15),
            run: dual_dimensions,
        },
        Criterion {
            id: 5,
            title: "character recursion",
            limit: minutes(5),
            run: character_recursion,
        },
        Criterion {
            id: 6,
            title: "super case",
            limit: minutes(5),
            run: super_case,
        },
        Criterion {
            id: 7,
            title: "koszul checks",
            limit: minutes(30),
            run: koszul,
        },
        Criterion {
            id: 8,
            title: "schur side",
            limit: minutes(15),
            run: schur_side,
        },
        Criterion {
            id: 9,
            title: "property suites and report",
            limit: minutes(15),
            run: property_suites,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("over time limit; {detail}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!(
            "{tag} criterion {} {} [{:.2}s / limit {}s]: {detail}",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
