//! The verification tasks behind each subcommand.

use std::fmt;

use hbl_core::exactnum::{format_rational, rf_eval_at_one, ExactError};
use hbl_core::linalg::rank;
use hbl_core::poincare::{
    b_sequence, character_p_sequence, p_sequence_from_s, poincare_e, series_of,
    verify_character_recursion, DimensionTable,
};
use hbl_core::qalg::{
    build_e, build_lambda, build_s, distributivity_check, koszul_series_check, Distributivity,
    QuadraticAlgebra,
};
use hbl_core::rmatrix::{
    character, check_hecke, check_yang_baxter, phi_n_trace, rho, HeckeOperator,
};
use hbl_core::schur::{
    bicommutant_check, centralizer_dimension, class_representative,
    multiplicities_from_class_values, partitions,
};
use hbl_core::symhecke::{q_factorial, x_n, y_n, Permutation};
use hbl_core::{Field, Rational, Scalar};

use crate::budget::Budget;
use crate::error::CliError;
use crate::report::{Check, Observation, TableRecord, VerificationReport};
use crate::source::Operator;

/// Coefficient fields an operator can live over.
pub trait Coefficient: Field {
    /// The value at `q = 1`.
    fn at_one(&self) -> Result<Rational, ExactError>;
    /// Whether specializing to `q = 1` is meaningful for an operator with parameter `q`.
    fn t_route_available(q: &Self) -> bool;
    /// Verdicts over a specialization are advisory for the generic operator.
    const SYMBOLIC: bool;
}

impl Coefficient for Scalar {
    const SYMBOLIC: bool = true;

    fn at_one(&self) -> Result<Rational, ExactError> {
        rf_eval_at_one(self)
    }

    fn t_route_available(q: &Self) -> bool {
        rf_eval_at_one(q).is_ok_and(|v| Field::is_one(&v))
    }
}

impl Coefficient for Rational {
    const SYMBOLIC: bool = false;

    fn at_one(&self) -> Result<Rational, ExactError> {
        Ok(self.clone())
    }

    fn t_route_available(q: &Self) -> bool {
        Field::is_one(q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    S,
    Lambda,
    E,
    Edual,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::S => "S",
            Algebra::Lambda => "Lambda",
            Algebra::E => "E",
            Algebra::Edual => "Edual",
        })
    }
}

impl Algebra {
    /// Dimension of the generating space.
    fn generators(&self, d: usize) -> usize {
        match self {
            Algebra::S | Algebra::Lambda => d,
            Algebra::E | Algebra::Edual => d * d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Axioms {
        max_degree: usize,
    },
    Dims {
        algebra: Algebra,
        max_degree: usize,
    },
    Poincare {
        max_degree: usize,
    },
    Koszul {
        algebra: Algebra,
        degree: usize,
        cap: usize,
    },
    Schur {
        degree: usize,
    },
    Report {
        max_degree: usize,
        cap: usize,
    },
}

impl Task {
    fn name(&self) -> &'static str {
        match self {
            Task::Axioms { .. } => "axioms",
            Task::Dims { .. } => "dims",
            Task::Poincare { .. } => "poincare",
            Task::Koszul { .. } => "koszul",
            Task::Schur { .. } => "schur",
            Task::Report { .. } => "report",
        }
    }
}

pub fn run(
    task: &Task,
    source: &Operator,
    budget: &Budget,
) -> Result<VerificationReport, CliError> {
    match source {
        Operator::Symbolic(op) => Runner { source, op, budget }.run(task),
        Operator::Specialized { op, .. } => Runner { source, op, budget }.run(task),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

struct Runner<'a, F: Coefficient> {
    source: &'a Operator,
    op: &'a HeckeOperator<F>,
    budget: &'a Budget,
}

impl<F: Coefficient> Runner<'_, F> {
    fn run(&self, task: &Task) -> Result<VerificationReport, CliError> {
        let mut report = VerificationReport::new(task.name(), self.source);
        match *task {
            Task::Axioms { max_degree } => self.axioms(&mut report, max_degree),
            Task::Dims {
                algebra,
                max_degree,
            } => {
                self.require_valid(max_degree)?;
                self.dims(&mut report, algebra, max_degree)?
            }
            Task::Poincare { max_degree } => {
                self.require_valid(max_degree)?;
                self.poincare(&mut report, max_degree)?
            }
            Task::Koszul {
                algebra,
                degree,
                cap,
            } => {
                self.require_valid(degree)?;
                self.koszul(&mut report, algebra, degree, cap)?
            }
            Task::Schur { degree } => {
                self.require_valid(degree)?;
                self.schur(&mut report, degree)?
            }
            Task::Report { max_degree, cap } => self.full(&mut report, max_degree, cap)?,
        }
        Ok(report)
    }

    fn d(&self) -> usize {
        self.op.d
    }

    fn t_route(&self) -> bool {
        F::t_route_available(&self.op.q)
    }

    /// Every computation beyond the axiom checks assumes a valid Hecke operator.
    fn require_valid(&self, degree: usize) -> Result<(), CliError> {
        self.op
            .validate(degree.max(2))
            .map_err(|e| CliError::Source(format!("operator rejected: {e}")))
    }

    fn algebra(&self, which: Algebra) -> Result<QuadraticAlgebra<F>, CliError> {
        match which {
            Algebra::S => build_s(self.op),
            Algebra::Lambda => build_lambda(self.op),
            Algebra::E | Algebra::Edual => build_e(self.op),
        }
        .map_err(CliError::compute)
    }

    fn axioms(&self, report: &mut VerificationReport, max_degree: usize) {
        let check = Check::start("q-nonzero", None);
        let q = self.op.q.to_string();
        report.push(check.verdict("exact-identity", q, !self.op.q.is_zero()));
        for n in 1..=max_degree {
            let check = Check::start("q-factorial-nonzero", Some(n));
            let v = q_factorial(n, &self.op.q);
            report.push(check.verdict("exact-identity", v.to_string(), !v.is_zero()));
        }
        for (name, result) in [
            ("hecke", check_hecke(self.op)),
            ("yang-baxter", check_yang_baxter(self.op)),
        ] {
            let check = Check::start(name, None);
            let computed = match &result.witness {
                None => "0".to_string(),
                Some((i, j, v)) => format!("entry ({i}, {j}) = {v}"),
            };
            report.push(check.verdict("exact-identity", computed, result.holds));
        }
        let check = Check::start("invertible", None);
        let ok = self.op.r.inverse().is_ok();
        report.push(check.verdict("exact-identity", ok.to_string(), ok));
    }

    fn dims(
        &self,
        report: &mut VerificationReport,
        which: Algebra,
        max_degree: usize,
    ) -> Result<(), CliError> {
        let m = which.generators(self.d());
        self.budget
            .require(&format!("{which} in degree {max_degree}"), m, max_degree)?;
        let alg = self.algebra(which)?;
        let name = match which {
            Algebra::Edual => "dim B_n".to_string(),
            _ => format!("dim {which}_n"),
        };
        let mut direct = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let check = Check::start(&name, Some(n));
            let value = match which {
                Algebra::Edual => alg.dual_graded_dimension(n),
                _ => alg.graded_dimension(n),
            };
            direct.push(value);
            let mut routes = vec![("direct-rank", value.to_string())];
            match which {
                Algebra::S | Algebra::Lambda => {
                    let e = if which == Algebra::S {
                        x_n(n, &self.op.q)
                    } else {
                        y_n(n, &self.op.q)
                    };
                    if let Ok(e) = e {
                        let image = rho(self.op, &e).map_err(CliError::compute)?;
                        routes.push(("symmetrizer-rank", rank(&image).to_string()));
                    }
                }
                Algebra::E => {
                    let c = centralizer_dimension(self.op, n).map_err(CliError::compute)?;
                    routes.push(("centralizer", c.to_string()));
                }
                Algebra::Edual => {
                    if self.t_route() {
                        let tr = phi_n_trace(self.op, n).map_err(CliError::compute)?;
                        let v = tr.at_one().map_err(CliError::compute)?;
                        routes.push(("phi-trace", format_rational(&v)));
                    }
                }
            }
            report.push(check.agree(&routes));
        }
        report
            .tables
            .push(table(&DimensionTable::from_direct(name, &direct)));
        Ok(())
    }

    fn poincare(&self, report: &mut VerificationReport, max_degree: usize) -> Result<(), CliError> {
        let d = self.d();
        self.budget
            .require("S for the Poincaré series", d, max_degree)?;
        let s = build_s(self.op).map_err(CliError::compute)?;
        let s_dims = s.graded_dimensions(max_degree);
        report
            .tables
            .push(table(&DimensionTable::from_direct("dim S_n", &s_dims)));

        // character recursion, exact at any q
        let rec = verify_character_recursion(self.op, max_degree).map_err(CliError::compute)?;
        for row in &rec.rows {
            let check = Check::start("character-recursion", Some(row.n));
            report.push(check.agree(&[
                ("lhs [n]_q s_n", row.lhs.to_string()),
                ("rhs sum p_k s_(n-1-k), p_0 = d", row.rhs.to_string()),
            ]));
            report.observations.push(Observation {
                name: "character-recursion p_0 = 1".to_string(),
                degree: Some(row.n),
                statement: "[n]_q s_n = s_(n-1) + sum_(k>=1) p_k s_(n-1-k)".to_string(),
                value: row.rhs_p0_one.to_string(),
                holds: row.holds_p0_one,
            });
            if let (Some(v), Some(h)) = (&row.rhs_d_power, row.holds_d_power) {
                report.observations.push(Observation {
                    name: "character-recursion with d^-n".to_string(),
                    degree: Some(row.n),
                    statement: "[n]_q s_n = s_(n-1) + d^-n sum_(1<=k<=n-2) p_k s_(n-1-k) + p_(n-1)"
                        .to_string(),
                    value: v.to_string(),
                    holds: h,
                });
            }
        }
        for (n, s_char) in rec.s.iter().enumerate() {
            let check = Check::start("dim S_n", Some(n));
            report.push(check.agree(&[
                ("direct-rank", s_dims[n].to_string()),
                ("symmetrizer-trace", s_char.to_string()),
            ]));
        }

        if !self.t_route() {
            report.observations.push(Observation {
                name: "t-specialization".to_string(),
                degree: None,
                statement: "series formulas need the q = 1 specialization".to_string(),
                value: format!("unavailable at q = {}", self.op.q),
                holds: false,
            });
            return Ok(());
        }
        if max_degree == 0 {
            return Ok(());
        }
        let p_trace: Vec<Rational> = character_p_sequence(self.op, max_degree - 1)
            .map_err(CliError::compute)?
            .iter()
            .map(|v| v.at_one())
            .collect::<Result<_, _>>()
            .map_err(CliError::compute)?;
        let p_series =
            p_sequence_from_s(&series_of(&s_dims), max_degree - 1).map_err(CliError::compute)?;
        for k in 0..max_degree {
            let check = Check::start("p_k", Some(k));
            report.push(check.agree(&[
                ("trace", format_rational(&p_trace[k])),
                ("series", format_rational(&p_series[k])),
            ]));
        }

        let e_formula = poincare_e(&p_trace, max_degree).map_err(CliError::compute)?;
        let b_formula = b_sequence(&p_trace, max_degree).map_err(CliError::compute)?;
        let e_alg = build_e(self.op).map_err(CliError::compute)?;
        let mut e_direct = Vec::new();
        let mut b_direct = Vec::new();
        for n in 0..=max_degree {
            let direct_ok = self.budget.allows(d * d, n);
            let check = Check::start("dim E_n", Some(n));
            let mut routes = vec![("formula", format_rational(e_formula.coeff(n)))];
            if direct_ok {
                let e = e_alg.graded_dimension(n);
                e_direct.push(e);
                routes.push(("direct-rank", e.to_string()));
                let c = centralizer_dimension(self.op, n).map_err(CliError::compute)?;
                routes.push(("centralizer", c.to_string()));
            }
            report.push(check.agree(&routes));

            let check = Check::start("dim B_n", Some(n));
            let mut routes = vec![("formula", format_rational(&b_formula[n]))];
            let tr = phi_n_trace(self.op, n).map_err(CliError::compute)?;
            let tr = tr.at_one().map_err(CliError::compute)?;
            routes.push(("phi-trace", format_rational(&tr)));
            if direct_ok {
                let b = e_alg.dual_graded_dimension(n);
                b_direct.push(b);
                routes.push(("direct-rank", b.to_string()));
            }
            report.push(check.agree(&routes));
        }
        for (label, direct, formula) in [
            ("dim E_n", &e_direct, e_formula.coeffs()),
            ("dim B_n", &b_direct, &b_formula[..]),
        ] {
            match DimensionTable::combine(label, direct, formula) {
                Ok(t) => report.tables.push(table(&t)),
                Err(e) => report.observations.push(Observation {
                    name: format!("{label} table"),
                    degree: None,
                    statement: "direct and formula routes combine".to_string(),
                    value: e.to_string(),
                    holds: false,
                }),
            }
        }
        Ok(())
    }

    fn koszul(
        &self,
        report: &mut VerificationReport,
        which: Algebra,
        degree: usize,
        cap: usize,
    ) -> Result<(), CliError> {
        if which == Algebra::Edual {
            return Err(CliError::Usage(
                "koszul checks apply to S, Lambda and E".to_string(),
            ));
        }
        if degree < 3 {
            return Err(CliError::Usage(
                "distributivity needs degree >= 3".to_string(),
            ));
        }
        let m = which.generators(self.d());
        self.budget
            .require(&format!("{which} in degree {degree}"), m, degree)?;
        let alg = self.algebra(which)?;

        let check = Check::start(&format!("distributivity {which}"), Some(degree));
        let verdict = distributivity_check(&alg, degree, cap).map_err(CliError::compute)?;
        let computed = match &verdict {
            Distributivity::Distributive { lattice_size } => {
                format!("distributive (lattice of {lattice_size} subspaces)")
            }
            Distributivity::NonDistributive { u, v, w } => format!(
                "non_distributive (witness dims {}, {}, {})",
                u.dim(),
                v.dim(),
                w.dim()
            ),
            Distributivity::Inconclusive {
                lattice_size,
                rounds,
            } => {
                format!("inconclusive ({lattice_size} subspaces after {rounds} rounds, cap {cap})")
            }
        };
        let route = if F::SYMBOLIC {
            "lattice-closure"
        } else {
            "lattice-closure-specialized-advisory"
        };
        report.push(check.verdict(route, computed, verdict.is_distributive()));

        let check = Check::start(&format!("koszul-series {which}"), Some(degree));
        let series = koszul_series_check(&alg, degree);
        report.push(check.expect("direct-rank", join(&vec![0; degree]), join(&series.defects)));
        Ok(())
    }

    fn schur(&self, report: &mut VerificationReport, degree: usize) -> Result<(), CliError> {
        let d = self.d();
        self.budget
            .require(&format!("centralizer in degree {degree}"), d * d, degree)?;
        let centralizer = centralizer_dimension(self.op, degree).map_err(CliError::compute)?;
        let e_dim = build_e(self.op)
            .map_err(CliError::compute)?
            .graded_dimension(degree);

        let check = Check::start("sum m_lambda^2", Some(degree));
        let mut routes = Vec::new();
        let mut totals = None;
        if self.t_route() {
            let values = partitions(degree)
                .iter()
                .map(|mu| {
                    let w: Permutation = class_representative(mu);
                    character(self.op, &w)
                        .map_err(CliError::compute)?
                        .at_one()
                        .map_err(CliError::compute)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let table =
                multiplicities_from_class_values(degree, &values).map_err(CliError::compute)?;
            routes.push(("multiplicities", table.sum_of_squares().to_string()));
            for e in &table.entries {
                report.observations.push(Observation {
                    name: "multiplicity".to_string(),
                    degree: Some(degree),
                    statement: format!("m_{:?} (f = {})", e.partition, e.f),
                    value: e.multiplicity.to_string(),
                    holds: true,
                });
            }
            totals = Some(table.total_dimension());
        }
        routes.push(("centralizer", centralizer.to_string()));
        routes.push(("direct-rank", e_dim.to_string()));
        report.push(check.agree(&routes));

        if let Some(total) = totals {
            let check = Check::start("sum m_lambda f_lambda", Some(degree));
            report.push(check.expect(
                "multiplicities",
                (d as u64).pow(degree as u32).to_string(),
                total.to_string(),
            ));
        }

        let check = Check::start("double-centralizer", Some(degree));
        let (bi, span) = bicommutant_check(self.op, degree).map_err(CliError::compute)?;
        report.push(check.agree(&[
            ("bicommutant", bi.to_string()),
            ("hecke-span", span.to_string()),
        ]));
        Ok(())
    }

    fn full(
        &self,
        report: &mut VerificationReport,
        max_degree: usize,
        cap: usize,
    ) -> Result<(), CliError> {
        self.axioms(report, max_degree);
        if !report.all_passed {
            return Ok(());
        }
        for which in [Algebra::S, Algebra::Lambda, Algebra::E, Algebra::Edual] {
            self.dims(report, which, max_degree)?;
        }
        self.poincare(report, max_degree)?;
        if max_degree >= 3 {
            for which in [Algebra::S, Algebra::Lambda, Algebra::E] {
                self.koszul(report, which, max_degree, cap)?;
            }
        }
        for n in 1..=max_degree {
            self.schur(report, n)?;
        }
        Ok(())
    }
}

fn table(t: &DimensionTable) -> TableRecord {
    TableRecord {
        label: t.label.clone(),
        values: t.values.clone(),
        provenance: t.provenance.iter().map(|p| p.to_string()).collect(),
    }
}
