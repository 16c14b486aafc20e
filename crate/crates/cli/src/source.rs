//! Loading operators from builtin names and JSON R-matrix files.

use std::path::Path;

use hbl_core::exactnum::{format_rational, parse_rational};
use hbl_core::linalg::Matrix;
use hbl_core::rmatrix::{dj_r_matrix, flip_operator, super_flip, HeckeOperator};
use hbl_core::{Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SYMBOLIC: &str = "symbolic-p";

pub const CONVENTION: &str = "row vectors with right action: (x_k (x) x_l) R = \
sum_(m,l') entries[k*d+l][m*d+l'] x_m (x) x_l'; entries are rational functions of p with q = p^2";

/// On-disk form of an operator on `V (x) V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixFile {
    pub name: String,
    pub d: usize,
    /// `symbolic-p`, or a rational value substituted for `p`.
    pub parameter: String,
    pub q: String,
    pub entries: Vec<Vec<String>>,
    #[serde(default)]
    pub convention: String,
}

/// An operator either over rational functions of `p` or at a fixed rational `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operator {
    Symbolic(HeckeOperator<Scalar>),
    Specialized {
        op: HeckeOperator<Rational>,
        p: Rational,
    },
}

impl Operator {
    pub fn name(&self) -> &str {
        match self {
            Operator::Symbolic(op) => &op.name,
            Operator::Specialized { op, .. } => &op.name,
        }
    }

    pub fn d(&self) -> usize {
        match self {
            Operator::Symbolic(op) => op.d,
            Operator::Specialized { op, .. } => op.d,
        }
    }

    pub fn q_string(&self) -> String {
        match self {
            Operator::Symbolic(op) => op.q.to_string(),
            Operator::Specialized { op, .. } => format_rational(&op.q),
        }
    }

    pub fn parameter(&self) -> String {
        match self {
            Operator::Symbolic(_) => SYMBOLIC.to_string(),
            Operator::Specialized { p, .. } => format_rational(p),
        }
    }

    /// Substitutes `p = p0` into a symbolic operator.
    pub fn specialize(self, p0: &Rational) -> Result<Self, CliError> {
        match self {
            Operator::Symbolic(op) => Ok(Operator::Specialized {
                op: op
                    .specialize(p0)
                    .map_err(|e| CliError::Source(format!("cannot specialize at p = {p0}: {e}")))?,
                p: p0.clone(),
            }),
            Operator::Specialized { .. } => Err(CliError::Usage(
                "operator is already specialized".to_string(),
            )),
        }
    }

    pub fn to_file(&self) -> RMatrixFile {
        match self {
            Operator::Symbolic(op) => RMatrixFile::from_symbolic(op),
            Operator::Specialized { op, p } => RMatrixFile::from_specialized(op, p),
        }
    }
}

/// `dj:<d>`, `flip:<d>` or `superflip:<r>|<s>`.
pub fn builtin(name: &str) -> Result<Operator, CliError> {
    let bad = || CliError::Source(format!("unknown builtin operator `{name}`"));
    let (family, arg) = name.split_once(':').ok_or_else(bad)?;
    let positive = |s: &str| -> Result<usize, CliError> {
        match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(bad()),
        }
    };
    let op = match family {
        "dj" => dj_r_matrix(positive(arg)?),
        "flip" => flip_operator(positive(arg)?),
        "superflip" => {
            let (r, s) = arg.split_once('|').ok_or_else(bad)?;
            let r: usize = r.trim().parse().map_err(|_| bad())?;
            let s: usize = s.trim().parse().map_err(|_| bad())?;
            if r + s == 0 {
                return Err(bad());
            }
            super_flip(r, s)
        }
        _ => return Err(bad()),
    };
    Ok(Operator::Symbolic(op))
}

impl RMatrixFile {
    pub fn from_symbolic(op: &HeckeOperator<Scalar>) -> Self {
        RMatrixFile {
            name: op.name.clone(),
            d: op.d,
            parameter: SYMBOLIC.to_string(),
            q: op.q.to_string(),
            entries: op
                .r
                .to_dense()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
            convention: CONVENTION.to_string(),
        }
    }

    pub fn from_specialized(op: &HeckeOperator<Rational>, p: &Rational) -> Self {
        RMatrixFile {
            name: op.name.clone(),
            d: op.d,
            parameter: format_rational(p),
            q: format_rational(&op.q),
            entries: op
                .r
                .to_dense()
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
            convention: CONVENTION.to_string(),
        }
    }

    /// Parses the entries; axioms are not checked here.
    pub fn to_operator(&self) -> Result<Operator, CliError> {
        let size = self.d * self.d;
        if self.d == 0 {
            return Err(CliError::Source("d must be positive".to_string()));
        }
        if self.entries.len() != size || self.entries.iter().any(|r| r.len() != size) {
            return Err(CliError::Source(format!(
                "entries must be a {size}x{size} array for d = {}",
                self.d
            )));
        }
        let parse = |text: &str, what: &str| -> Result<Scalar, CliError> {
            text.parse::<Scalar>()
                .map_err(|e| CliError::Source(format!("{what}: cannot parse `{text}`: {e}")))
        };
        let mut rows = Vec::with_capacity(size);
        for (i, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(size);
            for (j, text) in row.iter().enumerate() {
                out.push(parse(text, &format!("entry ({i}, {j})"))?);
            }
            rows.push(out);
        }
        let r = Matrix::from_dense(rows).map_err(|e| CliError::Source(e.to_string()))?;
        let q = parse(&self.q, "q")?;
        let op = HeckeOperator::new(self.name.clone(), self.d, r, q)
            .map_err(|e| CliError::Source(e.to_string()))?;
        if self.parameter == SYMBOLIC {
            return Ok(Operator::Symbolic(op));
        }
        let p = parse_rational(&self.parameter).ok_or_else(|| {
            CliError::Source(format!(
                "parameter must be `{SYMBOLIC}` or a rational, got `{}`",
                self.parameter
            ))
        })?;
        Operator::Symbolic(op).specialize(&p)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Source(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
