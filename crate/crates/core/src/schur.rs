//! Schur–Weyl side: centralizers of the Hecke action on `V^(x)n`, symmetric-group characters,
//! and isotypic multiplicities.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exactnum::{is_natural, rf_eval_at_one, ExactError, Field, Rational, Scalar};
use crate::linalg::{commutant, commutant_basis, span_dimension, LinalgError};
use crate::qalg::{build_e, QalgError};
use crate::rmatrix::{character, HeckeOperator, RMatrixError};
use crate::symhecke::{HeckeError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("multiplicity of {partition:?} is {value}, not a natural number")]
    NotNatural {
        partition: Vec<usize>,
        value: String,
    },
    #[error("character tables are supported for n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Operator(#[from] RMatrixError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Qalg(#[from] QalgError),
}

pub const MAX_TABLE_DEGREE: usize = 8;

/// Partitions of `n` as non-increasing part lists, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `z_mu = prod_k k^(m_k) m_k!` where `m_k` counts parts equal to `k`.
fn centralizer_order(mu: &[usize]) -> u64 {
    let mut z = 1u64;
    let mut i = 0;
    while i < mu.len() {
        let k = mu[i];
        let mult = mu[i..].iter().take_while(|&&x| x == k).count();
        z *= (k as u64).pow(mult as u32) * factorial(mult);
        i += mult;
    }
    z
}

/// Number of permutations of cycle type `mu`.
pub fn class_size(mu: &[usize]) -> u64 {
    factorial(mu.iter().sum()) / centralizer_order(mu)
}

/// `chi^lambda(mu)` by the Murnaghan–Nakayama rule on beta-sets: removing a `k`-rim hook moves
/// one bead from `b` to `b - k`, with sign `(-1)^(beads strictly between)`.
pub fn sn_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l + len - 1 - i)
        .collect();
    mn_beta(&beta, mu)
}

fn mn_beta(beta: &[usize], mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut next = beta.to_vec();
        next[i] = b - k;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(&next, rest);
    }
    total
}

/// Irreducible characters of `S_n`: `values[i][j] = chi^(partitions[i])(classes[j])`, with the
/// conjugacy classes indexed by the same partition list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Vec<usize>>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    /// `f_lambda = chi^lambda(1^n)`.
    pub fn dimension(&self, i: usize) -> i64 {
        let identity_class = self.partitions.len() - 1;
        self.values[i][identity_class]
    }
}

pub fn sn_character_table(n: usize) -> Result<CharacterTable, SchurError> {
    if n > MAX_TABLE_DEGREE {
        return Err(SchurError::TooLarge {
            n,
            max: MAX_TABLE_DEGREE,
        });
    }
    let parts = partitions(n);
    let values = parts
        .iter()
        .map(|l| parts.iter().map(|m| sn_character(l, m)).collect())
        .collect();
    Ok(CharacterTable {
        n,
        partitions: parts,
        values,
    })
}

/// A minimal-length permutation of cycle type `mu`: consecutive cycles `c_k` on shifted blocks.
pub fn class_representative(mu: &[usize]) -> Permutation {
    let n = mu.iter().sum();
    let mut word = Vec::new();
    let mut offset = 0;
    for &k in mu {
        word.extend(offset + 1..offset + k);
        offset += k;
    }
    Permutation::from_word(&word, n).expect("indices within range")
}

/// `dim { X : X rho(T_(v_i)) = rho(T_(v_i)) X for all i }` on `V^(x)n`.
pub fn centralizer_dimension<F: Field>(
    op: &HeckeOperator<F>,
    n: usize,
) -> Result<usize, SchurError> {
    let rep = op.representation(n)?;
    let gens: Vec<_> = (1..n).map(|i| rep.lift(i).clone()).collect();
    Ok(commutant(&gens, rep.dim())?.dim())
}

/// Dimensions of the bicommutant and of `span { rho(T_w) }`; equal when the double centralizer
/// property holds.
pub fn bicommutant_check<F: Field>(
    op: &HeckeOperator<F>,
    n: usize,
) -> Result<(usize, usize), SchurError> {
    let mut rep = op.representation(n)?;
    let gens: Vec<_> = (1..n).map(|i| rep.lift(i).clone()).collect();
    let (_, centralizer) = commutant_basis(&gens, rep.dim())?;
    let bicommutant = commutant(&centralizer, rep.dim())?.dim();
    let images = Permutation::all(n)
        .iter()
        .map(|w| rep.permutation(w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((bicommutant, span_dimension(&images)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    pub partition: Vec<usize>,
    pub multiplicity: u64,
    /// Dimension of the symmetric-group irreducible.
    pub f: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub n: usize,
    pub entries: Vec<Multiplicity>,
}

impl MultiplicityTable {
    pub fn sum_of_squares(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| e.multiplicity * e.multiplicity)
            .sum()
    }

    /// `sum_lambda m_lambda f_lambda`, the total dimension.
    pub fn total_dimension(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity * e.f).sum()
    }

    pub fn get(&self, partition: &[usize]) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.partition == partition)
            .map(|e| e.multiplicity)
    }
}

/// `m_lambda = (1/n!) sum_mu |C_mu| class_values[mu] chi^lambda(mu)` where `class_values` lists
/// the trace at `q = 1` on each class, in [`partitions`] order.
pub fn multiplicities_from_class_values(
    n: usize,
    class_values: &[Rational],
) -> Result<MultiplicityTable, SchurError> {
    let table = sn_character_table(n)?;
    let order = Rational::from_integer(factorial(n).into());
    let mut entries = Vec::with_capacity(table.partitions.len());
    for (i, lambda) in table.partitions.iter().enumerate() {
        let mut acc = Rational::from_integer(0.into());
        for (j, mu) in table.partitions.iter().enumerate() {
            let weight =
                Rational::from_integer((class_size(mu) as i64 * table.values[i][j]).into());
            acc += weight * &class_values[j];
        }
        let m = acc / &order;
        let value = m
            .to_integer()
            .to_u64()
            .filter(|_| is_natural(&m))
            .ok_or_else(|| SchurError::NotNatural {
                partition: lambda.clone(),
                value: m.to_string(),
            })?;
        entries.push(Multiplicity {
            partition: lambda.clone(),
            multiplicity: value,
            f: table.dimension(i) as u64,
        });
    }
    Ok(MultiplicityTable { n, entries })
}

/// Multiplicities of the symmetric-group irreducibles in `V^(x)n`, from the class traces of
/// `rho` evaluated at `p = 1`.
pub fn multiplicities(
    op: &HeckeOperator<Scalar>,
    n: usize,
) -> Result<MultiplicityTable, SchurError> {
    let values = partitions(n)
        .iter()
        .map(|mu| Ok(rf_eval_at_one(&character(op, &class_representative(mu))?)?))
        .collect::<Result<Vec<_>, SchurError>>()?;
    multiplicities_from_class_values(n, &values)
}

/// `sum m_lambda^2`, the centralizer dimension and `dim E_n`, which must all agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurDimensionCheck {
    pub n: usize,
    pub table: MultiplicityTable,
    pub sum_of_squares: u64,
    pub centralizer: u64,
    pub e_dimension: u64,
    pub total_dimension: u64,
    pub expected_total: u64,
}

impl SchurDimensionCheck {
    pub fn holds(&self) -> bool {
        self.sum_of_squares == self.centralizer
            && self.centralizer == self.e_dimension
            && self.total_dimension == self.expected_total
    }
}

pub fn schur_dimension_check(
    op: &HeckeOperator<Scalar>,
    n: usize,
) -> Result<SchurDimensionCheck, SchurError> {
    let table = multiplicities(op, n)?;
    let centralizer = centralizer_dimension(op, n)? as u64;
    let e_dimension = build_e(op)?.graded_dimension(n) as u64;
    Ok(SchurDimensionCheck {
        n,
        sum_of_squares: table.sum_of_squares(),
        total_dimension: table.total_dimension(),
        expected_total: (op.d as u64).pow(n as u32),
        table,
        centralizer,
        e_dimension,
    })
}
