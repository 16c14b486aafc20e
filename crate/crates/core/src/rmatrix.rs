//! Hecke operators on `V (x) V`, their axiom checks, the representation of `H_(q,n)` on
//! `V^(x)n`, the induced operator on `(V* (x) V)^(x)2`, and the projectors `Phi_n`.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactnum::{ExactError, Field, Rational, Scalar};
use crate::linalg::{lift_to_position, LinalgError, Matrix};
use crate::symhecke::{q_factorial, q_integer, HeckeElement, HeckeError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("operator matrix is {rows}x{cols}, expected {expected}x{expected}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("operator is not invertible")]
    Singular,
    #[error("Hecke relation (R+1)(R-q) = 0 fails at entry ({row}, {col}): {value}")]
    NotHecke {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("braid relation R1 R2 R1 = R2 R1 R2 fails at entry ({row}, {col}): {value}")]
    NotBraid {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("q must be nonzero")]
    ZeroParameter,
    #[error("[{0}]_q! vanishes")]
    VanishingQFactorial(usize),
    #[error("Hecke element parameter does not match the operator's q")]
    ParameterMismatch,
    #[error("Hecke element lives in H_{got}, expected H_{expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Outcome of an exact matrix identity check. On failure `witness` holds the first nonzero
/// entry of the difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck<F: Field> {
    pub holds: bool,
    pub witness: Option<(usize, usize, F)>,
}

impl<F: Field> AxiomCheck<F> {
    fn of_difference(m: &Matrix<F>) -> Self {
        let witness = m.first_nonzero();
        AxiomCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// An operator `R` on `V (x) V` with its Hecke parameter `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeOperator<F: Field = Scalar> {
    pub name: String,
    pub d: usize,
    pub r: Matrix<F>,
    pub q: F,
}

impl<F: Field> HeckeOperator<F> {
    /// Checks only the shape; use [`HeckeOperator::validate`] for the axioms.
    pub fn new(
        name: impl Into<String>,
        d: usize,
        r: Matrix<F>,
        q: F,
    ) -> Result<Self, RMatrixError> {
        if r.rows() != d * d || r.cols() != d * d {
            return Err(RMatrixError::Shape {
                rows: r.rows(),
                cols: r.cols(),
                expected: d * d,
            });
        }
        Ok(HeckeOperator {
            name: name.into(),
            d,
            r,
            q,
        })
    }

    /// All standing assumptions up to `working_degree`: invertible, Hecke, braid, `q != 0`
    /// and `[n]_q! != 0` for `n <= working_degree`.
    pub fn validate(&self, working_degree: usize) -> Result<(), RMatrixError> {
        if self.q.is_zero() {
            return Err(RMatrixError::ZeroParameter);
        }
        for n in 1..=working_degree {
            if q_factorial(n, &self.q).is_zero() {
                return Err(RMatrixError::VanishingQFactorial(n));
            }
        }
        if let Some((row, col, value)) = check_hecke(self).witness {
            return Err(RMatrixError::NotHecke {
                row,
                col,
                value: value.to_string(),
            });
        }
        if let Some((row, col, value)) = check_yang_baxter(self).witness {
            return Err(RMatrixError::NotBraid {
                row,
                col,
                value: value.to_string(),
            });
        }
        self.r.inverse().map_err(|_| RMatrixError::Singular)?;
        Ok(())
    }

    /// Representation of `H_(q,n)` on `V^(x)n`.
    pub fn representation(&self, n: usize) -> Result<BraidAction<F>, RMatrixError> {
        BraidAction::new(&self.r, self.d, n)
    }
}

impl HeckeOperator<Scalar> {
    /// Substitutes `p = p0` everywhere.
    pub fn specialize(&self, p0: &Rational) -> Result<HeckeOperator<Rational>, ExactError> {
        Ok(HeckeOperator {
            name: self.name.clone(),
            d: self.d,
            r: self.r.specialize(p0)?,
            q: self.q.eval(p0)?,
        })
    }
}

/// The standard Drinfeld–Jimbo operator, `q = p^2`:
/// `(x_k (x) x_l) R = q x_k (x) x_l` if `k = l`, `p x_l (x) x_k` if `k > l`, and
/// `(q-1) x_k (x) x_l + p x_l (x) x_k` if `k < l`.
pub fn dj_r_matrix(d: usize) -> HeckeOperator<Scalar> {
    let q = Scalar::q();
    let p = Scalar::p();
    let q_minus_one = q.minus(&Scalar::integer(1));
    let mut entries = Vec::new();
    for k in 0..d {
        for l in 0..d {
            let row = k * d + l;
            let swapped = l * d + k;
            if k == l {
                entries.push((row, row, q.clone()));
            } else if k > l {
                entries.push((row, swapped, p.clone()));
            } else {
                entries.push((row, row, q_minus_one.clone()));
                entries.push((row, swapped, p.clone()));
            }
        }
    }
    HeckeOperator {
        name: format!("dj:{d}"),
        d,
        r: Matrix::from_entries(d * d, d * d, entries),
        q,
    }
}

/// The tensor flip `x_i (x) x_j -> x_j (x) x_i`, `q = 1`.
pub fn flip_operator(d: usize) -> HeckeOperator<Scalar> {
    let mut op = super_flip(d, 0);
    op.name = format!("flip:{d}");
    op
}

/// The graded flip on a `(r|s)`-dimensional space: `x_i (x) x_j -> (-1)^(|i||j|) x_j (x) x_i`
/// with `|i| = 1` exactly for `i > r`; `q = 1`.
pub fn super_flip(r: usize, s: usize) -> HeckeOperator<Scalar> {
    let d = r + s;
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let sign = if i >= r && j >= r { -1 } else { 1 };
            entries.push((i * d + j, j * d + i, Scalar::integer(sign)));
        }
    }
    HeckeOperator {
        name: format!("superflip:{r}|{s}"),
        d,
        r: Matrix::from_entries(d * d, d * d, entries),
        q: Scalar::integer(1),
    }
}

/// `(R + 1)(R - q) = 0` on `V (x) V`.
pub fn check_hecke<F: Field>(op: &HeckeOperator<F>) -> AxiomCheck<F> {
    let plus = op.r.shift(&F::one()).expect("square");
    let minus = op.r.shift(&op.q.negate()).expect("square");
    AxiomCheck::of_difference(&plus.mul(&minus).expect("square"))
}

/// `R_1 R_2 R_1 = R_2 R_1 R_2` on `V^(x)3`.
pub fn check_yang_baxter<F: Field>(op: &HeckeOperator<F>) -> AxiomCheck<F> {
    AxiomCheck::of_difference(&braid_defect(&op.r, op.d).expect("shape checked at construction"))
}

/// `S_1 S_2 S_1 - S_2 S_1 S_2` for an operator `S` on `U (x) U`, `dim U = factor`.
pub fn braid_defect<F: Field>(s: &Matrix<F>, factor: usize) -> Result<Matrix<F>, LinalgError> {
    let s1 = lift_to_position(s, 1, 3, factor)?;
    let s2 = lift_to_position(s, 2, 3, factor)?;
    let left = s1.mul(&s2)?.mul(&s1)?;
    let right = s2.mul(&s1)?.mul(&s2)?;
    left.sub(&right)
}

/// The action `w -> S_w` of braid words on `U^(x)n` for an operator `S` on `U (x) U` obeying the
/// braid relation; `S_w` is the product of lifts along a reduced word of `w`.
#[derive(Debug, Clone)]
pub struct BraidAction<F: Field> {
    factor: usize,
    n: usize,
    lifts: Vec<Matrix<F>>,
    cache: HashMap<Permutation, Matrix<F>>,
}

impl<F: Field> BraidAction<F> {
    pub fn new(s: &Matrix<F>, factor: usize, n: usize) -> Result<Self, RMatrixError> {
        let lifts = (1..n)
            .map(|i| lift_to_position(s, i, n, factor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BraidAction {
            factor,
            n,
            lifts,
            cache: HashMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of `U^(x)n`.
    pub fn dim(&self) -> usize {
        self.factor.pow(self.n as u32)
    }

    /// `S_i` lifted to factors `i, i+1` (1-based).
    pub fn lift(&self, i: usize) -> &Matrix<F> {
        &self.lifts[i - 1]
    }

    pub fn word(&self, word: &[usize]) -> Result<Matrix<F>, RMatrixError> {
        let mut acc = Matrix::identity(self.dim());
        for &i in word {
            if i == 0 || i >= self.n {
                return Err(HeckeError::GeneratorOutOfRange {
                    index: i,
                    n: self.n,
                }
                .into());
            }
            acc = acc.mul(self.lift(i))?;
        }
        Ok(acc)
    }

    /// `S_w`, memoized; built from the prefix of the reduced word.
    pub fn permutation(&mut self, w: &Permutation) -> Result<Matrix<F>, RMatrixError> {
        if w.n() != self.n {
            return Err(RMatrixError::DegreeMismatch {
                expected: self.n,
                got: w.n(),
            });
        }
        if let Some(m) = self.cache.get(w) {
            return Ok(m.clone());
        }
        let word = w.reduced_word();
        let m = match word.split_last() {
            None => Matrix::identity(self.dim()),
            Some((&last, prefix)) => {
                let head = Permutation::from_word(prefix, self.n)?;
                self.permutation(&head)?.mul(self.lift(last))?
            }
        };
        self.cache.insert(w.clone(), m.clone());
        Ok(m)
    }

    /// Linear extension to `H_(q,n)`; the element's `q` must equal `q`.
    pub fn element(&mut self, a: &HeckeElement<F>, q: &F) -> Result<Matrix<F>, RMatrixError> {
        if a.q() != q {
            return Err(RMatrixError::ParameterMismatch);
        }
        if a.n() != self.n {
            return Err(RMatrixError::DegreeMismatch {
                expected: self.n,
                got: a.n(),
            });
        }
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (w, c) in a.terms() {
            acc = acc.axpy(c, &self.permutation(w)?)?;
        }
        Ok(acc)
    }
}

/// `rho(T_w)` on `V^(x)n`.
pub fn rho_permutation<F: Field>(
    op: &HeckeOperator<F>,
    w: &Permutation,
) -> Result<Matrix<F>, RMatrixError> {
    op.representation(w.n())?.word(&w.reduced_word())
}

/// `rho(a)` on `V^(x)n` for `a` in `H_(q,n)`.
pub fn rho<F: Field>(
    op: &HeckeOperator<F>,
    a: &HeckeElement<F>,
) -> Result<Matrix<F>, RMatrixError> {
    op.representation(a.n())?.element(a, &op.q)
}

/// Trace of `rho(T_w)` on `V^(x)n`, `n = w.n()`.
pub fn character<F: Field>(op: &HeckeOperator<F>, w: &Permutation) -> Result<F, RMatrixError> {
    Ok(rho_permutation(op, w)?.trace()?)
}

/// Trace of `rho(a)`, extended linearly from [`character`].
pub fn character_of<F: Field>(
    op: &HeckeOperator<F>,
    a: &HeckeElement<F>,
) -> Result<F, RMatrixError> {
    let mut rep = op.representation(a.n())?;
    let mut acc = F::zero();
    for (w, c) in a.terms() {
        acc = acc.plus(&c.times(&rep.permutation(w)?.trace()?));
    }
    Ok(acc)
}

/// `(R^(-1))^T`: the inverse acting on `V* (x) V*` in the dual basis.
pub fn dual_inverse<F: Field>(op: &HeckeOperator<F>) -> Result<Matrix<F>, RMatrixError> {
    let inv = op.r.inverse().map_err(|_| RMatrixError::Singular)?;
    Ok(inv.transpose())
}

/// The operator `R-bar` on `W (x) W`, `W = V* (x) V` with basis `z_i^j` at index `i*d + j`:
/// `R-bar[(i1,j1,i2,j2),(k1,l1,k2,l2)] = R*[(i1,i2),(k1,k2)] R[(j1,j2),(l1,l2)]` where `R*` is
/// [`dual_inverse`]. This is `R* (x) R` with the middle factors interchanged.
pub fn rbar<F: Field>(op: &HeckeOperator<F>) -> Result<Matrix<F>, RMatrixError> {
    let d = op.d;
    let rst = dual_inverse(op)?;
    let w = d * d;
    let index = |a: usize, b: usize, c: usize, e: usize| (a * d + b) * w + c * d + e;
    let mut entries = Vec::new();
    for i1 in 0..d {
        for i2 in 0..d {
            let star_row = rst.row(i1 * d + i2);
            for j1 in 0..d {
                for j2 in 0..d {
                    let r_row = op.r.row(j1 * d + j2);
                    let row = index(i1, j1, i2, j2);
                    for (kc, a) in star_row {
                        let (k1, k2) = (kc / d, kc % d);
                        for (lc, b) in r_row {
                            let (l1, l2) = (lc / d, lc % d);
                            entries.push((row, index(k1, l1, k2, l2), a.times(b)));
                        }
                    }
                }
            }
        }
    }
    Ok(Matrix::from_entries(w * w, w * w, entries))
}

fn factor_dim<F: Field>(s: &Matrix<F>) -> Result<usize, RMatrixError> {
    let n = s.rows();
    let m = (n as f64).sqrt().round() as usize;
    if m * m != n || !s.is_square() {
        return Err(RMatrixError::Shape {
            rows: s.rows(),
            cols: s.cols(),
            expected: m * m,
        });
    }
    Ok(m)
}

/// `P_n(S)` from `P_1 = id` and
/// `P_n = [n]_q^(-1) (P_(n-1) (x) id)(id + S_(n-1) + S_(n-1) S_(n-2) + ... + S_(n-1)...S_1)`,
/// with `S` an operator on `U (x) U` and `S_i` its lifts to `U^(x)n`.
pub fn phi_n<F: Field>(s: &Matrix<F>, n: usize, q: &F) -> Result<Matrix<F>, RMatrixError> {
    let m = factor_dim(s)?;
    let mut p = Matrix::identity(m);
    for k in 2..=n {
        let inv = q_integer(k, q)
            .inverse()
            .ok_or(RMatrixError::VanishingQFactorial(k))?;
        let dim = m.pow(k as u32);
        let mut chain = Matrix::identity(dim);
        let mut tail = Matrix::identity(dim);
        for i in (1..k).rev() {
            tail = tail.mul(&lift_to_position(s, i, k, m)?)?;
            chain = chain.add(&tail)?;
        }
        p = p.kron(&Matrix::identity(m)).mul(&chain)?.scale(&inv);
    }
    Ok(p)
}

/// `Phi_n = P_n(-R-bar)` on `W^(x)n`.
pub fn phi_n_of<F: Field>(op: &HeckeOperator<F>, n: usize) -> Result<Matrix<F>, RMatrixError> {
    let s = rbar(op)?.scale(&F::one().negate());
    phi_n(&s, n, &op.q)
}

/// `tr Phi_n` without forming `Phi_n`.
///
/// Unrolling the recursion gives `P_n(S) = [n]_q!^(-1) sum_w S_w` (only the braid relation is
/// used), and `(-R-bar)_w` is conjugate to `(-1)^l(w) R*_w (x) R_w` on `V^(x)n (x) V^(x)n`, so
/// `tr Phi_n = [n]_q!^(-1) sum_w (-1)^l(w) tr(R*_w) tr(R_w)`.
pub fn phi_n_trace<F: Field>(op: &HeckeOperator<F>, n: usize) -> Result<F, RMatrixError> {
    let norm = q_factorial(n, &op.q)
        .inverse()
        .ok_or(RMatrixError::VanishingQFactorial(n))?;
    if n == 0 {
        return Ok(F::one());
    }
    let rst = dual_inverse(op)?;
    let mut direct = op.representation(n)?;
    let mut dual = BraidAction::new(&rst, op.d, n)?;
    let mut acc = F::zero();
    for w in Permutation::all(n) {
        let t = direct
            .permutation(&w)?
            .trace()?
            .times(&dual.permutation(&w)?.trace()?);
        acc = if w.length() % 2 == 0 {
            acc.plus(&t)
        } else {
            acc.minus(&t)
        };
    }
    Ok(acc.times(&norm))
}
