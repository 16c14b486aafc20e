//! Symmetric groups and the Hecke algebra `H_(q,n)`.
//!
//! Permutations compose left to right: `(w * v)(i) = v(w(i))`, matching the right action of
//! operators on row vectors. The Hecke algebra has basis `T_w` with
//! `T_w T_v = T_(wv)` when lengths add and `T_s^2 = q + (q - 1) T_s` for simple `s`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::exactnum::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("generator index {index} out of range for S_{n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("Hecke elements live in H_{left} and H_{right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("Hecke elements use different parameters q")]
    ParameterMismatch,
    #[error("[{0}]_q! vanishes")]
    VanishingQFactorial(usize),
    #[error("the antisymmetrizer normalizer vanishes for n = {0}")]
    VanishingNormalizer(usize),
}

/// A permutation of `{1..n}` in one-line form, stored 0-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The basic transposition `v_i = (i, i+1)`, 1-based.
    pub fn simple(i: usize, n: usize) -> Result<Self, HeckeError> {
        if i == 0 || i >= n {
            return Err(HeckeError::GeneratorOutOfRange { index: i, n });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, HeckeError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(HeckeError::NotAPermutation(n));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|x| x - 1).collect(),
        })
    }

    /// Product of basic transpositions `v_(i1) v_(i2) ...`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self, HeckeError> {
        let mut w = Permutation::identity(n);
        for &i in word {
            w = &w * &Permutation::simple(i, n)?;
        }
        Ok(w)
    }

    /// `c_k = v_1 v_2 ... v_(k-1)` in `S_n`.
    pub fn cycle_element(k: usize, n: usize) -> Result<Self, HeckeError> {
        Self::from_word(&(1..k).collect::<Vec<_>>(), n)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of a 1-based point.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// Number of inversions `#{i < j : w(i) > w(j)}`.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut word = Vec::with_capacity(self.length());
        // w = v_i * w' with l(w') = l(w) - 1 exactly when w(i) > w(i+1); greedy on the
        // smallest such i yields the lexicographically least reduced word.
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            word.push(i + 1);
            w.swap(i, i + 1);
        }
        word
    }

    /// Whether `w` fixes `n`, i.e. lies in `S_(n-1)`.
    pub fn in_parabolic(&self) -> bool {
        self.images.last().is_none_or(|&x| x == self.n() - 1)
    }

    /// Extends to `S_m`, `m >= n`, fixing the new points.
    pub fn embed(&self, m: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.n()..m);
        Permutation { images }
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// All of `S_n` in lexicographic order of one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..n)
                .rev()
                .find(|&j| cur[j] > cur[i])
                .expect("successor");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Apply `self` first, then `rhs`.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "permutations of different degrees");
        Permutation {
            images: self.images.iter().map(|&x| rhs.images[x]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Length of a permutation.
pub fn length(w: &Permutation) -> usize {
    w.length()
}

/// Lexicographically smallest reduced word of a permutation.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    w.reduced_word()
}

/// An element `sum_w c_w T_w` of `H_(q,n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement<F: Field = Scalar> {
    n: usize,
    q: F,
    terms: BTreeMap<Permutation, F>,
}

impl<F: Field> HeckeElement<F> {
    pub fn zero(n: usize, q: F) -> Self {
        HeckeElement {
            n,
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, q: F) -> Self {
        Self::basis(Permutation::identity(n), q)
    }

    pub fn basis(w: Permutation, q: F) -> Self {
        let mut terms = BTreeMap::new();
        let n = w.n();
        terms.insert(w, F::one());
        HeckeElement { n, q, terms }
    }

    /// `T_(v_i)`.
    pub fn generator(i: usize, n: usize, q: F) -> Result<Self, HeckeError> {
        Ok(Self::basis(Permutation::simple(i, n)?, q))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), HeckeError> {
        if self.n != other.n {
            return Err(HeckeError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.q != other.q {
            return Err(HeckeError::ParameterMismatch);
        }
        Ok(())
    }

    fn add_term(terms: &mut BTreeMap<Permutation, F>, w: Permutation, c: F) {
        if c.is_zero() {
            return;
        }
        match terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().plus(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            Self::add_term(&mut terms, w.clone(), c.clone());
        }
        Ok(HeckeElement {
            n: self.n,
            q: self.q.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.add(&other.scale(&F::one().negate()))
    }

    pub fn scale(&self, s: &F) -> Self {
        HeckeElement {
            n: self.n,
            q: self.q.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.times(s)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Right multiplication by the generator `T_(v_i)`.
    fn mul_generator(&self, i: usize) -> Self {
        let s = Permutation::simple(i, self.n).expect("generator in range");
        let q_minus_one = self.q.minus(&F::one());
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let ws = w * &s;
            // l(ws) > l(w) iff w^{-1}(i) < w^{-1}(i+1): values i, i+1 appear in order.
            let inv = w.inverse();
            if inv.images[i - 1] < inv.images[i] {
                Self::add_term(&mut terms, ws, c.clone());
            } else {
                // T_w T_s = q T_(ws) + (q - 1) T_w when l(ws) < l(w)
                Self::add_term(&mut terms, ws, c.times(&self.q));
                Self::add_term(&mut terms, w.clone(), c.times(&q_minus_one));
            }
        }
        HeckeElement {
            n: self.n,
            q: self.q.clone(),
            terms,
        }
    }

    /// Product in `H_(q,n)`: each `T_v` of the right factor is applied generator by generator
    /// along a reduced word of `v`.
    pub fn mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_compatible(other)?;
        let mut acc = HeckeElement::zero(self.n, self.q.clone());
        for (v, c) in &other.terms {
            let mut part = self.clone();
            for i in v.reduced_word() {
                part = part.mul_generator(i);
            }
            acc = acc.add(&part.scale(c))?;
        }
        Ok(acc)
    }
}

/// `a * b` in `H_(q,n)`; both operands must carry the parameter `q`.
pub fn hecke_multiply<F: Field>(
    a: &HeckeElement<F>,
    b: &HeckeElement<F>,
    q: &F,
) -> Result<HeckeElement<F>, HeckeError> {
    if a.q() != q || b.q() != q {
        return Err(HeckeError::ParameterMismatch);
    }
    a.mul(b)
}

/// The q-integer `[n]_q` in any field.
pub fn q_integer<F: Field>(n: usize, q: &F) -> F {
    let mut acc = F::zero();
    let mut pow = F::one();
    for _ in 0..n {
        acc = acc.plus(&pow);
        pow = pow.times(q);
    }
    acc
}

pub fn q_factorial<F: Field>(n: usize, q: &F) -> F {
    (1..=n).fold(F::one(), |acc, k| acc.times(&q_integer(k, q)))
}

/// The q-symmetrizer `x_n = [n]_q!^{-1} sum_w T_w`, built with the recursion
/// `[n]_q x_n = x_(n-1) (1 + T_(v_(n-1)) + T_(v_(n-1)) T_(v_(n-2)) + ... + T_(v_(n-1))...T_(v_1))`.
pub fn x_n<F: Field>(n: usize, q: &F) -> Result<HeckeElement<F>, HeckeError> {
    let mut x = HeckeElement::one(n, q.clone());
    if n <= 1 {
        return Ok(x);
    }
    for k in 2..=n {
        let qk_inv = q_integer(k, q)
            .inverse()
            .ok_or(HeckeError::VanishingQFactorial(k))?;
        // x_(k-1) sits inside H_n via S_(k-1) ⊂ S_n.
        let mut chain = HeckeElement::one(n, q.clone());
        let mut tail = HeckeElement::one(n, q.clone());
        for j in (1..k).rev() {
            tail = tail.mul_generator(j);
            chain = chain.add(&tail)?;
        }
        x = x.mul(&chain)?.scale(&qk_inv);
    }
    Ok(x)
}

/// The q-antisymmetrizer `y_n = N^{-1} sum_w (-q)^{-l(w)} T_w` with `N = sum_w q^{-l(w)}`, the
/// normalization that makes `y_n` idempotent.
pub fn y_n<F: Field>(n: usize, q: &F) -> Result<HeckeElement<F>, HeckeError> {
    if n <= 1 {
        return Ok(HeckeElement::one(n, q.clone()));
    }
    let q_inv = q.inverse().ok_or(HeckeError::VanishingNormalizer(n))?;
    let minus_q_inv = q_inv.negate();
    let perms = Permutation::all(n);
    let max_len = n * (n - 1) / 2;
    let mut pows = vec![F::one()];
    let mut signed = vec![F::one()];
    for k in 1..=max_len {
        pows.push(pows[k - 1].times(&q_inv));
        signed.push(signed[k - 1].times(&minus_q_inv));
    }
    let mut normalizer = F::zero();
    let mut terms = BTreeMap::new();
    for w in perms {
        let l = w.length();
        normalizer = normalizer.plus(&pows[l]);
        terms.insert(w, signed[l].clone());
    }
    let norm_inv = normalizer
        .inverse()
        .ok_or(HeckeError::VanishingNormalizer(n))?;
    Ok(HeckeElement {
        n,
        q: q.clone(),
        terms,
    }
    .scale(&norm_inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn lengths() {
        assert_eq!(length(&Permutation::identity(4)), 0);
        assert_eq!(length(&Permutation::simple(1, 2).unwrap()), 1);
        assert_eq!(length(&perm(&[3, 2, 1])), 3);
    }

    #[test]
    fn reduced_words() {
        assert!(reduced_word(&Permutation::identity(3)).is_empty());
        let c3 = Permutation::from_word(&[1, 2], 3).unwrap();
        assert_eq!(c3, Permutation::cycle_element(3, 3).unwrap());
        assert_eq!(reduced_word(&c3), vec![1, 2]);
        let w = perm(&[3, 2, 1]);
        assert_eq!(reduced_word(&w), vec![1, 2, 1]);
        assert_eq!(Permutation::from_word(&[1, 2, 1], 3).unwrap(), w);
    }

    #[test]
    fn reduced_words_multiply_back_for_s4() {
        for w in Permutation::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Permutation::from_word(&word, 4).unwrap(), w);
        }
    }

    #[test]
    fn quadratic_relation() {
        let t = HeckeElement::generator(1, 2, q()).unwrap();
        let sq = hecke_multiply(&t, &t, &q()).unwrap();
        let expected = HeckeElement::one(2, q())
            .scale(&q())
            .add(&t.scale(&(q() - Scalar::integer(1))))
            .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn lengths_add_gives_basis_element() {
        let t1 = HeckeElement::generator(1, 3, q()).unwrap();
        let t2 = HeckeElement::generator(2, 3, q()).unwrap();
        let prod = t1.mul(&t2).unwrap();
        let w = Permutation::from_word(&[1, 2], 3).unwrap();
        assert_eq!(prod, HeckeElement::basis(w, q()));
        let one = HeckeElement::one(3, q());
        assert_eq!(one.mul(&prod).unwrap(), prod);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = HeckeElement::one(2, q());
        let b = HeckeElement::one(3, q());
        assert!(matches!(a.mul(&b), Err(HeckeError::SizeMismatch { .. })));
        let c = HeckeElement::one(2, Scalar::integer(1));
        assert_eq!(a.mul(&c), Err(HeckeError::ParameterMismatch));
    }

    #[test]
    fn symmetrizer_small_cases() {
        assert_eq!(x_n(1, &q()).unwrap(), HeckeElement::one(1, q()));
        let x2 = x_n(2, &q()).unwrap();
        let inv = (Scalar::integer(1) + q()).inverse().unwrap();
        let expected = HeckeElement::one(2, q())
            .add(&HeckeElement::generator(1, 2, q()).unwrap())
            .unwrap()
            .scale(&inv);
        assert_eq!(x2, expected);
        let x3 = x_n(3, &q()).unwrap();
        let longest = perm(&[3, 2, 1]);
        assert_eq!(
            x3.coeff(&longest),
            Scalar::q_factorial(3).inverse().unwrap()
        );
    }

    #[test]
    fn antisymmetrizer_small_cases() {
        assert_eq!(y_n(1, &q()).unwrap(), HeckeElement::one(1, q()));
        let y2 = y_n(2, &q()).unwrap();
        let qi = q().inverse().unwrap();
        let expected = HeckeElement::one(2, q())
            .sub(&HeckeElement::generator(1, 2, q()).unwrap().scale(&qi))
            .unwrap()
            .scale(&(Scalar::integer(1) + qi).inverse().unwrap());
        assert_eq!(y2, expected);
        let t = HeckeElement::generator(1, 2, q()).unwrap();
        assert_eq!(t.mul(&y2).unwrap(), y2.scale(&Scalar::integer(-1)));
    }

    #[test]
    fn vanishing_q_factorial_is_reported() {
        // q = -1 makes [2]_q = 0
        let q = Scalar::integer(-1);
        assert_eq!(x_n(2, &q), Err(HeckeError::VanishingQFactorial(2)));
        assert_eq!(y_n(2, &q), Err(HeckeError::VanishingNormalizer(2)));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(perm(&[2, 3, 1, 5, 4]).cycle_type(), vec![3, 2]);
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
