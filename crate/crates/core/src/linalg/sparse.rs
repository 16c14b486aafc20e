//! Sorted sparse vectors `(column, value)` with no stored zeros.

use crate::exactnum::Field;

pub type SparseVec<F> = Vec<(usize, F)>;

/// `a + s * b`.
pub fn axpy<F: Field>(a: &[(usize, F)], s: &F, b: &[(usize, F)]) -> SparseVec<F> {
    if s.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va.plus(&s.times(vb));
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (_, Some((cb, vb))) => {
                out.push((*cb, s.times(vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn scale<F: Field>(v: &[(usize, F)], s: &F) -> SparseVec<F> {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(c, x)| (*c, x.times(s))).collect()
}

pub fn get<F: Field>(v: &[(usize, F)], col: usize) -> Option<&F> {
    v.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &v[k].1)
}

/// Builds a sparse vector from unsorted `(column, value)` pairs, summing duplicates.
pub fn from_unsorted<F: Field>(mut entries: Vec<(usize, F)>) -> SparseVec<F> {
    entries.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec<F> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.plus(&v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}
