//! Linear combinations `Σ_w w ⊗ M_w` of short words in the coefficients of a
//! corepresentation `U`, with concrete matrix coefficients on the right.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{compress_interior, ComplexMatrix, TruncationProfile};

/// `U(k, l)` is `u_kl`; `Star(k, l)` is `(U*)_kl = u_lk*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    U(usize, usize),
    Star(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordTensor {
    dim: usize,
    terms: BTreeMap<Vec<Letter>, ComplexMatrix>,
}

impl WordTensor {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    /// `w ⊗ m`.
    pub fn term(word: Vec<Letter>, m: ComplexMatrix) -> Self {
        let mut out = Self::zero(m.rows());
        out.add_term(word, m);
        out
    }

    /// `1 ⊗ m`.
    pub fn constant(m: ComplexMatrix) -> Self {
        Self::term(Vec::new(), m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &ComplexMatrix)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[Letter]) -> Option<&ComplexMatrix> {
        self.terms.get(word)
    }

    fn add_term(&mut self, word: Vec<Letter>, m: ComplexMatrix) {
        if m.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(e) => {
                let s = &*e + &m;
                if s.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(word, m);
            }
        }
    }

    pub fn add(&self, other: &WordTensor) -> WordTensor {
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_term(w.clone(), m.clone());
        }
        out
    }

    /// Words concatenate, coefficients multiply.
    pub fn mul(&self, other: &WordTensor) -> WordTensor {
        let mut out = WordTensor::zero(self.dim);
        for (w1, m1) in &self.terms {
            for (w2, m2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, m1.matmul(m2));
            }
        }
        out
    }

    pub fn compress(&self, profile: &TruncationProfile) -> Result<WordTensor> {
        let mut out = WordTensor::zero(profile.interior_dim());
        for (w, m) in &self.terms {
            let m = m.clone().with_legs(profile.leg_dims.clone())?;
            out.add_term(w.clone(), compress_interior(&m, profile)?);
        }
        Ok(out)
    }

    /// Applies `Σ_p u_kp (U*)_pl = δ_kl` and `Σ_p (U*)_kp u_pl = δ_kl` to
    /// two-letter words whose coefficients are diagonal in `p` and constant
    /// along it, within `tol`.
    pub fn reduce_unitarity(&self, size: usize, tol: f64) -> WordTensor {
        let mut out = self.clone();
        for star_first in [false, true] {
            for k in 0..size {
                for l in 0..size {
                    let word = |p: usize, r: usize| -> Vec<Letter> {
                        if star_first {
                            alloc::vec![Letter::Star(k, p), Letter::U(r, l)]
                        } else {
                            alloc::vec![Letter::U(k, p), Letter::Star(r, l)]
                        }
                    };
                    let zero = ComplexMatrix::zeros(self.dim, self.dim);
                    let coeff = |p: usize, r: usize| out.terms.get(&word(p, r)).cloned().unwrap_or_else(|| zero.clone());
                    let first = coeff(0, 0);
                    if first.is_zero() {
                        continue;
                    }
                    let mut ok = true;
                    for p in 0..size {
                        for r in 0..size {
                            let c = coeff(p, r);
                            let target = if p == r { &first } else { &zero };
                            if c.max_abs_diff(target) > tol {
                                ok = false;
                            }
                        }
                    }
                    if ok {
                        for p in 0..size {
                            for r in 0..size {
                                out.terms.remove(&word(p, r));
                            }
                        }
                        if k == l {
                            out.add_term(Vec::new(), first);
                        }
                    }
                }
            }
        }
        out
    }

    /// Largest coefficient difference over all words.
    pub fn defect(&self, other: &WordTensor) -> f64 {
        let zero = ComplexMatrix::zeros(self.dim, self.dim);
        let mut worst: f64 = 0.0;
        for w in self.terms.keys().chain(other.terms.keys()) {
            let a = self.terms.get(w).unwrap_or(&zero);
            let b = other.terms.get(w).unwrap_or(&zero);
            worst = worst.max(a.max_abs_diff(b));
        }
        worst
    }
}

/// Square matrix of [`WordTensor`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct WordMatrix {
    n: usize,
    entries: Vec<WordTensor>,
}

impl WordMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> WordTensor) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    /// `1 ⊗ 1` on the diagonal.
    pub fn identity(n: usize, dim: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                WordTensor::constant(ComplexMatrix::identity(dim))
            } else {
                WordTensor::zero(dim)
            }
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &WordTensor {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &WordMatrix) -> Result<WordMatrix> {
        if self.n != other.n {
            return Err(Error::KindMismatch("word matrices of different sizes".into()));
        }
        let dim = self.entries.first().map_or(0, |e| e.dim);
        Ok(Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(WordTensor::zero(dim), |acc, k| acc.add(&self.get(i, k).mul(other.get(k, j))))
        }))
    }

    pub fn map(&self, mut f: impl FnMut(&WordTensor) -> Result<WordTensor>) -> Result<WordMatrix> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }

    pub fn defect(&self, other: &WordMatrix) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.defect(b)).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn unitarity_reduction() {
        let one = ComplexMatrix::identity(3);
        let mut x = WordTensor::zero(3);
        for p in 0..2 {
            x = x.add(&WordTensor::term(alloc::vec![Letter::U(0, p), Letter::Star(p, 0)], one.clone()));
        }
        let r = x.reduce_unitarity(2, 1e-12);
        assert_eq!(r, WordTensor::constant(one.clone()));

        let mut y = WordTensor::zero(3);
        for p in 0..2 {
            y = y.add(&WordTensor::term(alloc::vec![Letter::U(0, p), Letter::Star(p, 1)], one.clone()));
        }
        assert!(y.reduce_unitarity(2, 1e-12).terms().next().is_none());

        let lopsided = WordTensor::term(alloc::vec![Letter::U(0, 0), Letter::Star(0, 0)], one.clone());
        assert_eq!(lopsided.reduce_unitarity(2, 1e-12), lopsided);
    }

    #[test]
    fn products_concatenate() {
        let a = WordTensor::term(alloc::vec![Letter::U(0, 1)], ComplexMatrix::identity(2).scale(C64::new(2.0, 0.0)));
        let b = WordTensor::constant(ComplexMatrix::identity(2));
        let ab = a.mul(&b);
        assert_eq!(ab.coefficient(&[Letter::U(0, 1)]).unwrap().get(1, 1), C64::new(2.0, 0.0));
    }
}
