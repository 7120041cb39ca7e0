//! Square matrices whose entries are [`Element`]s.

use alloc::vec::Vec;

use super::Element;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ElementMatrix {
    n: usize,
    entries: Vec<Element>,
}

impl ElementMatrix {
    pub fn from_entries(n: usize, entries: Vec<Element>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::KindMismatch(alloc::format!("{} entries for a {n}×{n} matrix", entries.len())));
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Element) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn scalar(x: Element) -> Self {
        Self { n: 1, entries: alloc::vec![x] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Element::one() } else { Element::zero() })
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| Element::zero())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Element) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn map(&self, mut f: impl FnMut(&Element) -> Result<Element>) -> Result<Self> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::KindMismatch(alloc::format!("{}×{} vs {}×{}", self.n, self.n, other.n, other.n)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<Element> = None;
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b)?;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => s.add(&t)?,
                    });
                }
                entries.push(acc.unwrap_or_else(Element::zero));
            }
        }
        Ok(Self { n, entries })
    }

    pub fn scale(&self, c: crate::C64) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).adjoint())
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.same_size(b)?;
        a.same_size(c)?;
        a.same_size(d)?;
        let n = a.n;
        Ok(Self::from_fn(2 * n, |i, j| {
            let src = match (i < n, j < n) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            src.get(i % n, j % n).clone()
        }))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        Self::from_fn(n, |i, j| match (i < self.n, j < self.n) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.n, j - self.n).clone(),
            _ => Element::zero(),
        })
    }

    /// Max entrywise compressed defect.
    pub fn defect(&self, other: &Self, margin: usize) -> Result<f64> {
        self.same_size(other)?;
        let mut worst: f64 = 0.0;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            worst = worst.max(a.defect(b, margin)?);
        }
        Ok(worst)
    }
}
