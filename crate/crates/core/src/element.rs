//! Elements of tensor products of Toeplitz and circle factors, and nested
//! pairs of such elements.
//!
//! A [`Tensor`] stores, for every multi-degree on its circle legs, a dense
//! matrix over its Fock legs (a `1×1` matrix when there are none). Circle
//! legs are therefore exact; Fock legs carry the truncation.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::laurent::LaurentElement;
use crate::matrix::{compress_interior, ComplexMatrix, TruncationProfile};
use crate::C64;

mod matrix_of;
pub(crate) mod ops;

pub use matrix_of::ElementMatrix;
pub use ops::{toeplitz_power, SymbolPolicy};

pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// One tensor factor. `charged` marks legs on which the circle action lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leg {
    Fock { dim: usize, charged: bool },
    Circle { charged: bool },
}

impl Leg {
    pub fn fock(dim: usize) -> Self {
        Leg::Fock { dim, charged: false }
    }

    pub fn fock_charged(dim: usize) -> Self {
        Leg::Fock { dim, charged: true }
    }

    pub fn circle() -> Self {
        Leg::Circle { charged: false }
    }

    pub fn circle_charged() -> Self {
        Leg::Circle { charged: true }
    }

    pub fn is_fock(&self) -> bool {
        matches!(self, Leg::Fock { .. })
    }

    pub fn charged(&self) -> bool {
        match *self {
            Leg::Fock { charged, .. } | Leg::Circle { charged } => charged,
        }
    }

    pub(crate) fn with_charge(self, charged: bool) -> Self {
        match self {
            Leg::Fock { dim, .. } => Leg::Fock { dim, charged },
            Leg::Circle { .. } => Leg::Circle { charged },
        }
    }

    fn same_kind(&self, other: &Leg) -> bool {
        match (self, other) {
            (Leg::Fock { dim: a, .. }, Leg::Fock { dim: b, .. }) => a == b,
            (Leg::Circle { .. }, Leg::Circle { .. }) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Layout {
    pub legs: Vec<Leg>,
}

impl Layout {
    pub fn new(legs: Vec<Leg>) -> Self {
        Self { legs }
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn fock_dims(&self) -> Vec<usize> {
        self.legs
            .iter()
            .filter_map(|l| match *l {
                Leg::Fock { dim, .. } => Some(dim),
                Leg::Circle { .. } => None,
            })
            .collect()
    }

    pub fn matrix_dim(&self) -> usize {
        self.fock_dims().iter().product()
    }

    pub fn circle_count(&self) -> usize {
        self.legs.iter().filter(|l| !l.is_fock()).count()
    }

    /// Position of leg `leg` among the Fock legs (resp. circle legs).
    pub fn slot(&self, leg: usize) -> usize {
        let fock = self.legs[leg].is_fock();
        self.legs[..leg].iter().filter(|l| l.is_fock() == fock).count()
    }

    /// Same leg kinds and dimensions, charges ignored.
    pub fn same_shape(&self, other: &Layout) -> bool {
        self.legs.len() == other.legs.len()
            && self.legs.iter().zip(&other.legs).all(|(a, b)| a.same_kind(b))
    }

    /// Short label such as `F32•⊗C` used in manifests.
    pub fn describe(&self) -> alloc::string::String {
        let parts: Vec<_> = self
            .legs
            .iter()
            .map(|l| {
                let dot = if l.charged() { "•" } else { "" };
                match l {
                    Leg::Fock { dim, .. } => format!("T{dim}{dot}"),
                    Leg::Circle { .. } => format!("C(S1){dot}"),
                }
            })
            .collect();
        parts.join("⊗")
    }
}

/// Finite sum `Σ_k M_k ⊗ u^k` over the circle legs of a layout.
///
/// Equality, like arithmetic, ignores which legs are marked charged.
#[derive(Clone, Debug)]
pub struct Tensor {
    layout: Layout,
    terms: BTreeMap<Vec<i64>, ComplexMatrix>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.layout.same_shape(&other.layout) && self.terms == other.terms
    }
}

impl Tensor {
    pub fn zero(layout: Layout) -> Self {
        Self { layout, terms: BTreeMap::new() }
    }

    pub fn identity(layout: Layout) -> Self {
        let dim = layout.matrix_dim();
        let key = vec![0; layout.circle_count()];
        let mut out = Self::zero(layout);
        out.add_term(key, identity_on(&out.layout, dim));
        out
    }

    /// `M ⊗ u^key`.
    pub fn term(layout: Layout, key: Vec<i64>, m: ComplexMatrix) -> Result<Self> {
        let mut out = Self::zero(layout);
        out.check_term(&key, &m)?;
        out.add_term(key, m);
        Ok(out)
    }

    /// A pure matrix on a layout without circle legs.
    pub fn matrix(layout: Layout, m: ComplexMatrix) -> Result<Self> {
        let key = vec![0; layout.circle_count()];
        Self::term(layout, key, m)
    }

    pub fn from_laurent(v: &LaurentElement, charged: bool) -> Self {
        let leg = if charged { Leg::circle_charged() } else { Leg::circle() };
        let mut out = Self::zero(Layout::new(vec![leg]));
        for (k, c) in v.terms() {
            out.add_term(vec![k], ComplexMatrix::from_fn(1, 1, |_, _| c));
        }
        out
    }

    /// Inverse of [`Tensor::from_laurent`]; the layout must be a single circle.
    pub fn to_laurent(&self) -> Result<LaurentElement> {
        if self.layout.legs.len() != 1 || self.layout.legs[0].is_fock() {
            return Err(Error::KindMismatch(format!("{} is not a circle", self.layout.describe())));
        }
        Ok(LaurentElement::from_terms(self.terms.iter().map(|(k, m)| (k[0], m.get(0, 0)))))
    }

    fn check_term(&self, key: &[i64], m: &ComplexMatrix) -> Result<()> {
        let dim = self.layout.matrix_dim();
        if key.len() != self.layout.circle_count() || m.rows() != dim || m.cols() != dim {
            return Err(Error::KindMismatch(format!(
                "term of size {} with {} degrees does not fit {}",
                m.rows(),
                key.len(),
                self.layout.describe()
            )));
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, key: Vec<i64>, m: ComplexMatrix) {
        if m.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &m;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, m);
            }
        }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &ComplexMatrix)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[i64]) -> Option<&ComplexMatrix> {
        self.terms.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn from_parts(layout: Layout, terms: BTreeMap<Vec<i64>, ComplexMatrix>) -> Self {
        let mut out = Self::zero(layout);
        for (k, m) in terms {
            out.add_term(k, m);
        }
        out
    }

    fn ensure_shape(&self, other: &Tensor) -> Result<()> {
        if self.layout.same_shape(&other.layout) {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!(
                "{} vs {}",
                self.layout.describe(),
                other.layout.describe()
            )))
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.ensure_shape(other)?;
        let mut out = self.clone();
        for (k, m) in &other.terms {
            out.add_term(k.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Tensor) -> Result<Tensor> {
        self.ensure_shape(other)?;
        let mut out = Tensor::zero(self.layout.clone());
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                let key: Vec<i64> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                out.add_term(key, a.matmul(b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: C64) -> Tensor {
        let mut out = Tensor::zero(self.layout.clone());
        for (k, m) in &self.terms {
            out.add_term(k.clone(), m.scale(c));
        }
        out
    }

    pub fn adjoint(&self) -> Tensor {
        let mut out = Tensor::zero(self.layout.clone());
        for (k, m) in &self.terms {
            out.add_term(k.iter().map(|d| -d).collect(), m.adjoint());
        }
        out
    }

    /// `self + c·1`.
    pub fn add_scalar(&self, c: C64) -> Tensor {
        let mut out = self.clone();
        let dim = self.layout.matrix_dim();
        out.add_term(vec![0; self.layout.circle_count()], identity_on(&self.layout, dim).scale(c));
        out
    }

    /// Max entry modulus after dropping the truncation boundary of every
    /// Fock leg.
    pub fn compressed_norm(&self, margin: usize) -> Result<f64> {
        let dims = self.layout.fock_dims();
        if dims.is_empty() {
            return Ok(self.terms.values().fold(0.0, |m, t| m.max(t.max_abs())));
        }
        let profile = TruncationProfile::fock(dims.clone(), margin)?;
        let mut worst: f64 = 0.0;
        for m in self.terms.values() {
            let m = m.clone().with_legs(dims.clone())?;
            worst = worst.max(compress_interior(&m, &profile)?.max_abs());
        }
        Ok(worst)
    }

    /// Trace of the compressed matrix part, summed over degree-zero terms.
    pub fn compressed_trace(&self, margin: usize) -> Result<(C64, usize)> {
        let dims = self.layout.fock_dims();
        let zero_key = vec![0; self.layout.circle_count()];
        if dims.is_empty() {
            let t = self.terms.get(&zero_key).map_or(ZERO, |m| m.get(0, 0));
            return Ok((t, 1));
        }
        let profile = TruncationProfile::fock(dims.clone(), margin)?;
        let t = match self.terms.get(&zero_key) {
            Some(m) => compress_interior(&m.clone().with_legs(dims)?, &profile)?.trace(),
            None => ZERO,
        };
        Ok((t, profile.interior_dim()))
    }

    /// Largest `|degree|` of the circle action over the charged legs.
    pub fn max_charged_degree(&self) -> i64 {
        let mut worst = 0;
        self.for_each_entry_degree(|d, _| worst = worst.max(d.abs()));
        worst
    }

    /// Visits every nonzero entry with its total charged degree.
    pub(crate) fn for_each_entry_degree(&self, mut f: impl FnMut(i64, C64)) {
        let fock_charges = self.fock_charge_offsets();
        for (key, m) in &self.terms {
            let base = self.circle_degree(key);
            for i in 0..m.rows() {
                for (j, &z) in m.row(i).iter().enumerate() {
                    if z.re == 0.0 && z.im == 0.0 {
                        continue;
                    }
                    f(base + fock_charges(i, j), z);
                }
            }
        }
    }

    fn circle_degree(&self, key: &[i64]) -> i64 {
        self.layout
            .legs
            .iter()
            .filter(|l| !l.is_fock())
            .zip(key)
            .filter(|(l, _)| l.charged())
            .map(|(_, d)| d)
            .sum()
    }

    /// Closure giving the charged Fock degree `Σ (row_p − col_p)` of an entry.
    fn fock_charge_offsets(&self) -> impl Fn(usize, usize) -> i64 + '_ {
        let dims = self.layout.fock_dims();
        let charged: Vec<bool> =
            self.layout.legs.iter().filter(|l| l.is_fock()).map(|l| l.charged()).collect();
        move |i, j| {
            let (mut i, mut j) = (i, j);
            let mut total = 0i64;
            for p in (0..dims.len()).rev() {
                let (ip, jp) = (i % dims[p], j % dims[p]);
                i /= dims[p];
                j /= dims[p];
                if charged[p] {
                    total += ip as i64 - jp as i64;
                }
            }
            total
        }
    }

    /// `α_λ`: multiplies each entry by `λ^degree`.
    pub fn rephase(&self, lambda: C64) -> Tensor {
        let fock_charges = self.fock_charge_offsets();
        let mut out = Tensor::zero(self.layout.clone());
        for (key, m) in &self.terms {
            let base = self.circle_degree(key);
            let r = ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| {
                let z = m.get(i, j);
                if z.re == 0.0 && z.im == 0.0 {
                    z
                } else {
                    z * lambda.powi((base + fock_charges(i, j)) as i32)
                }
            });
            out.add_term(key.clone(), r);
        }
        out
    }

    /// Exact degree-`k` part for the circle action.
    pub fn homogeneous_part(&self, k: i64) -> Tensor {
        let fock_charges = self.fock_charge_offsets();
        let mut out = Tensor::zero(self.layout.clone());
        for (key, m) in &self.terms {
            let base = self.circle_degree(key);
            let r = ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| {
                if base + fock_charges(i, j) == k {
                    m.get(i, j)
                } else {
                    ZERO
                }
            });
            out.add_term(key.clone(), r);
        }
        out
    }

    /// Degrees of the circle action present in this tensor, ascending.
    pub fn degrees_present(&self) -> Vec<i64> {
        let mut seen = alloc::collections::BTreeSet::new();
        self.for_each_entry_degree(|d, _| {
            seen.insert(d);
        });
        seen.into_iter().collect()
    }
}

fn identity_on(layout: &Layout, dim: usize) -> ComplexMatrix {
    let dims = layout.fock_dims();
    let id = ComplexMatrix::identity(dim);
    if dims.is_empty() {
        id
    } else {
        id.with_legs(dims).expect("identity factors over its own legs")
    }
}

/// Element of a (possibly nested) pullback node.
///
/// `Scalar(c)` stands for `c·1` in whichever node it is combined with.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Scalar(C64),
    Tensor(Tensor),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn one() -> Self {
        Element::Scalar(ONE)
    }

    pub fn zero() -> Self {
        Element::Scalar(ZERO)
    }

    pub fn real(x: f64) -> Self {
        Element::Scalar(C64::new(x, 0.0))
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn laurent(v: &LaurentElement, charged: bool) -> Self {
        Element::Tensor(Tensor::from_laurent(v, charged))
    }

    pub fn first(&self) -> Result<&Element> {
        match self {
            Element::Pair(a, _) => Ok(a),
            Element::Scalar(_) => Ok(self),
            Element::Tensor(_) => Err(Error::KindMismatch("pair projection of a tensor".into())),
        }
    }

    pub fn second(&self) -> Result<&Element> {
        match self {
            Element::Pair(_, b) => Ok(b),
            Element::Scalar(_) => Ok(self),
            Element::Tensor(_) => Err(Error::KindMismatch("pair projection of a tensor".into())),
        }
    }

    pub fn as_tensor(&self) -> Option<&Tensor> {
        match self {
            Element::Tensor(t) => Some(t),
            _ => None,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        use Element::*;
        Ok(match (self, other) {
            (Scalar(a), Scalar(b)) => Scalar(a + b),
            (Scalar(a), Tensor(t)) | (Tensor(t), Scalar(a)) => Tensor(t.add_scalar(*a)),
            (Tensor(x), Tensor(y)) => Tensor(x.add(y)?),
            (Scalar(_), Pair(x, y)) | (Pair(x, y), Scalar(_)) => {
                let s = if let Scalar(_) = self { self } else { other };
                Element::pair(x.add(s)?, y.add(s)?)
            }
            (Pair(a, b), Pair(c, d)) => Element::pair(a.add(c)?, b.add(d)?),
            _ => return Err(Error::KindMismatch("sum of a tensor and a pair".into())),
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        use Element::*;
        Ok(match (self, other) {
            (Scalar(a), Scalar(b)) => Scalar(a * b),
            (Scalar(a), x) | (x, Scalar(a)) => x.scale(*a),
            (Tensor(x), Tensor(y)) => Tensor(x.mul(y)?),
            (Pair(a, b), Pair(c, d)) => Element::pair(a.mul(c)?, b.mul(d)?),
            _ => return Err(Error::KindMismatch("product of a tensor and a pair".into())),
        })
    }

    pub fn scale(&self, c: C64) -> Element {
        match self {
            Element::Scalar(a) => Element::Scalar(a * c),
            Element::Tensor(t) => Element::Tensor(t.scale(c)),
            Element::Pair(a, b) => Element::pair(a.scale(c), b.scale(c)),
        }
    }

    pub fn adjoint(&self) -> Element {
        match self {
            Element::Scalar(a) => Element::Scalar(a.conj()),
            Element::Tensor(t) => Element::Tensor(t.adjoint()),
            Element::Pair(a, b) => Element::pair(a.adjoint(), b.adjoint()),
        }
    }

    /// Max entry modulus after interior compression.
    pub fn compressed_norm(&self, margin: usize) -> Result<f64> {
        match self {
            Element::Scalar(a) => Ok(a.norm()),
            Element::Tensor(t) => t.compressed_norm(margin),
            Element::Pair(a, b) => Ok(a.compressed_norm(margin)?.max(b.compressed_norm(margin)?)),
        }
    }

    /// `‖self − other‖` after interior compression.
    pub fn defect(&self, other: &Element, margin: usize) -> Result<f64> {
        self.sub(other)?.compressed_norm(margin)
    }

    /// `α_λ` applied leafwise.
    pub fn rephase(&self, lambda: C64) -> Element {
        match self {
            Element::Scalar(_) => self.clone(),
            Element::Tensor(t) => Element::Tensor(t.rephase(lambda)),
            Element::Pair(a, b) => Element::pair(a.rephase(lambda), b.rephase(lambda)),
        }
    }

    pub fn homogeneous_part(&self, k: i64) -> Element {
        match self {
            Element::Scalar(_) if k == 0 => self.clone(),
            Element::Scalar(_) => Element::zero(),
            Element::Tensor(t) => Element::Tensor(t.homogeneous_part(k)),
            Element::Pair(a, b) => Element::pair(a.homogeneous_part(k), b.homogeneous_part(k)),
        }
    }

    pub fn max_charged_degree(&self) -> i64 {
        match self {
            Element::Scalar(_) => 0,
            Element::Tensor(t) => t.max_charged_degree(),
            Element::Pair(a, b) => a.max_charged_degree().max(b.max_charged_degree()),
        }
    }

    pub fn degrees_present(&self) -> Vec<i64> {
        let mut out = match self {
            Element::Scalar(a) if a.norm() == 0.0 => Vec::new(),
            Element::Scalar(_) => vec![0],
            Element::Tensor(t) => t.degrees_present(),
            Element::Pair(a, b) => {
                let mut v = a.degrees_present();
                v.extend(b.degrees_present());
                v
            }
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        match self {
            Element::Scalar(a) => a.norm() == 0.0,
            Element::Tensor(t) => t.is_zero(),
            Element::Pair(a, b) => a.is_zero() && b.is_zero(),
        }
    }
}

impl From<Tensor> for Element {
    fn from(t: Tensor) -> Self {
        Element::Tensor(t)
    }
}
