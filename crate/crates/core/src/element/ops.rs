//! Leg operations: the primitive maps from which every morphism between
//! nodes is assembled.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{Element, Layout, Leg, Tensor, ZERO};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// How diagonal averaging treats a Fock leg.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolPolicy {
    /// Indices dropped at the top of the leg.
    pub margin: usize,
    /// Largest `|degree|` allowed to carry a non-negligible coefficient.
    pub circle_window: i64,
    /// Coefficients at most this large outside the window are discarded.
    pub tail_tolerance: f64,
    /// Reject diagonals whose relative variance exceeds 1e-3.
    pub strict: bool,
}

impl SymbolPolicy {
    pub fn lenient(margin: usize, circle_window: i64, tail_tolerance: f64) -> Self {
        Self { margin, circle_window, tail_tolerance, strict: false }
    }

    pub fn strict(margin: usize, circle_window: i64, tail_tolerance: f64) -> Self {
        Self { margin, circle_window, tail_tolerance, strict: true }
    }

    /// Averaging window `[N/4, N − margin)` on a leg of dimension `n`.
    pub fn window(&self, n: usize) -> (usize, usize) {
        (n / 4, n.saturating_sub(self.margin))
    }
}

pub(crate) const STABILITY_LIMIT: f64 = 1e-3;

/// `(pre, d, post)` around Fock slot `p`.
fn split_dims(dims: &[usize], p: usize) -> (usize, usize, usize) {
    (dims[..p].iter().product(), dims[p], dims[p + 1..].iter().product())
}

fn fock_slot(layout: &Layout, leg: usize) -> Result<usize> {
    match layout.legs.get(leg) {
        Some(Leg::Fock { .. }) => Ok(layout.slot(leg)),
        _ => Err(Error::KindMismatch(format!("leg {leg} of {} is not a Fock leg", layout.describe()))),
    }
}

fn circle_slot(layout: &Layout, leg: usize) -> Result<usize> {
    match layout.legs.get(leg) {
        Some(Leg::Circle { .. }) => Ok(layout.slot(leg)),
        _ => Err(Error::KindMismatch(format!("leg {leg} of {} is not a circle leg", layout.describe()))),
    }
}

fn insert_key(key: &[i64], at: usize, value: i64) -> Vec<i64> {
    let mut k = key.to_vec();
    k.insert(at, value);
    k
}

/// Matrix unit pattern of `T(u^k)`: `s^k` for `k ≥ 0`, `s*^{-k}` otherwise.
pub fn toeplitz_power(n: usize, k: i64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let i = j as i64 + k;
        if i >= 0 && (i as usize) < n {
            m.set(i as usize, j, super::ONE);
        }
    }
    m.with_legs(alloc::vec![n]).expect("square")
}

/// Places factor `f` at Fock slot `p` of a matrix over the remaining legs.
fn insert_factor(m: &ComplexMatrix, pre: usize, post: usize, f: &ComplexMatrix) -> ComplexMatrix {
    let d = f.rows();
    let n = pre * d * post;
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..m.rows() {
        let (a, b) = (r / post, r % post);
        for c in 0..m.cols() {
            let z = m.get(r, c);
            if z.re == 0.0 && z.im == 0.0 {
                continue;
            }
            let (a2, b2) = (c / post, c % post);
            for i in 0..d {
                for j in 0..d {
                    let w = f.get(i, j);
                    if w.re == 0.0 && w.im == 0.0 {
                        continue;
                    }
                    out.set((a * d + i) * post + b, (a2 * d + j) * post + b2, z * w);
                }
            }
        }
    }
    out
}

fn declare(m: ComplexMatrix, layout: &Layout) -> ComplexMatrix {
    let dims = layout.fock_dims();
    if dims.is_empty() {
        m
    } else {
        m.with_legs(dims).expect("matrix matches layout")
    }
}

impl Tensor {
    /// Symbol map on one Fock leg: the leg becomes a circle leg whose
    /// degree-`k` coefficient is the average of the `k`-th diagonal over the
    /// interior window.
    pub fn symbol_leg(&self, leg: usize, policy: &SymbolPolicy) -> Result<Tensor> {
        let layout = self.layout();
        let p = fock_slot(layout, leg)?;
        let dims = layout.fock_dims();
        let (pre, d, post) = split_dims(&dims, p);
        let (lo, hi) = policy.window(d);
        if hi <= lo {
            return Err(Error::ProfileMismatch(format!("empty symbol window on a leg of size {d}")));
        }
        let len = hi - lo;
        let cslot = layout.legs[..leg].iter().filter(|l| !l.is_fock()).count();
        let mut legs = layout.legs.clone();
        legs[leg] = Leg::Circle { charged: layout.legs[leg].charged() };
        let out_layout = Layout::new(legs);
        let r = pre * post;
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            for k in -(len as i64 - 1)..=(len as i64 - 1) {
                let count = len - k.unsigned_abs() as usize;
                let mut block = ComplexMatrix::zeros(r, r);
                let mut worst_var: f64 = 0.0;
                let mut any = false;
                for ra in 0..pre {
                    for rb in 0..post {
                        for ca in 0..pre {
                            for cb in 0..post {
                                let (mut sum, mut sq) = (ZERO, 0.0);
                                for j in lo..hi {
                                    let i = j as i64 + k;
                                    if i < lo as i64 || i >= hi as i64 {
                                        continue;
                                    }
                                    let z = m.get((ra * d + i as usize) * post + rb, (ca * d + j) * post + cb);
                                    sum += z;
                                    sq += z.norm_sqr();
                                }
                                if sq == 0.0 {
                                    continue;
                                }
                                any = true;
                                let mean = sum / count as f64;
                                if policy.strict {
                                    let var = (sq / count as f64 - mean.norm_sqr()).max(0.0);
                                    worst_var = worst_var.max(var / mean.norm_sqr().max(1.0));
                                }
                                block.set(ra * post + rb, ca * post + cb, mean);
                            }
                        }
                    }
                }
                if !any {
                    continue;
                }
                if policy.strict && worst_var > STABILITY_LIMIT {
                    return Err(Error::SymbolUnstable { diagonal: k, relative_variance: worst_var });
                }
                if k.abs() > policy.circle_window {
                    if block.max_abs() > policy.tail_tolerance {
                        return Err(Error::WindowExceeded { degree: k });
                    }
                    continue;
                }
                let nk = insert_key(key, cslot, k);
                let block = declare(block, &out_layout);
                add_into(&mut terms, nk, block);
            }
        }
        Ok(Tensor::from_parts(out_layout, terms))
    }

    /// `t ↦ t₍₀₎ ⊗ t₍₁₎` on one Fock leg: a new circle leg right after it
    /// records each entry's diagonal offset. The leg's charge moves to the
    /// new circle leg.
    pub fn coaction_split(&self, leg: usize) -> Result<Tensor> {
        let layout = self.layout();
        let p = fock_slot(layout, leg)?;
        let dims = layout.fock_dims();
        let (_, d, post) = split_dims(&dims, p);
        let cslot = layout.legs[..leg].iter().filter(|l| !l.is_fock()).count();
        let mut legs = layout.legs.clone();
        let charged = legs[leg].charged();
        legs[leg] = legs[leg].with_charge(false);
        legs.insert(leg + 1, Leg::Circle { charged });
        let out_layout = Layout::new(legs);
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            let mut parts: BTreeMap<i64, ComplexMatrix> = BTreeMap::new();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let z = m.get(r, c);
                    if z.re == 0.0 && z.im == 0.0 {
                        continue;
                    }
                    let off = ((r / post) % d) as i64 - ((c / post) % d) as i64;
                    parts
                        .entry(off)
                        .or_insert_with(|| ComplexMatrix::zeros(m.rows(), m.cols()))
                        .set(r, c, z);
                }
            }
            for (off, part) in parts {
                add_into(&mut terms, insert_key(key, cslot, off), declare(part, &out_layout));
            }
        }
        Ok(Tensor::from_parts(out_layout, terms))
    }

    /// Right coaction for the action on the charged legs: appends a charged
    /// circle leg carrying each entry's total degree; existing legs become
    /// passive.
    pub fn coaction_total(&self) -> Tensor {
        let layout = self.layout();
        let mut legs: Vec<Leg> = layout.legs.iter().map(|l| l.with_charge(false)).collect();
        legs.push(Leg::circle_charged());
        let out_layout = Layout::new(legs);
        let fock = self.fock_charge_offsets();
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            let base = self.circle_degree(key);
            let mut parts: BTreeMap<i64, ComplexMatrix> = BTreeMap::new();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let z = m.get(r, c);
                    if z.re == 0.0 && z.im == 0.0 {
                        continue;
                    }
                    parts
                        .entry(base + fock(r, c))
                        .or_insert_with(|| ComplexMatrix::zeros(m.rows(), m.cols()))
                        .set(r, c, z);
                }
            }
            for (deg, part) in parts {
                let mut k = key.clone();
                k.push(deg);
                add_into(&mut terms, k, declare(part, &out_layout));
            }
        }
        Tensor::from_parts(out_layout, terms)
    }

    /// Multiplies circle leg `from` into circle leg `into` (`u^a ⊗ u^b ↦ u^{a+b}`),
    /// removing `from`.
    pub fn merge_circles(&self, into: usize, from: usize) -> Result<Tensor> {
        let layout = self.layout();
        let ci = circle_slot(layout, into)?;
        let cf = circle_slot(layout, from)?;
        if into == from {
            return Err(Error::KindMismatch("cannot merge a leg with itself".into()));
        }
        let mut legs = layout.legs.clone();
        let charged = legs[into].charged() || legs[from].charged();
        legs[into] = Leg::Circle { charged };
        legs.remove(from);
        let out_layout = Layout::new(legs);
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            let mut k = key.clone();
            k[ci] += k[cf];
            k.remove(cf);
            add_into(&mut terms, k, m.clone());
        }
        Ok(Tensor::from_parts(out_layout, terms))
    }

    /// Comultiplication `u^k ↦ u^k ⊗ u^k` on a circle leg; the copy is
    /// inserted right after it and inherits the charge.
    pub fn coproduct(&self, leg: usize) -> Result<Tensor> {
        let layout = self.layout();
        let c = circle_slot(layout, leg)?;
        let mut legs = layout.legs.clone();
        let charged = legs[leg].charged();
        legs[leg] = Leg::circle();
        legs.insert(leg + 1, Leg::Circle { charged });
        let out_layout = Layout::new(legs);
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            add_into(&mut terms, insert_key(key, c + 1, key[c]), m.clone());
        }
        Ok(Tensor::from_parts(out_layout, terms))
    }

    /// Gauge shift on circle leg `h`: each entry's `h`-degree moves by
    /// `±` its degree on the legs `others` (`+` for κ, `−` for κ⁻¹).
    /// κ leaves `others` passive; κ⁻¹ makes them charged again.
    pub fn kappa(&self, h: usize, others: &[usize], inverse: bool) -> Result<Tensor> {
        let layout = self.layout();
        let hs = circle_slot(layout, h)?;
        if others.contains(&h) || others.iter().any(|&l| l >= layout.len()) {
            return Err(Error::KindMismatch("invalid gauge legs".into()));
        }
        let mut legs = layout.legs.clone();
        for &l in others {
            legs[l] = legs[l].with_charge(inverse);
        }
        let out_layout = Layout::new(legs);
        let sign = if inverse { -1 } else { 1 };
        let dims = layout.fock_dims();
        let fock_sel: Vec<usize> = others.iter().filter(|&&l| layout.legs[l].is_fock()).map(|&l| layout.slot(l)).collect();
        let circ_sel: Vec<usize> = others.iter().filter(|&&l| !layout.legs[l].is_fock()).map(|&l| layout.slot(l)).collect();
        let offset = |r: usize, c: usize| -> i64 {
            let (mut r, mut c) = (r, c);
            let mut total = 0;
            for p in (0..dims.len()).rev() {
                if fock_sel.contains(&p) {
                    total += (r % dims[p]) as i64 - (c % dims[p]) as i64;
                }
                r /= dims[p];
                c /= dims[p];
            }
            total
        };
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            let base: i64 = circ_sel.iter().map(|&s| key[s]).sum();
            if fock_sel.is_empty() {
                let mut k = key.clone();
                k[hs] += sign * base;
                add_into(&mut terms, k, m.clone());
                continue;
            }
            let mut parts: BTreeMap<i64, ComplexMatrix> = BTreeMap::new();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let z = m.get(r, c);
                    if z.re == 0.0 && z.im == 0.0 {
                        continue;
                    }
                    parts
                        .entry(base + offset(r, c))
                        .or_insert_with(|| ComplexMatrix::zeros(m.rows(), m.cols()))
                        .set(r, c, z);
                }
            }
            for (deg, part) in parts {
                let mut k = key.clone();
                k[hs] += sign * deg;
                add_into(&mut terms, k, declare(part, &out_layout));
            }
        }
        Ok(Tensor::from_parts(out_layout, terms))
    }

    /// `x ↦ x ⊗ 1_T` with a new Fock leg at the end.
    pub fn append_fock(&self, dim: usize, charged: bool) -> Tensor {
        let mut legs = self.layout().legs.clone();
        legs.push(Leg::Fock { dim, charged });
        let out_layout = Layout::new(legs);
        let id = ComplexMatrix::identity(dim);
        let terms = self.terms().map(|(k, m)| (k.clone(), declare(m.tensor(&id), &out_layout))).collect();
        Tensor::from_parts(out_layout, terms)
    }

    /// `x ↦ x ⊗ 1` with a new circle leg at the end.
    pub fn append_circle(&self, charged: bool) -> Tensor {
        let mut legs = self.layout().legs.clone();
        legs.push(Leg::Circle { charged });
        let out_layout = Layout::new(legs);
        let terms = self
            .terms()
            .map(|(k, m)| {
                let mut k = k.clone();
                k.push(0);
                (k, m.clone())
            })
            .collect();
        Tensor::from_parts(out_layout, terms)
    }

    /// Removes a circle leg on which every term has degree zero.
    pub fn drop_circle(&self, leg: usize) -> Result<Tensor> {
        let layout = self.layout();
        let c = circle_slot(layout, leg)?;
        if self.terms().any(|(k, _)| k[c] != 0) {
            return Err(Error::NotInvariant);
        }
        let mut legs = layout.legs.clone();
        legs.remove(leg);
        let out_layout = Layout::new(legs);
        let terms = self
            .terms()
            .map(|(k, m)| {
                let mut k = k.clone();
                k.remove(c);
                (k, m.clone())
            })
            .collect();
        Ok(Tensor::from_parts(out_layout, terms))
    }

    /// Toeplitz quantization of a circle leg: `u^k ↦ T(u^k)` on a new Fock
    /// leg of dimension `dim` in the same position.
    pub fn toeplitz_leg(&self, leg: usize, dim: usize) -> Result<Tensor> {
        let layout = self.layout();
        let c = circle_slot(layout, leg)?;
        let mut legs = layout.legs.clone();
        legs[leg] = Leg::Fock { dim, charged: layout.legs[leg].charged() };
        let out_layout = Layout::new(legs);
        let dims = out_layout.fock_dims();
        let p = out_layout.slot(leg);
        let (pre, _, post) = split_dims(&dims, p);
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            let f = toeplitz_power(dim, key[c]);
            let mut k = key.clone();
            k.remove(c);
            let placed = insert_factor(m, pre, post, &f);
            add_into(&mut terms, k, declare(placed, &out_layout));
        }
        Ok(Tensor::from_parts(out_layout, terms))
    }

    /// Splits off the diagonal-offset `k` part of Fock leg `leg`.
    pub fn diagonal_part(&self, leg: usize, k: i64) -> Result<Tensor> {
        let layout = self.layout();
        let p = fock_slot(layout, leg)?;
        let dims = layout.fock_dims();
        let (_, d, post) = split_dims(&dims, p);
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            let part = ComplexMatrix::from_fn(m.rows(), m.cols(), |r, c| {
                if ((r / post) % d) as i64 - ((c / post) % d) as i64 == k {
                    m.get(r, c)
                } else {
                    ZERO
                }
            });
            add_into(&mut terms, key.clone(), declare(part, layout));
        }
        Ok(Tensor::from_parts(layout.clone(), terms))
    }

    /// Diagonal offsets present on Fock leg `leg`.
    pub fn diagonal_offsets(&self, leg: usize) -> Result<Vec<i64>> {
        let layout = self.layout();
        let p = fock_slot(layout, leg)?;
        let dims = layout.fock_dims();
        let (_, d, post) = split_dims(&dims, p);
        let mut seen = alloc::collections::BTreeSet::new();
        for (_, m) in self.terms() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let z = m.get(r, c);
                    if z.re != 0.0 || z.im != 0.0 {
                        seen.insert(((r / post) % d) as i64 - ((c / post) % d) as i64);
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Degrees present on circle leg `leg`.
    pub fn circle_degrees(&self, leg: usize) -> Result<Vec<i64>> {
        let c = circle_slot(self.layout(), leg)?;
        let mut v: Vec<i64> = self.terms().map(|(k, _)| k[c]).collect();
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    /// Part of the tensor with degree `k` on circle leg `leg`.
    pub fn circle_part(&self, leg: usize, k: i64) -> Result<Tensor> {
        let c = circle_slot(self.layout(), leg)?;
        let terms = self.terms().filter(|(key, _)| key[c] == k).map(|(a, b)| (a.clone(), b.clone())).collect();
        Ok(Tensor::from_parts(self.layout().clone(), terms))
    }

    /// Evaluates every circle leg at `z = 1`, leaving a matrix over the Fock legs.
    pub fn eval_circles_at_one(&self) -> ComplexMatrix {
        let dim = self.layout().matrix_dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (_, m) in self.terms() {
            acc = &acc + m;
        }
        acc
    }

    /// Reorders legs: output leg `i` is input leg `perm[i]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Tensor> {
        let layout = self.layout();
        let n = layout.len();
        let mut check: Vec<usize> = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::KindMismatch("not a permutation of the legs".into()));
        }
        let out_layout = Layout::new(perm.iter().map(|&i| layout.legs[i]).collect());
        let in_dims = layout.fock_dims();
        let out_dims = out_layout.fock_dims();
        let fock_perm: Vec<usize> = perm.iter().filter(|&&i| layout.legs[i].is_fock()).map(|&i| layout.slot(i)).collect();
        let circ_perm: Vec<usize> = perm.iter().filter(|&&i| !layout.legs[i].is_fock()).map(|&i| layout.slot(i)).collect();
        let map_index = |idx: usize| -> usize {
            let mut digits = alloc::vec![0usize; in_dims.len()];
            let mut x = idx;
            for p in (0..in_dims.len()).rev() {
                digits[p] = x % in_dims[p];
                x /= in_dims[p];
            }
            fock_perm.iter().zip(&out_dims).fold(0, |acc, (&src, &d)| acc * d + digits[src])
        };
        let mut terms = BTreeMap::new();
        for (key, m) in self.terms() {
            let k: Vec<i64> = circ_perm.iter().map(|&s| key[s]).collect();
            let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let z = m.get(r, c);
                    if z.re != 0.0 || z.im != 0.0 {
                        out.set(map_index(r), map_index(c), z);
                    }
                }
            }
            add_into(&mut terms, k, declare(out, &out_layout));
        }
        Ok(Tensor::from_parts(out_layout, terms))
    }
}

fn add_into(terms: &mut BTreeMap<Vec<i64>, ComplexMatrix>, key: Vec<i64>, m: ComplexMatrix) {
    if m.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(e) => *e = &*e + &m,
        None => {
            terms.insert(key, m);
        }
    }
}

impl Element {
    /// Applies a tensor operation to a tensor leaf; scalars pass through
    /// (every leg operation is unital).
    pub fn map_tensor(&self, f: impl FnOnce(&Tensor) -> Result<Tensor>) -> Result<Element> {
        match self {
            Element::Scalar(_) => Ok(self.clone()),
            Element::Tensor(t) => Ok(Element::Tensor(f(t)?)),
            Element::Pair(..) => Err(Error::KindMismatch("leg operation applied to a pair".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentElement;
    use crate::C64;
    use alloc::vec;

    fn s(n: usize) -> ComplexMatrix {
        toeplitz_power(n, 1)
    }

    fn policy() -> SymbolPolicy {
        SymbolPolicy::strict(2, 8, 1e-12)
    }

    #[test]
    fn symbol_of_shift_is_u() {
        let t = Tensor::matrix(Layout::new(vec![Leg::fock(16)]), s(16)).unwrap();
        let sym = t.symbol_leg(0, &policy()).unwrap().to_laurent().unwrap();
        assert_eq!(sym, LaurentElement::u(1));
        let sym = t.adjoint().symbol_leg(0, &policy()).unwrap().to_laurent().unwrap();
        assert_eq!(sym, LaurentElement::u(-1));
    }

    #[test]
    fn corner_projection_has_zero_symbol() {
        let e00 = ComplexMatrix::unit(16, 0, 0);
        let t = Tensor::matrix(Layout::new(vec![Leg::fock(16)]), e00).unwrap();
        assert!(t.symbol_leg(0, &policy()).unwrap().is_zero());
    }

    #[test]
    fn symbol_on_second_leg_keeps_first() {
        let n = 8;
        let lay = Layout::new(vec![Leg::fock(n), Leg::fock(n)]);
        let m = ComplexMatrix::unit(n, 0, 0).tensor(&s(n).adjoint());
        let t = Tensor::matrix(lay, m).unwrap();
        let out = t.symbol_leg(1, &policy()).unwrap();
        assert_eq!(out.layout().legs[1], Leg::circle());
        let c = out.coefficient(&[-1]).unwrap();
        assert_eq!(c.max_abs_diff(&ComplexMatrix::unit(n, 0, 0)), 0.0);
        assert_eq!(out.term_count(), 1);
    }

    #[test]
    fn unstable_diagonal_is_rejected_in_strict_mode() {
        let n = 16;
        let ramp = ComplexMatrix::diagonal(&(0..n).map(|i| C64::new(i as f64, 0.0)).collect::<Vec<_>>());
        let t = Tensor::matrix(Layout::new(vec![Leg::fock(n)]), ramp).unwrap();
        assert!(matches!(t.symbol_leg(0, &policy()), Err(Error::SymbolUnstable { diagonal: 0, .. })));
        let lenient = SymbolPolicy::lenient(2, 8, 1e-12);
        assert!(t.symbol_leg(0, &lenient).is_ok());
    }

    #[test]
    fn coaction_split_records_offsets() {
        let n = 6;
        let lay = Layout::new(vec![Leg::fock_charged(n)]);
        let m = &s(n) + &s(n).adjoint().matmul(&s(n).adjoint());
        let t = Tensor::matrix(lay, m).unwrap();
        let split = t.coaction_split(0).unwrap();
        assert_eq!(split.layout().legs, vec![Leg::fock(n), Leg::circle_charged()]);
        assert_eq!(split.coefficient(&[1]).unwrap().max_abs_diff(&s(n)), 0.0);
        assert!(split.coefficient(&[-2]).is_some());
        assert_eq!(split.term_count(), 2);
    }

    #[test]
    fn coproduct_and_merge() {
        let t = Tensor::from_laurent(&LaurentElement::u(3), true);
        let d = t.coproduct(0).unwrap();
        assert!(d.coefficient(&[3, 3]).is_some());
        let m = d.merge_circles(0, 1).unwrap();
        assert_eq!(m.to_laurent().unwrap(), LaurentElement::u(6));
    }

    #[test]
    fn kappa_shifts_by_fock_degree() {
        let n = 6;
        let lay = Layout::new(vec![Leg::fock_charged(n), Leg::circle_charged()]);
        let t = Tensor::term(lay, vec![2], s(n)).unwrap();
        let k = t.kappa(1, &[0], false).unwrap();
        assert!(k.coefficient(&[3]).is_some());
        assert!(!k.layout().legs[0].charged());
        let back = k.kappa(1, &[0], true).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn toeplitz_leg_inverts_symbol_on_monomials() {
        let n = 12;
        let lay = Layout::new(vec![Leg::circle(), Leg::fock(n)]);
        let t = Tensor::term(lay, vec![-2], s(n)).unwrap();
        let q = t.toeplitz_leg(0, n).unwrap();
        let expect = toeplitz_power(n, -2).tensor(&s(n));
        assert_eq!(q.coefficient(&[]).unwrap().max_abs_diff(&expect), 0.0);
        let back = q.symbol_leg(0, &policy()).unwrap();
        assert_eq!(back.coefficient(&[-2]).unwrap().max_abs_diff(&s(n)), 0.0);
    }

    #[test]
    fn permute_swaps_fock_legs() {
        let n = 4;
        let lay = Layout::new(vec![Leg::fock(n), Leg::fock(n)]);
        let a = ComplexMatrix::unit(n, 0, 0);
        let t = Tensor::matrix(lay, a.tensor(&s(n))).unwrap();
        let p = t.permute_legs(&[1, 0]).unwrap();
        assert_eq!(p.coefficient(&[]).unwrap().max_abs_diff(&s(n).tensor(&a)), 0.0);
    }

    #[test]
    fn append_and_drop() {
        let t = Tensor::from_laurent(&LaurentElement::u(1), true);
        let f = t.append_fock(3, true);
        assert_eq!(f.layout().fock_dims(), vec![3]);
        assert!(t.drop_circle(0).is_err());
        let c = Tensor::identity(Layout::new(vec![Leg::fock(3), Leg::circle()]));
        assert_eq!(c.drop_circle(1).unwrap(), Tensor::identity(Layout::new(vec![Leg::fock(3)])));
    }
}
