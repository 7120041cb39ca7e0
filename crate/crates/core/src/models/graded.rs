use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::element::{Layout, Tensor};
use crate::error::{Error, Result};
use crate::C64;

/// An element split into its homogeneous components for the circle action.
///
/// Component `k` holds the part of degree `k`; all components share one
/// layout, whose charged legs define the grading.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    layout: Layout,
    components: BTreeMap<i64, Tensor>,
}

impl GradedOperator {
    pub fn from_tensor(t: &Tensor) -> Self {
        let components = t
            .degrees_present()
            .into_iter()
            .map(|k| (k, t.homogeneous_part(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { layout: t.layout().clone(), components }
    }

    /// A single homogeneous component; fails if `t` is not of degree `k`.
    pub fn homogeneous(t: &Tensor, k: i64) -> Result<Self> {
        let g = Self::from_tensor(t);
        if g.components.keys().any(|&d| d != k) {
            return Err(Error::KindMismatch(alloc::format!("element is not homogeneous of degree {k}")));
        }
        Ok(g)
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn component(&self, k: i64) -> Tensor {
        self.components.get(&k).cloned().unwrap_or_else(|| Tensor::zero(self.layout.clone()))
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &Tensor)> {
        self.components.iter().map(|(k, t)| (*k, t))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn max_abs_degree(&self) -> i64 {
        self.components.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn to_tensor(&self) -> Tensor {
        self.components
            .values()
            .fold(Tensor::zero(self.layout.clone()), |acc, t| acc.add(t).expect("shared layout"))
    }

    /// Product computed component by component: degree `k` times degree `l`
    /// lands in degree `k + l`.
    pub fn mul(&self, other: &GradedOperator) -> Result<GradedOperator> {
        let mut components: BTreeMap<i64, Tensor> = BTreeMap::new();
        for (k, a) in &self.components {
            for (l, b) in &other.components {
                let p = a.mul(b)?;
                if p.is_zero() {
                    continue;
                }
                let slot = components.entry(k + l).or_insert_with(|| Tensor::zero(self.layout.clone()));
                *slot = slot.add(&p)?;
            }
        }
        components.retain(|_, t| !t.is_zero());
        Ok(Self { layout: self.layout.clone(), components })
    }

    /// `α_λ`: scales the degree-`k` component by `λ^k`.
    pub fn rephase(&self, lambda: C64) -> GradedOperator {
        let components = self.components.iter().map(|(k, t)| (*k, t.scale(lambda.powi(*k as i32)))).collect();
        Self { layout: self.layout.clone(), components }
    }

    pub fn adjoint(&self) -> GradedOperator {
        let components = self.components.iter().map(|(k, t)| (-k, t.adjoint())).collect();
        Self { layout: self.layout.clone(), components }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{toeplitz_power, Leg};

    fn t(k: i64) -> Tensor {
        Tensor::matrix(Layout::new(alloc::vec![Leg::fock_charged(8)]), toeplitz_power(8, k)).unwrap()
    }

    #[test]
    fn degrees_add_under_products() {
        let a = GradedOperator::from_tensor(&t(1).add(&t(-2)).unwrap());
        assert_eq!(a.degrees(), alloc::vec![-2, 1]);
        let b = GradedOperator::from_tensor(&t(1));
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_tensor(), t(1).add(&t(-2)).unwrap().mul(&t(1)).unwrap());
        assert!(ab.degrees().iter().all(|d| [-1, 2].contains(d)));
    }

    #[test]
    fn rephasing_scales_components() {
        let a = GradedOperator::from_tensor(&t(2).add(&t(0)).unwrap());
        let i = C64::new(0.0, 1.0);
        let r = a.rephase(i);
        assert_eq!(r.component(2), t(2).scale(C64::new(-1.0, 0.0)));
        assert_eq!(r.component(0), t(0));
        assert!(GradedOperator::homogeneous(&t(2), 1).is_err());
    }
}
