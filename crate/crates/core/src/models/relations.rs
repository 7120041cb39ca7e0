//! Defining relations of the generator sets, evaluated after interior
//! compression.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::element::Element;
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::models::maps::{map_apply, MapName};
use crate::models::spaces::{fock_tensor, Space, SpaceId};
use crate::models::QParameters;
use crate::C64;

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RelationDefect {
    pub name: String,
    pub relation: String,
    pub defect: f64,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RelationReport {
    pub space: String,
    pub generators: Vec<String>,
    pub relations: Vec<RelationDefect>,
}

impl RelationReport {
    pub fn max_defect(&self) -> f64 {
        self.relations.iter().fold(0.0, |m, r| m.max(r.defect))
    }
}

struct Checker<'a> {
    margin: usize,
    out: Vec<RelationDefect>,
    space: &'a Space,
}

impl Checker<'_> {
    fn gen(&self, name: &str) -> Result<Element> {
        let g = self.space.generator(name)?;
        Ok(Element::pair(g.a1.clone(), g.a2.clone()))
    }

    fn record(&mut self, name: &str, relation: &str, lhs: Result<Element>, rhs: &Element) -> Result<()> {
        let defect = lhs?.defect(rhs, self.margin)?;
        self.out.push(RelationDefect { name: name.to_string(), relation: relation.to_string(), defect });
        Ok(())
    }

    fn value(&mut self, name: &str, relation: &str, defect: f64) {
        self.out.push(RelationDefect { name: name.to_string(), relation: relation.to_string(), defect });
    }

    /// Compatibility of every generator and, when given, its degree.
    fn generators(&mut self, degree: Option<i64>) -> Result<()> {
        for (n, g) in &self.space.generators {
            let d = self.space.diagram.compatibility_defect(&g.a1, &g.a2)?;
            self.value(&format!("compatible_{n}"), &format!("π₁({n}) = π₂({n})"), d);
            if let Some(k) = degree {
                let degs = Element::pair(g.a1.clone(), g.a2.clone()).degrees_present();
                let ok = degs.iter().all(|&x| x == k);
                self.value(&format!("degree_{n}"), &format!("deg {n} = {k}"), if ok { 0.0 } else { 1.0 });
            }
        }
        Ok(())
    }
}

fn one() -> Element {
    Element::one()
}

fn mul3(a: &Element, b: &Element, c: &Element) -> Result<Element> {
    a.mul(b)?.mul(c)
}

/// Evaluates the defining relations of a built space.
pub fn check_relations(space: &Space, params: &QParameters) -> Result<RelationReport> {
    let mut c = Checker { margin: params.margin, out: Vec::new(), space };
    let q = C64::new(params.q, 0.0);
    match space.id {
        SpaceId::Suq2 => {
            let (a, g) = (c.gen("alpha")?, c.gen("gamma")?);
            let (as_, gs) = (a.adjoint(), g.adjoint());
            c.record("unitarity_1", "α*α + γ*γ = 1", as_.mul(&a)?.add(&gs.mul(&g)?), &one())?;
            c.record("unitarity_2", "αα* + q²γγ* = 1", a.mul(&as_)?.add(&g.mul(&gs)?.scale(q * q)), &one())?;
            c.record("gamma_normal", "γ*γ = γγ*", gs.mul(&g), &g.mul(&gs)?)?;
            c.record("alpha_gamma", "αγ = qγα", a.mul(&g), &g.mul(&a)?.scale(q))?;
            c.record("alpha_gamma_star", "αγ* = qγ*α", a.mul(&gs), &gs.mul(&a)?.scale(q))?;
        }
        SpaceId::S3h => {
            let (s1, s2) = (c.gen("s1")?, c.gen("s2")?);
            let (t1, t2) = (s1.adjoint(), s2.adjoint());
            c.record("isometry_1", "s₁*s₁ = 1", t1.mul(&s1), &one())?;
            c.record("isometry_2", "s₂*s₂ = 1", t2.mul(&s2), &one())?;
            c.record("commute", "s₁s₂ = s₂s₁", s1.mul(&s2), &s2.mul(&s1)?)?;
            c.record("star_commute", "s₁*s₂ = s₂s₁*", t1.mul(&s2), &s2.mul(&t1)?)?;
            let d1 = one().sub(&s1.mul(&t1)?)?;
            let d2 = one().sub(&s2.mul(&t2)?)?;
            c.record("defects", "(1−s₁s₁*)(1−s₂s₂*) = 0", d1.mul(&d2), &Element::zero())?;
        }
        SpaceId::B4q => {
            let (x, y) = (c.gen("x")?, c.gen("y")?);
            let (xs, ys) = (x.adjoint(), y.adjoint());
            c.record("x_isometry", "x*x = 1", xs.mul(&x), &one())?;
            c.record("y_defect", "y*y = 1 − xx*", ys.mul(&y), &one().sub(&x.mul(&xs)?)?)?;
            c.record("x_star_y", "x*y = 0", xs.mul(&y), &Element::zero())?;
            c.record("y_x", "yx = 0", y.mul(&x), &Element::zero())?;
            c.record("y_partial_isometry", "yy*y = y", mul3(&y, &ys, &y), &y)?;
            let n = params.fock_dim;
            let s = crate::element::toeplitz_power(n, 1);
            let iota = map_apply(MapName::Iota, &x, params);
            c.record("iota_x", "ι(x) = s⊗1", iota, &fock_tensor(params, &[s.clone(), ComplexMatrix::identity(n)]))?;
            let p0 = ComplexMatrix::unit(n, 0, 0);
            let iota_y = map_apply(MapName::Iota, &y, params);
            c.record("iota_y", "ι(y) = (1−ss*)⊗s", iota_y, &fock_tensor(params, &[p0, s]))?;
            let mut worst: f64 = 0.0;
            let lim = (n / 4).max(1);
            let idx = [(0, 0, 0, 0), (1, 0, 2, 1), (0, 2, 1, 1), (3, 1, 0, 2), (2, 3, 3, 0)];
            for &(i, j, k, l) in idx.iter().filter(|t| t.0 < lim && t.1 < lim && t.2 < lim && t.3 < lim) {
                let kk = fock_tensor(params, &[ComplexMatrix::unit(n, i, j), ComplexMatrix::unit(n, k, l)]);
                worst = worst.max(map_apply(MapName::Omega, &kk, params)?.compressed_norm(params.margin)?);
            }
            c.value("omega_kernel", "ω(k⊗k′) = 0 for corner matrix units", worst);
        }
        SpaceId::S5q => c.generators(Some(1))?,
        SpaceId::S5h => {
            let names = ["s1", "s2", "s3"];
            let gens = names.iter().map(|n| c.gen(n)).collect::<Result<Vec<_>>>()?;
            let mut defect_product = one();
            for (i, g) in gens.iter().enumerate() {
                let gs = g.adjoint();
                c.record(&format!("isometry_{}", i + 1), &format!("s{}*s{} = 1", i + 1, i + 1), gs.mul(g), &one())?;
                defect_product = defect_product.mul(&one().sub(&g.mul(&gs)?)?)?;
                for (j, h) in gens.iter().enumerate().skip(i + 1) {
                    let (a, b) = (i + 1, j + 1);
                    c.record(&format!("commute_{a}{b}"), &format!("s{a}s{b} = s{b}s{a}"), g.mul(h), &h.mul(g)?)?;
                    c.record(&format!("star_commute_{a}{b}"), &format!("s{a}*s{b} = s{b}s{a}*"), gs.mul(h), &h.mul(&gs)?)?;
                }
            }
            c.value("defects", "(1−s₁s₁*)(1−s₂s₂*)(1−s₃s₃*) = 0", defect_product.compressed_norm(params.margin)?);
            c.generators(Some(1))?;
        }
        SpaceId::Cp2q | SpaceId::Cp2h => {
            c.generators(Some(0))?;
            let names: Vec<String> = space.generators.iter().map(|(n, _)| n.clone()).collect();
            for n in &names {
                // "zizj*": its adjoint is "zjzi*".
                let (a, b) = n.trim_end_matches('*').split_at(2);
                let swapped = format!("{b}{a}*");
                let lhs = c.gen(n)?.adjoint();
                let rhs = c.gen(&swapped)?;
                c.record(&format!("adjoint_{n}"), &format!("({n})* = {swapped}"), Ok(lhs), &rhs)?;
            }
        }
    }
    Ok(RelationReport {
        space: space.id.as_str().to_string(),
        generators: space.generators.iter().map(|(n, _)| n.clone()).collect(),
        relations: c.out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::build_space;

    #[test]
    fn all_relations_hold_at_small_size() {
        for q in [0.3, 0.5, 0.9] {
            let p = QParameters::new(q, 16, 8, 2).unwrap();
            for id in [SpaceId::Suq2, SpaceId::S3h, SpaceId::B4q] {
                let r = check_relations(&build_space(id, &p).unwrap(), &p).unwrap();
                assert!(r.max_defect() <= 1e-12, "{id} q={q}: {:?}", r.relations);
            }
        }
    }

    #[test]
    fn five_spheres_and_planes_are_consistent() {
        let p = QParameters::new(0.5, 8, 4, 1).unwrap();
        for id in [SpaceId::S5q, SpaceId::S5h, SpaceId::Cp2q, SpaceId::Cp2h] {
            let s = build_space(id, &p).unwrap();
            let r = check_relations(&s, &p).unwrap();
            assert!(r.max_defect() <= s.diagram.tolerance, "{id}: {:?}", r.relations);
        }
    }
}
