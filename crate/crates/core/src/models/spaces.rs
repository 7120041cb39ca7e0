//! Pullback presentations of the quantum spaces and the diagram morphisms
//! between them.
//!
//! Node layouts (`F` a Fock leg of size `N`, `C` a circle leg, `•` marks the
//! legs carrying the circle action):
//!
//! | space | left | right | base |
//! |-------|------|-------|------|
//! | suq2  | `C•` | `F⊗C•` | `C⊗C•` |
//! | s3h   | `C•⊗F•` | `F⊗C•` | `C⊗C•` |
//! | b4q   | suq2 | `F•⊗F•` | s3h |
//! | s5q   | suq2 | `F⊗F⊗C•` | suq2 ⊗ `C•` |
//! | s5h   | s3h ⊗ `F•` | `F⊗F⊗C•` | s3h ⊗ `C•` |
//! | cp2q  | suq2 (fixed points) | `F⊗F` | suq2 |
//! | cp2h  | s3h ⊗ `F•` (fixed points) | `F⊗F` | s3h |

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::element::{toeplitz_power, Element, Layout, Leg, Tensor};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::models::{q_generators, QParameters};
use crate::pullback::{
    AlgebraNode, DiagramMorphism, GeneratorSet, LiftRule, Morphism, NodeKind, PullbackDiagram, PullbackElement,
    Registry,
};

/// Default absolute tolerance for identities with integer entries.
pub const EXACT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceId {
    Suq2,
    S3h,
    B4q,
    S5q,
    S5h,
    Cp2q,
    Cp2h,
}

impl SpaceId {
    pub const ALL: [SpaceId; 7] =
        [SpaceId::Suq2, SpaceId::S3h, SpaceId::B4q, SpaceId::S5q, SpaceId::S5h, SpaceId::Cp2q, SpaceId::Cp2h];

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceId::Suq2 => "suq2",
            SpaceId::S3h => "s3h",
            SpaceId::B4q => "b4q",
            SpaceId::S5q => "s5q",
            SpaceId::S5h => "s5h",
            SpaceId::Cp2q => "cp2q",
            SpaceId::Cp2h => "cp2h",
        }
    }

    /// Spaces whose diagrams appear as nodes of this one.
    pub fn dependencies(self) -> &'static [SpaceId] {
        match self {
            SpaceId::Suq2 | SpaceId::S3h => &[],
            SpaceId::B4q => &[SpaceId::Suq2, SpaceId::S3h],
            SpaceId::S5q | SpaceId::Cp2q => &[SpaceId::Suq2],
            SpaceId::S5h | SpaceId::Cp2h => &[SpaceId::S3h],
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpaceId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownSpace(s.to_string()))
    }
}

/// A built diagram together with its named generators.
#[derive(Clone, Debug)]
pub struct Space {
    pub id: SpaceId,
    pub diagram: PullbackDiagram,
    pub generators: GeneratorSet,
}

impl Space {
    pub fn generator(&self, name: &str) -> Result<&PullbackElement> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownSpace(format!("{}/{name}", self.id)))
    }
}

/// One tensor factor of an elementary tensor.
enum F {
    M(ComplexMatrix),
    U(i64),
}

struct Kit {
    n: usize,
    s: ComplexMatrix,
    p0: ComplexMatrix,
    ss: ComplexMatrix,
    one: ComplexMatrix,
    alpha: ComplexMatrix,
    gamma: ComplexMatrix,
}

impl Kit {
    fn new(p: &QParameters) -> Self {
        let n = p.fock_dim;
        let s = toeplitz_power(n, 1);
        let ss = s.matmul(&s.adjoint());
        let (alpha, gamma) = q_generators(p);
        Self { n, p0: ComplexMatrix::unit(n, 0, 0), ss, one: ComplexMatrix::identity(n), s, alpha, gamma }
    }

    fn f(&self) -> Leg {
        Leg::fock(self.n)
    }

    fn fc(&self) -> Leg {
        Leg::fock_charged(self.n)
    }
}

/// Elementary tensor `f₁ ⊗ f₂ ⊗ …` on `legs`.
fn elementary(legs: &[Leg], factors: Vec<F>) -> Element {
    let mut key = Vec::new();
    let mut m: Option<ComplexMatrix> = None;
    for f in factors {
        match f {
            F::U(k) => key.push(k),
            F::M(a) => {
                m = Some(match m {
                    None => a,
                    Some(acc) => acc.tensor(&a),
                })
            }
        }
    }
    let m = m.unwrap_or_else(|| ComplexMatrix::identity(1));
    Element::Tensor(Tensor::term(Layout::new(legs.to_vec()), key, m).expect("factors match legs"))
}

fn sum(xs: &[Element]) -> Element {
    xs.iter().skip(1).fold(xs[0].clone(), |acc, x| acc.add(x).expect("same node"))
}

fn tensor_node(legs: Vec<Leg>) -> NodeKind {
    NodeKind::Tensor(Layout::new(legs))
}

fn pair_node(of: &str, left: NodeKind, right: NodeKind) -> NodeKind {
    NodeKind::Pair { of: of.to_string(), left: Box::new(left), right: Box::new(right) }
}

fn diagram(
    id: SpaceId,
    p: &QParameters,
    nodes: (AlgebraNode, AlgebraNode, AlgebraNode),
    pi1: Morphism,
    pi2: Morphism,
    lift_rule: LiftRule,
) -> PullbackDiagram {
    PullbackDiagram {
        id: id.as_str().to_string(),
        left: nodes.0,
        right: nodes.1,
        base: nodes.2,
        pi1,
        pi2,
        pi2_surjective: true,
        lift_rule,
        policy: p.lenient_policy(),
        tolerance: p.compatibility_tolerance(EXACT_TOLERANCE),
    }
}

/// `ω : T⊗T → C(S³_H)`, `t⊗t′ ↦ (σ(t)⊗t′, t₍₀₎⊗t₍₁₎σ(t′))`; extra trailing
/// legs are carried along.
pub fn omega() -> Morphism {
    Morphism::named(
        "omega",
        Morphism::fanout(
            Morphism::Symbol(0),
            Morphism::chain(vec![Morphism::Symbol(1), Morphism::CoactionSplit(0), Morphism::Merge { into: 1, from: 2 }]),
        ),
    )
}

/// `ϖ : C(B⁴_q) → C(SU_q(2))`, `t⊗t′ ↦ (σ(t)σ(t′), t₍₀₎⊗t₍₁₎σ(t′))`.
pub fn varpi() -> Morphism {
    Morphism::named(
        "varpi",
        Morphism::fanout(
            Morphism::chain(vec![Morphism::Symbol(0), Morphism::Symbol(1), Morphism::Merge { into: 0, from: 1 }]),
            Morphism::chain(vec![Morphism::Symbol(1), Morphism::CoactionSplit(0), Morphism::Merge { into: 1, from: 2 }]),
        ),
    )
}

/// `ν : C(SU_q(2)) → C(S³_H)`, `(v, t⊗v′) ↦ (v⊗1_T, t⊗v′)`.
pub fn nu(n: usize) -> Morphism {
    Morphism::named("nu", Morphism::componentwise(Morphism::AppendFock { dim: n, charged: true }, Morphism::Identity))
}

/// `ν ⊗ 1_T` on the left node of the S⁵_q diagram.
pub(crate) fn nu_then_unit(n: usize) -> Morphism {
    let app = Morphism::AppendFock { dim: n, charged: true };
    Morphism::componentwise(Morphism::chain(vec![app.clone(), app.clone()]), app)
}

/// `κ∘(id⊗σ)` for `C(S³_H)•⊗T•`, optionally restricted to fixed points.
fn kappa_sigma(fixed: bool) -> Morphism {
    let leg = |others: Vec<usize>| {
        let mut steps = vec![Morphism::Symbol(2), Morphism::Kappa { h: 2, others, inverse: false }];
        if fixed {
            steps.push(Morphism::DropCircle(2));
        }
        Morphism::chain(steps)
    };
    Morphism::named(if fixed { "kappa_sigma_fixed" } else { "kappa_sigma" }, Morphism::componentwise(leg(vec![0, 1]), leg(vec![1])))
}

fn build_suq2(p: &QParameters, k: &Kit) -> Result<Space> {
    let (f, c, cc) = (k.f(), Leg::circle(), Leg::circle_charged());
    let d = diagram(
        SpaceId::Suq2,
        p,
        (
            AlgebraNode::new("C(S1)", tensor_node(vec![cc])),
            AlgebraNode::new("T⊗C(S1)", tensor_node(vec![f, cc])),
            AlgebraNode::new("C(S1)⊗C(S1)", tensor_node(vec![c, cc])),
        ),
        Morphism::Coproduct(0),
        Morphism::Symbol(0),
        LiftRule::ToeplitzFirst { dim: k.n },
    );
    let alpha = d.make_element(elementary(&[cc], vec![F::U(-1)]), elementary(&[f, cc], vec![F::M(k.alpha.clone()), F::U(-1)]))?;
    let gamma = d.make_element(Element::zero(), elementary(&[f, cc], vec![F::M(k.gamma.clone()), F::U(-1)]))?;
    Ok(Space { id: SpaceId::Suq2, diagram: d, generators: vec![("alpha".into(), alpha), ("gamma".into(), gamma)] })
}

fn build_s3h(p: &QParameters, k: &Kit) -> Result<Space> {
    let (f, fc, c, cc) = (k.f(), k.fc(), Leg::circle(), Leg::circle_charged());
    let d = diagram(
        SpaceId::S3h,
        p,
        (
            AlgebraNode::new("C(S1)⊗T", tensor_node(vec![cc, fc])),
            AlgebraNode::new("T⊗C(S1)", tensor_node(vec![f, cc])),
            AlgebraNode::new("C(S1)⊗C(S1)", tensor_node(vec![c, cc])),
        ),
        Morphism::chain(vec![Morphism::Symbol(1), Morphism::Kappa { h: 1, others: vec![0], inverse: false }]),
        Morphism::Symbol(0),
        LiftRule::ToeplitzFirst { dim: k.n },
    );
    let s1 = d.make_element(
        elementary(&[cc, fc], vec![F::U(1), F::M(k.one.clone())]),
        elementary(&[f, cc], vec![F::M(k.s.clone()), F::U(1)]),
    )?;
    let s2 = d.make_element(
        elementary(&[cc, fc], vec![F::U(0), F::M(k.s.clone())]),
        elementary(&[f, cc], vec![F::M(k.one.clone()), F::U(1)]),
    )?;
    Ok(Space { id: SpaceId::S3h, diagram: d, generators: vec![("s1".into(), s1), ("s2".into(), s2)] })
}

fn suq2_kind(k: &Kit, extra: &[Leg]) -> NodeKind {
    let mut l = vec![Leg::circle_charged()];
    l.extend_from_slice(extra);
    let mut r = vec![k.f(), Leg::circle_charged()];
    r.extend_from_slice(extra);
    pair_node("suq2", tensor_node(l), tensor_node(r))
}

fn s3h_kind(k: &Kit, extra: &[Leg]) -> NodeKind {
    let mut l = vec![Leg::circle_charged(), k.fc()];
    l.extend_from_slice(extra);
    let mut r = vec![k.f(), Leg::circle_charged()];
    r.extend_from_slice(extra);
    pair_node("s3h", tensor_node(l), tensor_node(r))
}

fn build_b4q(p: &QParameters, k: &Kit) -> Result<Space> {
    let (f, fc, cc) = (k.f(), k.fc(), Leg::circle_charged());
    let d = diagram(
        SpaceId::B4q,
        p,
        (
            AlgebraNode::new("C(SUq(2))", suq2_kind(k, &[])),
            AlgebraNode::new("T⊗T", tensor_node(vec![fc, fc])),
            AlgebraNode::new("C(S3H)", s3h_kind(k, &[])),
        ),
        nu(k.n),
        omega(),
        LiftRule::ThroughOmega { dim: k.n },
    );
    let x = d.make_element(
        Element::pair(elementary(&[cc], vec![F::U(1)]), elementary(&[f, cc], vec![F::M(k.s.clone()), F::U(1)])),
        elementary(&[fc, fc], vec![F::M(k.s.clone()), F::M(k.one.clone())]),
    )?;
    let y = d.make_element(
        Element::pair(Element::zero(), elementary(&[f, cc], vec![F::M(k.p0.clone()), F::U(1)])),
        elementary(&[fc, fc], vec![F::M(k.p0.clone()), F::M(k.s.clone())]),
    )?;
    Ok(Space { id: SpaceId::B4q, diagram: d, generators: vec![("x".into(), x), ("y".into(), y)] })
}

fn s5q_diagram(p: &QParameters, k: &Kit) -> PullbackDiagram {
    let (f, cc) = (k.f(), Leg::circle_charged());
    diagram(
        SpaceId::S5q,
        p,
        (
            AlgebraNode::new("C(SUq(2))", suq2_kind(k, &[])),
            AlgebraNode::new("C(B4q)⊗C(S1)", tensor_node(vec![f, f, cc])),
            AlgebraNode::new("C(SUq(2))⊗C(S1)", suq2_kind(k, &[cc])),
        ),
        Morphism::named("delta_R", Morphism::componentwise(Morphism::Coaction, Morphism::Coaction)),
        varpi(),
        LiftRule::ThroughVarpi { dim: k.n },
    )
}

/// Degree-one generators `z₁, z₂, z₃` of the S⁵_q pullback, built from
/// `s⊗1`, `(1−ss*)⊗s` and `ρ(γ)⊗s` on the B⁴_q leg.
fn s5q_generators(d: &PullbackDiagram, k: &Kit) -> Result<GeneratorSet> {
    let (f, cc) = (k.f(), Leg::circle_charged());
    let left = |a: Option<(&ComplexMatrix, i64)>, t: &ComplexMatrix| {
        let v = match a {
            Some((_, deg)) => elementary(&[cc], vec![F::U(deg)]),
            None => Element::zero(),
        };
        Element::pair(v, elementary(&[f, cc], vec![F::M(t.clone()), F::U(1)]))
    };
    let right = |a: &ComplexMatrix, b: &ComplexMatrix| elementary(&[f, f, cc], vec![F::M(a.clone()), F::M(b.clone()), F::U(1)]);
    let z1 = d.make_element(left(Some((&k.s, 1)), &k.s), right(&k.s, &k.one))?;
    let z2 = d.make_element(left(None, &k.p0), right(&k.p0, &k.s))?;
    let z3 = d.make_element(left(None, &k.gamma), right(&k.gamma, &k.s))?;
    Ok(vec![("z1".into(), z1), ("z2".into(), z2), ("z3".into(), z3)])
}

fn build_s5q(p: &QParameters, k: &Kit) -> Result<Space> {
    let d = s5q_diagram(p, k);
    let generators = s5q_generators(&d, k)?;
    Ok(Space { id: SpaceId::S5q, diagram: d, generators })
}

fn s5h_diagram(p: &QParameters, k: &Kit) -> PullbackDiagram {
    let (f, fc, cc) = (k.f(), k.fc(), Leg::circle_charged());
    diagram(
        SpaceId::S5h,
        p,
        (
            AlgebraNode::new("C(S3H)⊗T", s3h_kind(k, &[fc])),
            AlgebraNode::new("T⊗T⊗C(S1)", tensor_node(vec![f, f, cc])),
            AlgebraNode::new("C(S3H)⊗C(S1)", s3h_kind(k, &[cc])),
        ),
        kappa_sigma(false),
        omega(),
        LiftRule::ThroughOmega { dim: k.n },
    )
}

fn s5h_generators(d: &PullbackDiagram, k: &Kit) -> Result<GeneratorSet> {
    let (f, fc, cc) = (k.f(), k.fc(), Leg::circle_charged());
    let m = |a: &ComplexMatrix| F::M(a.clone());
    let (one, s) = (&k.one, &k.s);
    let l1 = [cc, fc, fc];
    let l2 = [f, cc, fc];
    let r = [f, f, cc];
    let s1 = d.make_element(
        Element::pair(elementary(&l1, vec![F::U(1), m(one), m(one)]), elementary(&l2, vec![m(s), F::U(1), m(one)])),
        elementary(&r, vec![m(s), m(one), F::U(1)]),
    )?;
    let s2 = d.make_element(
        Element::pair(elementary(&l1, vec![F::U(0), m(s), m(one)]), elementary(&l2, vec![m(one), F::U(1), m(one)])),
        elementary(&r, vec![m(one), m(s), F::U(1)]),
    )?;
    let s3 = d.make_element(
        Element::pair(elementary(&l1, vec![F::U(0), m(one), m(s)]), elementary(&l2, vec![m(one), F::U(0), m(s)])),
        elementary(&r, vec![m(one), m(one), F::U(1)]),
    )?;
    Ok(vec![("s1".into(), s1), ("s2".into(), s2), ("s3".into(), s3)])
}

fn build_s5h(p: &QParameters, k: &Kit) -> Result<Space> {
    let d = s5h_diagram(p, k);
    let generators = s5h_generators(&d, k)?;
    Ok(Space { id: SpaceId::S5h, diagram: d, generators })
}

/// Products `z_i z_j*` of degree-one generators, moved to the fixed-point
/// diagram by dropping the (now degree-zero) circle leg of the right node.
fn fixed_products(target: &PullbackDiagram, source: &PullbackDiagram, gens: &GeneratorSet) -> Result<GeneratorSet> {
    let mut out = Vec::new();
    for (ni, zi) in gens {
        for (nj, zj) in gens {
            let prod = source.mul(zi, &source.adjoint(zj)?)?;
            let a2 = Morphism::DropCircle(2).apply(&prod.a2, &source.policy)?;
            out.push((format!("{ni}{nj}*"), target.make_element(prod.a1, a2)?));
        }
    }
    Ok(out)
}

fn build_cp2q(p: &QParameters, k: &Kit) -> Result<Space> {
    let f = k.f();
    let d = diagram(
        SpaceId::Cp2q,
        p,
        (
            AlgebraNode::fixed("C(S2q)", suq2_kind(k, &[])),
            AlgebraNode::new("C(B4q)", tensor_node(vec![f, f])),
            AlgebraNode::new("C(SUq(2))", suq2_kind(k, &[])),
        ),
        Morphism::named("inclusion", Morphism::Identity),
        varpi(),
        LiftRule::ThroughVarpi { dim: k.n },
    );
    let s5 = s5q_diagram(p, k);
    let gens = s5q_generators(&s5, k)?;
    let generators = fixed_products(&d, &s5, &gens)?;
    Ok(Space { id: SpaceId::Cp2q, diagram: d, generators })
}

fn build_cp2h(p: &QParameters, k: &Kit) -> Result<Space> {
    let (f, fc) = (k.f(), k.fc());
    let d = diagram(
        SpaceId::Cp2h,
        p,
        (
            AlgebraNode::fixed("(C(S3H)⊗T)^U(1)", s3h_kind(k, &[fc])),
            AlgebraNode::new("T⊗T", tensor_node(vec![f, f])),
            AlgebraNode::new("C(S3H)", s3h_kind(k, &[])),
        ),
        kappa_sigma(true),
        omega(),
        LiftRule::ThroughOmega { dim: k.n },
    );
    let s5 = s5h_diagram(p, k);
    let gens = s5h_generators(&s5, k)?;
    let generators = fixed_products(&d, &s5, &gens)?;
    Ok(Space { id: SpaceId::Cp2h, diagram: d, generators })
}

/// Builds one diagram with its generators.
pub fn build_space(id: SpaceId, params: &QParameters) -> Result<Space> {
    params.validate()?;
    let k = Kit::new(params);
    match id {
        SpaceId::Suq2 => build_suq2(params, &k),
        SpaceId::S3h => build_s3h(params, &k),
        SpaceId::B4q => build_b4q(params, &k),
        SpaceId::S5q => build_s5q(params, &k),
        SpaceId::S5h => build_s5h(params, &k),
        SpaceId::Cp2q => build_cp2q(params, &k),
        SpaceId::Cp2h => build_cp2h(params, &k),
    }
}

/// Registers a space and, first, every space it is built from.
pub fn register_space(registry: &mut Registry, id: SpaceId, params: &QParameters) -> Result<()> {
    for &dep in id.dependencies() {
        register_space(registry, dep, params)?;
    }
    if !registry.contains(id.as_str()) {
        let s = build_space(id, params)?;
        registry.register(s.diagram, s.generators);
    }
    Ok(())
}

/// `ν` between the SU_q(2) and S³_H diagrams, `f` between the 5-spheres and
/// `f^{U(1)}` between the projective planes.
pub fn morphisms(params: &QParameters) -> Vec<DiagramMorphism> {
    let n = params.fock_dim;
    let dm = |id: &str, source: SpaceId, target: SpaceId, phi1: Morphism, phi12: Morphism| DiagramMorphism {
        id: id.to_string(),
        source: source.as_str().to_string(),
        target: target.as_str().to_string(),
        phi1,
        phi2: Morphism::named("iota", Morphism::Identity),
        phi12,
    };
    vec![
        DiagramMorphism {
            id: "nu".into(),
            source: SpaceId::Suq2.as_str().into(),
            target: SpaceId::S3h.as_str().into(),
            phi1: Morphism::AppendFock { dim: n, charged: true },
            phi2: Morphism::Identity,
            phi12: Morphism::Identity,
        },
        dm(
            "f",
            SpaceId::S5q,
            SpaceId::S5h,
            nu_then_unit(n),
            Morphism::componentwise(Morphism::InsertFock { at: 1, dim: n, charged: true }, Morphism::Identity),
        ),
        dm("f_u1", SpaceId::Cp2q, SpaceId::Cp2h, nu_then_unit(n), nu(n)),
    ]
}

/// Every space and morphism.
pub fn full_registry(params: &QParameters) -> Result<Registry> {
    let mut r = Registry::new();
    for id in SpaceId::ALL {
        register_space(&mut r, id, params)?;
    }
    for m in morphisms(params) {
        r.register_morphism(m);
    }
    Ok(r)
}

/// `ss*⊗1 + (1−ss*)⊗u*` on `T⊗C(S¹)•`.
fn w_second(k: &Kit) -> Element {
    let (f, cc) = (k.f(), Leg::circle_charged());
    sum(&[
        elementary(&[f, cc], vec![F::M(k.ss.clone()), F::U(0)]),
        elementary(&[f, cc], vec![F::M(k.p0.clone()), F::U(-1)]),
    ])
}

/// `w̃ = (1, ss*⊗1 + (1−ss*)⊗u*)` in C(SU_q(2)).
pub fn w_tilde(params: &QParameters) -> Result<PullbackElement> {
    let k = Kit::new(params);
    build_suq2(params, &k)?.diagram.make_element(Element::one(), w_second(&k))
}

/// `w = ν(w̃)` in C(S³_H).
pub fn w(params: &QParameters) -> Result<PullbackElement> {
    let k = Kit::new(params);
    build_s3h(params, &k)?.diagram.make_element(Element::one(), w_second(&k))
}

/// `c = ss*⊗1 + (1−ss*)⊗s*` in C(B⁴_q), the lift of `w̃` through `ϖ`.
pub fn w_lift(params: &QParameters) -> Element {
    let k = Kit::new(params);
    let f = k.f();
    sum(&[
        elementary(&[f, f], vec![F::M(k.ss.clone()), F::M(k.one.clone())]),
        elementary(&[f, f], vec![F::M(k.p0.clone()), F::M(k.s.adjoint())]),
    ])
}

/// `(1−ss*)⊗(1−ss*)` on `T⊗T`.
pub fn corner_projection(params: &QParameters) -> Element {
    let k = Kit::new(params);
    elementary(&[k.f(), k.f()], vec![F::M(k.p0.clone()), F::M(k.p0.clone())])
}

/// Elementary tensor of Fock matrices on `T^{⊗n}`.
pub fn fock_tensor(params: &QParameters, factors: &[ComplexMatrix]) -> Element {
    let legs: Vec<Leg> = factors.iter().map(|_| Leg::fock(params.fock_dim)).collect();
    elementary(&legs, factors.iter().cloned().map(F::M).collect())
}

/// Names of the generators as strings, for manifests.
pub fn generator_names(gens: &GeneratorSet) -> Vec<String> {
    gens.iter().map(|(n, _)| n.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> QParameters {
        QParameters::new(0.5, 16, 8, 2).unwrap()
    }

    #[test]
    fn every_space_builds_and_registers() {
        let p = params();
        let r = full_registry(&p).unwrap();
        assert_eq!(r.diagrams().count(), 7);
        assert_eq!(r.morphisms().count(), 3);
        assert!(r.generator("b4q", "y").is_ok());
        assert!(matches!("s7".parse::<SpaceId>(), Err(Error::UnknownSpace(_))));
    }

    #[test]
    fn alpha_projects_to_u_star_on_both_legs() {
        let s = build_space(SpaceId::Suq2, &params()).unwrap();
        let a = s.generator("alpha").unwrap();
        let left = s.diagram.project1(&a.a1).unwrap();
        let expect = elementary(&[Leg::circle(), Leg::circle_charged()], vec![F::U(-1), F::U(-1)]);
        assert!(left.defect(&expect, 2).unwrap() == 0.0);
    }

    #[test]
    fn lift_of_w_tilde_is_c() {
        let p = params();
        let s = build_space(SpaceId::Cp2q, &p).unwrap();
        let wt = w_tilde(&p).unwrap().to_element();
        assert_eq!(s.diagram.lift(&wt).unwrap(), w_lift(&p));
        assert_eq!(s.diagram.lift_defect(&wt).unwrap(), 0.0);
    }

    #[test]
    fn morphisms_commute_with_projections() {
        let p = params();
        let r = full_registry(&p).unwrap();
        for m in r.morphisms() {
            let src = r.diagram(&m.source).unwrap();
            let tgt = r.diagram(&m.target).unwrap();
            let gens: Vec<_> = r.generators(&m.source).unwrap().iter().map(|(_, g)| g.clone()).collect();
            assert!(m.square_defect(src, tgt, &gens).unwrap() <= src.tolerance, "{}", m.id);
            for g in &gens {
                m.induced_map(src, tgt, g).unwrap();
            }
        }
    }
}
