//! Pullback algebras `A₁ ×_{A₁₂} A₂`, their elements, morphisms between
//! diagrams and the registry that ties them together.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::element::{Element, Layout, SymbolPolicy, Tensor};
use crate::error::{Error, Result};

mod registry;

pub use registry::{DiagramManifest, GeneratorSet, Manifest, MorphismManifest, NodeManifest, Registry};

/// Shape of the elements of a node.
#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    /// Tensor product of Fock and circle legs.
    Tensor(Layout),
    /// Elements of another pullback (possibly with extra legs attached).
    Pair { of: String, left: Box<NodeKind>, right: Box<NodeKind> },
}

impl NodeKind {
    /// `matrix`, `laurent`, `graded` or `pair-of(..)`.
    pub fn kind_name(&self) -> String {
        match self {
            NodeKind::Tensor(l) => {
                let fock = l.legs.iter().any(|g| g.is_fock());
                let circ = l.legs.iter().any(|g| !g.is_fock());
                let name = match (fock, circ) {
                    (true, false) => "matrix",
                    (false, true) => "laurent",
                    _ => "graded",
                };
                format!("{name}[{}]", l.describe())
            }
            NodeKind::Pair { of, left, right } => {
                format!("pair-of({of}: {}, {})", left.kind_name(), right.kind_name())
            }
        }
    }

    pub fn admits(&self, x: &Element) -> bool {
        match (self, x) {
            (_, Element::Scalar(_)) => true,
            (NodeKind::Tensor(l), Element::Tensor(t)) => l.same_shape(t.layout()),
            (NodeKind::Pair { left, right, .. }, Element::Pair(a, b)) => left.admits(a) && right.admits(b),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraNode {
    pub id: String,
    pub kind: NodeKind,
    /// Only degree-zero elements belong to the node.
    pub fixed_points: bool,
}

impl AlgebraNode {
    pub fn new(id: &str, kind: NodeKind) -> Self {
        Self { id: id.to_string(), kind, fixed_points: false }
    }

    pub fn fixed(id: &str, kind: NodeKind) -> Self {
        Self { id: id.to_string(), kind, fixed_points: true }
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if !self.kind.admits(x) {
            return Err(Error::KindMismatch(format!("element does not belong to node {}", self.id)));
        }
        if self.fixed_points && x.degrees_present().iter().any(|&d| d != 0) {
            return Err(Error::NotInvariant);
        }
        Ok(())
    }
}

/// Composable description of a *-homomorphism between nodes, evaluated leg
/// by leg. Leg indices are absolute positions in the input layout, so
/// trailing passive legs are carried along unchanged.
#[derive(Clone, Debug, PartialEq)]
pub enum Morphism {
    Identity,
    /// Symbol map on a Fock leg.
    Symbol(usize),
    /// `t ↦ t₍₀₎ ⊗ t₍₁₎` on a Fock leg.
    CoactionSplit(usize),
    /// Right coaction of the whole element (δ_R).
    Coaction,
    /// Multiplication of two circle legs.
    Merge { into: usize, from: usize },
    /// Comultiplication of a circle leg.
    Coproduct(usize),
    /// Gauge shift of circle leg `h` by the degree on `others`.
    Kappa { h: usize, others: Vec<usize>, inverse: bool },
    /// `⊗ 1_T`.
    AppendFock { dim: usize, charged: bool },
    /// `⊗ 1` on a new circle leg.
    AppendCircle { charged: bool },
    /// `1_T` inserted as a new Fock leg at position `at`.
    InsertFock { at: usize, dim: usize, charged: bool },
    /// Fixed-point identification of a degree-zero circle leg.
    DropCircle(usize),
    /// Evaluation of a circle leg at `z = 1`.
    EvalCircle(usize),
    /// Toeplitz quantization `u^k ↦ T(u^k)` of a circle leg.
    Toeplitz { leg: usize, dim: usize },
    First,
    Second,
    Componentwise(Box<Morphism>, Box<Morphism>),
    /// `x ↦ (f(x), g(x))`.
    Fanout(Box<Morphism>, Box<Morphism>),
    /// Applied left to right.
    Compose(Vec<Morphism>),
    /// A named map, for manifests.
    Named(String, Box<Morphism>),
}

impl Morphism {
    pub fn named(name: &str, m: Morphism) -> Self {
        Morphism::Named(name.to_string(), Box::new(m))
    }

    pub fn chain(steps: Vec<Morphism>) -> Self {
        Morphism::Compose(steps)
    }

    pub fn componentwise(a: Morphism, b: Morphism) -> Self {
        Morphism::Componentwise(Box::new(a), Box::new(b))
    }

    pub fn fanout(a: Morphism, b: Morphism) -> Self {
        Morphism::Fanout(Box::new(a), Box::new(b))
    }

    pub fn apply(&self, x: &Element, policy: &SymbolPolicy) -> Result<Element> {
        use Morphism::*;
        match self {
            Identity => Ok(x.clone()),
            Symbol(l) => x.map_tensor(|t| t.symbol_leg(*l, policy)),
            CoactionSplit(l) => x.map_tensor(|t| t.coaction_split(*l)),
            Coaction => x.map_tensor(|t| Ok(t.coaction_total())),
            Merge { into, from } => x.map_tensor(|t| t.merge_circles(*into, *from)),
            Coproduct(l) => x.map_tensor(|t| t.coproduct(*l)),
            Kappa { h, others, inverse } => x.map_tensor(|t| t.kappa(*h, others, *inverse)),
            AppendFock { dim, charged } => x.map_tensor(|t| Ok(t.append_fock(*dim, *charged))),
            AppendCircle { charged } => x.map_tensor(|t| Ok(t.append_circle(*charged))),
            InsertFock { at, dim, charged } => x.map_tensor(|t| {
                let n = t.layout().len();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.insert(*at, n);
                t.append_fock(*dim, *charged).permute_legs(&perm)
            }),
            DropCircle(l) => x.map_tensor(|t| t.drop_circle(*l)),
            EvalCircle(l) => x.map_tensor(|t| eval_circle(t, *l)),
            Toeplitz { leg, dim } => x.map_tensor(|t| t.toeplitz_leg(*leg, *dim)),
            First => x.first().cloned(),
            Second => x.second().cloned(),
            Componentwise(f, g) => match x {
                Element::Pair(a, b) => Ok(Element::pair(f.apply(a, policy)?, g.apply(b, policy)?)),
                Element::Scalar(_) => Ok(x.clone()),
                Element::Tensor(_) => Err(Error::KindMismatch("componentwise map on a tensor".into())),
            },
            Fanout(f, g) => {
                let a = f.apply(x, policy)?;
                let b = g.apply(x, policy)?;
                if let (Element::Scalar(p), Element::Scalar(q)) = (&a, &b) {
                    if p == q {
                        return Ok(a);
                    }
                }
                Ok(Element::pair(a, b))
            }
            Compose(steps) => steps.iter().try_fold(x.clone(), |acc, m| m.apply(&acc, policy)),
            Named(_, m) => m.apply(x, policy),
        }
    }

    /// Human-readable descriptor.
    pub fn describe(&self) -> String {
        use Morphism::*;
        match self {
            Identity => "id".into(),
            Symbol(l) => format!("sigma@{l}"),
            CoactionSplit(l) => format!("split@{l}"),
            Coaction => "delta_R".into(),
            Merge { into, from } => format!("merge({into}<-{from})"),
            Coproduct(l) => format!("Delta@{l}"),
            Kappa { h, others, inverse } => {
                format!("kappa{}@{h}{:?}", if *inverse { "^-1" } else { "" }, others)
            }
            AppendFock { .. } => "⊗1_T".into(),
            AppendCircle { .. } => "⊗1".into(),
            InsertFock { at, .. } => format!("1_T@{at}"),
            DropCircle(l) => format!("fix@{l}"),
            EvalCircle(l) => format!("ev1@{l}"),
            Toeplitz { leg, .. } => format!("T@{leg}"),
            First => "pr1".into(),
            Second => "pr2".into(),
            Componentwise(a, b) => format!("({} × {})", a.describe(), b.describe()),
            Fanout(a, b) => format!("<{}, {}>", a.describe(), b.describe()),
            Compose(v) => {
                let parts: Vec<String> = v.iter().rev().map(|m| m.describe()).collect();
                parts.join(" ∘ ")
            }
            Named(n, _) => n.clone(),
        }
    }
}

fn eval_circle(t: &Tensor, leg: usize) -> Result<Tensor> {
    // Summing over the leg's degrees is evaluation at z = 1.
    let slot = t.layout().slot(leg);
    if t.layout().legs.get(leg).map_or(true, |l| l.is_fock()) {
        return Err(Error::KindMismatch(format!("leg {leg} is not a circle leg")));
    }
    let mut legs = t.layout().legs.clone();
    legs.remove(leg);
    let mut out = Tensor::zero(Layout::new(legs));
    for (k, m) in t.terms() {
        let mut k = k.clone();
        k.remove(slot);
        out.add_term(k, m.clone());
    }
    Ok(out)
}

/// Explicit, per-diagram recipe producing right-node preimages of base
/// elements.
#[derive(Clone, Debug, PartialEq)]
pub enum LiftRule {
    None,
    /// `u^k ⊗ v ↦ T(u^k) ⊗ v` on the first leg of a tensor base.
    ToeplitzFirst { dim: usize },
    /// Through `ϖ` (and `ϖ ⊗ id`): `(a₁, Σ A_m ⊗ u^m) ↦ Σ_{m,k} diag_k(A_m) ⊗ T(u^{m−k})`.
    ThroughVarpi { dim: usize },
    /// Through `ω` (and `ω ⊗ id`): the `ϖ`-lift of the second component plus
    /// `Σ_k T(u^k) ⊗ (a_k − T(σ(a_k)))` from the first.
    ThroughOmega { dim: usize },
}

impl LiftRule {
    pub fn describe(&self) -> &'static str {
        match self {
            LiftRule::None => "none",
            LiftRule::ToeplitzFirst { .. } => "toeplitz-first-leg",
            LiftRule::ThroughVarpi { .. } => "through-varpi",
            LiftRule::ThroughOmega { .. } => "through-omega",
        }
    }

    fn varpi_second(dim: usize) -> Morphism {
        Morphism::chain(vec![
            Morphism::CoactionSplit(0),
            Morphism::Kappa { h: 2, others: vec![1], inverse: true },
            Morphism::EvalCircle(1),
            Morphism::Toeplitz { leg: 1, dim },
        ])
    }

    pub fn apply(&self, b: &Element, policy: &SymbolPolicy) -> Result<Element> {
        match self {
            LiftRule::None => Err(Error::NoLiftRule("unregistered".into())),
            LiftRule::ToeplitzFirst { dim } => Morphism::Toeplitz { leg: 0, dim: *dim }.apply(b, policy),
            LiftRule::ThroughVarpi { dim } => match b {
                Element::Scalar(_) => Ok(b.clone()),
                Element::Pair(_, a2) => Self::varpi_second(*dim).apply(a2, policy),
                Element::Tensor(_) => Err(Error::KindMismatch("varpi lift expects a pair".into())),
            },
            LiftRule::ThroughOmega { dim } => match b {
                Element::Scalar(_) => Ok(b.clone()),
                Element::Pair(a, bb) => {
                    let main = Self::varpi_second(*dim).apply(bb, policy)?;
                    let quant = Morphism::chain(vec![Morphism::Symbol(1), Morphism::Toeplitz { leg: 1, dim: *dim }]);
                    let compact = a.sub(&quant.apply(a, policy)?)?;
                    let corr = Morphism::Toeplitz { leg: 0, dim: *dim }.apply(&compact, policy)?;
                    if corr.is_zero() {
                        return Ok(main);
                    }
                    main.add(&corr)
                }
                Element::Tensor(_) => Err(Error::KindMismatch("omega lift expects a pair".into())),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PullbackDiagram {
    pub id: String,
    pub left: AlgebraNode,
    pub right: AlgebraNode,
    pub base: AlgebraNode,
    pub pi1: Morphism,
    pub pi2: Morphism,
    pub pi2_surjective: bool,
    pub lift_rule: LiftRule,
    /// Symbol evaluation used inside π₁, π₂.
    pub policy: SymbolPolicy,
    /// Compatibility tolerance of the base node.
    pub tolerance: f64,
}

impl PullbackDiagram {
    pub fn margin(&self) -> usize {
        self.policy.margin
    }

    pub fn project1(&self, a1: &Element) -> Result<Element> {
        self.pi1.apply(a1, &self.policy)
    }

    pub fn project2(&self, a2: &Element) -> Result<Element> {
        self.pi2.apply(a2, &self.policy)
    }

    /// `‖π₁(a₁) − π₂(a₂)‖` after interior compression.
    pub fn compatibility_defect(&self, a1: &Element, a2: &Element) -> Result<f64> {
        self.project1(a1)?.defect(&self.project2(a2)?, self.margin())
    }

    pub fn make_element(&self, a1: Element, a2: Element) -> Result<PullbackElement> {
        self.left.check(&a1)?;
        self.right.check(&a2)?;
        let defect = self.compatibility_defect(&a1, &a2)?;
        if defect > self.tolerance {
            return Err(Error::Incompatible { defect, tolerance: self.tolerance });
        }
        Ok(PullbackElement { diagram: self.id.clone(), a1, a2 })
    }

    pub fn unit(&self) -> PullbackElement {
        PullbackElement { diagram: self.id.clone(), a1: Element::one(), a2: Element::one() }
    }

    pub fn zero(&self) -> PullbackElement {
        PullbackElement { diagram: self.id.clone(), a1: Element::zero(), a2: Element::zero() }
    }

    pub fn scalar(&self, c: crate::C64) -> PullbackElement {
        PullbackElement { diagram: self.id.clone(), a1: Element::Scalar(c), a2: Element::Scalar(c) }
    }

    /// Right-node preimage of a base element under π₂.
    pub fn lift(&self, b: &Element) -> Result<Element> {
        if !self.pi2_surjective || self.lift_rule == LiftRule::None {
            return Err(Error::NoLiftRule(self.id.clone()));
        }
        self.lift_rule.apply(b, &self.policy)
    }

    /// `‖π₂(lift(b)) − b‖`.
    pub fn lift_defect(&self, b: &Element) -> Result<f64> {
        let r = self.lift(b)?;
        self.project2(&r)?.defect(b, self.margin())
    }

    fn same(&self, x: &PullbackElement) -> Result<()> {
        if x.diagram == self.id {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!("element of {} used over {}", x.diagram, self.id)))
        }
    }

    pub fn add(&self, x: &PullbackElement, y: &PullbackElement) -> Result<PullbackElement> {
        self.same(x)?;
        self.same(y)?;
        self.make_element(x.a1.add(&y.a1)?, x.a2.add(&y.a2)?)
    }

    pub fn mul(&self, x: &PullbackElement, y: &PullbackElement) -> Result<PullbackElement> {
        self.same(x)?;
        self.same(y)?;
        self.make_element(x.a1.mul(&y.a1)?, x.a2.mul(&y.a2)?)
    }

    pub fn adjoint(&self, x: &PullbackElement) -> Result<PullbackElement> {
        self.same(x)?;
        self.make_element(x.a1.adjoint(), x.a2.adjoint())
    }

    pub fn scale(&self, x: &PullbackElement, c: crate::C64) -> Result<PullbackElement> {
        self.same(x)?;
        Ok(PullbackElement { diagram: x.diagram.clone(), a1: x.a1.scale(c), a2: x.a2.scale(c) })
    }
}

/// A compatible pair `(a₁, a₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackElement {
    pub diagram: String,
    pub a1: Element,
    pub a2: Element,
}

impl PullbackElement {
    /// The pair as a nested [`Element`], for use inside other diagrams.
    pub fn to_element(&self) -> Element {
        if let (Element::Scalar(a), Element::Scalar(b)) = (&self.a1, &self.a2) {
            if a == b {
                return self.a1.clone();
            }
        }
        Element::pair(self.a1.clone(), self.a2.clone())
    }

    /// Componentwise distance after compression.
    pub fn defect(&self, other: &PullbackElement, margin: usize) -> Result<f64> {
        Ok(self.a1.defect(&other.a1, margin)?.max(self.a2.defect(&other.a2, margin)?))
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }
}

/// `φ = (φ₁, φ₂)` between two diagrams, with `φ₁₂` on the bases.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramMorphism {
    pub id: String,
    pub source: String,
    pub target: String,
    pub phi1: Morphism,
    pub phi2: Morphism,
    pub phi12: Morphism,
}

impl DiagramMorphism {
    pub fn identity(diagram: &str) -> Self {
        Self {
            id: format!("id_{diagram}"),
            source: diagram.to_string(),
            target: diagram.to_string(),
            phi1: Morphism::Identity,
            phi2: Morphism::Identity,
            phi12: Morphism::Identity,
        }
    }

    /// `(φ₁(a₁), φ₂(a₂))` over the target, compatibility verified.
    pub fn induced_map(
        &self,
        source: &PullbackDiagram,
        target: &PullbackDiagram,
        x: &PullbackElement,
    ) -> Result<PullbackElement> {
        if x.diagram != self.source || source.id != self.source || target.id != self.target {
            return Err(Error::KindMismatch(format!("morphism {} misapplied", self.id)));
        }
        let b1 = self.phi1.apply(&x.a1, &source.policy)?;
        let b2 = self.phi2.apply(&x.a2, &source.policy)?;
        target.make_element(b1, b2)
    }

    /// Max of `‖φ₁₂π₁(x₁) − ρ₁φ₁(x₁)‖` and `‖φ₁₂π₂(x₂) − ρ₂φ₂(x₂)‖` over `xs`.
    pub fn square_defect(
        &self,
        source: &PullbackDiagram,
        target: &PullbackDiagram,
        xs: &[PullbackElement],
    ) -> Result<f64> {
        let mut worst: f64 = 0.0;
        let pol = &source.policy;
        for x in xs {
            let l = self.phi12.apply(&source.project1(&x.a1)?, pol)?;
            let r = target.project1(&self.phi1.apply(&x.a1, pol)?)?;
            worst = worst.max(l.defect(&r, source.margin())?);
            let l = self.phi12.apply(&source.project2(&x.a2)?, pol)?;
            let r = target.project2(&self.phi2.apply(&x.a2, pol)?)?;
            worst = worst.max(l.defect(&r, source.margin())?);
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Leg;
    use crate::element::ops::toeplitz_power;
    use crate::laurent::LaurentElement;

    const N: usize = 12;

    fn toy() -> PullbackDiagram {
        // C(S¹) → C(S¹)⊗C(S¹)• ← T⊗C(S¹)•
        let circle = Layout::new(vec![Leg::circle_charged()]);
        PullbackDiagram {
            id: "toy".into(),
            left: AlgebraNode::new("C(S1)", NodeKind::Tensor(circle)),
            right: AlgebraNode::new("T⊗C(S1)", NodeKind::Tensor(Layout::new(vec![Leg::fock(N), Leg::circle_charged()]))),
            base: AlgebraNode::new("C(S1)⊗C(S1)", NodeKind::Tensor(Layout::new(vec![Leg::circle(), Leg::circle_charged()]))),
            pi1: Morphism::Coproduct(0),
            pi2: Morphism::Symbol(0),
            pi2_surjective: true,
            lift_rule: LiftRule::ToeplitzFirst { dim: N },
            policy: SymbolPolicy::lenient(2, 8, 1e-12),
            tolerance: 1e-12,
        }
    }

    fn right(k: i64, m: i64) -> Element {
        let lay = Layout::new(vec![Leg::fock(N), Leg::circle_charged()]);
        Element::Tensor(Tensor::term(lay, vec![m], toeplitz_power(N, k)).unwrap())
    }

    #[test]
    fn units_and_incompatible_pairs() {
        let d = toy();
        assert!(d.make_element(Element::one(), Element::one()).is_ok());
        let u = Element::laurent(&LaurentElement::u(1), true);
        assert!(matches!(d.make_element(u.clone(), Element::one()), Err(Error::Incompatible { .. })));
        let x = d.make_element(u, right(1, 1)).unwrap();
        let y = d.mul(&d.adjoint(&x).unwrap(), &x).unwrap();
        assert!(y.defect(&d.unit(), 2).unwrap() < 1e-15);
    }

    #[test]
    fn toeplitz_lift_projects_back() {
        let d = toy();
        let lay = Layout::new(vec![Leg::circle(), Leg::circle_charged()]);
        let mut b = Tensor::zero(lay.clone());
        for (k, m) in [(-1, -1), (2, 0), (0, 3)] {
            b = b.add(&Tensor::term(lay.clone(), vec![k, m], crate::ComplexMatrix::identity(1)).unwrap()).unwrap();
        }
        let b = Element::Tensor(b);
        assert_eq!(d.lift_defect(&b).unwrap(), 0.0);
        let r = d.lift(&Element::laurent(&LaurentElement::u(-1), true).map_tensor(|t| t.coproduct(0)).unwrap()).unwrap();
        assert_eq!(r, right(-1, -1));
        assert_eq!(d.lift(&Element::one()).unwrap(), Element::one());
    }

    #[test]
    fn identity_morphism_fixes_elements() {
        let d = toy();
        let m = DiagramMorphism::identity("toy");
        let x = d.make_element(Element::laurent(&LaurentElement::u(2), true), right(2, 2)).unwrap();
        assert_eq!(m.induced_map(&d, &d, &x).unwrap(), x);
        assert_eq!(m.square_defect(&d, &d, &[x]).unwrap(), 0.0);
    }

    #[test]
    fn corrupted_pairs_are_rejected_sharply() {
        let d = toy();
        let u = Element::laurent(&LaurentElement::u(1), true);
        let good = right(1, 1);
        let bump = Element::Tensor(Tensor::term(Layout::new(vec![Leg::fock(N), Leg::circle_charged()]), vec![1], toeplitz_power(N, 1).scale(crate::C64::new(1e-10, 0.0))).unwrap());
        let bad = good.add(&bump).unwrap();
        assert!(matches!(d.make_element(u, bad), Err(Error::Incompatible { .. })));
    }
}
