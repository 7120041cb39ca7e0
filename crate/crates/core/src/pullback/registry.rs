use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{DiagramMorphism, PullbackDiagram, PullbackElement};
use crate::error::{Error, Result};

/// Named generators of a registered diagram.
pub type GeneratorSet = Vec<(String, PullbackElement)>;

/// Append-only store of diagrams, diagram morphisms and generator sets.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    diagrams: Vec<PullbackDiagram>,
    morphisms: Vec<DiagramMorphism>,
    generators: Vec<(String, GeneratorSet)>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a diagram; re-registering an id is a no-op returning false.
    pub fn register(&mut self, d: PullbackDiagram, gens: GeneratorSet) -> bool {
        if self.contains(&d.id) {
            return false;
        }
        self.generators.push((d.id.clone(), gens));
        self.diagrams.push(d);
        true
    }

    pub fn register_morphism(&mut self, m: DiagramMorphism) {
        if !self.morphisms.iter().any(|x| x.id == m.id) {
            self.morphisms.push(m);
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.diagrams.iter().any(|d| d.id == id)
    }

    pub fn diagram(&self, id: &str) -> Result<&PullbackDiagram> {
        self.diagrams.iter().find(|d| d.id == id).ok_or_else(|| Error::UnknownDiagram(id.to_string()))
    }

    pub fn morphism(&self, id: &str) -> Result<&DiagramMorphism> {
        self.morphisms.iter().find(|m| m.id == id).ok_or_else(|| Error::UnknownDiagram(id.to_string()))
    }

    pub fn generators(&self, id: &str) -> Result<&GeneratorSet> {
        self.generators
            .iter()
            .find(|(d, _)| d == id)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownDiagram(id.to_string()))
    }

    pub fn generator(&self, diagram: &str, name: &str) -> Result<&PullbackElement> {
        self.generators(diagram)?
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownDiagram(alloc::format!("{diagram}/{name}")))
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &PullbackDiagram> {
        self.diagrams.iter()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &DiagramMorphism> {
        self.morphisms.iter()
    }

    /// Serializable summary for report cross-referencing.
    pub fn manifest(&self) -> Manifest {
        let node = |n: &super::AlgebraNode| NodeManifest {
            id: n.id.clone(),
            kind: n.kind.kind_name(),
            fixed_points: n.fixed_points,
        };
        Manifest {
            diagrams: self
                .diagrams
                .iter()
                .map(|d| DiagramManifest {
                    id: d.id.clone(),
                    left: node(&d.left),
                    right: node(&d.right),
                    base: node(&d.base),
                    pi1: d.pi1.describe(),
                    pi2: d.pi2.describe(),
                    pi2_surjective: d.pi2_surjective,
                    lift_rule: d.lift_rule.describe().to_string(),
                    generators: self.generators(&d.id).map(|g| g.iter().map(|(n, _)| n.clone()).collect()).unwrap_or_default(),
                })
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismManifest {
                    id: m.id.clone(),
                    source: m.source.clone(),
                    target: m.target.clone(),
                    phi1: m.phi1.describe(),
                    phi2: m.phi2.describe(),
                    phi12: m.phi12.describe(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NodeManifest {
    pub id: String,
    pub kind: String,
    pub fixed_points: bool,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DiagramManifest {
    pub id: String,
    pub left: NodeManifest,
    pub right: NodeManifest,
    pub base: NodeManifest,
    pub pi1: String,
    pub pi2: String,
    pub pi2_surjective: bool,
    pub lift_rule: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MorphismManifest {
    pub id: String,
    pub source: String,
    pub target: String,
    pub phi1: String,
    pub phi2: String,
    pub phi12: String,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Manifest {
    pub diagrams: Vec<DiagramManifest>,
    pub morphisms: Vec<MorphismManifest>,
}
