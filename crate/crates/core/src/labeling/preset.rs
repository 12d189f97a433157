//! The catalog of graph categories: object and morphism predicates per preset.

use super::{check_label_compatibility, is_stable, LabeledGraph, LabeledMorphism, Labeling, Orientation};
use crate::graph::morphism::MorphismClass;
use crate::graph::{FlagId, Graph, ValidityReport, VertexId};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaPreset {
    Ordinary,
    NonSymmetric,
    Cyclic,
    Modular,
    StableModular,
    Prop,
    Properad,
    Dioperad,
    HalfProp,
    /// Chains of one-input one-output vertices; algebras over it are graded associative algebras.
    Linear,
}

/// Type of a corolla. Unoriented presets record all flags as inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u32,
    pub outputs: usize,
    pub inputs: usize,
}

impl Signature {
    pub fn new(genus: u32, outputs: usize, inputs: usize) -> Self {
        Signature { genus, outputs, inputs }
    }

    pub fn flags(&self) -> usize {
        self.outputs + self.inputs
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, out={}, in={})", self.genus, self.outputs, self.inputs)
    }
}

/// Finite truncation applied to every enumeration. `max_genus` also bounds the first Betti
/// number of sources for directed presets with cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Caps {
    pub max_arity: usize,
    pub max_weight: usize,
    pub max_genus: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_arity: 4, max_weight: 3, max_genus: 1 }
    }
}

impl fmt::Display for GammaPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GammaPreset {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        GammaPreset::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| crate::Error::InvalidInput(format!("unknown preset `{s}`")))
    }
}

impl GammaPreset {
    pub const ALL: [GammaPreset; 10] = [
        GammaPreset::Ordinary,
        GammaPreset::NonSymmetric,
        GammaPreset::Cyclic,
        GammaPreset::Modular,
        GammaPreset::StableModular,
        GammaPreset::Prop,
        GammaPreset::Properad,
        GammaPreset::Dioperad,
        GammaPreset::HalfProp,
        GammaPreset::Linear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GammaPreset::Ordinary => "ordinary",
            GammaPreset::NonSymmetric => "non_symmetric",
            GammaPreset::Cyclic => "cyclic",
            GammaPreset::Modular => "modular",
            GammaPreset::StableModular => "stable_modular",
            GammaPreset::Prop => "prop",
            GammaPreset::Properad => "properad",
            GammaPreset::Dioperad => "dioperad",
            GammaPreset::HalfProp => "half_prop",
            GammaPreset::Linear => "linear",
        }
    }

    pub fn oriented(self) -> bool {
        !matches!(self, GammaPreset::Cyclic | GammaPreset::Modular | GammaPreset::StableModular)
    }

    pub fn has_genus(self) -> bool {
        matches!(self, GammaPreset::Modular | GammaPreset::StableModular)
    }

    pub fn planar(self) -> bool {
        matches!(self, GammaPreset::NonSymmetric)
    }

    pub fn allows_mergers(self) -> bool {
        matches!(self, GammaPreset::Prop)
    }

    /// Components of objects are trees.
    pub fn tree_like(self) -> bool {
        !matches!(self, GammaPreset::Modular | GammaPreset::StableModular | GammaPreset::Prop | GammaPreset::Properad)
    }

    /// Single-output trees, where an output-to-input grafting is the only kind of edge.
    pub fn rooted(self) -> bool {
        matches!(self, GammaPreset::Ordinary | GammaPreset::NonSymmetric | GammaPreset::Linear)
    }

    pub fn admissible_signature(self, s: Signature) -> bool {
        match self {
            GammaPreset::Ordinary | GammaPreset::NonSymmetric => s.genus == 0 && s.outputs == 1 && s.inputs >= 2,
            GammaPreset::Linear => s.genus == 0 && s.outputs == 1 && s.inputs == 1,
            GammaPreset::Cyclic => s.genus == 0 && s.outputs == 0 && s.inputs >= 3,
            GammaPreset::Modular => s.outputs == 0,
            GammaPreset::StableModular => s.outputs == 0 && is_stable(s.genus, s.inputs),
            GammaPreset::Prop | GammaPreset::Properad | GammaPreset::Dioperad | GammaPreset::HalfProp => {
                s.genus == 0 && s.outputs >= 1 && s.inputs >= 1
            }
        }
    }

    /// Size measure bounded by `Caps::max_arity`.
    pub fn arity(self, s: Signature) -> usize {
        if self.rooted() {
            s.inputs
        } else {
            s.flags()
        }
    }

    /// Admissible signatures within the caps, sorted.
    pub fn signatures(self, caps: &Caps) -> Vec<Signature> {
        let mut out = Vec::new();
        let max_g = if self.has_genus() { caps.max_genus } else { 0 };
        for g in 0..=max_g {
            for m in 0..=caps.max_arity {
                for n in 0..=caps.max_arity {
                    let s = Signature::new(g, m, n);
                    if self.admissible_signature(s) && self.arity(s) <= caps.max_arity {
                        out.push(s);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Signature of the corolla of `v`.
    pub fn signature_at(self, g: &LabeledGraph, v: VertexId) -> Signature {
        let flags = g.graph.flags_at(v);
        let genus = if self.has_genus() { g.genus_of(v) } else { 0 };
        if self.oriented() {
            let outs = flags.iter().filter(|&&f| g.orientation(f) == Some(Orientation::Out)).count();
            Signature::new(genus, outs, flags.len() - outs)
        } else {
            Signature::new(genus, 0, flags.len())
        }
    }

    /// Signature of a corolla-shaped labeled graph.
    pub fn corolla_signature(self, g: &LabeledGraph) -> Option<Signature> {
        (g.graph.vertices.len() == 1).then(|| self.signature_at(g, g.graph.vertices[0]))
    }

    /// Corolla on vertex 0 with outputs `0..m` then inputs `m..m+n`, cyclically ordered in that sequence.
    pub fn standard_corolla(self, s: Signature) -> LabeledGraph {
        let nf = s.flags() as FlagId;
        let graph = Graph::corolla(nf);
        let mut labels = Labeling::default();
        if self.oriented() {
            labels.orientation = (0..nf).map(|f| (f, if (f as usize) < s.outputs { Orientation::Out } else { Orientation::In })).collect();
        }
        if self.has_genus() {
            labels.genus.insert(0, s.genus);
        }
        if self.planar() && nf > 0 {
            labels.cyclic = (0..nf).map(|f| (f, (f + 1) % nf)).collect();
        }
        LabeledGraph { graph, labels }
    }

    /// Object predicate.
    pub fn admits(self, g: &LabeledGraph) -> ValidityReport {
        let mut r = g.validate();
        if !r.is_valid() {
            return r;
        }
        let gr = &g.graph;
        let l = &g.labels;
        if self.oriented() && l.orientation.is_empty() && !gr.flags.is_empty() {
            r.push(format!("{self} graphs carry an orientation"));
        }
        if !self.oriented() && !l.orientation.is_empty() {
            r.push(format!("{self} graphs carry no orientation"));
        }
        if self.has_genus() && l.genus.is_empty() && !gr.vertices.is_empty() {
            r.push(format!("{self} graphs carry a genus labeling"));
        }
        if !self.has_genus() && !l.genus.is_empty() {
            r.push(format!("{self} graphs carry no genus labeling"));
        }
        if self.planar() && l.cyclic.is_empty() && !gr.flags.is_empty() {
            r.push(format!("{self} graphs carry cyclic orders"));
        }
        if !self.planar() && !l.cyclic.is_empty() {
            r.push(format!("{self} graphs carry no cyclic orders"));
        }
        if !r.is_valid() {
            return r;
        }
        for &v in &gr.vertices {
            let s = self.signature_at(g, v);
            if !self.admissible_signature(s) {
                r.push(format!("corolla of vertex {v} has inadmissible signature {s}"));
            }
        }
        if self.tree_like() && gr.invariants().first_betti != 0 {
            r.push("components must be trees");
        }
        if self.oriented() && g.directed_heights().is_none() {
            r.push("graph has an oriented wheel");
        }
        if self == GammaPreset::HalfProp {
            for (a, b) in gr.edges() {
                let (out, inn) = if g.orientation(a) == Some(Orientation::Out) { (a, b) } else { (b, a) };
                let src = gr.vertex(out);
                let tgt = gr.vertex(inn);
                let src_outs = gr.flags_at(src).into_iter().filter(|&f| g.orientation(f) == Some(Orientation::Out)).count();
                let tgt_ins = gr.flags_at(tgt).into_iter().filter(|&f| g.orientation(f) == Some(Orientation::In)).count();
                if src_outs != 1 && tgt_ins != 1 {
                    r.push(format!("edge ({a},{b}) is neither the unique output of its source nor the unique input of its target"));
                }
            }
        }
        r
    }

    /// Morphism predicate: valid underlying morphism, admissible ends, compatible labels and allowed classes.
    pub fn check_morphism(self, m: &LabeledMorphism) -> ValidityReport {
        let mut r = m.morphism.validate();
        if !r.is_valid() {
            return r;
        }
        r.extend("source: ", self.admits(&m.source()));
        r.extend("target: ", self.admits(&m.target()));
        r.extend("labels: ", check_label_compatibility(m));
        let d = m.morphism.decompose();
        if d.virtual_contraction.classify() != MorphismClass::Isomorphism {
            r.push(format!("{self} admits no virtual contractions"));
        }
        if !self.allows_mergers() && d.merger.classify() != MorphismClass::Isomorphism {
            r.push(format!("{self} admits no mergers"));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_catalog() {
        let caps = Caps { max_arity: 3, max_weight: 2, max_genus: 1 };
        let ord = GammaPreset::Ordinary.signatures(&caps);
        assert_eq!(ord, vec![Signature::new(0, 1, 2), Signature::new(0, 1, 3)]);
        let sm = GammaPreset::StableModular.signatures(&caps);
        assert!(sm.contains(&Signature::new(1, 0, 1)));
        assert!(sm.contains(&Signature::new(0, 0, 3)));
        assert!(!sm.contains(&Signature::new(0, 0, 2)));
        assert_eq!(GammaPreset::Linear.signatures(&caps), vec![Signature::new(0, 1, 1)]);
        for p in GammaPreset::ALL {
            assert_eq!(p.name().parse::<GammaPreset>().unwrap(), p);
            for s in p.signatures(&caps) {
                let c = p.standard_corolla(s);
                assert!(p.admits(&c).is_valid(), "{p} {s}");
                assert_eq!(p.corolla_signature(&c), Some(s));
            }
        }
    }

    #[test]
    fn half_prop_edge_rule() {
        // two (2 out, 1 in) vertices joined through one output: source has two outputs, target one input
        let g = Graph::from_lists(2, &[0, 0, 0, 1, 1, 1], &[3, 1, 2, 0, 4, 5]);
        let mut lg = LabeledGraph::plain(g);
        lg.labels.orientation = [(0, Orientation::Out), (1, Orientation::Out), (2, Orientation::In), (3, Orientation::In), (4, Orientation::Out), (5, Orientation::Out)].into();
        assert!(GammaPreset::HalfProp.admits(&lg).is_valid());
        // make the target have two inputs
        lg.labels.orientation.insert(5, Orientation::In);
        assert!(!GammaPreset::HalfProp.admits(&lg).is_valid());
        assert!(GammaPreset::Dioperad.admits(&lg).is_valid());
    }
}
