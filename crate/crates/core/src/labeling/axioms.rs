//! Instance-level checks of the lifting axioms of a graph category on a finite sample.

use super::{push_forward_labels, GammaPreset, LabeledGraph, LabeledMorphism, Labeling};
use crate::error::Result;
use crate::graph::morphism::{assemble_with, contract_edges, contraction_to_corolla, full_merger, total_grafting, GraphMorphism, MorphismClass};
use crate::graph::{Graph, ValidityReport};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub graph: usize,
    pub status: AxiomStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub preset: GammaPreset,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != AxiomStatus::Fail)
    }

    fn record(&mut self, axiom: &'static str, graph: usize, status: AxiomStatus, detail: impl Into<String>) {
        self.checks.push(AxiomCheck { axiom, graph, status, detail: detail.into() });
    }

    fn verdict(&mut self, axiom: &'static str, graph: usize, r: ValidityReport) {
        if r.is_valid() {
            self.record(axiom, graph, AxiomStatus::Pass, "");
        } else {
            self.record(axiom, graph, AxiomStatus::Fail, r.violations.join("; "));
        }
    }
}

/// Lift of a morphism out of a labeled graph, with target labels pushed forward.
pub fn lift(h: GraphMorphism, source_labels: &Labeling) -> LabeledMorphism {
    let target_labels = push_forward_labels(&h, source_labels);
    LabeledMorphism { morphism: h, source_labels: source_labels.clone(), target_labels }
}

/// Checks that the unique candidate `φ` with `φ ∘ a = b` is a label-preserving isomorphism.
pub fn isomorphic_over_source(a: &LabeledMorphism, b: &LabeledMorphism) -> ValidityReport {
    let mut r = ValidityReport::default();
    let (ha, hb) = (&a.morphism, &b.morphism);
    if ha.source != hb.source || a.source_labels != b.source_labels {
        r.push("lifts start at different labeled graphs");
        return r;
    }
    let inv_a = ha.inverse_flag_map();
    let mut flag_map = BTreeMap::new();
    for (&s2, t) in &hb.flag_map {
        match inv_a.get(t) {
            Some(&s1) => {
                flag_map.insert(s2, s1);
            }
            None => r.push(format!("flag {t} survives in one lift only")),
        }
    }
    let mut vertex_map = BTreeMap::new();
    for (v, w1) in &ha.vertex_map {
        let w2 = hb.vertex_map[v];
        if let Some(&prev) = vertex_map.get(w1) {
            if prev != w2 {
                r.push(format!("vertex {w1} would map to both {prev} and {w2}"));
            }
        }
        vertex_map.insert(*w1, w2);
    }
    if !r.is_valid() {
        return r;
    }
    let phi = LabeledMorphism {
        morphism: GraphMorphism {
            source: ha.target.clone(),
            target: hb.target.clone(),
            flag_map,
            vertex_map,
            virtual_involution: BTreeMap::new(),
        },
        source_labels: a.target_labels.clone(),
        target_labels: b.target_labels.clone(),
    };
    r.extend("comparison: ", phi.morphism.validate());
    if r.is_valid() && phi.morphism.classify() != MorphismClass::Isomorphism {
        r.push("comparison map is not an isomorphism");
    }
    r.extend("comparison labels: ", super::check_label_compatibility(&phi));
    r
}

/// `con_τ` built one edge at a time, then merged.
fn stepwise_contraction(tau: &LabeledGraph) -> Result<LabeledMorphism> {
    let mut acc = LabeledMorphism::identity(tau);
    loop {
        let cur = acc.target();
        let Some(e) = cur.graph.edges().into_iter().next() else { break };
        let step = lift(contract_edges(&cur.graph, &[e]), &cur.labels);
        acc = step.after(&acc)?;
    }
    let cur = acc.target();
    let m = lift(full_merger(&cur.graph), &cur.labels);
    m.after(&acc)
}

/// Vertex corollas of `τ` with restricted labels.
pub fn vertex_corollas(tau: &LabeledGraph) -> Vec<LabeledGraph> {
    tau.graph
        .vertices
        .iter()
        .map(|&v| tau.restrict(&Graph::corolla_on(v, tau.graph.flags_at(v))))
        .collect()
}

/// Sample morphisms out of `τ` allowed by the preset: `con_τ`, the total grafting,
/// single-edge contractions, and for merging presets a merger of the first two vertices.
pub fn sample_morphisms(preset: GammaPreset, tau: &LabeledGraph) -> Vec<LabeledMorphism> {
    let mut out = Vec::new();
    let mut consider = |m: LabeledMorphism| {
        if preset.check_morphism(&m).is_valid() {
            out.push(m);
        }
    };
    consider(lift(contraction_to_corolla(&tau.graph), &tau.labels));
    consider(LabeledMorphism {
        morphism: total_grafting(&tau.graph),
        source_labels: tau.labels.clone(),
        target_labels: tau.labels.clone(),
    });
    for e in tau.graph.edges() {
        consider(lift(contract_edges(&tau.graph, &[e]), &tau.labels));
    }
    if preset.allows_mergers() && tau.graph.vertices.len() >= 2 {
        let (v0, v1) = (tau.graph.vertices[0], tau.graph.vertices[1]);
        let mut target = tau.graph.clone();
        target.vertices.retain(|&v| v != v1);
        for b in target.boundary.values_mut() {
            if *b == v1 {
                *b = v0;
            }
        }
        let h = GraphMorphism {
            source: tau.graph.clone(),
            target: target.clone(),
            flag_map: tau.graph.flags.iter().map(|&f| (f, f)).collect(),
            vertex_map: tau.graph.vertices.iter().map(|&v| (v, if v == v1 { v0 } else { v })).collect(),
            virtual_involution: BTreeMap::new(),
        };
        consider(lift(h, &tau.labels));
    }
    out
}

/// Runs the con-lift, grafting-lift, atomization-lift and heredity checks on every sample graph.
pub fn check_gamma_axioms(preset: GammaPreset, sample: &[LabeledGraph]) -> Result<AxiomReport> {
    let mut rep = AxiomReport { preset, checks: Vec::new() };
    for (i, tau) in sample.iter().enumerate() {
        let mut obj = preset.admits(tau);
        for c in vertex_corollas(tau) {
            obj.extend("vertex corolla: ", preset.admits(&c));
        }
        let ok = obj.is_valid();
        rep.verdict("objects", i, obj);
        if !ok {
            continue;
        }

        let connected = tau.graph.components().len() <= 1;
        if !connected && !preset.allows_mergers() {
            rep.record("con_lift", i, AxiomStatus::NotApplicable, "disconnected graph and the preset has no mergers");
        } else {
            let direct = lift(contraction_to_corolla(&tau.graph), &tau.labels);
            let mut r = preset.check_morphism(&direct);
            let stepwise = stepwise_contraction(tau)?;
            r.extend("stepwise lift: ", preset.check_morphism(&stepwise));
            r.extend("", isomorphic_over_source(&direct, &stepwise));
            rep.verdict("con_lift", i, r);
        }

        let grafting = LabeledMorphism {
            morphism: total_grafting(&tau.graph),
            source_labels: tau.labels.clone(),
            target_labels: tau.labels.clone(),
        };
        let mut r = preset.check_morphism(&grafting);
        let parts: Vec<_> = tau.graph.vertices.iter().map(|&v| (v, GraphMorphism::identity(&Graph::corolla_on(v, tau.graph.flags_at(v))))).collect();
        match assemble_with(&tau.graph, &parts, &tau.graph.edges()) {
            Ok(h) => {
                let other = LabeledMorphism { morphism: h, source_labels: tau.labels.clone(), target_labels: tau.labels.clone() };
                r.extend("", isomorphic_over_source(&grafting, &other));
            }
            Err(e) => r.push(format!("grafting from corollas failed: {e}")),
        }
        rep.verdict("grafting_lift", i, r);

        for (k, m) in sample_morphisms(preset, tau).iter().enumerate() {
            let (mut atom, mut hered) = (ValidityReport::default(), ValidityReport::default());
            let d = m.morphism.atomize();
            if !d.commutes()? {
                atom.push("atomization square does not commute");
            }
            let sigma = m.target();
            for (v, part) in &d.parts {
                let lp = LabeledMorphism {
                    morphism: part.clone(),
                    source_labels: tau.restrict(&part.source).labels,
                    target_labels: sigma.restrict(&part.target).labels,
                };
                atom.extend(&format!("part at {v}: "), preset.check_morphism(&lp));
            }
            let kmap = LabeledMorphism {
                morphism: d.k.clone(),
                source_labels: tau.labels.clone(),
                target_labels: tau.labels.clone(),
            };
            atom.extend("k: ", preset.check_morphism(&kmap));
            let merger = m.morphism.decompose().merger.classify() != MorphismClass::Isomorphism;
            match assemble_with(&m.morphism.target, &d.parts, &d.grafted) {
                Ok(h) if h == m.morphism => {}
                Ok(_) => hered.push("assembled morphism differs from the original"),
                Err(e) => hered.push(format!("assembly failed: {e}")),
            }
            let tag = format!("morphism {k} ({}{})", m.morphism.classify(), if merger { ", merger factor" } else { "" });
            for (axiom, r) in [("atomization_lift", atom), ("heredity", hered)] {
                if r.is_valid() {
                    rep.record(axiom, i, AxiomStatus::Pass, tag.clone());
                } else {
                    rep.record(axiom, i, AxiomStatus::Fail, format!("{tag}: {}", r.violations.join("; ")));
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Orientation;

    #[test]
    fn ordinary_tree_grafting_lift_is_unique() {
        // root vertex 0 with output 0, inputs 1,2; vertex 1 with output 3 grafted into 1, inputs 4,5
        let g = Graph::from_lists(2, &[0, 0, 0, 1, 1, 1], &[0, 3, 2, 1, 4, 5]);
        let mut lg = LabeledGraph::plain(g);
        lg.labels.orientation = [0, 3].iter().map(|&f| (f, Orientation::Out)).chain([1, 2, 4, 5].iter().map(|&f| (f, Orientation::In))).collect();
        let rep = check_gamma_axioms(GammaPreset::Ordinary, &[lg]).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.checks.iter().any(|c| c.axiom == "grafting_lift" && c.status == AxiomStatus::Pass));
    }

    #[test]
    fn prop_merger_shows_up_in_decomposition() {
        let g = Graph::from_lists(2, &[0, 0, 1, 1], &[0, 1, 2, 3]);
        let mut lg = LabeledGraph::plain(g);
        lg.labels.orientation = [(0, Orientation::Out), (1, Orientation::In), (2, Orientation::Out), (3, Orientation::In)].into();
        let rep = check_gamma_axioms(GammaPreset::Prop, std::slice::from_ref(&lg)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.checks.iter().any(|c| c.axiom == "atomization_lift" && c.detail.contains("merger factor")));
        let rep = check_gamma_axioms(GammaPreset::Properad, &[lg]).unwrap();
        assert!(rep.checks.iter().any(|c| c.axiom == "con_lift" && c.status == AxiomStatus::NotApplicable));
    }
}
