//! Decomposition of a graph into the triples that Smatch compares.

use super::AmrGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TripleKind {
    Instance,
    Attribute,
    Relation,
    Top,
}

/// One comparable unit of an AMR graph.
///
/// `target` holds a concept label (Instance/Top), a constant (Attribute),
/// or a renamed variable (Relation).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub kind: TripleKind,
    pub source: String,
    pub role: String,
    pub target: String,
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.source, self.role, self.target)
    }
}

/// Extracts the full triple set of a graph, renaming variables
/// `{prefix}0, {prefix}1, ...` in first-appearance order.
///
/// The result always contains one Instance triple per variable, exactly one
/// Top triple whose target is the root's concept, one Relation triple per
/// relation edge, and one Attribute triple per attribute, so
/// `len == |variables| + 1 + |relations| + |attributes|`.
pub fn extract_triples(graph: &AmrGraph, variable_prefix: &str) -> Vec<Triple> {
    let rename =
        |idx: usize| -> String { format!("{variable_prefix}{idx}") };
    let mut out = Vec::with_capacity(
        graph.num_variables() + 1 + graph.num_relations() + graph.num_attributes(),
    );
    for (idx, _) in graph.variables().iter().enumerate() {
        out.push(Triple {
            kind: TripleKind::Instance,
            source: rename(idx),
            role: "instance".into(),
            target: graph.concept(idx).to_string(),
        });
    }
    out.push(Triple {
        kind: TripleKind::Top,
        source: rename(graph.root_index()),
        role: "TOP".into(),
        target: graph.concept(graph.root_index()).to_string(),
    });
    for (src, role, tgt) in graph.relations_indexed() {
        out.push(Triple {
            kind: TripleKind::Relation,
            source: rename(*src),
            role: role.clone(),
            target: rename(*tgt),
        });
    }
    for (src, role, constant) in graph.attributes_indexed() {
        out.push(Triple {
            kind: TripleKind::Attribute,
            source: rename(*src),
            role: role.clone(),
            target: constant.clone(),
        });
    }
    out
}
