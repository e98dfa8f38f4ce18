//! AMR graphs and their Penman-notation text form.
//!
//! An AMR is a rooted, labeled graph: every node is a variable carrying a
//! concept label, edges carry role labels, and leaves may be constants
//! (quoted strings, numbers, or bare symbols such as `-`). The text form is
//! the familiar parenthesized notation:
//!
//! ```text
//! (s / scout-02
//!       :ARG0 (h / he)
//!       :time (a / after))
//! ```
//!
//! Parsing is strict: malformed input is reported with line/column, never
//! silently repaired.

mod corpus;
mod parse;
mod print;
mod triples;

pub use corpus::{read_amr_file, read_amr_str, write_amr_file, AmrRecord};
pub use parse::parse_penman;
pub use triples::{extract_triples, Triple, TripleKind};

use std::collections::HashMap;

use thiserror::Error;

/// Roles whose `-of` suffix is part of the role name itself and must not be
/// inverted during canonicalization.
pub const INTRINSIC_OF_ROLES: [&str; 3] = ["consist-of", "prep-out-of", "prep-on-behalf-of"];

/// Source position (1-based line and column) attached to parse errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PenmanError {
    #[error("{pos}: unbalanced parentheses")]
    UnbalancedParens { pos: Pos },
    #[error("{pos}: variable `{var}` is instantiated twice")]
    DuplicateVariable { var: String, pos: Pos },
    #[error("{pos}: reference to undefined variable `{var}` (quote the token if it is a string constant)")]
    UndefinedVariable { var: String, pos: Pos },
    #[error("{pos}: empty graph")]
    EmptyGraph { pos: Pos },
    #[error("{pos}: unterminated string literal")]
    UnterminatedString { pos: Pos },
    #[error("{pos}: expected {expected}, found `{found}`")]
    UnexpectedToken {
        expected: &'static str,
        found: String,
        pos: Pos,
    },
    #[error("{pos}: trailing content after graph")]
    TrailingContent { pos: Pos },
    #[error("invalid graph: {0}")]
    InvariantViolation(String),
}

impl PenmanError {
    /// Position of the error, when it refers to a point in the input text.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            PenmanError::UnbalancedParens { pos }
            | PenmanError::DuplicateVariable { pos, .. }
            | PenmanError::UndefinedVariable { pos, .. }
            | PenmanError::EmptyGraph { pos }
            | PenmanError::UnterminatedString { pos }
            | PenmanError::UnexpectedToken { pos, .. }
            | PenmanError::TrailingContent { pos } => Some(*pos),
            PenmanError::InvariantViolation(_) => None,
        }
    }
}

/// Record-level metadata carried alongside a graph (`# ::key value` lines).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub id: Option<String>,
    pub snt: Option<String>,
    pub lang: Option<String>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self.id.is_none() && self.snt.is_none() && self.lang.is_none()
    }
}

/// A rooted, labeled AMR graph.
///
/// Variables are kept in first-appearance order; that order is the
/// deterministic basis for serialization, triple extraction, and variable
/// renaming. Graphs are immutable after construction and safe to share
/// across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmrGraph {
    variables: Vec<String>,
    var_index: HashMap<String, usize>,
    root: usize,
    /// Concept label per variable, indexed like `variables`.
    concepts: Vec<String>,
    /// (source index, role, target index), in appearance order.
    relations: Vec<(usize, String, usize)>,
    /// (source index, role, constant), in appearance order. Quoted string
    /// constants keep their quotes.
    attributes: Vec<(usize, String, String)>,
    metadata: Metadata,
}

impl AmrGraph {
    /// Builds a graph from parts, checking every structural invariant.
    pub fn new(
        root: &str,
        instances: Vec<(String, String)>,
        relations: Vec<(String, String, String)>,
        attributes: Vec<(String, String, String)>,
        metadata: Metadata,
    ) -> Result<Self, PenmanError> {
        let mut variables = Vec::with_capacity(instances.len());
        let mut var_index = HashMap::new();
        let mut concepts = Vec::with_capacity(instances.len());
        for (var, concept) in instances {
            if var_index.contains_key(&var) {
                return Err(PenmanError::InvariantViolation(format!(
                    "variable `{var}` is instantiated twice"
                )));
            }
            var_index.insert(var.clone(), variables.len());
            variables.push(var);
            concepts.push(concept);
        }
        let lookup = |v: &str| -> Result<usize, PenmanError> {
            var_index
                .get(v)
                .copied()
                .ok_or_else(|| PenmanError::InvariantViolation(format!("unknown variable `{v}`")))
        };
        let root = lookup(root)?;
        let mut rel_idx = Vec::with_capacity(relations.len());
        for (s, role, t) in relations {
            rel_idx.push((lookup(&s)?, role, lookup(&t)?));
        }
        let mut attr_idx = Vec::with_capacity(attributes.len());
        for (s, role, c) in attributes {
            attr_idx.push((lookup(&s)?, role, c));
        }
        let graph = AmrGraph {
            variables,
            var_index,
            root,
            concepts,
            relations: rel_idx,
            attributes: attr_idx,
            metadata,
        };
        graph.validate()?;
        Ok(graph)
    }

    pub(crate) fn from_indexed(
        root: usize,
        variables: Vec<String>,
        concepts: Vec<String>,
        relations: Vec<(usize, String, usize)>,
        attributes: Vec<(usize, String, String)>,
        metadata: Metadata,
    ) -> Self {
        let var_index = variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        AmrGraph {
            variables,
            var_index,
            root,
            concepts,
            relations,
            attributes,
            metadata,
        }
    }

    fn validate(&self) -> Result<(), PenmanError> {
        if self.variables.is_empty() {
            return Err(PenmanError::InvariantViolation("graph has no variables".into()));
        }
        for (_, role, _) in &self.relations {
            if role.ends_with("-of") && !INTRINSIC_OF_ROLES.contains(&role.as_str()) {
                return Err(PenmanError::InvariantViolation(format!(
                    "relation role `{role}` must be stored canonically (strip `-of` and swap endpoints)"
                )));
            }
        }
        for (_, _, constant) in &self.attributes {
            // An unquoted constant that collides with a variable name would
            // re-parse as a re-entrant reference.
            if !constant.starts_with('"') && self.var_index.contains_key(constant) {
                return Err(PenmanError::InvariantViolation(format!(
                    "attribute constant `{constant}` collides with a variable name; quote it"
                )));
            }
        }
        // Connectivity: every variable reachable from the root over
        // undirected relation edges.
        let n = self.variables.len();
        let mut seen = vec![false; n];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(v) = stack.pop() {
            for (s, _, t) in &self.relations {
                for (a, b) in [(*s, *t), (*t, *s)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(PenmanError::InvariantViolation(format!(
                "variable `{}` is not reachable from the root",
                self.variables[i]
            )));
        }
        Ok(())
    }

    /// Variables in first-appearance order.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn root(&self) -> &str {
        &self.variables[self.root]
    }

    pub(crate) fn root_index(&self) -> usize {
        self.root
    }

    pub fn var_index(&self, var: &str) -> Option<usize> {
        self.var_index.get(var).copied()
    }

    /// Concept label of a variable, by index into [`AmrGraph::variables`].
    pub fn concept(&self, idx: usize) -> &str {
        &self.concepts[idx]
    }

    pub fn concept_of(&self, var: &str) -> Option<&str> {
        self.var_index(var).map(|i| self.concept(i))
    }

    pub(crate) fn concepts(&self) -> &[String] {
        &self.concepts
    }

    /// Relation edges as (source, role, target) variable names.
    pub fn relations(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.relations.iter().map(|(s, role, t)| {
            (
                self.variables[*s].as_str(),
                role.as_str(),
                self.variables[*t].as_str(),
            )
        })
    }

    pub(crate) fn relations_indexed(&self) -> &[(usize, String, usize)] {
        &self.relations
    }

    /// Attribute edges as (source, role, constant).
    pub fn attributes(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.attributes
            .iter()
            .map(|(s, role, c)| (self.variables[*s].as_str(), role.as_str(), c.as_str()))
    }

    pub(crate) fn attributes_indexed(&self) -> &[(usize, String, String)] {
        &self.attributes
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    /// Applies a function to every concept label, preserving structure.
    pub(crate) fn map_concepts(&self, mut f: impl FnMut(usize, &str) -> String) -> AmrGraph {
        let mut g = self.clone();
        g.concepts = self
            .concepts
            .iter()
            .enumerate()
            .map(|(i, c)| f(i, c))
            .collect();
        g
    }

    /// Applies a function to every relation and attribute role.
    pub(crate) fn map_roles(&self, mut f: impl FnMut(&str) -> String) -> AmrGraph {
        let mut g = self.clone();
        for (_, role, _) in &mut g.relations {
            *role = f(role);
        }
        for (_, role, _) in &mut g.attributes {
            *role = f(role);
        }
        g
    }

    /// Applies a function to every attribute constant.
    pub(crate) fn map_constants(&self, mut f: impl FnMut(&str) -> String) -> AmrGraph {
        let mut g = self.clone();
        for (_, _, c) in &mut g.attributes {
            *c = f(c);
        }
        g
    }

    /// Serializes the graph back to Penman text. See [`print`] for the
    /// layout rules.
    pub fn to_penman(&self) -> String {
        print::serialize(self)
    }
}
