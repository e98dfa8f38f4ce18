//! Smatch scoring: the maximum-F1 triple match between two AMR graphs over
//! injective variable mappings.
//!
//! Two search routes are provided. [`score`] is the standard procedure: a
//! greedy "smart" start plus random restarts, each refined by hill climbing
//! over single-variable moves and pairwise swaps. [`score_exact`] enumerates
//! every injective mapping of the smaller variable set into the larger and
//! is the oracle the hill climber is tested against; it is only feasible for
//! small graphs.

mod context;
mod search;

pub use context::matched_triples;

use crate::penman::AmrGraph;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SmatchError {
    #[error("mapping is not injective: `{var_a}` and `{var_b}` both map to `{image}`")]
    MappingNotInjective {
        var_a: String,
        var_b: String,
        image: String,
    },
    #[error("mapping names unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("graphs too large for exhaustive scoring: {mappings} candidate mappings exceeds the cap of {cap}")]
    GraphTooLarge { mappings: u128, cap: u128 },
}

/// Decides whether two labels (concepts or attribute constants) count as
/// matching. Implementations must be reflexive and symmetric.
pub trait ConceptMatch {
    fn matches(&self, a: &str, b: &str) -> bool;
}

/// Plain string equality; the default once labels have been normalized.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactMatch;

impl ConceptMatch for ExactMatch {
    fn matches(&self, a: &str, b: &str) -> bool {
        a == b
    }
}

impl<F: Fn(&str, &str) -> bool> ConceptMatch for F {
    fn matches(&self, a: &str, b: &str) -> bool {
        self(a, b)
    }
}

/// A partial injective map from the variables of the left graph to the
/// variables of the right graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMapping {
    /// `image[i]` is the right-graph variable index the i-th left variable
    /// maps to, if any.
    image: Vec<Option<usize>>,
}

impl VariableMapping {
    /// The empty mapping over a left graph with `n` variables.
    pub fn empty(n: usize) -> Self {
        VariableMapping {
            image: vec![None; n],
        }
    }

    /// Builds a mapping from (left var, right var) name pairs, rejecting
    /// non-injective assignments.
    pub fn from_pairs(
        left: &AmrGraph,
        right: &AmrGraph,
        pairs: &[(&str, &str)],
    ) -> Result<Self, SmatchError> {
        let mut image = vec![None; left.num_variables()];
        let mut taken: Vec<Option<usize>> = vec![None; right.num_variables()];
        for (a, b) in pairs {
            let i = left
                .var_index(a)
                .ok_or_else(|| SmatchError::UnknownVariable((*a).to_string()))?;
            let j = right
                .var_index(b)
                .ok_or_else(|| SmatchError::UnknownVariable((*b).to_string()))?;
            if let Some(prev) = taken[j] {
                return Err(SmatchError::MappingNotInjective {
                    var_a: left.variables()[prev].clone(),
                    var_b: (*a).to_string(),
                    image: (*b).to_string(),
                });
            }
            taken[j] = Some(i);
            image[i] = Some(j);
        }
        Ok(VariableMapping { image })
    }

    /// The identity-by-position mapping (i → i), for same-shape graphs.
    pub fn identity(n: usize) -> Self {
        VariableMapping {
            image: (0..n).map(Some).collect(),
        }
    }

    pub(crate) fn from_image(image: Vec<Option<usize>>) -> Self {
        VariableMapping { image }
    }

    pub(crate) fn image(&self) -> &[Option<usize>] {
        &self.image
    }

    /// Mapped (left, right) variable name pairs, in left-variable order.
    pub fn pairs<'g>(&self, left: &'g AmrGraph, right: &'g AmrGraph) -> Vec<(&'g str, &'g str)> {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, j)| {
                j.map(|j| (left.variables()[i].as_str(), right.variables()[j].as_str()))
            })
            .collect()
    }

    /// Encoding used for deterministic tie-breaks: the image vector with
    /// "unmapped" sorting after every concrete index.
    pub(crate) fn order_key(&self, unmapped: usize) -> Vec<usize> {
        self.image.iter().map(|j| j.unwrap_or(unmapped)).collect()
    }
}

/// The result of scoring a pair of graphs.
#[derive(Debug, Clone)]
pub struct SmatchScore {
    pub matched: usize,
    pub total_left: usize,
    pub total_right: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub best_mapping: VariableMapping,
    /// True when either side has an empty triple set; scores are then
    /// defined as zero rather than NaN.
    pub degenerate: bool,
}

impl SmatchScore {
    pub(crate) fn from_counts(matched: usize, t1: usize, t2: usize, mapping: VariableMapping) -> Self {
        let degenerate = t1 == 0 || t2 == 0;
        let (precision, recall, f1) = if degenerate {
            (0.0, 0.0, 0.0)
        } else {
            (
                matched as f64 / t1 as f64,
                matched as f64 / t2 as f64,
                2.0 * matched as f64 / (t1 + t2) as f64,
            )
        };
        SmatchScore {
            matched,
            total_left: t1,
            total_right: t2,
            precision,
            recall,
            f1,
            best_mapping: mapping,
            degenerate,
        }
    }

    /// Exact equality test on integer counts: true iff every triple of both
    /// graphs is matched. This is the binary "equivalent" criterion; never
    /// compare the floating F1 against 1.0.
    pub fn is_perfect(&self) -> bool {
        !self.degenerate && self.matched == self.total_left && self.matched == self.total_right
    }
}

/// Options for [`score`].
#[derive(Debug, Clone, Copy)]
pub struct ScoreOptions {
    /// Number of independent searches; the first uses the greedy start.
    pub restarts: usize,
    /// Seed from which every restart's RNG stream is derived.
    pub seed: u64,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            restarts: 4,
            seed: 0,
        }
    }
}

/// Upper bound on mappings [`score_exact`] will enumerate, over and above
/// the variable-count cap, so a tiny graph paired with a huge one cannot
/// trigger a factorial blowup.
pub const EXACT_ENUMERATION_CAP: u128 = 10_000_000;

/// Default cap on `min(|vars|, |vars|)` for [`score_exact`].
pub const DEFAULT_ORACLE_CAP: usize = 8;

/// Hill-climbing Smatch with `opts.restarts` restarts. Deterministic for a
/// fixed `(seed, restarts)`; the matched count never exceeds
/// [`score_exact`]'s on graphs the oracle can handle.
pub fn score<M: ConceptMatch + ?Sized>(
    g1: &AmrGraph,
    g2: &AmrGraph,
    matcher: &M,
    opts: ScoreOptions,
) -> SmatchScore {
    search::hill_climb_score(g1, g2, matcher, opts)
}

/// Exhaustive Smatch over every injection of the smaller variable set into
/// the larger, with `cap` bounding the smaller side (see
/// [`DEFAULT_ORACLE_CAP`]). Ties on the matched count are broken toward the
/// lexicographically smallest mapping.
pub fn score_exact<M: ConceptMatch + ?Sized>(
    g1: &AmrGraph,
    g2: &AmrGraph,
    matcher: &M,
    cap: usize,
) -> Result<SmatchScore, SmatchError> {
    search::exact_score(g1, g2, matcher, cap)
}
