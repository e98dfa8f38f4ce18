//! Precomputed pair-comparison state: everything needed to count matched
//! triples for a candidate mapping without touching strings again.

use std::collections::HashMap;

use crate::penman::AmrGraph;

use super::{ConceptMatch, SmatchError, VariableMapping};

pub(super) struct MatchContext {
    pub n1: usize,
    pub n2: usize,
    pub total_left: usize,
    pub total_right: usize,
    root1: usize,
    root2: usize,
    /// concept_ok[i][j]: does the i-th left concept match the j-th right one.
    concept_ok: Vec<Vec<bool>>,
    /// Left relation edges with interned roles.
    rel1: Vec<(usize, u32, usize)>,
    /// Right relation edge multiset, keyed by (src, role, tgt).
    rel2: HashMap<(usize, u32, usize), u32>,
    /// For each left attribute: source variable and the right-side
    /// attributes (by index) it can match.
    attr1: Vec<(usize, Vec<usize>)>,
    /// Source variable of each right attribute.
    attr2_src: Vec<usize>,
}

impl MatchContext {
    pub fn new<M: ConceptMatch + ?Sized>(g1: &AmrGraph, g2: &AmrGraph, matcher: &M) -> Self {
        let n1 = g1.num_variables();
        let n2 = g2.num_variables();
        let concept_ok: Vec<Vec<bool>> = (0..n1)
            .map(|i| {
                (0..n2)
                    .map(|j| matcher.matches(g1.concept(i), g2.concept(j)))
                    .collect()
            })
            .collect();

        let mut roles: HashMap<String, u32> = HashMap::new();
        let intern = |role: &str, roles: &mut HashMap<String, u32>| -> u32 {
            if let Some(id) = roles.get(role) {
                *id
            } else {
                let id = roles.len() as u32;
                roles.insert(role.to_string(), id);
                id
            }
        };

        // Interning borrows role strings from both graphs; collect left
        // first, then right, resolving through the same table.
        let mut rel1 = Vec::with_capacity(g1.num_relations());
        let rel1_raw: Vec<(usize, &str, usize)> = g1
            .relations_indexed()
            .iter()
            .map(|(s, r, t)| (*s, r.as_str(), *t))
            .collect();
        let rel2_raw: Vec<(usize, &str, usize)> = g2
            .relations_indexed()
            .iter()
            .map(|(s, r, t)| (*s, r.as_str(), *t))
            .collect();
        for (s, r, t) in &rel1_raw {
            let rid = intern(r, &mut roles);
            rel1.push((*s, rid, *t));
        }
        let mut rel2: HashMap<(usize, u32, usize), u32> = HashMap::new();
        for (s, r, t) in &rel2_raw {
            let rid = intern(r, &mut roles);
            *rel2.entry((*s, rid, *t)).or_insert(0) += 1;
        }

        // Attribute candidates: same role, matching constant.
        let attrs1: Vec<(usize, &str, &str)> = g1
            .attributes_indexed()
            .iter()
            .map(|(s, r, c)| (*s, r.as_str(), c.as_str()))
            .collect();
        let attrs2: Vec<(usize, &str, &str)> = g2
            .attributes_indexed()
            .iter()
            .map(|(s, r, c)| (*s, r.as_str(), c.as_str()))
            .collect();
        let attr1 = attrs1
            .iter()
            .map(|(s1, r1, c1)| {
                let cands = attrs2
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, r2, c2))| r1 == r2 && matcher.matches(c1, c2))
                    .map(|(k, _)| k)
                    .collect();
                (*s1, cands)
            })
            .collect();
        let attr2_src = attrs2.iter().map(|(s, _, _)| *s).collect();

        MatchContext {
            n1,
            n2,
            total_left: n1 + 1 + g1.num_relations() + g1.num_attributes(),
            total_right: n2 + 1 + g2.num_relations() + g2.num_attributes(),
            root1: g1.root_index(),
            root2: g2.root_index(),
            concept_ok,
            rel1,
            rel2,
            attr1,
            attr2_src,
        }
    }

    pub fn concept_ok(&self, i: usize, j: usize) -> bool {
        self.concept_ok[i][j]
    }

    /// Counts the left triples whose image under `image` is present on the
    /// right. Right-side triples are consumed at most once, so the count
    /// never exceeds `min(total_left, total_right)` even with duplicate
    /// edges or a fuzzy matcher.
    pub fn matched(&self, image: &[Option<usize>]) -> usize {
        let mut matched = 0usize;

        for (i, j) in image.iter().enumerate() {
            if let Some(j) = j {
                if self.concept_ok[i][*j] {
                    matched += 1;
                }
            }
        }

        // Top triples pair roots; same concept test as instances.
        if image[self.root1] == Some(self.root2) && self.concept_ok[self.root1][self.root2] {
            matched += 1;
        }

        let mut rel_used: HashMap<(usize, u32, usize), u32> = HashMap::new();
        for (s, role, t) in &self.rel1 {
            let (Some(ms), Some(mt)) = (image[*s], image[*t]) else {
                continue;
            };
            let key = (ms, *role, mt);
            let Some(avail) = self.rel2.get(&key) else {
                continue;
            };
            let used = rel_used.entry(key).or_insert(0);
            if *used < *avail {
                *used += 1;
                matched += 1;
            }
        }

        let mut attr_used = vec![false; self.attr2_src.len()];
        for (src, cands) in &self.attr1 {
            let Some(ms) = image[*src] else { continue };
            for &k in cands {
                if !attr_used[k] && self.attr2_src[k] == ms {
                    attr_used[k] = true;
                    matched += 1;
                    break;
                }
            }
        }

        matched
    }
}

/// Counts the triples of `g1` matched in `g2` under an explicit mapping.
///
/// An Instance or Top triple matches when the variables correspond and the
/// concept labels satisfy the matcher; a Relation triple when both endpoints
/// correspond and the roles are equal; an Attribute triple when the source
/// variables correspond, the roles are equal, and the constants satisfy the
/// matcher.
pub fn matched_triples<M: ConceptMatch + ?Sized>(
    g1: &AmrGraph,
    g2: &AmrGraph,
    mapping: &VariableMapping,
    matcher: &M,
) -> Result<usize, SmatchError> {
    let image = mapping.image();
    if image.len() != g1.num_variables() {
        return Err(SmatchError::UnknownVariable(format!(
            "mapping covers {} variables, graph has {}",
            image.len(),
            g1.num_variables()
        )));
    }
    let mut taken: Vec<Option<usize>> = vec![None; g2.num_variables()];
    for (i, j) in image.iter().enumerate() {
        if let Some(j) = j {
            if *j >= g2.num_variables() {
                return Err(SmatchError::UnknownVariable(format!(
                    "mapping image {j} out of range"
                )));
            }
            if let Some(prev) = taken[*j] {
                return Err(SmatchError::MappingNotInjective {
                    var_a: g1.variables()[prev].clone(),
                    var_b: g1.variables()[i].clone(),
                    image: g2.variables()[*j].clone(),
                });
            }
            taken[*j] = Some(i);
        }
    }
    Ok(MatchContext::new(g1, g2, matcher).matched(image))
}
