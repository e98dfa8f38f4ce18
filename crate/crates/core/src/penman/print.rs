//! Penman serialization.
//!
//! The writer walks the graph depth-first from the root, following relation
//! edges in stored order in both directions. Edges traversed against their
//! stored direction are written with an `-of` suffix; re-entrant targets are
//! written as bare variable references. Output is deterministic: stored
//! order is appearance order for parsed graphs and construction order for
//! built ones.

use super::AmrGraph;

pub(super) fn serialize(graph: &AmrGraph) -> String {
    let mut out = String::new();
    let mut visited = vec![false; graph.num_variables()];
    let mut rel_used = vec![false; graph.relations_indexed().len()];
    write_node(graph, graph.root_index(), 0, &mut visited, &mut rel_used, &mut out);
    out
}

fn write_node(
    graph: &AmrGraph,
    var: usize,
    depth: usize,
    visited: &mut [bool],
    rel_used: &mut [bool],
    out: &mut String,
) {
    visited[var] = true;
    out.push('(');
    out.push_str(&graph.variables()[var]);
    out.push_str(" / ");
    out.push_str(graph.concept(var));

    for (src, role, constant) in graph.attributes_indexed() {
        if *src == var {
            indent(out, depth + 1);
            out.push(':');
            out.push_str(role);
            out.push(' ');
            out.push_str(constant);
        }
    }

    loop {
        // Stored order, re-scanned after each recursion: a child subtree may
        // visit nodes that turn a pending edge into a re-entrancy.
        let mut next: Option<(usize, String, usize)> = None;
        for (i, (src, role, tgt)) in graph.relations_indexed().iter().enumerate() {
            if rel_used[i] {
                continue;
            }
            if *src == var {
                next = Some((i, role.clone(), *tgt));
                break;
            }
            if *tgt == var {
                next = Some((i, format!("{role}-of"), *src));
                break;
            }
        }
        let Some((i, role, other)) = next else { break };
        rel_used[i] = true;
        indent(out, depth + 1);
        out.push(':');
        out.push_str(&role);
        out.push(' ');
        if visited[other] {
            out.push_str(&graph.variables()[other]);
        } else {
            write_node(graph, other, depth + 1, visited, rel_used, out);
        }
    }
    out.push(')');
}

fn indent(out: &mut String, depth: usize) {
    out.push('\n');
    for _ in 0..depth {
        out.push_str("    ");
    }
}
