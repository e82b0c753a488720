//! Graph moves that preserve or invert the associated link, and generators
//! for the standard example families. All moves return fresh graphs; the
//! originals are never mutated.

use std::collections::{BTreeMap, BTreeSet};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::plane::{CheckerboardGraph, Dart, Edge, EdgeId, VertexId};

/// Which side of a bridge to reflect.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Side {
    Tail,
    Head,
}

/// Flips the orientation of a bridge; the associated link becomes a
/// positive mutant.
pub fn reverse_bridge(g: &CheckerboardGraph, e: EdgeId) -> Result<CheckerboardGraph> {
    if !g.bridges().contains(&e) {
        return Err(Error::NotABridge(e));
    }
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|ed| {
            if ed.id == e {
                Edge { id: ed.id, tail: ed.head, head: ed.tail }
            } else {
                *ed
            }
        })
        .collect();
    let flip = |d: Dart| if d.edge == e { d.twin() } else { d };
    let rotation: BTreeMap<VertexId, Vec<Dart>> = g
        .vertices()
        .iter()
        .map(|&v| (v, g.rotation(v).iter().map(|&d| flip(d)).collect()))
        .collect();
    let outer: Vec<Dart> = g.outer_darts().iter().map(|&d| flip(d)).collect();
    CheckerboardGraph::new(g.vertices().to_vec(), edges, rotation, outer)
}

/// Reverses every edge; the associated link is the inverse −L.
pub fn reverse_all(g: &CheckerboardGraph) -> CheckerboardGraph {
    g.reverse_all_edges()
}

/// Reverses a bridge and mirrors one of the two components it separates;
/// the associated link is unchanged.
pub fn reflect_component_and_reverse(
    g: &CheckerboardGraph,
    e: EdgeId,
) -> Result<CheckerboardGraph> {
    reflect_side_and_reverse(g, e, Side::Head)
}

pub fn reflect_side_and_reverse(
    g: &CheckerboardGraph,
    e: EdgeId,
    side: Side,
) -> Result<CheckerboardGraph> {
    if !g.bridges().contains(&e) {
        return Err(Error::NotABridge(e));
    }
    let edge = *g.edge(e).expect("bridge id exists");
    let anchor = match side {
        Side::Tail => edge.tail,
        Side::Head => edge.head,
    };
    // Vertices on the chosen side of g - e.
    let mut side_set = BTreeSet::from([anchor]);
    let mut frontier = vec![anchor];
    while let Some(v) = frontier.pop() {
        for ed in g.edges() {
            if ed.id == e {
                continue;
            }
            for (a, b) in [(ed.tail, ed.head), (ed.head, ed.tail)] {
                if a == v && side_set.insert(b) {
                    frontier.push(b);
                }
            }
        }
    }
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|ed| {
            if ed.id == e {
                Edge { id: ed.id, tail: ed.head, head: ed.tail }
            } else {
                *ed
            }
        })
        .collect();
    let flip = |d: Dart| if d.edge == e { d.twin() } else { d };
    let rotation: BTreeMap<VertexId, Vec<Dart>> = g
        .vertices()
        .iter()
        .map(|&v| {
            let mut rot: Vec<Dart> = g.rotation(v).iter().map(|&d| flip(d)).collect();
            if side_set.contains(&v) {
                rot.reverse();
            }
            (v, rot)
        })
        .collect();
    // Bridges of a valid graph lie on the unbounded face, so a bridge dart
    // is always a sound outer designation for its component.
    let mut outer: Vec<Dart> = g
        .outer_darts()
        .iter()
        .filter(|&&d| {
            let comp_vertex = g.dart_tail(d);
            comp_vertex != edge.tail
                && comp_vertex != edge.head
                && !side_set.contains(&comp_vertex)
                && !same_component(g, comp_vertex, edge.tail)
        })
        .copied()
        .map(flip)
        .collect();
    outer.push(Dart::fwd(e));
    outer.sort_unstable();
    CheckerboardGraph::new(g.vertices().to_vec(), edges, rotation, outer)
}

fn same_component(g: &CheckerboardGraph, a: VertexId, b: VertexId) -> bool {
    g.components().iter().any(|c| c.contains(&a) && c.contains(&b))
}

/// All cyclic rearrangements of the branches around a cut vertex; the
/// (k−1)! results share the fingerprint of the input (positive mutants).
pub fn cut_vertex_mutants(
    g: &CheckerboardGraph,
    v: VertexId,
) -> Result<Vec<CheckerboardGraph>> {
    if !g.cut_vertices().contains(&v) {
        return Err(Error::NotACutVertex(v));
    }
    let branches = branch_components(g, v);
    let k = branches.len();
    debug_assert!(k >= 2);
    // Rotation blocks at v, one contiguous block per branch.
    let rot = g.rotation(v).to_vec();
    let branch_of = |d: &Dart| -> usize {
        let other = if g.dart_tail(*d) == v { g.dart_head(*d) } else { g.dart_tail(*d) };
        branches
            .iter()
            .position(|b| b.contains(&other))
            .expect("neighbour lies in a branch")
    };
    // Rotate the list so a block boundary comes first.
    let n = rot.len();
    let cut = (0..n)
        .find(|&i| branch_of(&rot[i]) != branch_of(&rot[(i + n - 1) % n]))
        .unwrap_or(0);
    let rotated: Vec<Dart> = (0..n).map(|i| rot[(cut + i) % n]).collect();
    let mut blocks: Vec<(usize, Vec<Dart>)> = Vec::new();
    for d in rotated {
        let b = branch_of(&d);
        match blocks.last_mut() {
            Some((last, block)) if *last == b => block.push(d),
            _ => blocks.push((b, vec![d])),
        }
    }
    if blocks.len() != k {
        return Err(Error::Internal(format!(
            "branches of cut vertex {v} are not contiguous in the rotation"
        )));
    }
    let mut out = Vec::new();
    let tail_blocks: Vec<Vec<Dart>> = blocks[1..].iter().map(|(_, b)| b.clone()).collect();
    for perm in permutations(tail_blocks.len()) {
        let mut new_rot = blocks[0].1.clone();
        for &i in &perm {
            new_rot.extend(tail_blocks[i].iter().copied());
        }
        let mut rotation: BTreeMap<VertexId, Vec<Dart>> = g
            .vertices()
            .iter()
            .map(|&u| (u, g.rotation(u).to_vec()))
            .collect();
        rotation.insert(v, new_rot);
        // The unbounded region still touches every branch, so the old outer
        // designation survives the rearrangement.
        out.push(CheckerboardGraph::new(
            g.vertices().to_vec(),
            g.edges().to_vec(),
            rotation,
            g.outer_darts().to_vec(),
        )?);
    }
    Ok(out)
}

fn branch_components(g: &CheckerboardGraph, v: VertexId) -> Vec<BTreeSet<VertexId>> {
    let mut remaining: BTreeSet<VertexId> =
        g.vertices().iter().copied().filter(|&u| u != v).collect();
    let mut branches = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut comp = BTreeSet::from([start]);
        remaining.remove(&start);
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            for ed in g.edges() {
                for (a, b) in [(ed.tail, ed.head), (ed.head, ed.tail)] {
                    if a == u && b != v && remaining.remove(&b) {
                        comp.insert(b);
                        frontier.push(b);
                    }
                }
            }
        }
        branches.push(comp);
    }
    branches.retain(|c| {
        g.edges()
            .iter()
            .any(|e| (e.tail == v && c.contains(&e.head)) || (e.head == v && c.contains(&e.tail)))
    });
    branches
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(slot, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Reverses the cyclic orderings around one bipartition class of a tree;
/// the associated link becomes −L.
pub fn tree_half_reverse(
    g: &CheckerboardGraph,
    subset: &BTreeSet<VertexId>,
) -> Result<CheckerboardGraph> {
    if !g.is_connected() || g.edge_count() + 1 != g.vertex_count() {
        return Err(Error::InvalidGraph("half-reverse needs a tree".into()));
    }
    for e in g.edges() {
        if subset.contains(&e.tail) == subset.contains(&e.head) {
            return Err(Error::InvalidVertexCover);
        }
    }
    let rotation: BTreeMap<VertexId, Vec<Dart>> = g
        .vertices()
        .iter()
        .map(|&v| {
            let mut rot = g.rotation(v).to_vec();
            if subset.contains(&v) {
                rot.reverse();
            }
            (v, rot)
        })
        .collect();
    CheckerboardGraph::new(
        g.vertices().to_vec(),
        g.edges().to_vec(),
        rotation,
        g.outer_darts().to_vec(),
    )
}

/// Standard and alternative positive braid words for the torus link
/// T(p,q): `(σ₁ ⋯ σ_{p−1})^q` and the staircase word
/// `(σ_q ⋯ σ_{q+p−1})(σ_{q−1} ⋯ σ_{q+p−2}) ⋯ (σ₁ ⋯ σ_p)`, whose linking
/// graph is the mirror of the standard word's.
pub fn torus_words(p: u32, q: u32) -> Result<(BraidWord, BraidWord)> {
    if p < 2 || q < 2 {
        return Err(Error::ParameterRange(format!("torus parameters ({p},{q})")));
    }
    let mut standard = Vec::new();
    for _ in 0..q {
        standard.extend(1..p);
    }
    let mut alternative = Vec::new();
    for block in (0..q).rev() {
        alternative.extend(block + 1..block + 1 + p);
    }
    Ok((
        BraidWord::new(p, standard)?,
        BraidWord::new(p + q, alternative)?,
    ))
}

/// Coherently directed plane cycle on n vertices; the bounded face is black.
pub fn cycle_graph(n: u32) -> Result<CheckerboardGraph> {
    if n < 3 {
        return Err(Error::ParameterRange(format!("cycle length {n}")));
    }
    let vertices: Vec<VertexId> = (1..=n).collect();
    let edges: Vec<Edge> = (1..=n)
        .map(|i| Edge { id: i, tail: i, head: if i == n { 1 } else { i + 1 } })
        .collect();
    let rotation: BTreeMap<VertexId, Vec<Dart>> = (1..=n)
        .map(|i| {
            let prev = if i == 1 { n } else { i - 1 };
            (i, vec![Dart::fwd(i), Dart::rev(prev)])
        })
        .collect();
    CheckerboardGraph::new(vertices, edges, rotation, vec![Dart::rev(1)])
}

/// Directed path v1 → v2 → … → vn.
pub fn path_graph(n: u32) -> Result<CheckerboardGraph> {
    if n < 1 {
        return Err(Error::ParameterRange("path needs a vertex".into()));
    }
    let vertices: Vec<VertexId> = (1..=n).collect();
    let edges: Vec<Edge> = (1..n).map(|i| Edge { id: i, tail: i, head: i + 1 }).collect();
    let rotation: BTreeMap<VertexId, Vec<Dart>> = (1..=n)
        .map(|i| {
            let mut rot = Vec::new();
            if i > 1 {
                rot.push(Dart::rev(i - 1));
            }
            if i < n {
                rot.push(Dart::fwd(i));
            }
            (i, rot)
        })
        .collect();
    let outer = if n > 1 { vec![Dart::fwd(1)] } else { Vec::new() };
    CheckerboardGraph::new(vertices, edges, rotation, outer)
}

/// Star with k edges directed from the centre (vertex 1) to the leaves.
pub fn star(k: u32) -> Result<CheckerboardGraph> {
    if k < 1 {
        return Err(Error::ParameterRange("star needs an edge".into()));
    }
    let vertices: Vec<VertexId> = (1..=k + 1).collect();
    let edges: Vec<Edge> = (1..=k).map(|i| Edge { id: i, tail: 1, head: i + 1 }).collect();
    let mut rotation: BTreeMap<VertexId, Vec<Dart>> =
        BTreeMap::from([(1, (1..=k).map(Dart::fwd).collect())]);
    for i in 1..=k {
        rotation.insert(i + 1, vec![Dart::rev(i)]);
    }
    CheckerboardGraph::new(vertices, edges, rotation, vec![Dart::fwd(1)])
}
