//! The canonical vertex enumeration behind the twist order: acyclic
//! orientations, the Shi correspondence with vertex enumerations, flow
//! differences and push-down moves certifying that all compliant
//! enumerations give one conjugacy class of Coxeter elements.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::plane::{CheckerboardGraph, EdgeId, VertexId};

/// An acyclic orientation, stored as the set of edges reversed relative to
/// the checkerboard orientation of the graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AcyclicOrientation {
    reversed: BTreeSet<EdgeId>,
}

impl AcyclicOrientation {
    pub fn reversed_edges(&self) -> &BTreeSet<EdgeId> {
        &self.reversed
    }

    /// Directed (tail, head) pairs under this orientation.
    pub fn directed_edges(&self, g: &CheckerboardGraph) -> Vec<(VertexId, VertexId)> {
        g.edges()
            .iter()
            .map(|e| {
                if self.reversed.contains(&e.id) {
                    (e.head, e.tail)
                } else {
                    (e.tail, e.head)
                }
            })
            .collect()
    }

    pub fn is_sink(&self, g: &CheckerboardGraph, v: VertexId) -> bool {
        self.directed_edges(g).iter().all(|&(tail, _)| tail != v)
            && self.directed_edges(g).iter().any(|&(_, head)| head == v)
    }
}

/// A listing of every vertex exactly once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Enumeration(pub Vec<VertexId>);

impl Enumeration {
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.0.iter().position(|&u| u == v)
    }
}

/// Reverses every selected edge; errors when the result has a directed
/// cycle, which signals an invalid condition-2 witness.
pub fn orientation_from_selection(
    g: &CheckerboardGraph,
    selection: &BTreeSet<EdgeId>,
) -> Result<AcyclicOrientation> {
    if g.has_directed_cycle(selection) {
        return Err(Error::CyclicResult);
    }
    Ok(AcyclicOrientation { reversed: selection.clone() })
}

/// Emits all current sources in ascending vertex id, deletes them, and
/// recurses; a deterministic representative of the Shi class.
pub fn enumeration_from_orientation(
    g: &CheckerboardGraph,
    o: &AcyclicOrientation,
) -> Enumeration {
    let mut indegree: BTreeMap<VertexId, usize> = g.vertices().iter().map(|&v| (v, 0)).collect();
    let mut out: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (tail, head) in o.directed_edges(g) {
        out.entry(tail).or_default().push(head);
        *indegree.get_mut(&head).unwrap() += 1;
    }
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut batch: Vec<VertexId> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&v, _)| v)
        .collect();
    while !batch.is_empty() {
        batch.sort_unstable();
        let mut next = BTreeSet::new();
        for &v in &batch {
            order.push(v);
        }
        for &v in &batch {
            for &w in out.get(&v).map(|a| a.as_slice()).unwrap_or(&[]) {
                let d = indegree.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 0 {
                    next.insert(w);
                }
            }
        }
        batch = next.into_iter().collect();
    }
    debug_assert_eq!(order.len(), g.vertex_count(), "orientation must be acyclic");
    Enumeration(order)
}

/// Shi inverse: orient each edge toward the endpoint of higher index.
pub fn orientation_from_enumeration(
    g: &CheckerboardGraph,
    e: &Enumeration,
) -> AcyclicOrientation {
    let pos: BTreeMap<VertexId, usize> =
        e.0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let reversed = g
        .edges()
        .iter()
        .filter(|edge| pos[&edge.tail] > pos[&edge.head])
        .map(|edge| edge.id)
        .collect();
    AcyclicOrientation { reversed }
}

/// The twist order of a connected valid checkerboard graph: reverse the
/// first condition-2 witness, then enumerate sources. Every bounded face's
/// vertices appear as one cyclic rotation of its boundary cycle, clockwise
/// for black and anticlockwise for white regions.
pub fn twist_order(g: &CheckerboardGraph) -> Result<Enumeration> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::InvalidGraph("twist order needs a connected graph".into()));
    }
    let report = g.validate();
    let witness = report
        .witness
        .ok_or_else(|| Error::InvalidGraph("no condition-2 witness".into()))?;
    if !report.condition1_ok {
        return Err(Error::InvalidGraph("condition 1 fails".into()));
    }
    let orientation = orientation_from_selection(g, &witness)?;
    let enumeration = enumeration_from_orientation(g, &orientation);
    debug_assert!(verify_enumeration(g, &enumeration));
    Ok(enumeration)
}

/// Checks the cyclic-order condition on every bounded face: the vertices of
/// the face, read in enumeration order, must form one rotation of the
/// boundary cycle taken in its coherent direction.
pub fn verify_enumeration(g: &CheckerboardGraph, e: &Enumeration) -> bool {
    let faces = g.faces();
    for face in faces.iter().filter(|f| f.bounded) {
        let Ok(cycle) = g.coherent_cycle(face) else {
            return false;
        };
        let Some(positions) = cycle
            .iter()
            .map(|&v| e.position(v))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let k = cycle.len();
        let start = (0..k)
            .min_by_key(|&i| positions[i])
            .expect("faces have at least three vertices");
        let ordered = (0..k).all(|step| {
            step + 1 == k || positions[(start + step) % k] < positions[(start + step + 1) % k]
        });
        if !ordered {
            return false;
        }
    }
    true
}

/// Flow difference of an edge set interpreted as reversals, one integer per
/// bounded face: edges traversed along the coherent boundary cycle minus
/// edges traversed against it. Faces are listed in `faces()` order.
pub fn flow_difference(g: &CheckerboardGraph, reversed: &BTreeSet<EdgeId>) -> Vec<i64> {
    let mut out = Vec::new();
    for face in g.faces().iter().filter(|f| f.bounded) {
        // Black faces run with their traced walk, white ones against it.
        let walk_is_coherent = match g.face_colour(face) {
            Ok(crate::plane::Colour::Black) => true,
            Ok(crate::plane::Colour::White) => false,
            Err(_) => true,
        };
        let mut fd = 0i64;
        for dart in &face.walk {
            let along_walk = dart.dir == crate::plane::Dir::Fwd;
            let flipped = reversed.contains(&dart.edge);
            let agrees = along_walk ^ flipped;
            fd += if agrees == walk_is_coherent { 1 } else { -1 };
        }
        out.push(fd);
    }
    out
}

/// Flow difference of an acyclic orientation.
pub fn flow_difference_of(g: &CheckerboardGraph, o: &AcyclicOrientation) -> Vec<i64> {
    flow_difference(g, &o.reversed)
}

/// Reverses all edges at a sink, yielding another acyclic orientation with
/// the same flow difference.
pub fn push_down(
    g: &CheckerboardGraph,
    o: &AcyclicOrientation,
    v: VertexId,
) -> Result<AcyclicOrientation> {
    if !o.is_sink(g, v) {
        return Err(Error::NotASink(v));
    }
    let mut reversed = o.reversed.clone();
    for e in g.edges().iter().filter(|e| e.tail == v || e.head == v) {
        if !reversed.remove(&e.id) {
            reversed.insert(e.id);
        }
    }
    let out = AcyclicOrientation { reversed };
    debug_assert!(!g.has_directed_cycle(&out.reversed), "push-down preserves acyclicity");
    Ok(out)
}

/// Two acyclic orientations lie in the same Coxeter class iff their flow
/// differences agree. On graphs with at most ten vertices a breadth-first
/// search over push-down moves must then produce an explicit certificate.
pub fn same_coxeter_class(
    g: &CheckerboardGraph,
    o1: &AcyclicOrientation,
    o2: &AcyclicOrientation,
) -> (bool, Option<Vec<VertexId>>) {
    if flow_difference_of(g, o1) != flow_difference_of(g, o2) {
        return (false, None);
    }
    if g.vertex_count() > 10 {
        return (true, None);
    }
    let certificate = push_down_certificate(g, o1, o2);
    assert!(
        certificate.is_some(),
        "equal flow differences must admit a push-down certificate on small graphs"
    );
    (true, certificate)
}

fn push_down_certificate(
    g: &CheckerboardGraph,
    from: &AcyclicOrientation,
    to: &AcyclicOrientation,
) -> Option<Vec<VertexId>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut seen: BTreeSet<AcyclicOrientation> = BTreeSet::from([from.clone()]);
    let mut queue: VecDeque<(AcyclicOrientation, Vec<VertexId>)> =
        VecDeque::from([(from.clone(), Vec::new())]);
    while let Some((state, path)) = queue.pop_front() {
        for &v in g.vertices() {
            if !state.is_sink(g, v) {
                continue;
            }
            let next = push_down(g, &state, v).expect("v is a sink");
            if !seen.insert(next.clone()) {
                continue;
            }
            let mut next_path = path.clone();
            next_path.push(v);
            if next == *to {
                return Some(next_path);
            }
            queue.push_back((next, next_path));
        }
    }
    None
}
