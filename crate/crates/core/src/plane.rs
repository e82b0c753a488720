//! Oriented plane graphs carried by rotation systems.
//!
//! A graph is stored as vertices, directed edges, one counterclockwise
//! rotation list of outgoing half-edges per vertex, and a designated
//! half-edge on the unbounded face of every component that has edges.
//! Faces are traced with `next(h) = rotation-successor at the head of the
//! twin of h`; with counterclockwise rotation lists this walks every bounded
//! face clockwise (the face lies to the right of each half-edge). A bounded
//! face whose edge orientations agree with the traced walk is therefore a
//! clockwise cycle and coloured black; one whose orientations oppose it is
//! anticlockwise and white.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Fwd,
    Rev,
}

/// A directed half-edge: `Fwd` runs tail to head, `Rev` the other way.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub dir: Dir,
}

impl Dart {
    pub fn fwd(edge: EdgeId) -> Self {
        Dart { edge, dir: Dir::Fwd }
    }

    pub fn rev(edge: EdgeId) -> Self {
        Dart { edge, dir: Dir::Rev }
    }

    pub fn twin(self) -> Self {
        Dart {
            edge: self.edge,
            dir: match self.dir {
                Dir::Fwd => Dir::Rev,
                Dir::Rev => Dir::Fwd,
            },
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colour::Black => write!(f, "black"),
            Colour::White => write!(f, "white"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub walk: Vec<Dart>,
    pub bounded: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub condition1_ok: bool,
    pub condition1_problems: Vec<String>,
    pub condition2_ok: bool,
    pub witness: Option<BTreeSet<EdgeId>>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.condition1_ok && self.condition2_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "valid": self.valid(),
            "condition1": self.condition1_ok,
            "condition1_problems": self.condition1_problems,
            "condition2": self.condition2_ok,
            "witness": self.witness.as_ref().map(|w| w.iter().copied().collect::<Vec<_>>()),
        })
    }
}

/// Code comparison mode for [`CheckerboardGraph::canonical_code`].
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct CodeMode {
    /// Respect edge orientations.
    pub oriented: bool,
    /// Identify mirror images.
    pub mirror: bool,
}

impl CodeMode {
    pub const ORIENTED: CodeMode = CodeMode { oriented: true, mirror: false };
    pub const ORIENTED_MIRROR: CodeMode = CodeMode { oriented: true, mirror: true };
    pub const UNORIENTED: CodeMode = CodeMode { oriented: false, mirror: false };
    pub const UNORIENTED_MIRROR: CodeMode = CodeMode { oriented: false, mirror: true };
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckerboardGraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    rotation: BTreeMap<VertexId, Vec<Dart>>,
    /// One dart on the unbounded walk of each component that has edges.
    outer: Vec<Dart>,
}

impl CheckerboardGraph {
    pub fn new(
        vertices: Vec<VertexId>,
        edges: Vec<Edge>,
        rotation: BTreeMap<VertexId, Vec<Dart>>,
        outer: Vec<Dart>,
    ) -> Result<Self> {
        let mut g = CheckerboardGraph { vertices, edges, rotation, outer };
        g.vertices.sort_unstable();
        g.check_structure()?;
        Ok(g)
    }

    fn check_structure(&self) -> Result<()> {
        let vs: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        if vs.len() != self.vertices.len() {
            return Err(Error::InvalidGraph("duplicate vertex id".into()));
        }
        let mut edge_ids = BTreeSet::new();
        let mut endpoints = BTreeSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id) {
                return Err(Error::InvalidGraph(format!("duplicate edge id {}", e.id)));
            }
            if e.tail == e.head {
                return Err(Error::InvalidGraph(format!("edge {} is a loop", e.id)));
            }
            if !vs.contains(&e.tail) || !vs.contains(&e.head) {
                return Err(Error::InvalidGraph(format!("edge {} has an unknown endpoint", e.id)));
            }
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            if !endpoints.insert(key) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge between {} and {}",
                    key.0, key.1
                )));
            }
        }
        // Rotation lists must contain each incident outgoing dart exactly once.
        for &v in &self.vertices {
            let expected: BTreeSet<Dart> = self
                .edges
                .iter()
                .flat_map(|e| {
                    let mut darts = Vec::new();
                    if e.tail == v {
                        darts.push(Dart::fwd(e.id));
                    }
                    if e.head == v {
                        darts.push(Dart::rev(e.id));
                    }
                    darts
                })
                .collect();
            let listed = self.rotation.get(&v).cloned().unwrap_or_default();
            let listed_set: BTreeSet<Dart> = listed.iter().copied().collect();
            if listed.len() != listed_set.len() || listed_set != expected {
                return Err(Error::InvalidGraph(format!(
                    "rotation list at vertex {v} does not match its incident half-edges"
                )));
            }
        }
        if self.rotation.keys().any(|v| !vs.contains(v)) {
            return Err(Error::InvalidGraph("rotation entry for unknown vertex".into()));
        }
        // Outer darts: exactly one per component with edges, in distinct walks.
        let comps = self.components();
        let mut edged: BTreeMap<usize, usize> = BTreeMap::new();
        for d in &self.outer {
            if self.edges.iter().all(|e| e.id != d.edge) {
                return Err(Error::InvalidGraph("outer half-edge references unknown edge".into()));
            }
            let v = self.dart_tail(*d);
            let idx = comps
                .iter()
                .position(|c| c.contains(&v))
                .expect("dart tail belongs to some component");
            *edged.entry(idx).or_insert(0) += 1;
        }
        for (idx, comp) in comps.iter().enumerate() {
            let has_edges = self.edges.iter().any(|e| comp.contains(&e.tail));
            let count = edged.get(&idx).copied().unwrap_or(0);
            if has_edges && count != 1 {
                return Err(Error::InvalidGraph(format!(
                    "component of vertex {} needs exactly one outer half-edge, found {count}",
                    comp.iter().next().unwrap()
                )));
            }
            if !has_edges && count != 0 {
                return Err(Error::InvalidGraph("outer half-edge on an edgeless component".into()));
            }
        }
        // Genus check: every edged component must satisfy V - E + F = 2.
        let faces = self.faces_raw();
        for comp in &comps {
            let e_count = self.edges.iter().filter(|e| comp.contains(&e.tail)).count();
            if e_count == 0 {
                continue;
            }
            let f_count = faces
                .iter()
                .filter(|w| comp.contains(&self.dart_tail(w[0])))
                .count();
            let euler = comp.len() as i64 - e_count as i64 + f_count as i64;
            if euler != 2 {
                return Err(Error::InvalidGraph(format!(
                    "rotation system is not planar: V - E + F = {euler} on the component of {}",
                    comp.iter().next().unwrap()
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        self.rotation.get(&v).map(|r| r.as_slice()).unwrap_or(&[])
    }

    pub fn outer_darts(&self) -> &[Dart] {
        &self.outer
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn dart_tail(&self, d: Dart) -> VertexId {
        let e = self.edge(d.edge).expect("dart references a known edge");
        match d.dir {
            Dir::Fwd => e.tail,
            Dir::Rev => e.head,
        }
    }

    pub fn dart_head(&self, d: Dart) -> VertexId {
        self.dart_tail(d.twin())
    }

    /// Rotation successor of the twin of `d` at the head of `d`.
    pub fn next_face_dart(&self, d: Dart) -> Dart {
        let u = self.dart_head(d);
        let rot = self.rotation(u);
        let idx = rot
            .iter()
            .position(|&x| x == d.twin())
            .expect("twin dart must appear in the rotation at the head");
        rot[(idx + 1) % rot.len()]
    }

    fn faces_raw(&self) -> Vec<Vec<Dart>> {
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut walks = Vec::new();
        for e in &self.edges {
            for d in [Dart::fwd(e.id), Dart::rev(e.id)] {
                if seen.contains(&d) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut cur = d;
                loop {
                    walk.push(cur);
                    seen.insert(cur);
                    cur = self.next_face_dart(cur);
                    if cur == d {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
        walks
    }

    /// All faces; a face is bounded unless its walk carries an outer dart.
    pub fn faces(&self) -> Vec<Face> {
        let outer: BTreeSet<Dart> = self.outer.iter().copied().collect();
        self.faces_raw()
            .into_iter()
            .map(|walk| {
                let bounded = !walk.iter().any(|d| outer.contains(d));
                Face { walk, bounded }
            })
            .collect()
    }

    pub fn bounded_faces(&self) -> Vec<Face> {
        self.faces().into_iter().filter(|f| f.bounded).collect()
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.tail).or_default().push(e.head);
            adj.entry(e.head).or_default().push(e.tail);
        }
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &v in &self.vertices {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([v]);
            seen.insert(v);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in adj.get(&u).map(|a| a.as_slice()).unwrap_or(&[]) {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks that a bounded face is a coherently oriented induced cycle and
    /// returns its colour: black when the edge orientations agree with the
    /// clockwise traced walk, white when they oppose it.
    pub fn face_colour(&self, face: &Face) -> Result<Colour> {
        debug_assert!(face.bounded);
        let tails: Vec<VertexId> = face.walk.iter().map(|&d| self.dart_tail(d)).collect();
        let distinct: BTreeSet<VertexId> = tails.iter().copied().collect();
        if distinct.len() != tails.len() || tails.len() < 3 {
            return Err(Error::Condition1Violation(format!(
                "face walk {tails:?} is not a simple cycle"
            )));
        }
        let fwd = face.walk.iter().filter(|d| d.dir == Dir::Fwd).count();
        if fwd != 0 && fwd != face.walk.len() {
            return Err(Error::Condition1Violation(format!(
                "face walk {tails:?} is not coherently oriented"
            )));
        }
        let spanned = self
            .edges
            .iter()
            .filter(|e| distinct.contains(&e.tail) && distinct.contains(&e.head))
            .count();
        if spanned != face.walk.len() {
            return Err(Error::Condition1Violation(format!(
                "face walk {tails:?} has a chord"
            )));
        }
        Ok(if fwd == 0 { Colour::White } else { Colour::Black })
    }

    /// Colour of every bounded face, keyed by face index in [`Self::faces`]
    /// order. Fails with `Condition1Violation` on the first bad face.
    pub fn colouring(&self) -> Result<BTreeMap<usize, Colour>> {
        let mut out = BTreeMap::new();
        for (idx, face) in self.faces().iter().enumerate() {
            if face.bounded {
                out.insert(idx, self.face_colour(face)?);
            }
        }
        Ok(out)
    }

    /// The boundary cycle of a bounded face in the direction of its edge
    /// orientations (clockwise for black faces, anticlockwise for white).
    pub fn coherent_cycle(&self, face: &Face) -> Result<Vec<VertexId>> {
        let colour = self.face_colour(face)?;
        let mut tails: Vec<VertexId> = face.walk.iter().map(|&d| self.dart_tail(d)).collect();
        if colour == Colour::White {
            // White faces run against the clockwise traced walk.
            tails.reverse();
        }
        Ok(tails)
    }

    pub fn validate(&self) -> ValidationReport {
        let faces = self.faces();
        let mut problems = Vec::new();
        for face in faces.iter().filter(|f| f.bounded) {
            if let Err(Error::Condition1Violation(msg)) = self.face_colour(face) {
                problems.push(msg);
            }
        }
        let condition1_ok = problems.is_empty();
        let witness = self.condition2_witness(&faces);
        ValidationReport {
            condition1_ok,
            condition1_problems: problems,
            condition2_ok: witness.is_some(),
            witness,
        }
    }

    /// Searches for a set of edges meeting the boundary of every bounded
    /// face exactly once whose reversal leaves the graph acyclic. Faces are
    /// processed in ascending order of their smallest boundary edge and
    /// candidate edges ascending, so the first witness found is the
    /// lexicographically least.
    fn condition2_witness(&self, faces: &[Face]) -> Option<BTreeSet<EdgeId>> {
        let mut boundaries: Vec<BTreeSet<EdgeId>> = faces
            .iter()
            .filter(|f| f.bounded)
            .map(|f| f.walk.iter().map(|d| d.edge).collect())
            .collect();
        boundaries.sort_by_key(|b| b.iter().next().copied());
        let mut selection = BTreeSet::new();
        if self.search_selection(&boundaries, 0, &mut selection) {
            Some(selection)
        } else {
            None
        }
    }

    fn search_selection(
        &self,
        boundaries: &[BTreeSet<EdgeId>],
        idx: usize,
        selection: &mut BTreeSet<EdgeId>,
    ) -> bool {
        if idx == boundaries.len() {
            return !self.has_directed_cycle(selection);
        }
        let hits = boundaries[idx].intersection(selection).count();
        match hits {
            1 => self.search_selection(boundaries, idx + 1, selection),
            0 => {
                for &e in &boundaries[idx] {
                    // Selecting e must not give any other face a second edge.
                    let overfills = boundaries.iter().enumerate().any(|(j, b)| {
                        j != idx && b.contains(&e) && b.intersection(selection).next().is_some()
                    });
                    if overfills {
                        continue;
                    }
                    selection.insert(e);
                    if self.search_selection(boundaries, idx + 1, selection) {
                        return true;
                    }
                    selection.remove(&e);
                }
                false
            }
            _ => false,
        }
    }

    /// Directed cycle test after reversing the given edge set.
    pub fn has_directed_cycle(&self, reversed: &BTreeSet<EdgeId>) -> bool {
        let mut indegree: BTreeMap<VertexId, usize> =
            self.vertices.iter().map(|&v| (v, 0)).collect();
        let mut out: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in &self.edges {
            let (tail, head) = if reversed.contains(&e.id) { (e.head, e.tail) } else { (e.tail, e.head) };
            out.entry(tail).or_default().push(head);
            *indegree.get_mut(&head).unwrap() += 1;
        }
        let mut queue: VecDeque<VertexId> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut visited = 0;
        while let Some(v) = queue.pop_front() {
            visited += 1;
            for &w in out.get(&v).map(|a| a.as_slice()).unwrap_or(&[]) {
                let d = indegree.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push_back(w);
                }
            }
        }
        visited != self.vertices.len()
    }

    /// Mirror image in the plane: all rotation lists reversed. The outer
    /// walks of the mirror are the twinned walks of the original.
    pub fn mirror(&self) -> CheckerboardGraph {
        let rotation = self
            .rotation
            .iter()
            .map(|(&v, r)| {
                let mut rev = r.clone();
                rev.reverse();
                (v, rev)
            })
            .collect();
        let mut outer: Vec<Dart> = self.outer.iter().map(|d| d.twin()).collect();
        outer.sort_unstable();
        CheckerboardGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            rotation,
            outer,
        }
    }

    /// Reverses the direction of every edge while keeping the embedding.
    pub fn reverse_all_edges(&self) -> CheckerboardGraph {
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge { id: e.id, tail: e.head, head: e.tail })
            .collect();
        let rotation = self
            .rotation
            .iter()
            .map(|(&v, r)| (v, r.iter().map(|d| d.twin()).collect()))
            .collect();
        let mut outer: Vec<Dart> = self.outer.iter().map(|d| d.twin()).collect();
        outer.sort_unstable();
        CheckerboardGraph { vertices: self.vertices.clone(), edges, rotation, outer }
    }

    /// Bridges of the underlying undirected graph.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let index: BTreeMap<VertexId, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
        for e in &self.edges {
            let (a, b) = (index[&e.tail], index[&e.head]);
            adj[a].push((b, e.id));
            adj[b].push((a, e.id));
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = BTreeSet::new();
        let mut timer = 0;
        // Iterative DFS so deep graphs cannot overflow the stack.
        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, Option<EdgeId>, usize)> = vec![(start, None, 0)];
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            while !stack.is_empty() {
                let frame = stack.len() - 1;
                let (v, via, next) = stack[frame];
                if next < adj[v].len() {
                    stack[frame].2 += 1;
                    let (w, eid) = adj[v][next];
                    if Some(eid) == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(eid), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.insert(via.expect("non-root has an entry edge"));
                        }
                    }
                }
            }
        }
        bridges
    }

    /// Cut vertices (articulation points).
    pub fn cut_vertices(&self) -> BTreeSet<VertexId> {
        let mut cuts = BTreeSet::new();
        let comps = self.components().len();
        for &v in &self.vertices {
            if self.degree(v) < 2 {
                continue;
            }
            let removed = self.delete_vertex_unchecked(v);
            let remaining_own = removed.components().len();
            // Removing v splits its component iff the count grows by > 0
            // after accounting for v's own disappearance.
            if remaining_own > comps {
                cuts.insert(v);
            }
        }
        cuts
    }

    fn delete_vertex_unchecked(&self, v: VertexId) -> CheckerboardGraph {
        let vertices: Vec<VertexId> = self.vertices.iter().copied().filter(|&u| u != v).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.tail != v && e.head != v)
            .collect();
        let keep: BTreeSet<EdgeId> = edges.iter().map(|e| e.id).collect();
        let rotation: BTreeMap<VertexId, Vec<Dart>> = self
            .rotation
            .iter()
            .filter(|(&u, _)| u != v)
            .map(|(&u, r)| (u, r.iter().copied().filter(|d| keep.contains(&d.edge)).collect()))
            .collect();
        CheckerboardGraph { vertices, edges, rotation, outer: Vec::new() }
    }

    /// Deletes a vertex and recomputes the outer designation: faces incident
    /// to the vertex merge into the unbounded region.
    pub fn delete_vertex(&self, v: VertexId) -> Result<CheckerboardGraph> {
        if !self.vertices.contains(&v) {
            return Err(Error::InvalidGraph(format!("unknown vertex {v}")));
        }
        let mut g = self.delete_vertex_unchecked(v);
        // Candidate outer darts: anything that was on the old unbounded walks
        // or on a face touching v.
        let mut candidates: BTreeSet<Dart> = BTreeSet::new();
        let outer_set: BTreeSet<Dart> = self.outer.iter().copied().collect();
        for face in self.faces() {
            let touches_v = face.walk.iter().any(|&d| self.dart_tail(d) == v);
            let is_outer = face.walk.iter().any(|d| outer_set.contains(d));
            if touches_v || is_outer {
                candidates.extend(face.walk.iter().copied());
            }
        }
        let keep: BTreeSet<EdgeId> = g.edges.iter().map(|e| e.id).collect();
        candidates.retain(|d| keep.contains(&d.edge));
        let comps = g.components();
        let mut outer = Vec::new();
        for comp in &comps {
            if g.edges.iter().all(|e| !comp.contains(&e.tail)) {
                continue;
            }
            let dart = candidates
                .iter()
                .copied()
                .find(|&d| comp.contains(&g.dart_tail(d)))
                .ok_or_else(|| {
                    Error::Internal(format!("no outer candidate for a component after deleting {v}"))
                })?;
            outer.push(dart);
        }
        outer.sort_unstable();
        g.outer = outer;
        g.check_structure()?;
        Ok(g)
    }

    /// Rotation positions at `v` whose corner lies on the unbounded region;
    /// inserting a new dart at the returned index keeps the graph plane with
    /// the new edge emanating into the outer face.
    ///
    /// A face walk passing `... d_in, d_out ...` through `v` detours through
    /// a dart inserted right after `twin(d_in)`, so the corners of the outer
    /// walk at `v` sit one past the twins of its in-darts.
    pub fn outer_corner_slots(&self, v: VertexId) -> Vec<usize> {
        let rot = self.rotation(v);
        if rot.is_empty() {
            return vec![0];
        }
        let outer_set: BTreeSet<Dart> = self.outer.iter().copied().collect();
        let mut slots = BTreeSet::new();
        for walk in self.faces_raw() {
            if !walk.iter().any(|d| outer_set.contains(d)) {
                continue;
            }
            for &d in &walk {
                if self.dart_head(d) == v {
                    let pos = rot
                        .iter()
                        .position(|&x| x == d.twin())
                        .expect("twin dart appears in the rotation at its tail");
                    slots.insert(pos + 1);
                }
            }
        }
        slots.into_iter().collect()
    }

    /// Canonical byte code: equal codes iff plane-isomorphic in the given
    /// mode, with the unbounded face respected. Rooted traversals start on
    /// every outer-walk dart (and on the mirror's when requested); the
    /// lexicographically least encoding wins.
    pub fn canonical_code(&self, mode: CodeMode) -> Result<Vec<u8>> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::InvalidGraph("canonical code needs a connected graph".into()));
        }
        if self.edges.is_empty() {
            return Ok(encode_tokens(&[1, 0]));
        }
        let mut best: Option<Vec<u16>> = None;
        let mut consider = |g: &CheckerboardGraph| {
            let outer_set: BTreeSet<Dart> = g.outer.iter().copied().collect();
            let outer_walk: Vec<Dart> = g
                .faces_raw()
                .into_iter()
                .find(|w| w.iter().any(|d| outer_set.contains(d)))
                .expect("connected graph with edges has an outer walk");
            for &root in &outer_walk {
                let code = g.encode_from(root, mode.oriented);
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        };
        consider(self);
        if mode.mirror {
            consider(&self.mirror());
        }
        Ok(encode_tokens(&best.expect("at least one root considered")))
    }

    fn encode_from(&self, root: Dart, oriented: bool) -> Vec<u16> {
        let mut tokens: Vec<u16> =
            vec![self.vertices.len() as u16, self.edges.len() as u16];
        let mut number: BTreeMap<VertexId, u16> = BTreeMap::new();
        let mut queue: VecDeque<(VertexId, Dart)> = VecDeque::new();
        let start = self.dart_tail(root);
        number.insert(start, 0);
        queue.push_back((start, root));
        while let Some((v, anchor)) = queue.pop_front() {
            let rot = self.rotation(v);
            let base = rot
                .iter()
                .position(|&d| d == anchor)
                .expect("anchor dart is outgoing at its vertex");
            tokens.push(rot.len() as u16);
            for k in 0..rot.len() {
                let d = rot[(base + k) % rot.len()];
                let u = self.dart_head(d);
                match number.get(&u) {
                    Some(&num) => tokens.push(num + 2),
                    None => {
                        let num = number.len() as u16;
                        number.insert(u, num);
                        queue.push_back((u, d.twin()));
                        tokens.push(0);
                    }
                }
                if oriented {
                    tokens.push(if d.dir == Dir::Fwd { 1 } else { 0 });
                }
            }
        }
        tokens
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .map(|&v| {
                serde_json::json!({
                    "id": v,
                    "rotation": self.rotation(v).iter().map(dart_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| serde_json::json!({"id": e.id, "tail": e.tail, "head": e.head}))
            .collect();
        let outer = match self.outer.len() {
            0 => serde_json::Value::Null,
            1 => dart_json(&self.outer[0]),
            _ => serde_json::Value::Array(self.outer.iter().map(dart_json).collect()),
        };
        serde_json::json!({"vertices": vertices, "edges": edges, "outer": outer})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Json("expected an object".into()))?;
        let mut vertices = Vec::new();
        let mut rotation = BTreeMap::new();
        for vv in obj
            .get("vertices")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Json("missing vertices array".into()))?
        {
            let id = vv
                .get("id")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| Error::Json("vertex without id".into()))? as VertexId;
            let rot = vv
                .get("rotation")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Json(format!("vertex {id} without rotation")))?
                .iter()
                .map(dart_from_json)
                .collect::<Result<Vec<Dart>>>()?;
            vertices.push(id);
            rotation.insert(id, rot);
        }
        let mut edges = Vec::new();
        for ev in obj
            .get("edges")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Json("missing edges array".into()))?
        {
            let get = |k: &str| {
                ev.get(k)
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| Error::Json(format!("edge without {k}")))
            };
            edges.push(Edge { id: get("id")? as EdgeId, tail: get("tail")? as VertexId, head: get("head")? as VertexId });
        }
        let outer = match obj.get("outer") {
            None | Some(serde_json::Value::Null) => Vec::new(),
            Some(serde_json::Value::Array(a)) => {
                a.iter().map(dart_from_json).collect::<Result<Vec<Dart>>>()?
            }
            Some(x) => vec![dart_from_json(x)?],
        };
        CheckerboardGraph::new(vertices, edges, rotation, outer)
    }

    /// DOT export; `slopes` may carry per-edge annotations (the braid route
    /// records vertical/positive/negative slope there).
    pub fn to_dot(&self, slopes: Option<&BTreeMap<EdgeId, String>>) -> String {
        let mut out = String::from("digraph checkerboard {\n");
        for &v in &self.vertices {
            out.push_str(&format!("  v{v};\n"));
        }
        for e in &self.edges {
            let comment = slopes
                .and_then(|m| m.get(&e.id))
                .map(|s| format!(" [comment=\"slope={s}\"]"))
                .unwrap_or_default();
            out.push_str(&format!("  v{} -> v{}{};\n", e.tail, e.head, comment));
        }
        for (idx, face) in self.faces().iter().enumerate() {
            if !face.bounded {
                continue;
            }
            let colour = self
                .face_colour(face)
                .map(|c| c.to_string())
                .unwrap_or_else(|_| "invalid".into());
            let verts: Vec<String> =
                face.walk.iter().map(|&d| format!("v{}", self.dart_tail(d))).collect();
            out.push_str(&format!("  // face {idx}: {colour}: {}\n", verts.join(" ")));
        }
        out.push_str("}\n");
        out
    }
}

fn dart_json(d: &Dart) -> serde_json::Value {
    serde_json::json!({"edge": d.edge, "dir": if d.dir == Dir::Fwd { "fwd" } else { "rev" }})
}

fn dart_from_json(v: &serde_json::Value) -> Result<Dart> {
    let edge = v
        .get("edge")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| Error::Json("half-edge without edge id".into()))? as EdgeId;
    let dir = match v.get("dir").and_then(|x| x.as_str()) {
        Some("fwd") => Dir::Fwd,
        Some("rev") => Dir::Rev,
        _ => return Err(Error::Json("half-edge dir must be \"fwd\" or \"rev\"".into())),
    };
    Ok(Dart { edge, dir })
}

fn encode_tokens(tokens: &[u16]) -> Vec<u8> {
    tokens.iter().flat_map(|t| t.to_be_bytes()).collect()
}

/// Joins two graphs by a new bridge from `ua` in `a` to `wb` in `b`
/// (direction `a_to_b` or reversed), attaching at the given outer-corner
/// slots. Vertex and edge ids of `b` are shifted above those of `a`.
pub fn bridge_join(
    a: &CheckerboardGraph,
    b: &CheckerboardGraph,
    ua: VertexId,
    wb: VertexId,
    slot_a: usize,
    slot_b: usize,
    a_to_b: bool,
) -> Result<CheckerboardGraph> {
    let v_off = a.vertices.iter().max().map_or(0, |&m| m + 1);
    let e_off = a
        .edges
        .iter()
        .map(|e| e.id)
        .chain(b.edges.iter().map(|e| e.id + 1))
        .max()
        .unwrap_or(0)
        + 1;
    let mut vertices = a.vertices.clone();
    vertices.extend(b.vertices.iter().map(|&v| v + v_off));
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|e| Edge {
        id: e.id + e_off,
        tail: e.tail + v_off,
        head: e.head + v_off,
    }));
    let bridge_id = edges.iter().map(|e| e.id).max().unwrap_or(0) + 1;
    let (tail, head) = if a_to_b { (ua, wb + v_off) } else { (wb + v_off, ua) };
    edges.push(Edge { id: bridge_id, tail, head });

    let mut rotation: BTreeMap<VertexId, Vec<Dart>> = BTreeMap::new();
    for (&v, r) in &a.rotation {
        rotation.insert(v, r.clone());
    }
    for (&v, r) in &b.rotation {
        rotation.insert(
            v + v_off,
            r.iter().map(|d| Dart { edge: d.edge + e_off, dir: d.dir }).collect(),
        );
    }
    let dart_at_a = if a_to_b { Dart::fwd(bridge_id) } else { Dart::rev(bridge_id) };
    let rot_a = rotation.entry(ua).or_default();
    if slot_a > rot_a.len() {
        return Err(Error::ParameterRange(format!("slot {slot_a} at vertex {ua}")));
    }
    rot_a.insert(slot_a, dart_at_a);
    let rot_b = rotation.entry(wb + v_off).or_default();
    if slot_b > rot_b.len() {
        return Err(Error::ParameterRange(format!("slot {slot_b} at vertex {wb}")));
    }
    rot_b.insert(slot_b, dart_at_a.twin());

    // The merged unbounded region carries everything that was outer before.
    let outer = if let Some(&d) = a.outer.first() {
        vec![d]
    } else if let Some(&d) = b.outer.first() {
        vec![Dart { edge: d.edge + e_off, dir: d.dir }]
    } else {
        vec![dart_at_a]
    };
    CheckerboardGraph::new(vertices, edges, rotation, outer)
}
