//! The combinatorial page surface of a checkerboard graph: one annulus per
//! vertex, one gluing rectangle per edge, one capping disc per coloured
//! bounded region. Boundary components are counted by tracing the ribbon
//! thickening of the core-curve intersection graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::plane::{CheckerboardGraph, Colour, EdgeId, VertexId};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Annulus {
    pub vertex: VertexId,
    /// Gluing rectangles in the rotation order of the vertex.
    pub rectangles: Vec<EdgeId>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rectangle {
    pub edge: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    /// +1: the tail's core curve crosses the head's positively.
    pub sign: i8,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cap {
    pub vertices: Vec<VertexId>,
    pub colour: Colour,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceComplex {
    pub annuli: Vec<Annulus>,
    pub rectangles: Vec<Rectangle>,
    pub caps: Vec<Cap>,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct SurfaceSummary {
    pub euler: i64,
    pub boundary: u32,
    pub betti1: u32,
    pub genus: u32,
    pub components: u32,
}

/// Assembles the page surface of a connected valid checkerboard graph.
pub fn build_surface(g: &CheckerboardGraph) -> Result<SurfaceComplex> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::InvalidGraph("surface needs a connected graph".into()));
    }
    let annuli = g
        .vertices()
        .iter()
        .map(|&v| Annulus {
            vertex: v,
            rectangles: g.rotation(v).iter().map(|d| d.edge).collect(),
        })
        .collect();
    let rectangles = g
        .edges()
        .iter()
        .map(|e| Rectangle { edge: e.id, tail: e.tail, head: e.head, sign: 1 })
        .collect();
    let faces = g.faces();
    let mut caps = Vec::new();
    for face in faces.iter().filter(|f| f.bounded) {
        let colour = g.face_colour(face).map_err(|e| match e {
            Error::Condition1Violation(msg) => Error::InvalidGraph(msg),
            other => other,
        })?;
        caps.push(Cap {
            vertices: face.walk.iter().map(|&d| g.dart_tail(d)).collect(),
            colour,
        });
    }
    Ok(SurfaceComplex { annuli, rectangles, caps })
}

/// One dart of the thickened intersection graph: an arc end at a crossing.
/// Slots are listed counterclockwise as (tail-out, head-out, tail-in,
/// head-in), the chart of a positive crossing of the tail curve over the
/// head curve.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Slot {
    TailOut,
    HeadOut,
    TailIn,
    HeadIn,
}

impl Slot {
    fn ccw_next(self) -> Slot {
        match self {
            Slot::TailOut => Slot::HeadOut,
            Slot::HeadOut => Slot::TailIn,
            Slot::TailIn => Slot::HeadIn,
            Slot::HeadIn => Slot::TailOut,
        }
    }
}

/// Number of boundary circles of the page: ribbon boundary components of
/// the filled core-curve system minus one per capped region.
pub fn boundary_count(surface: &SurfaceComplex) -> Result<u32> {
    if surface.annuli.len() == 1 && surface.rectangles.is_empty() {
        return Ok(2); // a plain annulus
    }
    if surface.rectangles.is_empty() {
        return Err(Error::InvalidGraph("disconnected surface complex".into()));
    }
    let is_tail: BTreeMap<(EdgeId, VertexId), bool> = surface
        .rectangles
        .iter()
        .flat_map(|r| [((r.edge, r.tail), true), ((r.edge, r.head), false)])
        .collect();
    // Arc involution: the out-slot of vertex v at crossing e pairs with the
    // in-slot of v at the rotation successor of e around v.
    let mut alpha: BTreeMap<(EdgeId, Slot), (EdgeId, Slot)> = BTreeMap::new();
    for annulus in &surface.annuli {
        let v = annulus.vertex;
        let k = annulus.rectangles.len();
        for (i, &e) in annulus.rectangles.iter().enumerate() {
            let e_next = annulus.rectangles[(i + 1) % k];
            let out = if is_tail[&(e, v)] { Slot::TailOut } else { Slot::HeadOut };
            let into = if is_tail[&(e_next, v)] { Slot::TailIn } else { Slot::HeadIn };
            alpha.insert((e, out), (e_next, into));
            alpha.insert((e_next, into), (e, out));
        }
    }
    let mut seen: BTreeSet<(EdgeId, Slot)> = BTreeSet::new();
    let mut circles = 0u32;
    for r in &surface.rectangles {
        for slot in [Slot::TailOut, Slot::HeadOut, Slot::TailIn, Slot::HeadIn] {
            let start = (r.edge, slot);
            if seen.contains(&start) {
                continue;
            }
            circles += 1;
            let mut cur = start;
            loop {
                seen.insert(cur);
                let (e, s) = alpha[&cur];
                cur = (e, s.ccw_next());
                if cur == start {
                    break;
                }
            }
        }
    }
    let capped = surface.caps.len() as u32;
    if circles <= capped {
        return Err(Error::Internal(format!(
            "boundary tracing found {circles} circles for {capped} caps"
        )));
    }
    Ok(circles - capped)
}

/// Euler characteristic, boundary count, first Betti number, page genus and
/// link component count of a connected page.
pub fn summarize(surface: &SurfaceComplex) -> Result<SurfaceSummary> {
    let euler = surface.caps.len() as i64 - surface.rectangles.len() as i64;
    let boundary = boundary_count(surface)?;
    let betti1 = (1 - euler) as u32;
    let genus_twice = 2 - euler - boundary as i64;
    debug_assert!(genus_twice >= 0 && genus_twice % 2 == 0, "chi = 2 - 2g - mu must balance");
    Ok(SurfaceSummary {
        euler,
        boundary,
        betti1,
        genus: (genus_twice / 2) as u32,
        components: boundary,
    })
}

pub fn surface_summary(g: &CheckerboardGraph) -> Result<SurfaceSummary> {
    summarize(&build_surface(g)?)
}

/// Orders the vertices so that peeling them off one by one keeps every
/// prefix a connected valid checkerboard graph; each peel undoes one
/// positive stabilisation. Greedy with ascending-id tie break.
pub fn destabilization_sequence(g: &CheckerboardGraph) -> Result<Vec<VertexId>> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() || !g.validate().valid() {
        return Err(Error::InvalidGraph("destabilization needs a connected valid graph".into()));
    }
    let mut current = g.clone();
    let mut order = Vec::with_capacity(g.vertex_count());
    while current.vertex_count() > 1 {
        let outer_vertices: BTreeSet<VertexId> = if current.edge_count() == 0 {
            current.vertices().iter().copied().collect()
        } else {
            let outer_set: BTreeSet<_> = current.outer_darts().iter().copied().collect();
            current
                .faces()
                .into_iter()
                .filter(|f| f.walk.iter().any(|d| outer_set.contains(d)))
                .flat_map(|f| f.walk.into_iter().map(|d| current.dart_tail(d)))
                .collect()
        };
        let mut peeled = None;
        for &v in &outer_vertices {
            let Ok(next) = current.delete_vertex(v) else { continue };
            if next.is_connected() && next.validate().valid() {
                peeled = Some((v, next));
                break;
            }
        }
        let Some((v, next)) = peeled else {
            return Err(Error::NoPeelableVertex);
        };
        order.push(v);
        current = next;
    }
    order.push(current.vertices()[0]);
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{brick_diagram, linking_graph, parse_braid};
    use crate::coxeter::twist_order;
    use crate::oracle::component_count;
    use crate::plane::{Dart, Edge};
    use std::collections::BTreeMap;

    fn graph_of(text: &str) -> CheckerboardGraph {
        linking_graph(&brick_diagram(&parse_braid(text).unwrap()))
    }

    fn single_vertex() -> CheckerboardGraph {
        CheckerboardGraph::new(vec![1], vec![], BTreeMap::from([(1, vec![])]), vec![]).unwrap()
    }

    #[test]
    fn surfaces_of_small_graphs() {
        let s = build_surface(&single_vertex()).unwrap();
        assert_eq!((s.annuli.len(), s.rectangles.len(), s.caps.len()), (1, 0, 0));

        let s = build_surface(&graph_of("1 1 1")).unwrap();
        assert_eq!((s.annuli.len(), s.rectangles.len(), s.caps.len()), (2, 1, 0));
        assert_eq!(s.rectangles[0].sign, 1);

        let s = build_surface(&graph_of("1 2 1 2 1")).unwrap();
        assert_eq!((s.annuli.len(), s.rectangles.len(), s.caps.len()), (3, 3, 1));
        assert_eq!(s.caps[0].colour, Colour::White);
    }

    #[test]
    fn boundary_counts_calibration() {
        // Hopf band page: an annulus has two boundary circles.
        assert_eq!(boundary_count(&build_surface(&single_vertex()).unwrap()).unwrap(), 2);
        // Trefoil page has one.
        assert_eq!(boundary_count(&build_surface(&graph_of("1 1 1")).unwrap()).unwrap(), 1);
        // Triangle: closure of (1,2,1,2,1), two permutation cycles.
        assert_eq!(boundary_count(&build_surface(&graph_of("1 2 1 2 1")).unwrap()).unwrap(), 2);
    }

    #[test]
    fn boundary_matches_braid_permutation() {
        for text in [
            "1 1 1",
            "1 2 1 2",
            "1 2 1 2 1",
            "2 2 1 3 2 2 1 3",
            "1 1 1 1 1 1 1",
            "1 2 1 2 1 2 1 2",
            "1 2 3 1 2 3 1 2 3 1 2 3",
            "1 1 2 2 3 3",
            "1 1 1 2 2 1 1 2 3 2 2 2 3",
        ] {
            let w = parse_braid(text).unwrap();
            let g = graph_of(text);
            if !g.is_connected() {
                continue;
            }
            let s = build_surface(&g).unwrap();
            assert_eq!(
                boundary_count(&s).unwrap(),
                component_count(&w),
                "boundary tracing disagrees with the braid permutation on {text}"
            );
        }
    }

    #[test]
    fn summaries() {
        let s = summarize(&build_surface(&graph_of("1 1 1")).unwrap()).unwrap();
        assert_eq!(s.euler, -1);
        assert_eq!(s.betti1, 2);
        assert_eq!(s.boundary, 1);
        assert_eq!(s.genus, 1);

        let s = summarize(&build_surface(&single_vertex()).unwrap()).unwrap();
        assert_eq!((s.euler, s.boundary, s.betti1, s.genus), (0, 2, 1, 0));

        // Star: a tree with 5 vertices has chi = 1 - 5 = -4, b1 = 5.
        let s = summarize(&build_surface(&graph_of("2 2 1 3 2 2 1 3")).unwrap()).unwrap();
        assert_eq!((s.euler, s.betti1), (-4, 5));

        // Triangle graph: E = 3, one bounded face.
        let s = summarize(&build_surface(&graph_of("1 2 1 2 1")).unwrap()).unwrap();
        assert_eq!((s.euler, s.betti1), (-2, 3));
    }

    #[test]
    fn betti_equals_vertex_count() {
        for text in ["1 1 1", "1 2 1 2 1", "2 2 1 3 2 2 1 3", "1 2 3 1 2 3 1 2 3 1 2 3"] {
            let g = graph_of(text);
            let s = summarize(&build_surface(&g).unwrap()).unwrap();
            assert_eq!(s.betti1 as usize, g.vertex_count());
        }
    }

    #[test]
    fn destabilization_orders() {
        let order = destabilization_sequence(&graph_of("1 1 1")).unwrap();
        assert_eq!(order, vec![1, 2]);

        // Star: the centre (vertex 3) cannot be peeled while two or more
        // leaves remain; ascending greedy hits it once one leaf is left.
        let g = graph_of("2 2 1 3 2 2 1 3");
        let order = destabilization_sequence(&g).unwrap();
        assert_eq!(order, vec![1, 2, 4, 3, 5]);

        // Triangle: every vertex lies on the unbounded face.
        let order = destabilization_sequence(&graph_of("1 2 1 2 1")).unwrap();
        assert_eq!(order.len(), 3);

        let order = destabilization_sequence(&single_vertex()).unwrap();
        assert_eq!(order, vec![1]);
    }

    #[test]
    fn destabilization_prefixes_stay_valid() {
        let g = graph_of("1 1 1 2 2 1 1 2 3 2 2 2 3");
        let order = destabilization_sequence(&g).unwrap();
        assert_eq!(order.len(), g.vertex_count());
        let mut current = g;
        for &v in &order[..order.len() - 1] {
            current = current.delete_vertex(v).unwrap();
            assert!(current.is_connected());
            assert!(current.validate().valid());
        }
    }

    #[test]
    fn path_graph_boundary() {
        // T(2,7): path of six bricks, a knot.
        let s = surface_summary(&graph_of("1 1 1 1 1 1 1")).unwrap();
        assert_eq!((s.boundary, s.betti1, s.genus), (1, 6, 3));
    }

    #[test]
    fn hand_built_edge_graph_matches_braid_route() {
        // The same single-edge graph built by hand.
        let edges = vec![Edge { id: 1, tail: 1, head: 2 }];
        let rotation = BTreeMap::from([(1, vec![Dart::fwd(1)]), (2, vec![Dart::rev(1)])]);
        let g = CheckerboardGraph::new(vec![1, 2], edges, rotation, vec![Dart::fwd(1)]).unwrap();
        let s = surface_summary(&g).unwrap();
        assert_eq!((s.euler, s.boundary, s.betti1, s.genus), (-1, 1, 2, 1));
        let _ = twist_order(&g).unwrap();
    }
}
