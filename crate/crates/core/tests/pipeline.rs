//! Cross-module properties: canonical codes against brute-force plane
//! isomorphism, serialization round trips, mirror and commutation
//! robustness, the Shi correspondence, and witness-independence of the
//! Coxeter class.

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use checker::braid::{brick_diagram, is_prime, linking_graph, BraidWord};
use checker::coxeter::{
    enumeration_from_orientation, flow_difference, orientation_from_enumeration,
    orientation_from_selection,
};
use checker::invariants::{fingerprint, monodromy_for};
use checker::plane::{CheckerboardGraph, CodeMode, Dart, Dir, Edge};

fn random_prime_word(rng: &mut StdRng) -> BraidWord {
    loop {
        let strands = rng.random_range(2..=5);
        let len = rng.random_range(1..=11);
        let letters: Vec<u32> = (0..len).map(|_| rng.random_range(1..strands)).collect();
        let w = BraidWord::new(strands, letters).unwrap();
        let all_used = (1..w.strands()).all(|g| w.letters().contains(&g));
        if all_used && is_prime(&w) {
            return w;
        }
    }
}

fn random_tree(rng: &mut StdRng, n: u32) -> CheckerboardGraph {
    let vertices: Vec<u32> = (1..=n).collect();
    let mut edges = Vec::new();
    for v in 2..=n {
        let parent = rng.random_range(1..v);
        let (tail, head) = if rng.random_bool(0.5) { (parent, v) } else { (v, parent) };
        edges.push(Edge { id: v - 1, tail, head });
    }
    let mut rotation: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
    for &v in &vertices {
        let mut darts: Vec<Dart> = Vec::new();
        for e in &edges {
            if e.tail == v {
                darts.push(Dart::fwd(e.id));
            }
            if e.head == v {
                darts.push(Dart::rev(e.id));
            }
        }
        for i in (1..darts.len()).rev() {
            let j = rng.random_range(0..=i);
            darts.swap(i, j);
        }
        rotation.insert(v, darts);
    }
    let outer = if n > 1 { vec![Dart::fwd(1)] } else { Vec::new() };
    CheckerboardGraph::new(vertices, edges, rotation, outer).unwrap()
}

/// Relabels vertices and edges by a random bijection, preserving the plane
/// structure; codes must not change.
fn relabel(rng: &mut StdRng, g: &CheckerboardGraph) -> CheckerboardGraph {
    let mut vmap: BTreeMap<u32, u32> = BTreeMap::new();
    let mut targets: Vec<u32> = (0..g.vertex_count() as u32).map(|i| 100 + 3 * i).collect();
    for i in (1..targets.len()).rev() {
        let j = rng.random_range(0..=i);
        targets.swap(i, j);
    }
    for (&v, &t) in g.vertices().iter().zip(&targets) {
        vmap.insert(v, t);
    }
    let mut emap: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        emap.insert(e.id, 7 + 2 * i as u32);
    }
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge { id: emap[&e.id], tail: vmap[&e.tail], head: vmap[&e.head] })
        .collect();
    let rotation: BTreeMap<u32, Vec<Dart>> = g
        .vertices()
        .iter()
        .map(|&v| {
            (
                vmap[&v],
                g.rotation(v).iter().map(|d| Dart { edge: emap[&d.edge], dir: d.dir }).collect(),
            )
        })
        .collect();
    let outer: Vec<Dart> = g
        .outer_darts()
        .iter()
        .map(|d| Dart { edge: emap[&d.edge], dir: d.dir })
        .collect();
    CheckerboardGraph::new(vmap.values().copied().collect(), edges, rotation, outer).unwrap()
}

/// Brute-force plane isomorphism over all vertex bijections: preserves
/// edges (with orientation if `oriented`), rotations up to a global
/// chirality flip when `mirror`, and the outer walk.
fn brute_force_isomorphic(
    g1: &CheckerboardGraph,
    g2: &CheckerboardGraph,
    mode: CodeMode,
) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let v1: Vec<u32> = g1.vertices().to_vec();
    let v2: Vec<u32> = g2.vertices().to_vec();
    let mut perm: Vec<usize> = (0..v2.len()).collect();
    let chiralities: &[bool] = if mode.mirror { &[false, true] } else { &[false] };
    loop {
        'this_perm: {
            let map: BTreeMap<u32, u32> =
                v1.iter().zip(perm.iter()).map(|(&a, &i)| (a, v2[i])).collect();
            // Edge correspondence.
            let mut edge_map: BTreeMap<u32, (u32, bool)> = BTreeMap::new();
            for e in g1.edges() {
                let (ta, ha) = (map[&e.tail], map[&e.head]);
                let Some(image) = g2.edges().iter().find(|f| {
                    (f.tail == ta && f.head == ha) || (f.tail == ha && f.head == ta)
                }) else {
                    break 'this_perm;
                };
                let flipped = !(image.tail == ta && image.head == ha);
                if mode.oriented && flipped {
                    break 'this_perm;
                }
                edge_map.insert(e.id, (image.id, flipped));
            }
            let dart_image = |d: &Dart| -> Dart {
                let (edge, flipped) = edge_map[&d.edge];
                let dir = match (d.dir, flipped) {
                    (Dir::Fwd, false) | (Dir::Rev, true) => Dir::Fwd,
                    _ => Dir::Rev,
                };
                Dart { edge, dir }
            };
            for &flip in chiralities {
                let mut ok = true;
                for &v in g1.vertices() {
                    let mut rot: Vec<Dart> = g1.rotation(v).iter().map(&dart_image).collect();
                    if flip {
                        rot.reverse();
                    }
                    let target = g2.rotation(map[&v]);
                    let k = rot.len();
                    if target.len() != k {
                        ok = false;
                        break;
                    }
                    let cyclic_eq = k == 0
                        || (0..k).any(|s| (0..k).all(|i| rot[(s + i) % k] == target[i]));
                    if !cyclic_eq {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                // The outer walks must correspond.
                let outer_walk = |g: &CheckerboardGraph| -> BTreeSet<Dart> {
                    let marks: BTreeSet<Dart> = g.outer_darts().iter().copied().collect();
                    g.faces()
                        .into_iter()
                        .filter(|f| f.walk.iter().any(|d| marks.contains(d)))
                        .flat_map(|f| f.walk)
                        .collect()
                };
                let image: BTreeSet<Dart> = outer_walk(g1)
                    .iter()
                    .map(|d| {
                        let mut x = dart_image(d);
                        if flip {
                            x = x.twin();
                        }
                        x
                    })
                    .collect();
                if image == outer_walk(g2) {
                    return true;
                }
            }
        }
        // Next permutation in lexicographic order.
        let n = perm.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

#[test]
fn canonical_code_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(42);
    let modes = [
        CodeMode::ORIENTED,
        CodeMode::ORIENTED_MIRROR,
        CodeMode::UNORIENTED,
        CodeMode::UNORIENTED_MIRROR,
    ];
    let mut graphs: Vec<CheckerboardGraph> = Vec::new();
    while graphs.len() < 24 {
        let g = if rng.random_bool(0.5) {
            let n = rng.random_range(2..=6);
            random_tree(&mut rng, n)
        } else {
            linking_graph(&brick_diagram(&random_prime_word(&mut rng)))
        };
        if g.vertex_count() <= 6 && g.is_connected() && g.vertex_count() >= 2 {
            graphs.push(g);
        }
    }
    // Relabelled copies are isomorphic in every mode.
    for g in &graphs {
        let relabelled = relabel(&mut rng, g);
        for mode in modes {
            assert_eq!(
                g.canonical_code(mode).unwrap(),
                relabelled.canonical_code(mode).unwrap()
            );
            assert!(brute_force_isomorphic(g, &relabelled, mode));
        }
    }
    // Code equality coincides with brute-force isomorphism on pairs.
    let mut agreements = 0;
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            for mode in modes {
                let codes_equal = graphs[i].canonical_code(mode).unwrap()
                    == graphs[j].canonical_code(mode).unwrap();
                let brute = brute_force_isomorphic(&graphs[i], &graphs[j], mode);
                assert_eq!(codes_equal, brute, "mode {mode:?} on pair ({i},{j})");
                agreements += 1;
            }
        }
    }
    assert!(agreements > 1000);
}

#[test]
fn mirror_codes_detect_chirality() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut seen_chiral = false;
    for _ in 0..40 {
        let g = linking_graph(&brick_diagram(&random_prime_word(&mut rng)));
        if !g.is_connected() || g.vertex_count() < 2 {
            continue;
        }
        let m = g.mirror();
        assert_eq!(
            g.canonical_code(CodeMode::ORIENTED_MIRROR).unwrap(),
            m.canonical_code(CodeMode::ORIENTED_MIRROR).unwrap(),
            "mirror pairs are identified in mirror mode"
        );
        if g.canonical_code(CodeMode::ORIENTED).unwrap()
            != m.canonical_code(CodeMode::ORIENTED).unwrap()
        {
            seen_chiral = true;
        }
        // Mirroring never changes the fingerprint.
        assert_eq!(fingerprint(&g).unwrap(), fingerprint(&m).unwrap());
    }
    assert!(seen_chiral, "some linking graph must be chiral");
}

#[test]
fn json_round_trip_preserves_codes() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..50 {
        let g = if rng.random_bool(0.5) {
            let n = rng.random_range(1..=7);
            random_tree(&mut rng, n)
        } else {
            linking_graph(&brick_diagram(&random_prime_word(&mut rng)))
        };
        let back = CheckerboardGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        if g.is_connected() && g.vertex_count() >= 1 {
            assert_eq!(
                back.canonical_code(CodeMode::ORIENTED).unwrap(),
                g.canonical_code(CodeMode::ORIENTED).unwrap()
            );
        }
    }
}

#[test]
fn commutation_invariance_of_linking_graphs() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut swaps = 0;
    while swaps < 300 {
        let w = random_prime_word(&mut rng);
        let letters = w.letters();
        let candidates: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i].abs_diff(letters[i + 1]) >= 2)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let i = candidates[rng.random_range(0..candidates.len())];
        let mut swapped = letters.to_vec();
        swapped.swap(i, i + 1);
        let w2 = BraidWord::new(w.strands(), swapped).unwrap();
        let g1 = linking_graph(&brick_diagram(&w));
        let g2 = linking_graph(&brick_diagram(&w2));
        assert_eq!(
            g1.canonical_code(CodeMode::ORIENTED).unwrap(),
            g2.canonical_code(CodeMode::ORIENTED).unwrap(),
            "commuting swap changed the oriented plane graph"
        );
        swaps += 1;
    }
}

/// Shi correspondence, exhaustively over all acyclic orientations of every
/// corpus graph with at most six vertices.
#[test]
fn shi_correspondence_exhaustive() {
    let mut rng = StdRng::seed_from_u64(8);
    let mut graphs: Vec<CheckerboardGraph> = Vec::new();
    for _ in 0..50 {
        let n = rng.random_range(1..=6);
        graphs.push(random_tree(&mut rng, n));
    }
    let mut picked = 0;
    while picked < 12 {
        let g = linking_graph(&brick_diagram(&random_prime_word(&mut rng)));
        if g.vertex_count() <= 6 {
            picked += 1;
            graphs.push(g);
        }
    }
    let mut orientations = 0;
    for g in &graphs {
        let edge_ids: Vec<u32> = g.edges().iter().map(|e| e.id).collect();
        for mask in 0..(1u32 << edge_ids.len()) {
            let reversed: BTreeSet<u32> = edge_ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let Ok(o) = orientation_from_selection(g, &reversed) else {
                continue;
            };
            let e = enumeration_from_orientation(g, &o);
            assert_eq!(
                orientation_from_enumeration(g, &e),
                o,
                "orienting toward higher index must recover the orientation"
            );
            orientations += 1;
        }
    }
    assert!(orientations > 500, "saw {orientations} acyclic orientations");
}

/// Any two condition-2 witnesses give the same flow differences and
/// conjugate monodromies (equal characteristic polynomials).
#[test]
fn witness_independence_of_the_coxeter_class() {
    let mut rng = StdRng::seed_from_u64(9);
    let mut graphs_checked = 0;
    while graphs_checked < 30 {
        let g = linking_graph(&brick_diagram(&random_prime_word(&mut rng)));
        if !g.is_connected() || g.vertex_count() < 2 || g.vertex_count() > 7 {
            continue;
        }
        let boundaries: Vec<BTreeSet<u32>> = g
            .bounded_faces()
            .iter()
            .map(|f| f.walk.iter().map(|d| d.edge).collect())
            .collect();
        // All selections with exactly one edge per bounded face.
        let mut witnesses: Vec<BTreeSet<u32>> = vec![BTreeSet::new()];
        for b in &boundaries {
            let mut next = Vec::new();
            for w in &witnesses {
                if w.intersection(b).count() == 1 {
                    next.push(w.clone());
                    continue;
                }
                for &e in b {
                    let mut w2 = w.clone();
                    w2.insert(e);
                    if boundaries.iter().all(|b2| w2.intersection(b2).count() <= 1) {
                        next.push(w2);
                    }
                }
            }
            witnesses = next;
        }
        witnesses.retain(|w| {
            boundaries.iter().all(|b| w.intersection(b).count() == 1)
                && !g.has_directed_cycle(w)
        });
        if witnesses.len() < 2 {
            continue;
        }
        let reference_fd = flow_difference(&g, &witnesses[0]);
        let reference_char = {
            let o = orientation_from_selection(&g, &witnesses[0]).unwrap();
            monodromy_for(&g, &enumeration_from_orientation(&g, &o)).char_poly()
        };
        for w in &witnesses[1..] {
            assert_eq!(flow_difference(&g, w), reference_fd);
            let o = orientation_from_selection(&g, w).unwrap();
            let s = monodromy_for(&g, &enumeration_from_orientation(&g, &o));
            assert_eq!(s.char_poly(), reference_char);
        }
        graphs_checked += 1;
    }
}

#[test]
fn brick_count_identity() {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..500 {
        let strands = rng.random_range(2..=6);
        let len = rng.random_range(0..=12);
        let letters: Vec<u32> = (0..len).map(|_| rng.random_range(1..strands)).collect();
        let w = BraidWord::new(strands, letters).unwrap();
        let d = brick_diagram(&w);
        let used: BTreeSet<u32> = w.letters().iter().copied().collect();
        assert_eq!(d.bricks.len(), w.len() - used.len());
    }
}

/// Every linking graph is a valid checkerboard graph, including the
/// disconnected ones coming from non-prime words.
#[test]
fn all_linking_graphs_validate() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10_000 {
        let strands = rng.random_range(2..=6);
        let len = rng.random_range(0..=12);
        let letters: Vec<u32> = (0..len).map(|_| rng.random_range(1..strands)).collect();
        let w = BraidWord::new(strands, letters).unwrap();
        let g = linking_graph(&brick_diagram(&w));
        let report = g.validate();
        assert!(report.valid(), "linking graph of {:?} failed validation", w.letters());
    }
}

/// The interpolation and elimination routes to det(t·1 − S) agree on every
/// small graph.
#[test]
fn alexander_determinant_routes_agree() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut compared = 0;
    while compared < 120 {
        let g = if rng.random_bool(0.5) {
            let n = rng.random_range(1..=6);
            random_tree(&mut rng, n)
        } else {
            linking_graph(&brick_diagram(&random_prime_word(&mut rng)))
        };
        if !g.is_connected() || g.vertex_count() == 0 || g.vertex_count() > 6 {
            continue;
        }
        assert_eq!(
            checker::invariants::alexander(&g).unwrap(),
            checker::invariants::alexander_by_elimination(&g).unwrap()
        );
        compared += 1;
    }
}
