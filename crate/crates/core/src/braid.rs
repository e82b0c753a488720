//! Positive braid words, brick diagrams and their linking graphs.
//!
//! A brick diagram is drawn with x = column index increasing rightwards and
//! y = word position increasing downwards, so the word reads top to bottom.
//! Vertical edges point down (earlier brick to later brick) and slope edges
//! point up; with this orientation the selection of all positive-slope edges
//! reverses to a graph whose non-vertical edges all point left, hence
//! acyclic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::plane::{CheckerboardGraph, Dart, Edge, EdgeId, VertexId};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<u32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<u32>) -> Result<Self> {
        if !letters.is_empty() && strands < 2 {
            return Err(Error::Parse("a nonempty word needs at least two strands".into()));
        }
        for &l in &letters {
            if l == 0 || l >= strands {
                return Err(Error::Parse(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn text(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses a whitespace- or comma-separated list of generator indices,
/// optionally preceded by `n=<k>;` to force the strand count.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut body = text.trim();
    let mut forced: Option<u32> = None;
    if let Some(rest) = body.strip_prefix("n=") {
        let (count, tail) = rest
            .split_once(';')
            .ok_or_else(|| Error::Parse("expected ';' after n=<k>".into()))?;
        let count: u32 = count
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count {:?}", count.trim())))?;
        forced = Some(count);
        body = tail;
    }
    let mut letters = Vec::new();
    for token in body.split(|c: char| c.is_whitespace() || c == ',') {
        if token.is_empty() {
            continue;
        }
        let letter: i64 = token
            .parse()
            .map_err(|_| Error::Parse(format!("non-integer token {token:?}")))?;
        if letter <= 0 {
            return Err(Error::Parse(format!("letter {letter} must be positive")));
        }
        letters.push(letter as u32);
    }
    let needed = letters.iter().max().map_or(1, |&m| m + 1);
    let strands = match forced {
        Some(n) if n < needed => {
            return Err(Error::Parse(format!(
                "forced strand count {n} smaller than {needed}"
            )));
        }
        Some(n) => n,
        None => needed,
    };
    BraidWord::new(strands, letters)
}

/// Innermost rectangle of a brick diagram: a pair of consecutive
/// occurrences of the same letter. Positions are 1-based word indices.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Brick {
    pub column: u32,
    pub start: u32,
    pub end: u32,
}

impl Brick {
    /// Doubled midpoint of the vertical span, an exact integer.
    fn mid(&self) -> i64 {
        self.start as i64 + self.end as i64
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BrickDiagram {
    pub word: BraidWord,
    pub bricks: Vec<Brick>,
}

pub fn brick_diagram(word: &BraidWord) -> BrickDiagram {
    let mut occurrences: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (pos, &l) in word.letters().iter().enumerate() {
        occurrences.entry(l).or_default().push(pos as u32 + 1);
    }
    let mut bricks = Vec::new();
    for (&column, positions) in &occurrences {
        for w in positions.windows(2) {
            bricks.push(Brick { column, start: w[0], end: w[1] });
        }
    }
    debug_assert_eq!(
        bricks.len(),
        word.len() - occurrences.len().min(word.len()),
        "brick count must be word length minus the number of distinct letters"
    );
    BrickDiagram { word: word.clone(), bricks }
}

/// Two bricks are linked when their core curves intersect: same column and
/// sharing an endpoint, or adjacent columns with strictly interleaving
/// spans.
pub fn linked(b1: &Brick, b2: &Brick) -> bool {
    if b1.column == b2.column {
        b1.end == b2.start || b2.end == b1.start
    } else if b1.column.abs_diff(b2.column) == 1 {
        let (a, b) = (b1.start, b1.end);
        let (c, d) = (b2.start, b2.end);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    } else {
        false
    }
}

/// The oriented plane linking graph of a brick diagram, with per-edge slope
/// annotations for DOT output.
pub fn linking_graph_with_slopes(
    diagram: &BrickDiagram,
) -> (CheckerboardGraph, BTreeMap<EdgeId, String>) {
    let bricks = &diagram.bricks;
    let n = bricks.len();
    let mut edges: Vec<Edge> = Vec::new();
    let mut slopes = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if !linked(&bricks[i], &bricks[j]) {
                continue;
            }
            let id = edges.len() as EdgeId + 1;
            let (vi, vj) = (i as VertexId + 1, j as VertexId + 1);
            let (tail, head, slope) = if bricks[i].column == bricks[j].column {
                // Bricks are sorted by start within a column.
                (vi, vj, "vertical")
            } else {
                // bricks[i] sits one column left of bricks[j].
                let (a, b) = (bricks[i].start, bricks[i].end);
                let (c, d) = (bricks[j].start, bricks[j].end);
                if a < c && c < b && b < d {
                    (vj, vi, "negative")
                } else {
                    debug_assert!(c < a && a < d && d < b);
                    (vi, vj, "positive")
                }
            };
            edges.push(Edge { id, tail, head });
            slopes.insert(id, slope.to_string());
        }
    }

    // Counterclockwise rotation at each brick, sorted by exact angle in the
    // frame (x = column, y upwards = negative word position).
    let mut rotation: BTreeMap<VertexId, Vec<Dart>> = BTreeMap::new();
    for i in 0..n {
        let v = i as VertexId + 1;
        let mut darts: Vec<(Dart, (i64, i64))> = Vec::new();
        for e in &edges {
            let (d, other) = if e.tail == v {
                (Dart::fwd(e.id), e.head)
            } else if e.head == v {
                (Dart::rev(e.id), e.tail)
            } else {
                continue;
            };
            let o = &bricks[(other - 1) as usize];
            let vec = (
                o.column as i64 - bricks[i].column as i64,
                bricks[i].mid() - o.mid(),
            );
            darts.push((d, vec));
        }
        darts.sort_by(|a, b| cmp_angle(a.1, b.1));
        rotation.insert(v, darts.into_iter().map(|(d, _)| d).collect());
    }

    // One outer dart per edged component: at the leftmost-topmost brick of
    // the component, the unbounded region occupies the sector containing the
    // leftward direction (angle pi).
    let mut outer = Vec::new();
    let comps = component_sets(n, &edges);
    for comp in comps {
        if edges.iter().all(|e| !comp.contains(&e.tail)) {
            continue;
        }
        let &extreme = comp
            .iter()
            .min_by_key(|&&v| {
                let b = &bricks[(v - 1) as usize];
                (b.column, b.mid())
            })
            .expect("component is nonempty");
        let rot = &rotation[&extreme];
        let vectors: Vec<(i64, i64)> = rot
            .iter()
            .map(|&d| {
                let e = edges.iter().find(|e| e.id == d.edge).unwrap();
                let other = if e.tail == extreme { e.head } else { e.tail };
                let o = &bricks[(other - 1) as usize];
                let b = &bricks[(extreme - 1) as usize];
                (o.column as i64 - b.column as i64, b.mid() - o.mid())
            })
            .collect();
        // Last dart with angle < pi, or the last dart overall: the sector
        // following it contains the leftward ray. The face occupying the
        // sector after a dart is the one whose walk carries its twin.
        let pick = vectors
            .iter()
            .rposition(|&v| half_plane(v) == 0)
            .unwrap_or(vectors.len() - 1);
        outer.push(rot[pick].twin());
    }
    outer.sort_unstable();

    let vertices: Vec<VertexId> = (1..=n as VertexId).collect();
    let graph = CheckerboardGraph::new(vertices, edges, rotation, outer)
        .expect("linking graphs are structurally valid plane graphs");
    (graph, slopes)
}

pub fn linking_graph(diagram: &BrickDiagram) -> CheckerboardGraph {
    linking_graph_with_slopes(diagram).0
}

/// A positive braid closure is prime iff its linking graph is connected and
/// nonempty; positive braids are visually prime.
pub fn is_prime(word: &BraidWord) -> bool {
    let diagram = brick_diagram(word);
    if diagram.bricks.is_empty() {
        return false;
    }
    let n = diagram.bricks.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    for i in 0..n {
        for j in i + 1..n {
            if linked(&diagram.bricks[i], &diagram.bricks[j]) {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                uf[a] = b;
            }
        }
    }
    (0..n).all(|i| find(&mut uf, i) == find(&mut uf, 0))
}

fn component_sets(n: usize, edges: &[Edge]) -> Vec<Vec<VertexId>> {
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    for e in edges {
        let (a, b) = (find(&mut uf, (e.tail - 1) as usize), find(&mut uf, (e.head - 1) as usize));
        uf[a] = b;
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut uf, i);
        groups.entry(r).or_default().push(i as VertexId + 1);
    }
    groups.into_values().collect()
}

fn half_plane((x, y): (i64, i64)) -> u8 {
    if y > 0 || (y == 0 && x > 0) { 0 } else { 1 }
}

/// Orders nonzero integer vectors by angle in [0, 2pi), counterclockwise
/// from the positive x-axis, using exact arithmetic only.
fn cmp_angle(u: (i64, i64), v: (i64, i64)) -> std::cmp::Ordering {
    let (hu, hv) = (half_plane(u), half_plane(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    let cross = u.0 * v.1 - u.1 * v.0;
    cross.cmp(&0).reverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{CodeMode, Colour};

    fn word(text: &str) -> BraidWord {
        parse_braid(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = word("1 1 1");
        assert_eq!((w.strands(), w.letters()), (2, &[1, 1, 1][..]));
        let w = word("1 2 1 2");
        assert_eq!((w.strands(), w.letters()), (3, &[1, 2, 1, 2][..]));
        let w = word("n=4; 1 1");
        assert_eq!((w.strands(), w.letters()), (4, &[1, 1][..]));
        let w = word("1,2,1");
        assert_eq!(w.letters(), &[1, 2, 1]);

        assert!(matches!(parse_braid("1 x 2"), Err(Error::Parse(_))));
        assert!(matches!(parse_braid("0 1"), Err(Error::Parse(_))));
        assert!(matches!(parse_braid("-2"), Err(Error::Parse(_))));
        assert!(matches!(parse_braid("n=2; 1 2"), Err(Error::Parse(_))));
    }

    #[test]
    fn brick_diagrams() {
        let d = brick_diagram(&word("1 1 1"));
        assert_eq!(
            d.bricks,
            vec![
                Brick { column: 1, start: 1, end: 2 },
                Brick { column: 1, start: 2, end: 3 }
            ]
        );
        let d = brick_diagram(&word("1 2 1 2"));
        assert_eq!(
            d.bricks,
            vec![
                Brick { column: 1, start: 1, end: 3 },
                Brick { column: 2, start: 2, end: 4 }
            ]
        );
        let d = brick_diagram(&word("2 2 1 3 2 2 1 3"));
        assert_eq!(
            d.bricks,
            vec![
                Brick { column: 1, start: 3, end: 7 },
                Brick { column: 2, start: 1, end: 2 },
                Brick { column: 2, start: 2, end: 5 },
                Brick { column: 2, start: 5, end: 6 },
                Brick { column: 3, start: 4, end: 8 },
            ]
        );
    }

    #[test]
    fn linked_patterns() {
        let b = |column, start, end| Brick { column, start, end };
        assert!(linked(&b(1, 1, 2), &b(1, 2, 3)));
        assert!(linked(&b(1, 1, 3), &b(2, 2, 4)));
        assert!(!linked(&b(1, 1, 4), &b(2, 2, 3)));
        assert!(!linked(&b(1, 1, 2), &b(3, 1, 2)));
        assert!(!linked(&b(1, 1, 2), &b(1, 3, 4)));
    }

    #[test]
    fn trefoil_graph_is_single_edge() {
        let g = linking_graph(&brick_diagram(&word("1 1 1")));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let e = &g.edges()[0];
        assert_eq!((e.tail, e.head), (1, 2)); // earlier brick to later brick
    }

    #[test]
    fn star_graph_example() {
        let g = linking_graph(&brick_diagram(&word("2 2 1 3 2 2 1 3")));
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
        // Centre is the brick (2,5) in column 2, vertex id 3.
        assert_eq!(g.degree(3), 4);
        for v in [1, 2, 4, 5] {
            assert_eq!(g.degree(v), 1);
        }
        assert!(g.validate().valid());
    }

    #[test]
    fn split_words_give_isolated_vertices() {
        let g = linking_graph(&brick_diagram(&word("1 1 3 3")));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
        assert!(!g.is_connected());
    }

    #[test]
    fn triangle_from_five_letter_word() {
        let g = linking_graph(&brick_diagram(&word("1 2 1 2 1")));
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        let colours = g.colouring().unwrap();
        assert_eq!(colours.len(), 1);
        // Distinguished vertex sits on the right: anticlockwise, white.
        assert_eq!(*colours.values().next().unwrap(), Colour::White);
        assert!(g.validate().valid());
    }

    #[test]
    fn primeness() {
        assert!(is_prime(&word("1 1 1")));
        assert!(!is_prime(&word("1 1 3 3")));
        assert!(!is_prime(&word("1 1 1 1 2 2 3 3")));
        assert!(!is_prime(&word("1"))); // empty linking graph
    }

    #[test]
    fn commutation_invariance_smoke() {
        // Swapping the distant letters 1 and 3 fixes the oriented plane graph.
        let a = linking_graph(&brick_diagram(&word("2 2 1 3 2 2 1 3")));
        let b = linking_graph(&brick_diagram(&word("2 2 3 1 2 2 3 1")));
        assert_eq!(
            a.canonical_code(CodeMode::ORIENTED).unwrap(),
            b.canonical_code(CodeMode::ORIENTED).unwrap()
        );
    }

    #[test]
    fn degree_bound() {
        for text in ["1 2 1 2 1 2 1 2", "1 2 3 1 2 3 1 2 3 1 2 3", "2 2 1 3 2 2 1 3"] {
            let g = linking_graph(&brick_diagram(&word(text)));
            for &v in g.vertices() {
                assert!(g.degree(v) <= 6);
            }
        }
    }

    #[test]
    fn positive_slope_selection_is_a_witness() {
        let (g, slopes) = linking_graph_with_slopes(&brick_diagram(&word("1 2 1 2 1")));
        let positive: std::collections::BTreeSet<EdgeId> = slopes
            .iter()
            .filter(|(_, s)| s.as_str() == "positive")
            .map(|(&e, _)| e)
            .collect();
        assert!(!g.has_directed_cycle(&positive));
        for face in g.bounded_faces() {
            let hits = face.walk.iter().filter(|d| positive.contains(&d.edge)).count();
            assert_eq!(hits, 1);
        }
    }
}
