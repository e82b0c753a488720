//! Census of prime positive braid knots of small genus.
//!
//! Words are enumerated up to cyclic rotation and commutation of distant
//! letters: a word is kept only when no plain rotation is smaller and it is
//! its own trace normal form, which leaves at most a few representatives
//! per class. Every generator must appear at least twice, the first letter
//! is σ₁, the closure must be a knot and the linking graph connected.
//! Surviving words are deduplicated by oriented graph code; each bucket
//! must be fingerprint-homogeneous, so residual same-class representatives
//! can only add records with repeated fingerprints, never change class
//! counts.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::braid::{brick_diagram, linked, linking_graph, BraidWord};
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, Fingerprint};
use crate::oracle;
use crate::plane::CodeMode;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusRecord {
    /// Lexicographically minimal word of the bucket.
    pub word: Vec<u32>,
    pub strands: u32,
    pub length: u32,
    pub genus: u32,
    pub fingerprint: Fingerprint,
    pub oriented_code: Vec<u8>,
    pub unoriented_mirror_code: Vec<u8>,
}

impl CensusRecord {
    pub fn word_text(&self) -> String {
        self.word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "word": self.word_text(),
            "strands": self.strands,
            "length": self.length,
            "genus": self.genus,
            "fingerprint": self.fingerprint.to_json(),
            "oriented_code": hex(&self.oriented_code),
            "unoriented_mirror_code": hex(&self.unoriented_mirror_code),
        })
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Lexicographically least word in the class generated by cyclic rotation
/// and commutation of distant letters, by exhausting the orbit. Census
/// words use every generator, so adjacent values block most swaps and the
/// orbits stay small.
pub fn canonical_word(letters: &[u32]) -> Vec<u32> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let start: Vec<u8> = letters.iter().map(|&l| l as u8).collect();
    let mut seen = std::collections::BTreeSet::from([start.clone()]);
    let mut queue = std::collections::VecDeque::from([start]);
    let mut best: Option<Vec<u8>> = None;
    while let Some(word) = queue.pop_front() {
        if best.as_ref().map_or(true, |b| word < *b) {
            best = Some(word.clone());
        }
        let mut rotated = word.clone();
        rotated.rotate_left(1);
        if seen.insert(rotated.clone()) {
            queue.push_back(rotated);
        }
        for i in 0..n - 1 {
            if word[i].abs_diff(word[i + 1]) >= 2 {
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                if seen.insert(swapped.clone()) {
                    queue.push_back(swapped);
                }
            }
        }
        assert!(
            seen.len() <= 2_000_000,
            "rotation-commutation orbit exceeded the safety bound"
        );
    }
    best.unwrap().into_iter().map(|c| c as u32).collect()
}

/// Lexicographic normal form of a trace: greedily emit the smallest letter
/// whose earlier non-commuting letters are already emitted.
fn trace_lex_min(word: &[u8]) -> Vec<u8> {
    let n = word.len();
    let mut emitted = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut pick: Option<usize> = None;
        'cand: for j in 0..n {
            if emitted[j] {
                continue;
            }
            for i in 0..j {
                if !emitted[i] && word[i].abs_diff(word[j]) <= 1 {
                    continue 'cand;
                }
            }
            if pick.map_or(true, |p| word[j] < word[p]) {
                pick = Some(j);
            }
        }
        let p = pick.expect("some letter is always available");
        emitted[p] = true;
        out.push(word[p]);
    }
    out
}

/// Cheap necessary conditions for class minimality: no plain rotation is
/// smaller and the word is its own trace normal form. Run before the exact
/// orbit search.
fn cheap_canonical(word: &[u8]) -> bool {
    let n = word.len();
    for j in 1..n {
        if word[j] != word[0] {
            continue;
        }
        for k in 0..n {
            let a = word[(j + k) % n];
            let b = word[k];
            if a < b {
                return false;
            }
            if a > b {
                break;
            }
        }
    }
    trace_lex_min(word) == word
}

pub struct CensusOptions {
    pub max_genus: u32,
    /// 0 picks the rayon default.
    pub jobs: usize,
}

/// Runs the census and returns the records in canonical order
/// (genus, strands, length, word), independent of the job count.
pub fn census(opts: &CensusOptions) -> Result<Vec<CensusRecord>> {
    if opts.max_genus < 1 {
        return Err(Error::ParameterRange("census needs genus >= 1".into()));
    }
    let run = || -> Result<Vec<CensusRecord>> {
        let mut all: Vec<CensusRecord> = Vec::new();
        for strands in 2..=2 * opts.max_genus {
            let mut betti = strands - 1;
            if betti % 2 == 1 {
                betti += 1;
            }
            while betti <= 2 * opts.max_genus {
                all.extend(census_block(strands, betti)?);
                betti += 2;
            }
        }
        // Dedupe across blocks by oriented graph code.
        let mut buckets: BTreeMap<Vec<u8>, CensusRecord> = BTreeMap::new();
        for rec in all {
            match buckets.get_mut(&rec.oriented_code) {
                None => {
                    buckets.insert(rec.oriented_code.clone(), rec);
                }
                Some(existing) => {
                    if existing.fingerprint != rec.fingerprint {
                        return Err(Error::Internal(format!(
                            "oriented-code bucket with two fingerprints: {} vs {}",
                            existing.word_text(),
                            rec.word_text()
                        )));
                    }
                    if (rec.genus, rec.strands, rec.length, rec.word.clone())
                        < (existing.genus, existing.strands, existing.length, existing.word.clone())
                    {
                        *existing = rec;
                    }
                }
            }
        }
        let mut records: Vec<CensusRecord> = buckets.into_values().collect();
        records.sort_by(|a, b| {
            (a.genus, a.strands, a.length, &a.word).cmp(&(b.genus, b.strands, b.length, &b.word))
        });
        Ok(records)
    };
    if opts.jobs == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(run)
    }
}

/// Number of distinct fingerprints per genus.
pub fn class_counts(records: &[CensusRecord]) -> BTreeMap<u32, usize> {
    let mut classes: BTreeMap<u32, std::collections::BTreeSet<String>> = BTreeMap::new();
    for r in records {
        classes
            .entry(r.genus)
            .or_default()
            .insert(r.fingerprint.to_json().to_string());
    }
    classes.into_iter().map(|(g, set)| (g, set.len())).collect()
}

/// All canonical knot words on the given strand count with first Betti
/// number `betti`, evaluated into records. Parallel over word prefixes.
fn census_block(strands: u32, betti: u32) -> Result<Vec<CensusRecord>> {
    let length = (betti + strands - 1) as usize;
    let alphabet = (strands - 1) as u8;
    if length < 2 * alphabet as usize {
        return Ok(Vec::new());
    }
    let prefix_len = length.saturating_sub(9).clamp(1, 7);
    let mut prefixes = Vec::new();
    enumerate_words(alphabet, length, prefix_len, &mut |prefix| {
        prefixes.push(prefix.to_vec());
        Ok(())
    })?;
    let chunks: Vec<Result<Vec<CensusRecord>>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut out = Vec::new();
            complete_words(alphabet, length, prefix, &mut |word| {
                if let Some(rec) = evaluate_word(strands, word)? {
                    out.push(rec);
                }
                Ok(())
            })?;
            Ok(out)
        })
        .collect();
    let mut merged = Vec::new();
    for c in chunks {
        merged.extend(c?);
    }
    Ok(merged)
}

const MAX_WORD: usize = 40;

/// Incremental DFS state; copied down the recursion, so backtracking needs
/// no undo.
#[derive(Copy, Clone)]
struct DfsState {
    /// Occurrences of each letter so far.
    counts: [u8; 16],
    /// Letters still short of two occurrences.
    missing: u8,
    /// Start positions of rotations that match the word so far; once a
    /// rotation compares smaller the branch dies, once larger it is dropped.
    cands: [u16; MAX_WORD],
    n_cands: u8,
}

impl DfsState {
    fn start() -> Self {
        let mut counts = [0u8; 16];
        counts[1] = 1;
        DfsState { counts, missing: 0, cands: [0; MAX_WORD], n_cands: 0 }
    }

    fn for_prefix(alphabet: u8, prefix: &[u8]) -> Option<Self> {
        let mut state = Self::start();
        state.missing = (1..=alphabet).map(|g| 2u8.saturating_sub(state.counts[g as usize])).sum();
        let mut word = vec![prefix[0]];
        for &c in &prefix[1..] {
            state = state.push(alphabet, &word, c)?;
            word.push(c);
        }
        Some(state)
    }

    /// Extends by one letter; None when the branch is pruned.
    fn push(&self, alphabet: u8, word: &[u8], c: u8) -> Option<Self> {
        let p = word.len();
        let prev = word[p - 1];
        // Commutation-canonical: never write a smaller commuting letter
        // right after a larger one.
        if c + 2 <= prev {
            return None;
        }
        let mut next = *self;
        if next.counts[c as usize] < 2 {
            next.missing -= 1;
        }
        next.counts[c as usize] += 1;
        // Rotation-minimality: compare against every open rotation.
        let mut kept = 0u8;
        for i in 0..self.n_cands as usize {
            let j = self.cands[i] as usize;
            let reference = word[p - j];
            if c < reference {
                return None; // a rotation is strictly smaller
            }
            if c == reference {
                next.cands[kept as usize] = j as u16;
                kept += 1;
            }
        }
        if c == word[0] {
            next.cands[kept as usize] = p as u16;
            kept += 1;
        }
        next.n_cands = kept;
        let _ = alphabet;
        Some(next)
    }

    fn budget_ok(&self, slots_left: usize) -> bool {
        self.missing as usize <= slots_left
    }
}

/// Enumerates prefixes of the given depth under the census prunes.
fn enumerate_words(
    alphabet: u8,
    length: usize,
    depth: usize,
    visit: &mut dyn FnMut(&[u8]) -> Result<()>,
) -> Result<()> {
    assert!(length <= MAX_WORD);
    let mut state = DfsState::start();
    state.missing = (1..=alphabet).map(|g| 2u8.saturating_sub(state.counts[g as usize])).sum();
    let mut word = vec![1u8];
    if depth == 1 {
        return visit(&word);
    }
    dfs(alphabet, length, depth, &mut word, state, visit)
}

/// Continues the DFS below a prefix down to full length.
fn complete_words(
    alphabet: u8,
    length: usize,
    prefix: &[u8],
    visit: &mut dyn FnMut(&[u8]) -> Result<()>,
) -> Result<()> {
    let Some(state) = DfsState::for_prefix(alphabet, prefix) else {
        return Ok(());
    };
    let mut word = prefix.to_vec();
    if word.len() == length {
        return visit(&word);
    }
    dfs(alphabet, length, length, &mut word, state, visit)
}

fn dfs(
    alphabet: u8,
    length: usize,
    stop: usize,
    word: &mut Vec<u8>,
    state: DfsState,
    visit: &mut dyn FnMut(&[u8]) -> Result<()>,
) -> Result<()> {
    let p = word.len();
    for c in 1..=alphabet {
        let Some(next) = state.push(alphabet, word, c) else {
            continue;
        };
        if !next.budget_ok(length - p - 1) {
            continue;
        }
        word.push(c);
        if word.len() == stop {
            visit(word)?;
        } else {
            dfs(alphabet, length, stop, word, next, visit)?;
        }
        word.pop();
    }
    Ok(())
}

/// One sum over the permutation: the closure is a knot iff a single cycle.
fn closure_is_knot(strands: u32, word: &[u8]) -> bool {
    let n = strands as usize;
    let mut perm: Vec<usize> = (0..n).collect();
    for &c in word {
        perm.swap(c as usize - 1, c as usize);
    }
    let mut i = perm[0];
    let mut steps = 1;
    while i != 0 {
        i = perm[i];
        steps += 1;
    }
    steps == n
}

fn connected_linking_graph(word: &[u32], strands: u32) -> bool {
    let w = BraidWord::new(strands, word.to_vec()).expect("letters fit the strand count");
    let d = brick_diagram(&w);
    let n = d.bricks.len();
    if n == 0 {
        return false;
    }
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
            if linked(&d.bricks[i], &d.bricks[j]) {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                uf[a] = b;
            }
        }
    }
    (0..n).all(|i| find(&mut uf, i) == find(&mut uf, 0))
}

/// Filters and evaluates one fully enumerated word, cheapest test first.
fn evaluate_word(strands: u32, word: &[u8]) -> Result<Option<CensusRecord>> {
    if !closure_is_knot(strands, word) {
        return Ok(None);
    }
    if !cheap_canonical(word) {
        return Ok(None);
    }
    let letters: Vec<u32> = word.iter().map(|&c| c as u32).collect();
    if !connected_linking_graph(&letters, strands) {
        return Ok(None);
    }
    let braid = BraidWord::new(strands, letters.clone())?;
    let graph = linking_graph(&brick_diagram(&braid));
    let fp = fingerprint(&graph)?;
    // Oracle cross-checks on everything emitted.
    let oracle_poly = oracle::alexander_closure(&braid);
    if oracle_poly != fp.alexander {
        return Err(Error::Internal(format!(
            "pipeline/oracle Alexander mismatch on {letters:?}"
        )));
    }
    let (b1, genus) = oracle::genus_from_word(&braid)?;
    if b1 != fp.betti1 || genus != fp.genus || fp.components != 1 {
        return Err(Error::Internal(format!(
            "pipeline/oracle genus mismatch on {letters:?}"
        )));
    }
    let oriented_code = graph.canonical_code(CodeMode::ORIENTED)?;
    let unoriented_mirror_code = graph.canonical_code(CodeMode::UNORIENTED_MIRROR)?;
    Ok(Some(CensusRecord {
        word: letters,
        strands,
        length: word.len() as u32,
        genus,
        fingerprint: fp,
        oriented_code,
        unoriented_mirror_code,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_word_basics() {
        assert_eq!(canonical_word(&[1, 1, 1]), vec![1, 1, 1]);
        // Rotation moves the smallest letter to the front.
        assert_eq!(canonical_word(&[2, 1, 2, 1]), vec![1, 2, 1, 2]);
        // Words linked by linear commutations share their class minimum.
        assert_eq!(canonical_word(&[3, 1, 3, 1, 2]), canonical_word(&[1, 3, 1, 3, 2]));
        // The class minimum never exceeds the input and is idempotent.
        for w in [vec![1, 2, 1, 1, 2], vec![1, 3, 2, 1, 3, 2], vec![2, 1, 4, 3, 2, 1, 4, 3]] {
            let c = canonical_word(&w);
            assert!(c <= w);
            assert_eq!(canonical_word(&c), c);
        }
        // The trace minimum pulls small commuting letters left.
        assert_eq!(trace_lex_min(&[3, 1, 2]), vec![1, 3, 2]);
        assert_eq!(trace_lex_min(&[2, 1, 3]), vec![2, 1, 3]);
    }

    #[test]
    fn rotation_prefix_pruning() {
        // "1 2 1 1" has the strictly smaller rotation "1 1 1 2".
        assert!(DfsState::for_prefix(2, &[1, 2, 1, 2]).is_some());
        assert!(DfsState::for_prefix(2, &[1, 2, 1, 1]).is_none());
        assert!(DfsState::for_prefix(2, &[1, 1, 2, 2]).is_some());
        // Commuting descent 3 then 1 is never canonical.
        assert!(DfsState::for_prefix(3, &[1, 3, 1]).is_none());
    }

    #[test]
    fn knot_filter() {
        assert!(closure_is_knot(2, &[1, 1, 1]));
        assert!(!closure_is_knot(2, &[1, 1]));
        assert!(!closure_is_knot(3, &[1, 2, 1, 2, 1]));
        assert!(closure_is_knot(3, &[1, 2, 1, 2]));
    }

    #[test]
    fn genus_one_census() {
        let records = census(&CensusOptions { max_genus: 1, jobs: 1 }).unwrap();
        let counts = class_counts(&records);
        assert_eq!(counts.get(&1), Some(&1));
        let trefoil = &records[0];
        assert_eq!(trefoil.word, vec![1, 1, 1]);
        assert_eq!(trefoil.fingerprint.signature, Some(2));
    }

    #[test]
    fn genus_two_census() {
        let records = census(&CensusOptions { max_genus: 2, jobs: 2 }).unwrap();
        let counts = class_counts(&records);
        assert_eq!(counts.get(&1), Some(&1));
        assert_eq!(counts.get(&2), Some(&1)); // only T(2,5)
    }

    #[test]
    fn census_is_deterministic_across_jobs() {
        let a = census(&CensusOptions { max_genus: 2, jobs: 1 }).unwrap();
        let b = census(&CensusOptions { max_genus: 2, jobs: 4 }).unwrap();
        assert_eq!(a, b);
    }
}

