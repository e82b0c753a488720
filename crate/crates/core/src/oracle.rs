//! Independent validation path for the graph pipeline: Alexander polynomials
//! of positive braid closures through the reduced Burau representation, and
//! permutation-based component and genus counts.
//!
//! Nothing in this module touches brick diagrams or checkerboard graphs, so
//! agreement with the pipeline is a genuine cross-check.

use num_bigint::BigInt;
use num_traits::One;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::LaurentPoly;

/// Permutation of strand positions induced by the word; `perm[i]` is the
/// strand index (0-based) ending up at position `i`.
pub fn braid_permutation(word: &BraidWord) -> Vec<u32> {
    let n = word.strands() as usize;
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for &letter in word.letters() {
        perm.swap(letter as usize - 1, letter as usize);
    }
    perm
}

/// Number of components of the closure = number of permutation cycles.
pub fn component_count(word: &BraidWord) -> u32 {
    let perm = braid_permutation(word);
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
        }
    }
    cycles
}

/// Reduced Burau matrix of a single positive generator on `n` strands,
/// acting on the quotient of the unreduced representation by its fixed
/// vector; basis is the image of the first `n-1` coordinate vectors.
fn reduced_burau_generator(letter: u32, n: usize) -> PolyMatrix {
    let dim = n - 1;
    let i = letter as usize; // 1-based generator index
    let t = LaurentPoly::variable();
    let one = LaurentPoly::one();
    let mut m = PolyMatrix::identity(dim);
    if i < dim {
        // Columns i-1 and i (0-based) carry the 2x2 block.
        m[(i - 1, i - 1)] = &one - &t;
        m[(i, i - 1)] = one.clone();
        m[(i - 1, i)] = t;
        m[(i, i)] = LaurentPoly::zero();
    } else {
        // Last generator: the dropped basis vector folds back in.
        for r in 0..dim - 1 {
            m[(r, dim - 1)] = -&one;
        }
        m[(dim - 1, dim - 1)] = -&t;
    }
    m
}

/// Alexander polynomial of the closure, normalized so the lowest exponent
/// is 0 and the constant coefficient is positive. Split closures yield 0.
pub fn alexander_closure(word: &BraidWord) -> LaurentPoly {
    let n = word.strands() as usize;
    if n < 2 {
        return LaurentPoly::one();
    }
    let mut burau = PolyMatrix::identity(n - 1);
    for &letter in word.letters() {
        burau = burau.mul(&reduced_burau_generator(letter, n));
    }
    let mut diff = PolyMatrix::zero(n - 1);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            diff[(i, j)] = if i == j {
                &burau[(i, j)] - &LaurentPoly::one()
            } else {
                burau[(i, j)].clone()
            };
        }
    }
    let det = diff.det();
    if det.is_zero() {
        return LaurentPoly::zero();
    }
    let cyclotomic = LaurentPoly::from_coeffs(0, vec![BigInt::one(); n]);
    let quot = det
        .div_exact(&cyclotomic)
        .expect("1 + t + ... + t^(n-1) divides det(reduced Burau - 1)");
    quot.normalized()
}

/// First Betti number and genus of the canonical Seifert surface.
pub fn genus_from_word(word: &BraidWord) -> Result<(u32, u32)> {
    let n = word.strands();
    for g in 1..n {
        if !word.letters().contains(&g) {
            return Err(Error::UnusedGenerator(g));
        }
    }
    let b1 = word.letters().len() as u32 + 1 - n;
    let mu = component_count(word);
    debug_assert_eq!((b1 + 1 - mu) % 2, 0, "b1 + 1 - mu must be even");
    Ok((b1, (b1 + 1 - mu) / 2))
}
