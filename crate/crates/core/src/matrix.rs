//! Exact integer matrices and the linear algebra the invariant pipeline
//! relies on: fraction-free determinants, adjugate-based inverses,
//! characteristic polynomials along two independent routes, ranks and
//! signatures. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, entries: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        IntMatrix {
            n,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let add = a * &rhs[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { n: self.n, entries: self.entries.iter().map(|x| -x).collect() }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    /// Fraction-free Bareiss determinant.
    pub fn det(&self) -> BigInt {
        if self.n == 0 {
            return BigInt::one();
        }
        let mut m = self.entries.clone();
        let n = self.n;
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        if sign < 0 { -d } else { d }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m: Vec<BigRational> = self
            .entries
            .iter()
            .map(|e| BigRational::from_integer(e.clone()))
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..n).find(|&r| !m[r * n + col].is_zero());
            let Some(p) = pivot else { continue };
            for c in 0..n {
                m.swap(row * n + c, p * n + c);
            }
            let inv = m[row * n + col].clone();
            for r in row + 1..n {
                let factor = &m[r * n + col] / &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = &factor * &m[row * n + c];
                    m[r * n + c] -= sub;
                }
            }
            rank += 1;
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rank()
    }

    /// Returns `(adjugate, det)` with `adj * self = det * identity`,
    /// computed by rational Gauss-Jordan and scaled back to integers.
    pub fn adjugate_det(&self) -> (IntMatrix, BigInt) {
        let det = self.det();
        if det.is_zero() {
            // Fall back to cofactors; only used on singular input, where the
            // callers treat the adjugate as diagnostic.
            return (self.cofactor_adjugate(), det);
        }
        let n = self.n;
        let mut aug: Vec<BigRational> = Vec::with_capacity(n * 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.push(BigRational::from_integer(self[(i, j)].clone()));
            }
            for j in 0..n {
                aug.push(if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
        let w = 2 * n;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !aug[r * w + col].is_zero())
                .expect("nonsingular matrix must have a pivot");
            for c in 0..w {
                aug.swap(col * w + c, pivot * w + c);
            }
            let inv = aug[col * w + col].clone();
            for c in col..w {
                aug[col * w + c] = &aug[col * w + c] / &inv;
            }
            for r in 0..n {
                if r == col || aug[r * w + col].is_zero() {
                    continue;
                }
                let factor = aug[r * w + col].clone();
                for c in col..w {
                    let sub = &factor * &aug[col * w + c];
                    aug[r * w + c] -= sub;
                }
            }
        }
        let det_rat = BigRational::from_integer(det.clone());
        let mut adj = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let scaled = &aug[i * w + n + j] * &det_rat;
                assert!(scaled.is_integer(), "adjugate must be integral");
                adj[(i, j)] = scaled.to_integer();
            }
        }
        (adj, det)
    }

    fn cofactor_adjugate(&self) -> IntMatrix {
        let n = self.n;
        let mut adj = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let c = minor.det();
                adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        adj
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zero(n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == row {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == col {
                    continue;
                }
                m[(r, c)] = self[(i, j)].clone();
                c += 1;
            }
            r += 1;
        }
        m
    }

    /// `self * rhs^{-1}`, defined when the result is an integer matrix.
    pub fn mul_inverse(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        let (adj, det) = rhs.adjugate_det();
        if det.is_zero() {
            return Err(Error::SingularMonodromy);
        }
        let prod = self.mul(&adj);
        let mut out = IntMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let q = &prod[(i, j)] / &det;
                if &q * &det != prod[(i, j)] {
                    return Err(Error::Internal(format!(
                        "matrix quotient is not integral at ({i},{j})"
                    )));
                }
                out[(i, j)] = q;
            }
        }
        Ok(out)
    }

    /// `det(t*I - self)` by exact interpolation at the integers 0..=n.
    pub fn char_poly(&self) -> LaurentPoly {
        let n = self.n;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut points = Vec::with_capacity(n + 1);
        for t in 0..=n as i64 {
            let mut m = self.neg();
            for i in 0..n {
                m[(i, i)] += BigInt::from(t);
            }
            points.push((BigInt::from(t), m.det()));
        }
        interpolate_integer_poly(&points)
    }

    /// `det(t*I - self)` by fraction-free elimination over Z[t]; the
    /// independent validation route for `char_poly`.
    pub fn char_poly_by_elimination(&self) -> LaurentPoly {
        let n = self.n;
        let mut m = PolyMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut p = LaurentPoly::monomial(0, -self[(i, j)].clone());
                if i == j {
                    p = &p + &LaurentPoly::variable();
                }
                m[(i, j)] = p;
            }
        }
        m.det()
    }

    /// Inertia (positive, negative, zero counts) of a symmetric matrix by
    /// exact rational congruence diagonalization.
    pub fn symmetric_inertia(&self) -> (usize, usize, usize) {
        let sig = self.symmetric_signature();
        let rank = self.rank();
        let pos = (rank as i64 + sig) / 2;
        let neg = (rank as i64 - sig) / 2;
        (pos as usize, neg as usize, self.n - rank)
    }

    /// Signature of a symmetric matrix by exact rational congruence
    /// diagonalization: `#positive - #negative` diagonal entries.
    pub fn symmetric_signature(&self) -> i64 {
        let n = self.n;
        debug_assert_eq!(*self, self.transpose(), "signature needs a symmetric matrix");
        let mut m: Vec<BigRational> = self
            .entries
            .iter()
            .map(|e| BigRational::from_integer(e.clone()))
            .collect();
        let mut sig = 0i64;
        let mut i = 0;
        while i < n {
            if m[i * n + i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !m[j * n + j].is_zero()) {
                    swap_rows_cols(&mut m, n, i, j);
                } else if let Some((j, k)) = find_nonzero_pair(&m, n, i) {
                    // All-zero diagonal: make a nonzero diagonal entry by the
                    // congruence "row j += row k, col j += col k".
                    add_row_col(&mut m, n, j, k);
                    swap_rows_cols(&mut m, n, i, j);
                } else {
                    break; // remaining block is zero
                }
            }
            let pivot = m[i * n + i].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            for r in i + 1..n {
                if m[r * n + i].is_zero() {
                    continue;
                }
                let factor = &m[r * n + i] / &pivot;
                for c in i..n {
                    let sub = &factor * &m[i * n + c];
                    m[r * n + c] -= sub;
                }
                for rr in i..n {
                    let sub = &factor * &m[rr * n + i];
                    m[rr * n + r] -= sub;
                }
            }
            i += 1;
        }
        sig
    }
}

fn swap_rows_cols(m: &mut [BigRational], n: usize, a: usize, b: usize) {
    for c in 0..n {
        m.swap(a * n + c, b * n + c);
    }
    for r in 0..n {
        m.swap(r * n + a, r * n + b);
    }
}

fn add_row_col(m: &mut [BigRational], n: usize, dst: usize, src: usize) {
    for c in 0..n {
        let add = m[src * n + c].clone();
        m[dst * n + c] += add;
    }
    for r in 0..n {
        let add = m[r * n + src].clone();
        m[r * n + dst] += add;
    }
}

fn find_nonzero_pair(m: &[BigRational], n: usize, from: usize) -> Option<(usize, usize)> {
    for j in from..n {
        for k in from..n {
            if j != k && !m[j * n + k].is_zero() {
                return Some((j, k));
            }
        }
    }
    None
}

/// Lagrange interpolation through integer nodes, asserting an integral result.
fn interpolate_integer_poly(points: &[(BigInt, BigInt)]) -> LaurentPoly {
    let k = points.len();
    let mut acc = vec![BigRational::zero(); k];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j).
        let mut denom = BigRational::one();
        let mut num = vec![BigRational::one()];
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            denom *= BigRational::from_integer(xi - xj);
            let mut next = vec![BigRational::zero(); num.len() + 1];
            for (d, c) in num.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(xj.clone());
            }
            num = next;
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (d, c) in num.iter().enumerate() {
            acc[d] += c * &scale;
        }
    }
    let coeffs: Vec<BigInt> = acc
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated characteristic polynomial must be integral");
            c.to_integer()
        })
        .collect();
    LaurentPoly::from_coeffs(0, coeffs)
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.n + j]
    }
}

/// Square matrix over Z[t], just enough for fraction-free determinants.
pub struct PolyMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix { n, entries: vec![LaurentPoly::zero(); n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = PolyMatrix::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    let add = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &add;
                }
            }
        }
        out
    }

    /// Bareiss elimination over Z[t]; every division is exact.
    pub fn det(&self) -> LaurentPoly {
        let n = self.n;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m = self.entries.clone();
        let mut sign = 1i32;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return LaurentPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i * n + j] * &m[k * n + k]) - &(&m[i * n + k] * &m[k * n + j]);
                    m[i * n + j] = num
                        .div_exact(&prev)
                        .expect("Bareiss pivot division is exact over an integral domain");
                }
                m[i * n + k] = LaurentPoly::zero();
            }
            prev = m[k * n + k].clone();
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        if sign < 0 { -&d } else { d }
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.entries[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.det(), BigInt::from(-2));
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]);
        assert_eq!(m.det(), BigInt::from(5));
        assert_eq!(IntMatrix::identity(4).det(), BigInt::one());
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), BigInt::zero());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        // Bareiss against naive cofactors on a batch of fixed matrices.
        let samples = [
            vec![vec![0, 1, 1, 0], vec![-1, 0, 1, 1], vec![-1, -1, 0, 1], vec![0, -1, -1, 0]],
            vec![vec![5, -3, 2, 1], vec![0, 2, -1, 4], vec![7, 1, 1, 1], vec![2, 2, 2, -2]],
        ];
        for rows in &samples {
            let m = IntMatrix::from_rows(rows);
            assert_eq!(m.det(), naive_det(&m));
        }
    }

    fn naive_det(m: &IntMatrix) -> BigInt {
        let n = m.size();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let c = m.minor(0, j);
            let term = &m[(0, j)] * naive_det(&c);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn adjugate_inverse() {
        let m = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        let (adj, det) = m.adjugate_det();
        assert_eq!(det, BigInt::one());
        assert_eq!(adj.mul(&m), IntMatrix::identity(2));
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]);
        let a = b.mul_inverse(&m).unwrap();
        assert_eq!(a, IntMatrix::from_rows(&[vec![-1, 0], vec![1, -1]]));
    }

    #[test]
    fn char_poly_two_routes_agree() {
        let m = IntMatrix::from_rows(&[vec![1, -1], vec![1, 0]]);
        let p = m.char_poly();
        assert_eq!(p, LaurentPoly::from_i64_coeffs(0, &[1, -1, 1]));
        assert_eq!(p, m.char_poly_by_elimination());
        let m = IntMatrix::from_rows(&[vec![2, 1, 0], vec![0, 3, -5], vec![1, 1, 1]]);
        assert_eq!(m.char_poly(), m.char_poly_by_elimination());
    }

    #[test]
    fn rank_and_nullity() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity(), 1);
        assert_eq!(IntMatrix::zero(3).rank(), 0);
    }

    #[test]
    fn signature_diagonalization() {
        let m = IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]);
        assert_eq!(m.symmetric_signature(), -2);
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.symmetric_signature(), 0);
        let m = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, -3, 0], vec![0, 0, 0]]);
        assert_eq!(m.symmetric_signature(), 0);
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(m.symmetric_signature(), 2);
    }
}
