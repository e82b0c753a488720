//! Exact homological invariants of the page: intersection form, Dehn twist
//! matrices, monodromy, Seifert matrix, Alexander polynomial, signature and
//! the fingerprint bundle used for link comparison.
//!
//! Sign conventions: the raw symmetrized Seifert form A + Aᵀ of a positive
//! link is negative definite on the trefoil, so the reported signature is
//! −sig(A + Aᵀ), making the positive trefoil +2 and T(2,7) +6.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::coxeter::{twist_order, Enumeration};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::openbook::surface_summary;
use crate::plane::CheckerboardGraph;
use crate::poly::LaurentPoly;

/// Antisymmetric Gram matrix of the intersection form in the basis given by
/// the enumeration: +1 at (i, j) for an edge from the i-th to the j-th
/// vertex.
pub fn intersection_matrix(g: &CheckerboardGraph, e: &Enumeration) -> IntMatrix {
    let n = e.0.len();
    let mut b = IntMatrix::zero(n);
    for edge in g.edges() {
        let i = e.position(edge.tail).expect("enumeration covers every vertex");
        let j = e.position(edge.head).expect("enumeration covers every vertex");
        b[(i, j)] = BigInt::from(1);
        b[(j, i)] = BigInt::from(-1);
    }
    b
}

/// Action of the Dehn twist along the k-th curve (1-based) on homology:
/// identity except row k, which carries −B off the diagonal.
pub fn twist_matrix(b: &IntMatrix, k: usize) -> IntMatrix {
    let n = b.size();
    assert!(k >= 1 && k <= n, "twist index out of range");
    let mut s = IntMatrix::identity(n);
    for j in 0..n {
        if j != k - 1 {
            s[(k - 1, j)] = -b[(k - 1, j)].clone();
        }
    }
    s
}

/// Monodromy matrix S = Sⁿ ⋯ S¹ in the twist order of the graph.
pub fn monodromy_matrix(g: &CheckerboardGraph) -> Result<IntMatrix> {
    let e = twist_order(g)?;
    Ok(monodromy_for(g, &e))
}

/// Monodromy for an explicit enumeration; index 1 twists first.
pub fn monodromy_for(g: &CheckerboardGraph, e: &Enumeration) -> IntMatrix {
    let b = intersection_matrix(g, e);
    let n = b.size();
    let mut s = IntMatrix::identity(n);
    for k in 1..=n {
        s = twist_matrix(&b, k).mul(&s);
    }
    s
}

/// Seifert matrix A = B·(S − 1)⁻¹; errors with `SingularMonodromy` when the
/// closure has two or more components.
pub fn seifert_matrix(g: &CheckerboardGraph) -> Result<IntMatrix> {
    let e = twist_order(g)?;
    let b = intersection_matrix(g, &e);
    let s = monodromy_for(g, &e);
    let s_minus_one = s.sub(&IntMatrix::identity(s.size()));
    let a = b.mul_inverse(&s_minus_one)?;
    debug_assert_eq!(a.transpose().sub(&a), b, "B = A^T - A");
    Ok(a)
}

/// Alexander polynomial det(t·1 − S), normalized so the lowest exponent is
/// 0 and the constant coefficient positive. Computed by exact interpolation;
/// `alexander_by_elimination` is the independent in-pipeline cross-check.
pub fn alexander(g: &CheckerboardGraph) -> Result<LaurentPoly> {
    Ok(monodromy_matrix(g)?.char_poly().normalized())
}

/// Same polynomial through fraction-free elimination over Z[t].
pub fn alexander_by_elimination(g: &CheckerboardGraph) -> Result<LaurentPoly> {
    Ok(monodromy_matrix(g)?.char_poly_by_elimination().normalized())
}

/// Signature with the positive convention: −sig(A + Aᵀ).
pub fn signature(g: &CheckerboardGraph) -> Result<i64> {
    let a = seifert_matrix(g)?;
    Ok(-a.add(&a.transpose()).symmetric_signature())
}

/// Invariant bundle replacing external knot identification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fingerprint {
    pub alexander: LaurentPoly,
    /// Present only when the Seifert matrix exists (one component).
    pub signature: Option<i64>,
    pub determinant: BigInt,
    pub genus: u32,
    pub components: u32,
    pub betti1: u32,
}

impl Fingerprint {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alexander": self.alexander.to_json(),
            "signature": self.signature,
            "determinant": i64::try_from(&self.determinant)
                .expect("determinant exceeds the i64 JSON range"),
            "genus": self.genus,
            "components": self.components,
            "betti1": self.betti1,
        })
    }
}

pub fn fingerprint(g: &CheckerboardGraph) -> Result<Fingerprint> {
    let summary = surface_summary(g)?;
    let alexander = alexander(g)?;
    let signature = match signature(g) {
        Ok(s) => Some(s),
        Err(Error::SingularMonodromy) => None,
        Err(e) => return Err(e),
    };
    debug_assert_eq!(
        signature.is_none(),
        summary.components >= 2,
        "Seifert matrix exists exactly for knots"
    );
    let determinant = alexander.eval_int(&BigInt::from(-1)).abs();
    let betti1 = summary.betti1;
    let mu = summary.components;
    debug_assert_eq!((betti1 + 1 - mu) % 2, 0);
    Ok(Fingerprint {
        alexander,
        signature,
        determinant,
        genus: (betti1 + 1 - mu) / 2,
        components: mu,
        betti1,
    })
}
