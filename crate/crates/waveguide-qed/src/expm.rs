//! Matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant, the standard dense algorithm. Used as the propagator
//! kernel behind the vectorised-Liouvillian oracle.

use crate::error::Result;
use crate::matrix::{ComplexMatrix, C64};

/// Padé-13 numerator/denominator coefficients.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm bound under which the degree-13 approximant is accurate to
/// double precision without scaling.
const THETA13: f64 = 5.371920351148152;

/// Computes exp(A) for a dense square complex matrix.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let norm = a.one_norm();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = C64::new((0.5f64).powi(squarings as i32), 0.0);
    let b = a.scaled(scale);

    let d = b.dim();
    let ident = ComplexMatrix::identity(d);
    let b2 = b.matmul(&b);
    let b4 = b2.matmul(&b2);
    let b6 = b2.matmul(&b4);

    // U = B (B6 (c13 B6 + c11 B4 + c9 B2) + c7 B6 + c5 B4 + c3 B2 + c1 I)
    let mut w = b6.scaled(C64::new(PADE13[13], 0.0));
    w.add_scaled_mut(PADE13[11], &b4);
    w.add_scaled_mut(PADE13[9], &b2);
    let mut u_inner = b6.matmul(&w);
    u_inner.add_scaled_mut(PADE13[7], &b6);
    u_inner.add_scaled_mut(PADE13[5], &b4);
    u_inner.add_scaled_mut(PADE13[3], &b2);
    u_inner.add_scaled_mut(PADE13[1], &ident);
    let u = b.matmul(&u_inner);

    // V = B6 (c12 B6 + c10 B4 + c8 B2) + c6 B6 + c4 B4 + c2 B2 + c0 I
    let mut w = b6.scaled(C64::new(PADE13[12], 0.0));
    w.add_scaled_mut(PADE13[10], &b4);
    w.add_scaled_mut(PADE13[8], &b2);
    let mut v = b6.matmul(&w);
    v.add_scaled_mut(PADE13[6], &b6);
    v.add_scaled_mut(PADE13[4], &b4);
    v.add_scaled_mut(PADE13[2], &b2);
    v.add_scaled_mut(PADE13[0], &ident);

    // exp(B) ≈ (V - U)⁻¹ (V + U), then undo the scaling by squaring.
    let mut result = v.sub(&u).solve(&v.add(&u))?;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}
