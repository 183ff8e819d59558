use super::MAX_RANK;
use crate::fields::{Fe, FieldCtx};

/// Determinant of a row-major `n x n` matrix by Gaussian elimination; `a` is clobbered.
pub fn det(field: &FieldCtx, a: &mut [Fe], n: usize) -> Fe {
    let mut det = Fe::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Fe::ZERO;
        };
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            det = field.neg(det);
        }
        let piv = a[col * n + col];
        det = field.mul(det, piv);
        let inv = field.inv(piv).expect("pivot is nonzero");
        for r in col + 1..n {
            let lead = a[r * n + col];
            if lead.is_zero() {
                continue;
            }
            let factor = field.mul(lead, inv);
            for c in col + 1..n {
                let v = field.mul(factor, a[col * n + c]);
                a[r * n + c] = field.sub(a[r * n + c], v);
            }
        }
    }
    det
}

/// `det((X_i^(q^j))_{0<=i,j<d})` with `q` the base size of `field`.
pub fn moore_det_in(field: &FieldCtx, coords: &[Fe]) -> Fe {
    let d = coords.len();
    assert!(d <= MAX_RANK, "rank above {MAX_RANK}");
    let mut a = [Fe::ZERO; MAX_RANK * MAX_RANK];
    for (i, &x) in coords.iter().enumerate() {
        let mut v = x;
        for j in 0..d {
            a[i * d + j] = v;
            v = field.frobenius_q(v);
        }
    }
    det(field, &mut a[..d * d], d)
}

/// True iff `Σ a_i X_i != 0` for every nonzero `a ∈ F_q^d`, where the
/// coefficients come from `base` through `emb`.
pub fn avoids_rational_hyperplanes(
    base: &FieldCtx,
    ext: &FieldCtx,
    emb: &crate::fields::Embedding,
    coords: &[Fe],
) -> bool {
    let d = coords.len();
    let scalars: Vec<Fe> = base.elements().map(|c| emb.apply(c)).collect();
    let q = scalars.len();
    let total = q.pow(d as u32);
    (1..total).all(|mut idx| {
        let mut acc = Fe::ZERO;
        for &x in coords.iter().rev() {
            acc = ext.add(acc, ext.mul(scalars[idx % q], x));
            idx /= q;
        }
        !acc.is_zero()
    })
}
