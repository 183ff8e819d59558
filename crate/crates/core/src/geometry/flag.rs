use super::{ProjectivePoint, VarietyCtx};
use crate::fields::{Fe, FieldCtx};

/// `D_1 ⊂ D_2 ⊂ ... ⊂ D_d` with `D_i` spanned by `P, F(P), ..., F^{i-1}(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    /// Reduced row echelon basis of each `D_i`.
    pub spaces: Vec<Vec<Vec<Fe>>>,
    pub complete: bool,
}

impl Flag {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Vec::len).collect()
    }
}

pub fn flag_of(ctx: &VarietyCtx, p: &ProjectivePoint) -> Flag {
    let k = ctx.ext();
    let mut gens: Vec<Vec<Fe>> = Vec::new();
    let mut v = p.coords().to_vec();
    let mut spaces = Vec::with_capacity(ctx.d());
    for _ in 0..ctx.d() {
        gens.push(v.clone());
        spaces.push(rref(k, &gens));
        v = ctx.frobenius(&v);
    }
    let complete = spaces.iter().enumerate().all(|(i, s)| s.len() == i + 1);
    Flag { spaces, complete }
}

/// Nonzero rows of the reduced row echelon form.
pub fn rref(field: &FieldCtx, rows: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let mut a: Vec<Vec<Fe>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = field.inv(a[rank][col]).expect("pivot is nonzero");
        for x in a[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..a.len() {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for c in 0..ncols {
                let t = field.mul(f, a[rank][c]);
                a[r][c] = field.sub(a[r][c], t);
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a
}
