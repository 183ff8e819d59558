use rayon::prelude::*;

use super::{AffineVector, ProjectivePoint, VarietyCtx, MAX_RANK};
use crate::error::Result;
use crate::fields::{gcd, Fe, FieldCtx};

const CHUNK: u64 = 1 << 14;

/// A contiguous block of normalized projective representatives.
///
/// Representatives with leading 1 in position `lead` are indexed by the
/// remaining coordinates read as a base-`Q` number, last coordinate least
/// significant; the chunk covers indices `start..end`.
#[derive(Debug, Clone, Copy)]
pub struct ProjectiveChunk {
    lead: usize,
    start: u64,
    end: u64,
}

/// Chunks in lexicographic code order: more leading zeros first.
pub fn projective_chunks(ctx: &VarietyCtx) -> Vec<ProjectiveChunk> {
    let big_q = ctx.ext().size();
    let d = ctx.d();
    let mut out = Vec::new();
    for lead in (0..d).rev() {
        let total = big_q.pow((d - 1 - lead) as u32);
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            out.push(ProjectiveChunk { lead, start, end });
            start = end;
        }
    }
    out
}

impl ProjectiveChunk {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn for_each(&self, ctx: &VarietyCtx, mut f: impl FnMut(&[Fe])) {
        let d = ctx.d();
        let mut coords = [Fe::ZERO; MAX_RANK];
        coords[self.lead] = Fe::ONE;
        let free = self.lead + 1..d;
        odometer(ctx.ext(), &mut coords[..d], free, self.start, self.end, |c| f(c));
    }
}

/// A contiguous block of `A^d(F_{q^m})` in code order.
#[derive(Debug, Clone, Copy)]
pub struct AffineChunk {
    start: u64,
    end: u64,
}

pub fn affine_chunks(ctx: &VarietyCtx) -> Vec<AffineChunk> {
    let total = ctx.ext().size().pow(ctx.d() as u32);
    (0..total.div_ceil(CHUNK))
        .map(|k| AffineChunk { start: k * CHUNK, end: ((k + 1) * CHUNK).min(total) })
        .collect()
}

impl AffineChunk {
    pub fn for_each(&self, ctx: &VarietyCtx, mut f: impl FnMut(&[Fe])) {
        let d = ctx.d();
        let mut coords = [Fe::ZERO; MAX_RANK];
        odometer(ctx.ext(), &mut coords[..d], 0..d, self.start, self.end, |c| f(c));
    }
}

/// Runs the coordinates in `free` through indices `start..end` (base `|field|`,
/// last coordinate least significant), calling `f` after each setting.
fn odometer(
    field: &FieldCtx,
    coords: &mut [Fe],
    free: std::ops::Range<usize>,
    start: u64,
    end: u64,
    mut f: impl FnMut(&[Fe]),
) {
    if start >= end {
        return;
    }
    let size = field.size() as u32;
    let mut digits = [0u32; MAX_RANK];
    let mut rest = start;
    for pos in free.clone().rev() {
        digits[pos] = (rest % size as u64) as u32;
        rest /= size as u64;
        coords[pos] = field.from_code(digits[pos]);
    }
    for _ in start..end {
        f(coords);
        for pos in free.clone().rev() {
            digits[pos] += 1;
            if digits[pos] < size {
                coords[pos] = field.from_code(digits[pos]);
                break;
            }
            digits[pos] = 0;
            coords[pos] = Fe::ZERO;
        }
    }
}

/// `Ω^{d-1}(F_{q^m})` in lexicographic code order.
pub fn enumerate_omega(ctx: &VarietyCtx) -> Result<Vec<ProjectivePoint>> {
    ctx.budget().check("points of P^{d-1}", ctx.projective_size())?;
    let parts: Vec<Vec<ProjectivePoint>> = projective_chunks(ctx)
        .par_iter()
        .map(|ch| {
            let mut out = Vec::new();
            ch.for_each(ctx, |x| {
                if !ctx.moore_det(x).is_zero() {
                    out.push(ProjectivePoint::from_normalized(x.to_vec()));
                }
            });
            out
        })
        .collect();
    Ok(parts.concat())
}

/// Solutions of `λ^e = t` in `F^×`, for the fixed exponent `e = q^d - 1`.
#[derive(Debug, Clone, Copy)]
pub struct PowerPreimages {
    order: u64,
    g: u64,
    // inverse of e/g modulo order/g
    inv: u64,
}

impl PowerPreimages {
    pub fn new(field: &FieldCtx, e: u128) -> Self {
        let order = field.order();
        let e = (e % order as u128) as u64;
        let g = gcd(e, order);
        let m = order / g;
        let inv = if m == 1 { 0 } else { mod_inverse((e / g) % m, m) };
        PowerPreimages { order, g, inv }
    }

    /// Number of preimages of every point in the image.
    pub fn fiber(&self) -> u64 {
        self.g
    }

    pub fn count(&self, field: &FieldCtx, t: Fe) -> u64 {
        match field.log(t) {
            Some(l) if (l as u64).is_multiple_of(self.g) => self.g,
            _ => 0,
        }
    }

    /// The preimages, by increasing logarithm.
    pub fn solve(&self, field: &FieldCtx, t: Fe) -> Vec<Fe> {
        self.solutions(field, t).collect()
    }

    pub fn solutions<'a>(&self, field: &'a FieldCtx, t: Fe) -> impl Iterator<Item = Fe> + 'a {
        let m = self.order / self.g;
        let (count, l0) = match field.log(t) {
            Some(l) if (l as u64).is_multiple_of(self.g) => {
                let l = l as u64 / self.g;
                (self.g, (l as u128 * self.inv as u128 % m as u128) as u64)
            }
            _ => (0, 0),
        };
        (0..count).map(move |k| field.from_log(l0 + k * m))
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

impl VarietyCtx {
    /// The preimage solver for `λ ↦ λ^(q^d - 1)` on `F_{q^m}^×`.
    pub fn fiber_solver(&self) -> PowerPreimages {
        PowerPreimages::new(self.ext(), crate::fields::pow_u128(self.q(), self.d() as u32) - 1)
    }

    /// `λ^(q^d-1)` must equal this for `λ·P` to lie on DL (`P` normalized, in Ω).
    pub fn fiber_target(&self, p: &ProjectivePoint) -> Fe {
        let det = self.moore_det(p.coords());
        let k = self.ext();
        let dq = k.pow(det, self.q() - 1);
        k.div(self.sign(), dq).expect("point lies in Ω")
    }

    /// `π^{-1}(P) ∩ DL(F_{q^m})`, by increasing scalar logarithm.
    pub fn fiber(&self, solver: &PowerPreimages, p: &ProjectivePoint) -> Vec<AffineVector> {
        let k = self.ext();
        solver
            .solve(k, self.fiber_target(p))
            .into_iter()
            .map(|l| AffineVector(p.coords().iter().map(|&x| k.mul(l, x)).collect()))
            .collect()
    }
}

/// `DL^{d-1}(F_{q^m})` in lexicographic code order, built from the fibers over Ω.
pub fn enumerate_dl(ctx: &VarietyCtx) -> Result<Vec<AffineVector>> {
    let solver = ctx.fiber_solver();
    ctx.budget()
        .check("points of DL", ctx.projective_size() * solver.fiber() as u128)?;
    let omega = enumerate_omega(ctx)?;
    let mut out: Vec<AffineVector> = omega.par_iter().flat_map_iter(|p| ctx.fiber(&solver, p)).collect();
    let k = ctx.ext();
    out.par_sort_by(|a, b| super::code_order(k, &a.0, &b.0));
    Ok(out)
}

/// `DL^{d-1}(F_{q^m})` by testing every vector of `A^d`.
pub fn enumerate_dl_bruteforce(ctx: &VarietyCtx) -> Result<Vec<AffineVector>> {
    ctx.budget().check("points of A^d", ctx.affine_size())?;
    let parts: Vec<Vec<AffineVector>> = affine_chunks(ctx)
        .par_iter()
        .map(|ch| {
            let mut out = Vec::new();
            ch.for_each(ctx, |x| {
                let v = AffineVector(x.to_vec());
                if ctx.dl_contains(&v) {
                    out.push(v);
                }
            });
            out
        })
        .collect();
    Ok(parts.concat())
}
