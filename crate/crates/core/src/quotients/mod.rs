//! Lusztig's description of `Ω^{d-1}` by unipotent matrices, the quotient
//! maps by `U` and by the radicals `U_I`, their chart formulas in the
//! coordinates `y_i = X_i / X_{i-1}`, and the extension of `ρ_I` to the
//! boundary stratum `C_I`.

mod laws;
mod table;

use std::sync::Arc;

pub use laws::{boundary_points, check_boundary, check_chart_agreement, check_full_quotient, check_quotient, check_roundtrip};
pub use table::{lemma_aa_certify, recursion_table, RecursionTable};

use crate::error::{Error, Result};
use crate::fields::Fe;
use crate::geometry::{chart_stratum, ChartPoint, ChartStratum, ProjectivePoint, SymbolicCap, VarietyCtx};

/// The unipotent matrix `u = (u_d, ..., u_1)` of a point of `Ω^{d-1}` and its `v_1, ..., v_{d-1}`.
///
/// Column `u_k` has entries `u_{1k}, ..., u_{d-k,k}` above a 1 in row `d-k+1`;
/// only the entries above the 1 are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentWitness {
    cols: Vec<Vec<Fe>>,
    v: Vec<Fe>,
}

impl UnipotentWitness {
    pub fn d(&self) -> usize {
        self.cols.len()
    }

    /// `u_{jk}`, 1-based; the implicit 1 is returned for `j = d-k+1`.
    pub fn u(&self, j: usize, k: usize) -> Fe {
        let col = &self.cols[k - 1];
        match j {
            _ if j <= col.len() => col[j - 1],
            _ if j == col.len() + 1 => Fe::ONE,
            _ => Fe::ZERO,
        }
    }

    /// `v_k`, 1-based.
    pub fn v(&self, k: usize) -> Fe {
        self.v[k - 1]
    }

    /// `v_i = u_{d-i,i}^q - u_{d-i,i} != 0` and `F(u_i) - u_i = v_i u_{i+1}`.
    pub fn is_valid(&self, ctx: &VarietyCtx) -> bool {
        let k = ctx.ext();
        let d = self.d();
        if d != ctx.d() || self.v.len() + 1 != d {
            return false;
        }
        (1..d).all(|i| {
            let top = self.u(d - i, i);
            let vi = self.v(i);
            !vi.is_zero()
                && k.sub(k.frobenius_q(top), top) == vi
                && (1..=d).all(|j| {
                    let x = self.u(j, i);
                    k.sub(k.frobenius_q(x), x) == k.mul(vi, self.u(j, i + 1))
                })
        })
    }
}

/// Builds `u` from `u_1 = (x_0, ..., x_{d-2}, 1)`, `x_j = X_j / X_{d-1}`, by
/// `v_i = u_{d-i,i}^q - u_{d-i,i}` and `u_{i+1} = (F(u_i) - u_i) / v_i`.
pub fn witness_from_omega(ctx: &VarietyCtx, p: &ProjectivePoint) -> Result<UnipotentWitness> {
    let k = ctx.ext();
    let d = ctx.d();
    let x = p.coords();
    if x.len() != d {
        return Err(Error::ContextMismatch(format!("point of length {} in rank {d}", x.len())));
    }
    let last = k.inv(x[d - 1]).map_err(|_| Error::NotOnVariety("Ω"))?;
    let mut cols = Vec::with_capacity(d);
    cols.push(x[..d - 1].iter().map(|&c| k.mul(c, last)).collect::<Vec<_>>());
    let mut v = Vec::with_capacity(d - 1);
    for i in 1..d {
        let col = &cols[i - 1];
        let top = col[d - i - 1];
        let vi = k.sub(k.frobenius_q(top), top);
        let inv = k
            .inv(vi)
            .map_err(|_| Error::Consistency(format!("v_{i} = 0 on a point that should lie in Ω")))?;
        let next = col[..d - i - 1]
            .iter()
            .map(|&c| k.mul(k.sub(k.frobenius_q(c), c), inv))
            .collect();
        v.push(vi);
        cols.push(next);
    }
    Ok(UnipotentWitness { cols, v })
}

/// `L(u) = [u_{11} : ... : u_{d-1,1} : 1]`.
pub fn lusztig_l(ctx: &VarietyCtx, w: &UnipotentWitness) -> Result<ProjectivePoint> {
    if !w.is_valid(ctx) {
        return Err(Error::Consistency("witness violates the defining relations".into()));
    }
    let mut coords = w.cols[0].clone();
    coords.push(Fe::ONE);
    ProjectivePoint::new(ctx.ext(), coords)
}

/// `(v_{d-1}, ..., v_1)`.
pub fn full_quotient_v(ctx: &VarietyCtx, p: &ProjectivePoint) -> Result<Vec<Fe>> {
    let w = witness_from_omega(ctx, p)?;
    Ok(w.v.iter().rev().copied().collect())
}

/// A point of `Ω^{i-1} × A^1 × Ω^{d-1-i}`; the outer factors are normalized projective points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientImagePoint {
    pub left: ProjectivePoint,
    pub middle: Fe,
    pub right: ProjectivePoint,
}

/// A point of `Ω^{d-1} ⊔ C_I` in chart coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartialCompactPoint {
    Interior(ChartPoint),
    Boundary(ChartPoint),
}

/// Everything needed to evaluate `ρ_I` for one `(d, q, m, i)`.
#[derive(Debug, Clone)]
pub struct QuotientMaps {
    ctx: VarietyCtx,
    i: usize,
    left: VarietyCtx,
    right: VarietyCtx,
    table: Option<Arc<RecursionTable>>,
}

impl QuotientMaps {
    /// Matrix-path maps only; no symbolic table.
    pub fn new(ctx: &VarietyCtx, i: usize) -> Result<Self> {
        let d = ctx.d();
        if i == 0 || i >= d {
            return Err(Error::OutOfRange(format!("i = {i} (allowed 1..={})", d.saturating_sub(1))));
        }
        Ok(QuotientMaps { ctx: ctx.clone(), i, left: ctx.with_rank(i)?, right: ctx.with_rank(d - i)?, table: None })
    }

    /// Also loads the recursion table used by the chart formulas.
    pub fn with_table(ctx: &VarietyCtx, i: usize, cap: SymbolicCap) -> Result<Self> {
        let mut maps = Self::new(ctx, i)?;
        maps.table = Some(recursion_table(ctx.base(), ctx.d(), cap)?);
        Ok(maps)
    }

    pub fn ctx(&self) -> &VarietyCtx {
        &self.ctx
    }
    pub fn i(&self) -> usize {
        self.i
    }
    pub fn left_ctx(&self) -> &VarietyCtx {
        &self.left
    }
    pub fn right_ctx(&self) -> &VarietyCtx {
        &self.right
    }

    fn table(&self) -> Result<&RecursionTable> {
        self.table
            .as_deref()
            .ok_or_else(|| Error::Invalid("chart formulas need the recursion table".into()))
    }

    /// `[z_1 : ... : z_n : 1]`.
    fn affine_point(&self, mut zs: Vec<Fe>) -> Result<ProjectivePoint> {
        zs.push(Fe::ONE);
        ProjectivePoint::new(self.ctx.ext(), zs)
    }

    /// Left, middle and right factors from the matrix `u`.
    pub fn rho(&self, p: &ProjectivePoint) -> Result<QuotientImagePoint> {
        let w = witness_from_omega(&self.ctx, p)?;
        self.rho_from_witness(&w)
    }

    pub fn rho_from_witness(&self, w: &UnipotentWitness) -> Result<QuotientImagePoint> {
        let (d, i) = (self.ctx.d(), self.i);
        let col = d + 1 - i;
        let left = self.affine_point((1..i).map(|j| w.u(j, col)).collect())?;
        let right = self.affine_point((i + 1..d).map(|j| w.u(j, 1)).collect())?;
        Ok(QuotientImagePoint { left, middle: w.v(d - i), right })
    }

    /// True if the outer factors lie in `Ω` and the middle factor is a unit.
    pub fn image_in_omega(&self, img: &QuotientImagePoint) -> bool {
        self.left.omega_contains(&img.left) && self.right.omega_contains(&img.right) && !img.middle.is_zero()
    }

    /// Right factor `(1/(y_{i+1}...y_{d-1}), ..., 1/y_{d-1})`.
    fn chart_right(&self, ys: &[Fe]) -> Result<ProjectivePoint> {
        let k = self.ctx.ext();
        let d = self.ctx.d();
        let zs = (self.i + 1..d)
            .map(|j| {
                let prod = ys[j - 1..].iter().fold(Fe::ONE, |acc, &y| k.mul(acc, y));
                k.inv(prod).map_err(|_| Error::Pole(format!("y_{j}...y_{} = 0", d - 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        self.affine_point(zs)
    }

    /// `(y_j ... y_{i-1})^(q^{d-i})`.
    fn left_scale(&self, ys: &[Fe], j: usize) -> Fe {
        let k = self.ctx.ext();
        let prod = ys[j - 1..self.i - 1].iter().fold(Fe::ONE, |acc, &y| k.mul(acc, y));
        k.frobenius_iter(prod, (self.ctx.d() - self.i) as u32)
    }

    /// `ρ_I` through the recursion table: `a_{j,d-i} / (y_j ... y_{i-1})^(q^{d-i})`, `v_{d-i}`, and the right factor.
    pub fn rho_chart(&self, y: &ChartPoint) -> Result<QuotientImagePoint> {
        let t = self.table()?;
        let (d, i) = (self.ctx.d(), self.i);
        let (k, emb) = (self.ctx.ext(), self.ctx.embedding());
        let left = (1..i)
            .map(|j| {
                let a = t.a(j, d - i)?.evaluate(k, emb, &y.0)?;
                k.div(a, self.left_scale(&y.0, j)).map_err(|_| Error::Pole("left factor".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let middle = t.v(d - i)?.evaluate(k, emb, &y.0)?;
        Ok(QuotientImagePoint { left: self.affine_point(left)?, middle, right: self.chart_right(&y.0)? })
    }

    pub fn classify(&self, y: &ChartPoint) -> Result<PartialCompactPoint> {
        match chart_stratum(&self.ctx, y, self.i)? {
            ChartStratum::Interior => Ok(PartialCompactPoint::Interior(y.clone())),
            ChartStratum::Boundary => Ok(PartialCompactPoint::Boundary(y.clone())),
            ChartStratum::Outside => Err(Error::NotOnVariety("Ω ⊔ C_I")),
        }
    }

    /// The extension `ρ̄_I`: `(left, v_{d-i}^{-1}, right)` inside, and
    /// `((1/(y_j...y_{i-1}))^(q^{d-i}))_j, 0, right` on `C_I`.
    pub fn rho_bar(&self, pt: &PartialCompactPoint) -> Result<QuotientImagePoint> {
        match pt {
            PartialCompactPoint::Interior(y) => {
                let mut img = self.rho_chart(y)?;
                img.middle = self.ctx.ext().inv(img.middle)?;
                Ok(img)
            }
            PartialCompactPoint::Boundary(y) => {
                let k = self.ctx.ext();
                let left = (1..self.i)
                    .map(|j| k.inv(self.left_scale(&y.0, j)).map_err(|_| Error::Pole("left factor".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(QuotientImagePoint { left: self.affine_point(left)?, middle: Fe::ZERO, right: self.chart_right(&y.0)? })
            }
        }
    }

    /// `ρ̄_I` on `C_I` from the residues of the table entries modulo `y_i`.
    pub fn rho_bar_boundary_symbolic(&self, y: &ChartPoint) -> Result<QuotientImagePoint> {
        let t = self.table()?;
        let (d, i) = (self.ctx.d(), self.i);
        let (k, emb) = (self.ctx.ext(), self.ctx.embedding());
        let left = (1..i)
            .map(|j| {
                let a = t.a(j, d - i)?.reduce_mod_y(i - 1)?.evaluate(k, emb, &y.0)?;
                k.div(a, self.left_scale(&y.0, j)).map_err(|_| Error::Pole("left factor".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let middle = t.v(d - i)?.inv()?.reduce_mod_y(i - 1)?.evaluate(k, emb, &y.0)?;
        Ok(QuotientImagePoint { left: self.affine_point(left)?, middle, right: self.chart_right(&y.0)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{chart_from_projective, enumerate_omega};

    #[test]
    fn witness_example_f4() {
        let ctx = VarietyCtx::new(2, 2, 2).unwrap();
        let k = ctx.ext();
        let w = k.from_code(2);
        let p = ProjectivePoint::new(k, vec![Fe::ONE, w]).unwrap();
        let wit = witness_from_omega(&ctx, &p).unwrap();
        assert_eq!(wit.u(1, 1), k.mul(w, w));
        assert_eq!(wit.v(1), Fe::ONE);
        assert_eq!(lusztig_l(&ctx, &wit).unwrap(), p);
        let rational = ProjectivePoint::new(k, vec![Fe::ONE, Fe::ONE]).unwrap();
        assert!(matches!(witness_from_omega(&ctx, &rational), Err(Error::Consistency(_))));
        let d1 = VarietyCtx::new(1, 2, 2).unwrap();
        assert!(full_quotient_v(&d1, &ProjectivePoint::unit()).unwrap().is_empty());
    }

    #[test]
    fn roundtrip_and_chart_agreement() {
        let ctx = VarietyCtx::new(3, 2, 3).unwrap();
        let omega = enumerate_omega(&ctx).unwrap();
        for i in 1..3 {
            let maps = QuotientMaps::with_table(&ctx, i, SymbolicCap::default()).unwrap();
            for p in &omega {
                let w = witness_from_omega(&ctx, p).unwrap();
                assert!(w.is_valid(&ctx));
                assert_eq!(&lusztig_l(&ctx, &w).unwrap(), p);
                let img = maps.rho(p).unwrap();
                assert!(maps.image_in_omega(&img));
                let y = chart_from_projective(&ctx, p).unwrap();
                assert_eq!(maps.rho_chart(&y).unwrap(), img);
            }
        }
    }

    #[test]
    fn d2_middle_is_v1() {
        let ctx = VarietyCtx::new(2, 3, 2).unwrap();
        let maps = QuotientMaps::with_table(&ctx, 1, SymbolicCap::default()).unwrap();
        let k = ctx.ext();
        for p in enumerate_omega(&ctx).unwrap() {
            let y = chart_from_projective(&ctx, &p).unwrap().0[0];
            // v_1 = (1 - y^(q-1)) / y^q
            let expected = k.div(k.sub(Fe::ONE, k.pow(y, 2)), k.pow(y, 3)).unwrap();
            let img = maps.rho(&p).unwrap();
            assert_eq!(img.middle, expected);
            assert_eq!(img.left, ProjectivePoint::unit());
            assert_eq!(img.right, ProjectivePoint::unit());
        }
    }
}
