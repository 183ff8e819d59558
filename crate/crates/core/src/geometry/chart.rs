use super::{moore_det_in, ChartPoint, ProjectivePoint, VarietyCtx};
use crate::error::{Error, Result};
use crate::fields::Fe;

/// Position of a chart point relative to `Ω` and the boundary stratum `C_I`, `I = Δ \ {α_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartStratum {
    Interior,
    Boundary,
    Outside,
}

/// `y_i = X_i / X_{i-1}`.
pub fn chart_from_projective(ctx: &VarietyCtx, p: &ProjectivePoint) -> Result<ChartPoint> {
    let k = ctx.ext();
    let x = p.coords();
    let ys = (1..x.len())
        .map(|i| k.div(x[i], x[i - 1]).map_err(|_| Error::Pole(format!("X_{} = 0", i - 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartPoint(ys))
}

/// `[1 : y_1 : y_1 y_2 : ... : y_1 ... y_{d-1}]`.
pub fn chart_to_projective(ctx: &VarietyCtx, y: &ChartPoint) -> ProjectivePoint {
    ProjectivePoint::from_normalized(chart_coords(ctx, &y.0))
}

fn chart_coords(ctx: &VarietyCtx, ys: &[Fe]) -> Vec<Fe> {
    let k = ctx.ext();
    let mut out = Vec::with_capacity(ys.len() + 1);
    let mut x = Fe::ONE;
    out.push(x);
    for &y in ys {
        x = k.mul(x, y);
        out.push(x);
    }
    out
}

/// `δ_n(y_1, ..., y_{n-1})` evaluated, where `n = ys.len() + 1`.
pub fn delta_value(ctx: &VarietyCtx, ys: &[Fe]) -> Fe {
    let k = ctx.ext();
    k.pow(moore_det_in(k, &chart_coords(ctx, ys)), ctx.q() - 1)
}

/// Interior iff `δ_d(y) != 0`; on the stratum iff `y_i = 0` and
/// `δ_i(y_{<i}) δ_{d-i}(y_{>i}) != 0`.
pub fn chart_stratum(ctx: &VarietyCtx, y: &ChartPoint, i: usize) -> Result<ChartStratum> {
    let d = ctx.d();
    if y.0.len() + 1 != d {
        return Err(Error::ContextMismatch(format!("chart point has {} coordinates, expected {}", y.0.len(), d - 1)));
    }
    if i == 0 || i >= d {
        return Err(Error::OutOfRange(format!("stratum index i = {i} (allowed 1..={})", d - 1)));
    }
    if !delta_value(ctx, &y.0).is_zero() {
        return Ok(ChartStratum::Interior);
    }
    let ys = &y.0;
    if ys[i - 1].is_zero() && !delta_value(ctx, &ys[..i - 1]).is_zero() && !delta_value(ctx, &ys[i..]).is_zero() {
        return Ok(ChartStratum::Boundary);
    }
    Ok(ChartStratum::Outside)
}
