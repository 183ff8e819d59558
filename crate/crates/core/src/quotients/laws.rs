use std::collections::HashSet;

use rayon::prelude::*;

use super::{full_quotient_v, lusztig_l, witness_from_omega, PartialCompactPoint, QuotientImagePoint, QuotientMaps};
use crate::counting::omega_count_closed;
use crate::error::Result;
use crate::fields::Fe;
use crate::geometry::{chart_from_projective, chart_stratum, enumerate_omega, projective_chunks, ChartPoint, ChartStratum, ProjectivePoint, VarietyCtx};
use crate::groups::{act_projective, enumerate_subgroup, orbits, point_key, SimpleRootSubset, SubgroupKind};
use crate::report::{CheckLine, Report};

fn line(name: &str, ctx: &VarietyCtx) -> CheckLine {
    CheckLine::new(name).param("d", ctx.d()).param("q", ctx.q()).param("m", ctx.m())
}

/// `L` inverts the recursion, and every `v_i` is nonzero, on all of `Ω(F_{q^m})`.
pub fn check_roundtrip(ctx: &VarietyCtx) -> Result<Report> {
    ctx.budget().check("points of P^{d-1}", ctx.projective_size())?;
    let (points, bad) = projective_chunks(ctx)
        .par_iter()
        .map(|ch| {
            let (mut n, mut bad) = (0u64, 0u64);
            ch.for_each(ctx, |x| {
                if ctx.moore_det(x).is_zero() {
                    return;
                }
                n += 1;
                let p = ProjectivePoint::from_normalized(x.to_vec());
                let ok = witness_from_omega(ctx, &p)
                    .is_ok_and(|w| w.is_valid(ctx) && lusztig_l(ctx, &w).is_ok_and(|l| l == p));
                if !ok {
                    bad += 1;
                }
            });
            (n, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let mut r = Report::default();
    r.push(line("roundtrip", ctx).pass(bad == 0).detail(format!("points={points} failures={bad}")));
    Ok(r)
}

/// Orbits of a subgroup on `Ω(F_{q^m})`, with the point list.
fn omega_orbits(ctx: &VarietyCtx, kind: &SubgroupKind) -> Result<(Vec<ProjectivePoint>, Vec<Vec<usize>>, usize)> {
    let omega = enumerate_omega(ctx)?;
    let group = enumerate_subgroup(ctx.base(), ctx.d(), kind, ctx.budget())?;
    let parts = orbits(&omega, &group, |p| point_key(ctx.ext(), p.coords()), |g, p| act_projective(ctx, g, p))?;
    Ok((omega, parts, group.len()))
}

/// A map is constant on each orbit and separates distinct orbits.
fn constancy_and_separation<T: Eq + std::hash::Hash + Sync>(
    parts: &[Vec<usize>],
    values: &[T],
) -> (usize, usize) {
    let not_constant = parts.par_iter().filter(|o| o.iter().any(|&n| values[n] != values[o[0]])).count();
    let distinct: HashSet<&T> = parts.iter().map(|o| &values[o[0]]).collect();
    (not_constant, parts.len() - distinct.len())
}

/// `ρ_I` is constant on `U_I`-orbits, separates them, and lands in
/// `Ω^{i-1} × G_m × Ω^{d-1-i}`. Also reports how much of the target is hit.
pub fn check_quotient(maps: &QuotientMaps) -> Result<Report> {
    let ctx = maps.ctx();
    let i = maps.i();
    let (omega, parts, group_order) = omega_orbits(ctx, &SubgroupKind::UI(SimpleRootSubset::maximal(ctx.d(), i)?))?;
    let images: Vec<QuotientImagePoint> = omega.par_iter().map(|p| maps.rho(p)).collect::<Result<_>>()?;
    let (not_constant, merged) = constancy_and_separation(&parts, &images);
    let outside = images.par_iter().filter(|img| !maps.image_in_omega(img)).count();
    let free = parts.iter().all(|o| o.len() == group_order);
    let l = |name: &str| line(name, ctx).param("i", i);
    let mut r = Report::default();
    r.push(l("quotient.constancy").pass(not_constant == 0).detail(format!(
        "orbits={} order={group_order} free={free}",
        parts.len()
    )));
    r.push(l("quotient.separation").pass(merged == 0).detail(format!("merged={merged}")));
    r.push(l("quotient.membership").pass(outside == 0).detail(format!("outside={outside}")));
    let (q, m) = (ctx.q(), ctx.m());
    let target = omega_count_closed(i, q, m) * (ctx.ext().order() as u128) * omega_count_closed(ctx.d() - i, q, m);
    r.push(l("quotient.image-size").detail(format!("image={} target={target} (observed, not asserted)", parts.len())));
    Ok(r)
}

/// `(v_{d-1}, ..., v_1)` is constant on `U`-orbits and separates them.
pub fn check_full_quotient(ctx: &VarietyCtx) -> Result<Report> {
    let (omega, parts, group_order) = omega_orbits(ctx, &SubgroupKind::U)?;
    let values: Vec<Vec<Fe>> = omega.par_iter().map(|p| full_quotient_v(ctx, p)).collect::<Result<_>>()?;
    let nonzero = values.iter().all(|v| v.iter().all(|x| !x.is_zero()));
    let (not_constant, merged) = constancy_and_separation(&parts, &values);
    let mut r = Report::default();
    r.push(
        line("quotient-v.constancy", ctx)
            .pass(not_constant == 0 && nonzero)
            .detail(format!("orbits={} order={group_order}", parts.len())),
    );
    r.push(line("quotient-v.separation", ctx).pass(merged == 0).detail(format!("merged={merged}")));
    Ok(r)
}

/// Chart formula for `ρ_I` against the matrix recursion at every point of `Ω(F_{q^m})`.
pub fn check_chart_agreement(maps: &QuotientMaps) -> Result<Report> {
    let ctx = maps.ctx();
    let omega = enumerate_omega(ctx)?;
    let bad = omega
        .par_iter()
        .filter(|p| {
            let y = chart_from_projective(ctx, p);
            match (y, maps.rho(p)) {
                (Ok(y), Ok(img)) => maps.rho_chart(&y).ok() != Some(img),
                _ => true,
            }
        })
        .count();
    let mut r = Report::default();
    r.push(
        line("chart.agreement", ctx)
            .param("i", maps.i())
            .pass(bad == 0)
            .detail(format!("points={} failures={bad}", omega.len())),
    );
    Ok(r)
}

/// Rational points of `C_I`: `y_i = 0` with `(y_1..y_{i-1})` and `(y_{i+1}..y_{d-1})` charts of
/// points of `Ω^{i-1}` and `Ω^{d-1-i}`. Ordered by left factor, then right.
pub fn boundary_points(maps: &QuotientMaps) -> Result<Vec<ChartPoint>> {
    let (lc, rc) = (maps.left_ctx(), maps.right_ctx());
    let charts = |c: &VarietyCtx| -> Result<Vec<Vec<Fe>>> {
        enumerate_omega(c)?.iter().map(|p| chart_from_projective(c, p).map(|y| y.0)).collect()
    };
    let (left, right) = (charts(lc)?, charts(rc)?);
    maps.ctx()
        .budget()
        .check("boundary points", left.len() as u128 * right.len() as u128)?;
    let mut out = Vec::with_capacity(left.len() * right.len());
    for a in &left {
        for b in &right {
            let mut y = a.clone();
            y.push(Fe::ZERO);
            y.extend_from_slice(b);
            out.push(ChartPoint(y));
        }
    }
    Ok(out)
}

/// The extension `ρ̄_I`: boundary formula against the residues of the table,
/// middle coordinate zero exactly on the boundary, and injectivity on `C_I`.
pub fn check_boundary(maps: &QuotientMaps) -> Result<Report> {
    let ctx = maps.ctx();
    let i = maps.i();
    let l = |name: &str| line(name, ctx).param("i", i);
    let boundary = boundary_points(maps)?;
    let misplaced = boundary
        .par_iter()
        .filter(|y| !matches!(chart_stratum(ctx, y, i), Ok(ChartStratum::Boundary)))
        .count();
    let images: Vec<QuotientImagePoint> = boundary
        .par_iter()
        .map(|y| maps.rho_bar(&PartialCompactPoint::Boundary(y.clone())))
        .collect::<Result<_>>()?;
    let formula_bad = boundary
        .par_iter()
        .zip(&images)
        .filter(|(y, img)| maps.rho_bar_boundary_symbolic(y).ok().as_ref() != Some(*img))
        .count();
    let outside = images
        .iter()
        .filter(|img| !maps.left_ctx().omega_contains(&img.left) || !maps.right_ctx().omega_contains(&img.right))
        .count();
    let distinct: HashSet<&QuotientImagePoint> = images.iter().collect();
    let collisions = images.len() - distinct.len();

    let omega = enumerate_omega(ctx)?;
    let interior_bad = omega
        .par_iter()
        .filter(|p| {
            let Ok(y) = chart_from_projective(ctx, p) else { return true };
            let Ok(pt) = maps.classify(&y) else { return true };
            match (maps.rho_bar(&pt), maps.rho(p)) {
                (Ok(bar), Ok(img)) => {
                    bar.middle.is_zero()
                        || ctx.ext().inv(bar.middle).ok() != Some(img.middle)
                        || bar.left != img.left
                        || bar.right != img.right
                }
                _ => true,
            }
        })
        .count();
    let boundary_nonzero = images.iter().filter(|img| !img.middle.is_zero()).count();

    let mut r = Report::default();
    r.push(l("compactified.stratum").pass(misplaced == 0).detail(format!("boundary={} misplaced={misplaced}", boundary.len())));
    r.push(l("compactified.boundary-formula").pass(formula_bad == 0 && outside == 0).detail(format!(
        "failures={formula_bad} outside={outside}"
    )));
    r.push(l("compactified.middle-dichotomy").pass(interior_bad == 0 && boundary_nonzero == 0).detail(format!(
        "interior={} interior_failures={interior_bad} boundary_nonzero={boundary_nonzero}",
        omega.len()
    )));
    r.push(l("compactified.injective").pass(collisions == 0).detail(format!("collisions={collisions}")));
    Ok(r)
}
