//! Point counts of `Ω^{d-1}` and `DL^{d-1}` over `F_{q^m}`, the sizes of the
//! fibers of `π`, fixed points of twisted Frobenius maps, and the partition of
//! `DL` by the value of the Moore determinant.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{gcd, pow_u128, Fe};
use crate::geometry::{enumerate_dl, projective_chunks, AffineVector, VarietyCtx, MAX_RANK};
use crate::groups::{act_dl, enumerate_subgroup, norm_kernel, rational_torus, torus_act, torus_norm, GLdElem, SubgroupKind};
use crate::report::{CheckLine, Report};

/// `∏_{j=0}^{d-1} (q^m - q^j) / (q^m - 1)`, zero when `m < d`. Saturates on overflow.
pub fn omega_count_closed(d: usize, q: u64, m: u32) -> u128 {
    if (m as usize) < d {
        return 0;
    }
    let big_q = pow_u128(q, m);
    // The j = 0 factor cancels the denominator.
    (1..d as u32).fold(1u128, |acc, j| acc.saturating_mul(big_q - pow_u128(q, j)))
}

/// One row of the count table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub d: usize,
    pub q: u64,
    pub m: u32,
    pub omega_enum: u128,
    pub omega_closed: u128,
    pub dl_enum: u128,
    pub fiber_gcd: u64,
    pub classes: usize,
}

impl CountRow {
    pub const CSV_HEADER: &'static str = "d,q,m,omega_enum,omega_closed,dl_enum,fiber_gcd,classes";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.d, self.q, self.m, self.omega_enum, self.omega_closed, self.dl_enum, self.fiber_gcd, self.classes
        )
    }
}

/// Fibers of `π` over `Ω(F_{q^m})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberStatistics {
    pub omega: u128,
    pub nonempty: u128,
    pub empty: u128,
    pub dl: u128,
    /// `gcd(q^d - 1, q^m - 1)`.
    pub expected: u64,
    /// Nonempty fibers whose size differs from `expected`, or whose points fail the DL equation.
    pub bad: u128,
    /// Moore determinants of DL points, as codes.
    pub classes: Vec<u32>,
}

impl FiberStatistics {
    pub fn holds(&self) -> bool {
        self.bad == 0
    }
}

#[derive(Default)]
struct Scan {
    omega: u128,
    nonempty: u128,
    dl: u128,
    bad: u128,
    classes: Vec<Fe>,
}

impl Scan {
    fn merge(mut self, other: Scan) -> Scan {
        self.omega += other.omega;
        self.nonempty += other.nonempty;
        self.dl += other.dl;
        self.bad += other.bad;
        for c in other.classes {
            if !self.classes.contains(&c) {
                self.classes.push(c);
            }
        }
        self
    }
}

/// One pass over `P^{d-1}(F_{q^m})`: membership in `Ω`, and the rational fiber
/// `{λ P : λ^(q^d-1) = (-1)^(d-1) / D^(q-1)}` of each point. The first point of
/// every fiber is checked against the DL equation directly.
pub fn fiber_statistics(ctx: &VarietyCtx) -> Result<FiberStatistics> {
    ctx.budget().check("points of P^{d-1}", ctx.projective_size())?;
    let k = ctx.ext();
    let solver = ctx.fiber_solver();
    let expected = gcd(
        ((pow_u128(ctx.q(), ctx.d() as u32) - 1) % k.order() as u128) as u64,
        k.order(),
    );
    let norm_exp = (k.norm_exponent(ctx.d() as u32) % k.order() as u128) as u64;
    let d = ctx.d();
    let scan = projective_chunks(ctx)
        .par_iter()
        .map(|ch| {
            let mut s = Scan::default();
            ch.for_each(ctx, |x| {
                let det = ctx.moore_det(x);
                if det.is_zero() {
                    return;
                }
                s.omega += 1;
                let target = k.div(ctx.sign(), k.pow(det, ctx.q() - 1)).expect("det is nonzero");
                let mut size = 0u64;
                for lambda in solver.solutions(k, target) {
                    if size == 0 {
                        let mut v = [Fe::ZERO; MAX_RANK];
                        for (o, &c) in v.iter_mut().zip(x) {
                            *o = k.mul(lambda, c);
                        }
                        if !ctx.dl_contains(&AffineVector(v[..d].to_vec())) {
                            s.bad += 1;
                        }
                    }
                    size += 1;
                    let class = k.mul(k.pow(lambda, norm_exp), det);
                    if !s.classes.contains(&class) {
                        s.classes.push(class);
                    }
                }
                if size > 0 {
                    s.nonempty += 1;
                    s.dl += size as u128;
                    if size != expected {
                        s.bad += 1;
                    }
                }
            });
            s
        })
        .reduce(Scan::default, Scan::merge);
    let mut classes: Vec<u32> = scan.classes.iter().map(|&c| k.code(c)).collect();
    classes.sort_unstable();
    Ok(FiberStatistics {
        omega: scan.omega,
        nonempty: scan.nonempty,
        empty: scan.omega - scan.nonempty,
        dl: scan.dl,
        expected,
        bad: scan.bad,
        classes,
    })
}

pub fn count_row(ctx: &VarietyCtx) -> Result<CountRow> {
    let stats = fiber_statistics(ctx)?;
    Ok(CountRow {
        d: ctx.d(),
        q: ctx.q(),
        m: ctx.m(),
        omega_enum: stats.omega,
        omega_closed: omega_count_closed(ctx.d(), ctx.q(), ctx.m()),
        dl_enum: stats.dl,
        fiber_gcd: stats.expected,
        classes: stats.classes.len(),
    })
}

/// `|{P ∈ Ω(F_{q^{ms}}) : g F^m(P) = P}|`. Every fixed point is rational over
/// `F_{q^{ms}}` when `s` is a multiple of the order of `g` in `PGL_d(F_q)`;
/// other `s` are refused.
pub fn twisted_count(ctx: &VarietyCtx, g: &GLdElem, s: u32) -> Result<u128> {
    let base = ctx.base();
    if g.d() != ctx.d() {
        return Err(Error::ContextMismatch(format!("matrix of size {} on points of rank {}", g.d(), ctx.d())));
    }
    let order = g.pgl_order(base);
    if s == 0 || !(s as u64).is_multiple_of(order) {
        return Err(Error::Invalid(format!("s = {s} is not a multiple of the PGL order {order}")));
    }
    let m = ctx.m();
    let big = VarietyCtx::build(
        ctx.d(),
        ctx.q(),
        m.checked_mul(s).ok_or_else(|| Error::budget("extension degree", u128::MAX, u32::MAX as u128))?,
        ctx.budget(),
        None,
    )?;
    big.budget().check("points of P^{d-1}", big.projective_size())?;
    let k = big.ext();
    let emb = big.embedding();
    let d = big.d();
    let count = projective_chunks(&big)
        .par_iter()
        .map(|ch| {
            let mut n = 0u128;
            let mut fx = [Fe::ZERO; MAX_RANK];
            let mut gx = [Fe::ZERO; MAX_RANK];
            ch.for_each(&big, |x| {
                for (o, &c) in fx.iter_mut().zip(x) {
                    *o = k.frobenius_iter(c, m);
                }
                g.apply(k, |a| emb.apply(a), &fx[..d], &mut gx[..d]);
                // Projective equality: gx is proportional to x, which has leading 1.
                let lead = x.iter().position(|c| !c.is_zero()).expect("projective point");
                let scale = gx[lead];
                let same = !scale.is_zero() && x.iter().zip(&gx[..d]).all(|(&a, &b)| k.mul(a, scale) == b);
                if same && !big.moore_det(x).is_zero() {
                    n += 1;
                }
            });
            n
        })
        .sum();
    Ok(count)
}

/// The points of `DL(F_{q^m})` grouped by Moore determinant.
#[derive(Debug, Clone)]
pub struct ComponentClassMap {
    pub points: Vec<AffineVector>,
    /// Determinant code to indices into `points`.
    pub classes: BTreeMap<u32, Vec<usize>>,
}

pub fn component_classes(ctx: &VarietyCtx) -> Result<ComponentClassMap> {
    let points = enumerate_dl(ctx)?;
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (n, v) in points.iter().enumerate() {
        classes.entry(ctx.ext().code(ctx.moore_det(&v.0))).or_default().push(n);
    }
    Ok(ComponentClassMap { points, classes })
}

/// The determinant-class invariant: at most `q-1` classes, equal sizes when all
/// are populated, stability under `H = Ker(norm)` and `SL_d(F_q)`, and
/// `det(s v) = N(s) det(v)`, `det(g v) = det(g) det(v)` for the torus and `GL_d(F_q)`.
pub fn check_component_classes(ctx: &VarietyCtx) -> Result<Report> {
    let map = component_classes(ctx)?;
    let k = ctx.ext();
    let emb = ctx.embedding();
    let q = ctx.q();
    let sizes: Vec<usize> = map.classes.values().map(Vec::len).collect();
    let populated = sizes.len();
    let equal = populated < (q - 1) as usize || sizes.windows(2).all(|w| w[0] == w[1]);
    let det = |v: &AffineVector| ctx.moore_det(&v.0);

    let torus = rational_torus(ctx);
    let h = norm_kernel(ctx);
    let torus_bad = map
        .points
        .par_iter()
        .filter(|v| {
            let dv = det(v);
            torus.iter().any(|&s| det(&torus_act(ctx, s, v)) != k.mul(emb.apply(torus_norm_base(ctx, s)), dv))
        })
        .count();
    let h_bad = map
        .points
        .par_iter()
        .filter(|v| h.iter().any(|&s| det(&torus_act(ctx, s, v)) != det(v)))
        .count();
    let gl = enumerate_subgroup(ctx.base(), ctx.d(), &SubgroupKind::GL, ctx.budget())?;
    let gl_bad = map
        .points
        .par_iter()
        .filter(|v| {
            let dv = det(v);
            gl.iter().any(|g| {
                let w = act_dl(ctx, g, v).expect("ranks agree");
                !ctx.dl_contains(&w) || det(&w) != k.mul(emb.apply(g.det(ctx.base())), dv)
            })
        })
        .count();
    let sl_bad = map
        .points
        .par_iter()
        .filter(|v| {
            gl.iter()
                .filter(|g| g.det(ctx.base()) == Fe::ONE)
                .any(|g| det(&act_dl(ctx, g, v).expect("ranks agree")) != det(v))
        })
        .count();

    let line = |name: &str| CheckLine::new(name).param("d", ctx.d()).param("q", q).param("m", ctx.m());
    let sizes_text = sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("/");
    let mut r = Report::default();
    r.push(line("components.count").pass(populated <= (q - 1) as usize).detail(format!(
        "classes={populated} sizes={sizes_text} points={}",
        map.points.len()
    )));
    r.push(line("components.equal-sizes").pass(equal));
    r.push(line("components.h-stable").pass(h_bad == 0).detail(format!("|H|={} failures={h_bad}", h.len())));
    r.push(line("components.torus-norm").pass(torus_bad == 0).detail(format!("|T|={} failures={torus_bad}", torus.len())));
    r.push(line("components.gl-det").pass(gl_bad == 0).detail(format!("|GL|={} failures={gl_bad}", gl.len())));
    r.push(line("components.sl-stable").pass(sl_bad == 0).detail(format!("failures={sl_bad}")));
    Ok(r)
}

/// `N(s)` as an element of `F_q`.
fn torus_norm_base(ctx: &VarietyCtx, s: crate::groups::TorusElem) -> Fe {
    let n = torus_norm(ctx, s);
    let base = ctx.base();
    // N(s) lies in F_q; find its preimage under the embedding.
    base.elements()
        .find(|&c| ctx.embedding().apply(c) == n)
        .expect("the norm lies in F_q")
}
