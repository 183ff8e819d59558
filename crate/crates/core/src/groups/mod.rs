//! The finite groups acting on `Ω^{d-1}` and `DL^{d-1}`: `GL_d(F_q)` and its
//! standard subgroups attached to subsets of simple roots, the Weyl data
//! `ċ`, `w_Δ`, the torus `T_d ≅ F_{q^d}^×`, and orbit computation.

mod matrix;

use std::collections::HashMap;
use std::hash::Hash;

pub use matrix::GLdElem;

use crate::error::{Error, Result};
use crate::fields::{gcd, pow_u128, Fe, FieldCtx};
use crate::geometry::{AffineVector, ProjectivePoint, VarietyCtx, MAX_RANK};
use crate::Budget;

/// A subset `I` of the simple roots `α_1, ..., α_{d-1}`, with `α_j = e_j - e_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleRootSubset {
    d: usize,
    roots: Vec<usize>,
}

impl SimpleRootSubset {
    pub fn new(d: usize, mut roots: Vec<usize>) -> Result<Self> {
        roots.sort_unstable();
        roots.dedup();
        if roots.iter().any(|&j| j == 0 || j >= d) {
            return Err(Error::OutOfRange(format!("simple roots are indexed 1..={}", d.saturating_sub(1))));
        }
        Ok(SimpleRootSubset { d, roots })
    }

    /// `I = Δ \ {α_i}`.
    pub fn maximal(d: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= d {
            return Err(Error::OutOfRange(format!("i = {i} (allowed 1..={})", d.saturating_sub(1))));
        }
        Self::new(d, (1..d).filter(|&j| j != i).collect())
    }

    pub fn all(d: usize) -> Self {
        SimpleRootSubset { d, roots: (1..d).collect() }
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// The missing root when `I` is maximal.
    pub fn missing(&self) -> Option<usize> {
        let gone: Vec<usize> = (1..self.d).filter(|j| !self.roots.contains(j)).collect();
        (gone.len() == 1).then(|| gone[0])
    }

    /// Diagonal block of coordinate `r` (0-based) for the Levi of `P_I`.
    pub fn block(&self, r: usize) -> usize {
        (1..=r).filter(|j| !self.roots.contains(j)).count()
    }
}

/// The subgroups of `GL_d(F_q)` that can be listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupKind {
    /// Upper unitriangular matrices.
    U,
    /// Upper triangular matrices.
    B,
    /// Unipotent radical of `P_I`.
    UI(SimpleRootSubset),
    /// Unipotent radical of `B ∩ L_I`.
    VI(SimpleRootSubset),
    /// The standard parabolic `B W_I B`.
    PI(SimpleRootSubset),
    GL,
    SL,
}

#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Zero,
    One,
    Any,
    Unit,
}

impl SubgroupKind {
    fn slot(&self, r: usize, c: usize) -> Slot {
        use SubgroupKind::*;
        let diag = if r == c { Slot::One } else { Slot::Zero };
        match self {
            U if r < c => Slot::Any,
            U => diag,
            B if r < c => Slot::Any,
            B if r == c => Slot::Unit,
            B => Slot::Zero,
            UI(s) if s.block(r) < s.block(c) => Slot::Any,
            UI(_) => diag,
            VI(s) if s.block(r) == s.block(c) && r < c => Slot::Any,
            VI(_) => diag,
            PI(s) if s.block(r) <= s.block(c) => Slot::Any,
            PI(_) => Slot::Zero,
            GL | SL => Slot::Any,
        }
    }

    fn subset(&self) -> Option<&SimpleRootSubset> {
        match self {
            SubgroupKind::UI(s) | SubgroupKind::VI(s) | SubgroupKind::PI(s) => Some(s),
            _ => None,
        }
    }
}

/// All elements, in code order of the free entries (row-major, last entry fastest).
pub fn enumerate_subgroup(base: &FieldCtx, d: usize, kind: &SubgroupKind, budget: Budget) -> Result<Vec<GLdElem>> {
    if let Some(s) = kind.subset() {
        if s.d != d {
            return Err(Error::ContextMismatch(format!("root subset for d = {}, group for d = {d}", s.d)));
        }
    }
    let q = base.q();
    let slots: Vec<Slot> = (0..d * d).map(|k| kind.slot(k / d, k % d)).collect();
    let free: Vec<usize> = (0..d * d).filter(|&k| matches!(slots[k], Slot::Any | Slot::Unit)).collect();
    let raw: u128 = free
        .iter()
        .map(|&k| if slots[k] == Slot::Unit { q as u128 - 1 } else { q as u128 })
        .product();
    budget.check("group elements", raw)?;
    let units: Vec<Fe> = base.elements().filter(|x| !x.is_zero()).collect();
    let all: Vec<Fe> = base.elements().collect();
    let mut entries: Vec<Fe> = slots.iter().map(|s| if *s == Slot::One { Fe::ONE } else { Fe::ZERO }).collect();
    let mut out = Vec::new();
    for mut idx in 0..raw {
        for &k in free.iter().rev() {
            let dom = if slots[k] == Slot::Unit { &units } else { &all };
            entries[k] = dom[(idx % dom.len() as u128) as usize];
            idx /= dom.len() as u128;
        }
        if let Ok(g) = GLdElem::new(base, d, entries.clone()) {
            if *kind != SubgroupKind::SL || g.det(base) == Fe::ONE {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// `q^(d(d-1)/2)`, and for `I = Δ \ {α_i}` the order `q^(i(d-i))` of `U_I`.
pub fn unipotent_order(q: u64, d: usize) -> u128 {
    pow_u128(q, (d * (d - 1) / 2) as u32)
}

/// The Coxeter element `c = (1 2 ... d)` and the longest element `w_Δ`.
#[derive(Debug, Clone)]
pub struct WeylData {
    /// `c(k) = k + 1 mod d`, 0-based.
    pub c: Vec<usize>,
    /// Permutation matrix with `ċ e_k = e_{c(k)}`.
    pub c_dot: GLdElem,
    /// Antidiagonal permutation matrix.
    pub w_delta: GLdElem,
}

impl WeylData {
    pub fn new(base: &FieldCtx, d: usize) -> Self {
        let c: Vec<usize> = (0..d).map(|k| (k + 1) % d).collect();
        let perm_matrix = |sigma: &dyn Fn(usize) -> usize| {
            let mut e = vec![Fe::ZERO; d * d];
            for k in 0..d {
                e[sigma(k) * d + k] = Fe::ONE;
            }
            GLdElem::new(base, d, e).expect("permutation matrices are invertible")
        };
        let c_dot = perm_matrix(&|k| c[k]);
        let w_delta = perm_matrix(&|k| d - 1 - k);
        WeylData { c, c_dot, w_delta }
    }
}

/// An element of `T_d ≅ F_{q^d}^×`; only its `F_{q^m}`-rational part is ever listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusElem(pub Fe);

/// `{s ∈ F_{q^m}^× : s^(q^d-1) = 1}`, the rational points of `T_d`, by increasing logarithm.
pub fn rational_torus(ctx: &VarietyCtx) -> Vec<TorusElem> {
    let k = ctx.ext();
    let order = k.order();
    let e = ((pow_u128(ctx.q(), ctx.d() as u32) - 1) % order as u128) as u64;
    let g = gcd(e, order);
    let step = order / g;
    (0..g).map(|j| TorusElem(k.from_log(j * step))).collect()
}

/// The norm `F_{q^d} -> F_q` of a torus element, computed in `F_{q^m}`.
pub fn torus_norm(ctx: &VarietyCtx, s: TorusElem) -> Fe {
    ctx.ext().pow_u128(s.0, ctx.ext().norm_exponent(ctx.d() as u32))
}

/// Rational points of `H = Ker(norm)`.
pub fn norm_kernel(ctx: &VarietyCtx) -> Vec<TorusElem> {
    rational_torus(ctx).into_iter().filter(|&s| torus_norm(ctx, s) == Fe::ONE).collect()
}

fn check_rank(ctx: &VarietyCtx, g: &GLdElem) -> Result<()> {
    if g.d() != ctx.d() {
        return Err(Error::ContextMismatch(format!("matrix of size {} on points of rank {}", g.d(), ctx.d())));
    }
    Ok(())
}

pub fn act_projective(ctx: &VarietyCtx, g: &GLdElem, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    check_rank(ctx, g)?;
    let mut out = [Fe::ZERO; MAX_RANK];
    let emb = ctx.embedding();
    g.apply(ctx.ext(), |a| emb.apply(a), p.coords(), &mut out[..ctx.d()]);
    ProjectivePoint::new(ctx.ext(), out[..ctx.d()].to_vec())
}

pub fn act_dl(ctx: &VarietyCtx, g: &GLdElem, v: &AffineVector) -> Result<AffineVector> {
    check_rank(ctx, g)?;
    let mut out = vec![Fe::ZERO; ctx.d()];
    let emb = ctx.embedding();
    g.apply(ctx.ext(), |a| emb.apply(a), &v.0, &mut out);
    Ok(AffineVector(out))
}

/// Scalar multiplication `v ↦ s v`.
pub fn torus_act(ctx: &VarietyCtx, s: TorusElem, v: &AffineVector) -> AffineVector {
    AffineVector(v.0.iter().map(|&x| ctx.ext().mul(s.0, x)).collect())
}

/// Packs coordinates into one integer, for hashing large point sets.
pub fn point_key(field: &FieldCtx, coords: &[Fe]) -> u128 {
    let bits = (64 - (field.size() - 1).leading_zeros()).max(1);
    debug_assert!(bits as usize * coords.len() <= 128);
    coords.iter().fold(0u128, |acc, &x| (acc << bits) | field.code(x) as u128)
}

/// Partition of `points` into orbits, each sorted by index, orbits ordered by
/// their smallest index. Fails if some image is not in `points`.
pub fn orbits<P, K, G>(
    points: &[P],
    group: &[G],
    key: impl Fn(&P) -> K,
    act: impl Fn(&G, &P) -> Result<P>,
) -> Result<Vec<Vec<usize>>>
where
    K: Hash + Eq,
{
    let index: HashMap<K, usize> = points.iter().enumerate().map(|(n, p)| (key(p), n)).collect();
    let mut seen = vec![false; points.len()];
    let mut out = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        for g in group {
            let image = act(g, &points[start])?;
            let &n = index
                .get(&key(&image))
                .ok_or_else(|| Error::Consistency("group action leaves the point set".into()))?;
            if !seen[n] {
                seen[n] = true;
                orbit.push(n);
            }
        }
        if !seen[start] {
            seen[start] = true;
            orbit.push(start);
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

/// `[n choose k]_q`; zero when `k > n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for j in 0..k {
        num *= q.pow(n - j) - 1;
        den *= q.pow(j + 1) - 1;
    }
    num / den
}

/// Number of components of the stratum for `I = Δ \ {α_i}`: the `i`-dimensional subspaces of `F_q^d`.
pub fn stratum_component_count(d: usize, q: u64, i: usize) -> Result<u128> {
    if i == 0 || i >= d {
        return Err(Error::OutOfRange(format!("i = {i} (allowed 1..={})", d.saturating_sub(1))));
    }
    Ok(gaussian_binomial(d as u32, i as u32, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;
    use crate::geometry::{enumerate_dl, enumerate_omega};

    #[test]
    fn subgroup_orders() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let b = Budget::default();
        assert_eq!(enumerate_subgroup(&f2, 2, &SubgroupKind::U, b).unwrap().len(), 2);
        let i2 = SimpleRootSubset::maximal(3, 2).unwrap();
        assert_eq!(enumerate_subgroup(&f2, 3, &SubgroupKind::UI(i2.clone()), b).unwrap().len(), 4);
        assert_eq!(enumerate_subgroup(&f2, 3, &SubgroupKind::VI(i2.clone()), b).unwrap().len(), 2);
        // |P_I| = |GL_2| |GL_1| q^2 = 6 * 1 * 4.
        assert_eq!(enumerate_subgroup(&f2, 3, &SubgroupKind::PI(i2), b).unwrap().len(), 24);
        assert_eq!(enumerate_subgroup(&f3, 2, &SubgroupKind::B, b).unwrap().len(), 12);
        assert_eq!(enumerate_subgroup(&f3, 2, &SubgroupKind::GL, b).unwrap().len(), 48);
        assert_eq!(enumerate_subgroup(&f3, 2, &SubgroupKind::SL, b).unwrap().len(), 24);
        assert_eq!(enumerate_subgroup(&f2, 3, &SubgroupKind::U, b).unwrap().len() as u128, unipotent_order(2, 3));
        for kind in [SubgroupKind::U, SubgroupKind::B, SubgroupKind::GL] {
            assert!(enumerate_subgroup(&f2, 3, &kind, b).unwrap().contains(&GLdElem::identity(3)));
        }
    }

    #[test]
    fn weyl_data() {
        let f2 = make_field(2, 1).unwrap();
        let w = WeylData::new(&f2, 3);
        assert_eq!(w.c_dot.codes(&f2), vec![0, 0, 1, 1, 0, 0, 0, 1, 0]);
        assert!(w.w_delta.mul(&f2, &w.w_delta).is_identity());
        assert_eq!(w.c_dot.order(&f2), 3);
    }

    #[test]
    fn matrix_inverse() {
        let f3 = make_field(3, 1).unwrap();
        for g in enumerate_subgroup(&f3, 2, &SubgroupKind::GL, Budget::default()).unwrap() {
            assert!(g.mul(&f3, &g.inverse()).is_identity());
        }
    }

    #[test]
    fn gl_preserves_omega_and_dl() {
        let ctx = VarietyCtx::new(3, 2, 3).unwrap();
        let omega = enumerate_omega(&ctx).unwrap();
        let gl = enumerate_subgroup(ctx.base(), 3, &SubgroupKind::GL, Budget::default()).unwrap();
        assert_eq!(gl.len(), 168);
        for g in gl.iter().step_by(7) {
            for p in &omega {
                assert!(ctx.omega_contains(&act_projective(&ctx, g, p).unwrap()));
            }
        }
        let d2 = VarietyCtx::new(2, 3, 2).unwrap();
        let gl = enumerate_subgroup(d2.base(), 2, &SubgroupKind::GL, Budget::default()).unwrap();
        for v in enumerate_dl(&d2).unwrap() {
            for g in &gl {
                let w = act_dl(&d2, g, &v).unwrap();
                assert!(d2.dl_contains(&w));
                for s in rational_torus(&d2) {
                    assert_eq!(torus_act(&d2, s, &w), act_dl(&d2, g, &torus_act(&d2, s, &v)).unwrap());
                }
            }
        }
    }

    #[test]
    fn torus_fibers() {
        let ctx = VarietyCtx::new(2, 2, 2).unwrap();
        let dl = enumerate_dl(&ctx).unwrap();
        let t = rational_torus(&ctx);
        assert_eq!(t.len(), 3);
        let parts = orbits(&dl, &t, |v| v.clone(), |s, v| Ok(torus_act(&ctx, *s, v))).unwrap();
        assert_eq!(parts.len(), 2);
        for orbit in parts {
            assert_eq!(orbit.len(), 3);
            let base = ctx.covering_pi(&dl[orbit[0]]).unwrap();
            assert!(orbit.iter().all(|&n| ctx.covering_pi(&dl[n]).unwrap() == base));
        }
        assert_eq!(norm_kernel(&ctx).len(), 3);
    }

    #[test]
    fn keys_are_injective() {
        let k = make_field(2, 3).unwrap();
        let keys: std::collections::HashSet<u128> =
            k.elements().flat_map(|a| k.elements().map(move |b| (a, b))).map(|(a, b)| point_key(&k, &[a, b])).collect();
        assert_eq!(keys.len(), 64);
    }

    #[test]
    fn orbit_basics() {
        let ctx = VarietyCtx::new(2, 2, 2).unwrap();
        let omega = enumerate_omega(&ctx).unwrap();
        let trivial = vec![GLdElem::identity(2)];
        let key = |p: &ProjectivePoint| point_key(ctx.ext(), p.coords());
        let act = |g: &GLdElem, p: &ProjectivePoint| act_projective(&ctx, g, p);
        assert_eq!(orbits(&omega, &trivial, key, act).unwrap(), vec![vec![0], vec![1]]);
        let u = enumerate_subgroup(ctx.base(), 2, &SubgroupKind::U, Budget::default()).unwrap();
        assert_eq!(orbits(&omega, &u, key, act).unwrap(), vec![vec![0, 1]]);
        // The action must stay inside the list.
        assert!(orbits(&omega[..1], &u, key, act).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(5, 0, 3), 1);
        assert_eq!(stratum_component_count(2, 2, 1).unwrap(), 3);
        assert_eq!(stratum_component_count(3, 2, 1).unwrap(), 7);
        assert_eq!(stratum_component_count(4, 3, 1).unwrap(), stratum_component_count(4, 3, 3).unwrap());
        assert!(stratum_component_count(3, 2, 0).is_err());
        assert!(stratum_component_count(3, 2, 3).is_err());
    }
}
