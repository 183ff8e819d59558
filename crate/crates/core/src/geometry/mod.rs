//! Points of `P^{d-1}` and `A^d` over `F_{q^m}`, membership in the Drinfeld
//! space `Ω^{d-1}` and its cover `DL^{d-1}`, the covering map, flags, the
//! affine chart `y_i = X_i / X_{i-1}` and the polynomials `δ_d`, `δ_{d,i}`.

mod chart;
mod delta;
mod enumerate;
mod flag;
mod moore;

use std::sync::Arc;

pub use chart::{chart_from_projective, chart_stratum, chart_to_projective, delta_value, ChartStratum};
pub use delta::{
    delta_di_symbolic, delta_product_symbolic, delta_symbolic, factorization_check, residue_check,
    FactorizationCheck, ResidueCheck, SymbolicCap,
};
pub use enumerate::{
    affine_chunks, enumerate_dl, enumerate_dl_bruteforce, enumerate_omega, projective_chunks, AffineChunk,
    PowerPreimages, ProjectiveChunk,
};
pub use flag::{flag_of, rref, Flag};
pub use moore::{avoids_rational_hyperplanes, det, moore_det_in};

use crate::error::{Error, Result};
use crate::fields::{prime_power, Embedding, Fe, FieldCtx, FieldOptions};
use crate::Budget;

/// Largest rank handled by the fixed-size determinant buffers.
pub const MAX_RANK: usize = 8;

/// `d`, `q`, `m` and the fields `F_q ⊂ F_{q^m}`.
#[derive(Debug, Clone)]
pub struct VarietyCtx {
    d: usize,
    m: u32,
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    emb: Embedding,
    sign: Fe,
    budget: Budget,
}

impl VarietyCtx {
    pub fn new(d: usize, q: u64, m: u32) -> Result<Self> {
        Self::build(d, q, m, Budget::default(), None)
    }

    /// As [`VarietyCtx::new`], with explicit budget and an optional modulus for `F_{q^m}`.
    pub fn build(d: usize, q: u64, m: u32, budget: Budget, ext_modulus: Option<Vec<u32>>) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let base = FieldCtx::with_options(p as u32, f, 1, FieldOptions { cap: Some(budget.field_size), modulus: None })?;
        let ext = FieldCtx::with_options(
            p as u32,
            f,
            m,
            FieldOptions { cap: Some(budget.field_size), modulus: ext_modulus },
        )?;
        Self::with_fields(d, Arc::new(base), Arc::new(ext), budget)
    }

    pub fn with_fields(d: usize, base: Arc<FieldCtx>, ext: Arc<FieldCtx>, budget: Budget) -> Result<Self> {
        if d == 0 || d > MAX_RANK {
            return Err(Error::OutOfRange(format!("rank d = {d} (allowed 1..={MAX_RANK})")));
        }
        if base.k() != 1 || base.q() != ext.q() {
            return Err(Error::ContextMismatch("F_q must be the base of the extension".into()));
        }
        let emb = Embedding::new(&base, &ext)?;
        let sign = ext.sign(d as u64 - 1);
        Ok(VarietyCtx { d, m: ext.k(), base, ext, emb, sign, budget })
    }

    /// Same fields, different rank.
    pub fn with_rank(&self, d: usize) -> Result<Self> {
        Self::with_fields(d, self.base.clone(), self.ext.clone(), self.budget)
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.base.q()
    }
    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }
    pub fn ext(&self) -> &Arc<FieldCtx> {
        &self.ext
    }
    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }
    pub fn budget(&self) -> Budget {
        self.budget
    }
    /// `(-1)^(d-1)` in `F_{q^m}`.
    pub fn sign(&self) -> Fe {
        self.sign
    }

    /// `|P^{d-1}(F_{q^m})|`.
    pub fn projective_size(&self) -> u128 {
        let big_q = self.ext.size() as u128;
        (0..self.d as u32).map(|j| big_q.pow(j)).sum()
    }

    /// `|A^d(F_{q^m})|`.
    pub fn affine_size(&self) -> u128 {
        (self.ext.size() as u128).saturating_pow(self.d as u32)
    }

    /// Moore determinant `det(X_i^(q^j))` of `d` coordinates in `F_{q^m}`.
    pub fn moore_det(&self, coords: &[Fe]) -> Fe {
        moore_det_in(&self.ext, coords)
    }

    pub fn omega_contains(&self, p: &ProjectivePoint) -> bool {
        p.coords.len() == self.d && !self.moore_det(&p.coords).is_zero()
    }

    pub fn dl_contains(&self, v: &AffineVector) -> bool {
        if v.0.len() != self.d {
            return false;
        }
        let det = self.moore_det(&v.0);
        !det.is_zero() && self.ext.pow(det, self.q() - 1) == self.sign
    }

    /// The covering `π : DL -> Ω`, i.e. projectivization.
    pub fn covering_pi(&self, v: &AffineVector) -> Result<ProjectivePoint> {
        if !self.dl_contains(v) {
            return Err(Error::NotOnVariety("DL"));
        }
        ProjectivePoint::new(&self.ext, v.0.clone())
    }

    /// Coordinates as field codes.
    pub fn codes(&self, coords: &[Fe]) -> Vec<u32> {
        coords.iter().map(|&x| self.ext.code(x)).collect()
    }

    /// Coordinatewise `x ↦ x^q`.
    pub fn frobenius(&self, coords: &[Fe]) -> Vec<Fe> {
        coords.iter().map(|&x| self.ext.frobenius_q(x)).collect()
    }

    pub fn format_projective(&self, p: &ProjectivePoint) -> String {
        join_codes(&self.codes(&p.coords), ":")
    }

    pub fn format_affine(&self, v: &AffineVector) -> String {
        join_codes(&self.codes(&v.0), ",")
    }
}

fn join_codes(codes: &[u32], sep: &str) -> String {
    codes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep)
}

/// A point `[X_0 : ... : X_{d-1}]`, normalized so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Fe>,
}

impl ProjectivePoint {
    pub fn new(field: &FieldCtx, coords: Vec<Fe>) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|x| !x.is_zero())
            .ok_or(Error::ZeroInput("projective point"))?;
        let inv = field.inv(lead)?;
        Ok(ProjectivePoint { coords: coords.into_iter().map(|x| field.mul(x, inv)).collect() })
    }

    /// Takes coordinates that are already normalized.
    pub(crate) fn from_normalized(coords: Vec<Fe>) -> Self {
        ProjectivePoint { coords }
    }

    /// The single point of `P^0`.
    pub fn unit() -> Self {
        ProjectivePoint { coords: vec![Fe::ONE] }
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// A point of `A^d`; no normalization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineVector(pub Vec<Fe>);

/// Chart coordinates `(y_1, ..., y_{d-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChartPoint(pub Vec<Fe>);

/// Lexicographic order of code vectors.
pub fn code_order(field: &FieldCtx, a: &[Fe], b: &[Fe]) -> std::cmp::Ordering {
    a.iter().map(|&x| field.code(x)).cmp(b.iter().map(|&x| field.code(x)))
}
