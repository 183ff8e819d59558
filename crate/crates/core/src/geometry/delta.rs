use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{pow_u128, Fe, FieldCtx};
use crate::symbolic::{Exps, MultiPoly};

/// Upper bound on `q^d` for symbolic constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicCap(pub u64);

impl Default for SymbolicCap {
    fn default() -> Self {
        SymbolicCap(27)
    }
}

impl SymbolicCap {
    pub fn check(&self, q: u64, d: usize) -> Result<()> {
        let size = pow_u128(q, d as u32);
        if size > self.0 as u128 {
            return Err(Error::budget(format!("symbolic size q^d for d = {d}, q = {q}"), size, self.0 as u128));
        }
        Ok(())
    }
}

fn require_base(base: &FieldCtx) -> Result<()> {
    if base.k() != 1 {
        return Err(Error::ContextMismatch("symbolic coefficients must lie in F_q".into()));
    }
    Ok(())
}

/// Exponent vector of `y_1 ... y_k` raised to `e`, in `nvars` variables.
fn prefix_monomial(nvars: usize, k: usize, e: u32) -> Exps {
    (0..nvars).map(|v| if v < k { e } else { 0 }).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; the flag is true for odd permutations.
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut odd = false;
    out.push((a.clone(), odd));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            odd = !odd;
            out.push((a.clone(), odd));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `δ_d = det((y_1 ... y_i)^(q^j))^(q-1)` in `F_q[y_1, ..., y_{d-1}]`.
pub fn delta_symbolic(base: &Arc<FieldCtx>, d: usize, cap: SymbolicCap) -> Result<MultiPoly> {
    require_base(base)?;
    cap.check(base.q(), d)?;
    let q = base.q();
    let nvars = d.saturating_sub(1);
    let qpow: Vec<u32> = (0..d as u32).map(|j| q.pow(j) as u32).collect();
    let terms = permutations(d).into_iter().map(|(perm, odd)| {
        // Row i is X_i = y_1...y_i, column j is the power q^j.
        let mut exps = Exps::from_elem(0, nvars);
        for (i, &j) in perm.iter().enumerate() {
            for e in exps.iter_mut().take(i) {
                *e += qpow[j];
            }
        }
        (exps, if odd { base.neg(Fe::ONE) } else { Fe::ONE })
    });
    MultiPoly::from_terms(base, nvars, terms).pow(q - 1)
}

/// The linear form `Σ a_k y_1 ... y_k` for a coefficient tuple in code order.
fn linear_form(base: &Arc<FieldCtx>, nvars: usize, a: &[Fe]) -> MultiPoly {
    let terms = a.iter().enumerate().map(|(k, &c)| (prefix_monomial(nvars, k, 1), c));
    MultiPoly::from_terms(base, nvars, terms)
}

/// Product of the linear forms over nonzero `a ∈ F_q^d` accepted by `keep`.
fn product_of_forms(base: &Arc<FieldCtx>, d: usize, keep: impl Fn(&[Fe]) -> bool) -> Result<MultiPoly> {
    let nvars = d.saturating_sub(1);
    let q = base.q();
    let total = q.pow(d as u32);
    let mut acc = MultiPoly::one(base, nvars);
    for idx in 1..total {
        let mut a = vec![Fe::ZERO; d];
        let mut rest = idx;
        for x in a.iter_mut() {
            *x = base.from_code((rest % q) as u32);
            rest /= q;
        }
        if keep(&a) {
            acc = acc.mul(&linear_form(base, nvars, &a))?;
        }
    }
    Ok(acc)
}

/// `∏_{a != 0} (a_0 + a_1 y_1 + ... + a_{d-1} y_1 ... y_{d-1})`.
pub fn delta_product_symbolic(base: &Arc<FieldCtx>, d: usize, cap: SymbolicCap) -> Result<MultiPoly> {
    require_base(base)?;
    cap.check(base.q(), d)?;
    product_of_forms(base, d, |_| true)
}

/// `δ_{d,i}`: the product over nonzero `a` with `a_j != 0` for some `j < i`.
pub fn delta_di_symbolic(base: &Arc<FieldCtx>, d: usize, i: usize, cap: SymbolicCap) -> Result<MultiPoly> {
    require_base(base)?;
    cap.check(base.q(), d)?;
    if i == 0 || i >= d {
        return Err(Error::OutOfRange(format!("i = {i} (allowed 1..={})", d.saturating_sub(1))));
    }
    product_of_forms(base, d, |a| a[..i].iter().any(|x| !x.is_zero()))
}

/// Outcome of comparing `δ_d` with `C (y_1...y_i)^(q^{d-i}-1) δ_{d-i}(y_{i+1},...) δ_{d,i}`.
#[derive(Debug, Clone)]
pub struct FactorizationCheck {
    pub d: usize,
    pub q: u64,
    pub i: usize,
    pub holds: bool,
    /// The constant `C`, when the leading monomials agree.
    pub constant: Option<Fe>,
    /// `δ_d` equals this constant times the full product of linear forms.
    pub product_constant: Option<Fe>,
    pub product_holds: bool,
}

/// Ratio `c` with `a = c b`, when one exists.
fn proportional(a: &MultiPoly, b: &MultiPoly) -> Result<Option<Fe>> {
    let (Some((ea, ca)), Some((eb, cb))) = (a.leading_term(), b.leading_term()) else {
        return Ok(None);
    };
    if ea != eb {
        return Ok(None);
    }
    let c = a.ctx().div(*ca, *cb)?;
    Ok((*a == b.scale(c)).then_some(c))
}

fn leading_ratio(a: &MultiPoly, b: &MultiPoly) -> Result<Option<Fe>> {
    match (a.leading_term(), b.leading_term()) {
        (Some((ea, ca)), Some((eb, cb))) if ea == eb => Ok(Some(a.ctx().div(*ca, *cb)?)),
        _ => Ok(None),
    }
}

pub fn factorization_check(base: &Arc<FieldCtx>, d: usize, i: usize, cap: SymbolicCap) -> Result<FactorizationCheck> {
    let q = base.q();
    let nvars = d - 1;
    let lhs = delta_symbolic(base, d, cap)?;
    let di = delta_di_symbolic(base, d, i, cap)?;
    let rest: Vec<usize> = (i..nvars).collect();
    let tail = delta_symbolic(base, d - i, cap)?.remap(nvars, &rest);
    let e = q.pow((d - i) as u32) - 1;
    let rhs = di.mul(&tail)?.mul_monomial(Fe::ONE, &prefix_monomial(nvars, i, e as u32))?;
    let constant = leading_ratio(&lhs, &rhs)?;
    let holds = constant.is_some_and(|c| lhs == rhs.scale(c));
    let product_constant = proportional(&lhs, &delta_product_symbolic(base, d, cap)?)?;
    Ok(FactorizationCheck {
        d,
        q,
        i,
        holds,
        constant,
        product_holds: product_constant.is_some(),
        product_constant,
    })
}

/// Outcome of comparing `δ_{d,i} mod y_i` with `δ_i(y_1, ..., y_{i-1})^(q^{d-i})`.
#[derive(Debug, Clone)]
pub struct ResidueCheck {
    pub exact: bool,
    /// The ratio, when the two sides are proportional.
    pub constant: Option<Fe>,
}

pub fn residue_check(base: &Arc<FieldCtx>, d: usize, i: usize, cap: SymbolicCap) -> Result<ResidueCheck> {
    let nvars = d - 1;
    let lhs = delta_di_symbolic(base, d, i, cap)?.substitute(i - 1, Fe::ZERO);
    let head: Vec<usize> = (0..i - 1).collect();
    let rhs = delta_symbolic(base, i, cap)?
        .pow_char(base.q().pow((d - i) as u32))?
        .remap(nvars, &head);
    Ok(ResidueCheck { exact: lhs == rhs, constant: proportional(&lhs, &rhs)? })
}
