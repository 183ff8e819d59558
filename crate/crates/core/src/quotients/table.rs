use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fields::{Fe, FieldCtx};
use crate::geometry::SymbolicCap;
use crate::report::{CheckLine, Report};
use crate::symbolic::{Exps, MultiPoly, RatFunc};

/// The rational functions `a_{jk}` and `v_k` in `F_q(y_1, ..., y_{d-1})`.
///
/// Level `k` stores the numerators of `a_{1k}, ..., a_{d-k-1,k}` over one
/// shared denominator; level 0 is `a_{j0} = 1`, from which the recursion
/// produces the closed form of `a_{j1}`.
pub struct RecursionTable {
    d: usize,
    base: Arc<FieldCtx>,
    nums: Vec<Vec<MultiPoly>>,
    dens: Vec<MultiPoly>,
    v: Vec<RatFunc>,
}

impl std::fmt::Debug for RecursionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RecursionTable").field("d", &self.d).field("q", &self.base.q()).finish()
    }
}

type CacheKey = (u32, u32, Vec<u32>, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<RecursionTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<RecursionTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The table for rank `d`, built once per base field and rank.
pub fn recursion_table(base: &Arc<FieldCtx>, d: usize, cap: SymbolicCap) -> Result<Arc<RecursionTable>> {
    if base.k() != 1 {
        return Err(Error::ContextMismatch("symbolic coefficients must lie in F_q".into()));
    }
    if d == 0 {
        return Err(Error::OutOfRange("rank d = 0".into()));
    }
    cap.check(base.q(), d)?;
    let key = (base.p(), base.f(), base.modulus().to_vec(), d);
    let mut guard = cache().lock().expect("table cache poisoned");
    if let Some(t) = guard.get(&key) {
        return Ok(t.clone());
    }
    let table = Arc::new(RecursionTable::build(base, d)?);
    guard.insert(key, table.clone());
    Ok(table)
}

/// Exponents of `(y_a ... y_b)^e` (1-based, inclusive) in `nvars` variables.
fn block_monomial(nvars: usize, a: usize, b: usize, e: u64) -> Result<Exps> {
    let e = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
    Ok((1..=nvars).map(|n| if n >= a && n <= b { e } else { 0 }).collect())
}

impl RecursionTable {
    fn build(base: &Arc<FieldCtx>, d: usize) -> Result<Self> {
        let nvars = d - 1;
        let q = base.q();
        let one = MultiPoly::one(base, nvars);
        let mut nums = vec![vec![one.clone(); d.saturating_sub(1)]];
        let mut dens = vec![one];
        let mut v = Vec::new();
        for k in 1..d {
            let prev = &nums[k - 1];
            let e = &dens[k - 1];
            let e_pow = e.pow(q - 1)?;
            let step = q.pow(k as u32) - q.pow(k as u32 - 1);
            // N^q - (y_j ... y_{d-k})^step N E^(q-1)
            let apply = |n: &MultiPoly, j: usize| -> Result<MultiPoly> {
                let m = block_monomial(nvars, j, d - k, step)?;
                n.frobenius()?.sub(&n.mul(&e_pow)?.mul_monomial(Fe::ONE, &m)?)
            };
            let den = apply(&prev[d - k - 1], d - k)?;
            let y_pow = block_monomial(nvars, d - k, d - k, q.pow(k as u32))?;
            v.push(RatFunc::new(den.clone(), e.frobenius()?.mul_monomial(Fe::ONE, &y_pow)?)?);
            let level = (1..d - k).map(|j| apply(&prev[j - 1], j)).collect::<Result<Vec<_>>>()?;
            nums.push(level);
            dens.push(den);
        }
        Ok(RecursionTable { d, base: base.clone(), nums, dens, v })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    /// `a_{jk}` for `0 <= k <= d-1` and `1 <= j <= d-k-1` (`j <= d-1` when `k = 0`).
    pub fn a(&self, j: usize, k: usize) -> Result<RatFunc> {
        let level = self
            .nums
            .get(k)
            .ok_or_else(|| Error::OutOfRange(format!("level k = {k} for d = {}", self.d)))?;
        let num = level
            .get(j.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("a_{{{j},{k}}} for d = {}", self.d)))?;
        RatFunc::new(num.clone(), self.dens[k].clone())
    }

    /// `v_k` for `1 <= k <= d-1`.
    pub fn v(&self, k: usize) -> Result<RatFunc> {
        self.v
            .get(k.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| Error::OutOfRange(format!("v_{k} for d = {}", self.d)))
    }

    /// Substitutes every entry back into the defining relations using generic
    /// fraction arithmetic, and compares `a_{j1}` with its closed form.
    pub fn resubstitution_check(&self) -> Result<bool> {
        let d = self.d;
        let nvars = d - 1;
        let q = self.base.q();
        let minus = self.base.neg(Fe::ONE);
        let relation = |a: &RatFunc, m: &Exps| -> Result<RatFunc> { a.frobenius()?.add(&a.mul_monomial(minus, m)?) };
        for k in 1..d {
            let step = q.pow(k as u32) - q.pow(k as u32 - 1);
            let star = relation(&self.a(d - k, k - 1)?, &block_monomial(nvars, d - k, d - k, step)?)?;
            let y_pow = block_monomial(nvars, d - k, d - k, q.pow(k as u32))?;
            if !self.v(k)?.mul_monomial(Fe::ONE, &y_pow)?.equals(&star)? {
                return Ok(false);
            }
            for j in 1..d - k {
                let rhs = relation(&self.a(j, k - 1)?, &block_monomial(nvars, j, d - k, step)?)?;
                if !self.a(j, k)?.mul(&star)?.equals(&rhs)? {
                    return Ok(false);
                }
            }
        }
        for j in 1..d.saturating_sub(1) {
            let one = MultiPoly::one(&self.base, nvars);
            let num = one.sub(&MultiPoly::monomial(&self.base, nvars, Fe::ONE, block_monomial(nvars, j, d - 1, q - 1)?))?;
            let den = one.sub(&MultiPoly::monomial(&self.base, nvars, Fe::ONE, block_monomial(nvars, d - 1, d - 1, q - 1)?))?;
            if !self.a(j, 1)?.equals(&RatFunc::new(num, den)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn support_within(r: &RatFunc, lo: usize) -> bool {
    r.num().support().into_iter().chain(r.den().support()).all(|v| v >= lo)
}

/// Certifies, for `I = Δ \ {α_i}` and each `j < i`: the shape `(1+f)/(1+g)` of
/// `a_{j,d-i}` in `y_j, ..., y_{d-1}`; `ord_{y_n}(a_{j,d-i}) = 0`;
/// `a_{j,d-i} ≡ 1 mod y_i`; and `ord_{y_i}(v_{d-i}) = -q^{d-i}`.
pub fn lemma_aa_certify(base: &Arc<FieldCtx>, d: usize, i: usize, cap: SymbolicCap) -> Result<Report> {
    if i == 0 || i >= d {
        return Err(Error::OutOfRange(format!("i = {i} (allowed 1..={})", d.saturating_sub(1))));
    }
    let table = recursion_table(base, d, cap)?;
    let q = base.q();
    let k = d - i;
    let line = |name: &str| CheckLine::new(name).param("d", d).param("q", q).param("i", i);
    let entries: Vec<(usize, RatFunc)> = (1..i).map(|j| Ok((j, table.a(j, k)?))).collect::<Result<_>>()?;
    let vacuous = |l: CheckLine| if entries.is_empty() { l.detail("no j < i") } else { l };

    let mut bad = Vec::new();
    for (j, a) in &entries {
        let c = a.cancel_monomials()?;
        let (n0, d0) = (c.num().constant_term(), c.den().constant_term());
        if n0.is_zero() || n0 != d0 || !support_within(&c, j - 1) {
            bad.push(*j);
        }
    }
    let mut report = Report::default();
    report.push(vacuous(line("lemma-aa.shape").pass(bad.is_empty()).detail(failed_js(&bad))));

    let mut bad = Vec::new();
    for (j, a) in &entries {
        if (0..d - 1).any(|n| a.ord_y(n) != Ok(0)) {
            bad.push(*j);
        }
    }
    report.push(vacuous(line("lemma-aa.valuation").pass(bad.is_empty()).detail(failed_js(&bad))));

    let mut bad = Vec::new();
    let one = RatFunc::one(base, d - 1);
    for (j, a) in &entries {
        let ok = match a.reduce_mod_y(i - 1) {
            Ok(r) => r.equals(&one)?,
            Err(_) => false,
        };
        if !ok {
            bad.push(*j);
        }
    }
    report.push(vacuous(line("lemma-aa.residue").pass(bad.is_empty()).detail(failed_js(&bad))));

    let v = table.v(k)?;
    let ord = v.ord_y(i - 1)?;
    let expected = -(q.pow(k as u32) as i64);
    let ok = ord == expected && support_within(&v.cancel_monomials()?, i - 1);
    report.push(line("lemma-aa.v-order").pass(ok).detail(format!("ord={ord} expected={expected}")));
    Ok(report)
}

fn failed_js(js: &[usize]) -> String {
    if js.is_empty() {
        String::new()
    } else {
        format!("failed j={}", js.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(","))
    }
}
