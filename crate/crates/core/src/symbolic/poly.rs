use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::EXPONENT_CAP;
use crate::error::{Error, Result};
use crate::fields::{Embedding, Fe, FieldCtx};

pub type Exps = SmallVec<[u32; 4]>;

/// Graded lexicographic order: total degree first, then exponent of `y_1`, `y_2`, ...
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn checked_exp(e: u64) -> Result<u32> {
    if e >= EXPONENT_CAP {
        Err(Error::ExponentOverflow)
    } else {
        Ok(e as u32)
    }
}

/// A polynomial over the field of `ctx`. Terms are sorted ascending in
/// [`grlex`] order and never carry a zero coefficient.
#[derive(Clone)]
pub struct MultiPoly {
    ctx: Arc<FieldCtx>,
    nvars: usize,
    terms: Vec<(Exps, Fe)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.ctx.same_field(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_text())
    }
}

impl MultiPoly {
    pub fn zero(ctx: &Arc<FieldCtx>, nvars: usize) -> Self {
        MultiPoly { ctx: ctx.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, nvars: usize, c: Fe) -> Self {
        Self::monomial(ctx, nvars, c, Exps::from_elem(0, nvars))
    }

    pub fn one(ctx: &Arc<FieldCtx>, nvars: usize) -> Self {
        Self::constant(ctx, nvars, Fe::ONE)
    }

    pub fn monomial(ctx: &Arc<FieldCtx>, nvars: usize, c: Fe, exps: Exps) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let terms = if c.is_zero() { Vec::new() } else { vec![(exps, c)] };
        MultiPoly { ctx: ctx.clone(), nvars, terms }
    }

    /// The variable `y_{var+1}`.
    pub fn var(ctx: &Arc<FieldCtx>, nvars: usize, var: usize) -> Self {
        let mut e = Exps::from_elem(0, nvars);
        e[var] = 1;
        Self::monomial(ctx, nvars, Fe::ONE, e)
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ctx: &Arc<FieldCtx>, nvars: usize, terms: impl IntoIterator<Item = (Exps, Fe)>) -> Self {
        let mut acc: HashMap<Exps, Fe> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            let slot = acc.entry(e).or_insert(Fe::ZERO);
            *slot = ctx.add(*slot, c);
        }
        Self::from_map(ctx, nvars, acc)
    }

    fn from_map(ctx: &Arc<FieldCtx>, nvars: usize, acc: HashMap<Exps, Fe>) -> Self {
        let mut terms: Vec<(Exps, Fe)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&a.0, &b.0));
        MultiPoly { ctx: ctx.clone(), nvars, terms }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &[(Exps, Fe)] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1 == Fe::ONE && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn constant_term(&self) -> Fe {
        match self.terms.first() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => *c,
            _ => Fe::ZERO,
        }
    }

    /// Largest term in [`grlex`] order.
    pub fn leading_term(&self) -> Option<&(Exps, Fe)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| e.iter().map(|&x| x as u64).sum())
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.iter().any(|(e, _)| e[v] > 0)).collect()
    }

    fn check_compat(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars || !self.ctx.same_field(&other.ctx) {
            return Err(Error::ContextMismatch(format!(
                "polynomials over different rings ({} vs {} variables)",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> Result<MultiPoly> {
        self.check_compat(other)?;
        let ctx = &self.ctx;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let tweak = |c: Fe| if negate { ctx.neg(c) } else { c };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => grlex(&x.0, &y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), tweak(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ctx.add(a[i].1, tweak(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(MultiPoly { ctx: ctx.clone(), nvars: self.nvars, terms: out })
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.merge(other, true)
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.ctx.neg(Fe::ONE))
    }

    pub fn scale(&self, c: Fe) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ctx, self.nvars);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), self.ctx.mul(*x, c))).collect();
        MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compat(other)?;
        let ctx = &self.ctx;
        let mut acc: HashMap<Exps, Fe> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = Exps::with_capacity(self.nvars);
                for (x, y) in ea.iter().zip(eb) {
                    e.push(checked_exp(*x as u64 + *y as u64)?);
                }
                let c = ctx.mul(*ca, *cb);
                let slot = acc.entry(e).or_insert(Fe::ZERO);
                *slot = ctx.add(*slot, c);
            }
        }
        Ok(Self::from_map(ctx, self.nvars, acc))
    }

    /// Multiplies by `c * y^exps`.
    pub fn mul_monomial(&self, c: Fe, exps: &[u32]) -> Result<MultiPoly> {
        if c.is_zero() {
            return Ok(MultiPoly::zero(&self.ctx, self.nvars));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, x) in &self.terms {
            let mut ne = Exps::with_capacity(self.nvars);
            for (a, b) in e.iter().zip(exps) {
                ne.push(checked_exp(*a as u64 + *b as u64)?);
            }
            terms.push((ne, self.ctx.mul(*x, c)));
        }
        // Shifting by a fixed monomial preserves grlex order.
        Ok(MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms })
    }

    pub fn pow(&self, mut n: u64) -> Result<MultiPoly> {
        let mut acc = MultiPoly::one(&self.ctx, self.nvars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `P^(p^e)` for a power of the characteristic: coefficients and exponents
    /// are raised independently.
    pub fn pow_char(&self, pe: u64) -> Result<MultiPoly> {
        let p = self.ctx.p() as u64;
        let mut t = pe;
        while t.is_multiple_of(p) && t > 1 {
            t /= p;
        }
        if t != 1 {
            return Err(Error::Invalid(format!("{pe} is not a power of the characteristic {p}")));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = Exps::with_capacity(self.nvars);
            for &x in e {
                ne.push(checked_exp(x as u64 * pe)?);
            }
            terms.push((ne, self.ctx.pow(*c, pe)));
        }
        Ok(MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms })
    }

    /// `P^q` with `q` the base field size of the coefficient field.
    pub fn frobenius(&self) -> Result<MultiPoly> {
        self.pow_char(self.ctx.q())
    }

    /// Substitutes `y_{var+1} := value` (value in the coefficient field).
    pub fn substitute(&self, var: usize, value: Fe) -> MultiPoly {
        let ctx = &self.ctx;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = e.clone();
            let k = ne[var];
            ne[var] = 0;
            (ne, ctx.mul(*c, ctx.pow(value, k as u64)))
        });
        MultiPoly::from_terms(ctx, self.nvars, terms)
    }

    /// Renames variables: variable `v` of `self` becomes variable `map[v]` in a ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = Exps::from_elem(0, nvars);
            for (v, &x) in e.iter().enumerate() {
                ne[map[v]] += x;
            }
            (ne, *c)
        });
        MultiPoly::from_terms(&self.ctx, nvars, terms)
    }

    /// Value at a point with coordinates in `target`, coefficients pushed through `emb`.
    pub fn evaluate(&self, target: &FieldCtx, emb: &Embedding, point: &[Fe]) -> Result<Fe> {
        if point.len() != self.nvars {
            return Err(Error::ContextMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let logs: Vec<Option<u32>> = point.iter().map(|&x| target.log(x)).collect();
        let ord = target.order();
        let mut acc = Fe::ZERO;
        'terms: for (e, c) in &self.terms {
            let mut l: u64 = target.log(emb.apply(*c)).expect("nonzero coefficient") as u64;
            for (x, lg) in e.iter().zip(&logs) {
                if *x == 0 {
                    continue;
                }
                match lg {
                    None => continue 'terms,
                    Some(lg) => l = (l + (*lg as u64) * (*x as u64 % ord)) % ord,
                }
            }
            acc = target.add(acc, target.from_log(l));
        }
        Ok(acc)
    }

    /// Largest `k` with `y_{var+1}^k` dividing the polynomial.
    pub fn valuation(&self, var: usize) -> Result<u32> {
        self.terms
            .iter()
            .map(|(e, _)| e[var])
            .min()
            .ok_or(Error::ZeroInput("valuation"))
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn monomial_content(&self) -> Exps {
        let mut out = Exps::from_elem(0, self.nvars);
        if let Some((first, _)) = self.terms.first() {
            out = first.clone();
            for (e, _) in &self.terms {
                for (o, x) in out.iter_mut().zip(e) {
                    *o = (*o).min(*x);
                }
            }
        }
        out
    }

    /// Exact division by a monomial `y^exps` that divides every term.
    pub fn div_monomial(&self, exps: &[u32]) -> Result<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = Exps::with_capacity(self.nvars);
            for (a, b) in e.iter().zip(exps) {
                ne.push(a.checked_sub(*b).ok_or_else(|| Error::Invalid("monomial does not divide".into()))?);
            }
            terms.push((ne, *c));
        }
        Ok(MultiPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms })
    }

    /// Sorted monomial list `coef:e1,e2,...` joined by `;`, ascending graded-lex,
    /// coefficients written as field codes. The zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("{}:{}", self.ctx.code(*c), exps.join(","))
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_text(ctx: &Arc<FieldCtx>, nvars: usize, text: &str) -> Result<MultiPoly> {
        let text = text.trim();
        if text == "0" {
            return Ok(MultiPoly::zero(ctx, nvars));
        }
        let bad = || Error::Invalid(format!("malformed polynomial text {text:?}"));
        let mut terms = Vec::new();
        for item in text.split(';') {
            let (c, es) = item.split_once(':').ok_or_else(bad)?;
            let code: u64 = c.trim().parse().map_err(|_| bad())?;
            let exps: Exps = if es.trim().is_empty() {
                Exps::new()
            } else {
                es.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?
            };
            if exps.len() != nvars {
                return Err(bad());
            }
            terms.push((exps, ctx.try_from_code(code)?));
        }
        Ok(MultiPoly::from_terms(ctx, nvars, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    fn f2() -> Arc<FieldCtx> {
        Arc::new(make_field(2, 1).unwrap())
    }

    #[test]
    fn characteristic_two_cancels() {
        let k = f2();
        let s = MultiPoly::var(&k, 2, 0).add(&MultiPoly::var(&k, 2, 1)).unwrap();
        assert!(s.add(&s).unwrap().is_zero());
    }

    #[test]
    fn evaluate_in_extension() {
        let k = f2();
        let f4 = make_field(2, 2).unwrap();
        let emb = Embedding::new(&k, &f4).unwrap();
        let prod = MultiPoly::var(&k, 2, 0).mul(&MultiPoly::var(&k, 2, 1)).unwrap();
        let w = f4.from_code(2);
        assert_eq!(f4.code(prod.evaluate(&f4, &emb, &[w, w]).unwrap()), 3);
    }

    #[test]
    fn substitute_zero() {
        let k = f2();
        let p = MultiPoly::one(&k, 2)
            .add(&MultiPoly::var(&k, 2, 0).mul(&MultiPoly::var(&k, 2, 1)).unwrap())
            .unwrap();
        assert!(p.substitute(1, Fe::ZERO).is_one());
    }

    #[test]
    fn text_roundtrip_and_order() {
        let k = Arc::new(make_field(3, 1).unwrap());
        let p = MultiPoly::from_text(&k, 2, "2:0,1;1:0,0;1:2,0").unwrap();
        assert_eq!(p.to_text(), "1:0,0;2:0,1;1:2,0");
        assert_eq!(MultiPoly::from_text(&k, 2, &p.to_text()).unwrap(), p);
        assert!(MultiPoly::from_text(&k, 2, "1:0").is_err());
    }

    #[test]
    fn frobenius_matches_power() {
        let k = Arc::new(make_field(3, 1).unwrap());
        let p = MultiPoly::from_text(&k, 2, "1:0,0;2:1,0;1:1,1").unwrap();
        assert_eq!(p.frobenius().unwrap(), p.pow(3).unwrap());
    }

    #[test]
    fn exponent_cap() {
        let k = f2();
        let big = MultiPoly::monomial(&k, 1, Fe::ONE, Exps::from_elem(1 << 30, 1));
        assert_eq!(big.mul(&big).unwrap_err(), Error::ExponentOverflow);
    }

    #[test]
    fn zero_variables() {
        let k = Arc::new(make_field(3, 1).unwrap());
        let c = MultiPoly::constant(&k, 0, k.from_int(2));
        let sq = c.mul(&c).unwrap();
        assert!(sq.is_one());
        assert_eq!(sq.to_text(), "1:");
        let f9 = make_field(3, 2).unwrap();
        let emb = Embedding::new(&k, &f9).unwrap();
        assert_eq!(c.evaluate(&f9, &emb, &[]).unwrap(), f9.from_int(2));
    }
}
