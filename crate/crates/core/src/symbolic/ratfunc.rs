use std::fmt;
use std::sync::Arc;

use super::poly::{Exps, MultiPoly};
use crate::error::{Error, Result};
use crate::fields::{Embedding, Fe, FieldCtx};

/// `num / den` with `den != 0`. Fractions are not gcd-reduced; equality is
/// cross-multiplication equality.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num.to_text(), self.den.to_text())
    }
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput("rational function denominator"));
        }
        if num.nvars() != den.nvars() || !num.ctx().same_field(den.ctx()) {
            return Err(Error::ContextMismatch("numerator and denominator rings differ".into()));
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.ctx(), p.nvars());
        RatFunc { num: p, den }
    }

    pub fn one(ctx: &Arc<FieldCtx>, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(ctx, nvars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }
    pub fn den(&self) -> &MultiPoly {
        &self.den
    }
    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `a/b == c/d` iff `a*d == c*b`.
    pub fn equals(&self, other: &RatFunc) -> Result<bool> {
        if self.den == other.den {
            return Ok(self.num == other.num);
        }
        Ok(self.num.mul(&other.den)? == other.num.mul(&self.den)?)
    }

    pub fn add(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num)?, self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?)?,
            self.den.mul(&other.den)?,
        )
    }

    pub fn sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    /// Multiplies by `c * y^exps`.
    pub fn mul_monomial(&self, c: Fe, exps: &[u32]) -> Result<RatFunc> {
        RatFunc::new(self.num.mul_monomial(c, exps)?, self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::ZeroInput("rational function inverse"));
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Quotient; equal denominators cancel literally (`(a/b)/(c/b) = a/c`).
    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.num.is_zero() {
            return Err(Error::ZeroInput("rational function division"));
        }
        if self.den == other.den {
            return RatFunc::new(self.num.clone(), other.num.clone());
        }
        RatFunc::new(self.num.mul(&other.den)?, self.den.mul(&other.num)?)
    }

    /// Divides by `y^exps`.
    pub fn div_monomial(&self, exps: &[u32]) -> Result<RatFunc> {
        RatFunc::new(self.num.clone(), self.den.mul_monomial(Fe::ONE, exps)?)
    }

    /// `r^q`.
    pub fn frobenius(&self) -> Result<RatFunc> {
        RatFunc::new(self.num.frobenius()?, self.den.frobenius()?)
    }

    /// `r^q - c * y^exps * r`, kept over the denominator `den^q`:
    /// `(num^q - c y^exps num den^(q-1)) / den^q`.
    pub fn frobenius_minus_monomial(&self, c: Fe, exps: &[u32]) -> Result<RatFunc> {
        let q = self.ctx().q();
        let scaled = self.num.mul(&self.den.pow(q - 1)?)?.mul_monomial(c, exps)?;
        RatFunc::new(self.num.frobenius()?.sub(&scaled)?, self.den.frobenius()?)
    }

    /// Removes the common monomial factor of numerator and denominator.
    pub fn cancel_monomials(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return RatFunc::new(self.num.clone(), MultiPoly::one(self.ctx(), self.nvars()));
        }
        let a = self.num.monomial_content();
        let b = self.den.monomial_content();
        let common: Exps = a.iter().zip(&b).map(|(x, y)| (*x).min(*y)).collect();
        RatFunc::new(self.num.div_monomial(&common)?, self.den.div_monomial(&common)?)
    }

    /// `y_{var+1}`-adic valuation.
    pub fn ord_y(&self, var: usize) -> Result<i64> {
        if self.num.is_zero() {
            return Err(Error::ZeroInput("ord_y"));
        }
        Ok(self.num.valuation(var)? as i64 - self.den.valuation(var)? as i64)
    }

    /// Residue modulo `y_{var+1}`: cancels powers of `y_{var+1}` and substitutes zero.
    /// The result keeps the same variable count, with `y_{var+1}` absent.
    pub fn reduce_mod_y(&self, var: usize) -> Result<RatFunc> {
        let vd = self.den.valuation(var)?;
        let vn = if self.num.is_zero() { u32::MAX } else { self.num.valuation(var)? };
        if vn < vd {
            return Err(Error::Pole(format!("negative valuation at y_{}", var + 1)));
        }
        let mut shift = Exps::from_elem(0, self.nvars());
        shift[var] = vd;
        let num = if self.num.is_zero() {
            self.num.clone()
        } else {
            self.num.div_monomial(&shift)?.substitute(var, Fe::ZERO)
        };
        let den = self.den.div_monomial(&shift)?.substitute(var, Fe::ZERO);
        RatFunc::new(num, den)
    }

    /// Value at a point; a vanishing denominator is a pole.
    pub fn evaluate(&self, target: &FieldCtx, emb: &Embedding, point: &[Fe]) -> Result<Fe> {
        let d = self.den.evaluate(target, emb, point)?;
        if d.is_zero() {
            return Err(Error::Pole("denominator vanishes at point".into()));
        }
        target.div(self.num.evaluate(target, emb, point)?, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    fn parse(k: &Arc<FieldCtx>, n: &str, d: &str) -> RatFunc {
        RatFunc::new(MultiPoly::from_text(k, 2, n).unwrap(), MultiPoly::from_text(k, 2, d).unwrap()).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let k = Arc::new(make_field(2, 1).unwrap());
        // (1 + y2) / y2^2
        let r = parse(&k, "1:0,0;1:0,1", "1:0,2");
        assert_eq!(r.ord_y(1).unwrap(), -2);
        assert_eq!(r.ord_y(0).unwrap(), 0);
        // v_1 = (1 - y2^(q-1)) / y2^q for d = 3, q = 2
        let v1 = parse(&k, "1:0,0;1:0,1", "1:0,2");
        assert_eq!(v1.ord_y(1).unwrap(), -2);
        assert!(RatFunc::from_poly(MultiPoly::zero(&k, 2)).ord_y(0).is_err());
    }

    #[test]
    fn reduce_examples() {
        let k = Arc::new(make_field(2, 1).unwrap());
        // (1 + y1 y2)/(1 + y2) mod y1 = 1/(1 + y2)
        let r = parse(&k, "1:0,0;1:1,1", "1:0,0;1:0,1");
        let red = r.reduce_mod_y(0).unwrap();
        assert!(red.equals(&parse(&k, "1:0,0", "1:0,0;1:0,1")).unwrap());
        // pole
        let pole = parse(&k, "1:0,0", "1:1,0");
        assert!(matches!(pole.reduce_mod_y(0), Err(Error::Pole(_))));
        // common powers cancel first: y1^2 (1+y2) / (y1^2) -> 1 + y2
        let c = parse(&k, "1:2,0;1:2,1", "1:2,0");
        assert!(c.reduce_mod_y(0).unwrap().equals(&parse(&k, "1:0,0;1:0,1", "1:0,0")).unwrap());
    }

    #[test]
    fn representative_independence() {
        let k = Arc::new(make_field(3, 1).unwrap());
        let r = parse(&k, "1:0,0;1:1,1", "2:0,1;1:1,0");
        let factor = MultiPoly::from_text(&k, 2, "1:0,0;1:1,0;1:1,2").unwrap();
        let r2 = RatFunc::new(r.num().mul(&factor).unwrap(), r.den().mul(&factor).unwrap()).unwrap();
        assert!(r.equals(&r2).unwrap());
        assert_eq!(r.ord_y(0).unwrap(), r2.ord_y(0).unwrap());
        assert_eq!(r.ord_y(1).unwrap(), r2.ord_y(1).unwrap());
        let f = r.reduce_mod_y(1).unwrap();
        let g = r2.reduce_mod_y(1).unwrap();
        assert!(f.equals(&g).unwrap());
    }

    #[test]
    fn frobenius_minus_monomial_matches_generic() {
        let k = Arc::new(make_field(3, 1).unwrap());
        let r = parse(&k, "1:0,0;2:1,1", "1:0,0;1:0,1");
        let c = k.from_int(2);
        let e = [1u32, 2];
        let fast = r.frobenius_minus_monomial(c, &e).unwrap();
        let slow = r.frobenius().unwrap().sub(&r.mul_monomial(c, &e).unwrap()).unwrap();
        assert!(fast.equals(&slow).unwrap());
    }
}
