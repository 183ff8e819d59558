use super::{Fe, FieldCtx};
use crate::error::{Error, Result};

/// Field embedding `F_{p^a} -> F_{p^b}` with `a | b`.
///
/// The image of the source variable `x` is the root of the source modulus in
/// the target with the smallest code. In logarithm form the embedding is
/// multiplication of logarithms by a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    scale: u64,
    target_order: u64,
}

impl Embedding {
    pub fn new(src: &FieldCtx, dst: &FieldCtx) -> Result<Self> {
        if src.p() != dst.p() || !dst.degree().is_multiple_of(src.degree()) {
            return Err(Error::ContextMismatch(format!(
                "cannot embed F_{}^{} into F_{}^{}",
                src.p(),
                src.degree(),
                dst.p(),
                dst.degree()
            )));
        }
        if src.same_field(dst) {
            return Ok(Embedding { scale: 1, target_order: dst.order() });
        }
        let coeffs: Vec<Fe> = src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect();
        let eval = |x: Fe| coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| dst.add(dst.mul(acc, x), c));
        let root = dst
            .subfield_elements(src.degree())?
            .into_iter()
            .filter(|&x| eval(x).is_zero())
            .min_by_key(|&x| dst.code(x))
            .ok_or_else(|| Error::Consistency("source modulus has no root in target".into()))?;
        // Image of the source generator, written in the power basis of the root.
        let gen_coords = src.coords(src.generator());
        let mut image = Fe::ZERO;
        let mut power = Fe::ONE;
        for c in gen_coords {
            image = dst.add(image, dst.mul(dst.from_int(c as i64), power));
            power = dst.mul(power, root);
        }
        let scale = dst
            .log(image)
            .ok_or_else(|| Error::Consistency("generator maps to zero".into()))? as u64;
        Ok(Embedding { scale, target_order: dst.order() })
    }

    #[inline]
    pub fn apply(&self, x: Fe) -> Fe {
        if x.is_zero() {
            x
        } else {
            Fe(((x.0 as u64 * self.scale) % self.target_order) as u32)
        }
    }
}
