use crate::error::{Error, Result};
use crate::fields::{Fe, FieldCtx};
use crate::geometry::det;

/// An invertible `d x d` matrix over `F_q`, row-major, with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GLdElem {
    d: usize,
    entries: Vec<Fe>,
    inverse: Vec<Fe>,
}

impl GLdElem {
    pub fn new(base: &FieldCtx, d: usize, entries: Vec<Fe>) -> Result<Self> {
        if entries.len() != d * d {
            return Err(Error::Invalid(format!("{} entries for a {d}x{d} matrix", entries.len())));
        }
        let inverse = invert(base, d, &entries).ok_or_else(|| Error::Invalid("singular matrix".into()))?;
        Ok(GLdElem { d, entries, inverse })
    }

    /// From field codes, row-major.
    pub fn from_codes(base: &FieldCtx, d: usize, codes: &[u32]) -> Result<Self> {
        let entries = codes
            .iter()
            .map(|&c| base.try_from_code(c as u64))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, d, entries)
    }

    pub fn identity(d: usize) -> Self {
        let mut entries = vec![Fe::ZERO; d * d];
        for i in 0..d {
            entries[i * d + i] = Fe::ONE;
        }
        GLdElem { d, inverse: entries.clone(), entries }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Fe {
        self.entries[row * self.d + col]
    }

    pub fn inverse(&self) -> GLdElem {
        GLdElem { d: self.d, entries: self.inverse.clone(), inverse: self.entries.clone() }
    }

    pub fn mul(&self, base: &FieldCtx, other: &GLdElem) -> GLdElem {
        GLdElem {
            d: self.d,
            entries: matmul(base, self.d, &self.entries, &other.entries),
            inverse: matmul(base, self.d, &other.inverse, &self.inverse),
        }
    }

    pub fn det(&self, base: &FieldCtx) -> Fe {
        let mut a = self.entries.clone();
        det(base, &mut a, self.d)
    }

    pub fn is_identity(&self) -> bool {
        *self == GLdElem::identity(self.d)
    }

    /// True for nonzero scalar matrices.
    pub fn is_scalar(&self) -> bool {
        let c = self.entries[0];
        (0..self.d).all(|r| (0..self.d).all(|s| self.entry(r, s) == if r == s { c } else { Fe::ZERO }))
    }

    /// Order in `GL_d(F_q)`.
    pub fn order(&self, base: &FieldCtx) -> u64 {
        self.order_until(base, |g| g.is_identity())
    }

    /// Order of the image in `PGL_d(F_q)`.
    pub fn pgl_order(&self, base: &FieldCtx) -> u64 {
        self.order_until(base, |g| g.is_scalar())
    }

    fn order_until(&self, base: &FieldCtx, done: impl Fn(&GLdElem) -> bool) -> u64 {
        let mut g = self.clone();
        let mut n = 1;
        while !done(&g) {
            g = g.mul(base, self);
            n += 1;
        }
        n
    }

    /// `M x` with the entries pushed into the field of `x` by `embed`.
    pub fn apply(&self, field: &FieldCtx, embed: impl Fn(Fe) -> Fe, x: &[Fe], out: &mut [Fe]) {
        for (r, o) in out.iter_mut().enumerate().take(self.d) {
            let mut acc = Fe::ZERO;
            for (c, &xc) in x.iter().enumerate() {
                let a = self.entries[r * self.d + c];
                if !a.is_zero() && !xc.is_zero() {
                    acc = field.add(acc, field.mul(embed(a), xc));
                }
            }
            *o = acc;
        }
    }

    pub fn codes(&self, base: &FieldCtx) -> Vec<u32> {
        self.entries.iter().map(|&x| base.code(x)).collect()
    }
}

pub(crate) fn matmul(f: &FieldCtx, d: usize, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; d * d];
    for r in 0..d {
        for c in 0..d {
            let mut acc = Fe::ZERO;
            for k in 0..d {
                acc = f.add(acc, f.mul(a[r * d + k], b[k * d + c]));
            }
            out[r * d + c] = acc;
        }
    }
    out
}

/// Gauss-Jordan inverse; `None` when singular.
fn invert(f: &FieldCtx, d: usize, m: &[Fe]) -> Option<Vec<Fe>> {
    let w = 2 * d;
    let mut a = vec![Fe::ZERO; d * w];
    for r in 0..d {
        a[r * w..r * w + d].copy_from_slice(&m[r * d..r * d + d]);
        a[r * w + d + r] = Fe::ONE;
    }
    for col in 0..d {
        let piv = (col..d).find(|&r| !a[r * w + col].is_zero())?;
        for c in 0..w {
            a.swap(piv * w + c, col * w + c);
        }
        let inv = f.inv(a[col * w + col]).ok()?;
        for c in 0..w {
            a[col * w + c] = f.mul(a[col * w + c], inv);
        }
        for r in 0..d {
            let lead = a[r * w + col];
            if r == col || lead.is_zero() {
                continue;
            }
            for c in 0..w {
                let t = f.mul(lead, a[col * w + c]);
                a[r * w + c] = f.sub(a[r * w + c], t);
            }
        }
    }
    Some((0..d).flat_map(|r| a[r * w + d..r * w + w].to_vec()).collect())
}
