//! Degree-8 polynomials over GF(2^r).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// A polynomial a_0 + a_1 x + ... + a_8 x^8 with a_8 != 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octic {
    ctx: FieldCtx,
    // low to high
    coeffs: [FieldElement; 9],
}

/// The substitution g(x) = s * f(t*x + u) + v, with s, t nonzero.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LinearWitness {
    pub s: FieldElement,
    pub t: FieldElement,
    pub u: FieldElement,
    pub v: FieldElement,
}

impl LinearWitness {
    pub const IDENTITY: LinearWitness = LinearWitness {
        s: FieldElement::ONE,
        t: FieldElement::ONE,
        u: FieldElement::ZERO,
        v: FieldElement::ZERO,
    };

    pub fn new(s: FieldElement, t: FieldElement, u: FieldElement, v: FieldElement) -> Result<Self> {
        if s.is_zero() || t.is_zero() {
            return Err(Error::Domain("linear witness needs s and t nonzero".into()));
        }
        Ok(LinearWitness { s, t, u, v })
    }

    /// The witness for applying `self` first and `next` second.
    pub fn then(&self, ctx: &FieldCtx, next: &LinearWitness) -> LinearWitness {
        LinearWitness {
            s: ctx.mul(self.s, next.s),
            t: ctx.mul(self.t, next.t),
            u: ctx.add(ctx.mul(self.t, next.u), self.u),
            v: ctx.add(ctx.mul(next.s, self.v), next.v),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl Octic {
    pub fn new(ctx: &FieldCtx, coeffs: [FieldElement; 9]) -> Result<Octic> {
        if let Some(c) = coeffs.iter().find(|c| !ctx.contains(**c)) {
            return Err(Error::OutOfRange(format!(
                "coefficient {:#x} outside GF(2^{})",
                c.bits(),
                ctx.r()
            )));
        }
        if coeffs[8].is_zero() {
            return Err(Error::Domain(
                "leading coefficient a8 must be nonzero".into(),
            ));
        }
        Ok(Octic {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    /// x^8 + a7 x^7 + ... + a1 x from the tuple (a7, ..., a1).
    pub fn normalized(ctx: &FieldCtx, tuple: [FieldElement; 7]) -> Result<Octic> {
        let mut coeffs = [FieldElement::ZERO; 9];
        coeffs[8] = FieldElement::ONE;
        for (k, &c) in tuple.iter().enumerate() {
            coeffs[7 - k] = c;
        }
        Octic::new(ctx, coeffs)
    }

    /// Normalized octic from the printed log form of (a7, ..., a1).
    pub fn from_log_tuple(ctx: &FieldCtx, tuple: [u32; 7]) -> Result<Octic> {
        let mut elems = [FieldElement::ZERO; 7];
        for (dst, &i) in elems.iter_mut().zip(&tuple) {
            *dst = ctx.from_log_index(i)?;
        }
        Octic::normalized(ctx, elems)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[FieldElement; 9] {
        &self.coeffs
    }

    /// (a7, a6, a5, a4, a3, a2, a1).
    pub fn tuple(&self) -> [FieldElement; 7] {
        std::array::from_fn(|k| self.coeffs[7 - k])
    }

    pub fn log_tuple(&self) -> [u32; 7] {
        self.tuple().map(|c| self.ctx.log_index(c))
    }

    /// Monic with zero constant term.
    pub fn is_normalized(&self) -> bool {
        self.coeffs[8] == FieldElement::ONE && self.coeffs[0].is_zero()
    }

    pub fn check_same_field(&self, other: &Octic) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.r(),
                right: other.ctx.r(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        if !self.ctx.contains(x) {
            return Err(Error::OutOfRange(format!(
                "{:#x} is not an element of GF(2^{})",
                x.bits(),
                self.ctx.r()
            )));
        }
        Ok(self.eval_in_field(x))
    }

    /// Horner evaluation; `x` must belong to the field.
    #[inline]
    pub fn eval_in_field(&self, x: FieldElement) -> FieldElement {
        let ctx = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// Expands s * f(t*x + u) + v.
    pub fn linear_sub(&self, w: &LinearWitness) -> Result<Octic> {
        if w.s.is_zero() || w.t.is_zero() {
            return Err(Error::Domain("linear witness needs s and t nonzero".into()));
        }
        let ctx = &self.ctx;
        // Horner in the polynomial ring: acc <- acc * (t x + u) + a_i.
        let mut acc = [FieldElement::ZERO; 10];
        acc[0] = self.coeffs[8];
        for i in (0..8).rev() {
            let mut next = [FieldElement::ZERO; 10];
            for d in 0..9 {
                if acc[d].is_zero() {
                    continue;
                }
                next[d + 1] = ctx.add(next[d + 1], ctx.mul(acc[d], w.t));
                next[d] = ctx.add(next[d], ctx.mul(acc[d], w.u));
            }
            next[0] = ctx.add(next[0], self.coeffs[i]);
            acc = next;
        }
        let mut coeffs = [FieldElement::ZERO; 9];
        for d in 0..9 {
            coeffs[d] = ctx.mul(acc[d], w.s);
        }
        coeffs[0] = ctx.add(coeffs[0], w.v);
        Octic::new(ctx, coeffs)
    }

    /// Coefficient-wise Frobenius power a -> a^(2^j).
    pub fn frobenius(&self, j: u32) -> Octic {
        Octic {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.map(|c| self.ctx.frob(c, j)),
        }
    }

    /// f + c.
    pub fn add_constant(&self, c: FieldElement) -> Octic {
        let mut coeffs = self.coeffs;
        coeffs[0] = self.ctx.add(coeffs[0], c);
        Octic {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// How many inputs map to each attained value. The counts sum to q.
    pub fn value_multiset(&self) -> BTreeMap<FieldElement, u32> {
        let mut counts = BTreeMap::new();
        for x in self.ctx.elements() {
            *counts.entry(self.eval_in_field(x)).or_insert(0) += 1;
        }
        counts
    }

    /// `x^8 + x^6 + e*x^5 + ...`
    pub fn to_poly_string(&self) -> String {
        let mut parts = Vec::new();
        for i in (0..9).rev() {
            let c = self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coeff = self.ctx.format_element(c);
            parts.push(match (coeff.as_str(), mono.is_empty()) {
                (_, true) => coeff,
                ("1", false) => mono,
                (_, false) => format!("{coeff}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Octic {
    /// The (a7,...,a1) tuple in log form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.log_tuple();
        write!(
            f,
            "({},{},{},{},{},{},{})",
            t[0], t[1], t[2], t[3], t[4], t[5], t[6]
        )
    }
}
