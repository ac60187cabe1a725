//! Univariate polynomials over GF(q) modulo y^q - y.
//!
//! The quotient ring is the ring of functions GF(q) -> GF(q), so reducing
//! after every product gives the same result as reducing once at the end.

use crate::field::{FieldCtx, FieldElement};
use crate::symring::CoeffDomain;

/// Dense coefficients c_0..c_(q-1), low to high, of a reduced polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<FieldElement>);

impl UniPoly {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    /// The constant value, if the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.degree() {
            None => Some(FieldElement::ZERO),
            Some(0) => Some(self.0[0]),
            _ => None,
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, y: FieldElement) -> FieldElement {
        self.0
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| ctx.add(ctx.mul(acc, y), c))
    }
}

/// GF(q)[y] / (y^q - y).
#[derive(Clone, Debug)]
pub struct FunctionRing {
    ctx: FieldCtx,
}

impl FunctionRing {
    pub fn new(ctx: &FieldCtx) -> Self {
        FunctionRing { ctx: ctx.clone() }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    fn len(&self) -> usize {
        self.ctx.q() as usize
    }

    pub fn constant(&self, c: FieldElement) -> UniPoly {
        let mut v = vec![FieldElement::ZERO; self.len()];
        v[0] = c;
        UniPoly(v)
    }

    /// The indeterminate y.
    pub fn var(&self) -> UniPoly {
        self.monomial(FieldElement::ONE, 1)
    }

    /// c * y^n, reduced.
    pub fn monomial(&self, c: FieldElement, n: u64) -> UniPoly {
        let mut v = vec![FieldElement::ZERO; self.len()];
        v[self.fold(n)] = c;
        UniPoly(v)
    }

    /// Builds a reduced polynomial from (coefficient, exponent) pairs.
    pub fn from_terms(&self, terms: &[(FieldElement, u64)]) -> UniPoly {
        let mut v = vec![FieldElement::ZERO; self.len()];
        for &(c, n) in terms {
            let i = self.fold(n);
            v[i] = self.ctx.add(v[i], c);
        }
        UniPoly(v)
    }

    fn fold(&self, n: u64) -> usize {
        let q = self.ctx.q() as u64;
        if n < q {
            n as usize
        } else {
            (((n - 1) % (q - 1)) + 1) as usize
        }
    }
}

impl CoeffDomain for FunctionRing {
    type Elem = UniPoly;

    fn zero(&self) -> UniPoly {
        UniPoly(vec![FieldElement::ZERO; self.len()])
    }

    fn one(&self) -> UniPoly {
        self.constant(FieldElement::ONE)
    }

    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        UniPoly(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| self.ctx.add(x, y))
                .collect(),
        )
    }

    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let n = self.len();
        let mut out = vec![FieldElement::ZERO; n];
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return UniPoly(out);
        };
        for i in 0..=da {
            let x = a.0[i];
            if x.is_zero() {
                continue;
            }
            for j in 0..=db {
                let y = b.0[j];
                if y.is_zero() {
                    continue;
                }
                let k = self.fold((i + j) as u64);
                out[k] = self.ctx.add(out[k], self.ctx.mul(x, y));
            }
        }
        UniPoly(out)
    }

    fn is_zero(&self, a: &UniPoly) -> bool {
        a.degree().is_none()
    }
}
