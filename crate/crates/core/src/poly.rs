//! Dense polynomials: univariate over any [`FieldCtx`], bivariate over a
//! prime field.

use std::fmt;

use thiserror::Error;

use crate::ff::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live over different fields")]
    ContextMismatch,
    #[error("bivariate polynomials need a prime field context")]
    NotPrimeField,
}

/// `Σ coeffs[i] Z^i`, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly1 {
    ctx: FieldCtx,
    coeffs: Vec<FieldElem>,
}

impl Poly1 {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElem) -> Self {
        Self::new(ctx, vec![c])
    }

    /// The variable `Z`.
    pub fn var(ctx: &FieldCtx) -> Self {
        Self::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    fn check(&self, other: &Poly1) -> Result<(), PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly1) -> Result<Poly1, PolyError> {
        self.check(other)?;
        let k = &self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly1::new(
            k,
            (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect(),
        ))
    }

    pub fn mul(&self, other: &Poly1) -> Result<Poly1, PolyError> {
        self.check(other)?;
        let k = &self.ctx;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly1::zero(k));
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Ok(Poly1::new(k, out))
    }

    pub fn pow(&self, mut e: u64) -> Poly1 {
        let mut acc = Poly1::constant(&self.ctx, self.ctx.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        acc
    }

    pub fn eval(&self, z: FieldElem) -> FieldElem {
        let k = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, &c| k.add(k.mul(acc, z), c))
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| term(&format!("({})", self.ctx.format(c)), &[("z", i)]))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn term(coeff: &str, vars: &[(&str, usize)]) -> String {
    let mut s = coeff.to_string();
    for &(v, e) in vars {
        match e {
            0 => {}
            1 => s.push_str(&format!("·{v}")),
            _ => s.push_str(&format!("·{v}^{e}")),
        }
    }
    s
}

/// `Σ c[a][b] x^a y^b` over a prime field, stored densely on the smallest
/// bounding box.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly2 {
    ctx: FieldCtx,
    // coeffs[a][b] multiplies x^a y^b
    coeffs: Vec<Vec<FieldElem>>,
}

impl Poly2 {
    fn normalized(ctx: &FieldCtx, mut coeffs: Vec<Vec<FieldElem>>) -> Self {
        let ydeg = coeffs
            .iter()
            .filter_map(|row| row.iter().rposition(|c| !c.is_zero()))
            .max();
        match ydeg {
            None => coeffs.clear(),
            Some(d) => {
                for row in &mut coeffs {
                    row.resize(d + 1, FieldElem::ZERO);
                }
                while coeffs.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
                    coeffs.pop();
                }
            }
        }
        Poly2 {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn new(ctx: &FieldCtx, coeffs: Vec<Vec<FieldElem>>) -> Result<Self, PolyError> {
        if ctx.n() != 1 {
            return Err(PolyError::NotPrimeField);
        }
        Ok(Self::normalized(ctx, coeffs))
    }

    pub fn zero(ctx: &FieldCtx) -> Result<Self, PolyError> {
        Self::new(ctx, Vec::new())
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElem) -> Result<Self, PolyError> {
        Self::new(ctx, vec![vec![c]])
    }

    pub fn x(ctx: &FieldCtx) -> Result<Self, PolyError> {
        Self::new(ctx, vec![vec![ctx.zero()], vec![ctx.one()]])
    }

    pub fn y(ctx: &FieldCtx) -> Result<Self, PolyError> {
        Self::new(ctx, vec![vec![ctx.zero(), ctx.one()]])
    }

    pub fn coeff(&self, a: usize, b: usize) -> FieldElem {
        self.coeffs
            .get(a)
            .and_then(|r| r.get(b))
            .copied()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs.first().and_then(|r| r.len().checked_sub(1))
    }

    fn check(&self, other: &Poly2) -> Result<(), PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly2) -> Result<Poly2, PolyError> {
        self.check(other)?;
        let k = &self.ctx;
        let xa = self.coeffs.len().max(other.coeffs.len());
        let yb = self.y_degree().max(other.y_degree()).map_or(0, |d| d + 1);
        let grid = (0..xa)
            .map(|a| (0..yb).map(|b| k.add(self.coeff(a, b), other.coeff(a, b))).collect())
            .collect();
        Ok(Poly2::normalized(k, grid))
    }

    pub fn scale(&self, c: FieldElem) -> Poly2 {
        let k = &self.ctx;
        let grid = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(|&x| k.mul(c, x)).collect())
            .collect();
        Poly2::normalized(k, grid)
    }

    pub fn mul(&self, other: &Poly2) -> Result<Poly2, PolyError> {
        self.check(other)?;
        let k = &self.ctx;
        let (Some(xa), Some(xb)) = (self.x_degree(), other.x_degree()) else {
            return Ok(Poly2::normalized(k, Vec::new()));
        };
        let ya = self.y_degree().unwrap_or(0);
        let yb = other.y_degree().unwrap_or(0);
        let mut grid = vec![vec![k.zero(); ya + yb + 1]; xa + xb + 1];
        for (a1, r1) in self.coeffs.iter().enumerate() {
            for (b1, &c1) in r1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (a2, r2) in other.coeffs.iter().enumerate() {
                    for (b2, &c2) in r2.iter().enumerate() {
                        if !c2.is_zero() {
                            let cell = &mut grid[a1 + a2][b1 + b2];
                            *cell = k.add(*cell, k.mul(c1, c2));
                        }
                    }
                }
            }
        }
        Ok(Poly2::normalized(k, grid))
    }

    pub fn pow(&self, mut e: u64) -> Poly2 {
        let mut acc = Poly2::normalized(&self.ctx, vec![vec![self.ctx.one()]]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        acc
    }

    /// Evaluates at a point of any field of the same characteristic; prime
    /// field coefficients embed as the residues `0..p` in every such field.
    pub fn eval_in(&self, field: &FieldCtx, x: FieldElem, y: FieldElem) -> Result<FieldElem, PolyError> {
        if field.p() != self.ctx.p() {
            return Err(PolyError::ContextMismatch);
        }
        let mut acc = field.zero();
        for row in self.coeffs.iter().rev() {
            let inner = row
                .iter()
                .rev()
                .fold(field.zero(), |s, &c| field.add(field.mul(s, y), c));
            acc = field.add(field.mul(acc, x), inner);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.eval_in(&self.ctx, x, y).expect("own field")
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly2 {
    /// Sparse `c·x^a·y^b` terms, ordered by `(a, b)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push(term(&self.ctx.format(c), &[("x", a), ("y", b)]));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `Σ_{i,j ∈ F_p} (x + i + j·y)^(p²−1)` expanded in `F_p[x, y]`.
pub fn trace_polynomial(p: u32) -> Result<Poly2, PolyError> {
    let k = FieldCtx::prime_field(p).map_err(|_| PolyError::NotPrimeField)?;
    let x = Poly2::x(&k)?;
    let y = Poly2::y(&k)?;
    let e = (p as u64) * (p as u64) - 1;
    let mut total = Poly2::zero(&k)?;
    for i in 0..p {
        for j in 0..p {
            let lin = x
                .add(&Poly2::constant(&k, k.from_int(i as i64))?)?
                .add(&y.scale(k.from_int(j as i64)))?;
            total = total.add(&lin.pow(e))?;
        }
    }
    Ok(total)
}

/// `(y^p − y)^(p−1)` in `F_p[x, y]`.
pub fn artin_schreier_power(p: u32) -> Result<Poly2, PolyError> {
    let k = FieldCtx::prime_field(p).map_err(|_| PolyError::NotPrimeField)?;
    let y = Poly2::y(&k)?;
    let base = y.pow(p as u64).add(&y.scale(k.from_int(-1)))?;
    Ok(base.pow(p as u64 - 1))
}
