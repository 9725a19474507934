//! Arithmetic in finite fields `F_{p^n} = F_p[t]/(f)` for an explicit monic
//! irreducible `f`.
//!
//! Elements are stored as the integer `a_0 + a_1 p + ... + a_{n-1} p^{n-1}`
//! of their coefficient vector, so the prime field is exactly the range
//! `0..p`. Multiplication goes through discrete log tables built once per
//! context; the fields in scope are tiny, so this is the fast path for the
//! dense elimination done elsewhere.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order supported by the table-driven arithmetic.
pub const MAX_ORDER: u64 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("modulus has {got} coefficients, expected {expected} for degree {degree}")]
    DegreeMismatch {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("field of order {0} exceeds the supported maximum")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    ContextMismatch,
    #[error("element lies in the prime field")]
    PrimeFieldElement,
    #[error("operation needs a proper extension of the prime field")]
    PrimeFieldOnly,
    #[error("cannot parse field element: {0}")]
    Parse(String),
}

/// An element of some `F_{p^n}`; meaningful only together with its
/// [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The packed base-`p` index of the coefficient vector.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Kind selector for [`FieldCtx::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

/// Serializable description of a context: `{"p":3,"n":2,"modulus":[1,0,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CtxSpec {
    pub p: u32,
    pub n: usize,
    pub modulus: Vec<u32>,
}

struct Inner {
    p: u32,
    n: usize,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// Arithmetic context for `F_{p^n}`. Cheap to clone.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.n, self.0.modulus)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p as little-endian coefficient vectors.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let f = r[dr] * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p * p - f * bc % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

/// Irreducibility of a monic polynomial over `F_p` by trial division with
/// every monic polynomial of degree at most half.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    for k in 1..=n / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `n` over `F_p` in
/// lexicographic order of the low coefficients.
pub fn first_irreducible(p: u32, n: usize) -> Vec<u32> {
    let count = (p as u64).pow(n as u32);
    for code in 0..count {
        let mut f = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits_of(mut x: u32, p: u32, n: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(n);
    for _ in 0..n {
        d.push(x % p);
        x /= p;
    }
    d
}

fn pack(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn mul_mod_poly(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(n, 0);
    r
}

impl FieldCtx {
    /// Builds `F_p[t]/(modulus)`; `modulus` lists `n + 1` coefficients from
    /// the constant term upward and must be monic and irreducible.
    pub fn new(p: u32, n: usize, modulus: &[u32]) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        if n == 0 || modulus.len() != n + 1 {
            return Err(FfError::DegreeMismatch {
                degree: n,
                expected: n + 1,
                got: modulus.len(),
            });
        }
        if modulus[n] % p != 1 {
            return Err(FfError::NotMonic);
        }
        let order = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(FfError::FieldTooLarge(order));
        }
        let modulus: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        if !is_irreducible(&modulus, p) {
            return Err(FfError::ReducibleModulus(p));
        }
        let q = order as u32;

        // Find a primitive element by brute force and tabulate its powers.
        let mut exp = Vec::new();
        for g in 1..q {
            let gd = digits_of(g, p, n);
            let mut cur = digits_of(1, p, n);
            let mut powers = Vec::with_capacity(q as usize - 1);
            loop {
                powers.push(pack(&cur, p));
                cur = mul_mod_poly(&cur, &gd, &modulus, p);
                if pack(&cur, p) == 1 {
                    break;
                }
            }
            if powers.len() == q as usize - 1 {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        let neg = (0..q)
            .map(|x| {
                let d: Vec<u32> = digits_of(x, p, n).iter().map(|&c| (p - c) % p).collect();
                pack(&d, p)
            })
            .collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = digits_of(a, p, n);
                for b in 0..q {
                    let db = digits_of(b, p, n);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = pack(&s, p);
                }
            }
            t
        });
        Ok(FieldCtx(Arc::new(Inner {
            p,
            n,
            q,
            modulus,
            exp,
            log,
            neg,
            add,
        })))
    }

    pub fn from_spec(spec: &CtxSpec) -> Result<Self, FfError> {
        Self::new(spec.p, spec.n, &spec.modulus)
    }

    pub fn spec(&self) -> CtxSpec {
        CtxSpec {
            p: self.0.p,
            n: self.0.n,
            modulus: self.0.modulus.clone(),
        }
    }

    /// The prime field `F_p` (modulus `t`).
    pub fn prime_field(p: u32) -> Result<Self, FfError> {
        Self::new(p, 1, &[0, 1])
    }

    /// `F_{p^n}` with the fixed default modulus: `t^2+1` for `p = 3`,
    /// `t^2+2` for `p = 5`, otherwise the first irreducible polynomial.
    pub fn with_default_modulus(p: u32, n: usize) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        Self::new(p, n, &default_modulus(p, n))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The class of `t`; equals `-modulus[0]` in the prime field case.
    pub fn generator(&self) -> FieldElem {
        if self.0.n == 1 {
            self.neg(FieldElem(self.0.modulus[0]))
        } else {
            FieldElem(self.0.p)
        }
    }

    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, FfError> {
        if coeffs.len() != self.0.n || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FfError::ContextMismatch);
        }
        Ok(FieldElem(pack(coeffs, self.0.p)))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        digits_of(a.0, self.0.p, self.0.n)
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.0.q
    }

    /// Every element, in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.0.add {
            Some(t) => FieldElem(t[(a.0 * self.0.q + b.0) as usize]),
            None => {
                let p = self.0.p;
                let (mut x, mut y) = (a.0, b.0);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..self.0.n {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                FieldElem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let m = self.0.q - 1;
        let s = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        FieldElem(self.0.exp[(if s >= m { s - m } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FfError> {
        if a.0 == 0 {
            return Err(FfError::DivisionByZero);
        }
        let m = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Ok(FieldElem(self.0.exp[((m - l) % m) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem(1);
        }
        if a.0 == 0 {
            return FieldElem(0);
        }
        let m = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        FieldElem(self.0.exp[((l * (e % m)) % m) as usize])
    }

    /// Signed power; negative exponents need a nonzero base.
    pub fn pow_i(&self, a: FieldElem, e: i64) -> Result<FieldElem, FfError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Checked arithmetic with context validation of both operands.
    pub fn arith(&self, op: ArithOp, a: FieldElem, b: FieldElem) -> Result<FieldElem, FfError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(FfError::ContextMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Pow(e) => self.pow(a, e),
        })
    }

    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.pow(a, self.0.p as u64)
    }

    /// The unique `b` with `b^p = a`, namely `a^(p^(n-1))`.
    pub fn pth_root(&self, a: FieldElem) -> FieldElem {
        self.pow(a, (self.0.p as u64).pow(self.0.n as u32 - 1))
    }

    pub fn in_prime_field(&self, a: FieldElem) -> bool {
        self.frobenius(a) == a
    }

    /// `β = (-α)^(-1/p)`.
    pub fn beta_from_alpha(&self, alpha: FieldElem) -> Result<FieldElem, FfError> {
        if self.in_prime_field(alpha) {
            return Err(FfError::PrimeFieldElement);
        }
        Ok(self.pth_root(self.inv(self.neg(alpha))?))
    }

    /// `α = -β^(-p)`.
    pub fn alpha_from_beta(&self, beta: FieldElem) -> Result<FieldElem, FfError> {
        if self.in_prime_field(beta) {
            return Err(FfError::PrimeFieldElement);
        }
        Ok(self.neg(self.inv(self.frobenius(beta))?))
    }

    /// All elements outside `F_p`, in index order.
    pub fn enumerate_nonprime(&self) -> Result<Vec<FieldElem>, FfError> {
        if self.0.n < 2 {
            return Err(FfError::PrimeFieldOnly);
        }
        Ok(self.elements().filter(|&a| !self.in_prime_field(a)).collect())
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen_range(0..self.0.q))
    }

    /// A reproducible element drawn from a ChaCha stream keyed by `seed`.
    pub fn sample(&self, seed: u64) -> FieldElem {
        self.random(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// A reproducible element of `F_{p^n} \ F_p`.
    pub fn sample_nonprime(&self, seed: u64) -> Result<FieldElem, FfError> {
        let all = self.enumerate_nonprime()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(all[rng.gen_range(0..all.len())])
    }

    /// Text encoding `"a0,a1,..."`.
    pub fn format(&self, a: FieldElem) -> String {
        self.coeffs(a)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(&self, s: &str) -> Result<FieldElem, FfError> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| FfError::Parse(format!("{s:?}: {e}")))?;
        if coeffs.len() != self.0.n || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FfError::Parse(format!(
                "{s:?} is not {} residues mod {}",
                self.0.n, self.0.p
            )));
        }
        self.from_coeffs(&coeffs)
    }

    /// `F_{p^{2n}}` together with an embedding of `self` into it.
    pub fn quadratic_extension(&self) -> Result<(FieldCtx, Embedding), FfError> {
        let big_n = 2 * self.0.n;
        let big = FieldCtx::new(self.0.p, big_n, &first_irreducible(self.0.p, big_n))?;
        // A root of our modulus inside the big field is the image of t.
        let root = big
            .elements()
            .find(|&r| {
                let mut acc = big.zero();
                for &c in self.0.modulus.iter().rev() {
                    acc = big.add(big.mul(acc, r), big.from_int(c as i64));
                }
                acc.is_zero()
            })
            .expect("an irreducible of degree n splits in F_{p^{2n}}");
        let image = self
            .elements()
            .map(|a| {
                let mut acc = big.zero();
                for &c in self.coeffs(a).iter().rev() {
                    acc = big.add(big.mul(acc, root), big.from_int(c as i64));
                }
                acc
            })
            .collect();
        Ok((big, Embedding { image }))
    }
}

/// Field embedding produced by [`FieldCtx::quadratic_extension`].
#[derive(Debug, Clone)]
pub struct Embedding {
    image: Vec<FieldElem>,
}

impl Embedding {
    pub fn apply(&self, a: FieldElem) -> FieldElem {
        self.image[a.0 as usize]
    }
}

pub fn default_modulus(p: u32, n: usize) -> Vec<u32> {
    match (p, n) {
        (3, 2) => vec![1, 0, 1],
        (5, 2) => vec![2, 0, 1],
        (_, 1) => vec![0, 1],
        _ => first_irreducible(p, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2, &[1, 0, 1]).unwrap()
    }

    fn el(ctx: &FieldCtx, c: &[u32]) -> FieldElem {
        ctx.from_coeffs(c).unwrap()
    }

    #[test]
    fn context_construction() {
        assert!(FieldCtx::new(3, 2, &[1, 0, 1]).is_ok());
        assert!(FieldCtx::new(3, 1, &[0, 1]).is_ok());
        assert_eq!(
            FieldCtx::new(3, 2, &[2, 0, 1]).unwrap_err(),
            FfError::ReducibleModulus(3)
        );
        assert_eq!(FieldCtx::new(4, 1, &[0, 1]).unwrap_err(), FfError::NotPrime(4));
        assert!(matches!(
            FieldCtx::new(3, 2, &[1, 1]),
            Err(FfError::DegreeMismatch { .. })
        ));
        assert_eq!(FieldCtx::new(3, 2, &[1, 0, 2]).unwrap_err(), FfError::NotMonic);
        assert!(FieldCtx::new(5, 2, &[2, 0, 1]).is_ok());
    }

    #[test]
    fn irreducibility_matches_root_search_for_quadratics() {
        // A monic quadratic over F_p is irreducible iff it has no root.
        for p in [3u32, 5, 7] {
            for c0 in 0..p {
                for c1 in 0..p {
                    let has_root = (0..p).any(|x| (x * x + c1 * x + c0) % p == 0);
                    assert_eq!(is_irreducible(&[c0, c1, 1], p), !has_root);
                }
            }
        }
    }

    #[test]
    fn f9_examples() {
        let k = f9();
        let t = el(&k, &[0, 1]);
        assert_eq!(k.mul(t, t), el(&k, &[2, 0]));
        assert_eq!(k.inv(t).unwrap(), el(&k, &[0, 2]));
        for x in k.elements() {
            assert_eq!(k.add(x, k.neg(x)), k.zero());
        }
        assert_eq!(k.inv(k.zero()), Err(FfError::DivisionByZero));
        assert_eq!(
            k.arith(ArithOp::Mul, FieldElem(9), t),
            Err(FfError::ContextMismatch)
        );
    }

    #[test]
    fn pth_roots() {
        let k = f9();
        assert_eq!(k.pth_root(el(&k, &[2, 0])), el(&k, &[2, 0]));
        let r = k.pth_root(el(&k, &[0, 1]));
        assert_eq!(r, el(&k, &[0, 2]));
        assert_eq!(k.pow(r, 3), el(&k, &[0, 1]));
        for seed in 0..20 {
            let x = k.sample(seed);
            assert_eq!(k.frobenius(k.pth_root(x)), x);
        }
        for k in [f9(), FieldCtx::new(5, 2, &[2, 0, 1]).unwrap()] {
            for a in k.elements() {
                assert_eq!(k.pow(k.pth_root(a), k.p() as u64), a);
            }
        }
    }

    #[test]
    fn prime_field_is_frobenius_fixed() {
        let k = f9();
        for a in k.elements() {
            assert_eq!(a.index() < 3, k.frobenius(a) == a);
        }
    }

    #[test]
    fn alpha_beta_conversion() {
        let k = f9();
        let t = el(&k, &[0, 1]);
        let two_t = el(&k, &[0, 2]);
        // beta = t: beta^3 = -t, (-t)^{-1} = t, alpha = -t.
        assert_eq!(k.alpha_from_beta(t).unwrap(), two_t);
        assert_eq!(k.beta_from_alpha(t).unwrap(), two_t);
        assert_eq!(k.alpha_from_beta(two_t).unwrap(), t);
        assert_eq!(
            k.beta_from_alpha(el(&k, &[1, 0])),
            Err(FfError::PrimeFieldElement)
        );
        for k in [f9(), FieldCtx::new(5, 2, &[2, 0, 1]).unwrap()] {
            let mut images = Vec::new();
            for a in k.enumerate_nonprime().unwrap() {
                let b = k.beta_from_alpha(a).unwrap();
                assert!(!k.in_prime_field(b));
                assert_eq!(k.neg(k.inv(k.frobenius(b)).unwrap()), a);
                assert_eq!(k.alpha_from_beta(b).unwrap(), a);
                images.push(b);
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len() as u32, k.order() - k.p());
        }
    }

    #[test]
    fn enumeration_and_sampling() {
        let k = f9();
        let all = k.enumerate_nonprime().unwrap();
        let shown: Vec<String> = all.iter().map(|&a| k.format(a)).collect();
        assert_eq!(shown, ["0,1", "1,1", "2,1", "0,2", "1,2", "2,2"]);
        let f25 = FieldCtx::new(5, 2, &[2, 0, 1]).unwrap();
        assert_eq!(f25.enumerate_nonprime().unwrap().len(), 20);
        assert_eq!(k.sample(42), k.sample(42));
        assert_eq!(
            FieldCtx::prime_field(3).unwrap().enumerate_nonprime(),
            Err(FfError::PrimeFieldOnly)
        );
    }

    #[test]
    fn text_encoding() {
        let k = f9();
        let a = k.parse("2,1").unwrap();
        assert_eq!(k.coeffs(a), vec![2, 1]);
        assert_eq!(k.format(a), "2,1");
        assert!(k.parse("3,0").is_err());
        assert!(k.parse("1").is_err());
        let spec: CtxSpec = serde_json::from_str(r#"{"p":3,"n":2,"modulus":[1,0,1]}"#).unwrap();
        assert_eq!(FieldCtx::from_spec(&spec).unwrap(), k);
    }

    #[test]
    fn quadratic_extension_embeds_homomorphically() {
        let k = f9();
        let (big, emb) = k.quadratic_extension().unwrap();
        assert_eq!(big.order(), 81);
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(emb.apply(k.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(k.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
            }
        }
    }

    #[test]
    fn large_field_without_add_table() {
        let k = FieldCtx::with_default_modulus(5, 5).unwrap();
        assert_eq!(k.order(), 3125);
        let a = k.sample(1);
        let b = k.sample(2);
        let s = k.add(a, b);
        let ca = k.coeffs(a);
        let cb = k.coeffs(b);
        let cs: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 5).collect();
        assert_eq!(k.coeffs(s), cs);
        assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn field_axioms_f25(a in 0u32..25, b in 0u32..25, c in 0u32..25) {
                let k = FieldCtx::new(5, 2, &[2, 0, 1]).unwrap();
                let (a, b, c) = (FieldElem(a), FieldElem(b), FieldElem(c));
                prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                prop_assert_eq!(k.add(a, b), k.add(b, a));
                if !a.is_zero() {
                    prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
                }
                prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
            }
        }
    }
}
