//! Combinatorics and module structure of the covers
//! `y0^p - y0 = x^m`, `y1^p - y1 = α·x^m` of the projective line.
//!
//! Differentials and cohomology classes are represented only through their
//! index sets and the action matrices on them. The eigenpiece for the
//! character indexed by `c` is stored under the key `c`; no root of unity
//! is ever constructed.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::ff::{FfError, FieldCtx, FieldElem};
use crate::kmod::{
    binom_mod_p, is_isomorphic, v_d, v_dr, HModule, IsoMethod, KmodError,
};
use crate::linalg::{LinalgError, Mat, Vector};
use crate::poly::Poly1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("invalid curve parameters: {0}")]
    BadParams(String),
    #[error("index c = {c} outside 1..{m}")]
    OutOfRange { c: usize, m: usize },
    #[error("the trace identity needs a proper extension of the prime field")]
    PrimeFieldOnly,
    #[error(transparent)]
    Kmod(#[from] KmodError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, CurveError>;

fn check_pm(p: u32, m: usize) -> Result<()> {
    if m == 0 || m.is_multiple_of(p as usize) {
        return Err(CurveError::BadParams(format!("need m >= 1 prime to p, got p = {p}, m = {m}")));
    }
    Ok(())
}

fn check_c(m: usize, c: usize) -> Result<()> {
    if c == 0 || c >= m {
        return Err(CurveError::OutOfRange { c, m });
    }
    Ok(())
}

/// `p² - ⌈(p²c + 1)/m⌉`.
pub fn dd(p: u32, m: usize, c: usize) -> Result<usize> {
    check_pm(p, m)?;
    check_c(m, c)?;
    let q = (p * p) as usize;
    Ok(q - (q * c + 1).div_ceil(m))
}

/// `{i : 0 ≤ i < p², m·i + p²·c < m·(p² - 1)}`.
pub fn index_i(p: u32, m: usize, c: usize) -> Result<Vec<usize>> {
    check_pm(p, m)?;
    check_c(m, c)?;
    let q = (p * p) as usize;
    Ok((0..q).filter(|&i| m * i + q * c < m * (q - 1)).collect())
}

/// `{i : 0 ≤ i < p², p²·c < m·i}`.
pub fn index_j(p: u32, m: usize, c: usize) -> Result<Vec<usize>> {
    check_pm(p, m)?;
    check_c(m, c)?;
    let q = (p * p) as usize;
    Ok((0..q).filter(|&i| q * c < m * i).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub p: u32,
    pub m: usize,
    /// `|H_i|` for `i = 0..=m+1`; the group is trivial from `m + 1` on.
    pub group_orders: Vec<usize>,
    pub different_exponent: usize,
    pub genus: usize,
}

pub fn ramification_profile(p: u32, m: usize) -> Result<RamificationProfile> {
    check_pm(p, m)?;
    let q = (p * p) as usize;
    let mut group_orders = vec![q; m + 1];
    group_orders.push(1);
    let different_exponent: usize = group_orders.iter().map(|h| h - 1).sum();
    // 2g - 2 = |H|·(0 - 2) + d_P
    let twice = different_exponent as i64 + 2 - 2 * q as i64;
    if twice < 0 || twice % 2 != 0 {
        return Err(CurveError::BadParams("Riemann-Hurwitz gives no integral genus".into()));
    }
    Ok(RamificationProfile {
        p,
        m,
        group_orders,
        different_exponent,
        genus: (twice / 2) as usize,
    })
}

/// `½(p² - 1)(m - 1)`.
pub fn genus(p: u32, m: usize) -> Result<usize> {
    check_pm(p, m)?;
    Ok(((p * p - 1) as usize * (m - 1)) / 2)
}

/// Orders at the unique point over infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Valuations {
    pub z0: i64,
    pub z1: i64,
    pub x: i64,
    pub dx: i64,
    pub z: i64,
}

pub fn valuation_table(p: u32, m: usize) -> Result<Valuations> {
    check_pm(p, m)?;
    let (p, m) = (p as i64, m as i64);
    let q = p * p;
    Ok(Valuations {
        z0: -m * p,
        z1: -m * p,
        x: -q,
        dx: (q - 1) * (m + 1) - 2 * q,
        z: -m,
    })
}

/// Number of gaps of the numerical semigroup generated by `p²` and `m`.
pub fn semigroup_gap_count(p: u32, m: usize) -> Result<usize> {
    check_pm(p, m)?;
    let q = (p * p) as usize;
    if m == 1 {
        return Ok(0);
    }
    let frobenius = q * m - q - m;
    let mut reach = vec![false; frobenius + 1];
    reach[0] = true;
    for n in 1..=frobenius {
        reach[n] = (n >= q && reach[n - q]) || (n >= m && reach[n - m]);
    }
    Ok(reach.iter().filter(|r| !**r).count())
}

/// Pairs `(i, c)` with `i < p²` and `m·i + p²·c < δ`.
pub fn rr_basis(p: u32, m: usize, delta: usize) -> Result<Vec<(usize, usize)>> {
    check_pm(p, m)?;
    let q = (p * p) as usize;
    let mut out = Vec::new();
    for i in 0..q {
        let mut c = 0;
        while m * i + q * c < delta {
            out.push((i, c));
            c += 1;
        }
    }
    Ok(out)
}

/// The parameters `(p, m, α)` with the derived `β = (-α)^(-1/p)` and
/// `γ = m·(1 + αβ)`.
#[derive(Debug, Clone)]
pub struct CurveParams {
    pub ctx: FieldCtx,
    pub m: usize,
    pub alpha: FieldElem,
    pub beta: FieldElem,
    pub gamma: FieldElem,
}

impl CurveParams {
    pub fn new(ctx: &FieldCtx, m: usize, alpha: FieldElem) -> Result<Self> {
        check_pm(ctx.p(), m)?;
        let beta = ctx.beta_from_alpha(alpha)?;
        let gamma = ctx.mul(
            ctx.from_int(m as i64),
            ctx.add(ctx.one(), ctx.mul(alpha, beta)),
        );
        if gamma.is_zero() {
            return Err(CurveError::BadParams("gamma vanishes".into()));
        }
        Ok(CurveParams {
            ctx: ctx.clone(),
            m,
            alpha,
            beta,
            gamma,
        })
    }

    pub fn from_beta(ctx: &FieldCtx, m: usize, beta: FieldElem) -> Result<Self> {
        let alpha = ctx.alpha_from_beta(beta)?;
        Self::new(ctx, m, alpha)
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn dd(&self, c: usize) -> Result<usize> {
        dd(self.p(), self.m, c)
    }
}

/// Eigenpieces indexed by `c ∈ 1..m`.
#[derive(Debug, Clone)]
pub struct GradedModule {
    pub pieces: BTreeMap<usize, HModule>,
}

impl GradedModule {
    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|m| m.dim()).sum()
    }

    pub fn piece(&self, c: usize) -> Option<&HModule> {
        self.pieces.get(&c)
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .pieces
            .iter()
            .map(|(c, m)| (c.to_string(), m.to_json()))
            .collect();
        Value::Object(map)
    }
}

fn binom(ctx: &FieldCtx, n: usize, i: usize) -> FieldElem {
    ctx.from_int(binom_mod_p(n as u64, i as u64, ctx.p()) as i64)
}

/// Holomorphic piece `c`: forms `ω_{i,c}` for `i ∈ I(c)` with the binomial
/// action.
fn holo_piece(params: &CurveParams, c: usize) -> Result<HModule> {
    let k = &params.ctx;
    let idx = index_i(params.p(), params.m, c)?;
    let n = idx.len();
    let act = |twist: FieldElem| {
        Mat::from_fn(k, n, n, |r, col| {
            let (i, j) = (idx[r], idx[col]);
            if i <= j {
                k.mul(binom(k, j, i), k.pow(twist, (j - i) as u64))
            } else {
                k.zero()
            }
        })
    };
    let labels = idx.iter().map(|i| format!("w{i}")).collect();
    Ok(HModule::new(k, act(k.one()), act(params.beta), Some(labels))?)
}

pub fn holo_graded(params: &CurveParams) -> Result<GradedModule> {
    let pieces = (1..params.m)
        .map(|c| Ok((c, holo_piece(params, c)?)))
        .collect::<Result<_>>()?;
    Ok(GradedModule { pieces })
}

/// A vector of the de Rham piece written in its labeled basis.
fn dr_basis(params: &CurveParams, c: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let omegas = index_i(params.p(), params.m, params.m - c)?;
    let etas = index_j(params.p(), params.m, c)?;
    Ok((omegas, etas))
}

/// De Rham piece `c`: `ω_{i,m-c}` for `i ∈ I(m-c)`, then `η_{i,c}` for
/// `i ∈ J(c)`. The η action is binomial; a class `η_{i,c}` with `i ∉ J(c)`
/// is rewritten as `-i·γ·ω_{i-1,m-c}`.
fn dr_piece(params: &CurveParams, c: usize) -> Result<HModule> {
    let k = &params.ctx;
    let (omegas, etas) = dr_basis(params, c)?;
    let n = omegas.len() + etas.len();
    let omega_pos = |i: usize| omegas.iter().position(|&x| x == i);
    let eta_pos = |i: usize| etas.iter().position(|&x| x == i).map(|e| omegas.len() + e);

    // image of η_{i,c} as a vector
    let eta_vec = |i: usize| -> Vector {
        let mut v = vec![k.zero(); n];
        if let Some(e) = eta_pos(i) {
            v[e] = k.one();
        } else if i > 0 {
            let w = omega_pos(i - 1).expect("η outside J(c) lands on an ω in I(m-c)");
            v[w] = k.neg(k.mul(k.from_int(i as i64), params.gamma));
        }
        v
    };
    let act = |twist: FieldElem| -> Result<Mat> {
        let mut cols = Vec::with_capacity(n);
        for &j in &omegas {
            let mut v = vec![k.zero(); n];
            for &i in omegas.iter().filter(|&&i| i <= j) {
                let coeff = k.mul(binom(k, j, i), k.pow(twist, (j - i) as u64));
                let pos = omega_pos(i).expect("I(m-c) is an initial segment");
                v[pos] = k.add(v[pos], coeff);
            }
            cols.push(v);
        }
        for &j in &etas {
            let mut v = vec![k.zero(); n];
            for i in 0..=j {
                let coeff = k.mul(binom(k, j, i), k.pow(twist, (j - i) as u64));
                if coeff.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(eta_vec(i)) {
                    *x = k.add(*x, k.mul(coeff, y));
                }
            }
            cols.push(v);
        }
        Ok(Mat::from_columns(k, n, &cols)?)
    };
    let labels = omegas
        .iter()
        .map(|i| format!("w{i}"))
        .chain(etas.iter().map(|i| format!("e{i}")))
        .collect();
    Ok(HModule::new(k, act(k.one())?, act(params.beta)?, Some(labels))?)
}

pub fn dr_graded(params: &CurveParams) -> Result<GradedModule> {
    let pieces = (1..params.m)
        .map(|c| Ok((c, dr_piece(params, c)?)))
        .collect::<Result<_>>()?;
    Ok(GradedModule { pieces })
}

/// The explicit map `v_dr(dd(m-c)) → dr piece c`:
/// `ω_j ↦ γ·ω_{j,m-c}`, `η_i ↦ η_{i,c}` for `i ∈ J(c)`, and
/// `η_i ↦ -i·γ·ω_{i-1,m-c}` otherwise.
pub fn dr_identification(params: &CurveParams, c: usize, abstract_: &HModule) -> Result<Mat> {
    let k = &params.ctx;
    let piece_labels: Vec<String> = {
        let (omegas, etas) = dr_basis(params, c)?;
        omegas
            .iter()
            .map(|i| format!("w{i}"))
            .chain(etas.iter().map(|i| format!("e{i}")))
            .collect()
    };
    let n = piece_labels.len();
    let at = |name: String, coeff: FieldElem| -> Result<Vector> {
        let pos = piece_labels
            .iter()
            .position(|l| *l == name)
            .ok_or_else(|| CurveError::BadParams(format!("no basis vector {name} in piece {c}")))?;
        let mut v = vec![k.zero(); n];
        v[pos] = coeff;
        Ok(v)
    };
    let labels = abstract_.labels().ok_or(KmodError::UnlabeledModule)?;
    let cols = labels
        .iter()
        .map(|l| match crate::kmod::parse_label(l) {
            Some(crate::kmod::Label::Omega(j)) => at(format!("w{j}"), params.gamma),
            Some(crate::kmod::Label::Eta(i)) => {
                if piece_labels.contains(&format!("e{i}")) {
                    at(format!("e{i}"), k.one())
                } else {
                    at(
                        format!("w{}", i - 1),
                        k.neg(k.mul(k.from_int(i as i64), params.gamma)),
                    )
                }
            }
            None => Err(KmodError::UnlabeledModule.into()),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_columns(k, n, &cols)?)
}

/// `x` intertwines `m → n` and is invertible.
pub fn is_explicit_isomorphism(x: &Mat, m: &HModule, n: &HModule) -> bool {
    x.is_invertible()
        && x.mul(m.sigma()).ok() == n.sigma().mul(x).ok()
        && x.mul(m.tau()).ok() == n.tau().mul(x).ok()
}

/// Holomorphic piece `c` has literally the matrices of `v_d(dd(c), β)`
/// under `ω_{i,c} ↦ ω_i`.
pub fn holo_matches(params: &CurveParams, c: usize) -> Result<bool> {
    let piece = holo_piece(params, c)?;
    let d = params.dd(c)?;
    if d == 0 {
        return Ok(piece.dim() == 0);
    }
    let target = v_d(&params.ctx, d, params.beta)?;
    let id = Mat::identity(&params.ctx, d);
    Ok(piece.dim() == d && is_explicit_isomorphism(&id, &piece, &target))
}

pub fn dr_matches(params: &CurveParams, c: usize) -> Result<bool> {
    let piece = dr_piece(params, c)?;
    let abstract_ = v_dr(&params.ctx, params.dd(params.m - c)?, params.beta)?;
    let phi = dr_identification(params, c, &abstract_)?;
    Ok(is_explicit_isomorphism(&phi, &abstract_, &piece))
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeReport {
    pub c: usize,
    pub sub_dim: usize,
    pub quotient_dim: usize,
    pub sub_matches: bool,
    pub quotient_matches: bool,
    pub sub_method: Option<IsoMethod>,
    pub quotient_method: Option<IsoMethod>,
}

impl HodgeReport {
    pub fn passed(&self) -> bool {
        self.sub_matches && self.quotient_matches
    }
}

/// The ω-classes of the de Rham piece span a copy of `v_d(dd(m-c))` and the
/// quotient by them is the dual of `v_d(dd(c))`.
pub fn hodge_check(params: &CurveParams, c: usize, seed: u64, trials: usize) -> Result<HodgeReport> {
    let k = &params.ctx;
    let piece = dr_piece(params, c)?;
    let omegas: Vec<Vector> = piece
        .labels()
        .expect("pieces are labeled")
        .iter()
        .enumerate()
        .filter(|(_, l)| l.starts_with('w'))
        .map(|(i, _)| piece.unit(i))
        .collect();
    let w = piece.generated_subspace(&omegas)?;
    let (sub, _) = piece.restrict(&w)?;
    let (quo, _) = piece.quotient(&w)?;
    let compare = |m: &HModule, d: usize, dual: bool| -> Result<(bool, Option<IsoMethod>)> {
        if d == 0 {
            return Ok((m.dim() == 0, None));
        }
        let target = v_d(k, d, params.beta)?;
        let target = if dual { target.dual() } else { target };
        let dec = is_isomorphic(m, &target, seed, trials)?;
        Ok((dec.isomorphic && dec.proven, Some(dec.method)))
    };
    let (sub_matches, sub_method) = compare(&sub, params.dd(params.m - c)?, false)?;
    let (quotient_matches, quotient_method) = compare(&quo, params.dd(c)?, true)?;
    Ok(HodgeReport {
        c,
        sub_dim: sub.dim(),
        quotient_dim: quo.dim(),
        sub_matches,
        quotient_matches,
        sub_method,
        quotient_method,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceCheck {
    pub beta: String,
    /// The expanded sum, as text.
    pub expansion: String,
    pub expected: String,
    pub passed: bool,
}

/// `Σ_{i,j ∈ F_p} (Z + i + jβ)^(p²-1)` in `k[Z]`.
pub fn trace_sum(ctx: &FieldCtx, beta: FieldElem) -> Poly1 {
    let p = ctx.p() as i64;
    let z = Poly1::var(ctx);
    let mut total = Poly1::zero(ctx);
    for i in 0..p {
        for j in 0..p {
            let shift = ctx.add(ctx.from_int(i), ctx.mul(ctx.from_int(j), beta));
            let lin = z.add(&Poly1::constant(ctx, shift)).expect("same field");
            total = total.add(&lin.pow((p * p - 1) as u64)).expect("same field");
        }
    }
    total
}

/// Compares the trace sum with the constant `(β^p - β)^(p-1)` for one `β`.
pub fn trace_identity_for(ctx: &FieldCtx, beta: FieldElem) -> Result<TraceCheck> {
    if ctx.n() < 2 {
        return Err(CurveError::PrimeFieldOnly);
    }
    if ctx.in_prime_field(beta) {
        return Err(KmodError::PrimeFieldElement.into());
    }
    let p = ctx.p() as u64;
    let expected = ctx.pow(ctx.sub(ctx.pow(beta, p), beta), p - 1);
    let sum = trace_sum(ctx, beta);
    Ok(TraceCheck {
        beta: ctx.format(beta),
        expansion: sum.to_string(),
        expected: ctx.format(expected),
        passed: sum == Poly1::constant(ctx, expected),
    })
}

/// The identity for every `β ∉ F_p` of the field.
pub fn trace_identity_check(ctx: &FieldCtx) -> Result<Vec<TraceCheck>> {
    if ctx.n() < 2 {
        return Err(CurveError::PrimeFieldOnly);
    }
    ctx.enumerate_nonprime()?
        .into_iter()
        .map(|b| trace_identity_for(ctx, b))
        .collect()
}
