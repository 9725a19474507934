use super::{binom_mod_p, HModule, KmodError, Result};
use crate::ff::{FieldCtx, FieldElem};
use crate::linalg::{Mat, Subspace, Vector};

/// A basis label of the `v_d` / `v_dr` families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Omega(usize),
    Eta(usize),
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Omega(i) => write!(f, "w{i}"),
            Label::Eta(i) => write!(f, "e{i}"),
        }
    }
}

/// Parses `w<i>` / `e<i>`.
pub fn parse_label(s: &str) -> Option<Label> {
    let (kind, rest) = s.split_at(s.char_indices().nth(1)?.0);
    let i = rest.parse().ok()?;
    match kind {
        "w" => Some(Label::Omega(i)),
        "e" => Some(Label::Eta(i)),
        _ => None,
    }
}

fn check_beta(ctx: &FieldCtx, beta: FieldElem) -> Result<()> {
    if !ctx.contains(beta) {
        return Err(KmodError::ContextMismatch);
    }
    if ctx.in_prime_field(beta) {
        return Err(KmodError::PrimeFieldElement);
    }
    Ok(())
}

/// `σ ω_n = Σ C(n,i) ω_i`, `τ ω_n = Σ C(n,i) β^(n-i) ω_i` on `ω_0..ω_{d-1}`.
pub(crate) fn binomial_action(ctx: &FieldCtx, d: usize, beta: FieldElem) -> (Mat, Mat) {
    let p = ctx.p();
    let sigma = Mat::from_fn(ctx, d, d, |i, n| {
        if i <= n {
            ctx.from_int(binom_mod_p(n as u64, i as u64, p) as i64)
        } else {
            ctx.zero()
        }
    });
    let tau = Mat::from_fn(ctx, d, d, |i, n| {
        if i <= n {
            let c = ctx.from_int(binom_mod_p(n as u64, i as u64, p) as i64);
            ctx.mul(c, ctx.pow(beta, (n - i) as u64))
        } else {
            ctx.zero()
        }
    });
    (sigma, tau)
}

pub fn v_d(ctx: &FieldCtx, d: usize, beta: FieldElem) -> Result<HModule> {
    let max = (ctx.p() * ctx.p()) as usize;
    if !(1..=max).contains(&d) {
        return Err(KmodError::BadDimension { d, min: 1, max });
    }
    check_beta(ctx, beta)?;
    let (sigma, tau) = binomial_action(ctx, d, beta);
    let labels = (0..d).map(|i| Label::Omega(i).to_string()).collect();
    HModule::new(ctx, sigma, tau, Some(labels))
}

/// `(V_{p²} ⊕ V_d) / K` with `K` spanned by `(ω_i, 0) + i·(0, ω_{i-1})`.
///
/// The first summand carries the `η` labels. The quotient basis consists of
/// the classes of `ω_j` (`j < d`, `j ≡ -1 mod p`) followed by `η_i`
/// (`1 ≤ i < p²`, `p ∤ i` or `i > d`). For `d = p²` there is no relation
/// through `ω_{p²}`, so the quotient has dimension `p²`.
pub fn v_dr(ctx: &FieldCtx, d: usize, beta: FieldElem) -> Result<HModule> {
    let p = ctx.p() as usize;
    let big = p * p;
    if d > big {
        return Err(KmodError::BadDimension { d, min: 0, max: big });
    }
    check_beta(ctx, beta)?;
    let (s1, t1) = binomial_action(ctx, big, beta);
    let (s2, t2) = binomial_action(ctx, d, beta);
    let total = HModule::new(ctx, s1.block_diag(&s2)?, t1.block_diag(&t2)?, None)?;
    let n = big + d;
    let unit = |i: usize| -> Vector {
        let mut v = vec![ctx.zero(); n];
        v[i] = ctx.one();
        v
    };
    let relations: Vec<Vector> = (0..=d.min(big - 1))
        .map(|i| {
            let mut v = unit(i);
            if i >= 1 {
                v[big + i - 1] = ctx.from_int(i as i64);
            }
            v
        })
        .collect();
    let k = Subspace::span(ctx, n, &relations);

    let mut reps = Vec::new();
    let mut labels = Vec::new();
    for j in (0..d).filter(|j| j % p == p - 1) {
        reps.push(unit(big + j));
        labels.push(Label::Omega(j).to_string());
    }
    for i in (1..big).filter(|&i| i % p != 0 || i > d) {
        reps.push(unit(i));
        labels.push(Label::Eta(i).to_string());
    }
    Ok(total.quotient_with_reps(&k, &reps, Some(labels))?.0)
}
