use rand::Rng;
use serde::Serialize;

use super::radical::radical;
use super::{seeded_rng, HModule, KmodError, Result};
use crate::ff::FieldElem;
use crate::jordan::JordanType;
use crate::linalg::{intertwiner_space, Mat, MatSpace};

/// `Hom_{k[H]}(m, n)` as a space of `dim n × dim m` matrices.
pub fn hom_space(m: &HModule, n: &HModule) -> Result<MatSpace> {
    if m.ctx() != n.ctx() {
        return Err(KmodError::ContextMismatch);
    }
    Ok(intertwiner_space(
        &[m.sigma().clone(), m.tau().clone()],
        &[n.sigma().clone(), n.tau().clone()],
    )?)
}

/// Isomorphism-invariant fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub dim: usize,
    pub filtration_dims: Vec<usize>,
    pub fixed_dim: usize,
    pub end_dim: usize,
    /// Jordan types of `aσ0 + bτ0` over the projective line, sorted.
    pub jordan_types: Vec<JordanType>,
}

pub fn profile(m: &HModule) -> Profile {
    profile_and_end(m).0
}

fn profile_and_end(m: &HModule) -> (Profile, MatSpace) {
    let end = hom_space(m, m).expect("same field");
    let filtration_dims: Vec<usize> = m.s_filtration().iter().map(|s| s.dim()).collect();
    let mut jordan_types: Vec<JordanType> = m.jordan_scan().into_iter().map(|(_, t)| t).collect();
    jordan_types.sort();
    let p = Profile {
        dim: m.dim(),
        fixed_dim: filtration_dims[0],
        filtration_dims,
        end_dim: end.dim(),
        jordan_types,
    };
    (p, end)
}

/// Which step of [`is_isomorphic`] settled the question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoMethod {
    Identical,
    Dimension,
    Profile,
    HomDimensions,
    RandomSearch,
    LocalEndomorphisms,
    ExhaustiveScan,
    QuadraticExtension,
    SearchExhausted,
}

#[derive(Debug, Clone)]
pub struct IsoDecision {
    pub isomorphic: bool,
    /// An invertible intertwiner `m → n` when `isomorphic`.
    pub witness: Option<Mat>,
    pub method: IsoMethod,
    /// `false` only for [`IsoMethod::SearchExhausted`], where a NO rests on
    /// a failed randomized search.
    pub proven: bool,
}

impl IsoDecision {
    fn no(method: IsoMethod) -> Self {
        IsoDecision {
            isomorphic: false,
            witness: None,
            method,
            proven: method != IsoMethod::SearchExhausted,
        }
    }

    fn yes(witness: Mat, method: IsoMethod) -> Self {
        IsoDecision {
            isomorphic: true,
            witness: Some(witness),
            method,
            proven: true,
        }
    }
}

const EXHAUSTIVE_LIMIT: f64 = 1e6;

fn random_combination<R: Rng>(space: &MatSpace, rng: &mut R) -> Mat {
    let k = space.space.ctx();
    let coeffs: Vec<FieldElem> = (0..space.dim()).map(|_| k.random(rng)).collect();
    space.combine(&coeffs)
}

/// Decides `m ≅ n`.
///
/// Equal matrices give the identity. Cheap invariants are compared next. Then `trials` seeded random
/// elements of `Hom(m, n)` are tested for invertibility. If `End(m)` is
/// local, `m ≅ n` exactly when some product `g∘f` of basis maps leaves the
/// radical, which settles both answers. Otherwise small Hom spaces are
/// scanned exhaustively and larger ones are searched again over the
/// quadratic extension. A YES is always re-verified before returning.
pub fn is_isomorphic(m: &HModule, n: &HModule, seed: u64, trials: usize) -> Result<IsoDecision> {
    if m.ctx() != n.ctx() {
        return Err(KmodError::ContextMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(IsoDecision::no(IsoMethod::Dimension));
    }
    if m.sigma() == n.sigma() && m.tau() == n.tau() {
        return Ok(IsoDecision::yes(Mat::identity(m.ctx(), m.dim()), IsoMethod::Identical));
    }
    let (pm, end) = profile_and_end(m);
    let pn = profile(n);
    if pm != pn {
        return Ok(IsoDecision::no(IsoMethod::Profile));
    }
    let decision = decide(m, n, &end, seed, trials)?;
    if decision.isomorphic {
        let witnessed = match &decision.witness {
            Some(w) => {
                w.is_invertible()
                    && w.mul(m.sigma())? == n.sigma().mul(w)?
                    && w.mul(m.tau())? == n.tau().mul(w)?
            }
            None => true,
        };
        assert!(
            witnessed && pm == pn,
            "isomorphism verdict failed re-verification"
        );
    }
    Ok(decision)
}

fn decide(
    m: &HModule,
    n: &HModule,
    end: &MatSpace,
    seed: u64,
    trials: usize,
) -> Result<IsoDecision> {
    if m.dim() == 0 {
        return Ok(IsoDecision::yes(Mat::zeros(m.ctx(), 0, 0), IsoMethod::Dimension));
    }
    let fwd = hom_space(m, n)?;
    let back = hom_space(n, m)?;
    if fwd.dim() != end.dim() || back.dim() != end.dim() {
        return Ok(IsoDecision::no(IsoMethod::HomDimensions));
    }

    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        let x = random_combination(&fwd, &mut rng);
        if x.is_invertible() {
            return Ok(IsoDecision::yes(x, IsoMethod::RandomSearch));
        }
    }

    let (rad, _) = radical(end);
    if end.dim() - rad.dim() == 1 {
        let fs = fwd.matrices();
        for f in &fs {
            for g in back.matrices() {
                if !rad.contains(&g.mul(f)?) {
                    return Ok(IsoDecision::yes(f.clone(), IsoMethod::LocalEndomorphisms));
                }
            }
        }
        return Ok(IsoDecision::no(IsoMethod::LocalEndomorphisms));
    }

    let k = m.ctx();
    let q = k.order() as f64;
    if q.powi(fwd.dim() as i32) <= EXHAUSTIVE_LIMIT {
        let elems: Vec<FieldElem> = k.elements().collect();
        let total = (k.order() as u64).pow(fwd.dim() as u32);
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<FieldElem> = (0..fwd.dim())
                .map(|_| {
                    let x = elems[(c % elems.len() as u64) as usize];
                    c /= elems.len() as u64;
                    x
                })
                .collect();
            let x = fwd.combine(&coeffs);
            if x.is_invertible() {
                return Ok(IsoDecision::yes(x, IsoMethod::ExhaustiveScan));
            }
        }
        return Ok(IsoDecision::no(IsoMethod::ExhaustiveScan));
    }

    // Isomorphism over an extension implies isomorphism over k. The witness
    // found there need not be defined over k, so it is not returned.
    let (big, emb) = k.quadratic_extension()?;
    let bm = m.extend_scalars(&big, &emb);
    let bn = n.extend_scalars(&big, &emb);
    let bfwd = hom_space(&bm, &bn)?;
    for _ in 0..trials {
        if random_combination(&bfwd, &mut rng).is_invertible() {
            return Ok(IsoDecision {
                isomorphic: true,
                witness: None,
                method: IsoMethod::QuadraticExtension,
                proven: true,
            });
        }
    }
    Ok(IsoDecision::no(IsoMethod::SearchExhausted))
}
