use super::radical::{radical, RadicalMethod};
use super::{hom_space, seeded_rng, HModule, KmodError, Result};
use crate::ff::FieldElem;
use crate::linalg::{Mat, MatSpace, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndecCertificate {
    /// The fixed space is one-dimensional, and every nonzero summand would
    /// contribute a fixed vector.
    FixedLine,
    /// `M = ker θ^n ⊕ im θ^n` for an endomorphism `θ`, both parts nonzero.
    FittingSplit { kernel: Subspace, image: Subspace },
    /// Computed from the radical `J` of `End(M)`.
    Radical {
        end_dim: usize,
        radical_dim: usize,
        /// Number of simple factors of the commutative quotient `End/J`,
        /// when it is commutative.
        simple_factors: Option<usize>,
        method: RadicalMethod,
    },
}

impl IndecCertificate {
    /// Short tier name: `T1`, `T2` or `T3`.
    pub fn tier(&self) -> &'static str {
        match self {
            IndecCertificate::FixedLine => "T1",
            IndecCertificate::FittingSplit { .. } => "T2",
            IndecCertificate::Radical { .. } => "T3",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndecDecision {
    pub indecomposable: bool,
    pub certificate: IndecCertificate,
}

/// Fitting decomposition of `θ`; `Some` when both parts are proper.
fn fitting_split(theta: &Mat) -> Option<(Subspace, Subspace)> {
    let n = theta.rows();
    let power = theta.matpow(n as u64).expect("square");
    let ker = power.kernel();
    if ker.dim() == 0 || ker.dim() == n {
        return None;
    }
    Some((ker, power.image()))
}

/// Three tiers: a one-dimensional fixed space, then a Fitting search over
/// basis and seeded random endomorphisms (shifted by each of their
/// eigenvalues in `k`), then the structure of `End(M)/J`.
pub fn is_indecomposable(m: &HModule, seed: u64, trials: usize) -> Result<IndecDecision> {
    if m.dim() == 0 {
        return Err(KmodError::BadDimension {
            d: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    if m.fixed_space().dim() == 1 {
        return Ok(IndecDecision {
            indecomposable: true,
            certificate: IndecCertificate::FixedLine,
        });
    }
    let k = m.ctx();
    let end = hom_space(m, m)?;
    let mut candidates = end.matrices();
    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        let coeffs: Vec<FieldElem> = (0..end.dim()).map(|_| k.random(&mut rng)).collect();
        candidates.push(end.combine(&coeffs));
    }
    let id = Mat::identity(k, m.dim());
    for theta in &candidates {
        for lambda in k.elements() {
            let shifted = theta.sub(&id.scale(lambda))?;
            if shifted.is_invertible() {
                continue;
            }
            if let Some((kernel, image)) = fitting_split(&shifted) {
                return Ok(IndecDecision {
                    indecomposable: false,
                    certificate: IndecCertificate::FittingSplit { kernel, image },
                });
            }
        }
    }

    Ok(radical_decision(&end))
}

/// The third tier on its own: `M` is indecomposable iff `End(M)/J` is a
/// field.
pub fn indecomposable_by_radical(m: &HModule) -> Result<IndecDecision> {
    if m.dim() == 0 {
        return Err(KmodError::BadDimension {
            d: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    Ok(radical_decision(&hom_space(m, m)?))
}

fn radical_decision(end: &MatSpace) -> IndecDecision {
    let (rad, method) = radical(end);
    let (indecomposable, simple_factors) = quotient_is_field(end, &rad);
    IndecDecision {
        indecomposable,
        certificate: IndecCertificate::Radical {
            end_dim: end.dim(),
            radical_dim: rad.dim(),
            simple_factors,
            method,
        },
    }
}

/// Whether `A/J` is a field. Finite division rings are commutative, and a
/// commutative semisimple algebra over `F_q` is a product of fields whose
/// number is the dimension of the fixed space of `x ↦ x^q`.
fn quotient_is_field(alg: &MatSpace, rad: &MatSpace) -> (bool, Option<usize>) {
    let s = alg.dim() - rad.dim();
    if s == 1 {
        return (true, Some(1));
    }
    let k = alg.space.ctx();
    // radical in algebra coordinates
    let rad_coords: Vec<Vec<FieldElem>> = rad
        .space
        .basis_vectors()
        .iter()
        .map(|v| alg.space.coords(v).expect("radical lies in the algebra"))
        .collect();
    let rad_in = Subspace::span(k, alg.dim(), &rad_coords);
    let free: Vec<usize> = (0..alg.dim()).filter(|i| !rad_in.pivots().contains(i)).collect();
    let reps: Vec<Mat> = free
        .iter()
        .map(|&i| {
            let mut c = vec![k.zero(); alg.dim()];
            c[i] = k.one();
            alg.combine(&c)
        })
        .collect();
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            let comm = a.mul(b).expect("square").sub(&b.mul(a).expect("square")).expect("shape");
            if !rad.contains(&comm) {
                return (false, None);
            }
        }
    }
    let quotient_coords = |m: &Mat| -> Vec<FieldElem> {
        let c = alg.space.coords(m.data()).expect("closed under products");
        let r = rad_in.reduce(&c);
        free.iter().map(|&i| r[i]).collect()
    };
    let q = k.order() as u64;
    let cols: Vec<Vec<FieldElem>> = reps
        .iter()
        .map(|a| quotient_coords(&a.matpow(q).expect("square")))
        .collect();
    let frob = Mat::from_columns(k, s, &cols).expect("shape");
    let fixed = frob.sub(&Mat::identity(k, s)).expect("shape").kernel().dim();
    (fixed == 1, Some(fixed))
}
