//! Modules over `k[H]` for `H = Z/p × Z/p`, given by the matrices of the two
//! generators `σ`, `τ` acting on column vectors.

mod cores;
mod families;
mod filtration;
mod hom;
mod indec;
mod jtypes;
pub mod radical;

pub use cores::{case_ii_core, case_ii_dr_core, CaseIiCore};
pub use families::{parse_label, v_d, v_dr, Label};
pub use filtration::ddeg_in;
pub use hom::{hom_space, is_isomorphic, profile, IsoDecision, IsoMethod, Profile};
pub use indec::{indecomposable_by_radical, is_indecomposable, IndecCertificate, IndecDecision};
pub use jtypes::{projective_points, JordanScan};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ff::{CtxSpec, Embedding, FfError, FieldCtx, FieldElem};
use crate::linalg::{LinalgError, Mat, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KmodError {
    #[error("generator {0} does not have order dividing p")]
    OrderViolation(&'static str),
    #[error("generators do not commute")]
    NotCommuting,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension {d} outside {min}..={max}")]
    BadDimension { d: usize, min: usize, max: usize },
    #[error("parameter lies in the prime field")]
    PrimeFieldElement,
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("module carries no usable basis labels")]
    UnlabeledModule,
    #[error("(0, 0) is not a point of the projective line")]
    ZeroPoint,
    #[error("vector is zero")]
    ZeroVector,
    #[error("modules live over different fields")]
    ContextMismatch,
    #[error("Jordan types over the scan have no dominance maximum")]
    NoDominanceMaximum,
    #[error("malformed module JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FfError),
}

pub type Result<T> = std::result::Result<T, KmodError>;

/// Base-`p` digits of `n`, least significant first. `digits_p(0, p)` is empty.
pub fn digits_p(mut n: u64, p: u32) -> Vec<u32> {
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

pub fn s_p(n: u64, p: u32) -> u32 {
    digits_p(n, p).iter().sum()
}

/// The `j`-th base-`p` digit of `n`.
pub fn digit(n: u64, j: u32, p: u32) -> u32 {
    ((n / (p as u64).pow(j)) % p as u64) as u32
}

/// `C(n, i) mod p` by Lucas: the product of digitwise binomials.
pub fn binom_mod_p(mut n: u64, mut i: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while i > 0 || n > 0 {
        let (a, b) = (n % p64, i % p64);
        if b > a {
            return 0;
        }
        acc = acc * small_binom(a, b) % p64;
        n /= p64;
        i /= p64;
    }
    acc as u32
}

fn small_binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, PartialEq, Eq)]
pub struct HModule {
    ctx: FieldCtx,
    dim: usize,
    sigma: Mat,
    tau: Mat,
    sigma0: Mat,
    tau0: Mat,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for HModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HModule")
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .field("sigma", &self.sigma)
            .field("tau", &self.tau)
            .finish()
    }
}

impl HModule {
    /// Validates `σ^p = τ^p = 1` and `στ = τσ`.
    pub fn new(ctx: &FieldCtx, sigma: Mat, tau: Mat, labels: Option<Vec<String>>) -> Result<Self> {
        let dim = sigma.rows();
        if !sigma.is_square() || !tau.is_square() || tau.rows() != dim {
            return Err(KmodError::ShapeMismatch(format!(
                "generators are {}x{} and {}x{}",
                sigma.rows(),
                sigma.cols(),
                tau.rows(),
                tau.cols()
            )));
        }
        if sigma.ctx() != ctx || tau.ctx() != ctx {
            return Err(KmodError::ContextMismatch);
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(KmodError::ShapeMismatch(format!(
                    "{} labels for dimension {dim}",
                    l.len()
                )));
            }
        }
        let id = Mat::identity(ctx, dim);
        let p = ctx.p() as u64;
        if sigma.matpow(p)? != id {
            return Err(KmodError::OrderViolation("sigma"));
        }
        if tau.matpow(p)? != id {
            return Err(KmodError::OrderViolation("tau"));
        }
        if sigma.mul(&tau)? != tau.mul(&sigma)? {
            return Err(KmodError::NotCommuting);
        }
        let sigma0 = sigma.sub(&id)?;
        let tau0 = tau.sub(&id)?;
        Ok(HModule {
            ctx: ctx.clone(),
            dim,
            sigma,
            tau,
            sigma0,
            tau0,
            labels,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sigma(&self) -> &Mat {
        &self.sigma
    }

    pub fn tau(&self) -> &Mat {
        &self.tau
    }

    pub fn sigma0(&self) -> &Mat {
        &self.sigma0
    }

    pub fn tau0(&self) -> &Mat {
        &self.tau0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<Self> {
        if labels.as_ref().is_some_and(|l| l.len() != self.dim) {
            return Err(KmodError::ShapeMismatch("label count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == name)
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![self.ctx.zero(); self.dim];
        v[i] = self.ctx.one();
        v
    }

    /// The basis vector carrying `name`.
    pub fn labeled(&self, name: &str) -> Result<Vector> {
        let i = self.label_index(name).ok_or(KmodError::UnlabeledModule)?;
        Ok(self.unit(i))
    }

    /// Evaluates `Σ c · σ0^a τ0^b` on `v`.
    pub fn apply_word(&self, word: &[(FieldElem, u32, u32)], v: &[FieldElem]) -> Result<Vector> {
        if v.len() != self.dim {
            return Err(KmodError::ShapeMismatch("vector length".into()));
        }
        let k = &self.ctx;
        let mut acc = vec![k.zero(); self.dim];
        for &(c, a, b) in word {
            let mut w = v.to_vec();
            for _ in 0..b {
                w = self.tau0.mul_vec(&w)?;
            }
            for _ in 0..a {
                w = self.sigma0.mul_vec(&w)?;
            }
            for (x, y) in acc.iter_mut().zip(&w) {
                *x = k.add(*x, k.mul(c, *y));
            }
        }
        Ok(acc)
    }

    /// `a·σ0 + b·τ0`.
    pub fn pencil(&self, a: FieldElem, b: FieldElem) -> Mat {
        self.sigma0
            .scale(a)
            .add(&self.tau0.scale(b))
            .expect("same shape")
    }

    pub fn is_invariant(&self, w: &Subspace) -> bool {
        w.ambient() == self.dim
            && w.basis_vectors().iter().all(|b| {
                w.contains(&self.sigma0.mul_vec(b).expect("shape"))
                    && w.contains(&self.tau0.mul_vec(b).expect("shape"))
            })
    }

    /// Induced module on an invariant subspace, with the embedding whose
    /// columns are the echelon basis of `w`.
    pub fn restrict(&self, w: &Subspace) -> Result<(HModule, Mat)> {
        if w.ambient() != self.dim {
            return Err(KmodError::ShapeMismatch("subspace ambient".into()));
        }
        if !self.is_invariant(w) {
            return Err(KmodError::NotInvariant);
        }
        let basis = w.basis_vectors();
        let induced = |a: &Mat| -> Result<Mat> {
            let cols: Vec<Vector> = basis
                .iter()
                .map(|b| w.coords(&a.mul_vec(b).expect("shape")).expect("invariant"))
                .collect();
            Ok(Mat::from_columns(&self.ctx, basis.len(), &cols)?)
        };
        let sigma = induced(&self.sigma)?;
        let tau = induced(&self.tau)?;
        // keep labels when the subspace is a coordinate subspace
        let labels = self.labels.as_ref().and_then(|l| {
            let unit = basis
                .iter()
                .all(|b| b.iter().filter(|x| !x.is_zero()).count() == 1);
            unit.then(|| w.pivots().iter().map(|&i| l[i].clone()).collect())
        });
        let m = HModule::new(&self.ctx, sigma, tau, labels)?;
        let emb = Mat::from_columns(&self.ctx, self.dim, &basis)?;
        Ok((m, emb))
    }

    /// Smallest invariant subspace containing `vectors`.
    pub fn generated_subspace(&self, vectors: &[Vector]) -> Result<Subspace> {
        if vectors.iter().any(|v| v.len() != self.dim) {
            return Err(KmodError::ShapeMismatch("vector length".into()));
        }
        let mut space = Subspace::span(&self.ctx, self.dim, vectors);
        loop {
            let mut gens = space.basis_vectors();
            for b in space.basis_vectors() {
                gens.push(self.sigma0.mul_vec(&b)?);
                gens.push(self.tau0.mul_vec(&b)?);
            }
            let next = Subspace::span(&self.ctx, self.dim, &gens);
            if next.dim() == space.dim() {
                return Ok(space);
            }
            space = next;
        }
    }

    pub fn sub_generated(&self, vectors: &[Vector]) -> Result<(HModule, Mat)> {
        let w = self.generated_subspace(vectors)?;
        self.restrict(&w)
    }

    /// Quotient by an invariant subspace using the standard basis vectors
    /// off the pivots of `w` as representatives. Returns the projection.
    pub fn quotient(&self, w: &Subspace) -> Result<(HModule, Mat)> {
        if w.ambient() != self.dim {
            return Err(KmodError::ShapeMismatch("subspace ambient".into()));
        }
        let free: Vec<usize> = (0..self.dim).filter(|i| !w.pivots().contains(i)).collect();
        let reps: Vec<Vector> = free.iter().map(|&i| self.unit(i)).collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| free.iter().map(|&i| l[i].clone()).collect());
        self.quotient_with_reps(w, &reps, labels)
    }

    /// Quotient by an invariant subspace in the basis given by the images of
    /// `reps`, which must complement `w`.
    pub fn quotient_with_reps(
        &self,
        w: &Subspace,
        reps: &[Vector],
        labels: Option<Vec<String>>,
    ) -> Result<(HModule, Mat)> {
        if !self.is_invariant(w) {
            return Err(KmodError::NotInvariant);
        }
        let r = reps.len();
        if r + w.dim() != self.dim {
            return Err(KmodError::ShapeMismatch(format!(
                "{r} representatives do not complement a {}-dimensional subspace of dimension {}",
                w.dim(),
                self.dim
            )));
        }
        let mut cols = reps.to_vec();
        cols.extend(w.basis_vectors());
        let frame = Mat::from_columns(&self.ctx, self.dim, &cols)?;
        let inv = frame.inverse().ok_or_else(|| {
            KmodError::ShapeMismatch("representatives are not independent modulo the subspace".into())
        })?;
        let proj = inv.select_rows(&(0..r).collect::<Vec<_>>());
        let rep_mat = Mat::from_columns(&self.ctx, self.dim, reps)?;
        let sigma = proj.mul(&self.sigma)?.mul(&rep_mat)?;
        let tau = proj.mul(&self.tau)?.mul(&rep_mat)?;
        Ok((HModule::new(&self.ctx, sigma, tau, labels)?, proj))
    }

    /// Contragredient module: each generator acts by its inverse transpose.
    pub fn dual(&self) -> HModule {
        let dual = |a: &Mat| a.inverse().expect("group elements are invertible").transpose();
        let labels = self
            .labels
            .as_ref()
            .map(|l| l.iter().map(|s| format!("{s}^")).collect());
        HModule::new(&self.ctx, dual(&self.sigma), dual(&self.tau), labels)
            .expect("dual of a module is a module")
    }

    pub fn direct_sum(&self, other: &HModule) -> Result<HModule> {
        if self.ctx != other.ctx {
            return Err(KmodError::ContextMismatch);
        }
        HModule::new(
            &self.ctx,
            self.sigma.block_diag(&other.sigma)?,
            self.tau.block_diag(&other.tau)?,
            None,
        )
    }

    /// The same matrices read over a larger field.
    pub fn extend_scalars(&self, big: &FieldCtx, emb: &Embedding) -> HModule {
        let lift = |a: &Mat| Mat::from_fn(big, a.rows(), a.cols(), |r, c| emb.apply(a.get(r, c)));
        HModule::new(big, lift(&self.sigma), lift(&self.tau), self.labels.clone())
            .expect("field embeddings preserve relations")
    }

    pub fn to_json(&self) -> Value {
        let spec = self.ctx.spec();
        json!({
            "p": spec.p,
            "n": spec.n,
            "modulus": spec.modulus,
            "dim": self.dim,
            "sigma": self.sigma.to_json_grid(),
            "tau": self.tau.to_json_grid(),
            "labels": self.labels,
        })
    }

    pub fn from_json(v: &Value) -> Result<HModule> {
        let spec: CtxSpec = serde_json::from_value(json!({
            "p": v["p"],
            "n": v["n"],
            "modulus": v["modulus"],
        }))
        .map_err(|e| KmodError::Json(e.to_string()))?;
        let ctx = FieldCtx::from_spec(&spec)?;
        let dim = v["dim"]
            .as_u64()
            .ok_or_else(|| KmodError::Json("dim".into()))? as usize;
        let sigma = Mat::from_json_grid(&ctx, &v["sigma"], dim)?;
        let tau = Mat::from_json_grid(&ctx, &v["tau"], dim)?;
        let labels = match &v["labels"] {
            Value::Null => None,
            l => Some(
                serde_json::from_value::<Vec<String>>(l.clone())
                    .map_err(|e| KmodError::Json(e.to_string()))?,
            ),
        };
        HModule::new(&ctx, sigma, tau, labels)
    }
}

/// `k[H]` acting on itself; basis `σ^a τ^b` at index `a·p + b`.
pub fn regular_module(ctx: &FieldCtx) -> HModule {
    let p = ctx.p() as usize;
    let n = p * p;
    let sigma = Mat::from_fn(ctx, n, n, |r, c| {
        let (a, b) = (c / p, c % p);
        if r == ((a + 1) % p) * p + b {
            ctx.one()
        } else {
            ctx.zero()
        }
    });
    let tau = Mat::from_fn(ctx, n, n, |r, c| {
        let (a, b) = (c / p, c % p);
        if r == a * p + (b + 1) % p {
            ctx.one()
        } else {
            ctx.zero()
        }
    });
    let labels = (0..n).map(|i| format!("s{}t{}", i / p, i % p)).collect();
    HModule::new(ctx, sigma, tau, Some(labels)).expect("regular representation")
}

pub fn trivial_module(ctx: &FieldCtx) -> HModule {
    let id = Mat::identity(ctx, 1);
    HModule::new(ctx, id.clone(), id, None).expect("trivial representation")
}

/// `{Σ a_h h : Σ a_h = 0}` inside the regular module.
pub fn augmentation_ideal(ctx: &FieldCtx) -> HModule {
    let reg = regular_module(ctx);
    let ones = Mat::from_fn(ctx, 1, reg.dim(), |_, _| ctx.one());
    reg.restrict(&ones.kernel()).expect("augmentation ideal is invariant").0
}
