use super::{HModule, KmodError, Result};
use crate::ff::FieldElem;
use crate::linalg::{Mat, Subspace, Vector};

#[derive(Debug, Clone)]
pub struct CaseIiCore {
    /// `σ0^(p-2) τ0^(p-2) u`.
    pub generator: Vector,
    pub core: HModule,
    /// Columns: a basis of the core inside the ambient module.
    pub embedding: Mat,
    pub fixed: Subspace,
}

fn core_generator(m: &HModule, u: &[FieldElem]) -> Result<Vector> {
    if u.iter().all(|x| x.is_zero()) {
        return Err(KmodError::ZeroVector);
    }
    let e = m.ctx().p() - 2;
    m.apply_word(&[(m.ctx().one(), e, e)], u)
}

/// The submodule generated by `σ0^(p-2) τ0^(p-2) u`, together with the
/// fixed space of `m`.
pub fn case_ii_core(m: &HModule, u: &[FieldElem]) -> Result<CaseIiCore> {
    let generator = core_generator(m, u)?;
    let (core, embedding) = m.sub_generated(std::slice::from_ref(&generator))?;
    Ok(CaseIiCore {
        generator,
        core,
        embedding,
        fixed: m.fixed_space(),
    })
}

/// The submodule generated by `σ0^(p-2) τ0^(p-2) u` and the fixed space.
pub fn case_ii_dr_core(m: &HModule, u: &[FieldElem]) -> Result<(HModule, Mat)> {
    let generator = core_generator(m, u)?;
    let mut gens = vec![generator];
    gens.extend(m.fixed_space().basis_vectors());
    m.sub_generated(&gens)
}
