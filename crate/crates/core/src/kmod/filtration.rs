use super::{parse_label, s_p, HModule, KmodError, Label, Result};
use crate::ff::FieldElem;
use crate::linalg::{Mat, Subspace};

impl HModule {
    /// `ker σ0 ∩ ker τ0`.
    pub fn fixed_space(&self) -> Subspace {
        self.sigma0()
            .vstack(self.tau0())
            .expect("same shape")
            .kernel()
    }

    /// `S_0 ⊂ S_1 ⊂ …` up to and including the first term equal to the
    /// whole module, via `S_{n+1} = σ0⁻¹(S_n) ∩ τ0⁻¹(S_n)`.
    pub fn s_filtration(&self) -> Vec<Subspace> {
        let mut out = vec![self.fixed_space()];
        while out.last().expect("nonempty").dim() < self.dim() {
            let prev = out.last().expect("nonempty");
            let ann = prev.annihilator();
            let cond = ann
                .mul(self.sigma0())
                .and_then(|a| a.vstack(&ann.mul(self.tau0())?))
                .expect("same shape");
            let next = cond.kernel();
            assert!(next.dim() > prev.dim(), "filtration of a p-group module stalls");
            out.push(next);
        }
        out
    }

    /// `S_n` straight from its definition: the common kernel of all
    /// `σ0^i τ0^j` with `i + j = n + 1`.
    pub fn s_filtration_direct(&self, n: usize) -> Subspace {
        let k = self.ctx();
        let mut stacked = Mat::zeros(k, 0, self.dim());
        for i in 0..=n + 1 {
            let j = n + 1 - i;
            let word = self
                .sigma0()
                .matpow(i as u64)
                .and_then(|a| a.mul(&self.tau0().matpow(j as u64)?))
                .expect("square");
            stacked = stacked.vstack(&word).expect("same width");
        }
        stacked.kernel()
    }

    /// Least `n` with `v ∈ S_n`; `-1` for the zero vector.
    pub fn ddeg(&self, v: &[FieldElem]) -> i64 {
        ddeg_in(&self.s_filtration(), v)
    }

    /// The combinatorial degree read off the `ω`/`η` labels of a `v_dr`
    /// module: `s_p(i)` for `ω_i`, `s_p(i) - 1` for `η_i` with `p ∤ i`, and
    /// `s_p(i) - 1 - d¹` for `η_i` with `p | i`, maximized over the support.
    pub fn ddeg_prime(&self, v: &[FieldElem]) -> Result<i64> {
        let labels = self.labels().ok_or(KmodError::UnlabeledModule)?;
        let parsed: Vec<Label> = labels
            .iter()
            .map(|l| parse_label(l).ok_or(KmodError::UnlabeledModule))
            .collect::<Result<_>>()?;
        if v.len() != parsed.len() {
            return Err(KmodError::ShapeMismatch("vector length".into()));
        }
        let p = self.ctx().p();
        // the first η index divisible by p is p·(d¹ + 1)
        let d1 = parsed
            .iter()
            .filter_map(|l| match l {
                Label::Eta(i) if (*i as u32).is_multiple_of(p) => Some(*i as u32 / p - 1),
                _ => None,
            })
            .min()
            .unwrap_or(p - 1) as i64;
        let value = |l: &Label| -> i64 {
            match *l {
                Label::Omega(i) => s_p(i as u64, p) as i64,
                Label::Eta(i) if !(i as u32).is_multiple_of(p) => s_p(i as u64, p) as i64 - 1,
                Label::Eta(i) => s_p(i as u64, p) as i64 - 1 - d1,
            }
        };
        Ok(parsed
            .iter()
            .zip(v)
            .filter(|(_, x)| !x.is_zero())
            .map(|(l, _)| value(l))
            .max()
            .unwrap_or(-1))
    }
}

/// `ddeg` against a precomputed filtration.
pub fn ddeg_in(filtration: &[Subspace], v: &[FieldElem]) -> i64 {
    if v.iter().all(|x| x.is_zero()) {
        return -1;
    }
    filtration
        .iter()
        .position(|s| s.contains(v))
        .expect("the last term is the whole module") as i64
}
