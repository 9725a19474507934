use super::{HModule, KmodError, Result};
use crate::ff::{FieldCtx, FieldElem};
use crate::jordan::{Dominance, JordanType};

/// One scanned point `[a:b]` and the Jordan type found there.
pub type JordanScan = Vec<((FieldElem, FieldElem), JordanType)>;

/// `[1:b]` for every `b ∈ k`, then `[0:1]`.
pub fn projective_points(ctx: &FieldCtx) -> Vec<(FieldElem, FieldElem)> {
    let mut pts: Vec<_> = ctx.elements().map(|b| (ctx.one(), b)).collect();
    pts.push((ctx.zero(), ctx.one()));
    pts
}

impl HModule {
    /// Jordan type of the nilpotent operator `aσ0 + bτ0`.
    pub fn jordan_type_at(&self, a: FieldElem, b: FieldElem) -> Result<JordanType> {
        if a.is_zero() && b.is_zero() {
            return Err(KmodError::ZeroPoint);
        }
        Ok(self.pencil(a, b).nilpotent_partition()?)
    }

    pub fn jordan_scan(&self) -> JordanScan {
        projective_points(self.ctx())
            .into_iter()
            .map(|(a, b)| {
                let t = self.jordan_type_at(a, b).expect("nonzero point");
                ((a, b), t)
            })
            .collect()
    }

    /// Dominance maximum of the scan over the projective line of the base
    /// field ("generic over scan field").
    pub fn generic_jordan_type(&self) -> Result<JordanType> {
        let scan = self.jordan_scan();
        JordanType::dominance_max(scan.iter().map(|(_, t)| t)).ok_or(KmodError::NoDominanceMaximum)
    }

    pub fn constant_type_over_scan(&self) -> bool {
        let scan = self.jordan_scan();
        scan.windows(2)
            .all(|w| w[0].1.dominance(&w[1].1) == Dominance::Equal)
    }
}
