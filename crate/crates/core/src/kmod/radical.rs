//! Jacobson radical of a matrix algebra over a finite field.
//!
//! The general method lifts to integers and intersects the kernels of the
//! p-power trace functionals `g_i(x) = (Tr(x̂^(p^i)) mod p^(i+1)) / p^i`,
//! after restricting scalars to the prime field. A cheaper first pass tries
//! the ordinary trace-form kernel and accepts it when it is nilpotent.

use crate::ff::{FieldCtx, FieldElem};
use crate::linalg::{Mat, MatSpace, Subspace, Vector};

/// How the radical was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalMethod {
    /// The kernel of the trace form was already a nilpotent ideal.
    TraceForm,
    /// Full iterated p-power trace chain over the prime field.
    PowerTraceChain,
}

/// Subspace of `alg` spanned by the given matrices.
fn subspace_of(alg: &MatSpace, mats: &[Mat]) -> MatSpace {
    let vecs: Vec<Vector> = mats.iter().map(|m| m.data().to_vec()).collect();
    MatSpace {
        rows: alg.rows,
        cols: alg.cols,
        space: Subspace::span(alg.space.ctx(), alg.rows * alg.cols, &vecs),
    }
}

fn trace_of_product(a: &Mat, b: &Mat) -> FieldElem {
    let k = a.ctx();
    let n = a.rows();
    let mut t = k.zero();
    for i in 0..n {
        for j in 0..n {
            t = k.add(t, k.mul(a.get(i, j), b.get(j, i)));
        }
    }
    t
}

/// `{a ∈ A : Tr(ab) = 0 for all b ∈ A}`; always an ideal containing the
/// radical.
pub fn trace_form_kernel(alg: &MatSpace) -> MatSpace {
    let k = alg.space.ctx();
    let basis = alg.matrices();
    let e = basis.len();
    let gram = Mat::from_fn(k, e, e, |s, r| trace_of_product(&basis[r], &basis[s]));
    let combos = gram.kernel().basis_vectors();
    let mats: Vec<Mat> = combos.iter().map(|c| alg.combine(c)).collect();
    subspace_of(alg, &mats)
}

/// Whether some power of the span of `ideal` (closed under products) is 0.
pub fn is_nilpotent(ideal: &MatSpace) -> bool {
    let gens = ideal.matrices();
    let mut power = gens.clone();
    let mut dim = ideal.dim();
    while dim > 0 {
        let prods: Vec<Mat> = power
            .iter()
            .flat_map(|x| gens.iter().map(move |y| x.mul(y).expect("square")))
            .collect();
        let next = subspace_of(ideal, &prods);
        if next.dim() >= dim {
            return false;
        }
        dim = next.dim();
        power = next.matrices();
    }
    true
}

/// Radical of a matrix algebra; `alg` must be closed under products.
pub fn radical(alg: &MatSpace) -> (MatSpace, RadicalMethod) {
    let first = trace_form_kernel(alg);
    if is_nilpotent(&first) {
        return (first, RadicalMethod::TraceForm);
    }
    (radical_power_trace(alg), RadicalMethod::PowerTraceChain)
}

type IntMat = Vec<u64>;

fn int_mul(a: &[u64], b: &[u64], n: usize, m: u64) -> IntMat {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for l in 0..n {
            let x = a[i * n + l];
            if x == 0 {
                continue;
            }
            let row = &b[l * n..(l + 1) * n];
            let o = &mut out[i * n..(i + 1) * n];
            for (oj, &bj) in o.iter_mut().zip(row) {
                *oj += x * bj;
            }
        }
        for v in &mut out[i * n..(i + 1) * n] {
            *v %= m;
        }
    }
    out
}

fn int_pow(a: &[u64], n: usize, mut e: u64, m: u64) -> IntMat {
    let mut acc: IntMat = (0..n * n).map(|i| u64::from(i % (n + 1) == 0)).collect();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mul(&acc, &base, n, m);
        }
        e >>= 1;
        if e > 0 {
            base = int_mul(&base, &base, n, m);
        }
    }
    acc
}

/// `(Tr(x̂^(p^i)) mod p^(i+1)) / p^i` for `x` with entries in `[0, p)`.
fn g(x: &[u64], n: usize, p: u64, i: u32) -> u64 {
    let m = p.pow(i + 1);
    let y = int_pow(x, n, p.pow(i), m);
    let tr = (0..n).map(|j| y[j * n + j]).sum::<u64>() % m;
    tr / p.pow(i)
}

/// Each entry `x` becomes the `e×e` matrix of multiplication by `x` on
/// `F_q = F_p^e` in the power basis.
fn restrict_scalars(m: &Mat) -> IntMat {
    let k = m.ctx();
    let e = k.n();
    let d = m.rows();
    let big = d * e;
    let mut out = vec![0u64; big * big];
    let powers: Vec<FieldElem> = (0..e).map(|j| k.pow(k.generator(), j as u64)).collect();
    for r in 0..d {
        for c in 0..d {
            let x = m.get(r, c);
            if x.is_zero() {
                continue;
            }
            for (j, &tj) in powers.iter().enumerate() {
                for (i, coeff) in k.coeffs(k.mul(x, tj)).into_iter().enumerate() {
                    out[(r * e + i) * big + c * e + j] = coeff as u64;
                }
            }
        }
    }
    out
}

fn unrestrict(k: &FieldCtx, x: &[u64], d: usize) -> Mat {
    let e = k.n();
    let big = d * e;
    Mat::from_fn(k, d, d, |r, c| {
        let coeffs: Vec<u32> = (0..e).map(|i| x[(r * e + i) * big + c * e] as u32).collect();
        k.from_coeffs(&coeffs).expect("residues below p")
    })
}

/// The radical by the full p-power trace chain, with no shortcut.
pub fn radical_power_trace(alg: &MatSpace) -> MatSpace {
    let k = alg.space.ctx();
    let p = k.p() as u64;
    let fp = FieldCtx::prime_field(k.p()).expect("p is prime");
    let d = alg.rows;
    let e = k.n();
    let big = d * e;

    let t = k.generator();
    let a_basis: Vec<IntMat> = alg
        .matrices()
        .iter()
        .flat_map(|a| (0..e).map(move |j| restrict_scalars(&a.scale(k.pow(t, j as u64)))))
        .collect();
    let mut ideal = a_basis.clone();
    let mut l = 0u32;
    while (p.pow(l + 1) as usize) <= big {
        l += 1;
    }
    for i in 0..=l {
        if ideal.is_empty() {
            break;
        }
        let values = Mat::from_fn(&fp, a_basis.len(), ideal.len(), |s, r| {
            let prod = int_mul(&ideal[r], &a_basis[s], big, p);
            fp.from_int(g(&prod, big, p, i) as i64)
        });
        let combos = values.kernel().basis_vectors();
        ideal = combos
            .iter()
            .map(|c| {
                let mut acc = vec![0u64; big * big];
                for (coef, m) in c.iter().zip(&ideal) {
                    let cf = coef.index() as u64;
                    if cf == 0 {
                        continue;
                    }
                    for (x, &y) in acc.iter_mut().zip(m) {
                        *x = (*x + cf * y) % p;
                    }
                }
                acc
            })
            .collect();
    }
    let mats: Vec<Mat> = ideal.iter().map(|x| unrestrict(k, x, d)).collect();
    subspace_of(alg, &mats)
}
