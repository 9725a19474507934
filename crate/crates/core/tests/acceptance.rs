//! Acceptance criteria 1 to 12. Each criterion prints one line with its
//! verdict, its elapsed time and its limit. The process exits non-zero if
//! any criterion fails or overruns, except for statements shown false on
//! part of their range, which are printed as FAIL with the counterexamples.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use repcurve_core::curvefam::{
    dd, dr_graded, dr_identification, genus, hodge_check, holo_graded, ramification_profile,
    rr_basis, semigroup_gap_count, trace_identity_for, CurveParams,
};
use repcurve_core::ff::{FieldCtx, FieldElem};
use repcurve_core::jordan::JordanType;
use repcurve_core::kmod::{
    augmentation_ideal, case_ii_core, case_ii_dr_core, digit, indecomposable_by_radical,
    is_indecomposable, is_isomorphic, regular_module, s_p, seeded_rng, trivial_module, v_d, v_dr,
    HModule, IndecCertificate, IsoDecision,
};
use repcurve_core::linalg::Mat;
use repcurve_core::poly::{artin_schreier_power, trace_polynomial};

const SEED: u64 = 20_240_601;
const TRIALS: usize = 64;

type Check = Result<String, String>;

enum Outcome {
    Pass(String),
    Fail(String),
    /// The statement itself is false on part of its range; printed as a
    /// failure but does not abort the run.
    Unattainable(String),
}

fn lift(c: Check) -> Outcome {
    match c {
        Ok(d) => Outcome::Pass(d),
        Err(e) => Outcome::Fail(e),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f9() -> FieldCtx {
    FieldCtx::with_default_modulus(3, 2).unwrap()
}

fn f25() -> FieldCtx {
    FieldCtx::with_default_modulus(5, 2).unwrap()
}

/// `k` distinct non-prime elements, spread over the enumeration.
fn betas(ctx: &FieldCtx, k: usize) -> Vec<FieldElem> {
    let all = ctx.enumerate_nonprime().unwrap();
    (0..k.min(all.len())).map(|i| all[i * all.len() / k.min(all.len())]).collect()
}

// ---- oracles ------------------------------------------------------------

/// Invertible and intertwining, checked entrywise through ranks and
/// products only.
fn is_witness(w: &Mat, m: &HModule, n: &HModule) -> bool {
    w.rows() == n.dim()
        && w.cols() == m.dim()
        && w.rank() == m.dim()
        && w.mul(m.sigma()).unwrap() == n.sigma().mul(w).unwrap()
        && w.mul(m.tau()).unwrap() == n.tau().mul(w).unwrap()
}

fn random_invertible(ctx: &FieldCtx, n: usize, rng: &mut impl Rng) -> Mat {
    loop {
        let p = Mat::from_fn(ctx, n, n, |_, _| ctx.random(rng));
        if p.rank() == n {
            return p;
        }
    }
}

/// The same module in a random basis.
fn conjugate(m: &HModule, rng: &mut impl Rng) -> HModule {
    let k = m.ctx();
    let p = random_invertible(k, m.dim(), rng);
    let pi = p.inverse().unwrap();
    let c = |a: &Mat| p.mul(a).unwrap().mul(&pi).unwrap();
    HModule::new(k, c(m.sigma()), c(m.tau()), None).unwrap()
}

/// Jordan type from the ranks of the powers of a nilpotent matrix.
fn jordan_by_ranks(n: &Mat) -> JordanType {
    let dim = n.rows();
    let mut ranks = vec![dim];
    let mut power = Mat::identity(n.ctx(), dim);
    while *ranks.last().unwrap() > 0 {
        power = power.mul(n).unwrap();
        ranks.push(power.rank());
        assert!(ranks.len() <= dim + 2, "not nilpotent");
    }
    // blocks of size ≥ k: r_{k-1} - r_k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, c - next));
    }
    JordanType::new(parts)
}

fn sparse_random(ctx: &FieldCtx, n: usize, rng: &mut impl Rng) -> Vec<FieldElem> {
    (0..n)
        .map(|_| if rng.gen_bool(0.5) { ctx.zero() } else { ctx.random(rng) })
        .collect()
}

fn iso_expect(m: &HModule, n: &HModule, expected: bool, seed: u64) -> Result<IsoDecision, String> {
    let dec = is_isomorphic(m, n, seed, TRIALS).map_err(|e| e.to_string())?;
    if dec.isomorphic != expected || !dec.proven {
        return Err(format!(
            "expected {expected}, got {} via {:?} (proven {})",
            dec.isomorphic, dec.method, dec.proven
        ));
    }
    if expected {
        let w = dec.witness.as_ref().ok_or("YES without an explicit witness")?;
        ensure(is_witness(w, m, n), || "witness fails the oracle".into())?;
    }
    Ok(dec)
}

// ---- criteria -----------------------------------------------------------

fn c1_trace_identity() -> Check {
    let mut n = 0;
    for (ctx, bs) in [(f9(), f9().enumerate_nonprime().unwrap()), (f25(), betas(&f25(), 4))] {
        let p = ctx.p() as u64;
        for b in bs {
            let r = trace_identity_for(&ctx, b).map_err(|e| e.to_string())?;
            let expected = ctx.pow(ctx.sub(ctx.pow(b, p), b), p - 1);
            // pointwise oracle: the sum has degree < q, so q values decide it
            for z in ctx.elements() {
                let mut direct = ctx.zero();
                for i in 0..p as i64 {
                    for j in 0..p as i64 {
                        let v = ctx.add(ctx.add(z, ctx.from_int(i)), ctx.mul(ctx.from_int(j), b));
                        direct = ctx.add(direct, ctx.pow(v, p * p - 1));
                    }
                }
                ensure(direct == expected, || format!("pointwise mismatch at β = {}", ctx.format(b)))?;
            }
            ensure(r.passed && r.expected == ctx.format(expected), || {
                format!("expansion {} for β = {}", r.expansion, r.beta)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} values of β"))
}

fn c2_polynomial_identity() -> Check {
    for p in [3, 5] {
        let lhs = trace_polynomial(p).map_err(|e| e.to_string())?;
        let rhs = artin_schreier_power(p).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("p = {p}: {lhs} vs {rhs}"))?;
    }
    Ok("p = 3, 5".into())
}

fn gap_oracle(p: u32, m: usize) -> usize {
    let q = (p * p) as usize;
    (0..q * m)
        .filter(|&n| !(0..=n / q).any(|a| (n - a * q).is_multiple_of(m)))
        .count()
}

fn c3_combinatorics() -> Check {
    let mut n = 0;
    for p in [3u32, 5] {
        let q = (p * p) as usize;
        for m in [2usize, 4, 7, 10, 26].into_iter().filter(|m| m % p as usize != 0) {
            let g = genus(p, m).unwrap();
            let ram = ramification_profile(p, m).unwrap();
            ensure(2 * g as i64 - 2 == -2 * q as i64 + ram.different_exponent as i64, || {
                format!("Riemann-Hurwitz fails at p = {p}, m = {m}")
            })?;
            ensure(ram.genus == g && semigroup_gap_count(p, m).unwrap() == g, || {
                format!("genus or gap count at p = {p}, m = {m}")
            })?;
            ensure(gap_oracle(p, m) == g, || format!("gap oracle at p = {p}, m = {m}"))?;
            let dds: Vec<usize> = (1..m).map(|c| dd(p, m, c).unwrap()).collect();
            ensure(dds.iter().sum::<usize>() == g, || format!("Σ dd at p = {p}, m = {m}"))?;
            for c in 1..m {
                ensure(dds[c - 1] + dds[m - c - 1] == q - 1, || format!("dd symmetry at c = {c}"))?;
            }
            for delta in [2 * g, 2 * g + 1, 2 * g + 7].into_iter().filter(|&x| x > 0) {
                let count = rr_basis(p, m, delta).unwrap().len();
                ensure(count + g == delta, || format!("rr count {count} at δ = {delta}"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} grid points"))
}

fn c4_filtration() -> Check {
    let k = f9();
    let b = k.generator();
    let mut rng = seeded_rng(SEED);
    for d in 1..=9 {
        let m = v_d(&k, d, b).unwrap();
        let filt = m.s_filtration();
        for (n, s) in filt.iter().enumerate() {
            let count = (0..d).filter(|&i| s_p(i as u64, 3) as usize <= n).count();
            ensure(s.dim() == count, || format!("v_d({d}): dim S_{n} = {} vs {count}", s.dim()))?;
        }
        for _ in 0..200 {
            let v = sparse_random(&k, d, &mut rng);
            let formula = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, _)| s_p(i as u64, 3) as i64)
                .max()
                .unwrap_or(-1);
            ensure(m.ddeg(&v) == formula, || format!("v_d({d}): ddeg vs formula"))?;
        }
    }
    for d in 0..=9 {
        let m = v_dr(&k, d, b).unwrap();
        let d1 = digit(d as u64, 1, 3) as i64;
        // label degrees, independent of the library's ddeg'
        let degrees: Vec<i64> = m
            .labels()
            .unwrap()
            .iter()
            .map(|l| {
                let i: u64 = l[1..].parse().unwrap();
                let s = s_p(i, 3) as i64;
                match (&l[..1], i % 3) {
                    ("w", _) => s,
                    ("e", 0) => s - 1 - d1,
                    _ => s - 1,
                }
            })
            .collect();
        let filt = m.s_filtration();
        for (n, s) in filt.iter().enumerate() {
            let count = degrees.iter().filter(|&&x| x <= n as i64).count();
            ensure(s.dim() == count, || format!("v_dr({d}): dim S_{n} = {} vs {count}", s.dim()))?;
        }
        for _ in 0..200 {
            let v = sparse_random(&k, m.dim(), &mut rng);
            let prime = m.ddeg_prime(&v).map_err(|e| e.to_string())?;
            ensure(m.ddeg(&v) == prime, || format!("v_dr({d}): ddeg vs ddeg'"))?;
        }
    }
    Ok("v_d 1..9, v_dr 0..9, 200 vectors each".into())
}

fn c5_structure() -> Check {
    let mut n = 0;
    let mut check = |m: &HModule, t: &HModule, what: String| -> Result<(), String> {
        n += 1;
        iso_expect(m, t, true, SEED + n).map(|_| ()).map_err(|e| format!("{what}: {e}"))
    };
    for (ctx, ds) in [(f9(), (0..=8).collect::<Vec<usize>>()), (f25(), vec![0, 4, 5, 12, 20, 24])] {
        let p = ctx.p() as usize;
        let q = p * p;
        let b = ctx.generator();
        let aug = augmentation_ideal(&ctx);
        check(&v_d(&ctx, q, b).unwrap(), &regular_module(&ctx), format!("p={p} V_q ≅ k[H]"))?;
        check(&v_d(&ctx, q - 1, b).unwrap(), &aug, format!("p={p} V_(q-1) ≅ I_H"))?;
        for &d in &ds {
            let m = v_dr(&ctx, d, b).unwrap();
            if d < p {
                check(&m, &aug.dual(), format!("p={p} v_dr({d}) ≅ I_H*"))?;
            }
            if d >= q - p {
                check(&m, &aug, format!("p={p} v_dr({d}) ≅ I_H"))?;
            }
            check(&m.dual(), &v_dr(&ctx, q - 1 - d, b).unwrap(), format!("p={p} v_dr({d})* ≅ v_dr({})", q - 1 - d))?;
            for &e in ds.iter().filter(|&&e| e > d && e / p == d / p) {
                check(&m, &v_dr(&ctx, e, b).unwrap(), format!("p={p} v_dr({d}) ≅ v_dr({e})"))?;
            }
        }
    }
    Ok(format!("{n} explicit witnesses"))
}

fn c6_indecomposability() -> Check {
    let k = f9();
    let b = k.generator();
    for d in 1..=9 {
        let dec = is_indecomposable(&v_d(&k, d, b).unwrap(), SEED, TRIALS).map_err(|e| e.to_string())?;
        ensure(dec.indecomposable && dec.certificate == IndecCertificate::FixedLine, || {
            format!("v_d({d}): {:?}", dec.certificate)
        })?;
    }
    let t3 = |ctx: &FieldCtx, d: usize| -> Result<(), String> {
        let m = v_dr(ctx, d, ctx.generator()).unwrap();
        let dec = indecomposable_by_radical(&m).map_err(|e| e.to_string())?;
        ensure(dec.indecomposable && dec.certificate.tier() == "T3", || {
            format!("p={} v_dr({d}): {:?}", ctx.p(), dec.certificate)
        })?;
        // the full pipeline agrees
        let full = is_indecomposable(&m, SEED, TRIALS).map_err(|e| e.to_string())?;
        ensure(full.indecomposable, || format!("p={} v_dr({d}): pipeline disagrees", ctx.p()))
    };
    for d in 0..=9 {
        t3(&k, d)?;
    }
    let k25 = f25();
    for d in [5, 12, 19] {
        t3(&k25, d)?;
    }
    Ok("v_d 1..9 by T1; v_dr 0..9 and p=5 {5,12,19} by T3".into())
}

fn c7_classification_vd() -> Check {
    let k = f9();
    let bs = k.enumerate_nonprime().unwrap();
    let mut rng = seeded_rng(SEED);
    let (mut no, mut yes) = (0, 0);
    for d in 2..=7 {
        for (i, &b1) in bs.iter().enumerate() {
            let m = v_d(&k, d, b1).unwrap();
            let twin = conjugate(&m, &mut rng);
            iso_expect(&m, &twin, true, SEED + yes).map_err(|e| format!("d={d} self: {e}"))?;
            yes += 1;
            for &b2 in &bs[i + 1..] {
                iso_expect(&m, &v_d(&k, d, b2).unwrap(), false, SEED + no)
                    .map_err(|e| format!("d={d} {} vs {}: {e}", k.format(b1), k.format(b2)))?;
                no += 1;
            }
        }
    }
    ensure(no == 90 && yes == 36, || format!("{no} + {yes} verdicts"))?;
    Ok(format!("{no} NO + {yes} YES"))
}

fn c8_classification_vdr() -> Check {
    let mut rng = seeded_rng(SEED);
    let mut count = |ctx: &FieldCtx, nodes: &[(usize, FieldElem)]| -> Result<(usize, usize), String> {
        let p = ctx.p();
        let modules: Vec<HModule> = nodes.iter().map(|&(d, b)| v_dr(ctx, d, b).unwrap()).collect();
        let (mut contra, mut same) = (0, 0);
        for (i, &(d1, b1)) in nodes.iter().enumerate() {
            for (j, &(d2, b2)) in nodes.iter().enumerate().skip(i) {
                let expected = b1 == b2 && digit(d1 as u64, 1, p) == digit(d2 as u64, 1, p);
                let other = if i == j { conjugate(&modules[i], &mut rng) } else { modules[j].clone() };
                iso_expect(&modules[i], &other, expected, SEED + (i * nodes.len() + j) as u64).map_err(|e| {
                    format!("p={p} ({d1},{}) vs ({d2},{}): {e}", ctx.format(b1), ctx.format(b2))
                })?;
                if expected {
                    same += 1;
                } else {
                    contra += 1;
                }
            }
        }
        Ok((contra, same))
    };
    let k = f9();
    let nodes: Vec<_> = [3, 4, 5]
        .into_iter()
        .flat_map(|d| k.enumerate_nonprime().unwrap().into_iter().map(move |b| (d, b)))
        .collect();
    let (c3, s3) = count(&k, &nodes)?;
    let k25 = f25();
    let bs = betas(&k25, 3);
    let nodes: Vec<_> = [5, 9, 12, 19]
        .into_iter()
        .flat_map(|d| bs.iter().map(move |&b| (d, b)))
        .collect();
    let (c5, s5) = count(&k25, &nodes)?;
    ensure(c5 >= 40, || format!("only {c5} contrapositive pairs at p = 5"))?;
    Ok(format!("p=3: {c3} NO + {s3} YES; p=5: {c5} NO + {s5} YES"))
}

/// For `d ≥ p² - p` the fixed space of `v_dr(d)` is a line inside the span
/// of `v` and `σ0 v`, so the stated `V_{2,-β^p} ⊕ k` (dimension 3) cannot
/// occur there; those values are checked against `V_{2,-β^p}` instead and
/// reported as unattainable.
fn c9_case_ii() -> Outcome {
    let k = f9();
    let p = 3usize;
    let q = p * p;
    let mut n = 0;
    let mut off_range = Vec::new();
    for b in k.enumerate_nonprime().unwrap() {
        for d in q - p..=q - 2 {
            let m = v_d(&k, d, b).unwrap();
            let core = match case_ii_core(&m, &m.unit(q - p - 1)) {
                Ok(c) => c,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            if let Err(e) = iso_expect(&core.core, &v_d(&k, 2, k.neg(b)).unwrap(), true, SEED) {
                return Outcome::Fail(format!("v_d({d}) at β = {}: {e}", k.format(b)));
            }
            n += 1;
        }
        let two = v_d(&k, 2, k.neg(k.pow(b, p as u64))).unwrap();
        let target = two.direct_sum(&trivial_module(&k)).unwrap();
        for d in p..q {
            let m = v_dr(&k, d, b).unwrap();
            let u = m.labeled(&format!("e{}", q - 1)).unwrap();
            let core = match case_ii_dr_core(&m, &u) {
                Ok((c, _)) => c,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let stated = iso_expect(&core, &target, true, SEED);
            match (stated, d >= q - p) {
                (Ok(_), false) => n += 1,
                (Err(e), false) => return Outcome::Fail(format!("v_dr({d}) at β = {}: {e}", k.format(b))),
                (Ok(_), true) => {
                    return Outcome::Fail(format!("v_dr({d}) unexpectedly matches V_2 ⊕ k"));
                }
                (Err(_), true) => {
                    if let Err(e) = iso_expect(&core, &two, true, SEED) {
                        return Outcome::Fail(format!("v_dr({d}): core is not V_2 either: {e}"));
                    }
                    off_range.push(d);
                }
            }
        }
    }
    off_range.sort_unstable();
    off_range.dedup();
    if off_range.is_empty() {
        Outcome::Pass(format!("{n} cores"))
    } else {
        Outcome::Unattainable(format!(
            "{n} cores match; for v_dr(d), d ∈ {off_range:?}, the core is V_(2,-β^p) of dimension 2, not V_(2,-β^p) ⊕ k"
        ))
    }
}

fn c10_jordan() -> Check {
    let k = f9();
    let b = k.generator();
    let p = 3;
    let mut non_constant = Vec::new();
    for d in 1..=9 {
        let m = v_d(&k, d, b).unwrap();
        let scan = m.jordan_scan();
        ensure(scan.len() == 10, || "scan must cover P¹(F_9)".into())?;
        for ((a, c), t) in &scan {
            ensure(jordan_by_ranks(&m.pencil(*a, *c)) == *t, || format!("v_d({d}): rank oracle"))?;
        }
        let expected = JordanType::blocks(p, d / p, d % p);
        let generic = m.generic_jordan_type().map_err(|e| e.to_string())?;
        ensure(generic == expected, || format!("v_d({d}): generic {generic} vs {expected}"))?;
        if !m.constant_type_over_scan() {
            non_constant.push(format!("V_{d}"));
        }
    }
    let expected = JordanType::blocks(p, p - 1, p - 1);
    for d in 0..9 {
        let m = v_dr(&k, d, b).unwrap();
        let generic = m.generic_jordan_type().map_err(|e| e.to_string())?;
        ensure(generic == expected, || format!("v_dr({d}): generic {generic} vs {expected}"))?;
        if !m.constant_type_over_scan() {
            non_constant.push(format!("V_dR^({d})"));
        }
    }
    Ok(format!("non-constant scans (report only): {}", non_constant.join(" ")))
}

fn c11_cross_check() -> Check {
    let mut pieces = 0;
    for (ctx, m) in [(f9(), 2), (f9(), 10), (f25(), 26)] {
        let params = CurveParams::from_beta(&ctx, m, ctx.generator()).map_err(|e| e.to_string())?;
        let holo = holo_graded(&params).map_err(|e| e.to_string())?;
        let dr = dr_graded(&params).map_err(|e| e.to_string())?;
        for c in 1..m {
            let d = params.dd(c).unwrap();
            let piece = &holo.pieces[&c];
            if d > 0 {
                let target = v_d(&ctx, d, params.beta).unwrap();
                ensure(is_witness(&Mat::identity(&ctx, d), piece, &target), || {
                    format!("p={} m={m} holo piece {c}", ctx.p())
                })?;
            } else {
                ensure(piece.dim() == 0, || format!("holo piece {c} should be empty"))?;
            }
            let abstract_ = v_dr(&ctx, params.dd(m - c).unwrap(), params.beta).unwrap();
            let phi = dr_identification(&params, c, &abstract_).map_err(|e| e.to_string())?;
            ensure(is_witness(&phi, &abstract_, &dr.pieces[&c]), || {
                format!("p={} m={m} dr piece {c}", ctx.p())
            })?;
            pieces += 2;
        }
    }
    Ok(format!("{pieces} pieces"))
}

fn c12_hodge() -> Check {
    let k = f9();
    let params = CurveParams::from_beta(&k, 10, k.generator()).map_err(|e| e.to_string())?;
    for c in 1..10 {
        let r = hodge_check(&params, c, SEED, TRIALS).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("c = {c}: {r:?}"))?;
        ensure(r.sub_dim + r.quotient_dim == 8, || format!("c = {c}: dims"))?;
    }
    Ok("c = 1..9".into())
}

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "trace identity", 1, || lift(c1_trace_identity())),
        (2, "polynomial identity", 1, || lift(c2_polynomial_identity())),
        (3, "genus and combinatorics", 2, || lift(c3_combinatorics())),
        (4, "filtration and degree", 5, || lift(c4_filtration())),
        (5, "structure identifications", 30, || lift(c5_structure())),
        (6, "indecomposability", 60, || lift(c6_indecomposability())),
        (7, "classification of V_d", 30, || lift(c7_classification_vd())),
        (8, "classification of V_dR", 180, || lift(c8_classification_vdr())),
        (9, "case II cores", 5, c9_case_ii),
        (10, "Jordan types", 10, || lift(c10_jordan())),
        (11, "geometric and abstract pieces", 120, || lift(c11_cross_check())),
        (12, "Hodge sequence", 30, || lift(c12_hodge())),
    ];
    let (mut passed, mut failed, mut unattainable) = (0, 0, 0);
    for (id, name, limit, run) in criteria {
        let limit = Duration::from_secs(limit);
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let overrun = elapsed > limit;
        let (verdict, detail) = match outcome {
            Outcome::Pass(d) if !overrun => {
                passed += 1;
                ("PASS", d)
            }
            Outcome::Unattainable(d) if !overrun => {
                unattainable += 1;
                ("FAIL", format!("{d} (statement unattainable as written)"))
            }
            Outcome::Pass(d) | Outcome::Unattainable(d) => {
                failed += 1;
                ("FAIL", format!("over time limit; {d}"))
            }
            Outcome::Fail(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!(
            "criterion {id:>2} {verdict} {name} [{:.2}s / {}s] {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {passed} pass, {failed} fail, {unattainable} fail as unattainable");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
