//! Registry of verification cases. The `cases` command prints this table
//! and `verify` executes it, so both always agree.

use clap::ValueEnum;
use repcurve_core::curvefam::{
    self, dd, dr_matches, genus, holo_matches, hodge_check, ramification_profile, rr_basis,
    semigroup_gap_count, trace_identity_for, CurveParams,
};
use repcurve_core::ff::{FieldCtx, FieldElem};
use repcurve_core::jordan::JordanType;
use repcurve_core::kmod::{digit, is_isomorphic, v_d, v_dr, HModule};
use repcurve_core::poly::{artin_schreier_power, trace_polynomial};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Holo,
    Dr,
    Classification,
    Jordan,
    Hodge,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Holo => "holo",
            Suite::Dr => "dr",
            Suite::Classification => "classification",
            Suite::Jordan => "jordan",
            Suite::Hodge => "hodge",
            Suite::All => "all",
        }
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Identities,
                Suite::Holo,
                Suite::Dr,
                Suite::Classification,
                Suite::Jordan,
                Suite::Hodge,
            ],
            s => vec![s],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ReportOnly => "report-only",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: Verdict,
    pub certificate: Value,
}

type CaseResult = Result<Outcome, Box<dyn std::error::Error + Send + Sync>>;
type Runner = Box<dyn Fn(&CaseEnv) -> CaseResult + Send + Sync>;

pub struct CaseEnv {
    pub ctx: FieldCtx,
    pub seed: u64,
    pub trials: usize,
}

pub struct Case {
    pub id: String,
    pub claim: String,
    run: Runner,
}

impl Case {
    fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        run: impl Fn(&CaseEnv) -> CaseResult + Send + Sync + 'static,
    ) -> Self {
        Case {
            id: id.into(),
            claim: claim.into(),
            run: Box::new(run),
        }
    }

    /// Errors raised inside a case are recorded as failures.
    pub fn execute(&self, env: &CaseEnv) -> Outcome {
        (self.run)(env).unwrap_or_else(|e| Outcome {
            verdict: Verdict::Fail,
            certificate: json!({ "error": e.to_string() }),
        })
    }
}

/// First eight bytes of `SHA-256(seed ‖ id)`.
pub fn case_seed(global: u64, id: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(global.to_le_bytes());
    h.update(id.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

#[derive(Debug, Clone, Serialize)]
pub struct Grid {
    pub m: Vec<usize>,
    pub beta: String,
    pub classification_betas: Vec<String>,
    pub dr_classification_d: Vec<usize>,
}

pub const DEFAULT_M_GRID: [usize; 5] = [2, 4, 7, 10, 26];

/// `k` elements of `all` spread evenly; everything if `k ≥ len`.
fn spread(all: &[FieldElem], k: usize) -> Vec<FieldElem> {
    if k >= all.len() {
        return all.to_vec();
    }
    (0..k).map(|i| all[i * all.len() / k]).collect()
}

pub fn grid(ctx: &FieldCtx, m_grid: &[usize], beta: FieldElem) -> Result<Grid, CliError> {
    let p = ctx.p() as usize;
    let (betas, ds) = classification_nodes(ctx)?;
    Ok(Grid {
        m: m_grid.iter().copied().filter(|m| m % p != 0).collect(),
        beta: ctx.format(beta),
        classification_betas: betas.iter().map(|b| ctx.format(*b)).collect(),
        dr_classification_d: ds,
    })
}

fn classification_nodes(ctx: &FieldCtx) -> Result<(Vec<FieldElem>, Vec<usize>), CliError> {
    let p = ctx.p() as usize;
    let all = ctx.enumerate_nonprime()?;
    if p == 3 {
        Ok((all, vec![3, 4, 5]))
    } else {
        Ok((spread(&all, 4), vec![p, 2 * p - 1, 2 * p + 2, 4 * p - 1]))
    }
}

fn jt(t: &JordanType) -> String {
    t.to_string()
}

fn iso_outcome(a: &HModule, b: &HModule, expected: bool, env: &CaseEnv) -> CaseResult {
    let dec = is_isomorphic(a, b, env.seed, env.trials)?;
    Ok(Outcome {
        verdict: Verdict::of(dec.isomorphic == expected && dec.proven),
        certificate: json!({
            "expected": if expected { "YES" } else { "NO" },
            "verdict": if dec.isomorphic { "YES" } else { "NO" },
            "method": dec.method,
            "proven": dec.proven,
            "witness": dec.witness.map(|w| w.to_json_grid()),
        }),
    })
}

fn identities(ctx: &FieldCtx) -> Result<Vec<Case>, CliError> {
    let p = ctx.p();
    let mut cases = vec![Case::new(
        "identities/polynomial",
        "Σ_{i,j} (x + i + j·y)^(p²-1) equals (y^p - y)^(p-1) in F_p[x, y]",
        move |_| {
            let lhs = trace_polynomial(p)?;
            let rhs = artin_schreier_power(p)?;
            Ok(Outcome {
                verdict: Verdict::of(lhs == rhs),
                certificate: json!({ "expansion": lhs.to_string(), "expected": rhs.to_string() }),
            })
        },
    )];
    for beta in ctx.enumerate_nonprime()? {
        let name = ctx.format(beta);
        cases.push(Case::new(
            format!("identities/trace/beta={name}"),
            format!("Σ_{{i,j}} (Z + i + jβ)^(p²-1) = (β^p - β)^(p-1) for β = {name}"),
            move |env| {
                let r = trace_identity_for(&env.ctx, beta)?;
                Ok(Outcome {
                    verdict: Verdict::of(r.passed),
                    certificate: serde_json::to_value(r)?,
                })
            },
        ));
    }
    Ok(cases)
}

fn combinatorics_case(p: u32, m: usize) -> Case {
    Case::new(
        format!("holo/m={m}/combinatorics"),
        format!("genus, gap count, Σ dd(c), dd(c) + dd(m-c) and Riemann-Roch counts agree for m = {m}"),
        move |_| {
            let g = genus(p, m)?;
            let ram = ramification_profile(p, m)?;
            let gaps = semigroup_gap_count(p, m)?;
            let dds: Vec<usize> = (1..m).map(|c| dd(p, m, c)).collect::<Result<_, _>>()?;
            let sum: usize = dds.iter().sum();
            let q = (p * p) as usize;
            let symmetric = (1..m).all(|c| dds[c - 1] + dds[m - c - 1] == q - 1);
            let rr: Vec<(usize, usize)> = [2 * g, 2 * g + 1, 2 * g + 7]
                .into_iter()
                .filter(|&delta| delta > 0)
                .map(|delta| Ok((delta, rr_basis(p, m, delta)?.len())))
                .collect::<Result<_, curvefam::CurveError>>()?;
            let rr_ok = rr.iter().all(|&(delta, n)| n + g == delta);
            Ok(Outcome {
                verdict: Verdict::of(ram.genus == g && gaps == g && sum == g && symmetric && rr_ok),
                certificate: json!({
                    "genus": g,
                    "different_exponent": ram.different_exponent,
                    "gaps": gaps,
                    "dd": dds,
                    "rr": rr,
                }),
            })
        },
    )
}

fn curve_cases(
    ctx: &FieldCtx,
    m_grid: &[usize],
    beta: FieldElem,
    suite: Suite,
) -> Result<Vec<Case>, CliError> {
    let p = ctx.p();
    let mut cases = Vec::new();
    for &m in m_grid.iter().filter(|&&m| m % p as usize != 0) {
        let params = CurveParams::from_beta(ctx, m, beta)?;
        if suite == Suite::Holo {
            cases.push(combinatorics_case(p, m));
        }
        for c in 1..m {
            let params = params.clone();
            let case = match suite {
                Suite::Holo => Case::new(
                    format!("holo/m={m}/c={c}"),
                    format!("holomorphic piece {c} is V_{{dd(c)}} under ω_(i,c) ↦ ω_i"),
                    move |_| {
                        Ok(Outcome {
                            verdict: Verdict::of(holo_matches(&params, c)?),
                            certificate: json!({ "dd": params.dd(c)? }),
                        })
                    },
                ),
                Suite::Dr => Case::new(
                    format!("dr/m={m}/c={c}"),
                    format!("de Rham piece {c} is V_dR^(dd(m-c)) under the explicit label map"),
                    move |_| {
                        Ok(Outcome {
                            verdict: Verdict::of(dr_matches(&params, c)?),
                            certificate: json!({ "d": params.dd(m - c)? }),
                        })
                    },
                ),
                Suite::Hodge => Case::new(
                    format!("hodge/m={m}/c={c}"),
                    format!("ω-span of de Rham piece {c} is V_{{dd(m-c)}}, quotient is V_{{dd(c)}}^*"),
                    move |env| {
                        let r = hodge_check(&params, c, env.seed, env.trials)?;
                        Ok(Outcome {
                            verdict: Verdict::of(r.passed()),
                            certificate: serde_json::to_value(r)?,
                        })
                    },
                ),
                _ => unreachable!("curve suites only"),
            };
            cases.push(case);
        }
    }
    Ok(cases)
}

fn classification(ctx: &FieldCtx) -> Result<Vec<Case>, CliError> {
    let p = ctx.p() as usize;
    let q = p * p;
    let (betas, ds) = classification_nodes(ctx)?;
    let mut cases = Vec::new();
    for d in 2..=q - 2 {
        for (i, &b1) in betas.iter().enumerate() {
            for &b2 in &betas[i..] {
                let same = b1 == b2;
                let (n1, n2) = (ctx.format(b1), ctx.format(b2));
                let id = if same {
                    format!("classification/vd/d={d}/self/beta={n1}")
                } else {
                    format!("classification/vd/d={d}/beta={n1}/beta={n2}")
                };
                cases.push(Case::new(
                    id,
                    format!("V_{{{d},β}} ≅ V_{{{d},β'}} iff β = β' (β = {n1}, β' = {n2})"),
                    move |env| {
                        let a = v_d(&env.ctx, d, b1)?;
                        let b = v_d(&env.ctx, d, b2)?;
                        iso_outcome(&a, &b, same, env)
                    },
                ));
            }
        }
    }
    let nodes: Vec<(usize, FieldElem)> = ds
        .iter()
        .flat_map(|&d| betas.iter().map(move |&b| (d, b)))
        .collect();
    for (i, &(d1, b1)) in nodes.iter().enumerate() {
        for &(d2, b2) in &nodes[i..] {
            let expected = b1 == b2 && digit(d1 as u64, 1, p as u32) == digit(d2 as u64, 1, p as u32);
            let (n1, n2) = (ctx.format(b1), ctx.format(b2));
            cases.push(Case::new(
                format!("classification/vdr/d={d1}/beta={n1}/d={d2}/beta={n2}"),
                format!(
                    "V_dR^({d1}) at β = {n1} and V_dR^({d2}) at β = {n2} are isomorphic iff the β agree and d^(1) agree"
                ),
                move |env| {
                    let a = v_dr(&env.ctx, d1, b1)?;
                    let b = v_dr(&env.ctx, d2, b2)?;
                    iso_outcome(&a, &b, expected, env)
                },
            ));
        }
    }
    Ok(cases)
}

fn jordan(ctx: &FieldCtx, beta: FieldElem) -> Vec<Case> {
    let p = ctx.p() as usize;
    let q = p * p;
    let mut cases = Vec::new();
    for d in 1..=q {
        let expected = JordanType::blocks(p, d / p, d % p);
        cases.push(Case::new(
            format!("jordan/vd/d={d}"),
            format!("generic Jordan type of V_{d} is {}", jt(&expected)),
            move |env| {
                let m = v_d(&env.ctx, d, beta)?;
                let generic = m.generic_jordan_type()?;
                Ok(Outcome {
                    verdict: Verdict::of(generic == expected),
                    certificate: json!({ "generic": jt(&generic) }),
                })
            },
        ));
    }
    let expected_dr = JordanType::blocks(p, p - 1, p - 1);
    for d in 0..q {
        let expected = expected_dr.clone();
        cases.push(Case::new(
            format!("jordan/vdr/d={d}"),
            format!("generic Jordan type of V_dR^({d}) is {}", jt(&expected)),
            move |env| {
                let m = v_dr(&env.ctx, d, beta)?;
                let generic = m.generic_jordan_type()?;
                Ok(Outcome {
                    verdict: Verdict::of(generic == expected),
                    certificate: json!({ "generic": jt(&generic) }),
                })
            },
        ));
    }
    for d in 1..=q {
        cases.push(Case::new(
            format!("jordan/scan/vd/d={d}"),
            format!("Jordan types of V_{d} over the scanned projective line"),
            move |env| {
                let m = v_d(&env.ctx, d, beta)?;
                Ok(scan_report(&env.ctx, &m))
            },
        ));
    }
    cases
}

fn scan_report(ctx: &FieldCtx, m: &HModule) -> Outcome {
    let scan = m.jordan_scan();
    let types: Vec<Value> = scan
        .iter()
        .map(|((a, b), t)| json!({ "point": [ctx.format(*a), ctx.format(*b)], "type": jt(t) }))
        .collect();
    Outcome {
        verdict: Verdict::ReportOnly,
        certificate: json!({ "constant": m.constant_type_over_scan(), "scan": types }),
    }
}

pub struct Registry {
    pub grid: Grid,
    pub cases: Vec<Case>,
}

pub fn registry(
    suite: Suite,
    ctx: &FieldCtx,
    m_grid: &[usize],
    beta: FieldElem,
) -> Result<Registry, CliError> {
    let mut cases = Vec::new();
    for s in suite.parts() {
        match s {
            Suite::Identities => cases.extend(identities(ctx)?),
            Suite::Holo | Suite::Dr | Suite::Hodge => cases.extend(curve_cases(ctx, m_grid, beta, s)?),
            Suite::Classification => cases.extend(classification(ctx)?),
            Suite::Jordan => cases.extend(jordan(ctx, beta)),
            Suite::All => unreachable!("expanded by parts"),
        }
    }
    Ok(Registry {
        grid: grid(ctx, m_grid, beta)?,
        cases,
    })
}
