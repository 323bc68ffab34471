use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use weylspin_core::audit;
use weylspin_core::catalog::{Riemannian, WeylFamily};
use weylspin_core::scalar::{int, Rational};
use weylspin_core::spinors::verify_theorem41;
use weylspin_core::weyl::{
    check_projection_condition, check_recurrence_and_condition_r, check_theorem71, closed_form_checks,
    einstein_weyl_check, infinitesimal_holonomy, is_closed, parallel_spinor_dimension, verify_compatibility,
    Classification, Epsilon, Geometry, HolonomyError, KundtStructure, Residual, StructureError, StructureFile,
    DEFAULT_MAX_ORDER,
};
use weylspin_symdiff::{parse_rational, Chart, DiffExpr};

use crate::report::{Record, Report, Status};

/// Problems with the command line or its inputs; these exit with status 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub const SUITES: [&str; 8] = [
    "closed_forms",
    "compatibility",
    "einstein_weyl",
    "holonomy",
    "projection",
    "recurrence",
    "spinors",
    "theorem71",
];

#[derive(Clone, Debug, PartialEq)]
pub struct CheckConfig {
    pub structure: PathBuf,
    pub suites: Vec<String>,
    pub basepoint: Option<Vec<Rational>>,
    pub max_order: usize,
}

impl CheckConfig {
    pub fn new(
        structure: PathBuf,
        suites: Option<&str>,
        basepoint: Option<&str>,
        max_order: Option<usize>,
    ) -> Result<Self, InputError> {
        let suites = match suites {
            None => SUITES.iter().map(|s| s.to_string()).collect(),
            Some(list) => {
                let mut out: Vec<String> = Vec::new();
                for s in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    if !SUITES.contains(&s) {
                        return Err(InputError::Usage(format!(
                            "unknown suite '{}', expected one of {}",
                            s,
                            SUITES.join(", ")
                        )));
                    }
                    if !out.iter().any(|o| o == s) {
                        out.push(s.to_string());
                    }
                }
                if out.is_empty() {
                    return Err(InputError::Usage("--suite needs at least one name".into()));
                }
                out
            }
        };
        let basepoint = basepoint
            .map(|b| {
                b.split(',')
                    .map(|t| {
                        parse_rational(t.trim())
                            .map_err(|e| InputError::Usage(format!("--basepoint entry '{}': {}", t.trim(), e)))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        if !structure.exists() {
            return Err(InputError::Usage(format!(
                "structure file {} does not exist",
                structure.display()
            )));
        }
        Ok(CheckConfig {
            structure,
            suites,
            basepoint,
            max_order: max_order.unwrap_or(DEFAULT_MAX_ORDER),
        })
    }

    fn wants(&self, suite: &str) -> bool {
        self.suites.iter().any(|s| s == suite)
    }
}

pub fn load_structure(config: &CheckConfig) -> Result<KundtStructure, InputError> {
    let src = std::fs::read_to_string(&config.structure).map_err(|err| InputError::Io {
        path: config.structure.display().to_string(),
        err,
    })?;
    let s = StructureFile::from_json(&src)?.build()?;
    Ok(match &config.basepoint {
        Some(bp) => s.with_basepoint(bp.clone())?,
        None => s,
    })
}

fn render(chart: Chart, e: &DiffExpr) -> String {
    chart.render(e)
}

fn residuals(chart: Chart, rs: &[Residual]) -> Value {
    Value::Array(
        rs.iter()
            .map(|r| json!({"component": r.name, "value": render(chart, &r.value)}))
            .collect(),
    )
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn skipped(name: &str, anchor: &str, err: &StructureError) -> Record {
    Record::new(name, Status::Flagged, anchor, json!({})).note(format!("not applicable: {}", err))
}

/// Holonomy failures caused by the input (poles, irrational frames) are input errors.
fn holonomy_input_error(e: HolonomyError) -> Result<Record, InputError> {
    match e {
        HolonomyError::Structure(s) => Err(InputError::Structure(s)),
        HolonomyError::NotRationalFrame(m) => Err(InputError::Usage(format!(
            "h at the basepoint has no rational orthonormal frame (norm² {}); choose another basepoint",
            m
        ))),
        other => Ok(Record::new(
            "holonomy",
            Status::Fail,
            ANCHOR_HOLONOMY,
            json!({"error": other.to_string()}),
        )),
    }
}

const ANCHOR_COMPAT: &str = "Weyl connection: torsion free with ∇g = ε ω ⊗ g; Γ^v_vv = -2ω_v, ∂_v h = 2ω_v h";
const ANCHOR_RECURRENCE: &str = "∂_v recurrent, ∇∂_v = θ ⊗ ∂_v, and R(X,Y)∂_v ∈ ℝ∂_v";
const ANCHOR_PROJECTION: &str = "parallel weighted spinor: projection of the holonomy to ℝ(2, w)";
const ANCHOR_CLOSED: &str = "closed forms of R and of the Ricci tensor for Walker structures with ω = f du";
const ANCHOR_EW: &str = "Einstein-Weyl: Ric^s = Λ g";
const ANCHOR_THM71: &str = "Einstein-Weyl with a weighted parallel spinor: f = ∂_v H / n, w = n - 2, uu equation";
const ANCHOR_HOLONOMY: &str = "infinitesimal holonomy: span of ∇^k R at the basepoint in co(1,n+1)";
const ANCHOR_SPINORS: &str = "weighted parallel spinors: common kernel of the holonomy action";

pub fn cmd_check(config: &CheckConfig) -> Result<Report, InputError> {
    let s = load_structure(config)?;
    let geo = Geometry::new(&s)?;
    let chart = s.chart();
    let mut records = Vec::new();

    if config.wants("compatibility") {
        let c = verify_compatibility(&geo);
        let eps = match c.epsilon {
            Epsilon::Plus2 => json!(2),
            Epsilon::Minus2 => json!(-2),
            Epsilon::Both => json!("±2 (ω = 0)"),
            Epsilon::Neither => Value::Null,
        };
        let dv_ok = !c.omega_v_vanishes || (c.eq_gamma_vvv.is_zero() && c.eq_dv_h.is_empty());
        let ok = matches!(c.epsilon, Epsilon::Minus2 | Epsilon::Both) && geo.gamma.is_torsion_free() && dv_ok;
        records.push(Record::new(
            "compatibility",
            pass_if(ok),
            ANCHOR_COMPAT,
            json!({
                "epsilon": eps,
                "torsion_free": geo.gamma.is_torsion_free(),
                "omega_v_vanishes": c.omega_v_vanishes,
                "gamma_vvv_residual": render(chart, &c.eq_gamma_vvv),
                "dv_h_residuals": residuals(chart, &c.eq_dv_h),
            }),
        ));
    }

    if config.wants("recurrence") {
        let r = check_recurrence_and_condition_r(&geo);
        records.push(Record::new(
            "recurrence",
            pass_if(r.holds()),
            ANCHOR_RECURRENCE,
            json!({
                "recurrent": r.recurrence.holds,
                "theta": r.recurrence.rho.iter().map(|e| render(chart, e)).collect::<Vec<_>>(),
                "failing": residuals(chart, &r.recurrence.failing),
                "curvature_condition": residuals(chart, &r.condition_r),
            }),
        ));
    }

    if config.wants("projection") {
        let p = check_projection_condition(&geo)?;
        let mut rec = Record::new(
            "projection",
            pass_if(p.holds),
            ANCHOR_PROJECTION,
            json!({
                "holds": p.holds,
                "residuals": residuals(chart, &p.residuals),
                "factor_2_plus_w_holds": p.full_factor_holds,
                "factor_2_plus_w_residuals": residuals(chart, &p.full_factor_residuals),
            }),
        );
        if p.holds != p.full_factor_holds {
            rec = rec.note("the factor (2+w) and the factor (2+w)/2 give different verdicts; (2+w)/2 is used");
        }
        records.push(rec);
    }

    if config.wants("closed_forms") {
        records.push(match closed_form_checks(&geo) {
            Ok(checks) => {
                let bad: Vec<Value> = checks
                    .iter()
                    .filter(|c| !c.agrees())
                    .map(|c| {
                        json!({"group": c.group, "component": c.name,
                            "reference": render(chart, &c.reference), "engine": render(chart, &c.engine)})
                    })
                    .collect();
                let status = if bad.is_empty() { Status::Pass } else { Status::Flagged };
                let mut rec = Record::new(
                    "closed_forms",
                    status,
                    ANCHOR_CLOSED,
                    json!({"checked": checks.len(), "disagreements": bad}),
                );
                if status == Status::Flagged {
                    rec = rec.note("the engine values are exact; disagreements are with the reference closed forms");
                }
                rec
            }
            Err(e) => skipped("closed_forms", ANCHOR_CLOSED, &e),
        });
    }

    if config.wants("einstein_weyl") {
        records.push(match einstein_weyl_check(&geo) {
            Ok(ew) => Record::new(
                "einstein_weyl",
                pass_if(ew.is_ew),
                ANCHOR_EW,
                json!({"is_ew": ew.is_ew, "lambda": render(chart, &ew.lambda), "residuals": residuals(chart, &ew.residuals)}),
            ),
            Err(StructureError::NotWalker) => skipped("einstein_weyl", ANCHOR_EW, &StructureError::NotWalker),
            Err(e) => return Err(e.into()),
        });
    }

    if config.wants("theorem71") {
        records.push(match check_theorem71(&geo) {
            Ok(t) => {
                let mut rec = Record::new(
                    "theorem71",
                    pass_if(t.passes),
                    ANCHOR_THM71,
                    json!({
                        "classification": match t.classification {
                            Classification::NonClosed => "non_closed",
                            Classification::ClosedWeyl => "closed_weyl",
                        },
                        "closed": is_closed(&s),
                        "f_relation": render(chart, &t.f_relation),
                        "spinor_relation": render(chart, &t.spinor_relation),
                        "weight_matches": t.weight_matches,
                        "uu_equation": render(chart, &t.uu_residual),
                        "uu_equation_second_derivative_variant": render(chart, &t.uu_residual_vv),
                        "einstein_weyl": t.einstein_weyl.is_ew,
                        "passes": t.passes,
                        "consistent_with_einstein_weyl": t.consistent_with_ew,
                    }),
                );
                for m in &t.messages {
                    rec = rec.note(m.clone());
                }
                rec
            }
            Err(StructureError::NotWalker) => skipped("theorem71", ANCHOR_THM71, &StructureError::NotWalker),
            Err(e) => return Err(e.into()),
        });
    }

    if config.wants("holonomy") || config.wants("spinors") {
        match infinitesimal_holonomy(&geo, config.max_order) {
            Ok(span) => {
                if config.wants("holonomy") {
                    let status = if span.stabilized { Status::Pass } else { Status::Flagged };
                    let mut rec = Record::new(
                        "holonomy",
                        status,
                        ANCHOR_HOLONOMY,
                        json!({
                            "rank": span.rank(),
                            "rank_by_order": span.rank_by_order,
                            "stabilized": span.stabilized,
                            "max_order": config.max_order,
                            "co_dimension": (s.dim() * (s.dim() - 1)) / 2 + 1,
                        }),
                    );
                    if !span.stabilized {
                        rec = rec.note("span did not stabilize; raise --max-order");
                    }
                    records.push(rec);
                }
                if config.wants("spinors") {
                    records.push(match parallel_spinor_dimension(&span, s.w()) {
                        Ok(d) => {
                            let status = if d.exact { Status::Pass } else { Status::Flagged };
                            let mut rec = Record::new(
                                "spinors",
                                status,
                                ANCHOR_SPINORS,
                                json!({"weight": s.w().to_string(), "dimension": d.dim, "exact": d.exact}),
                            );
                            if !d.exact {
                                rec = rec.note(d.caveat);
                            }
                            rec
                        }
                        Err(e) => Record::new("spinors", Status::Fail, ANCHOR_SPINORS, json!({"error": e.to_string()})),
                    });
                }
            }
            Err(e) => {
                let rec = holonomy_input_error(e)?;
                if config.wants("holonomy") {
                    records.push(rec.clone());
                }
                if config.wants("spinors") {
                    records.push(Record::new(
                        "spinors",
                        Status::Fail,
                        ANCHOR_SPINORS,
                        json!({"error": "holonomy unavailable"}),
                    ));
                }
            }
        }
    }
    Ok(Report::new("check", records))
}

/// Family kinds understood by `catalog`, with representative members.
pub fn catalog_rows() -> Vec<(&'static str, WeylFamily)> {
    let so2 = Riemannian::Full(2);
    let mut rows: Vec<(&'static str, WeylFamily)> = vec![];
    for k in [-1, 0, 1] {
        rows.push(("lorentz_split", WeylFamily::LorentzSplit { n: 2, k }));
    }
    rows.push((
        "boost_split",
        WeylFamily::BoostSplit {
            n: 3,
            sub: Riemannian::Trivial(1),
        },
    ));
    rows.push((
        "scalar_split",
        WeylFamily::ScalarSplit {
            n: 3,
            sub: Riemannian::Trivial(1),
        },
    ));
    rows.push(("g^{R,1,h}", WeylFamily::R1 { h: so2.clone() }));
    rows.push(("g^{R,2,h}", WeylFamily::R2 { h: so2.clone() }));
    rows.push((
        "g^{R,3,h,phi}",
        WeylFamily::R3 {
            h: so2.clone(),
            phi: vec![int(1)],
        },
    ));
    rows.push((
        "g^{beta,theta,1,h}",
        WeylFamily::BetaTheta1 {
            h: so2.clone(),
            beta: int(1),
            theta: vec![int(1)],
        },
    ));
    rows.push((
        "g^{theta,2,h}",
        WeylFamily::Theta2 {
            h: so2.clone(),
            theta: vec![int(1)],
        },
    ));
    rows.push((
        "g^{theta,3,h,phi}",
        WeylFamily::Theta3 {
            h: so2,
            theta: vec![int(1)],
            phi: vec![int(1)],
        },
    ));
    for fam in audit::theorem41_families() {
        let kind = match fam {
            WeylFamily::Weighted { .. } => "g^{w,h}",
            _ => "g^k",
        };
        rows.push((kind, fam));
    }
    rows
}

pub fn cmd_catalog(filter: Option<&str>) -> Result<Report, InputError> {
    let rows = catalog_rows();
    let filter = filter.map(str::trim).filter(|f| !f.is_empty());
    if let Some(f) = filter {
        if !rows.iter().any(|(k, _)| *k == f) {
            let mut kinds: Vec<&str> = rows.iter().map(|(k, _)| *k).collect();
            kinds.dedup();
            return Err(InputError::Usage(format!(
                "unknown variant '{}', expected one of {}",
                f,
                kinds.join(", ")
            )));
        }
    }
    let mut records = vec![];
    for (kind, fam) in rows.into_iter().filter(|(k, _)| filter.is_none_or(|f| f == *k)) {
        let gens = fam.generators().map_err(|e| InputError::Usage(e.to_string()))?;
        let anchor = "holonomy algebras of Lorentzian Weyl connections preserving a null line";
        let mut values = json!({"kind": kind, "n": fam.n(), "generators": gens.len()});
        let mut status = Status::Pass;
        let mut notes = vec![];
        if matches!(fam, WeylFamily::Weighted { .. } | WeylFamily::Kernel { .. }) {
            let check = verify_theorem41(&fam).map_err(|e| InputError::Usage(e.to_string()))?;
            values["weight"] = json!(check.w.to_string());
            values["spinor_dim_computed"] = json!(check.computed);
            values["spinor_dim_formula"] = json!(check.prediction.consistent);
            values["spinor_dim_exchanged_parity"] = json!(check.prediction.swapped);
            values["parity_flag"] = json!(check.prediction.parity_differs());
            values["sub_annihilator"] = json!(check.sub_annihilator);
            if !check.agrees() {
                status = Status::Fail;
            } else if check.prediction.parity_differs() {
                status = Status::Flagged;
                notes.push(format!(
                    "exchanging the even/odd multiplicities would predict {}, computed {}",
                    check.prediction.swapped, check.computed
                ));
            }
        }
        let mut rec = Record::new(fam.name(), status, anchor, values);
        rec.notes = notes;
        records.push(rec);
    }
    Ok(Report::new("catalog", records))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Largest `r + s` for the Clifford suites; `n + 2` for the spinor suites.
    pub max_signature: usize,
    pub samples: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0,
            max_signature: 8,
            samples: 25,
        }
    }
}

pub fn cmd_selftest(config: &SelftestConfig) -> Result<Report, InputError> {
    if !(2..=8).contains(&config.max_signature) {
        return Err(InputError::Usage("--max-signature must be between 2 and 8".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = vec![];
    let suite = |name: &str, anchor: &str, o: audit::SuiteOutcome| {
        Record::new(
            name,
            pass_if(o.passed()),
            anchor,
            json!({"checked": o.checked, "failures": o.failures}),
        )
    };
    records.push(suite(
        "clifford_relations",
        "Φ(e_i)Φ(e_j) + Φ(e_j)Φ(e_i) = -2 g_ij Id",
        audit::clifford_relations(config.max_signature),
    ));
    records.push(suite(
        "lambda_homomorphism",
        "λ_* : so(1,n+1) → End(Δ) is a Lie algebra homomorphism",
        audit::lambda_homomorphism(&mut rng, 100, config.max_signature),
    ));
    records.push(suite(
        "clifford_products",
        "p·q (ψ ⊗ u(1)) = 2 ψ ⊗ u(1), e_1·p ψ = √2 (e_1 ψ_-) ⊗ u(1)",
        audit::proof_identities(config.max_signature - 2),
    ));

    let table: Vec<_> = audit::theorem41_families()
        .into_iter()
        .filter(|f| f.n() + 2 <= config.max_signature)
        .map(|f| verify_theorem41(&f))
        .collect::<Result<_, _>>()
        .map_err(|e| InputError::Usage(e.to_string()))?;
    let all_agree = table.iter().all(|c| c.agrees());
    let parity: Vec<String> = table
        .iter()
        .filter(|c| c.prediction.parity_differs())
        .map(|c| {
            format!(
                "{} n = {}: computed {}, exchanged rule {}",
                c.family, c.n, c.computed, c.prediction.swapped
            )
        })
        .collect();
    let status = if !all_agree {
        Status::Fail
    } else if parity.is_empty() {
        Status::Pass
    } else {
        Status::Flagged
    };
    let mut rec = Record::new(
        "spinor_dimension_table",
        status,
        "dimension of weighted parallel spinors for g^{w,h} and g^k",
        json!({"rows": table.iter().map(|c| json!({
            "family": c.family, "n": c.n, "weight": c.w.to_string(), "computed": c.computed,
            "formula": c.prediction.consistent, "exchanged_parity": c.prediction.swapped,
            "parity_flag": c.prediction.parity_differs(), "plus_part": c.in_plus_part,
        })).collect::<Vec<_>>()}),
    );
    rec.notes = parity;
    records.push(rec);

    let samples = audit::walker_samples(&mut rng, config.samples, 3, 3);
    let compat = audit::compatibility_audit(&samples);
    let eps = audit::common_epsilon(&compat);
    let bad: Vec<String> = compat
        .iter()
        .flat_map(|c| c.residuals.iter().map(move |r| format!("sample {}: {}", c.index, r)))
        .collect();
    records.push(Record::new(
        "compatibility_audit",
        pass_if(eps == Some(Epsilon::Minus2) && bad.is_empty()),
        ANCHOR_COMPAT,
        json!({"samples": compat.len(), "epsilon": eps.and_then(|e| e.value()), "residuals": bad}),
    ));

    let (checked, disagreements) = audit::closed_form_audit(&samples).map_err(InputError::Usage)?;
    let mut names: Vec<String> = disagreements.iter().map(|(_, c)| c.name.clone()).collect();
    names.sort();
    names.dedup();
    let mut rec = Record::new(
        "closed_form_audit",
        if disagreements.is_empty() {
            Status::Pass
        } else {
            Status::Flagged
        },
        ANCHOR_CLOSED,
        json!({"samples": samples.len(), "checked": checked, "disagreements": disagreements.len(), "components": names}),
    );
    if !disagreements.is_empty() {
        rec = rec.note("reference closed forms that the engine does not reproduce; the engine is exact");
    }
    records.push(rec);
    Ok(Report::new("selftest", records))
}
