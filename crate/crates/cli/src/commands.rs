//! One function per subcommand. Each returns the report and its exit code.

use hypercal_core::affine::validate_affine;
use hypercal_core::comass::comass_sample;
use hypercal_core::double::{build_double, DoubleModel, double_psi, fibration_metric, hkt_scan, psi_report, theta_pushforward, PsiReport, ThetaReport};
use hypercal_core::lie::{ce_cohomology, hkt_test, hkt_test_with, LieModel};
use hypercal_core::metric::{quaternionic_selection, standard_volume_form, HyperhermitianMetric};
use hypercal_core::quaternionic::weight_decompose;
use hypercal_core::{Error, Matrix};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::exit;
use crate::json::{form_to_json, matrix_to_json, scalar_to_json};
use crate::model_file::{export, load, load_metric, load_value, Model};
use crate::report::{witness, Check, Report};

pub struct Done {
    pub report: Report,
    pub code: u8,
}

impl Done {
    fn from_checks(report: Report) -> Self {
        let code = if report.passed() { exit::PASS } else { exit::FAILURE };
        Done { report, code }
    }
}

/// Where `hkt` takes its metrics from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricSource {
    Attached,
    File(String),
    Random { seed: u64, samples: usize },
}

impl std::str::FromStr for MetricSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let Some(rest) = s.strip_prefix("random:") else {
            return Ok(MetricSource::File(s.to_string()));
        };
        let bad = || format!("expected random:SEED[:N], got {s:?}");
        let mut parts = rest.split(':');
        let seed = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        let samples = match parts.next() {
            Some(p) => p.parse().map_err(|_| bad())?,
            None => 1,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(MetricSource::Random { seed, samples })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Hkt,
    NotHkt,
}

/// Loads a model and starts a report with its validation checks.
/// `None` means validation failed and the report is final.
fn start(command: &str, source: &str) -> Result<(Report, Option<Model>), CliError> {
    let loaded = load(source)?;
    let mut report = Report::new(command);
    report.model = Some(loaded.id);
    report.checks = loaded.checks;
    Ok((report, loaded.model))
}

fn hypercomplex(m: &Model) -> Result<&LieModel, CliError> {
    m.hypercomplex().ok_or_else(|| CliError::invalid("structure", Error::MissingStructure))
}

fn core<T>(check: &str, r: hypercal_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::invalid(check, e))
}

/// The attached metric, or the standard one.
fn metric_of(m: &LieModel) -> Result<(HyperhermitianMetric, &'static str), CliError> {
    match m.metric() {
        Some(g) => Ok((g.clone(), "attached")),
        None => Ok((core("metric", HyperhermitianMetric::standard(m.structure().expect("hypercomplex")))?, "standard")),
    }
}

/// Runs `body` on a loaded model. Failures after loading keep the model
/// identity and the checks gathered so far.
fn with_model(
    command: &str,
    source: &str,
    body: impl FnOnce(&mut Report, &Model) -> Result<Option<u8>, CliError>,
) -> Result<Done, CliError> {
    let (mut report, model) = start(command, source)?;
    let Some(model) = model else {
        return Ok(Done::from_checks(report));
    };
    match body(&mut report, &model) {
        Ok(code) => {
            let mut done = Done::from_checks(report);
            if let Some(c) = code {
                done.code = c;
            }
            Ok(done)
        }
        Err(e) => {
            let code = e.exit_code();
            report.error = Some(crate::error_json(&e));
            Ok(Done { report, code })
        }
    }
}

fn double_metric(d: &DoubleModel) -> Result<HyperhermitianMetric, CliError> {
    match d.model.metric() {
        Some(h) => Ok(h.clone()),
        None => core("fibration_metric", fibration_metric(d, &Matrix::identity(2 * d.n))),
    }
}

pub fn validate(source: &str) -> Result<Done, CliError> {
    with_model("validate", source, |report, model| {
        report.result = json!({"kind": model.kind(), "name": model.name(), "dim": model.algebra().dim()});
        Ok(None)
    })
}

fn weights_json(m: &LieModel, k: usize) -> Result<Value, CliError> {
    let w = core("weights", weight_decompose(k, m.structure().expect("hypercomplex")))?;
    let table = |t: std::collections::BTreeMap<usize, usize>| {
        Value::Object(t.into_iter().map(|(s, d)| (s.to_string(), json!(d))).collect())
    };
    Ok(json!({"degree": k, "max_weight": w.max_weight(), "multiplicities": table(w.multiplicities()), "copies": table(w.copies())}))
}

pub fn weights(source: &str, degree: usize) -> Result<Done, CliError> {
    with_model("weights", source, |report, model| {
        let m = hypercomplex(model)?;
        report.result = weights_json(m, degree)?;
        report.checks.push(Check::pass("clebsch_gordan"));
        Ok(None)
    })
}

fn verdict_json(index: usize, defect: usize, hyperkahler: bool) -> Value {
    json!({"index": index, "hkt": defect == 0, "defect": defect, "hyperkahler": hyperkahler})
}

pub fn hkt(source: &str, metric: &MetricSource, expect: Option<Expect>) -> Result<Done, CliError> {
    with_model("hkt", source, |report, model| {
        let m = hypercomplex(model)?;
        let q = m.structure().expect("hypercomplex");
        let (verdicts, found, mut result) = match metric {
            MetricSource::Random { seed, samples } => {
                let scan = core("hkt", hkt_scan(m, *samples, *seed))?;
                let verdicts: Vec<Value> = scan.defects.iter().enumerate().map(|(i, &d)| json!({"index": i, "hkt": d == 0, "defect": d})).collect();
                let result = json!({"metric": "random", "seed": seed, "samples": samples, "min_defect": scan.min_defect()});
                (verdicts, scan.hkt_found, result)
            }
            MetricSource::File(path) => {
                let g = core("metric", HyperhermitianMetric::new(q, load_metric(path, m.dim())?))?;
                let r = core("hkt", hkt_test_with(m, q, &g))?;
                (vec![verdict_json(0, r.defect(), r.hyperkahler)], usize::from(r.hkt), json!({"metric": path}))
            }
            MetricSource::Attached => {
                if m.metric().is_none() {
                    return Err(CliError::invalid("metric", Error::MissingMetric));
                }
                let r = core("hkt", hkt_test(m))?;
                (vec![verdict_json(0, r.defect(), r.hyperkahler)], usize::from(r.hkt), json!({"metric": "attached"}))
            }
        };
        let total = verdicts.len();
        result["hkt_found"] = json!(found);
        result["verdicts"] = Value::Array(verdicts);
        report.checks.push(Check::pass("hkt_criteria_agree"));
        let mut code = None;
        if let Some(e) = expect {
            let met = match e {
                Expect::Hkt => found == total,
                Expect::NotHkt => found == 0,
            };
            let name = if e == Expect::Hkt { "hkt" } else { "not-hkt" };
            result["expect"] = json!(name);
            report.checks.push(Check::from_bool("expect", met, || json!({"expected": name, "hkt_found": found, "samples": total})));
            if !met {
                code = Some(exit::EXPECT);
            }
        }
        report.result = result;
        Ok(code)
    })
}

pub fn double(source: &str, out: Option<&str>) -> Result<Done, CliError> {
    with_model("double", source, |report, model| {
        let Model::Affine(a) = model else {
            return Err(CliError::Unsupported(format!("double needs an affine_model, got {}", model.kind())));
        };
        let built = build_double(a).and_then(|mut d| {
            let h = fibration_metric(&d, &Matrix::identity(a.dim()))?;
            d.model = d.model.with_metric(h)?;
            Ok(d)
        });
        let d = match built {
            Ok(d) => d,
            Err(e) => {
                report.checks.push(Check::fail("double_build", witness(&e)));
                return Ok(None);
            }
        };
        report.checks.push(Check::pass("double_build"));
        let doc = export(&Model::Double(d));
        let reloaded = load_value(&doc)?;
        report.checks.extend(reloaded.checks.into_iter().map(|c| Check { name: format!("rebuilt.{}", c.name), ..c }));
        let mut result = json!({"dim": doc["dim"], "name": doc["name"], "sha256": reloaded.id.sha256});
        match out {
            Some(path) => {
                let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
                std::fs::write(path, text).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })?;
                result["output"] = json!(path);
            }
            None => result["document"] = doc,
        }
        report.result = result;
        Ok(None)
    })
}

fn psi_of(model: &Model) -> Result<PsiReport, CliError> {
    match model {
        Model::Double(d) => core("psi", double_psi(d)),
        _ => {
            let m = hypercomplex(model)?;
            let q = m.structure().expect("hypercomplex");
            let vol = core("volume_form", quaternionic_selection(q).and_then(|s| standard_volume_form(q, &s)))?;
            core("psi", psi_report(m, &vol))
        }
    }
}

pub fn psi(source: &str) -> Result<Done, CliError> {
    with_model("psi", source, |report, model| {
        let p = psi_of(model)?;
        report.checks.push(Check::from_bool("psi_closed", p.closed, || json!({"message": "dΨ is nonzero"})));
        report.result = json!({
            "psi": form_to_json(&p.calibration.psi),
            "closed": p.closed,
            "lagrangian_pairing": scalar_to_json(&p.lagrangian_pairing),
        });
        Ok(None)
    })
}

/// Relative slack on the upper bound, and the fraction of the Lagrangian
/// value the maximum must reach.
pub const COMASS_SLACK: f64 = 1e-9;
pub const COMASS_REACH: f64 = 0.99;

pub fn comass(source: &str, samples: usize, seed: u64) -> Result<Done, CliError> {
    with_model("comass", source, |report, model| {
        let p = psi_of(model)?;
        let m = hypercomplex(model)?;
        let (g, which) = metric_of(m)?;
        let r = core("comass", comass_sample(&p.calibration.psi, g.matrix(), m.structure().expect("hypercomplex"), samples, seed))?;
        let bound = r.lagrangian_value * (1.0 + COMASS_SLACK);
        report.checks.push(Check::from_bool("comass_upper_bound", r.max <= bound, || json!({"max": r.max, "bound": bound})));
        report.checks.push(Check::from_bool("comass_reaches_lagrangian", r.ratio >= COMASS_REACH, || json!({"ratio": r.ratio})));
        report.result = json!({
            "metric": which,
            "samples": r.samples,
            "seed": r.seed,
            "max": r.max,
            "lagrangian_value": r.lagrangian_value,
            "ratio": r.ratio,
            "random_max": r.random_max,
            "resampled": r.resampled,
            "argmax": r.argmax,
        });
        Ok(None)
    })
}

fn betti(m: &LieModel, k: usize) -> Result<usize, CliError> {
    core("cohomology", ce_cohomology(m, k))
}

pub fn cohomology(source: &str, degree: Option<usize>) -> Result<Done, CliError> {
    with_model("cohomology", source, |report, model| {
        let m = model.algebra();
        report.result = match degree {
            Some(k) => json!({"degree": k, "betti": betti(m, k)?}),
            None => json!({"betti": (0..=m.dim()).map(|k| betti(m, k)).collect::<Result<Vec<_>, _>>()?}),
        };
        Ok(None)
    })
}

fn theta_json(t: &ThetaReport) -> Value {
    json!({
        "theta": form_to_json(&t.theta),
        "type_11": t.type_11,
        "theta_closed": t.theta_closed,
        "big_theta_closed": t.big_theta_closed,
        "hermitian": matrix_to_json(&t.hermitian),
        "theta_positive": t.positive,
    })
}

/// Default scan for `report`.
pub const REPORT_SEED: u64 = 7;

pub fn full_report(source: &str, samples: usize) -> Result<Done, CliError> {
    with_model("report", source, |report, model| {
        let m = model.algebra();
        let mut result = Map::new();
        result.insert("kind".into(), json!(model.kind()));
        result.insert("dim".into(), json!(m.dim()));
        result.insert("b1".into(), json!(betti(m, 1)?));
        result.insert("b2".into(), json!(betti(m, 2)?));
        if let Model::Affine(a) = model {
            let r = core("affine", validate_affine(a))?;
            result.insert("integer_monodromy".into(), json!(r.integer_monodromy));
        }
        if let Some(h) = model.hypercomplex() {
            let n = h.dim() / 4;
            let mut weights = Map::new();
            for k in [1, 2, 2 * n] {
                weights.insert(k.to_string(), weights_json(h, k)?);
            }
            report.checks.push(Check::pass("clebsch_gordan"));
            result.insert("weights".into(), Value::Object(weights));
            let p = psi_of(model)?;
            result.insert("psi_closed".into(), json!(p.closed));
            result.insert("lagrangian_pairing".into(), scalar_to_json(&p.lagrangian_pairing));
            let scan = core("hkt", hkt_scan(h, samples, REPORT_SEED))?;
            report.checks.push(Check::pass("hkt_criteria_agree"));
            result.insert("hkt_seed".into(), json!(REPORT_SEED));
            result.insert("hkt_samples".into(), json!(samples));
            result.insert("hkt_found".into(), json!(scan.hkt_found));
            result.insert("min_defect".into(), json!(scan.min_defect()));
        }
        if let Model::Double(d) = model {
            let h = double_metric(d)?;
            let t = core("theta", theta_pushforward(d, &h))?;
            if let Value::Object(map) = theta_json(&t) {
                for key in ["theta_positive", "theta_closed", "big_theta_closed", "type_11"] {
                    result.insert(key.into(), map[key].clone());
                }
            }
        }
        report.result = Value::Object(result);
        Ok(None)
    })
}

pub fn theta(source: &str) -> Result<Done, CliError> {
    with_model("theta", source, |report, model| {
        let Model::Double(d) = model else {
            return Err(CliError::Unsupported(format!("theta needs a double_model, got {}", model.kind())));
        };
        let h = double_metric(d)?;
        let t = core("theta", theta_pushforward(d, &h))?;
        report.checks.push(Check::from_bool("theta_type_11", t.type_11, || json!({"message": "θ is not of type (1,1)"})));
        report.result = theta_json(&t);
        Ok(None)
    })
}

pub fn export_model(source: &str, out: Option<&str>) -> Result<Done, CliError> {
    with_model("export", source, |report, model| {
        let doc = export(model);
        match out {
            Some(path) => {
                let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
                std::fs::write(path, text).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })?;
                report.result = json!({"output": path});
            }
            None => report.result = json!({"document": doc}),
        }
        Ok(None)
    })
}
