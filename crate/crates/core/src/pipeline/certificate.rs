use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::base::build_base;
use super::conic::{choose_conic, conic_to_quadric, quadric_rows, splitting_type, ConicA};
use super::sextic::{build_fake_k3, build_scroll, build_sextic, build_threefold, nikulin_system};
use super::surface::{eight_lines, pick_surface};
use crate::error::{ForgeError, Result};
use crate::exactmath::binary::DISCRIMINANT_NORM;
use crate::exactmath::poly::{monomial_count, MONOMIAL_ORDER};
use crate::exactmath::rational::to_text;
use crate::grassmann::PLUECKER_ORDER;
use crate::niklattice::{
    adjoint_identities, enumerate_classes, named_class, nodal_classes, pair, signature, AdjointIdentities,
    SearchCertificate, Signature,
};

pub const CERT_VERSION: &str = "1";
pub const DEFAULT_RETRIES: u32 = 32;

/// Moduli count: conics in P^2, the projective Nikulin system, minus automorphisms of P^1.
pub const PGL2_DIM: i64 = 3;

const SPAN_NAMES: [&str; 7] = ["y0", "y1", "y2", "y3", "y4", "y5", "y6"];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Convention {
    pub monomial_order: String,
    pub pluecker_order: String,
    pub discriminant_norm: String,
}

impl Default for Convention {
    fn default() -> Self {
        Convention {
            monomial_order: MONOMIAL_ORDER.into(),
            pluecker_order: PLUECKER_ORDER.into(),
            discriminant_norm: DISCRIMINANT_NORM.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct StageRecord {
    pub name: String,
    /// The claim the stage establishes.
    pub paper_anchor: String,
    pub inputs_digest: String,
    pub verdict: bool,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LatticeRecord {
    pub classes: BTreeMap<String, [i64; 9]>,
    pub pairings: BTreeMap<String, i64>,
    pub adjoint: AdjointIdentities,
    pub signature: Signature,
    pub searches: Vec<SearchCertificate>,
    pub nodal_with_a_two: usize,
    /// Number of lines found geometrically, if that stage ran.
    pub geometric_lines: Option<usize>,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Certificate {
    pub version: String,
    pub seed: u64,
    pub convention: Convention,
    pub stages: Vec<StageRecord>,
    pub lattice: LatticeRecord,
    pub moduli_dimension: Option<i64>,
    pub verdict: bool,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    /// First failing stage, if any.
    pub fn failed_stage(&self) -> Option<&str> {
        self.stages.iter().find(|s| !s.verdict).map(|s| s.name.as_str())
    }
}

pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

/// Retry budgets for the two random choices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub conic: u32,
    pub surface: u32,
}

impl Budget {
    pub fn uniform(k: u32) -> Self {
        Budget { conic: k, surface: k }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::uniform(DEFAULT_RETRIES)
    }
}

struct Recorder {
    stages: Vec<StageRecord>,
}

impl Recorder {
    fn last_passed(&self) -> bool {
        self.stages.last().is_some_and(|s| s.verdict)
    }

    /// Records a stage and returns its value when it passed.
    fn stage<T>(
        &mut self,
        name: &str,
        anchor: &str,
        inputs: Value,
        run: impl FnOnce() -> Result<(T, Value, bool)>,
    ) -> Option<T> {
        let inputs_digest = digest(&inputs);
        let (out, data, verdict) = match run() {
            Ok((v, data, ok)) => (ok.then_some(v), data, ok),
            Err(e) => (None, json!({ "error": e.to_string() }), false),
        };
        let data = match data {
            Value::Object(mut m) => {
                m.insert("inputs".into(), inputs);
                Value::Object(m)
            }
            other => json!({ "inputs": inputs, "result": other }),
        };
        self.stages.push(StageRecord {
            name: name.into(),
            paper_anchor: anchor.into(),
            inputs_digest,
            verdict,
            data,
        });
        out
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn coefficients(a: &ConicA) -> Vec<String> {
    a.forms().iter().flat_map(|f| f.coeffs().iter().map(to_text)).collect()
}

/// Runs every stage for `seed` and assembles the certificate.
pub fn run_full(seed: u64, budget: Budget) -> Certificate {
    let mut rec = Recorder { stages: Vec::new() };
    let geometry = run_geometry(&mut rec, seed, budget);
    let lattice = lattice_record(geometry.lines);
    let moduli_dimension = geometry
        .nikulin_dim
        .map(|n| monomial_count(3, 2) as i64 - 1 + n as i64 - PGL2_DIM);
    let verdict = rec.stages.iter().all(|s| s.verdict) && lattice.verdict && moduli_dimension == Some(11);
    Certificate {
        version: CERT_VERSION.into(),
        seed,
        convention: Convention::default(),
        stages: rec.stages,
        lattice,
        moduli_dimension,
        verdict,
    }
}

#[derive(Default)]
struct GeometryOutcome {
    nikulin_dim: Option<usize>,
    lines: Option<usize>,
}

fn run_geometry(rec: &mut Recorder, seed: u64, budget: Budget) -> GeometryOutcome {
    let mut out = GeometryOutcome::default();
    let Some(base) = rec.stage(
        "build_base",
        "the quartic lies on the secant cubic and the bisecant cubics land in G(1,4)",
        json!({ "quartic_degree": 4 }),
        || {
            let b = build_base()?;
            let data = json!({
                "report": to_value(&b.report),
                "secant_cubic": b.v.to_string_with(&["x0", "x1", "x2", "x3", "x4"]),
                "diagonal_conic": b.d.to_string_with(&["a", "b", "c"]),
            });
            let ok = b.report.passed();
            Ok((b, data, ok))
        },
    ) else {
        return out;
    };

    let Some(Some(a)) = rec.stage(
        "choose_conic",
        "a general conic: no base point, smooth, transversal to the diagonal conic",
        json!({ "seed": seed, "retry_budget": budget.conic, "rng": "ChaCha8Rng::seed_from_u64, stream 0" }),
        || {
            let choice = choose_conic(seed, budget.conic);
            let mut data = json!({ "attempts": to_value(&choice.attempts) });
            match &choice.conic {
                None => data["error"] = "retry budget exhausted".into(),
                Some(a) => {
                    data["conic"] = json!({
                        "coefficients": coefficients(a),
                        "implicit": a.implicit().to_string_with(&["a", "b", "c"]),
                        "diagonal_restriction": a.on_diagonal().coeffs().iter().map(to_text).collect::<Vec<_>>(),
                        "diagonal_discriminant": to_text(a.diagonal_disc()),
                    })
                }
            }
            let ok = choice.conic.is_some();
            Ok((choice.conic, data, ok))
        },
    ) else {
        return out;
    };
    let conic_inputs = json!({ "conic": coefficients(&a) });

    rec.stage(
        "splitting_type",
        "the restricted tangent bundle is balanced, O(3)+O(3), with eight sections",
        conic_inputs.clone(),
        || {
            let s = splitting_type(&a)?;
            let ok = s.pair == (3, 3) && s.h0 == 8;
            Ok(((), to_value(&s), ok))
        },
    );
    if !rec.last_passed() {
        return out;
    }

    let Some(q) = rec.stage(
        "conic_to_quadric",
        "exactly one quadric through the quartic contains all bisecant lines over the conic, and it is smooth",
        conic_inputs.clone(),
        || {
            let q = conic_to_quadric(&a, &base)?;
            let data = json!({
                "quadric": quadric_rows(&q.quadric),
                "determinant": to_text(&q.quadric.det()),
                "solution_dim": q.solution_dim,
                "cross_check_dim": q.cross_check_dim,
                "cross_check_agrees": q.cross_check_agrees,
            });
            let ok = q.solution_dim == 1 && q.cross_check_agrees;
            Ok((q.quadric, data, ok))
        },
    ) else {
        return out;
    };
    let quadric_inputs = json!({ "quadric": quadric_rows(&q) });

    let Some(x) = rec.stage(
        "build_sextic",
        "the bisecant image of the conic is a rational normal sextic spanning a P^6",
        conic_inputs.clone(),
        || {
            let x = build_sextic(&a, &base)?;
            let data = json!({
                "report": to_value(&x.report),
                "components": x.components.iter().map(|c| c.coeffs().iter().map(to_text).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            let ok = x.report.passed();
            Ok((x, data, ok))
        },
    ) else {
        return out;
    };
    let net_inputs = json!({ "hyperplanes": x.report.hyperplanes });

    let Some(t) = rec.stage(
        "build_threefold",
        "the span meets G(1,4) in a smooth threefold of degree 5 with Hilbert polynomial (5d^3+15d^2+16d+6)/6",
        json!({ "hyperplanes": x.report.hyperplanes, "seed": seed, "rng": "stream 2" }),
        || {
            let t = build_threefold(&x, seed)?;
            let ok = t.report.passed();
            let data = to_value(&t.report);
            Ok((t, data, ok))
        },
    ) else {
        return out;
    };

    rec.stage(
        "build_scroll",
        "the quartic lies in the singular locus of the scroll cut by the cubic and the quadric",
        quadric_inputs.clone(),
        || {
            let r = build_scroll(&q, &base)?;
            let ok = r.passed();
            Ok(((), to_value(&r), ok))
        },
    );
    if !rec.last_passed() {
        return out;
    }

    rec.stage(
        "build_fake_k3",
        "the compound quadric cuts a degree-10 surface singular along the sextic",
        json!({ "quadric": quadric_rows(&q), "hyperplanes": x.report.hyperplanes }),
        || {
            let k = build_fake_k3(&q, &a, &x, &t)?;
            let ok = k.report.passed();
            Ok(((), to_value(&k.report), ok))
        },
    );
    if !rec.last_passed() {
        return out;
    }

    let Some(n) = rec.stage(
        "nikulin_system",
        "quadrics through the sextic modulo the threefold form a 10-dimensional space",
        net_inputs.clone(),
        || {
            let n = nikulin_system(&t)?;
            let conics = monomial_count(3, 2) as i64 - 1;
            let data = json!({
                "report": to_value(&n.report),
                "moduli": {
                    "conics": conics,
                    "system": n.report.projective_dim,
                    "reparametrizations": PGL2_DIM,
                    "total": conics + n.report.projective_dim as i64 - PGL2_DIM,
                },
            });
            let ok = n.report.passed();
            Ok((n, data, ok))
        },
    ) else {
        return out;
    };
    out.nikulin_dim = Some(n.report.projective_dim);

    let Some(Some(s)) = rec.stage(
        "pick_surface",
        "a general member of the system cuts a surface on the threefold smooth along the sextic",
        json!({ "seed": seed, "retry_budget": budget.surface, "hyperplanes": x.report.hyperplanes, "rng": "streams 1 and 3" }),
        || {
            let choice = pick_surface(&n, &t, &x, seed, budget.surface);
            let mut data = json!({ "attempts": to_value(&choice.attempts) });
            match &choice.surface {
                None => data["error"] = "retry budget exhausted".into(),
                Some(s) => {
                    data["surface"] = json!({
                        "equation": s.g.to_string_with(&SPAN_NAMES),
                        "report": to_value(&s.report),
                    })
                }
            }
            let ok = choice.surface.is_some();
            Ok((choice.surface, data, ok))
        },
    ) else {
        return out;
    };

    rec.stage(
        "eight_lines",
        "the surface carries eight pairwise disjoint lines centered on the quartic",
        json!({ "conic": coefficients(&a), "surface": s.g.to_string_with(&SPAN_NAMES) }),
        || {
            let l = eight_lines(&s, &a)?;
            let ok = l.report.passed();
            out.lines = Some(l.report.degree);
            Ok(((), to_value(&l.report), ok))
        },
    );
    out
}

fn lattice_record(geometric_lines: Option<usize>) -> LatticeRecord {
    let names = ["L", "M", "H", "A"];
    let mut classes = BTreeMap::new();
    for n in names {
        classes.insert(n.to_string(), named_class(n).expect("named").coords());
    }
    for (i, n) in nodal_classes().iter().enumerate() {
        classes.insert(format!("N{}", i + 1), n.coords());
    }
    let c = |n: &str| named_class(n).expect("named");
    let mut pairings = BTreeMap::new();
    for (p, q) in [("L", "L"), ("H", "H"), ("A", "A"), ("A", "H"), ("M", "M"), ("L", "M")] {
        pairings.insert(format!("{p}.{q}"), pair(&c(p), &c(q)));
    }
    for (i, n) in nodal_classes().iter().enumerate() {
        pairings.insert(format!("A.N{}", i + 1), pair(&c("A"), n));
        pairings.insert(format!("H.N{}", i + 1), pair(&c("H"), n));
        pairings.insert(format!("N{0}.N{0}", i + 1), pair(n, n));
    }
    let adjoint = adjoint_identities();
    let signature = signature().expect("nondegenerate lattice");
    let searches: Vec<SearchCertificate> = [(0, 3), (2, 5), (0, 4), (-2, 6)]
        .iter()
        .map(|&(n, h)| enumerate_classes(n, h).expect("non-negative degree").1)
        .collect();
    let nodal_with_a_two = nodal_classes().iter().filter(|n| pair(&c("A"), n) == 2).count();
    let exclusions_hold = searches[..3].iter().all(|s| s.matches == 0) && searches[3].matches == 1;
    let expected = [
        ("A.A", -2),
        ("A.H", 6),
        ("H.H", 10),
        ("L.L", 14),
    ];
    let verdict = adjoint.holds
        && (signature.positive, signature.negative) == (1, 8)
        && exclusions_hold
        && nodal_with_a_two == 8
        && expected.iter().all(|(k, v)| pairings[*k] == *v)
        && geometric_lines.is_none_or(|l| l == nodal_with_a_two);
    LatticeRecord {
        classes,
        pairings,
        adjoint,
        signature,
        searches,
        nodal_with_a_two,
        geometric_lines,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub reproduced: bool,
    pub recorded_verdict: bool,
    pub mismatches: Vec<String>,
}

fn budget_of(v: &Value, stage: &str) -> Option<u32> {
    v["stages"]
        .as_array()?
        .iter()
        .find(|s| s["name"] == stage)?
        .get("data")?
        .get("inputs")?
        .get("retry_budget")?
        .as_u64()
        .and_then(|b| u32::try_from(b).ok())
}

fn diff(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    if out.len() >= 20 {
        return;
    }
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                match (x.get(k), y.get(k)) {
                    (Some(p), Some(q)) => diff(&format!("{path}.{k}"), p, q, out),
                    _ => out.push(format!("{path}.{k}: present in only one certificate")),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (p, q)) in x.iter().zip(y).enumerate() {
                diff(&format!("{path}[{i}]"), p, q, out);
            }
        }
        _ if a != b => out.push(format!("{path}: recorded {a}, recomputed {b}")),
        _ => {}
    }
}

/// Recomputes a certificate from its recorded seed and retry budgets and compares every field.
pub fn verify(text: &str) -> Result<VerifyOutcome> {
    let recorded: Value = serde_json::from_str(text).map_err(|e| ForgeError::Parse(e.to_string()))?;
    let seed = recorded["seed"]
        .as_u64()
        .ok_or_else(|| ForgeError::Parse("certificate has no integer seed".into()))?;
    let budget = Budget {
        conic: budget_of(&recorded, "choose_conic").unwrap_or(DEFAULT_RETRIES),
        surface: budget_of(&recorded, "pick_surface").unwrap_or(DEFAULT_RETRIES),
    };
    let fresh = serde_json::to_value(run_full(seed, budget)).expect("certificate serializes");
    let mut mismatches = Vec::new();
    diff("$", &recorded, &fresh, &mut mismatches);
    Ok(VerifyOutcome {
        reproduced: mismatches.is_empty(),
        recorded_verdict: recorded["verdict"].as_bool().unwrap_or(false),
        mismatches,
    })
}
