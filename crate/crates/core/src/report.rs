//! End-to-end verification pipeline and its newline-delimited JSON report.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::builtin::BuiltinSpec;
use crate::error::Result;
use crate::lattice::Polytope;
use crate::partition::{
    exterior_partition, generic_point, h_from_partition, interior_partition, k_from_partition,
    vector_set,
};
use crate::sequences::{self, ApexTrial, SequenceMethod};
use crate::triangulation::{
    is_simplicial_complex, pseudomanifold_check, verify_pointed, PointedTriangulation,
};
use crate::vectors::{self, VectorSet};

/// A polytope to run, with its builtin description when it has one.
#[derive(Debug, Clone)]
pub struct Subject {
    pub polytope: Polytope,
    pub spec: Option<BuiltinSpec>,
}

impl Subject {
    pub fn builtin(spec: BuiltinSpec) -> Result<Self> {
        Ok(Subject {
            polytope: spec.build()?,
            spec: Some(spec),
        })
    }
}

impl From<Polytope> for Subject {
    fn from(polytope: Polytope) -> Self {
        Subject {
            polytope,
            spec: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimRecord {
    pub record: &'static str,
    pub claim: &'static str,
    pub polytope: String,
    pub params: Value,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VectorsRecord {
    pub record: &'static str,
    pub polytope: String,
    pub dim: usize,
    pub seed: u64,
    pub apex: usize,
    pub functional: Value,
    pub f: Vec<i64>,
    pub h: Vec<i64>,
    pub k: Vec<i64>,
    pub e: Vec<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub vectors: Option<VectorsRecord>,
    pub claims: Vec<ClaimRecord>,
    pub observations: Vec<Value>,
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub seed: u64,
    pub n_max: usize,
    /// Generic points per triangulation (seeds `seed`, `seed + 1`, ...).
    pub points: u64,
    pub apex_trials: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            seed: 0,
            n_max: 15,
            points: 3,
            apex_trials: false,
        }
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.claims.iter().filter(|c| !c.passed)
    }

    /// One JSON object per line: the vectors, then claims, then observations.
    pub fn to_ndjson(&self) -> String {
        let mut out = String::new();
        let mut push = |v: String| {
            out.push_str(&v);
            out.push('\n');
        };
        if let Some(v) = &self.vectors {
            push(serde_json::to_string(v).expect("serializable"));
        }
        for c in &self.claims {
            push(serde_json::to_string(c).expect("serializable"));
        }
        for o in &self.observations {
            push(serde_json::to_string(o).expect("serializable"));
        }
        out
    }
}

pub fn summary_record(reports: &[Report]) -> Value {
    let claims: usize = reports.iter().map(|r| r.claims.len()).sum();
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    json!({
        "record": "summary",
        "polytopes": reports.len(),
        "claims": claims,
        "failed": failed,
        "passed": failed == 0,
    })
}

fn number(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer"))
}

/// First `n` at which the named sequences disagree, with every value there.
pub fn first_disagreement(seqs: &[(&str, &[BigInt])]) -> Option<Value> {
    let len = seqs.iter().map(|(_, s)| s.len()).min().unwrap_or(0);
    (0..len).find_map(|n| {
        let first = &seqs[0].1[n];
        if seqs.iter().all(|(_, s)| &s[n] == first) {
            return None;
        }
        let values: serde_json::Map<String, Value> = seqs
            .iter()
            .map(|(name, s)| (name.to_string(), number(&s[n])))
            .collect();
        Some(json!({ "n": n, "values": values }))
    })
}

struct Recorder<'a> {
    polytope: &'a str,
    claims: Vec<ClaimRecord>,
}

impl Recorder<'_> {
    fn claim(&mut self, claim: &'static str, params: Value, witness: Option<Value>) {
        self.claims.push(ClaimRecord {
            record: "claim",
            claim,
            polytope: self.polytope.to_string(),
            params,
            passed: witness.is_none(),
            witness,
        });
    }

    fn check(
        &mut self,
        claim: &'static str,
        params: Value,
        ok: bool,
        witness: impl FnOnce() -> Value,
    ) {
        let w = if ok { None } else { Some(witness()) };
        self.claim(claim, params, w);
    }
}

/// Triangulates, partitions from several generic points, computes all vectors
/// both ways and all sequences by every method, recording each cross-check.
/// Stage errors become failed `stage` claims.
pub fn run_pipeline(subject: &Subject, opts: PipelineOptions) -> Report {
    let name = subject.polytope.name().to_string();
    let mut rec = Recorder {
        polytope: &name,
        claims: Vec::new(),
    };
    let mut report = Report::default();
    if let Err(e) = stages(subject, opts, &mut rec, &mut report) {
        rec.claim("stage", json!({}), Some(json!({ "error": e.to_string() })));
    }
    report.claims = rec.claims;
    report
}

fn stages(
    subject: &Subject,
    opts: PipelineOptions,
    rec: &mut Recorder,
    report: &mut Report,
) -> Result<()> {
    let p = &subject.polytope;
    let d = p.dim();
    let n_max = opts.n_max;
    let t = PointedTriangulation::new(p, opts.seed)?;

    let cert = verify_pointed(&t);
    rec.check("pointed-triangulation", json!({}), cert.passed, || {
        json!(cert.violation)
    });
    rec.check(
        "simplicial-complex",
        json!({}),
        is_simplicial_complex(&t),
        || json!({}),
    );
    let pm = pseudomanifold_check(&t);
    rec.check(
        "pseudomanifold",
        json!({ "ridges": pm.ridges_checked }),
        pm.passed,
        || json!(pm.violation),
    );

    let split = t.split_boundary_interior();
    let f = vectors::f_vector(t.simplices(), d);
    let h_f = vectors::h_from_f(&f, d);
    let mut first: Option<VectorSet> = None;

    for s in 0..opts.points {
        let point_seed = opts.seed.wrapping_add(s);
        let params = json!({ "point_seed": point_seed });
        let x = generic_point(&t, point_seed)?;
        rec.check(
            "generic-point",
            params.clone(),
            x.certificate().passed(),
            || json!(x.certificate()),
        );

        let ext = exterior_partition(&t, &x)?;
        let ext_cert = ext.verify(t.simplices());
        rec.check(
            "exterior-partition",
            params.clone(),
            ext_cert.passed,
            || json!(ext_cert),
        );
        let int = interior_partition(&t, &x)?;
        let int_cert = int.verify(&split.interior);
        let touches_boundary = int
            .intervals
            .iter()
            .flat_map(|i| i.elements())
            .find(|s| split.boundary.contains(s));
        rec.check(
            "interior-partition",
            params.clone(),
            int_cert.passed && touches_boundary.is_none(),
            || json!({ "certificate": int_cert, "boundary_element": touches_boundary }),
        );
        if !(ext_cert.passed && int_cert.passed) {
            continue;
        }
        let h = h_from_partition(&ext.verified(t.simplices())?)?;
        let k = k_from_partition(&int.verified(&split.interior)?)?;
        rec.check(
            "h-partition-matches-f",
            params.clone(),
            h == h_f,
            || json!({ "partition": h, "from_f": h_f }),
        );
        let reversed = vectors::k_from_h(&h);
        rec.check(
            "k-is-reversed-h",
            params.clone(),
            k == reversed,
            || json!({ "k": k, "reversed_h": reversed }),
        );
        if let Some(v) = &first {
            rec.check(
                "h-partition-invariance",
                params.clone(),
                v.h == h && v.k == k,
                || json!({ "h": h, "k": k, "first_h": v.h, "first_k": v.k }),
            );
        } else {
            first = Some(vector_set(&t, &x)?);
        }
    }
    let Some(v) = first else { return Ok(()) };

    report.vectors = Some(VectorsRecord {
        record: "vectors",
        polytope: p.name().to_string(),
        dim: d,
        seed: opts.seed,
        apex: t.apex(),
        functional: json!(t.apexes().functional()),
        f: v.f.clone(),
        h: v.h.clone(),
        k: v.k.clone(),
        e: v.e.clone(),
    });

    let tail_zero = v.h[d] == 0 && v.h[d + 1] == 0;
    rec.check("top-h-vanish", json!({}), tail_zero, || json!({ "h": v.h }));
    rec.check(
        "h-normalized",
        json!({}),
        v.h[0] == 1 && v.h.iter().all(|&x| x >= 0),
        || json!({ "h": v.h }),
    );
    let e_k = vectors::e_from_k(&v.k, d);
    rec.check(
        "e-from-k",
        json!({}),
        e_k == v.e,
        || json!({ "e": v.e, "from_k": e_k }),
    );
    rec.check(
        "f-from-h",
        json!({}),
        vectors::f_from_h(&v.h, d) == v.f,
        || json!({ "f": v.f, "h": v.h }),
    );
    let chi = vectors::euler_characteristic(&v.f);
    rec.check(
        "euler-characteristic",
        json!({ "complex": "C_P" }),
        chi == 1,
        || json!({ "chi": chi }),
    );
    if d >= 1 {
        let link = t.link_of_apex();
        let lf = vectors::f_vector(&link, d - 1);
        let lh = vectors::h_from_f(&lf, d - 1);
        let lchi = vectors::euler_characteristic(&lf);
        rec.check(
            "link-h-vector",
            json!({}),
            lh[..] == v.h[..=d],
            || json!({ "link_h": lh, "h": v.h }),
        );
        rec.check(
            "euler-characteristic",
            json!({ "complex": "link" }),
            lchi == 1,
            || json!({ "chi": lchi }),
        );
        let bf = vectors::f_vector(&split.boundary, d - 1);
        let bchi = vectors::euler_characteristic(&bf);
        let sphere = if d % 2 == 1 { 2 } else { 0 };
        rec.check(
            "euler-characteristic",
            json!({ "complex": "boundary" }),
            bchi == sphere,
            || json!({ "chi": bchi }),
        );
    }

    let params = json!({ "n_max": n_max });
    let run = |m: SequenceMethod, interior: bool| {
        sequences::sequence(&t, &v, m, interior, n_max).map(|r| r.values)
    };
    let rec_ext = run(SequenceMethod::Recursive, false)?;
    let sum_ext = run(SequenceMethod::SimplexSum, false)?;
    let h_ext = run(SequenceMethod::HDecomposition, false)?;
    let w = first_disagreement(&[
        ("recursive", &rec_ext),
        ("simplex_sum", &sum_ext),
        ("h_decomposition", &h_ext),
    ]);
    rec.claim("sequence-agreement", params.clone(), w);

    let rec_int = run(SequenceMethod::Recursive, true)?;
    let sum_int = run(SequenceMethod::SimplexSum, true)?;
    let k_int = run(SequenceMethod::KDecomposition, true)?;
    let hr_int = run(SequenceMethod::HReversed, true)?;
    let w = first_disagreement(&[
        ("recursive", &rec_int),
        ("simplex_sum", &sum_int),
        ("k_decomposition", &k_int),
        ("h_reversed", &hr_int),
    ]);
    rec.claim("interior-sequence-agreement", params.clone(), w);

    if let Some(spec) = &subject.spec {
        for (interior, computed) in [(false, &rec_ext), (true, &rec_int)] {
            if let Ok(cf) = sequences::closed_form(spec, interior, n_max) {
                let w = first_disagreement(&[("recursive", computed), ("closed_form", &cf.values)]);
                rec.claim(
                    "closed-form",
                    json!({ "n_max": n_max, "interior": interior }),
                    w,
                );
            }
        }
    }

    if opts.apex_trials {
        let trials: Vec<ApexTrial> = sequences::apex_trials(p, n_max)?;
        let same_h = trials.windows(2).all(|w| w[0].h == w[1].h);
        let same_values = trials.windows(2).all(|w| w[0].values == w[1].values);
        report.observations.push(json!({
            "record": "observation",
            "observation": "apex-dependence",
            "polytope": p.name(),
            "trials": trials,
            "same_h": same_h,
            "same_values": same_values,
        }));
    }
    Ok(())
}
