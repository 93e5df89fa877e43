//! One record per invocation, rendered either as text or as a single JSON
//! object. Both renderings carry the same fields.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use twistspin_core::decide::{Verdict, Witness};
use twistspin_core::spin::CenterWitnessReport;
use twistspin_core::verify::SuiteReport;

pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    /// Extra bytes hashed into the digest, e.g. the contents of `--pres`.
    pub digest_extra: Vec<u8>,
    pub presentation: Option<String>,
    pub abelianization: Option<String>,
    pub hom_counts: Option<Vec<(String, u64)>>,
    pub verdict: Option<Verdict>,
    pub witness: Option<Witness>,
    pub suites: Vec<SuiteReport>,
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Map::new(),
            digest_extra: Vec::new(),
            presentation: None,
            abelianization: None,
            hom_counts: None,
            verdict: None,
            witness: None,
            suites: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.command.as_bytes());
        h.update([0]);
        h.update(Value::Object(self.inputs.clone()).to_string().as_bytes());
        h.update([0]);
        h.update(&self.digest_extra);
        format!("{:x}", h.finalize())
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("inputs".into(), Value::Object(self.inputs.clone()));
        out.insert("input_digest".into(), json!(self.digest()));
        if let Some(p) = &self.presentation {
            out.insert("presentation".into(), json!(p));
        }
        if let Some(a) = &self.abelianization {
            out.insert("abelianization".into(), json!(a));
        }
        if let Some(counts) = &self.hom_counts {
            let rows: Vec<Value> = counts
                .iter()
                .map(|(g, n)| json!({ "group": g, "count": n }))
                .collect();
            out.insert("hom_counts".into(), Value::Array(rows));
        }
        if let Some(v) = &self.verdict {
            out.insert("verdict".into(), verdict_json(v));
        }
        if !self.suites.is_empty() {
            out.insert(
                "verdict".into(),
                Value::Array(self.suites.iter().map(suite_json).collect()),
            );
        }
        if let Some(w) = &self.witness {
            out.insert("witness".into(), witness_json(w));
        }
        if let Some(ms) = self.timing_ms {
            out.insert("timing_ms".into(), json!(ms));
        }
        Value::Object(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# command {}\n", self.command);
        for (k, v) in &self.inputs {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out += &format!("# input {k} = {v}\n");
        }
        out += &format!("# digest {}\n", self.digest());
        if let Some(p) = &self.presentation {
            out += p;
        }
        if let Some(a) = &self.abelianization {
            out += &format!("abelianization: {a}\n");
        }
        if let Some(counts) = &self.hom_counts {
            let width = counts.iter().map(|(g, _)| g.len()).max().unwrap_or(0);
            for (g, n) in counts {
                out += &format!("{g:<width$}  {n}\n");
            }
        }
        if let Some(v) = &self.verdict {
            out += &format!(
                "status: {}\nrule: {}\nclass: {}\n",
                v.status, v.rule, v.class
            );
            let spins: Vec<String> = v.spins.iter().map(u64::to_string).collect();
            out += &format!("spins: {}\n", spins.join(","));
            if let Some(m) = v.m {
                out += &format!("m: {m}\n");
            }
        }
        for s in &self.suites {
            for c in &s.cases {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                out += &format!("{mark} {} {}: {}\n", s.suite, c.label, c.detail);
            }
            let passed = s.cases.iter().filter(|c| c.pass).count();
            out += &format!("{}: {passed}/{} cases passed\n", s.suite, s.cases.len());
        }
        if let Some(w) = &self.witness {
            out += &witness_text(w);
        }
        if let Some(ms) = self.timing_ms {
            out += &format!("# timing {ms:.3} ms\n");
        }
        out
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "status": v.status.to_string(),
        "rule": v.rule,
        "class": v.class.to_string(),
        "spins": v.spins,
        "m": v.m,
    })
}

fn suite_json(s: &SuiteReport) -> Value {
    let cases: Vec<Value> = s
        .cases
        .iter()
        .map(|c| json!({ "label": c.label, "pass": c.pass, "detail": c.detail }))
        .collect();
    json!({ "suite": s.suite.name(), "passed": s.passed(), "cases": cases })
}

fn center_json(r: &CenterWitnessReport) -> Value {
    json!({
        "kind": "torus-center",
        "p": r.p,
        "q": r.q,
        "m": r.m,
        "center": r.verdict.to_string(),
        "element": r.witness,
        "formula_image": r.formula_image,
        "snf_image": r.snf_image.as_ref().map(|b| b.to_string()),
        "abelianization": r.abelianization.to_string(),
        "agree": r.agree,
    })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::CentralQuotient { m, abelianization } => json!({
            "kind": "central-quotient",
            "m": m,
            "abelianization": abelianization.to_string(),
        }),
        Witness::Center(r) => center_json(r),
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::CentralQuotient { m, abelianization } => {
            format!("witness: central quotient (m = {m}) abelianizes to {abelianization}\n")
        }
        Witness::Center(r) => center_text(r),
    }
}

fn center_text(r: &CenterWitnessReport) -> String {
    let snf = r
        .snf_image
        .as_ref()
        .map_or("-".to_string(), |b| b.to_string());
    format!(
        "witness: torus ({}, {}), m = {}: {}{}, pq mod m = {}, via Smith form = {}, abelianization {}, {}\n",
        r.p,
        r.q,
        r.m,
        r.verdict,
        r.witness
            .as_ref()
            .map_or(String::new(), |w| format!(" via {w}")),
        r.formula_image,
        snf,
        r.abelianization,
        if r.agree { "AGREE" } else { "DISAGREE" },
    )
}
