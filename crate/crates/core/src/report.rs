//! Flat key/value rendering of analysis reports.
//!
//! Keys are stable; list values are comma-separated and numerators use the
//! `1 + 2λ - λ^3` notation. The JSON form is a single flat object with the
//! same keys, all values strings.

use serde_json::{Map, Value};

use crate::analysis::{AnalysisReport, IndexReport};
use crate::hilbert::TheoremVerdict;
use crate::reductions::CertStatus;
use crate::IndexSearch;

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn status(s: &CertStatus) -> String {
    match s {
        CertStatus::Certified(n) => format!("Certified({n})"),
        CertStatus::FailedAt { n, witness } => format!("FailedAt({n}, {witness})"),
    }
}

fn index(s: IndexSearch) -> String {
    match s {
        IndexSearch::Found(n) => n.to_string(),
        IndexSearch::NotFoundUpTo(n) => format!("NotFoundUpTo({n})"),
    }
}

/// Ordered list of (key, value) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flat(pub Vec<(String, String)>);

impl Flat {
    pub fn push(&mut self, k: impl Into<String>, v: impl ToString) {
        self.0.push((k.into(), v.to_string()));
    }

    pub fn get(&self, k: &str) -> Option<&str> {
        self.0.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.0.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        serde_json::to_string_pretty(&Value::Object(map)).expect("string map serializes")
    }

    pub fn extend(&mut self, other: Flat) {
        self.0.extend(other.0);
    }
}

fn index_block(f: &mut Flat, prefix: &str, r: &IndexReport) {
    f.push(prefix, index(r.min));
    let per: Vec<String> = r.per_sample.iter().map(|(s, v)| format!("{s}:{}", index(*v))).collect();
    f.push(format!("{prefix}.samples"), per.join(","));
    f.push(format!("{prefix}.rejected_seeds"), join(&r.rejected));
    f.push(format!("{prefix}.realized_by"), r.realized_by.as_deref().unwrap_or("-"));
}

pub fn theorem_flat(t: &TheoremVerdict) -> Flat {
    let mut f = Flat::default();
    f.push("theorem", t.theorem.map_or("-", |t| t.as_str()));
    for h in &t.hypotheses {
        f.push(format!("theorem.hypothesis.{}", h.name), format!("{} ({})", if h.certified { "certified" } else { "uncertified" }, h.detail));
    }
    f.push("theorem.predicted", t.predicted.as_ref().map_or("-".into(), |n| n.to_string()));
    f.push("theorem.observed", t.observed.as_ref().map_or("-".into(), |n| n.to_string()));
    f.push("theorem.verdict", t.verdict.as_str());
    f.push("theorem.red_alert", t.red_alert());
    f
}

pub fn mixed_flat(r: &AnalysisReport) -> Flat {
    let mut f = Flat::default();
    f.push("mu", r.mu);
    f.push("mixed_multiplicities", join(&r.mixed.mixed));
    f.push("mixed_multiplicities.validated", r.mixed.validated);
    if let Some(w) = r.mixed.window {
        f.push("mixed_multiplicities.window", format!("r0={},s0={},span={}", w.r0, w.s0, w.span));
    }
    f.push("mixed_multiplicities.escalations", r.mixed.escalations);
    f.push("e_last.joint_reduction", r.e_last_jr.map_or("-".into(), |v| v.to_string()));
    f.push("classification", r.classification.verdict.as_str());
    f.push("classification.slack", r.classification.slack);
    f
}

pub fn series_flat(r: &AnalysisReport) -> Flat {
    let mut f = Flat::default();
    f.push("series.trunc", r.series.coeffs.len() - 1);
    f.push("series.mu_vector", join(&r.series.coeffs));
    f.push("series.guard", r.series.guard);
    f.push("series.numerator", r.series.numerator.as_ref().map_or("TruncationTooShort".into(), |n| n.to_string()));
    f.push(
        "series.numerator_coeffs",
        r.series.numerator.as_ref().map_or("-".into(), |n| join(n.coeffs())),
    );
    f
}

pub fn reductions_flat(r: &AnalysisReport) -> Flat {
    let mut f = Flat::default();
    index_block(&mut f, "r_m_I", &r.rm_index);
    index_block(&mut f, "r_I", &r.reduction_number);
    f.push("cm_defect_length", r.defect_length.map_or("-".into(), |v| v.to_string()));
    if let Some(p) = &r.deficits {
        f.push("deficits", join(&p.values));
        if let Some(c) = &p.corrections {
            f.push("corrections", join(c));
        }
        if let Some(t) = &p.telescoping {
            f.push("telescoping_identity", t.iter().all(|&b| b));
        }
    }
    let d = &r.depth;
    f.push("depth.bound", d.bound);
    f.push("depth.samples", d.samples);
    f.push("depth.gamma_lb", d.gamma_lb);
    f.push("depth.gamma_chain", d.graded_chain.join("; "));
    f.push("depth.gamma_status", status(&d.graded_status));
    f.push("depth.gamma_zero_witness", d.graded_zero_witness.as_ref().map_or("-".into(), |(k, w)| format!("{w} (degree {k})")));
    f.push("depth.phi_lb", d.phi_lb);
    f.push("depth.phi_chain", d.fiber_chain.join("; "));
    f.push("depth.phi_status", status(&d.fiber_status));
    f.push("depth.phi_note", d.fiber_note.as_deref().unwrap_or("-"));
    f.push("depth.phi_zero_witness", d.fiber_zero_witness.as_ref().map_or("-".into(), |(k, w)| format!("{w} (degree {k})")));
    f
}

pub fn config_flat(r: &AnalysisReport) -> Flat {
    let c = &r.config;
    let mut f = Flat::default();
    f.push("kind", r.kind);
    f.push("dim", r.dim);
    f.push("prime", c.prime);
    f.push("seed", c.seed);
    f.push("trunc", c.trunc);
    f.push("Nmax", c.n_max);
    f.push("nmax", c.nmax);
    f.push("samples", c.samples);
    f.push("guard", c.guard);
    f
}

pub fn cm_flat(r: &AnalysisReport) -> Flat {
    let mut f = Flat::default();
    let cm = &r.cm;
    f.push("cm.negative_numerator", cm.negative_numerator.map_or("-".into(), |b| b.to_string()));
    f.push("cm.almost_minimal_criterion", cm.almost_minimal_criterion.map_or("-", |s| s.as_str()));
    f.push("cm.minimal_criterion", cm.minimal_criterion.map_or("-", |s| s.as_str()));
    f.push("cm.verdict", cm.overall.as_str());
    f.push("cm.via", cm.via);
    f
}

/// The complete report.
pub fn flatten(r: &AnalysisReport) -> Flat {
    let mut f = config_flat(r);
    f.extend(mixed_flat(r));
    f.extend(reductions_flat(r));
    f.extend(series_flat(r));
    f.extend(theorem_flat(&r.theorem));
    f.extend(cm_flat(r));
    f
}
