//! The end-to-end pipeline: classification, reduction indices, depth
//! certificates, the truncated fiber-cone series and the theorem verdict.

use crate::error::{Error, Result};
use crate::hilbert::{self, CmInputs, CmVerdicts, HilbertSeries, Hypothesis, TheoremId, TheoremVerdict};
use crate::multiplicity::{self, Classification, FitOptions, MixedMultiplicityTable, MultiplicityClass};
use crate::reductions::{self, DeficitProfile, DepthCertificate, PolyCase, SampledIndex};
use crate::semigroup::{self, SemigroupIdeal};
use crate::IndexSearch;

/// Bounds and seeds shared by every stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub prime: u32,
    pub seed: u64,
    /// Number of fiber-cone coefficients beyond μ(I^0) (extended when needed).
    pub trunc: u32,
    /// Degree bound for the index searches and the nonzerodivisor criteria.
    pub n_max: u32,
    /// Bound for certifying the Rees condition of a joint reduction.
    pub nmax: u32,
    pub samples: usize,
    pub guard: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { prime: 32003, seed: 0, trunc: 12, n_max: 8, nmax: 6, samples: 5, guard: 4 }
    }
}

pub enum Subject {
    Semigroup(SemigroupIdeal),
    Polynomial(PolyCase),
}

impl Subject {
    pub fn dim(&self) -> usize {
        match self {
            Subject::Semigroup(_) => 1,
            Subject::Polynomial(c) => c.dim(),
        }
    }

    pub fn mu(&self) -> usize {
        match self {
            Subject::Semigroup(i) => i.mu(),
            Subject::Polynomial(c) => c.ideal().mu(),
        }
    }

    pub fn mu_powers(&self, n: u32) -> Vec<u64> {
        match self {
            Subject::Semigroup(i) => semigroup::mu_powers(i, n),
            Subject::Polynomial(c) => c.ideal().mu_powers(n),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Subject::Semigroup(_) => "semigroup",
            Subject::Polynomial(_) => "polynomial",
        }
    }
}

/// A reduction index with its sampling detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub min: IndexSearch,
    pub per_sample: Vec<(u64, IndexSearch)>,
    pub rejected: Vec<u64>,
    /// The reduction realizing the minimum, rendered.
    pub realized_by: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub kind: &'static str,
    pub dim: usize,
    pub mu: usize,
    pub mixed: MixedMultiplicityTable,
    /// e_{d-1}(m|I) computed from the best joint reduction.
    pub e_last_jr: Option<i64>,
    pub classification: Classification,
    pub rm_index: IndexReport,
    pub reduction_number: IndexReport,
    /// ℓ(I^2 / (JI + mI^2)).
    pub defect_length: Option<u64>,
    pub deficits: Option<DeficitProfile>,
    pub depth: DepthCertificate,
    pub series: HilbertSeries,
    pub theorem: TheoremVerdict,
    pub cm: CmVerdicts,
    pub config: Config,
}

fn effective_trunc(cfg: &Config, d: usize, s: IndexSearch) -> u32 {
    let need = match s {
        IndexSearch::Found(s) => s + d as u32 + cfg.guard as u32 + 1,
        IndexSearch::NotFoundUpTo(_) => 0,
    };
    cfg.trunc.max(need).max(d as u32 + cfg.guard as u32 + 1)
}

fn theorem_for(d: usize, class: MultiplicityClass) -> Option<TheoremId> {
    match (d, class) {
        (1, MultiplicityClass::Minimal) => Some(TheoremId::Prop32),
        (1, MultiplicityClass::AlmostMinimal) => Some(TheoremId::Thm33),
        (2, MultiplicityClass::AlmostMinimal) => Some(TheoremId::Thm43),
        (_, MultiplicityClass::AlmostMinimal) => Some(TheoremId::Thm55),
        _ => None,
    }
}

fn status_text(s: &reductions::CertStatus) -> String {
    match s {
        reductions::CertStatus::Certified(n) => format!("Certified({n})"),
        reductions::CertStatus::FailedAt { n, witness } => format!("FailedAt({n}, {witness})"),
    }
}

pub fn analyze(subject: &Subject, cfg: &Config) -> Result<AnalysisReport> {
    if cfg.n_max == 0 || cfg.nmax == 0 || cfg.samples == 0 {
        return Err(Error::Semantic("bounds must be positive".into()));
    }
    match subject {
        Subject::Semigroup(i) => analyze_semigroup(i, cfg),
        Subject::Polynomial(c) => analyze_polynomial(c, cfg),
    }
}

fn analyze_semigroup(i: &SemigroupIdeal, cfg: &Config) -> Result<AnalysisReport> {
    let mu = i.mu();
    let mixed = multiplicity::dim1_table(i);
    let classification = multiplicity::classify(1, mu, mixed.mixed(0));
    let rm = semigroup::rm_index(i, cfg.n_max);
    let r = semigroup::reduction_number(i, cfg.n_max);
    let e = i.ambient().multiplicity();
    let index = |s: IndexSearch, by: String| IndexReport {
        min: s,
        per_sample: vec![(cfg.seed, s)],
        rejected: vec![],
        realized_by: Some(by),
    };
    let trunc = effective_trunc(cfg, 1, rm);
    let check = semigroup::dim1_theorem_check(i, trunc, cfg.guard);
    let deficits = DeficitProfile {
        values: check.deficits[1..=cfg.n_max.min(trunc) as usize].to_vec(),
        corrections: None,
        telescoping: None,
    };
    let series = HilbertSeries::new(semigroup::mu_powers(i, trunc), 1, cfg.guard);
    let hyps = vec![
        Hypothesis::new("multiplicities", mixed.validated, if mixed.validated { "validated" } else { "unvalidated" }),
        Hypothesis::new("length-identity", check.identity_holds, format!("μ(I^n) + ℓ(mI^n/t^{e}I^n) = {e}")),
    ];
    let theorem = match theorem_for(1, classification.verdict) {
        Some(t) => hilbert::judge(t, hyps, 1, mu as u32, rm, &series),
        None => TheoremVerdict::out_of_scope(series.numerator.clone()),
    };
    let defect_length = Some(reductions::sg_cm_defect_length(i));
    let cm = hilbert::cm_verdicts(&CmInputs {
        class: classification.verdict,
        numerator: series.numerator.as_ref(),
        hypotheses_certified: theorem.hypotheses_certified(),
        reduction_number: Some(r),
        defect_length,
    });
    Ok(AnalysisReport {
        kind: "semigroup",
        dim: 1,
        mu,
        e_last_jr: Some(e as i64),
        mixed,
        classification,
        rm_index: index(rm, format!("x = t^{e}")),
        reduction_number: index(r, format!("J = (t^{})", i.order())),
        defect_length,
        deficits: Some(deficits),
        depth: reductions::sg_depth_certificates(i, cfg.n_max),
        series,
        theorem,
        cm,
        config: cfg.clone(),
    })
}

fn render_jr(c: &PolyCase, parts: &[&[crate::poly::Poly]]) -> String {
    let items: Vec<String> = parts.iter().flat_map(|p| p.iter()).map(|f| c.ring().format(f)).collect();
    format!("({})", items.join(", "))
}

fn index_report(c: &PolyCase, s: &SampledIndex, m_part: bool) -> IndexReport {
    IndexReport {
        min: s.min,
        per_sample: s.per_sample.clone(),
        rejected: s.rejected.clone(),
        realized_by: s.best.as_ref().map(|jr| {
            if m_part {
                render_jr(c, &[&jr.m_part, &jr.i_part])
            } else {
                render_jr(c, &[&jr.i_part])
            }
        }),
    }
}

fn analyze_polynomial(c: &PolyCase, cfg: &Config) -> Result<AnalysisReport> {
    let d = c.dim();
    let mu = c.ideal().mu();
    let mixed = multiplicity::fit_bhattacharya(c.ideal(), FitOptions::default())?;
    let e_last = mixed.mixed(d - 1);
    let classification = multiplicity::classify(d, mu, e_last);

    let rm = c.sampled_rm_index(cfg.samples, cfg.seed, cfg.nmax, cfg.n_max)?;
    let best = rm.best.as_ref().filter(|jr| jr.is_certified());
    let e_last_jr = match best {
        Some(jr) => Some(multiplicity::e_last_via_joint_reduction(c.ring(), c.ideal(), jr.x(), &jr.i_part)?),
        None => None,
    };
    let r = match c.reduction_number(cfg.samples, cfg.seed, cfg.n_max) {
        Ok(r) => r,
        Err(Error::NoReductionFound(n)) => SampledIndex {
            min: IndexSearch::NotFoundUpTo(n),
            per_sample: vec![],
            rejected: (cfg.seed..cfg.seed + cfg.samples as u64).collect(),
            best: None,
        },
        Err(e) => return Err(e),
    };
    let defect_length = match (&r.best, r.min) {
        (Some(jr), IndexSearch::Found(_)) => Some(c.cm_defect_length(&jr.i_part)?),
        _ => None,
    };
    let deficits = match best {
        Some(jr) => Some(c.deficit_profile(jr, cfg.n_max, (d == 2).then_some(e_last))?),
        None => None,
    };
    let depth = c.depth_certificates(cfg.n_max, cfg.samples, cfg.seed)?;

    let trunc = effective_trunc(cfg, d, rm.min);
    let series = HilbertSeries::new(c.ideal().mu_powers(trunc), d, cfg.guard);

    let theorem = match theorem_for(d, classification.verdict) {
        None => TheoremVerdict::out_of_scope(series.numerator.clone()),
        Some(t) => {
            let mut hyps = vec![Hypothesis::new(
                "multiplicities",
                mixed.validated && e_last_jr.is_none_or(|v| v == e_last),
                match e_last_jr {
                    Some(v) => format!("fit e_{} = {e_last}, joint reduction gives {v}", d - 1),
                    None => format!("fit e_{} = {e_last}", d - 1),
                },
            )];
            hyps.push(Hypothesis::new(
                "joint-reduction",
                best.is_some(),
                match best.and_then(|jr| jr.certificate) {
                    Some(IndexSearch::Found(n)) => format!("Certified({n})"),
                    _ => format!("Unknown({})", cfg.nmax),
                },
            ));
            if d >= 2 {
                hyps.push(Hypothesis::new(
                    format!("gamma>={}", d - 1),
                    depth.gamma_lb >= d - 1,
                    format!("gamma_lb = {}, {}", depth.gamma_lb, status_text(&depth.graded_status)),
                ));
            }
            if d >= 3 {
                hyps.push(Hypothesis::new(
                    format!("phi>={}", d - 2),
                    depth.phi_lb >= d - 2,
                    format!("phi_lb = {}, {}", depth.phi_lb, status_text(&depth.fiber_status)),
                ));
            }
            hilbert::judge(t, hyps, d, mu as u32, rm.min, &series)
        }
    };
    let cm = hilbert::cm_verdicts(&CmInputs {
        class: classification.verdict,
        numerator: series.numerator.as_ref(),
        hypotheses_certified: theorem.theorem.is_some() && theorem.hypotheses_certified(),
        reduction_number: Some(r.min),
        defect_length,
    });
    Ok(AnalysisReport {
        kind: "polynomial",
        dim: d,
        mu,
        e_last_jr,
        rm_index: index_report(c, &rm, true),
        reduction_number: index_report(c, &r, false),
        mixed,
        classification,
        defect_length,
        deficits,
        depth,
        series,
        theorem,
        cm,
        config: cfg.clone(),
    })
}
