//! Fiber-cone Hilbert series: reconstruction of the numerator over (1 - λ)^d,
//! the closed-form predictions, and the Cohen–Macaulay indicators.

use std::fmt;

use crate::analysis::{analyze, Config, Subject};
use crate::error::{Error, Result};
use crate::multiplicity::MultiplicityClass;
use crate::IndexSearch;

/// Integer polynomial h(λ), stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Numerator(Vec<i64>);

impl Numerator {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Numerator(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// h(1); for a d-dimensional graded ring this is its multiplicity.
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&c| c < 0)
    }
}

impl fmt::Display for Numerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "λ")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// First `len` coefficients of h(λ) / (1 - λ)^d.
pub fn expand(h: &Numerator, d: usize, len: usize) -> Vec<i64> {
    (0..len as i64)
        .map(|n| {
            h.0.iter()
                .enumerate()
                .map(|(k, &c)| {
                    let m = n - k as i64;
                    if m < 0 {
                        0
                    } else if d == 0 {
                        (m == 0) as i64 * c
                    } else {
                        c * binom(m + d as i64 - 1, d as i64 - 1)
                    }
                })
                .sum()
        })
        .collect()
}

/// Multiplies the truncated series by (1 - λ)^d and accepts the result when
/// the last `guard` coefficients vanish.
pub fn rational_reconstruct(coeffs: &[u64], d: usize, guard: usize) -> Result<Numerator> {
    let signed: Vec<i64> = coeffs.iter().map(|&c| c as i64).collect();
    reconstruct_signed(&signed, d, guard)
}

/// [`rational_reconstruct`] for arbitrary integer series.
pub fn reconstruct_signed(coeffs: &[i64], d: usize, guard: usize) -> Result<Numerator> {
    if coeffs.len() < d + guard + 2 {
        return Err(Error::TruncationTooShort);
    }
    let mut h = coeffs.to_vec();
    for _ in 0..d {
        for k in (1..h.len()).rev() {
            h[k] -= h[k - 1];
        }
    }
    if h[h.len() - guard..].iter().any(|&c| c != 0) {
        return Err(Error::TruncationTooShort);
    }
    Ok(Numerator::new(h))
}

/// 1 + (mu - d)λ + λ^s, or 1 + (mu - d)λ when no finite index is known.
pub fn predict_theorem(d: usize, mu: u32, s: IndexSearch) -> Numerator {
    let mut h = vec![1, mu as i64 - d as i64];
    if let IndexSearch::Found(s) = s {
        let s = s as usize;
        if h.len() <= s {
            h.resize(s + 1, 0);
        }
        h[s] += 1;
    }
    Numerator::new(h)
}

/// 1 + (e - 1)λ.
pub fn predict_minimal_dim1(e: u32) -> Numerator {
    Numerator::new(vec![1, e as i64 - 1])
}

/// Truncated μ-vector together with its reconstructed numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub coeffs: Vec<u64>,
    pub dim: usize,
    pub numerator: Option<Numerator>,
    pub guard: usize,
}

impl HilbertSeries {
    pub fn new(coeffs: Vec<u64>, dim: usize, guard: usize) -> Self {
        let numerator = rational_reconstruct(&coeffs, dim, guard).ok();
        HilbertSeries { coeffs, dim, numerator, guard }
    }

    /// Exact agreement of the truncation with h / (1 - λ)^d.
    pub fn agrees_with(&self, h: &Numerator) -> bool {
        expand(h, self.dim, self.coeffs.len()).iter().zip(&self.coeffs).all(|(&a, &b)| a == b as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Match,
    /// Predicted and observed series differ.
    Mismatch,
    /// A hypothesis could not be certified; no claim is made.
    HypothesesUncertified,
    /// The ideal is neither minimal nor almost minimal, or the classification
    /// has no closed form in this dimension.
    OutOfScope,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Match => "Match",
            Verdict::Mismatch => "Mismatch",
            Verdict::HypothesesUncertified => "HypothesesUncertified",
            Verdict::OutOfScope => "OutOfScope",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// d = 1, μ(I) = e(R).
    Prop32,
    /// d = 1, μ(I) = e(R) - 1.
    Thm33,
    /// d = 2, almost minimal, γ(I) >= 1.
    Thm43,
    /// d >= 2, almost minimal, γ(I) >= d - 1 and φ(I) >= d - 2.
    Thm55,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Prop32 => "Prop3.2",
            TheoremId::Thm33 => "Thm3.3",
            TheoremId::Thm43 => "Thm4.3",
            TheoremId::Thm55 => "Thm5.5",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub certified: bool,
    pub detail: String,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, certified: bool, detail: impl Into<String>) -> Self {
        Hypothesis { name: name.into(), certified, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub theorem: Option<TheoremId>,
    pub hypotheses: Vec<Hypothesis>,
    pub predicted: Option<Numerator>,
    pub observed: Option<Numerator>,
    pub verdict: Verdict,
}

impl TheoremVerdict {
    pub fn out_of_scope(observed: Option<Numerator>) -> Self {
        TheoremVerdict { theorem: None, hypotheses: vec![], predicted: None, observed, verdict: Verdict::OutOfScope }
    }

    pub fn hypotheses_certified(&self) -> bool {
        self.hypotheses.iter().all(|h| h.certified)
    }

    /// A mismatch with every hypothesis certified contradicts the theorem.
    pub fn red_alert(&self) -> bool {
        self.verdict == Verdict::Mismatch && self.hypotheses_certified()
    }
}

/// Compares the observed series with the closed form for the index `s`.
///
/// An index not found within the search bound is accepted only when the
/// series equals the infinite-index form; otherwise no claim is made.
pub fn judge(theorem: TheoremId, hypotheses: Vec<Hypothesis>, d: usize, mu: u32, s: IndexSearch, series: &HilbertSeries) -> TheoremVerdict {
    let predicted = match theorem {
        TheoremId::Prop32 => predict_minimal_dim1(mu),
        _ => predict_theorem(d, mu, s),
    };
    let observed = series.numerator.clone();
    let verdict = if !hypotheses.iter().all(|h| h.certified) {
        Verdict::HypothesesUncertified
    } else if series.agrees_with(&predicted) {
        Verdict::Match
    } else if theorem != TheoremId::Prop32 && matches!(s, IndexSearch::NotFoundUpTo(_)) {
        Verdict::HypothesesUncertified
    } else {
        Verdict::Mismatch
    };
    TheoremVerdict { theorem: Some(theorem), hypotheses, predicted: Some(predicted), observed, verdict }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmStatus {
    Cm,
    NotCm,
    Unknown,
}

impl CmStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CmStatus::Cm => "CM",
            CmStatus::NotCm => "NotCM",
            CmStatus::Unknown => "Unknown",
        }
    }
}

/// Inputs of the Cohen–Macaulay indicators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmInputs<'a> {
    pub class: MultiplicityClass,
    pub numerator: Option<&'a Numerator>,
    /// Depth hypotheses of the main theorem are certified.
    pub hypotheses_certified: bool,
    pub reduction_number: Option<IndexSearch>,
    /// ℓ(I^2 / (JI + mI^2)) for the reduction J realizing r(I).
    pub defect_length: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmVerdicts {
    /// A negative numerator coefficient rules out Cohen–Macaulayness.
    pub negative_numerator: Option<bool>,
    /// Almost minimal: CM iff r(I) <= 1, or r(I) = 2 and ℓ(I^2/(JI+mI^2)) = 1.
    pub almost_minimal_criterion: Option<CmStatus>,
    /// Minimal: CM iff r(I) <= 1.
    pub minimal_criterion: Option<CmStatus>,
    pub overall: CmStatus,
    pub via: &'static str,
}

pub fn cm_verdicts(inp: &CmInputs<'_>) -> CmVerdicts {
    let negative_numerator = inp.numerator.map(Numerator::has_negative);
    let r = match inp.reduction_number {
        Some(IndexSearch::Found(r)) => Some(r),
        _ => None,
    };
    let almost_minimal_criterion = (inp.class == MultiplicityClass::AlmostMinimal).then_some({
        match (inp.hypotheses_certified, r, inp.defect_length) {
            (false, _, _) | (_, None, _) => CmStatus::Unknown,
            (true, Some(r), _) if r <= 1 => CmStatus::Cm,
            (true, Some(2), Some(1)) => CmStatus::Cm,
            (true, Some(2), None) => CmStatus::Unknown,
            (true, Some(_), _) => CmStatus::NotCm,
        }
    });
    let minimal_criterion = (inp.class == MultiplicityClass::Minimal).then_some(match r {
        None => CmStatus::Unknown,
        Some(r) if r <= 1 => CmStatus::Cm,
        Some(_) => CmStatus::NotCm,
    });
    let (overall, via) = if negative_numerator == Some(true) {
        (CmStatus::NotCm, "negative-numerator")
    } else if let Some(s) = almost_minimal_criterion.filter(|s| *s != CmStatus::Unknown) {
        (s, "almost-minimal-criterion")
    } else if let Some(s) = minimal_criterion.filter(|s| *s != CmStatus::Unknown) {
        (s, "minimal-criterion")
    } else {
        (CmStatus::Unknown, "none")
    };
    CmVerdicts { negative_numerator, almost_minimal_criterion, minimal_criterion, overall, via }
}

/// Runs the full pipeline and returns the theorem verdict.
pub fn verify(subject: &Subject, config: &Config) -> Result<TheoremVerdict> {
    Ok(analyze(subject, config)?.theorem)
}
