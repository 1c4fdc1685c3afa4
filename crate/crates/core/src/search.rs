//! Random instance generators and the classification search.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{analyze, AnalysisReport, Config};
use crate::error::Result;
use crate::monomial::{monomials_of_degree, Monomial, MonomialIdeal};
use crate::multiplicity::{self, FitOptions, MultiplicityClass};
use crate::semigroup::{NumericalSemigroup, SemigroupIdeal};
use crate::spec::{RingKind, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchKind {
    Polynomial,
    Semigroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub kind: SearchKind,
    /// Number of variables (ignored for semigroups).
    pub dim: usize,
    pub class: MultiplicityClass,
    pub budget: usize,
}

pub struct Hit {
    pub trial: usize,
    pub spec: RingSpec,
    pub report: AnalysisReport,
    /// Classification and verdict are unchanged under a fresh seed.
    pub stable: bool,
}

/// Deterministic per-trial generator.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(trial as u64))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Numerical semigroup with 2-4 generators in 3..=15.
pub fn random_semigroup<R: Rng>(rng: &mut R) -> Arc<NumericalSemigroup> {
    loop {
        let k = rng.gen_range(2..=4);
        let gens: Vec<u32> = (0..k).map(|_| rng.gen_range(3..=15)).collect();
        if gens.iter().copied().fold(0, gcd) == 1 {
            return Arc::new(NumericalSemigroup::new(&gens).expect("gcd is 1"));
        }
    }
}

/// Ideal generated by random elements of S in a window above the order.
pub fn random_semigroup_ideal<R: Rng>(rng: &mut R, s: &Arc<NumericalSemigroup>) -> SemigroupIdeal {
    let e = s.multiplicity();
    let lo = rng.gen_range(e..=s.conductor() + 2 * e);
    let width = rng.gen_range(e..=3 * e);
    let mut pool: Vec<u32> = (lo..lo + width).filter(|&v| s.contains(v)).collect();
    pool.shuffle(rng);
    let take = rng.gen_range(1..=pool.len().min(e as usize + 2));
    SemigroupIdeal::new(s.clone(), &pool[..take]).expect("elements of S")
}

/// Semigroup ideal with μ(I) = e(R) (Minimal) or e(R) - 1 (AlmostMinimal);
/// rejection sampling over random semigroups.
pub fn random_semigroup_ideal_of_class<R: Rng>(rng: &mut R, class: MultiplicityClass) -> SemigroupIdeal {
    loop {
        let s = random_semigroup(rng);
        let e = s.multiplicity() as usize;
        let want = match class {
            MultiplicityClass::Minimal => e,
            MultiplicityClass::AlmostMinimal => e - 1,
            MultiplicityClass::Neither => rng.gen_range(1..=e),
        };
        if want == 0 {
            continue;
        }
        for _ in 0..64 {
            let i = random_semigroup_ideal(rng, &s);
            let ok = match class {
                MultiplicityClass::Neither => i.mu() + 1 < e,
                _ => i.mu() == want,
            };
            if ok {
                return i;
            }
        }
    }
}

/// m-primary monomial ideal: a pure power of each variable (exponent 1..=6)
/// plus random monomials, at most `max_gens` generators, exponents <= `max_exp`.
pub fn random_monomial_ideal<R: Rng>(rng: &mut R, d: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let mut gens: Vec<Monomial> = (0..d).map(|v| Monomial::pure_power(v, rng.gen_range(1..=max_exp))).collect();
    let extra = rng.gen_range(0..=max_gens.saturating_sub(d));
    for _ in 0..extra {
        let e: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=max_exp)).collect();
        gens.push(Monomial::new(&e));
    }
    let i = MonomialIdeal::minimalize(d, gens);
    if i.is_unit() {
        return MonomialIdeal::maximal(d);
    }
    i
}

/// Monomial ideal in two variables with μ(I) equal to its order, the
/// monomial shape of almost minimal mixed multiplicity in the plane.
pub fn random_almost_minimal_plane<R: Rng>(rng: &mut R) -> MonomialIdeal {
    loop {
        let o = rng.gen_range(2..=5u32);
        let mut deg_o = monomials_of_degree(2, o);
        deg_o.shuffle(rng);
        let k = rng.gen_range(1..=o as usize);
        let mut gens: Vec<Monomial> = deg_o[..k].to_vec();
        gens.push(Monomial::pure_power(0, o + rng.gen_range(0..=2)));
        gens.push(Monomial::pure_power(1, o + rng.gen_range(0..=2)));
        for _ in 0..rng.gen_range(0..=3) {
            let a = rng.gen_range(0..=o + 2);
            let b = rng.gen_range(0..=o + 2);
            if a + b > o {
                gens.push(Monomial::new(&[a, b]));
            }
        }
        let i = MonomialIdeal::minimalize(2, gens);
        if i.mu() == o as usize && i.min_degree() == o {
            return i;
        }
    }
}

/// Quick classification (μ versus the fitted e_{d-1}) used to filter trials.
pub fn classify_monomial(i: &MonomialIdeal) -> Result<MultiplicityClass> {
    let t = multiplicity::fit_bhattacharya(i, FitOptions::default())?;
    Ok(multiplicity::classify(i.dim(), i.mu(), t.mixed(i.dim() - 1)).verdict)
}

fn spec_for_semigroup(i: &SemigroupIdeal, cfg: &Config) -> RingSpec {
    RingSpec {
        ring: RingKind::Semigroup { gens: i.ambient().gens().to_vec() },
        ideal: i.mingens().iter().map(|&g| vec![g]).collect(),
        config: cfg.clone(),
    }
}

fn spec_for_monomial(i: &MonomialIdeal, cfg: &Config) -> RingSpec {
    let d = i.dim();
    let vars = crate::poly::default_names(d);
    RingSpec {
        ring: RingKind::Polynomial { vars },
        ideal: i.gens().iter().map(|m| m.exps(d)).collect(),
        config: cfg.clone(),
    }
}

fn candidate(params: &SearchParams, cfg: &Config, trial: usize) -> Result<Option<RingSpec>> {
    let mut rng = trial_rng(cfg.seed, trial);
    match params.kind {
        SearchKind::Semigroup => {
            let s = random_semigroup(&mut rng);
            let i = random_semigroup_ideal(&mut rng, &s);
            let class = multiplicity::classify(1, i.mu(), s.multiplicity() as i64).verdict;
            Ok((class == params.class).then(|| spec_for_semigroup(&i, cfg)))
        }
        SearchKind::Polynomial => {
            let i = if params.dim == 2 && params.class == MultiplicityClass::AlmostMinimal && trial.is_multiple_of(2) {
                random_almost_minimal_plane(&mut rng)
            } else {
                random_monomial_ideal(&mut rng, params.dim, 6, 6)
            };
            Ok((classify_monomial(&i)? == params.class).then(|| spec_for_monomial(&i, cfg)))
        }
    }
}

/// Runs `budget` trials in parallel; hits come back ordered by trial index.
pub fn search(params: &SearchParams, cfg: &Config) -> Result<Vec<Hit>> {
    let results: Vec<Result<Option<Hit>>> = (0..params.budget)
        .into_par_iter()
        .map(|trial| {
            let Some(spec) = candidate(params, cfg, trial)? else {
                return Ok(None);
            };
            let report = analyze(&spec.subject()?, &spec.config)?;
            let mut fresh = spec.config.clone();
            fresh.seed = fresh.seed.wrapping_add(1_000_003);
            let again = analyze(&spec.subject()?, &fresh)?;
            let stable = again.classification == report.classification
                && again.theorem.verdict == report.theorem.verdict;
            Ok(Some(Hit { trial, spec, report, stable }))
        })
        .collect();
    let mut hits = Vec::new();
    for r in results {
        if let Some(h) = r? {
            hits.push(h);
        }
    }
    Ok(hits)
}
