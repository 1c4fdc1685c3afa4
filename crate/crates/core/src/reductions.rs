//! Joint reductions, reduction indices, deficit profiles and bounded depth
//! certificates built from the nonzerodivisor criteria
//!
//!   a* regular on F(I)  ⇔  (mI^{n+1} : a) ∩ I^n = mI^n for all n,
//!   a° regular on G(I)  ⇔  (I^n : a) = I^{n-1} for all n.
//!
//! Computations modulo elements L are done by adjoining L to every ideal.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{LocalIdeal, LocalOptions};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poly::{Poly, PolyRing};
use crate::semigroup::SemigroupIdeal;
use crate::IndexSearch;

/// (x, a_1, ..., n) and the local ideal xI^n + (a)mI^{n-1}.
type ReductionEntry = (Vec<Poly>, u32, Arc<LocalIdeal>);

/// An m-primary monomial ideal I of R = F_p[x_1..x_d], studied in R_m.
pub struct PolyCase {
    ring: PolyRing,
    ideal: MonomialIdeal,
    max: MonomialIdeal,
    cache: Mutex<HashMap<(bool, u32), Arc<LocalIdeal>>>,
    /// xI^n + (a)mI^{n-1} keyed by the joint reduction's elements and n.
    reduction_cache: Mutex<Vec<ReductionEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointReduction {
    /// Elements of m (x, ...).
    pub m_part: Vec<Poly>,
    /// Elements of I (a_1, ...).
    pub i_part: Vec<Poly>,
    pub seed: u64,
    /// Smallest n realizing the Rees condition, once checked.
    pub certificate: Option<IndexSearch>,
}

impl JointReduction {
    pub fn x(&self) -> &Poly {
        &self.m_part[0]
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.certificate, Some(IndexSearch::Found(_)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficitProfile {
    /// ℓ(mI^n / (xI^n + J m I^{n-1})), n = 1..=N.
    pub values: Vec<u64>,
    /// ℓ(((mI^{n-1} : x) ∩ (I^n : a)) / I^{n-1}), n = 1..=N (d = 2 only).
    pub corrections: Option<Vec<u64>>,
    /// μ(I^n) - μ(I^{n-1}) = e_1(m|I) - deficit(n) + correction(n), per n.
    pub telescoping: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertStatus {
    /// Every criterion instance up to this degree passed.
    Certified(u32),
    /// The criterion fails at degree n; the witness is rendered as text.
    FailedAt { n: u32, witness: String },
}

impl CertStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertStatus::Certified(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthCertificate {
    /// Certified lower bound for depth G(I)_+ (up to `bound`).
    pub gamma_lb: usize,
    /// Certified lower bound for depth F(I)_+ (up to `bound`).
    pub phi_lb: usize,
    pub graded_chain: Vec<String>,
    pub fiber_chain: Vec<String>,
    pub bound: u32,
    pub graded_status: CertStatus,
    pub fiber_status: CertStatus,
    /// An element w ∈ I^k \ I^{k+1} with w I ⊆ I^{k+2}: depth G(I) = 0.
    pub graded_zero_witness: Option<(u32, String)>,
    /// An element w ∈ I^k \ mI^k with w I ⊆ mI^{k+1}: depth F(I) = 0.
    pub fiber_zero_witness: Option<(u32, String)>,
    /// Why the fiber chain stopped short of d elements, when not by failure.
    pub fiber_note: Option<String>,
    pub samples: usize,
}

/// Reduction index estimated as a minimum over sampled reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledIndex {
    pub min: IndexSearch,
    /// (seed, index) per certified sample.
    pub per_sample: Vec<(u64, IndexSearch)>,
    /// Seeds whose sample could not be certified.
    pub rejected: Vec<u64>,
    /// A sample realizing the minimum.
    pub best: Option<JointReduction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModElementComparison {
    Skipped(String),
    Compared { original: IndexSearch, reduced: IndexSearch },
}

impl ModElementComparison {
    pub fn agrees(&self) -> Option<bool> {
        match self {
            ModElementComparison::Skipped(_) => None,
            ModElementComparison::Compared { original, reduced } => Some(original == reduced),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthBoundConditions {
    /// mI^2 = xI^2 + JmI.
    pub condition_i: bool,
    /// a_1..a_{d-1} regular in G(I) (initial forms a°).
    pub graded_regular: bool,
    /// a_1..a_{d-1} regular in F(I) (initial forms a*).
    pub fiber_regular: bool,
}

impl DepthBoundConditions {
    pub fn applicable_graded(&self) -> bool {
        self.condition_i && self.graded_regular
    }

    pub fn applicable_fiber(&self) -> bool {
        self.condition_i && self.fiber_regular
    }
}

impl PolyCase {
    pub fn new(ring: PolyRing, ideal: MonomialIdeal) -> Result<Self> {
        if ideal.dim() != ring.nvars() {
            return Err(Error::DimensionMismatch { expected: ring.nvars(), got: ideal.dim() });
        }
        ideal.staircase_bound()?;
        let max = MonomialIdeal::maximal(ring.nvars());
        Ok(PolyCase { ring, ideal, max, cache: Mutex::new(HashMap::new()), reduction_cache: Mutex::new(Vec::new()) })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        self.ideal.power(n)
    }

    /// m I^n.
    pub fn m_power(&self, n: u32) -> MonomialIdeal {
        self.ideal.power(n).product(&self.max)
    }

    fn gens_of(&self, i: &MonomialIdeal) -> Vec<Poly> {
        self.ring.monomial_ideal_gens(i)
    }

    fn cached(&self, with_m: bool, n: u32) -> Result<Arc<LocalIdeal>> {
        if let Some(l) = self.cache.lock().unwrap().get(&(with_m, n)) {
            return Ok(l.clone());
        }
        let mono = if with_m { self.m_power(n) } else { self.power(n) };
        let l = Arc::new(LocalIdeal::from_monomial(&self.ring, &mono)?);
        self.cache.lock().unwrap().insert((with_m, n), l.clone());
        Ok(l)
    }

    /// Local ideal I^n + L (or mI^n + L).
    fn local(&self, with_m: bool, n: u32, extra: &[Poly]) -> Result<Arc<LocalIdeal>> {
        let base = self.cached(with_m, n)?;
        if extra.is_empty() {
            return Ok(base);
        }
        Ok(Arc::new(base.adjoin(&self.ring, extra)?))
    }

    /// Local ideal of arbitrary generators, truncated by powers of m times the
    /// monomial ideal `within` (any m-primary monomial ideal; ideally one
    /// containing the generators).
    fn local_gens(&self, gens: Vec<Poly>, extra: &[Poly], within: &MonomialIdeal) -> Result<LocalIdeal> {
        let mut gens = gens;
        gens.extend(extra.iter().cloned());
        LocalIdeal::new_within(&self.ring, &gens, within, LocalOptions::default())
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Random element of I.
    pub fn generic_element(&self, rng: &mut ChaCha8Rng) -> Poly {
        self.ring.random_combination(rng, &self.gens_of(&self.ideal))
    }

    /// Candidate joint reduction of (m^{[d-j]} | I^{[j]}).
    pub fn sample_joint_reduction(&self, j: usize, seed: u64) -> JointReduction {
        let d = self.dim();
        assert!(j <= d);
        let mut rng = Self::rng(seed);
        let m_part = (0..d - j).map(|_| self.ring.random_linear_form(&mut rng)).collect();
        let i_part = (0..j).map(|_| self.generic_element(&mut rng)).collect();
        JointReduction { m_part, i_part, seed, certificate: None }
    }

    /// Smallest n <= nmax with Σ x_k m^{p-1} I^q P^{n-1} + Σ a_k m^p I^{q-1} P^{n-1} = P^n,
    /// P = m^p I^q.
    pub fn certify_joint_reduction(&self, jr: &mut JointReduction, nmax: u32) -> Result<IndexSearch> {
        let d = self.dim();
        let (p, q) = (jr.m_part.len() as u32, jr.i_part.len() as u32);
        assert_eq!((p + q) as usize, d);
        if jr.m_part.iter().chain(&jr.i_part).any(|f| f.is_zero()) {
            jr.certificate = Some(IndexSearch::NotFoundUpTo(nmax));
            return Ok(IndexSearch::NotFoundUpTo(nmax));
        }
        let mp = |k: u32| MonomialIdeal::max_power(d, k);
        let big_p = mp(p).product(&self.ideal.power(q));
        for n in 1..=nmax {
            let pn1 = big_p.power(n - 1);
            let target = big_p.power(n);
            let mut gens = Vec::new();
            if p > 0 {
                let co = mp(p - 1).product(&self.ideal.power(q)).product(&pn1);
                for x in &jr.m_part {
                    gens.extend(self.ring.times_monomial_ideal(x, &co));
                }
            }
            if q > 0 {
                let co = mp(p).product(&self.ideal.power(q - 1)).product(&pn1);
                for a in &jr.i_part {
                    gens.extend(self.ring.times_monomial_ideal(a, &co));
                }
            }
            let t = LocalIdeal::from_monomial(&self.ring, &target)?;
            let b = self.local_gens(gens, &[], &target)?;
            if t.equals_superset_of(&self.ring, &b)? {
                jr.certificate = Some(IndexSearch::Found(n));
                return Ok(IndexSearch::Found(n));
            }
        }
        jr.certificate = Some(IndexSearch::NotFoundUpTo(nmax));
        Ok(IndexSearch::NotFoundUpTo(nmax))
    }

    /// xI^n + (a_1..a_{d-1}) m I^{n-1} + L.
    fn reduction_ideal(&self, jr: &JointReduction, n: u32, extra: &[Poly]) -> Result<Arc<LocalIdeal>> {
        let key: Vec<Poly> = jr.m_part.iter().chain(&jr.i_part).cloned().collect();
        if extra.is_empty() {
            let cache = self.reduction_cache.lock().unwrap();
            if let Some((_, _, l)) = cache.iter().find(|(k, m, _)| *m == n && *k == key) {
                return Ok(l.clone());
            }
        }
        let mut gens = self.ring.times_monomial_ideal(jr.x(), &self.power(n));
        let mi = self.m_power(n - 1);
        for a in &jr.i_part {
            gens.extend(self.ring.times_monomial_ideal(a, &mi));
        }
        let l = Arc::new(self.local_gens(gens, extra, &self.m_power(n))?);
        if extra.is_empty() {
            self.reduction_cache.lock().unwrap().push((key, n, l.clone()));
        }
        Ok(l)
    }

    /// r_J(m|I) modulo the elements `extra`, using only `i_part` of `jr`.
    fn rm_index_with(&self, jr: &JointReduction, nmax: u32, extra: &[Poly]) -> Result<IndexSearch> {
        for n in 1..=nmax {
            let a = self.local(true, n, extra)?;
            let b = self.reduction_ideal(jr, n, extra)?;
            if a.equals_superset_of(&self.ring, &b)? {
                return Ok(IndexSearch::Found(n));
            }
        }
        Ok(IndexSearch::NotFoundUpTo(nmax))
    }

    /// r_J(m|I): smallest n <= nmax with mI^n = xI^n + (a_1..a_{d-1})mI^{n-1}.
    pub fn rm_index(&self, jr: &JointReduction, nmax: u32) -> Result<IndexSearch> {
        self.rm_index_with(jr, nmax, &[])
    }

    /// Certified joint reductions of (m|I^{[d-1]}) from seeds base, base+1, ...
    /// (up to 2k attempts for k certified samples).
    pub fn certified_joint_reductions(&self, k: usize, base_seed: u64, nmax: u32) -> Result<(Vec<JointReduction>, Vec<u64>)> {
        let d = self.dim();
        let mut good = Vec::new();
        let mut rejected = Vec::new();
        let mut next = base_seed;
        while good.len() < k && (next - base_seed) < 2 * k as u64 {
            let want = k - good.len();
            let seeds: Vec<u64> = (next..next + want as u64).collect();
            next += want as u64;
            let results: Vec<Result<JointReduction>> = seeds
                .par_iter()
                .map(|&s| {
                    let mut jr = self.sample_joint_reduction(d - 1, s);
                    self.certify_joint_reduction(&mut jr, nmax)?;
                    Ok(jr)
                })
                .collect();
            for r in results {
                let jr = r?;
                if jr.is_certified() {
                    good.push(jr);
                } else {
                    rejected.push(jr.seed);
                }
            }
        }
        Ok((good, rejected))
    }

    /// r(m|I) as the minimum of r_J(m|I) over k certified joint reductions.
    pub fn sampled_rm_index(&self, k: usize, base_seed: u64, nmax_cert: u32, n_max: u32) -> Result<SampledIndex> {
        let (jrs, rejected) = self.certified_joint_reductions(k, base_seed, nmax_cert)?;
        let idx: Vec<Result<IndexSearch>> = jrs.par_iter().map(|jr| self.rm_index(jr, n_max)).collect();
        let mut per_sample = Vec::new();
        let mut best: Option<(u32, JointReduction)> = None;
        for (jr, r) in jrs.iter().zip(idx) {
            let r = r?;
            per_sample.push((jr.seed, r));
            if let IndexSearch::Found(n) = r {
                if best.as_ref().is_none_or(|(b, _)| n < *b) {
                    best = Some((n, jr.clone()));
                }
            }
        }
        let min = best.as_ref().map_or(IndexSearch::NotFoundUpTo(n_max), |(n, _)| IndexSearch::Found(*n));
        let best = best.map(|(_, jr)| jr).or_else(|| jrs.first().cloned());
        Ok(SampledIndex { min, per_sample, rejected, best })
    }

    /// r_J(I) for J = d generic elements of I: smallest n with J I^n = I^{n+1}.
    pub fn reduction_index(&self, j: &[Poly], n_max: u32) -> Result<IndexSearch> {
        for n in 0..=n_max {
            let target = self.cached(false, n + 1)?;
            let ipow = self.power(n);
            let gens: Vec<Poly> = j.iter().flat_map(|a| self.ring.times_monomial_ideal(a, &ipow)).collect();
            let b = self.local_gens(gens, &[], &self.power(n + 1))?;
            if target.equals_superset_of(&self.ring, &b)? {
                return Ok(IndexSearch::Found(n));
            }
        }
        Ok(IndexSearch::NotFoundUpTo(n_max))
    }

    /// r(I) as the minimum over `samples` generic minimal reductions.
    pub fn reduction_number(&self, samples: usize, base_seed: u64, n_max: u32) -> Result<SampledIndex> {
        let d = self.dim();
        let seeds: Vec<u64> = (base_seed..base_seed + samples as u64).collect();
        let results: Vec<Result<(JointReduction, IndexSearch)>> = seeds
            .par_iter()
            .map(|&s| {
                let mut jr = self.sample_joint_reduction(d, s);
                let r = self.reduction_index(&jr.i_part, n_max)?;
                jr.certificate = Some(r);
                Ok((jr, r))
            })
            .collect();
        let mut per_sample = Vec::new();
        let mut rejected = Vec::new();
        let mut best: Option<(u32, JointReduction)> = None;
        for r in results {
            let (jr, idx) = r?;
            match idx {
                IndexSearch::Found(n) => {
                    per_sample.push((jr.seed, idx));
                    if best.as_ref().is_none_or(|(b, _)| n < *b) {
                        best = Some((n, jr));
                    }
                }
                IndexSearch::NotFoundUpTo(_) => rejected.push(jr.seed),
            }
        }
        match best {
            None => Err(Error::NoReductionFound(n_max)),
            Some((n, jr)) => Ok(SampledIndex { min: IndexSearch::Found(n), per_sample, rejected, best: Some(jr) }),
        }
    }

    /// ℓ(I^2 / (JI + mI^2)).
    pub fn cm_defect_length(&self, j: &[Poly]) -> Result<u64> {
        let i2 = self.cached(false, 2)?;
        let mut gens: Vec<Poly> = j.iter().flat_map(|a| self.ring.times_monomial_ideal(a, &self.ideal)).collect();
        gens.extend(self.gens_of(&self.m_power(2)));
        let b = self.local_gens(gens, &[], &self.power(2))?;
        if let Some(k) = i2.first_outside(&self.ring, &b) {
            return Err(Error::ContainmentFailed(k));
        }
        Ok(b.colength() - i2.colength())
    }

    /// Deficits for n = 1..=N; in d = 2 also the corrections and, given
    /// e_1(m|I), the telescoping identity.
    pub fn deficit_profile(&self, jr: &JointReduction, n_max: u32, e1: Option<i64>) -> Result<DeficitProfile> {
        let values: Vec<u64> = (1..=n_max)
            .into_par_iter()
            .map(|n| {
                let a = self.cached(true, n)?;
                let b = self.reduction_ideal(jr, n, &[])?;
                if let Some(k) = a.first_outside(&self.ring, &b) {
                    return Err(Error::ContainmentFailed(k));
                }
                Ok(b.colength() - a.colength())
            })
            .collect::<Result<_>>()?;
        if self.dim() != 2 {
            return Ok(DeficitProfile { values, corrections: None, telescoping: None });
        }
        let a = &jr.i_part[0];
        let corrections: Vec<u64> = (1..=n_max)
            .into_par_iter()
            .map(|n| {
                let mi = self.cached(true, n - 1)?;
                let ipow = self.cached(false, n)?;
                let prev = self.cached(false, n - 1)?;
                let k = mi.colon_intersection(&self.ring, jr.x(), &ipow, a);
                if let Some(j) = k.first_outside(&self.ring, &prev) {
                    return Err(Error::ContainmentFailed(j));
                }
                Ok(prev.colength() - k.colength())
            })
            .collect::<Result<_>>()?;
        let telescoping = e1.map(|e1| {
            let mu = self.ideal.mu_powers(n_max);
            (1..=n_max as usize)
                .map(|n| {
                    mu[n] as i64 - mu[n - 1] as i64 == e1 - values[n - 1] as i64 + corrections[n - 1] as i64
                })
                .collect()
        });
        Ok(DeficitProfile { values, corrections: Some(corrections), telescoping })
    }

    fn fmt(&self, f: &Poly) -> String {
        self.ring.format(f)
    }

    /// ((mI^{n+1} + L) : a) ∩ (I^n + L) = mI^n + L for n = 0..=N.
    pub fn nzd_fiber(&self, a: &Poly, n_max: u32, extra: &[Poly]) -> Result<CertStatus> {
        for n in 0..=n_max {
            let top = self.local(true, n + 1, extra)?;
            let ipow = self.local(false, n, extra)?;
            let small = self.local(true, n, extra)?;
            let k = top.colon(&self.ring, a).intersection(&self.ring, &ipow);
            if k.colength() != small.colength() {
                let w = k.gb().iter().find(|g| !small.contains(&self.ring, g)).cloned().unwrap_or_default();
                return Ok(CertStatus::FailedAt { n, witness: self.fmt(&w) });
            }
        }
        Ok(CertStatus::Certified(n_max))
    }

    /// ((I^n + L) : a) = I^{n-1} + L for n = 1..=N.
    pub fn nzd_graded(&self, a: &Poly, n_max: u32, extra: &[Poly]) -> Result<CertStatus> {
        for n in 1..=n_max {
            let ipow = self.local(false, n, extra)?;
            let prev = self.local(false, n - 1, extra)?;
            let q = ipow.colon(&self.ring, a);
            if q.colength() != prev.colength() {
                let w = q.gb().iter().find(|g| !prev.contains(&self.ring, g)).cloned().unwrap_or_default();
                return Ok(CertStatus::FailedAt { n, witness: self.fmt(&w) });
            }
        }
        Ok(CertStatus::Certified(n_max))
    }

    /// Smallest-degree monomial w ∈ I^k \ I^{k+1} with w I ⊆ I^{k+2}, k <= n_max.
    pub fn graded_zero_witness(&self, n_max: u32) -> Option<(u32, Monomial)> {
        (0..=n_max).find_map(|k| {
            let ann = self.power(k + 2).quotient(&self.ideal).intersection(&self.power(k));
            let next = self.power(k + 1);
            ann.gens().iter().find(|g| !next.contains(g)).map(|g| (k, *g))
        })
    }

    /// Smallest-degree monomial w ∈ I^k \ mI^k with w I ⊆ mI^{k+1}, k <= n_max.
    pub fn fiber_zero_witness(&self, n_max: u32) -> Option<(u32, Monomial)> {
        (0..=n_max).find_map(|k| {
            let ann = self.m_power(k + 1).quotient(&self.ideal).intersection(&self.power(k));
            let small = self.m_power(k);
            ann.gens().iter().find(|g| !small.contains(g)).map(|g| (k, *g))
        })
    }

    /// Greedy chain: each accepted element passes its criterion modulo the
    /// previously accepted ones; at most `samples` candidates per step.
    ///
    /// Going modulo an element is faithful for G(I) once its initial form is
    /// regular there. For F(I) the element must in addition be regular in
    /// G(I); an element regular only in F(I) ends the fiber chain.
    fn chain(&self, samples: usize, seed: u64, n_max: u32, graded: bool) -> Result<(Vec<Poly>, CertStatus, Option<String>)> {
        let d = self.dim();
        let mut rng = Self::rng(seed);
        let mut accepted: Vec<Poly> = Vec::new();
        let mut last_fail = None;
        let mut note = None;
        'steps: while accepted.len() < d {
            let mut terminal = None;
            for _ in 0..samples {
                let a = self.generic_element(&mut rng);
                if graded {
                    match self.nzd_graded(&a, n_max, &accepted)? {
                        CertStatus::Certified(_) => {
                            accepted.push(a);
                            continue 'steps;
                        }
                        fail => last_fail = Some(fail),
                    }
                    continue;
                }
                match self.nzd_fiber(&a, n_max, &accepted)? {
                    CertStatus::Certified(_) => {
                        if accepted.len() + 1 == d || self.nzd_graded(&a, n_max, &accepted)?.is_certified() {
                            accepted.push(a);
                            continue 'steps;
                        }
                        terminal.get_or_insert(a);
                    }
                    fail => last_fail = Some(fail),
                }
            }
            if let Some(a) = terminal {
                accepted.push(a);
                if accepted.len() < d {
                    note = Some(format!(
                        "element {} is regular in F(I) but not certified regular in G(I); chain not extended",
                        accepted.len()
                    ));
                }
                return Ok((accepted, CertStatus::Certified(n_max), note));
            }
            break;
        }
        let status = if accepted.len() == d {
            CertStatus::Certified(n_max)
        } else {
            last_fail.unwrap_or(CertStatus::Certified(n_max))
        };
        Ok((accepted, status, note))
    }

    pub fn depth_certificates(&self, n_max: u32, samples: usize, seed: u64) -> Result<DepthCertificate> {
        let (g, f) = rayon::join(
            || self.chain(samples, seed, n_max, true),
            || self.chain(samples, seed.wrapping_add(0x5eed), n_max, false),
        );
        let (graded, graded_status, _) = g?;
        let (fiber, fiber_status, fiber_note) = f?;
        let names = self.ring.names().to_vec();
        let graded_zero_witness = if graded.is_empty() {
            self.graded_zero_witness(n_max).map(|(k, w)| (k, w.fmt_with(&names)))
        } else {
            None
        };
        let fiber_zero_witness = if fiber.is_empty() {
            self.fiber_zero_witness(n_max).map(|(k, w)| (k, w.fmt_with(&names)))
        } else {
            None
        };
        let graded_status = match (&graded_zero_witness, graded_status) {
            (Some((k, w)), CertStatus::FailedAt { .. }) => CertStatus::FailedAt { n: *k, witness: w.clone() },
            (_, s) => s,
        };
        let fiber_status = match (&fiber_zero_witness, fiber_status) {
            (Some((k, w)), CertStatus::FailedAt { .. }) => CertStatus::FailedAt { n: *k, witness: w.clone() },
            (_, s) => s,
        };
        Ok(DepthCertificate {
            gamma_lb: graded.len(),
            phi_lb: fiber.len(),
            graded_chain: graded.iter().map(|f| self.fmt(f)).collect(),
            fiber_chain: fiber.iter().map(|f| self.fmt(f)).collect(),
            bound: n_max,
            graded_status,
            fiber_status,
            graded_zero_witness,
            fiber_zero_witness,
            fiber_note,
            samples,
        })
    }

    /// r_J(m|I) against r_{J'}(m'|I') in R' = R/(a_1), J' = (x, a_2, ...).
    pub fn rm_index_mod_element(&self, jr: &JointReduction, n_max: u32, crit_n: u32) -> Result<ModElementComparison> {
        if jr.i_part.is_empty() {
            return Ok(ModElementComparison::Skipped("no element of I to divide by".into()));
        }
        let a1 = &jr.i_part[0];
        if !self.nzd_fiber(a1, crit_n, &[])?.is_certified() {
            return Ok(ModElementComparison::Skipped("a_1* is not certified regular in F(I)".into()));
        }
        if !self.nzd_graded(a1, crit_n, &[])?.is_certified() {
            return Ok(ModElementComparison::Skipped("a_1° is not certified regular in G(I)".into()));
        }
        let original = self.rm_index(jr, n_max)?;
        let rest = JointReduction { i_part: jr.i_part[1..].to_vec(), certificate: None, ..jr.clone() };
        let reduced = self.rm_index_with(&rest, n_max, std::slice::from_ref(a1))?;
        Ok(ModElementComparison::Compared { original, reduced })
    }

    /// Conditions of the depth bound depth F(I) >= d - 1: (i) mI^2 = xI^2 + JmI,
    /// (ii) a_1..a_{d-1} regular, read both in G(I) and in F(I).
    pub fn prop56_depth_bound(&self, jr: &JointReduction, crit_n: u32) -> Result<DepthBoundConditions> {
        if self.dim() < 2 {
            return Err(Error::Semantic("the depth bound needs dimension at least 2".into()));
        }
        if !jr.is_certified() {
            return Err(Error::UncertifiedJointReduction);
        }
        let a = self.cached(true, 2)?;
        let b = self.reduction_ideal(jr, 2, &[])?;
        let condition_i = a.equals_superset_of(&self.ring, &b)?;
        let mut graded_regular = true;
        let mut fiber_regular = true;
        for k in 0..jr.i_part.len() {
            let prev = &jr.i_part[..k];
            if graded_regular && !self.nzd_graded(&jr.i_part[k], crit_n, prev)?.is_certified() {
                graded_regular = false;
            }
            if fiber_regular && !self.nzd_fiber(&jr.i_part[k], crit_n, prev)?.is_certified() {
                fiber_regular = false;
            }
        }
        Ok(DepthBoundConditions { condition_i, graded_regular, fiber_regular })
    }
}

/// The four lengths of the exact sequence
/// 0 → R/((A:y) ∩ (B:x)) → R/A ⊕ R/B → (x,y)/(xA + yB) → 0
/// for a regular sequence x, y, each computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactSequenceLengths {
    /// ℓ((x,y)/(xA + yB)) = ℓ(R/(xA + yB)) - ℓ(R/(x,y)).
    pub cokernel: u64,
    pub quotient_a: u64,
    pub quotient_b: u64,
    /// ℓ(R/((A:y) ∩ (B:x))).
    pub kernel: u64,
}

impl ExactSequenceLengths {
    pub fn holds(&self) -> bool {
        self.cokernel + self.kernel == self.quotient_a + self.quotient_b
    }
}

pub fn exact_sequence_lengths(
    ring: &PolyRing,
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    x: &Poly,
    y: &Poly,
) -> Result<ExactSequenceLengths> {
    let la = LocalIdeal::from_monomial(ring, a)?;
    let lb = LocalIdeal::from_monomial(ring, b)?;
    let xy = LocalIdeal::new(ring, &[x.clone(), y.clone()], LocalOptions::default())?;
    let mut gens = ring.times_monomial_ideal(x, a);
    gens.extend(ring.times_monomial_ideal(y, b));
    let start = la.certificate().n_star.max(lb.certificate().n_star) + 1;
    let sum = LocalIdeal::new(ring, &gens, LocalOptions::starting_at(start))?;
    let kernel = la.colon(ring, y).intersection(ring, &lb.colon(ring, x));
    Ok(ExactSequenceLengths {
        cokernel: sum.colength() - xy.colength(),
        quotient_a: la.colength(),
        quotient_b: lb.colength(),
        kernel: kernel.colength(),
    })
}

// Dimension one: the canonical elements are x = t^e for m and a = t^b,
// b = order(I), for I.

/// (I^n : t^b) = I^{n-1} for n = 1..=N.
pub fn sg_nzd_graded(i: &SemigroupIdeal, b: u32, n_max: u32) -> CertStatus {
    for n in 1..=n_max {
        let q = i.power(n).colon_element(b);
        let prev = i.power(n - 1);
        if q != prev {
            let w = q.mingens().iter().copied().find(|&g| !prev.contains(g)).unwrap_or(0);
            return CertStatus::FailedAt { n, witness: format!("t^{w}") };
        }
    }
    CertStatus::Certified(n_max)
}

/// (mI^{n+1} : t^b) ∩ I^n = mI^n for n = 0..=N.
pub fn sg_nzd_fiber(i: &SemigroupIdeal, b: u32, n_max: u32) -> CertStatus {
    let m = SemigroupIdeal::maximal(i.ambient().clone());
    for n in 0..=n_max {
        let top = m.product(&i.power(n + 1)).expect("same ambient");
        let k = top.colon_element(b).intersection(&i.power(n)).expect("same ambient");
        let small = m.product(&i.power(n)).expect("same ambient");
        if k != small {
            let w = k.mingens().iter().copied().find(|&g| !small.contains(g)).unwrap_or(0);
            return CertStatus::FailedAt { n, witness: format!("t^{w}") };
        }
    }
    CertStatus::Certified(n_max)
}

/// Smallest w ∈ I^k \ I^{k+1} with w + I ⊆ I^{k+2}.
pub fn sg_graded_zero_witness(i: &SemigroupIdeal, n_max: u32) -> Option<(u32, u32)> {
    (0..=n_max).find_map(|k| {
        let (ik, ik1, ik2) = (i.power(k), i.power(k + 1), i.power(k + 2));
        let bound = ik2.fill_bound() + i.ambient().multiplicity();
        (0..bound)
            .find(|&w| ik.contains(w) && !ik1.contains(w) && i.mingens().iter().all(|&g| ik2.contains(w + g)))
            .map(|w| (k, w))
    })
}

/// Smallest w ∈ I^k \ mI^k with w + I ⊆ mI^{k+1}.
pub fn sg_fiber_zero_witness(i: &SemigroupIdeal, n_max: u32) -> Option<(u32, u32)> {
    let m = SemigroupIdeal::maximal(i.ambient().clone());
    (0..=n_max).find_map(|k| {
        let ik = i.power(k);
        let (mk, mk1) = (m.product(&ik).unwrap(), m.product(&i.power(k + 1)).unwrap());
        let bound = mk1.fill_bound() + i.ambient().multiplicity();
        (0..bound)
            .find(|&w| ik.contains(w) && !mk.contains(w) && i.mingens().iter().all(|&g| mk1.contains(w + g)))
            .map(|w| (k, w))
    })
}

pub fn sg_depth_certificates(i: &SemigroupIdeal, n_max: u32) -> DepthCertificate {
    let b = i.order();
    let gs = sg_nzd_graded(i, b, n_max);
    let fs = sg_nzd_fiber(i, b, n_max);
    let gz = if gs.is_certified() { None } else { sg_graded_zero_witness(i, n_max) };
    let fz = if fs.is_certified() { None } else { sg_fiber_zero_witness(i, n_max) };
    let graded_status = match (&gz, gs) {
        (Some((k, w)), CertStatus::FailedAt { .. }) => CertStatus::FailedAt { n: *k, witness: format!("t^{w}") },
        (_, s) => s,
    };
    let fiber_status = match (&fz, fs) {
        (Some((k, w)), CertStatus::FailedAt { .. }) => CertStatus::FailedAt { n: *k, witness: format!("t^{w}") },
        (_, s) => s,
    };
    DepthCertificate {
        gamma_lb: graded_status.is_certified() as usize,
        phi_lb: fiber_status.is_certified() as usize,
        graded_chain: if graded_status.is_certified() { vec![format!("t^{b}")] } else { vec![] },
        fiber_chain: if fiber_status.is_certified() { vec![format!("t^{b}")] } else { vec![] },
        bound: n_max,
        graded_status,
        fiber_status,
        graded_zero_witness: gz.map(|(k, w)| (k, format!("t^{w}"))),
        fiber_zero_witness: fz.map(|(k, w)| (k, format!("t^{w}"))),
        fiber_note: None,
        samples: 1,
    }
}

/// ℓ(I^2 / (t^b I + mI^2)) in dimension one.
pub fn sg_cm_defect_length(i: &SemigroupIdeal) -> u64 {
    let m = SemigroupIdeal::maximal(i.ambient().clone());
    let i2 = i.power(2);
    let sub = i.shift(i.order()).sum(&m.product(&i2).unwrap()).unwrap();
    sub.relative_length(&i2).expect("t^b I + m I^2 lies in I^2")
}
