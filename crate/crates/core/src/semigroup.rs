//! Numerical semigroup rings k[[t^a1, ..., t^ak]] and their monomial ideals,
//! handled exactly through exponent sets.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hilbert::{self, Numerator, Verdict};
use crate::IndexSearch;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gens: Vec<u32>,
    conductor: u32,
    /// Membership for 0..conductor.
    members: Vec<bool>,
}

impl NumericalSemigroup {
    /// Normalizes the generators to the minimal generating set and computes
    /// the gap set. The membership scan stops once `multiplicity` consecutive
    /// members have been seen, after which every integer is a member.
    pub fn new(gens: &[u32]) -> Result<Self> {
        if gens.is_empty() || gens.contains(&0) {
            return Err(Error::Semantic("semigroup generators must be positive".into()));
        }
        let g = gens.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::NotNumericalSemigroup(gens.to_vec(), g));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mult = sorted[0] as usize;
        let mut members = vec![true];
        let mut run = 1usize;
        let mut n = 1usize;
        while run < mult {
            let is = sorted.iter().any(|&a| a as usize <= n && members[n - a as usize]);
            members.push(is);
            run = if is { run + 1 } else { 0 };
            n += 1;
        }
        // members.len() - run is the first element of the final run.
        let conductor = (members.len() - run) as u32;
        members.truncate(conductor as usize);
        let mut s = Self { gens: Vec::new(), conductor, members };
        // Minimal generators: elements not a sum of two nonzero members.
        let mut minimal = Vec::new();
        for &a in &sorted {
            let decomposable = (1..a).any(|b| s.contains(b) && s.contains(a - b));
            if !decomposable {
                minimal.push(a);
            }
        }
        s.gens = minimal;
        Ok(s)
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    /// Smallest nonzero element; equals e(R).
    pub fn multiplicity(&self) -> u32 {
        self.gens[0]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Largest gap, or -1 when the semigroup is all of N.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor).filter(|&n| !self.contains(n)).collect()
    }

    #[inline]
    pub fn contains(&self, n: u32) -> bool {
        n >= self.conductor || self.members[n as usize]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.gens.len()
    }
}

/// A monomial ideal of a semigroup ring, stored by the exponents of its
/// minimal generators; its exponent set is the union of mingens[i] + S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupIdeal {
    ambient: Arc<NumericalSemigroup>,
    mingens: Vec<u32>,
}

impl SemigroupIdeal {
    pub fn new(ambient: Arc<NumericalSemigroup>, gens: &[u32]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Semantic("ideal needs at least one generator".into()));
        }
        if let Some(&g) = gens.iter().find(|&&g| !ambient.contains(g)) {
            return Err(Error::NotInSemigroup(g));
        }
        Ok(Self::minimalized(ambient, gens.to_vec()))
    }

    fn minimalized(ambient: Arc<NumericalSemigroup>, mut gens: Vec<u32>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        let mut kept: Vec<u32> = Vec::new();
        for g in gens {
            if !kept.iter().any(|&k| ambient.contains(g - k)) {
                kept.push(g);
            }
        }
        Self { ambient, mingens: kept }
    }

    pub fn unit(ambient: Arc<NumericalSemigroup>) -> Self {
        Self { ambient, mingens: vec![0] }
    }

    /// The maximal ideal, generated by the semigroup generators.
    pub fn maximal(ambient: Arc<NumericalSemigroup>) -> Self {
        let gens = ambient.gens().to_vec();
        Self { ambient, mingens: gens }
    }

    pub fn principal(ambient: Arc<NumericalSemigroup>, b: u32) -> Result<Self> {
        Self::new(ambient, &[b])
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        &self.ambient
    }

    pub fn mingens(&self) -> &[u32] {
        &self.mingens
    }

    pub fn mu(&self) -> usize {
        self.mingens.len()
    }

    pub fn is_unit(&self) -> bool {
        self.mingens[0] == 0
    }

    pub fn order(&self) -> u32 {
        self.mingens[0]
    }

    pub fn contains(&self, e: u32) -> bool {
        self.mingens.iter().any(|&g| g <= e && self.ambient.contains(e - g))
    }

    /// Every integer at or above this value lies in the exponent set.
    pub fn fill_bound(&self) -> u32 {
        self.ambient.conductor() + self.mingens[0]
    }

    fn check_ambient(&self, other: &SemigroupIdeal) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn product(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal> {
        self.check_ambient(other)?;
        let sums = self.mingens.iter().flat_map(|a| other.mingens.iter().map(move |b| a + b)).collect();
        Ok(Self::minimalized(self.ambient.clone(), sums))
    }

    /// I^n by repeated squaring; n = 0 gives the unit ideal.
    pub fn power(&self, n: u32) -> SemigroupIdeal {
        let mut result = Self::unit(self.ambient.clone());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base).expect("same ambient");
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base).expect("same ambient");
            }
        }
        result
    }

    /// b + E, the product with the principal ideal (t^b).
    pub fn shift(&self, b: u32) -> SemigroupIdeal {
        Self { ambient: self.ambient.clone(), mingens: self.mingens.iter().map(|g| g + b).collect() }
    }

    pub fn sum(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal> {
        self.check_ambient(other)?;
        let all = self.mingens.iter().chain(&other.mingens).copied().collect();
        Ok(Self::minimalized(self.ambient.clone(), all))
    }

    /// |S \ E|.
    pub fn colength(&self) -> u64 {
        let bound = self.fill_bound() + self.mingens.last().copied().unwrap_or(0);
        (0..bound).filter(|&e| self.ambient.contains(e) && !self.contains(e)).count() as u64
    }

    /// Length of other/self for self contained in other.
    pub fn relative_length(&self, larger: &SemigroupIdeal) -> Result<u64> {
        self.check_ambient(larger)?;
        if !self.mingens.iter().all(|&g| larger.contains(g)) {
            return Err(Error::ContainmentFailed(0));
        }
        Ok(self.colength() - larger.colength())
    }

    pub fn is_subset_of(&self, other: &SemigroupIdeal) -> bool {
        self.mingens.iter().all(|&g| other.contains(g))
    }

    /// Builds the ideal with the given membership predicate, assuming every
    /// integer at or beyond `bound` is a member.
    fn from_predicate(ambient: Arc<NumericalSemigroup>, bound: u32, member: impl Fn(u32) -> bool) -> Self {
        let top = bound + ambient.multiplicity();
        let elems: Vec<u32> = (0..top).filter(|&e| ambient.contains(e) && (e >= bound || member(e))).collect();
        Self::minimalized(ambient, elems)
    }

    /// (E : t^b) = { s in S : s + b in E }.
    pub fn colon_element(&self, b: u32) -> SemigroupIdeal {
        let bound = self.fill_bound();
        Self::from_predicate(self.ambient.clone(), bound, |s| self.contains(s + b))
    }

    pub fn intersection(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal> {
        self.check_ambient(other)?;
        let bound = self.fill_bound().max(other.fill_bound());
        Ok(Self::from_predicate(self.ambient.clone(), bound, |s| self.contains(s) && other.contains(s)))
    }
}

/// [mu(I^0), ..., mu(I^n_max)].
pub fn mu_powers(i: &SemigroupIdeal, n_max: u32) -> Vec<u64> {
    let mut out = vec![1];
    let mut cur = SemigroupIdeal::unit(i.ambient.clone());
    for _ in 1..=n_max {
        cur = cur.product(i).expect("same ambient");
        out.push(cur.mu() as u64);
    }
    out
}

/// l(m I^n / x I^n) with x = t^e, e the multiplicity.
pub fn max_deficit(i: &SemigroupIdeal, n: u32) -> u64 {
    let s = i.ambient.clone();
    let m = SemigroupIdeal::maximal(s.clone());
    let pow = i.power(n);
    let mi = m.product(&pow).expect("same ambient");
    let xi = pow.shift(s.multiplicity());
    xi.relative_length(&mi).expect("x I^n is inside m I^n")
}

/// Smallest n in 1..=n_max with m I^n = t^e I^n.
pub fn rm_index(i: &SemigroupIdeal, n_max: u32) -> IndexSearch {
    for n in 1..=n_max {
        if max_deficit(i, n) == 0 {
            return IndexSearch::Found(n);
        }
    }
    IndexSearch::NotFoundUpTo(n_max)
}

/// Smallest n in 0..=n_max with I^{n+1} = t^b I^n, b the order of I.
pub fn reduction_number(i: &SemigroupIdeal, n_max: u32) -> IndexSearch {
    let b = i.order();
    let mut pow = SemigroupIdeal::unit(i.ambient.clone());
    for n in 0..=n_max {
        let next = pow.product(i).expect("same ambient");
        if next == pow.shift(b) {
            return IndexSearch::Found(n);
        }
        pow = next;
    }
    IndexSearch::NotFoundUpTo(n_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim1Scope {
    /// mu(I) = e(R).
    Minimal,
    /// mu(I) = e(R) - 1.
    AlmostMinimal,
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim1Check {
    pub multiplicity: u32,
    pub mu: u32,
    pub scope: Dim1Scope,
    pub rm_index: IndexSearch,
    pub predicted: Option<Numerator>,
    pub observed_mu: Vec<u64>,
    pub observed_numerator: Option<Numerator>,
    /// l(m I^n / x I^n) for n = 0..=N.
    pub deficits: Vec<u64>,
    /// mu(I^n) = e(R) - l(m I^n / x I^n) for every n <= N.
    pub identity_holds: bool,
    pub verdict: Verdict,
}

/// Compares the observed fiber-cone series of a semigroup ideal with the
/// closed forms for mu(I) = e(R) and mu(I) = e(R) - 1.
pub fn dim1_theorem_check(i: &SemigroupIdeal, n: u32, guard: usize) -> Dim1Check {
    let e = i.ambient.multiplicity();
    let mu = i.mu() as u32;
    let scope = if mu == e {
        Dim1Scope::Minimal
    } else if mu + 1 == e {
        Dim1Scope::AlmostMinimal
    } else {
        Dim1Scope::OutOfScope
    };
    let rm = rm_index(i, n.max(1));
    // Extend the truncation so a finite index is visible before the guard window.
    let trunc = match rm {
        IndexSearch::Found(s) => n.max(s + guard as u32 + 2),
        IndexSearch::NotFoundUpTo(_) => n,
    };
    let observed_mu = mu_powers(i, trunc);
    let deficits: Vec<u64> = (0..=trunc).map(|k| max_deficit(i, k)).collect();
    let identity_holds = observed_mu.iter().zip(&deficits).all(|(&m, &d)| m + d == e as u64);
    let observed_numerator = hilbert::rational_reconstruct(&observed_mu, 1, guard).ok();
    let predicted = match scope {
        Dim1Scope::Minimal => Some(hilbert::predict_minimal_dim1(e)),
        Dim1Scope::AlmostMinimal => Some(hilbert::predict_theorem(1, mu, rm)),
        Dim1Scope::OutOfScope => None,
    };
    let verdict = match &predicted {
        None => Verdict::OutOfScope,
        Some(p) => {
            let expanded = hilbert::expand(p, 1, observed_mu.len());
            if expanded == observed_mu.iter().map(|&v| v as i64).collect::<Vec<_>>() {
                Verdict::Match
            } else if matches!(rm, IndexSearch::NotFoundUpTo(_)) && scope == Dim1Scope::AlmostMinimal {
                Verdict::HypothesesUncertified
            } else {
                Verdict::Mismatch
            }
        }
    };
    Dim1Check {
        multiplicity: e,
        mu,
        scope,
        rm_index: rm,
        predicted,
        observed_mu,
        observed_numerator,
        deficits,
        identity_holds,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u32]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::new(g).unwrap())
    }

    /// Exhaustive membership: n is a member iff it is a nonnegative integer
    /// combination of the generators.
    fn member_oracle(gens: &[u32], n: u32) -> bool {
        let mut reach = vec![false; n as usize + 1];
        reach[0] = true;
        for k in 1..=n as usize {
            reach[k] = gens.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
        }
        reach[n as usize]
    }

    #[test]
    fn semigroup_invariants() {
        let s = sg(&[4, 5, 6, 7]);
        assert_eq!(s.multiplicity(), 4);
        assert_eq!(s.gaps(), vec![1, 2, 3]);
        assert_eq!(s.conductor(), 4);

        let s = sg(&[3, 7, 11]);
        let oracle: Vec<u32> = (0..40).filter(|&n| !member_oracle(&[3, 7, 11], n)).collect();
        assert_eq!(oracle, vec![1, 2, 4, 5, 8]);
        assert_eq!(s.gaps(), oracle);
        assert_eq!(s.frobenius(), 8);

        let s = sg(&[1]);
        assert!(s.gaps().is_empty());
        assert_eq!(s.conductor(), 0);

        assert!(matches!(NumericalSemigroup::new(&[2, 4]), Err(Error::NotNumericalSemigroup(_, 2))));
    }

    /// Exponent set of a product, by summing every pair of elements below `bound`.
    fn product_set_oracle(a: &SemigroupIdeal, b: &SemigroupIdeal, bound: u32) -> Vec<u32> {
        let ea: Vec<u32> = (0..bound).filter(|&n| a.contains(n)).collect();
        let eb: Vec<u32> = (0..bound).filter(|&n| b.contains(n)).collect();
        let mut out: Vec<u32> = ea.iter().flat_map(|&x| eb.iter().map(move |&y| x + y)).filter(|&n| n < bound).collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn products_match_pairwise_sums() {
        let s = sg(&[4, 5, 6, 7]);
        let i = SemigroupIdeal::new(s.clone(), &[4, 5, 6]).unwrap();
        let m = SemigroupIdeal::maximal(s.clone());
        for (a, b) in [(&m, &i), (&m, &m), (&i, &i)] {
            let p = a.product(b).unwrap();
            let got: Vec<u32> = (0..40).filter(|&n| p.contains(n)).collect();
            assert_eq!(got, product_set_oracle(a, b, 40));
        }
    }

    #[test]
    fn non_coprime_smallest_generators() {
        let s = sg(&[4, 6, 7]);
        let oracle: Vec<u32> = (0..60).filter(|&n| !member_oracle(&[4, 6, 7], n)).collect();
        assert_eq!(s.gaps(), oracle);
        assert_eq!(sg(&[4, 8, 5, 6, 7]).gens(), &[4, 5, 6, 7]);
    }

    #[test]
    fn powers_and_products() {
        let s = sg(&[4, 5, 6, 7]);
        let i = SemigroupIdeal::new(s.clone(), &[4, 5, 6]).unwrap();
        assert_eq!(i.power(2).mingens(), &[8, 9, 10, 11]);
        assert_eq!(i.power(1), i);
        assert!(i.power(0).is_unit());

        let s2 = sg(&[3, 7, 11]);
        let j = SemigroupIdeal::new(s2.clone(), &[6, 7, 11]).unwrap();
        assert_eq!(j.power(2).mingens(), &[12, 13, 14]);

        let m = SemigroupIdeal::maximal(s.clone());
        // 8 = 4 + 4 already lies in m I.
        assert_eq!(m.product(&i).unwrap().mingens(), &[8, 9, 10, 11]);
        assert_eq!(m.product(&m).unwrap().mingens(), &[8, 9, 10, 11]);
        assert_eq!(i.product(&SemigroupIdeal::unit(s.clone())).unwrap(), i);
        assert_eq!(i.product(&j), Err(Error::AmbientMismatch));
    }

    #[test]
    fn colengths() {
        let s2 = sg(&[3, 7, 11]);
        assert_eq!(SemigroupIdeal::new(s2, &[6, 7, 11]).unwrap().colength(), 2);
        let s = sg(&[4, 5, 6, 7]);
        assert_eq!(SemigroupIdeal::maximal(s.clone()).colength(), 1);
        assert_eq!(SemigroupIdeal::new(s, &[4, 5, 6]).unwrap().colength(), 2);
    }

    #[test]
    fn mu_vectors() {
        let s = sg(&[4, 5, 6, 7]);
        let i = SemigroupIdeal::new(s.clone(), &[4, 5, 6]).unwrap();
        assert_eq!(mu_powers(&i, 5), vec![1, 3, 4, 4, 4, 4]);
        let s2 = sg(&[3, 7, 11]);
        let j = SemigroupIdeal::new(s2, &[6, 7, 11]).unwrap();
        assert_eq!(mu_powers(&j, 5), vec![1, 3, 3, 3, 3, 3]);
        assert_eq!(mu_powers(&SemigroupIdeal::maximal(s), 4), vec![1, 4, 4, 4, 4]);
    }

    #[test]
    fn indices() {
        let s = sg(&[4, 5, 6, 7]);
        let i = SemigroupIdeal::new(s.clone(), &[4, 5, 6]).unwrap();
        let m = SemigroupIdeal::maximal(s);
        assert_eq!(rm_index(&i, 8), IndexSearch::Found(2));
        assert_eq!(rm_index(&m, 8), IndexSearch::Found(1));
        assert_eq!(reduction_number(&i, 8), IndexSearch::Found(2));
        assert_eq!(reduction_number(&m, 8), IndexSearch::Found(1));

        let s2 = sg(&[3, 7, 11]);
        let j = SemigroupIdeal::new(s2, &[6, 7, 11]).unwrap();
        assert_eq!(rm_index(&j, 8), IndexSearch::Found(1));
        assert_eq!(reduction_number(&j, 8), IndexSearch::Found(2));
        assert_eq!(reduction_number(&j, 1), IndexSearch::NotFoundUpTo(1));
    }

    #[test]
    fn theorem_checks() {
        let s2 = sg(&[3, 7, 11]);
        let j = SemigroupIdeal::new(s2, &[6, 7, 11]).unwrap();
        let c = dim1_theorem_check(&j, 8, 4);
        assert_eq!(c.scope, Dim1Scope::Minimal);
        assert_eq!(c.predicted.as_ref().unwrap().coeffs(), &[1, 2]);
        assert_eq!(c.verdict, Verdict::Match);

        let s = sg(&[4, 5, 6, 7]);
        let i = SemigroupIdeal::new(s.clone(), &[4, 5, 6]).unwrap();
        let c = dim1_theorem_check(&i, 8, 4);
        assert_eq!(c.scope, Dim1Scope::AlmostMinimal);
        assert_eq!(c.predicted.as_ref().unwrap().coeffs(), &[1, 2, 1]);
        assert_eq!(c.observed_numerator.as_ref().unwrap().coeffs(), &[1, 2, 1]);
        assert_eq!(c.rm_index, IndexSearch::Found(2));
        assert!(c.identity_holds);
        assert_eq!(c.verdict, Verdict::Match);

        let c = dim1_theorem_check(&SemigroupIdeal::maximal(s), 8, 4);
        assert_eq!(c.predicted.as_ref().unwrap().coeffs(), &[1, 3]);
        assert_eq!(c.verdict, Verdict::Match);
    }

    #[test]
    fn colon_and_intersection() {
        let s = sg(&[4, 5, 6, 7]);
        let i = SemigroupIdeal::new(s.clone(), &[4, 5, 6]).unwrap();
        let i2 = i.power(2);
        // (I^2 : t^4) = m, and m \ I = {7}.
        assert_eq!(i2.colon_element(4), SemigroupIdeal::maximal(s.clone()));
        let x = SemigroupIdeal::new(s.clone(), &[5]).unwrap();
        let y = SemigroupIdeal::new(s, &[6]).unwrap();
        // 5 + S = {5, 9, 10, ...}, 6 + S = {6, 10, 11, ...}.
        assert_eq!(x.intersection(&y).unwrap().mingens(), &[10, 11, 12, 13]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_ideal() -> impl Strategy<Value = SemigroupIdeal> {
            proptest::collection::vec(2u32..=9, 1..=4)
                .prop_filter_map("gcd 1", |mut g| {
                    g.push(*g.iter().max().unwrap() + 1);
                    NumericalSemigroup::new(&g).ok()
                })
                .prop_flat_map(|s| {
                    let s = Arc::new(s);
                    let hi = s.conductor() + 2 * s.multiplicity();
                    let s2 = s.clone();
                    proptest::collection::vec(1..=hi, 1..=4).prop_filter_map("members", move |g| {
                        let g: Vec<u32> = g.into_iter().filter(|&x| s2.contains(x)).collect();
                        SemigroupIdeal::new(s2.clone(), &g).ok()
                    })
                })
        }

        proptest! {
            #[test]
            fn power_is_multiplicative(i in arb_ideal(), a in 0u32..=6, b in 0u32..=6) {
                prop_assert_eq!(i.power(a + b), i.power(a).product(&i.power(b)).unwrap());
            }

            #[test]
            fn fiber_length_identity(i in arb_ideal(), n in 1u32..=6) {
                let e = i.ambient().multiplicity() as u64;
                let mu = i.power(n).mu() as u64;
                prop_assert_eq!(mu + max_deficit(&i, n), e);
            }

            #[test]
            fn deficits_drop_once(i in arb_ideal()) {
                let e = i.ambient().multiplicity();
                prop_assume!(i.mu() as u32 + 1 == e);
                let d: Vec<u64> = (1..=8).map(|n| max_deficit(&i, n)).collect();
                prop_assert!(d.iter().all(|&v| v <= 1));
                if let Some(z) = d.iter().position(|&v| v == 0) {
                    prop_assert!(d[z..].iter().all(|&v| v == 0));
                }
            }

            #[test]
            fn colength_strictly_decreases(i in arb_ideal()) {
                let m = SemigroupIdeal::maximal(i.ambient().clone());
                let smaller = i.product(&m).unwrap();
                prop_assert!(smaller.colength() > i.colength());
            }

            #[test]
            fn theorem_matches_when_in_scope(i in arb_ideal()) {
                let c = dim1_theorem_check(&i, 10, 4);
                if c.scope != Dim1Scope::OutOfScope {
                    prop_assert_eq!(c.verdict, Verdict::Match);
                }
                prop_assert!(c.identity_holds);
            }
        }
    }
}
