//! Ideals of the local ring R_m, for R a polynomial ring over F_p and m the
//! ideal of the variables.
//!
//! f(N) := dim R/(B + m^N) is nondecreasing in N. If f(N) = f(N+1) then
//! m^N ⊆ B + m^{N+1}, so m^N ⊆ B_m by Nakayama; hence B_m ∩ R = B + m^N and
//! f(N) = ℓ(R_m/B_m). Every `LocalIdeal` stores the reduced grevlex Gröbner
//! basis of that canonical ideal, truncated above a degree it contains.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::buchberger::{buchberger, Reducer};
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial, MonomialIdeal};
use crate::poly::{Poly, PolyRing, TermOrder};

static STAB_CHECKS: AtomicU64 = AtomicU64::new(0);
static STAB_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Number of stabilizations seen so far and how many of them failed the
/// f(N) = f(N + 2) re-check (process-wide).
pub fn stabilization_stats() -> (u64, u64) {
    (STAB_CHECKS.load(Ordering::Relaxed), STAB_VIOLATIONS.load(Ordering::Relaxed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalColengthCertificate {
    pub n_star: u32,
    pub colength: u64,
    /// f(N*), f(N* + 1), f(N* + 2).
    pub witnesses: [u64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalOptions {
    /// First truncation degree tried.
    pub start: u32,
    /// Largest truncation degree tried before giving up.
    pub n_max: u32,
}

impl Default for LocalOptions {
    fn default() -> Self {
        LocalOptions { start: 1, n_max: 256 }
    }
}

impl LocalOptions {
    pub fn starting_at(start: u32) -> Self {
        LocalOptions { start, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdeal {
    gb: Vec<Poly>,
    trunc: u32,
    lt: MonomialIdeal,
    colength: u64,
    cert: LocalColengthCertificate,
}

struct Truncated {
    gb: Vec<Poly>,
    lt: MonomialIdeal,
    f: u64,
}

fn lt_ideal(ring: &PolyRing, gb: &[Poly], n: u32) -> MonomialIdeal {
    MonomialIdeal::minimalize(
        ring.nvars(),
        gb.iter().map(|g| g.lm()).chain(monomials_of_degree(ring.nvars(), n)),
    )
}

fn truncated(ring: &PolyRing, gens: &[Poly], n: u32) -> Truncated {
    let gb = buchberger(ring, gens, Some(n));
    let lt = lt_ideal(ring, &gb, n);
    let f = lt.colength().expect("truncated ideal contains m^n");
    Truncated { gb, lt, f }
}

fn record_check(ok: bool) {
    STAB_CHECKS.fetch_add(1, Ordering::Relaxed);
    if !ok {
        STAB_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
}

impl LocalIdeal {
    /// Certified local ideal generated by `gens`. Errors with NoStabilization
    /// when f(N) keeps growing up to `opts.n_max` (B_m not m-primary).
    pub fn new(ring: &PolyRing, gens: &[Poly], opts: LocalOptions) -> Result<Self> {
        assert_eq!(ring.order(), TermOrder::Grevlex);
        let mut n = opts.start.max(1);
        loop {
            let a = truncated(ring, gens, n);
            let b = truncated(ring, gens, n + 1);
            if a.f == b.f {
                let c = truncated(ring, gens, n + 2);
                record_check(c.f == a.f);
                if c.f == a.f {
                    return Ok(LocalIdeal {
                        gb: b.gb,
                        trunc: n + 1,
                        lt: b.lt,
                        colength: a.f,
                        cert: LocalColengthCertificate { n_star: n, colength: a.f, witnesses: [a.f, b.f, c.f] },
                    });
                }
            }
            if n >= opts.n_max {
                return Err(Error::NoStabilization(opts.n_max));
            }
            n = (2 * n).min(opts.n_max);
        }
    }

    /// Like `new`, truncating by m^k·A instead of m^N for an m-primary monomial
    /// ideal A: if g(k) := dim R/(B + m^k A) satisfies g(k) = g(k+1), Nakayama
    /// gives m^k A ⊆ B_m, so B_m ∩ R = B + m^k A. Much smaller quotients when
    /// A is close to B.
    pub fn new_within(ring: &PolyRing, gens: &[Poly], a: &MonomialIdeal, opts: LocalOptions) -> Result<Self> {
        assert_eq!(ring.order(), TermOrder::Grevlex);
        let at = |k: u32| -> Result<(Truncated, u32)> {
            let mk = a.times_max_power(k);
            let t = mk.staircase_bound()? + 1;
            let mut g = gens.to_vec();
            g.extend(mk.gens().iter().filter(|m| m.deg() < t).map(|m| ring.monomial(*m)));
            Ok((truncated(ring, &g, t), t))
        };
        let mut k = 1;
        loop {
            let (x, t) = at(k)?;
            let (y, ty) = at(k + 1)?;
            if x.f == y.f {
                let (z, _) = at(k + 2)?;
                record_check(z.f == x.f);
                if z.f == x.f {
                    return Ok(LocalIdeal {
                        gb: y.gb,
                        trunc: ty,
                        lt: y.lt,
                        colength: x.f,
                        // m^t ⊆ m^k A ⊆ B_m, so truncating at any degree >= t is exact
                        cert: LocalColengthCertificate { n_star: t, colength: x.f, witnesses: [x.f, y.f, z.f] },
                    });
                }
            }
            if k >= opts.n_max {
                return Err(Error::NoStabilization(opts.n_max));
            }
            k = (2 * k).min(opts.n_max);
        }
    }

    /// The m-primary monomial ideal `i`, certified at its staircase bound.
    pub fn from_monomial(ring: &PolyRing, i: &MonomialIdeal) -> Result<Self> {
        let n = i.staircase_bound()?.max(1);
        let d = ring.nvars();
        let f = |k: u32| i.sum(&MonomialIdeal::max_power(d, k)).colength();
        let w = [f(n)?, f(n + 1)?, f(n + 2)?];
        record_check(w[0] == w[2]);
        debug_assert_eq!(w[0], w[1]);
        let gb: Vec<Poly> = i.gens().iter().filter(|g| g.deg() < n + 1).map(|g| ring.monomial(*g)).collect();
        Ok(LocalIdeal {
            lt: lt_ideal(ring, &gb, n + 1),
            gb,
            trunc: n + 1,
            colength: w[0],
            cert: LocalColengthCertificate { n_star: n, colength: w[0], witnesses: w },
        })
    }

    pub fn gb(&self) -> &[Poly] {
        &self.gb
    }

    /// Truncation degree T: m^T is an implicit generator.
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn colength(&self) -> u64 {
        self.colength
    }

    pub fn certificate(&self) -> &LocalColengthCertificate {
        &self.cert
    }

    /// Leading-term ideal, including m^T.
    pub fn lt_ideal(&self) -> &MonomialIdeal {
        &self.lt
    }

    /// Every generator, including the implicit degree-T monomials.
    pub fn generators(&self, ring: &PolyRing) -> Vec<Poly> {
        let mut out = self.gb.clone();
        out.extend(monomials_of_degree(ring.nvars(), self.trunc).into_iter().map(|m| ring.monomial(m)));
        out
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.lt.standard_monomials().expect("local ideals are m-primary")
    }

    pub fn normal_form(&self, ring: &PolyRing, f: &Poly) -> Poly {
        Reducer::new(ring, &self.gb, Some(self.trunc)).reduce(f)
    }

    pub fn contains(&self, ring: &PolyRing, f: &Poly) -> bool {
        self.normal_form(ring, f).is_zero()
    }

    /// Index of the first generator of `other` outside `self`, if any.
    pub fn first_outside(&self, ring: &PolyRing, other: &LocalIdeal) -> Option<usize> {
        let red = Reducer::new(ring, &self.gb, Some(self.trunc));
        if let Some(i) = other.gb.iter().position(|g| !red.reduce(g).is_zero()) {
            return Some(i);
        }
        let top = MonomialIdeal::max_power(ring.nvars(), other.trunc);
        if !self.lt.contains_ideal(&top) {
            return Some(other.gb.len());
        }
        None
    }

    pub fn contains_ideal(&self, ring: &PolyRing, other: &LocalIdeal) -> bool {
        self.first_outside(ring, other).is_none()
    }

    /// `self == other` in R_m, given `other ⊆ self`; the inclusion is checked
    /// and its failure reported as ContainmentFailed.
    pub fn equals_superset_of(&self, ring: &PolyRing, other: &LocalIdeal) -> Result<bool> {
        if let Some(i) = self.first_outside(ring, other) {
            return Err(Error::ContainmentFailed(i));
        }
        Ok(self.colength == other.colength)
    }

    /// Local ideal generated by `self` and `extra`.
    pub fn adjoin(&self, ring: &PolyRing, extra: &[Poly]) -> Result<Self> {
        let mut gens = self.generators(ring);
        gens.extend(extra.iter().cloned());
        LocalIdeal::new(ring, &gens, LocalOptions::starting_at(self.cert.n_star))
    }

    /// (self : f).
    pub fn colon(&self, ring: &PolyRing, f: &Poly) -> LocalIdeal {
        kernel(ring, &[(self, f)])
    }

    pub fn intersection(&self, ring: &PolyRing, other: &LocalIdeal) -> LocalIdeal {
        let one = ring.one();
        kernel(ring, &[(self, &one), (other, &one)])
    }

    /// (self : f) ∩ (other : g), in one pass.
    pub fn colon_intersection(&self, ring: &PolyRing, f: &Poly, other: &LocalIdeal, g: &Poly) -> LocalIdeal {
        kernel(ring, &[(self, f), (other, g)])
    }
}

/// Sparse vector over a finite basis.
type SparseVec = Vec<(u32, u32)>;

/// Multiplication by the variables on R/Q, in the basis of standard monomials.
struct QuotientAlgebra {
    index: HashMap<Monomial, u32>,
    /// mult[i][s] = NF(x_i * s).
    mult: Vec<Vec<SparseVec>>,
}

impl QuotientAlgebra {
    fn new(ring: &PolyRing, ideal: &LocalIdeal) -> Self {
        let basis = ideal.standard_monomials();
        let index: HashMap<Monomial, u32> = basis.iter().enumerate().map(|(k, m)| (*m, k as u32)).collect();
        let red = Reducer::new(ring, &ideal.gb, Some(ideal.trunc));
        let mut qa = QuotientAlgebra { index, mult: Vec::new() };
        let mult = (0..ring.nvars())
            .map(|i| {
                basis
                    .iter()
                    .map(|s| {
                        let m = s.mul(&Monomial::var(i));
                        match qa.index.get(&m) {
                            Some(&k) => vec![(k, 1)],
                            None if m.deg() >= ideal.trunc => vec![],
                            None => qa.to_vec(&red.reduce(&ring.monomial(m))),
                        }
                    })
                    .collect()
            })
            .collect();
        qa.mult = mult;
        qa
    }

    fn dim(&self) -> usize {
        self.index.len()
    }

    fn to_vec(&self, nf: &Poly) -> SparseVec {
        nf.terms().iter().map(|t| (self.index[&t.mono], t.coeff)).collect()
    }
}

/// Kernel of u ↦ (NF_{Q_k}(f_k u))_k from R to the product of the quotient
/// algebras, computed by running through monomials in increasing grevlex
/// order (Buchberger–Möller). The result contains m^T for T the largest
/// truncation among the Q_k.
fn kernel(ring: &PolyRing, maps: &[(&LocalIdeal, &Poly)]) -> LocalIdeal {
    let fp = *ring.field();
    let algebras: Vec<QuotientAlgebra> = maps.iter().map(|(q, _)| QuotientAlgebra::new(ring, q)).collect();
    let offsets: Vec<usize> = algebras
        .iter()
        .scan(0usize, |acc, a| {
            let o = *acc;
            *acc += a.dim();
            Some(o)
        })
        .collect();
    let total = offsets.last().copied().unwrap_or(0) + algebras.last().map_or(0, |a| a.dim());
    let trunc = maps.iter().map(|(q, _)| q.trunc).max().unwrap_or(1);

    // Image of 1 in each component.
    let start: Vec<SparseVec> = maps
        .iter()
        .zip(&algebras)
        .map(|((q, f), a)| a.to_vec(&q.normal_form(ring, f)))
        .collect();

    // Processed monomials that are standard for the kernel, with their images.
    let mut basis: Vec<Monomial> = Vec::new();
    let mut images: HashMap<Monomial, Vec<SparseVec>> = HashMap::new();
    // Echelon rows: (image vector, combination over `basis`), pivot = first index.
    let mut pivot_of: Vec<Option<usize>> = vec![None; total];
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut kernel_gens: Vec<Poly> = Vec::new();
    let mut kernel_lts: Vec<Monomial> = Vec::new();

    let mut scratch = vec![0u32; total];
    let mut comb_scratch: Vec<u32> = Vec::new();

    for deg in 0..trunc {
        let mut mons = monomials_of_degree(ring.nvars(), deg);
        mons.sort_by_key(|m| ring.key(m));
        for u in mons {
            if kernel_lts.iter().any(|l| l.divides(&u)) {
                continue;
            }
            // Image of u, from the image of a processed divisor u / x_i.
            let img: Vec<SparseVec> = if deg == 0 {
                start.clone()
            } else {
                let (i, prev) = (0..ring.nvars())
                    .filter(|&i| u.exp(i) > 0)
                    .find_map(|i| images.get(&u.div(&Monomial::var(i))).map(|p| (i, p)))
                    .expect("a divisor of a kernel-standard monomial is kernel-standard");
                algebras
                    .iter()
                    .zip(prev)
                    .map(|(a, v)| {
                        let mut acc: HashMap<u32, u32> = HashMap::new();
                        for &(s, c) in v {
                            for &(t, c2) in &a.mult[i][s as usize] {
                                let e = acc.entry(t).or_insert(0);
                                *e = fp.add(*e, fp.mul(c, c2));
                            }
                        }
                        let mut out: SparseVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
                        out.sort_unstable();
                        out
                    })
                    .collect()
            };

            // Reduce against the echelon rows.
            for (v, &off) in img.iter().zip(&offsets) {
                for &(s, c) in v {
                    scratch[off + s as usize] = c;
                }
            }
            let new_idx = basis.len();
            comb_scratch.resize(new_idx + 1, 0);
            comb_scratch.iter_mut().for_each(|c| *c = 0);
            comb_scratch[new_idx] = 1;
            let mut lead = None;
            for col in 0..total {
                let c = scratch[col];
                if c == 0 {
                    continue;
                }
                match pivot_of[col] {
                    Some(r) => {
                        let (rv, rc) = &rows[r];
                        let neg = fp.neg(c);
                        for &(j, x) in rv {
                            let slot = &mut scratch[j as usize];
                            *slot = fp.add(*slot, fp.mul(neg, x));
                        }
                        for &(j, x) in rc {
                            let slot = &mut comb_scratch[j as usize];
                            *slot = fp.add(*slot, fp.mul(neg, x));
                        }
                    }
                    None => {
                        lead = Some(col);
                        break;
                    }
                }
            }
            match lead {
                None => {
                    // u - (combination of basis monomials) lies in the kernel.
                    let poly = ring.from_terms(
                        comb_scratch.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, &c)| {
                            (if j == new_idx { u } else { basis[j] }, c)
                        }),
                    );
                    debug_assert_eq!(poly.lm(), u);
                    kernel_gens.push(poly);
                    kernel_lts.push(u);
                    scratch.iter_mut().for_each(|c| *c = 0);
                }
                Some(col) => {
                    let inv = fp.inv(scratch[col]);
                    let mut rv: SparseVec = Vec::new();
                    for (j, slot) in scratch.iter_mut().enumerate().skip(col) {
                        if *slot != 0 {
                            rv.push((j as u32, fp.mul(*slot, inv)));
                            *slot = 0;
                        }
                    }
                    let rc: SparseVec = comb_scratch
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(j, &c)| (j as u32, fp.mul(c, inv)))
                        .collect();
                    pivot_of[col] = Some(rows.len());
                    rows.push((rv, rc));
                    basis.push(u);
                    images.insert(u, img);
                }
            }
        }
    }
    let lt = lt_ideal(ring, &kernel_gens, trunc);
    let colength = basis.len() as u64;
    let n_star = lt.staircase_bound().expect("kernel contains m^trunc");
    LocalIdeal {
        gb: kernel_gens,
        trunc,
        lt,
        colength,
        cert: LocalColengthCertificate { n_star, colength, witnesses: [colength; 3] },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::elimination;

    fn ring(n: usize) -> PolyRing {
        PolyRing::new(n, PrimeField::default(), TermOrder::Grevlex)
    }

    fn p(r: &PolyRing, terms: &[(i64, &[u32])]) -> Poly {
        r.from_terms(terms.iter().map(|(c, e)| (Monomial::new(e), r.field().from_i64(*c))))
    }

    fn mono(r: &PolyRing, e: &[u32]) -> Poly {
        r.monomial(Monomial::new(e))
    }

    fn local(r: &PolyRing, gens: &[Poly]) -> LocalIdeal {
        LocalIdeal::new(r, gens, LocalOptions::default()).unwrap()
    }

    #[test]
    fn monomial_truncation_agrees_with_degree_truncation() {
        use rand::SeedableRng;
        let r = ring(2);
        let i = MonomialIdeal::minimalize(2, [Monomial::new(&[3, 0]), Monomial::new(&[1, 1]), Monomial::new(&[0, 4])]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let gens = r.monomial_ideal_gens(&i);
        for _ in 0..10 {
            let x = r.random_linear_form(&mut rng);
            let a = r.random_combination(&mut rng, &gens);
            let mut b: Vec<Poly> = r.times_monomial_ideal(&x, &i);
            b.push(a.clone());
            let by_degree = local(&r, &b);
            // a container that does not hold the generators is still exact
            for within in [i.clone(), MonomialIdeal::maximal(2), i.power(3)] {
                let l = LocalIdeal::new_within(&r, &b, &within, LocalOptions::default()).unwrap();
                assert_eq!(l.colength(), by_degree.colength());
                assert!(l.contains_ideal(&r, &by_degree) && by_degree.contains_ideal(&r, &l));
            }
        }
    }

    #[test]
    fn colengths() {
        let r = ring(2);
        assert_eq!(local(&r, &[mono(&r, &[2, 0]), mono(&r, &[1, 1]), mono(&r, &[0, 2])]).colength(), 3);
        // x ≡ -y^2 leaves k[y]/(y^3).
        assert_eq!(local(&r, &[p(&r, &[(1, &[1, 0]), (1, &[0, 2])]), mono(&r, &[0, 3])]).colength(), 3);
        let b = local(&r, &[p(&r, &[(1, &[2, 0]), (1, &[0, 2])]), mono(&r, &[0, 3])]);
        assert_eq!(b.colength(), 6);
        let std: Vec<Monomial> = b.standard_monomials();
        let mut want: Vec<Monomial> =
            [[0, 0], [1, 0], [0, 1], [1, 1], [0, 2], [1, 2]].iter().map(|e| Monomial::new(e)).collect();
        want.sort();
        let mut got = std.clone();
        got.sort();
        assert_eq!(got, want);
        let c = b.certificate();
        assert_eq!(c.witnesses, [6, 6, 6]);
    }

    #[test]
    fn unit_away_from_origin_is_ignored() {
        // (x(1 + x), y): the component at x = -1 does not meet the origin.
        let r = ring(2);
        let b = local(&r, &[p(&r, &[(1, &[1, 0]), (1, &[2, 0])]), r.var(1)]);
        assert_eq!(b.colength(), 1);
        // 1 + x is a unit locally.
        let u = local(&r, &[p(&r, &[(1, &[0, 0]), (1, &[1, 0])])]);
        assert_eq!(u.colength(), 0);
    }

    #[test]
    fn not_m_primary_fails_to_stabilize() {
        let r = ring(2);
        let e = LocalIdeal::new(&r, &[r.var(0)], LocalOptions { start: 1, n_max: 16 });
        assert_eq!(e, Err(Error::NoStabilization(16)));
    }

    #[test]
    fn equality_and_membership() {
        let r = ring(2);
        let a = local(&r, &[mono(&r, &[2, 0]), mono(&r, &[0, 2])]);
        let b = local(&r, &[mono(&r, &[2, 0]), mono(&r, &[0, 2]), p(&r, &[(1, &[2, 0]), (1, &[0, 2])])]);
        assert_eq!(a.equals_superset_of(&r, &a), Ok(true));
        assert_eq!(a.equals_superset_of(&r, &b), Ok(true));
        let m2 = local(&r, &[mono(&r, &[2, 0]), mono(&r, &[1, 1]), mono(&r, &[0, 2])]);
        assert_eq!(a.equals_superset_of(&r, &m2), Err(Error::ContainmentFailed(1)));
        assert_eq!(m2.equals_superset_of(&r, &a), Ok(false));

        assert!(a.contains(&r, &mono(&r, &[2, 0])));
        let quartic: Vec<Poly> = [[4, 0], [3, 1], [1, 3], [0, 4]].iter().map(|e| mono(&r, e)).collect();
        let i = local(&r, &quartic);
        assert_eq!(i.colength(), 11);
        assert!(!i.contains(&r, &mono(&r, &[2, 2])));
        let i2 = LocalIdeal::from_monomial(
            &r,
            &MonomialIdeal::minimalize(2, quartic.iter().map(|g| g.lm())).power(2),
        )
        .unwrap();
        assert!(i2.contains(&r, &mono(&r, &[6, 2])));
    }

    #[test]
    fn colons_and_intersections() {
        let r = ring(2);
        let a = local(&r, &[mono(&r, &[2, 1]), mono(&r, &[0, 3]), mono(&r, &[5, 0])]);
        let q = a.colon(&r, &r.var(1));
        let want = local(&r, &[mono(&r, &[2, 0]), mono(&r, &[0, 2])]);
        assert_eq!(q.lt_ideal(), want.lt_ideal());
        assert_eq!(q.colength(), 4);

        let quartic: Vec<Poly> = [[4, 0], [3, 1], [1, 3], [0, 4]].iter().map(|e| mono(&r, e)).collect();
        let i = local(&r, &quartic);
        let q = i.colon(&r, &mono(&r, &[2, 2]));
        assert_eq!(q.colength(), 1);

        let x = local(&r, &[r.var(0), mono(&r, &[0, 5])]);
        let y = local(&r, &[r.var(1), mono(&r, &[5, 0])]);
        let xy = x.intersection(&r, &y);
        assert!(xy.contains(&r, &mono(&r, &[1, 1])));
        assert!(!xy.contains(&r, &r.var(0)));
        // (x, y^5) ∩ (y, x^5) = (xy, x^5, y^5)
        assert_eq!(xy.colength(), 9);
    }

    #[test]
    fn kernel_agrees_with_elimination_on_non_monomial_input() {
        let r = ring(2);
        let f = p(&r, &[(1, &[2, 0]), (3, &[0, 2]), (1, &[1, 2])]);
        let gens = vec![f.clone(), mono(&r, &[0, 4]), p(&r, &[(1, &[3, 0]), (-1, &[1, 1])])];
        let a = local(&r, &gens);
        for g in [r.var(0), p(&r, &[(1, &[1, 0]), (2, &[0, 1])]), mono(&r, &[1, 1])] {
            let kq = a.colon(&r, &g);
            let mut egens = elimination::quotient(&r, &a.generators(&r), &g);
            egens.extend(monomials_of_degree(2, a.trunc()).into_iter().map(|m| r.monomial(m)));
            let eq = local(&r, &egens);
            assert_eq!(kq.colength(), eq.colength());
            assert!(kq.contains_ideal(&r, &eq) && eq.contains_ideal(&r, &kq));
        }
        let b = local(&r, &[p(&r, &[(1, &[1, 0]), (5, &[0, 2])]), mono(&r, &[0, 5])]);
        let ki = a.intersection(&r, &b);
        let ei = local(&r, &elimination::intersection(&r, &a.generators(&r), &b.generators(&r)));
        assert_eq!(ki.colength(), ei.colength());
        assert!(ki.contains_ideal(&r, &ei) && ei.contains_ideal(&r, &ki));
    }
}
