//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller pair criteria.
//!
//! With a truncation degree `N` the computation runs in R/m^N: every term of
//! degree >= N is dropped as soon as it appears, and the S-pairs against the
//! implicit monomial generators of m^N are supplied as the products
//! u * (f - top-degree part of f) for all monomials u of degree N - deg lt(f).
//! Truncation requires a degree-compatible order.

use std::collections::{BTreeMap, BTreeSet};

use crate::monomial::{monomials_of_degree, Monomial, MAX_VARS};
use crate::poly::{Poly, PolyRing, Term, TermOrder};

/// Bit signature used to reject divisibility tests quickly.
#[inline]
fn div_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.raw().iter().enumerate().take(MAX_VARS) {
        let mut bit = 0;
        let mut thr = 1u16;
        while bit < 10 && e >= thr {
            mask |= 1 << (i * 10 + bit);
            bit += 1;
            thr = thr.saturating_mul(2);
        }
    }
    mask
}

/// Reduces polynomials modulo a fixed list of monic polynomials.
pub(crate) struct Reducer<'a> {
    ring: &'a PolyRing,
    basis: Vec<&'a Poly>,
    masks: Vec<u64>,
    trunc: Option<u32>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(ring: &'a PolyRing, basis: impl IntoIterator<Item = &'a Poly>, trunc: Option<u32>) -> Self {
        let basis: Vec<&Poly> = basis.into_iter().filter(|p| !p.is_zero()).collect();
        debug_assert!(basis.iter().all(|p| p.lead().unwrap().coeff == 1));
        let masks = basis.iter().map(|p| div_mask(&p.lm())).collect();
        Self { ring, basis, masks, trunc }
    }

    #[inline]
    fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        let mm = div_mask(m);
        (0..self.basis.len()).find(|&i| self.masks[i] & !mm == 0 && self.basis[i].lm().divides(m))
    }

    #[inline]
    fn keep(&self, m: &Monomial) -> bool {
        self.trunc.is_none_or(|n| m.deg() < n)
    }

    /// Full normal form.
    pub(crate) fn reduce(&self, f: &Poly) -> Poly {
        let fp = self.ring.field();
        let mut acc: BTreeMap<u128, (Monomial, u32)> = BTreeMap::new();
        for t in f.terms() {
            if self.keep(&t.mono) {
                acc.insert(t.key, (t.mono, t.coeff));
            }
        }
        let mut rem: Vec<Term> = Vec::new();
        while let Some((key, (mono, c))) = acc.pop_last() {
            match self.find_divisor(&mono) {
                None => rem.push(Term { key, mono, coeff: c }),
                Some(i) => {
                    let g = self.basis[i];
                    let q = mono.div(&g.lm());
                    let neg = fp.neg(c);
                    for t in &g.terms()[1..] {
                        let m2 = t.mono.mul(&q);
                        if !self.keep(&m2) {
                            continue;
                        }
                        let k2 = self.ring.key(&m2);
                        let add = fp.mul(neg, t.coeff);
                        match acc.get_mut(&k2) {
                            Some(slot) => {
                                slot.1 = fp.add(slot.1, add);
                                if slot.1 == 0 {
                                    acc.remove(&k2);
                                }
                            }
                            None => {
                                acc.insert(k2, (m2, add));
                            }
                        }
                    }
                }
            }
        }
        Poly::from_sorted(rem)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Pair {
    lcm_key: u128,
    i: usize,
    j: usize,
}

struct State<'r> {
    ring: &'r PolyRing,
    trunc: Option<u32>,
    polys: Vec<Poly>,
    active: Vec<bool>,
    pairs: BTreeSet<Pair>,
    extras: BTreeMap<(u128, u64), Poly>,
    seq: u64,
}

impl<'r> State<'r> {
    fn push_extra(&mut self, f: Poly) {
        if f.is_zero() {
            return;
        }
        self.seq += 1;
        self.extras.insert((f.terms()[0].key, self.seq), f);
    }

    fn reducer(&self) -> Reducer<'_> {
        Reducer::new(self.ring, self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p), self.trunc)
    }

    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.polys[i].lm().lcm(&self.polys[j].lm())
    }

    fn spoly(&self, p: &Pair) -> Poly {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let l = f.lm().lcm(&g.lm());
        let a = self.ring.mul_term(&f.tail(), &l.div(&f.lm()), 1);
        let b = self.ring.mul_term(&g.tail(), &l.div(&g.lm()), 1);
        let s = self.ring.sub(&a, &b);
        match self.trunc {
            Some(n) => self.ring.truncate(&s, n),
            None => s,
        }
    }

    /// Gebauer–Möller update for the new basis element at index `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm();
        let olds: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let cand: Vec<(usize, Monomial)> = olds.iter().map(|&g| (g, self.lcm(g, h))).collect();

        // Chain criterion among the new pairs, then the product criterion.
        let mut in_d = vec![false; cand.len()];
        for idx in 0..cand.len() {
            let (g, l) = &cand[idx];
            let coprime = lh.is_coprime(&self.polys[*g].lm());
            let dominated = cand
                .iter()
                .enumerate()
                .any(|(o, (_, l2))| o != idx && (o > idx || in_d[o]) && l2.divides(l));
            in_d[idx] = coprime || !dominated;
        }
        let mut new_pairs = Vec::new();
        for (idx, (g, l)) in cand.iter().enumerate() {
            if in_d[idx] && !lh.is_coprime(&self.polys[*g].lm()) {
                new_pairs.push(Pair { lcm_key: self.ring.key(l), i: *g, j: h });
            }
        }

        // Prune old pairs made redundant by h.
        let stale: Vec<Pair> = self
            .pairs
            .iter()
            .filter(|p| {
                let l = self.lcm(p.i, p.j);
                lh.divides(&l) && self.lcm(p.i, h) != l && self.lcm(p.j, h) != l
            })
            .copied()
            .collect();
        for p in stale {
            self.pairs.remove(&p);
        }
        self.pairs.extend(new_pairs);

        for &g in &olds {
            if lh.divides(&self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn add(&mut self, h: Poly) {
        let h = self.ring.monic(&h);
        if let Some(n) = self.trunc {
            let top = h.lm().deg();
            let low = h.below_degree(top);
            if !low.is_zero() {
                for u in monomials_of_degree(self.ring.nvars(), n - top) {
                    let p = self.ring.truncate(&self.ring.mul_term(&low, &u, 1), n);
                    self.push_extra(p);
                }
            }
        }
        self.polys.push(h);
        self.active.push(true);
        let idx = self.polys.len() - 1;
        self.update(idx);
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (plus m^trunc when
/// given). Elements are monic and sorted by increasing leading monomial; the
/// unit ideal yields [1].
pub fn buchberger(ring: &PolyRing, gens: &[Poly], trunc: Option<u32>) -> Vec<Poly> {
    if trunc.is_some() {
        assert_eq!(ring.order(), TermOrder::Grevlex, "truncation needs a degree-compatible order");
    }
    if trunc == Some(0) {
        return vec![ring.one()];
    }
    let mut st = State {
        ring,
        trunc,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        extras: BTreeMap::new(),
        seq: 0,
    };
    for g in gens {
        let g = match trunc {
            Some(n) => ring.truncate(g, n),
            None => g.clone(),
        };
        st.push_extra(g);
    }
    loop {
        let next_pair = st.pairs.first().copied();
        let next_extra = st.extras.keys().next().copied();
        let h = match (next_pair, next_extra) {
            (None, None) => break,
            (Some(p), e) if e.is_none_or(|e| p.lcm_key <= e.0) => {
                st.pairs.remove(&p);
                let s = st.spoly(&p);
                st.reducer().reduce(&s)
            }
            (_, Some(e)) => {
                let f = st.extras.remove(&e).unwrap();
                st.reducer().reduce(&f)
            }
            (Some(_), None) => unreachable!(),
        };
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return vec![ring.one()];
        }
        st.add(h);
    }
    let mut basis: Vec<Poly> =
        st.polys.into_iter().zip(st.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    basis.sort_by_key(|p| p.terms()[0].key);
    interreduce(ring, basis, trunc)
}

/// Reduces every tail against the other elements.
pub(crate) fn interreduce(ring: &PolyRing, basis: Vec<Poly>, trunc: Option<u32>) -> Vec<Poly> {
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p);
        let red = Reducer::new(ring, others, trunc);
        let lead = basis[i].terms()[0];
        let tail = red.reduce(&basis[i].tail());
        let mut terms = vec![lead];
        terms.extend_from_slice(tail.terms());
        out.push(Poly::from_sorted(terms));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring2() -> PolyRing {
        PolyRing::new(2, PrimeField::default(), TermOrder::Grevlex)
    }

    fn p(r: &PolyRing, terms: &[(i64, &[u32])]) -> Poly {
        r.from_terms(terms.iter().map(|(c, e)| (Monomial::new(e), r.field().from_i64(*c))))
    }

    #[test]
    fn monomial_input_is_its_own_basis() {
        let r = ring2();
        let gens: Vec<Poly> = [[4, 0], [3, 1], [1, 3], [0, 4]].iter().map(|e| r.monomial(Monomial::new(e))).collect();
        let gb = buchberger(&r, &gens, None);
        let mut lms: Vec<Monomial> = gb.iter().map(|g| g.lm()).collect();
        lms.sort();
        let mut want: Vec<Monomial> = gens.iter().map(|g| g.lm()).collect();
        want.sort();
        assert_eq!(lms, want);
    }

    #[test]
    fn linear_change() {
        let r = ring2();
        let gb = buchberger(&r, &[p(&r, &[(1, &[1, 0]), (1, &[0, 1])]), r.var(1)], None);
        assert_eq!(gb, vec![r.var(1), r.var(0)]);
    }

    #[test]
    fn sum_of_squares_with_cube() {
        let r = ring2();
        let f = p(&r, &[(1, &[2, 0]), (1, &[0, 2])]);
        let g = p(&r, &[(1, &[0, 3])]);
        let gb = buchberger(&r, &[f.clone(), g.clone()], None);
        assert_eq!(gb, vec![f, g]);
    }

    #[test]
    fn unit_ideal() {
        let r = ring2();
        let gb = buchberger(&r, &[r.var(0), p(&r, &[(1, &[1, 0]), (1, &[0, 0])])], None);
        assert_eq!(gb, vec![r.one()]);
    }

    #[test]
    fn truncated_run_matches_explicit_power() {
        let r = ring2();
        // x - y^2 is not homogeneous, so the truncation syzygies matter.
        let f = p(&r, &[(1, &[1, 0]), (-1, &[0, 2])]);
        let g = p(&r, &[(1, &[0, 3]), (2, &[1, 1])]);
        for n in 1..7 {
            let mut gens = vec![f.clone(), g.clone()];
            gens.extend(monomials_of_degree(2, n).into_iter().map(|m| r.monomial(m)));
            let explicit = buchberger(&r, &gens, None);
            let trunc = buchberger(&r, &[f.clone(), g.clone()], Some(n));
            // The explicit basis additionally lists the degree-n monomials
            // that are not multiples of a truncated leading term.
            let trunc_lms: Vec<Monomial> = trunc.iter().map(|q| q.lm()).collect();
            let expected: Vec<&Poly> = explicit
                .iter()
                .filter(|q| !(q.is_monomial() && q.lm().deg() == n && !trunc_lms.contains(&q.lm())))
                .collect();
            assert_eq!(expected.len(), trunc.len(), "n = {n}");
            for (a, b) in expected.iter().zip(&trunc) {
                assert_eq!(*a, b, "n = {n}");
            }
        }
    }
}
