//! Global ideal quotient and intersection by elimination of an auxiliary
//! variable, independent of the truncated local machinery.

use super::buchberger::buchberger;
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::{Poly, PolyRing, TermOrder};

fn shift_up(ring: &PolyRing, big: &PolyRing, f: &Poly) -> Poly {
    let n = ring.nvars();
    big.from_terms(f.terms().iter().map(|t| {
        let mut e = vec![0u32];
        e.extend(t.mono.exps(n));
        (Monomial::new(&e), t.coeff)
    }))
}

fn shift_down(ring: &PolyRing, big: &PolyRing, f: &Poly) -> Poly {
    let n = big.nvars();
    ring.from_terms(f.terms().iter().map(|t| (Monomial::new(&t.mono.exps(n)[1..]), t.coeff)))
}

/// A ∩ B from the t-free part of a basis of t·A + (1 - t)·B under an order
/// eliminating t.
pub fn intersection(ring: &PolyRing, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    assert!(ring.nvars() < MAX_VARS, "one spare variable is needed");
    let mut names = vec!["_t".to_string()];
    names.extend(ring.names().iter().cloned());
    let big = PolyRing::with_names(names, *ring.field(), TermOrder::Elimination);
    let t = big.var(0);
    let one_minus_t = big.sub(&big.one(), &t);
    let mut gens = Vec::new();
    for f in a {
        gens.push(big.mul(&t, &shift_up(ring, &big, f)));
    }
    for f in b {
        gens.push(big.mul(&one_minus_t, &shift_up(ring, &big, f)));
    }
    let gb = buchberger(&big, &gens, None);
    let kept: Vec<Poly> =
        gb.iter().filter(|g| g.terms().iter().all(|t| t.mono.exp(0) == 0)).map(|g| shift_down(ring, &big, g)).collect();
    buchberger(ring, &kept, None)
}

/// Exact quotient g / f; None when f does not divide g.
pub fn divide_exact(ring: &PolyRing, g: &Poly, f: &Poly) -> Option<Poly> {
    let fp = ring.field();
    let lead = f.lead()?;
    let inv = fp.inv(lead.coeff);
    let mut rem = g.clone();
    let mut quot = ring.zero();
    while let Some(t) = rem.lead().copied() {
        if !lead.mono.divides(&t.mono) {
            return None;
        }
        let m = t.mono.div(&lead.mono);
        let c = fp.mul(t.coeff, inv);
        quot = ring.add(&quot, &ring.mul_term(&ring.one(), &m, c));
        rem = ring.sub(&rem, &ring.mul_term(f, &m, c));
    }
    Some(quot)
}

/// (A : f) = (A ∩ (f)) / f.
pub fn quotient(ring: &PolyRing, a: &[Poly], f: &Poly) -> Vec<Poly> {
    let inter = intersection(ring, a, std::slice::from_ref(f));
    let q: Vec<Poly> = inter.iter().map(|g| divide_exact(ring, g, f).expect("elements of (f) are multiples of f")).collect();
    buchberger(ring, &q, None)
}
