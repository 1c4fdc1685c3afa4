//! Sparse multivariate polynomials over a prime field.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::Rng;

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialIdeal, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Lex,
    /// Variable 0 is eliminated: lex on x0, ties broken by grevlex on the rest.
    Elimination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    nvars: usize,
    field: PrimeField,
    order: TermOrder,
    names: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub key: u128,
    pub mono: Monomial,
    pub coeff: u32,
}

/// Terms sorted by decreasing key, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: Vec<Term>,
}

impl PolyRing {
    pub fn new(nvars: usize, field: PrimeField, order: TermOrder) -> Self {
        let names = default_names(nvars);
        Self::with_names(names, field, order)
    }

    pub fn with_names(names: Vec<String>, field: PrimeField, order: TermOrder) -> Self {
        assert!(!names.is_empty() && names.len() <= MAX_VARS, "1..={MAX_VARS} variables supported");
        Self { nvars: names.len(), field, order, names }
    }

    /// Same variables and field under a different term order.
    pub fn with_order(&self, order: TermOrder) -> Self {
        Self { order, ..self.clone() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Sort key: larger key means larger monomial in the active order.
    #[inline]
    pub fn key(&self, m: &Monomial) -> u128 {
        let e = m.raw();
        let n = self.nvars;
        let mut k: u128 = 0;
        match self.order {
            TermOrder::Lex => {
                for &x in &e[..n] {
                    k = (k << 16) | x as u128;
                }
            }
            TermOrder::Grevlex => {
                k = m.deg() as u128;
                for &x in e[..n].iter().rev() {
                    k = (k << 16) | (0xFFFF - x) as u128;
                }
            }
            TermOrder::Elimination => {
                k = e[0] as u128;
                let rest: u32 = e[1..n].iter().map(|&x| x as u32).sum();
                k = (k << 16) | rest as u128;
                for &x in e[1..n].iter().rev() {
                    k = (k << 16) | (0xFFFF - x) as u128;
                }
            }
        }
        k
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn term(&self, mono: Monomial, coeff: u32) -> Term {
        Term { key: self.key(&mono), mono, coeff }
    }

    pub fn zero(&self) -> Poly {
        Poly::default()
    }

    pub fn one(&self) -> Poly {
        self.monomial(Monomial::one())
    }

    pub fn monomial(&self, m: Monomial) -> Poly {
        Poly { terms: vec![self.term(m, 1)] }
    }

    pub fn var(&self, i: usize) -> Poly {
        self.monomial(Monomial::var(i))
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Poly {
        let mut acc: BTreeMap<u128, (Monomial, u32)> = BTreeMap::new();
        for (m, c) in terms {
            let c = c % self.field.modulus();
            if c == 0 {
                continue;
            }
            let key = self.key(&m);
            let entry = acc.entry(key).or_insert((m, 0));
            entry.1 = self.field.add(entry.1, c);
        }
        Poly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, (_, c))| *c != 0)
                .map(|(key, (mono, coeff))| Term { key, mono, coeff })
                .collect(),
        }
    }

    /// Re-sorts a polynomial built under another order.
    pub fn convert(&self, f: &Poly) -> Poly {
        self.from_terms(f.terms.iter().map(|t| (t.mono, t.coeff)))
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.merge(f, g, 1)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.merge(f, g, self.field.neg(1))
    }

    /// f + c*g
    fn merge(&self, f: &Poly, g: &Poly, c: u32) -> Poly {
        let fp = &self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() || j < g.terms.len() {
            let take = match (f.terms.get(i), g.terms.get(j)) {
                (Some(a), Some(b)) => a.key.cmp(&b.key),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(f.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let b = g.terms[j];
                    out.push(Term { coeff: fp.mul(c, b.coeff), ..b });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = fp.add(f.terms[i].coeff, fp.mul(c, g.terms[j].coeff));
                    if v != 0 {
                        out.push(Term { coeff: v, ..f.terms[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, f: &Poly, c: u32) -> Poly {
        if c == 0 {
            return self.zero();
        }
        Poly { terms: f.terms.iter().map(|t| Term { coeff: self.field.mul(t.coeff, c), ..*t }).collect() }
    }

    /// c * m * f; the order is preserved by monomial multiplication.
    pub fn mul_term(&self, f: &Poly, m: &Monomial, c: u32) -> Poly {
        if c == 0 {
            return self.zero();
        }
        Poly {
            terms: f
                .terms
                .iter()
                .map(|t| {
                    let mono = t.mono.mul(m);
                    Term { key: self.key(&mono), mono, coeff: self.field.mul(t.coeff, c) }
                })
                .collect(),
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        let fp = &self.field;
        self.from_terms(
            f.terms.iter().flat_map(|a| g.terms.iter().map(move |b| (a.mono.mul(&b.mono), fp.mul(a.coeff, b.coeff)))),
        )
    }

    pub fn monic(&self, f: &Poly) -> Poly {
        match f.terms.first() {
            None => self.zero(),
            Some(t) if t.coeff == 1 => f.clone(),
            Some(t) => self.scale(f, self.field.inv(t.coeff)),
        }
    }

    /// Drops every term of total degree >= n.
    pub fn truncate(&self, f: &Poly, n: u32) -> Poly {
        Poly { terms: f.terms.iter().filter(|t| t.mono.deg() < n).copied().collect() }
    }

    /// f * g for every minimal generator g of a monomial ideal.
    pub fn times_monomial_ideal(&self, f: &Poly, ideal: &MonomialIdeal) -> Vec<Poly> {
        ideal.gens().iter().map(|g| self.mul_term(f, g, 1)).collect()
    }

    pub fn monomial_ideal_gens(&self, ideal: &MonomialIdeal) -> Vec<Poly> {
        ideal.gens().iter().map(|g| self.monomial(*g)).collect()
    }

    /// Random F_p-combination of the given polynomials with nonzero coefficients.
    pub fn random_combination<R: Rng>(&self, rng: &mut R, polys: &[Poly]) -> Poly {
        let p = self.field.modulus();
        let mut acc = self.zero();
        for f in polys {
            let c = rng.gen_range(1..p);
            acc = self.merge(&acc, f, c);
        }
        acc
    }

    /// Random linear form with nonzero coefficients on every variable.
    pub fn random_linear_form<R: Rng>(&self, rng: &mut R) -> Poly {
        let vars: Vec<Poly> = (0..self.nvars).map(|i| self.var(i)).collect();
        self.random_combination(rng, &vars)
    }

    pub fn format(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, t) in f.terms.iter().enumerate() {
            let c = self.field.to_i64(t.coeff);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mono = t.mono.fmt_with(&self.names);
            if mag == 1 {
                s.push_str(&mono);
            } else if t.mono.is_one() {
                s.push_str(&mag.to_string());
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    const BASE: [&str; 4] = ["x", "y", "z", "w"];
    if n <= BASE.len() {
        BASE[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl Poly {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lm(&self) -> Monomial {
        self.terms[0].mono
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.deg()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.deg()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Drops the leading term.
    pub fn tail(&self) -> Poly {
        Poly { terms: self.terms.get(1..).unwrap_or(&[]).to_vec() }
    }

    /// The terms strictly below degree `d`.
    pub fn below_degree(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|t| t.mono.deg() < d).copied().collect() }
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].key > w[1].key));
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        Poly { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(order: TermOrder) -> PolyRing {
        PolyRing::new(3, PrimeField::default(), order)
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn grevlex_ordering() {
        let r = ring(TermOrder::Grevlex);
        // x^2 > xy > y^2 > xz > yz > z^2 in degree 2
        let seq = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in seq.windows(2) {
            assert_eq!(r.cmp(&w[0], &w[1]), Ordering::Greater, "{:?} vs {:?}", w[0], w[1]);
        }
        assert_eq!(r.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        let r = ring(TermOrder::Lex);
        assert_eq!(r.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let e = ring(TermOrder::Elimination);
        assert_eq!(e.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(e.cmp(&m(&[0, 0, 3]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(e.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn arithmetic() {
        let r = ring(TermOrder::Grevlex);
        let x = r.var(0);
        let y = r.var(1);
        let s = r.add(&x, &y);
        let sq = r.mul(&s, &s);
        assert_eq!(sq.len(), 3);
        assert_eq!(r.format(&sq), "x^2 + 2*x*y + y^2");
        let d = r.sub(&sq, &r.mul(&x, &x));
        assert_eq!(r.format(&d), "2*x*y + y^2");
        assert!(r.sub(&s, &s).is_zero());
        assert_eq!(r.format(&r.scale(&x, r.field().from_i64(-3))), "-3*x");
        assert!(!r.add(&r.one(), &x).is_homogeneous());
        assert_eq!(r.truncate(&sq, 2), r.zero());
    }
}
