//! Monomials and monomial ideals: minimal generators, products, powers and
//! staircase colengths.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest number of variables any ring in this crate uses (four ring
/// variables plus one elimination variable, with room to spare).
pub const MAX_VARS: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::default();
        m.exps[i] = 1;
        m
    }

    pub fn pure_power(i: usize, e: u32) -> Self {
        let mut m = Self::default();
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn raw(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exps(&self, dim: usize) -> Vec<u32> {
        self.exps[..dim].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn deg(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            debug_assert!(*a >= *b);
            *a -= *b;
        }
        m
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
        }
        m
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable occurring, if this is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last.max(1)])
    }
}

/// All monomials of total degree `deg` in `dim` variables, in a fixed order.
pub fn monomials_of_degree(dim: usize, deg: u32) -> Vec<Monomial> {
    fn rec(dim: usize, i: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == dim {
            cur[i] = left;
            out.push(Monomial::new(&cur[..dim]));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(dim, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if deg == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(dim, 0, deg, &mut [0; MAX_VARS], &mut out);
    out
}

/// Monomial ideal stored by its minimal generators, sorted by degree then
/// exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Divisibility-minimal generating set of the ideal spanned by `gens`.
    pub fn minimalize(dim: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut cand: Vec<Monomial> = gens.into_iter().collect::<HashSet<_>>().into_iter().collect();
        cand.sort_by_key(|m| (m.deg(), *m));
        let mut kept: Vec<Monomial> = Vec::with_capacity(cand.len());
        for m in cand {
            if !kept.iter().any(|k| k.divides(&m)) {
                kept.push(m);
            }
        }
        Self { dim, gens: kept }
    }

    pub fn unit(dim: usize) -> Self {
        Self { dim, gens: vec![Monomial::one()] }
    }

    pub fn maximal(dim: usize) -> Self {
        Self::minimalize(dim, (0..dim).map(Monomial::var))
    }

    /// m^k, the ideal of all monomials of degree k.
    pub fn max_power(dim: usize, k: u32) -> Self {
        Self::minimalize(dim, monomials_of_degree(dim, k))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn min_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.deg()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.deg()).max().unwrap_or(0)
    }

    /// Exponent of the pure power of each variable in the ideal, if present.
    pub fn pure_powers(&self) -> Vec<Option<u32>> {
        (0..self.dim)
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.pure_power_var() == Some(i) || g.is_one())
                    .map(|g| g.exp(i))
                    .min()
            })
            .collect()
    }

    pub fn is_m_primary(&self) -> bool {
        self.pure_powers().iter().all(|p| p.is_some())
    }

    /// Smallest k with m^k contained in the ideal.
    pub fn staircase_bound(&self) -> Result<u32> {
        if let Some(i) = self.pure_powers().iter().position(|p| p.is_none()) {
            return Err(Error::NotFiniteColength(i));
        }
        let raw: Vec<Vec<u32>> = self.gens.iter().map(|g| g.exps(self.dim)).collect();
        Ok(max_standard_degree(&raw, self.dim).map_or(0, |d| d + 1))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.dim, other.dim);
        Self::minimalize(self.dim, self.gens.iter().chain(&other.gens).copied())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.dim, other.dim);
        let mut set = HashSet::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                set.insert(a.mul(b));
            }
        }
        Self::minimalize(self.dim, set)
    }

    /// I^n by repeated squaring, minimalizing after every multiplication.
    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut result = Self::unit(self.dim);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// m^k * I.
    pub fn times_max_power(&self, k: u32) -> MonomialIdeal {
        self.product(&Self::max_power(self.dim, k))
    }

    /// Colon by a monomial: generators g / gcd(g, u).
    pub fn quotient_monomial(&self, u: &Monomial) -> MonomialIdeal {
        Self::minimalize(
            self.dim,
            self.gens.iter().map(|g| {
                let common = Monomial::new(
                    &(0..self.dim).map(|i| g.exp(i).min(u.exp(i))).collect::<Vec<_>>(),
                );
                g.div(&common)
            }),
        )
    }

    /// I ∩ J, generated by the pairwise lcms.
    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.dim, other.dim);
        Self::minimalize(self.dim, self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.lcm(b))))
    }

    /// (I : J), the intersection of the colons by the generators of J.
    pub fn quotient(&self, other: &MonomialIdeal) -> MonomialIdeal {
        other
            .gens
            .iter()
            .map(|g| self.quotient_monomial(g))
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_else(|| Self::unit(self.dim))
    }

    /// Number of standard monomials, i.e. dim_k R/I.
    pub fn colength(&self) -> Result<u64> {
        if let Some(i) = self.pure_powers().iter().position(|p| p.is_none()) {
            return Err(Error::NotFiniteColength(i));
        }
        let raw: Vec<Vec<u32>> = self.gens.iter().map(|g| g.exps(self.dim)).collect();
        Ok(colength_rec(&raw, self.dim))
    }

    /// All standard monomials (outside the ideal).
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let bound = self.staircase_bound()?;
        let mut out = Vec::new();
        for k in 0..bound {
            out.extend(monomials_of_degree(self.dim, k).into_iter().filter(|m| !self.contains(m)));
        }
        Ok(out)
    }

    /// [mu(I^0), ..., mu(I^n_max)].
    pub fn mu_powers(&self, n_max: u32) -> Vec<u64> {
        let mut out = vec![1u64];
        let mut cur = Self::unit(self.dim);
        for _ in 1..=n_max {
            cur = cur.product(self);
            out.push(cur.mu() as u64);
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        self.gens.iter().map(|g| g.fmt_with(names)).collect::<Vec<_>>().join(", ")
    }
}

/// Colength by slicing along the last variable; exact integer counting.
fn colength_rec(gens: &[Vec<u32>], dim: usize) -> u64 {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return 0;
    }
    if dim == 1 {
        return gens.iter().map(|g| g[0] as u64).min().expect("m-primary ideal has generators");
    }
    if dim == 2 {
        // Staircase sum: for each x-exponent a, count y-exponents below the
        // lowest generator dividing x^a y^*.
        let mut pts: Vec<(u32, u32)> = gens.iter().map(|g| (g[0], g[1])).collect();
        pts.sort();
        let x_bound = pts.iter().filter(|p| p.1 == 0).map(|p| p.0).min().unwrap();
        let mut total = 0u64;
        let mut best = u32::MAX;
        let mut idx = 0;
        for a in 0..x_bound {
            while idx < pts.len() && pts[idx].0 <= a {
                best = best.min(pts[idx].1);
                idx += 1;
            }
            total += best as u64;
        }
        return total;
    }
    let last = dim - 1;
    let mut levels: Vec<u32> = gens.iter().map(|g| g[last]).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut total = 0u64;
    for (i, &lvl) in levels.iter().enumerate() {
        let slice: Vec<Vec<u32>> =
            gens.iter().filter(|g| g[last] <= lvl).map(|g| g[..last].to_vec()).collect();
        let c = colength_rec(&slice, last);
        if c == 0 {
            break;
        }
        let next = levels.get(i + 1).copied().expect("m-primary ideal has a pure power of each variable");
        total += c * (next - lvl) as u64;
    }
    total
}

/// Largest total degree of a standard monomial, None when the ideal is the unit.
fn max_standard_degree(gens: &[Vec<u32>], dim: usize) -> Option<u32> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return None;
    }
    if dim == 1 {
        return Some(gens.iter().map(|g| g[0]).min().unwrap() - 1);
    }
    let last = dim - 1;
    let mut levels: Vec<u32> = gens.iter().map(|g| g[last]).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut best = None;
    for (i, &lvl) in levels.iter().enumerate() {
        let slice: Vec<Vec<u32>> =
            gens.iter().filter(|g| g[last] <= lvl).map(|g| g[..last].to_vec()).collect();
        match max_standard_degree(&slice, last) {
            None => break,
            Some(d) => {
                let next = levels[i + 1];
                best = best.max(Some(d + next - 1));
            }
        }
    }
    best
}

/// Table L[r][s] = colength(m^r I^s) for r0 <= r < r0+rspan, s0 <= s < s0+sspan.
pub fn grid_lengths(i: &MonomialIdeal, r0: u32, s0: u32, rspan: u32, sspan: u32) -> Result<Vec<Vec<u64>>> {
    i.staircase_bound()?;
    let dim = i.dim();

    let powers: Vec<MonomialIdeal> = (s0..s0 + sspan).map(|s| i.power(s)).collect();
    let cells: Vec<(usize, u32)> =
        (0..powers.len()).flat_map(|si| (r0..r0 + rspan).map(move |r| (si, r))).collect();
    let values: Vec<Result<u64>> = cells
        .par_iter()
        .map(|&(si, r)| powers[si].product(&MonomialIdeal::max_power(dim, r)).colength())
        .collect();
    let mut table = vec![vec![0u64; sspan as usize]; rspan as usize];
    for (&(si, r), v) in cells.iter().zip(values) {
        table[(r - r0) as usize][si] = v?;
    }
    Ok(table)
}

/// colength(m^r I^s) for a single cell.
pub fn length_cell(i: &MonomialIdeal, r: u32, s: u32) -> Result<u64> {
    i.power(s).times_max_power(r).colength()
}
