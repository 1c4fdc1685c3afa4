//! Mixed multiplicities e_j(m|I) from the Bhattacharya polynomial
//! P(r, s) = Σ_{i+j<=d} e_ij C(r+i, i) C(s+j, j), which equals ℓ(R/m^r I^s)
//! for large r and s.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::groebner::{LocalIdeal, LocalOptions};
use crate::linalg;
use crate::monomial::{grid_lengths, length_cell, MonomialIdeal};
use crate::poly::{Poly, PolyRing};
use crate::semigroup::SemigroupIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitWindow {
    pub r0: u32,
    pub s0: u32,
    pub span: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMultiplicityTable {
    pub d: usize,
    /// e[i][j] for i + j <= d.
    pub e: Vec<Vec<i64>>,
    /// e_j(m|I) = e[d - j][j], j = 0..=d.
    pub mixed: Vec<i64>,
    pub window: Option<FitWindow>,
    pub escalations: u32,
    pub validated: bool,
}

impl MixedMultiplicityTable {
    /// e_j(m|I).
    pub fn mixed(&self, j: usize) -> i64 {
        self.mixed[j]
    }

    /// P(r, s).
    pub fn eval(&self, r: u32, s: u32) -> i64 {
        let mut v = 0i64;
        for (i, row) in self.e.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                v += c * binom(r as i64 + i as i64, i as i64) * binom(s as i64 + j as i64, j as i64);
            }
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitOptions {
    /// Window origin (r0 = s0); defaults to 2d + 2.
    pub origin: Option<u32>,
    pub max_escalations: u32,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { origin: None, max_escalations: 4 }
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

/// Exponent pairs (i, j) with i + j <= d, in a fixed order.
fn index_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect()
}

/// Fits P on the points (r0 + a, s0 + b), a + b <= d, and checks it on every
/// other grid point. `grid[a][b]` = ℓ(R/m^{r0+a} I^{s0+b}). None when the
/// fit is not integral or does not reproduce the grid.
pub fn fit_grid(grid: &[Vec<u64>], r0: u32, s0: u32, d: usize) -> Option<Vec<Vec<i64>>> {
    let pairs = index_pairs(d);
    let points: Vec<(usize, usize)> = index_pairs(d);
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|&(a, b)| {
            let (r, s) = (r0 as i64 + a as i64, s0 as i64 + b as i64);
            pairs.iter().map(|&(i, j)| BigInt::from(binom(r + i as i64, i as i64) * binom(s + j as i64, j as i64))).collect()
        })
        .collect();
    let rhs: Vec<BigInt> = points.iter().map(|&(a, b)| BigInt::from(grid[a][b])).collect();
    let sol = linalg::solve(&rows, &rhs)?.integral()?;
    let mut e = vec![vec![0i64; 0]; d + 1];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if e[i].len() <= j {
            e[i].resize(j + 1, 0);
        }
        e[i][j] = sol[k].to_i64()?;
    }
    let table = MixedMultiplicityTable {
        d,
        mixed: (0..=d).map(|j| e[d - j][j]).collect(),
        e,
        window: None,
        escalations: 0,
        validated: false,
    };
    for (a, row) in grid.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if table.eval(r0 + a as u32, s0 + b as u32) != v as i64 {
                return None;
            }
        }
    }
    Some(table.e)
}

/// d-th forward difference of a sequence at its start.
fn forward_difference(v: &[u64], d: usize) -> i64 {
    (0..=d).map(|k| (if (d - k).is_multiple_of(2) { 1 } else { -1 }) * binom(d as i64, k as i64) * v[k] as i64).sum()
}

/// Normalized leading coefficient of a Hilbert–Samuel function, from d + 3
/// consecutive values (the d-th difference must be constant on them).
fn samuel_multiplicity(values: &[u64], d: usize) -> Option<i64> {
    let diffs: Vec<i64> = (0..values.len() - d).map(|k| forward_difference(&values[k..], d)).collect();
    diffs.windows(2).all(|w| w[0] == w[1]).then(|| diffs[0])
}

/// Mixed multiplicities of an m-primary monomial ideal in d >= 1 variables.
pub fn fit_bhattacharya(i: &MonomialIdeal, opts: FitOptions) -> Result<MixedMultiplicityTable> {
    let d = i.dim();
    if !i.is_m_primary() {
        let v = i.pure_powers().iter().position(|p| p.is_none()).unwrap_or(0);
        return Err(Error::NotFiniteColength(v));
    }
    let span = d as u32 + 2;
    let mut origin = opts.origin.unwrap_or(2 * d as u32 + 2);
    for esc in 0..=opts.max_escalations {
        let grid = grid_lengths(i, origin, origin, span, span)?;
        if let Some(e) = fit_grid(&grid, origin, origin, d) {
            let mut table = MixedMultiplicityTable {
                d,
                mixed: (0..=d).map(|j| e[d - j][j]).collect(),
                e,
                window: Some(FitWindow { r0: origin, s0: origin, span }),
                escalations: esc,
                validated: false,
            };
            // Held-out diagonal beyond the window.
            let diag_ok = (0..d as u32 + 2).all(|k| {
                let (r, s) = (origin + span + k, origin + span + k);
                length_cell(i, r, s).map(|v| v as i64 == table.eval(r, s)).unwrap_or(false)
            });
            // e_0 = e(m) and e_d = e(I) from one-variable Hilbert–Samuel fits.
            let hs_m: Vec<u64> =
                (0..d as u32 + 3).map(|k| length_cell(i, origin + k, 0)).collect::<Result<_>>()?;
            let hs_i: Vec<u64> =
                (0..d as u32 + 3).map(|k| length_cell(i, 0, origin + k)).collect::<Result<_>>()?;
            let ends_ok = samuel_multiplicity(&hs_m, d) == Some(table.mixed[0])
                && samuel_multiplicity(&hs_i, d) == Some(table.mixed[d]);
            if diag_ok && ends_ok {
                table.validated = true;
                return Ok(table);
            }
        }
        origin *= 2;
    }
    Err(Error::FitUnstable(opts.max_escalations))
}

/// Dimension one: e_0 = e(R) (the semigroup multiplicity) and e_1 = e(I) =
/// the order of I, the latter checked against ℓ(R/I^{s+1}) - ℓ(R/I^s).
pub fn dim1_table(i: &SemigroupIdeal) -> MixedMultiplicityTable {
    let e0 = i.ambient().multiplicity() as i64;
    let e1 = i.order() as i64;
    let s0 = i.ambient().conductor() + 2;
    let lens: Vec<u64> = (s0..s0 + 4).map(|s| i.power(s).colength()).collect();
    let validated = lens.windows(2).all(|w| (w[1] - w[0]) as i64 == e1);
    MixedMultiplicityTable {
        d: 1,
        e: vec![vec![0, e1], vec![e0]],
        mixed: vec![e0, e1],
        window: None,
        escalations: 0,
        validated,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicityClass {
    Minimal,
    AlmostMinimal,
    Neither,
}

impl MultiplicityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MultiplicityClass::Minimal => "Minimal",
            MultiplicityClass::AlmostMinimal => "AlmostMinimal",
            MultiplicityClass::Neither => "Neither",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: MultiplicityClass,
    /// e_{d-1}(m|I) - (μ(I) - d + 1).
    pub slack: i64,
}

pub fn classify(d: usize, mu: usize, e_d_minus_1: i64) -> Classification {
    let slack = e_d_minus_1 - (mu as i64 - d as i64 + 1);
    let verdict = match slack {
        0 => MultiplicityClass::Minimal,
        1 => MultiplicityClass::AlmostMinimal,
        _ => MultiplicityClass::Neither,
    };
    Classification { verdict, slack }
}

/// e_{d-1}(m|I) = ℓ(R/(xI + (a_1..a_{d-1})m)) - ℓ(R/I) - (d - 1), for a
/// joint reduction (x, a_1, ..., a_{d-1}) of (m|I^{[d-1]}).
pub fn e_last_via_joint_reduction(ring: &PolyRing, i: &MonomialIdeal, x: &Poly, a: &[Poly]) -> Result<i64> {
    let d = ring.nvars();
    let m = MonomialIdeal::maximal(d);
    let mut gens = ring.times_monomial_ideal(x, i);
    for ak in a {
        gens.extend(ring.times_monomial_ideal(ak, &m));
    }
    let start = i.staircase_bound()? + 1;
    let b = LocalIdeal::new(ring, &gens, LocalOptions::starting_at(start))?;
    let li = i.colength()?;
    Ok(b.colength() as i64 - li as i64 - (d as i64 - 1))
}
