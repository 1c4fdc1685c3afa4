//! Line-oriented ring/ideal specification files.
//!
//! ```text
//! # comments start with '#'
//! ring polynomial vars x,y
//! ideal x^4, x^3 y, x y^3, y^4
//! prime 32003
//! seed 0
//! trunc 12
//! Nmax 8
//! nmax 6
//! samples 5
//! guard 4
//! ```
//!
//! Semigroup rings are written `ring semigroup gens 4,5,6,7` with ideals as
//! exponents (`4, 5, 6`) or powers of `t` (`t^4, t^5, t^6`).

use std::fmt;
use std::sync::Arc;

use crate::analysis::{Config, Subject};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialIdeal, MAX_VARS};
use crate::poly::{PolyRing, TermOrder};
use crate::reductions::PolyCase;
use crate::semigroup::{NumericalSemigroup, SemigroupIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Semigroup { gens: Vec<u32> },
    Polynomial { vars: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub ring: RingKind,
    /// Exponent vectors of the ideal generators (length 1 for semigroups).
    pub ideal: Vec<Vec<u32>>,
    pub config: Config,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

/// Splits `s` (starting at 1-based column `col0`) at commas, yielding trimmed
/// pieces with their columns.
fn comma_items(s: &str, col0: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in s.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((col0 + start + lead, piece.trim()));
        start += piece.len() + 1;
    }
    out
}

fn parse_u64(tok: &str, line: usize, col: usize, what: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| syntax(line, col, format!("expected a nonnegative integer for {what}, found '{tok}'")))
}

fn parse_monomial(item: &str, vars: &[String], line: usize, col: usize) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; vars.len()];
    let mut offset = 0;
    for tok in item.split(|c: char| c.is_whitespace() || c == '*') {
        let c = col + offset;
        offset += tok.len() + 1;
        if tok.is_empty() {
            continue;
        }
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, parse_u64(e, line, c + n.len() + 1, "an exponent")? as u32),
            None => (tok, 1),
        };
        let v = vars.iter().position(|x| x == name).ok_or_else(|| syntax(line, c, format!("unknown variable '{name}'")))?;
        exps[v] += exp;
    }
    Ok(exps)
}

fn parse_semigroup_element(item: &str, line: usize, col: usize) -> Result<u32> {
    let t = item.trim();
    let v = if let Some(rest) = t.strip_prefix("t^") {
        parse_u64(rest, line, col + 2, "an exponent")?
    } else if t == "t" {
        1
    } else {
        parse_u64(t, line, col, "an exponent")?
    };
    Ok(v as u32)
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<RingSpec> {
        let mut ring: Option<RingKind> = None;
        let mut ideal_line: Option<(usize, usize, String)> = None;
        let mut cfg = Config::default();
        let mut seen: Vec<&str> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let lead = body.len() - body.trim_start().len();
            let trimmed = body.trim();
            let (key, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest_col = lead + key.len() + 1 + (rest.len() - rest.trim_start().len()) + 1;
            let rest = rest.trim();
            let key_col = lead + 1;
            const KEYS: [&str; 9] = ["ring", "ideal", "prime", "seed", "trunc", "Nmax", "nmax", "samples", "guard"];
            let Some(k) = KEYS.iter().find(|k| **k == key) else {
                return Err(syntax(line, key_col, format!("unknown key '{key}'")));
            };
            if seen.contains(k) {
                return Err(syntax(line, key_col, format!("duplicate key '{key}'")));
            }
            seen.push(k);
            if rest.is_empty() {
                return Err(syntax(line, key_col + key.len(), format!("missing value for '{key}'")));
            }
            match key {
                "ring" => ring = Some(parse_ring(rest, line, rest_col)?),
                "ideal" => ideal_line = Some((line, rest_col, rest.to_string())),
                _ => {
                    let v = parse_u64(rest, line, rest_col, key)?;
                    match key {
                        "prime" => cfg.prime = u32::try_from(v).map_err(|_| Error::NotPrime(u32::MAX))?,
                        "seed" => cfg.seed = v,
                        "trunc" => cfg.trunc = v as u32,
                        "Nmax" => cfg.n_max = v as u32,
                        "nmax" => cfg.nmax = v as u32,
                        "samples" => cfg.samples = v as usize,
                        "guard" => cfg.guard = v as usize,
                        _ => unreachable!(),
                    }
                }
            }
        }
        let ring = ring.ok_or_else(|| Error::Semantic("missing 'ring' line".into()))?;
        let (line, col, text) = ideal_line.ok_or_else(|| Error::Semantic("missing 'ideal' line".into()))?;
        let ideal = comma_items(&text, col)
            .into_iter()
            .map(|(c, item)| {
                if item.is_empty() {
                    return Err(syntax(line, c, "empty generator"));
                }
                match &ring {
                    RingKind::Semigroup { .. } => Ok(vec![parse_semigroup_element(item, line, c)?]),
                    RingKind::Polynomial { vars } => parse_monomial(item, vars, line, c),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = RingSpec { ring, ideal, config: cfg };
        spec.validate()?;
        Ok(spec)
    }

    /// Semantic checks: bounds, the prime, and that the ideal is a proper
    /// m-primary ideal of the ring.
    pub fn validate(&self) -> Result<()> {
        let c = &self.config;
        if c.trunc == 0 || c.n_max == 0 || c.nmax == 0 || c.samples == 0 || c.guard == 0 {
            return Err(Error::Semantic("all bounds (trunc, Nmax, nmax, samples, guard) must be positive".into()));
        }
        PrimeField::new(c.prime)?;
        self.subject().map(|_| ())
    }

    pub fn subject(&self) -> Result<Subject> {
        match &self.ring {
            RingKind::Semigroup { gens } => {
                let s = Arc::new(NumericalSemigroup::new(gens)?);
                let g: Vec<u32> = self.ideal.iter().map(|e| e[0]).collect();
                if g.contains(&0) {
                    return Err(Error::Semantic("the ideal must be proper (generator t^0 = 1)".into()));
                }
                Ok(Subject::Semigroup(SemigroupIdeal::new(s, &g)?))
            }
            RingKind::Polynomial { vars } => {
                let d = vars.len();
                let i = MonomialIdeal::minimalize(d, self.ideal.iter().map(|e| Monomial::new(e)));
                if i.is_unit() {
                    return Err(Error::Semantic("the ideal must be proper".into()));
                }
                if !i.is_m_primary() {
                    let v = i.pure_powers().iter().position(|p| p.is_none()).unwrap_or(0);
                    return Err(Error::Semantic(format!(
                        "ideal is not primary to the maximal ideal: no power of {} is a generator",
                        vars[v]
                    )));
                }
                let ring = PolyRing::with_names(vars.clone(), PrimeField::new(self.config.prime)?, TermOrder::Grevlex);
                Ok(Subject::Polynomial(PolyCase::new(ring, i)?))
            }
        }
    }
}

fn parse_ring(rest: &str, line: usize, col: usize) -> Result<RingKind> {
    let (kind, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let tail_trim = tail.trim_start();
    let (field, list) = tail_trim.split_once(char::is_whitespace).unwrap_or((tail_trim, ""));
    let field_col = col + kind.len() + 1 + (tail.len() - tail_trim.len());
    let list_col = field_col + field.len() + 1 + (list.len() - list.trim_start().len());
    let list = list.trim();
    match (kind, field) {
        ("semigroup", "gens") => {
            let gens = comma_items(list, list_col)
                .into_iter()
                .map(|(c, t)| {
                    let v = parse_u64(t, line, c, "a generator")?;
                    if v == 0 {
                        return Err(syntax(line, c, "generators must be positive"));
                    }
                    Ok(v as u32)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RingKind::Semigroup { gens })
        }
        ("polynomial", "vars") => {
            let vars: Vec<String> = comma_items(list, list_col)
                .into_iter()
                .map(|(c, t)| {
                    let ok = t.chars().next().is_some_and(|ch| ch.is_ascii_alphabetic())
                        && t.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_');
                    if ok {
                        Ok(t.to_string())
                    } else {
                        Err(syntax(line, c, format!("invalid variable name '{t}'")))
                    }
                })
                .collect::<Result<_>>()?;
            if vars.len() >= MAX_VARS {
                return Err(Error::Semantic(format!("at most {} variables are supported", MAX_VARS - 1)));
            }
            for (k, v) in vars.iter().enumerate() {
                if vars[..k].contains(v) {
                    return Err(Error::Semantic(format!("variable '{v}' declared twice")));
                }
            }
            Ok(RingKind::Polynomial { vars })
        }
        ("semigroup", _) => Err(syntax(line, field_col, "expected 'gens' after 'semigroup'")),
        ("polynomial", _) => Err(syntax(line, field_col, "expected 'vars' after 'polynomial'")),
        _ => Err(syntax(line, col, format!("unknown ring kind '{kind}' (expected semigroup or polynomial)"))),
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[String]| v.join(", ");
        match &self.ring {
            RingKind::Semigroup { gens } => {
                let g: Vec<String> = gens.iter().map(u32::to_string).collect();
                writeln!(f, "ring semigroup gens {}", g.join(","))?;
                let i: Vec<String> = self.ideal.iter().map(|e| e[0].to_string()).collect();
                writeln!(f, "ideal {}", join(&i))?;
            }
            RingKind::Polynomial { vars } => {
                writeln!(f, "ring polynomial vars {}", vars.join(","))?;
                let i: Vec<String> = self
                    .ideal
                    .iter()
                    .map(|e| {
                        let parts: Vec<String> = e
                            .iter()
                            .zip(vars)
                            .filter(|(&x, _)| x > 0)
                            .map(|(&x, v)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                            .collect();
                        if parts.is_empty() {
                            "1".into()
                        } else {
                            parts.join(" ")
                        }
                    })
                    .collect();
                writeln!(f, "ideal {}", join(&i))?;
            }
        }
        let c = &self.config;
        writeln!(f, "prime {}", c.prime)?;
        writeln!(f, "seed {}", c.seed)?;
        writeln!(f, "trunc {}", c.trunc)?;
        writeln!(f, "Nmax {}", c.n_max)?;
        writeln!(f, "nmax {}", c.nmax)?;
        writeln!(f, "samples {}", c.samples)?;
        writeln!(f, "guard {}", c.guard)
    }
}
