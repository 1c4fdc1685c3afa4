//! Gröbner bases over F_p and local (m-primary) ideal arithmetic.

mod buchberger;
pub mod elimination;
mod local;

use std::sync::{Arc, OnceLock};

pub use buchberger::buchberger;
pub(crate) use buchberger::Reducer;
pub use local::{stabilization_stats, LocalColengthCertificate, LocalIdeal, LocalOptions};

use crate::error::Result;
use crate::monomial::MonomialIdeal;
use crate::poly::{Poly, PolyRing};

/// Polynomial ideal with a lazily computed reduced Gröbner basis (in the
/// ring's term order, no truncation).
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl PolyIdeal {
    pub fn new(ring: Arc<PolyRing>, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        PolyIdeal { ring, gens, gb: OnceLock::new() }
    }

    pub fn from_monomial(ring: Arc<PolyRing>, i: &MonomialIdeal) -> Self {
        let gens = ring.monomial_ideal_gens(i);
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gb(&self) -> &[Poly] {
        self.gb.get_or_init(|| buchberger(&self.ring, &self.gens, None))
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        Reducer::new(&self.ring, self.gb(), None).reduce(f)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn sum(&self, other: &PolyIdeal) -> PolyIdeal {
        Self::new(self.ring.clone(), self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn product(&self, other: &PolyIdeal) -> PolyIdeal {
        let gens = self.gens.iter().flat_map(|f| other.gens.iter().map(move |g| (f, g)));
        Self::new(self.ring.clone(), gens.map(|(f, g)| self.ring.mul(f, g)).collect())
    }

    pub fn power(&self, n: u32) -> PolyIdeal {
        let mut out = Self::new(self.ring.clone(), vec![self.ring.one()]);
        for _ in 0..n {
            out = out.product(self);
        }
        out
    }

    /// (self : f), by elimination.
    pub fn quotient(&self, f: &Poly) -> PolyIdeal {
        Self::new(self.ring.clone(), elimination::quotient(&self.ring, &self.gens, f))
    }

    /// self ∩ other, by elimination.
    pub fn intersection(&self, other: &PolyIdeal) -> PolyIdeal {
        Self::new(self.ring.clone(), elimination::intersection(&self.ring, &self.gens, &other.gens))
    }

    /// Certified localization at m.
    pub fn local(&self, opts: LocalOptions) -> Result<LocalIdeal> {
        LocalIdeal::new(&self.ring, &self.gens, opts)
    }
}

/// ℓ(R_m / B_m) with its stabilization certificate.
pub fn ideal_colength_local(b: &PolyIdeal, opts: LocalOptions) -> Result<LocalColengthCertificate> {
    Ok(*b.local(opts)?.certificate())
}

/// B_m = A_m, for B ⊆ A (checked).
pub fn local_ideal_equal(b: &PolyIdeal, a: &PolyIdeal, opts: LocalOptions) -> Result<bool> {
    let la = a.local(opts)?;
    let lb = b.local(opts)?;
    la.equals_superset_of(&b.ring, &lb)
}

pub fn ideal_membership_local(f: &Poly, b: &PolyIdeal, opts: LocalOptions) -> Result<bool> {
    Ok(b.local(opts)?.contains(&b.ring, f))
}
