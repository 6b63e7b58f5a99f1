//! The natural extension of the Artin map on pairs
//! `(xi_-, xi_+)` with `v_inf(xi_-) < 0` and `v_inf(xi_+) >= 1`:
//!
//! ```text
//! (xi_-, xi_+)  ->  (1/xi_- - a, {1/xi_+}),   a = [1/xi_+]
//! ```
//!
//! together with its inverse, the two-sided coding it induces, return times
//! and the atomic measures carried by periodic orbits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::Poly;
use crate::cfe::{artin_step, cfe_period, DegreeStats};
use crate::error::{Error, Result};
use crate::surd::Surd;

/// A point of `(cO) x M`, both coordinates irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatExtPair {
    pub xi_minus: Surd,
    pub xi_plus: Surd,
}

impl NatExtPair {
    pub fn new(xi_minus: Surd, xi_plus: Surd) -> Result<NatExtPair> {
        if !xi_minus.is_in_co() || !xi_plus.is_in_m() {
            return Err(Error::NotReduced);
        }
        Ok(NatExtPair { xi_minus, xi_plus })
    }

    pub fn is_valid(&self) -> bool {
        self.xi_minus.is_in_co() && self.xi_plus.is_in_m()
    }
}

/// `(f^sigma, f)` for a reduced `f`.
pub fn pair_make(f: &Surd) -> Result<NatExtPair> {
    NatExtPair::new(f.conjugate(), f.clone())
}

/// One forward step; returns the digit `[1/xi_+]` consumed.
pub fn natext_step(p: &NatExtPair) -> (Poly, NatExtPair) {
    let (a, plus) = artin_step(&p.xi_plus).expect("xi_+ lies in M");
    let minus = p.xi_minus.recip().sub_poly(&a);
    debug_assert!(minus.is_in_co());
    (
        a,
        NatExtPair {
            xi_minus: minus,
            xi_plus: plus,
        },
    )
}

/// The inverse of [`natext_step`]: returns `(a, prev)` with
/// `natext_step(prev) == (a, p)`.
pub fn natext_unstep(p: &NatExtPair) -> (Poly, NatExtPair) {
    let a = -&p.xi_minus.integral_part();
    let prev = NatExtPair {
        xi_minus: p.xi_minus.add_poly(&a).recip(),
        xi_plus: p.xi_plus.add_poly(&a).recip(),
    };
    debug_assert!(prev.is_valid());
    (a, prev)
}

/// Digits `a_{-m}, ..., a_0, a_1, ..., a_{m+1}` of the two-sided coding,
/// where `a_0` is the digit consumed on arrival at `p`.
pub fn coding_window(p: &NatExtPair, m: usize) -> Vec<Poly> {
    let mut past = Vec::with_capacity(m + 1);
    let mut x = p.clone();
    for _ in 0..=m {
        let (a, prev) = natext_unstep(&x);
        past.push(a);
        x = prev;
    }
    past.reverse();
    let mut x = p.clone();
    for _ in 0..=m {
        let (a, next) = natext_step(&x);
        past.push(a);
        x = next;
    }
    past
}

/// `2 deg [1/xi_+]`.
pub fn first_return_time(p: &NatExtPair) -> usize {
    let a = p.xi_plus.recip().integral_part();
    2 * a.deg().expect("digit is nonzero")
}

/// A finitely supported measure with exact rational weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomicMeasure {
    pub atoms: BTreeMap<Surd, BigRational>,
}

impl AtomicMeasure {
    pub fn new() -> AtomicMeasure {
        AtomicMeasure::default()
    }

    /// Adds `w` to the weight of `x`.
    pub fn add(&mut self, x: Surd, w: BigRational) {
        let e = self.atoms.entry(x).or_insert_with(BigRational::zero);
        *e += w;
    }

    pub fn weight(&self, x: &Surd) -> BigRational {
        self.atoms.get(x).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> BigRational {
        self.atoms.values().fold(BigRational::zero(), |s, w| s + w)
    }

    /// The probability measure proportional to `self`.
    pub fn normalized(&self) -> AtomicMeasure {
        let m = self.total_mass();
        AtomicMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|(x, w)| (x.clone(), w / &m))
                .collect(),
        }
    }
}

/// The cycle points of `{f}`'s Artin orbit, each weighted `1 / (2 sum deg)`.
pub fn f_of_periodic_orbit(f: &Surd) -> Result<AtomicMeasure> {
    let c = cfe_period(f)?;
    let stats = DegreeStats::of_cycle(&c.cycle);
    let w = BigRational::new(BigInt::one(), BigInt::from(stats.lambda));
    let mut mu = AtomicMeasure::new();
    for x in c.cycle_points() {
        mu.add(x, w.clone());
    }
    Ok(mu)
}
