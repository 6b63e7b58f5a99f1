//! Equiprobabilities on periodic orbits, cylinder masses of the Haar
//! measure on `M`, and the exact mass constants of the cross-section.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::algebra::Poly;
use crate::cfe::{cfe_period, convergents_of};
use crate::error::{Error, Result};
use crate::natext::AtomicMeasure;
use crate::surd::Surd;

/// The uniform probability on the cycle of `{f}`'s Artin orbit.
pub fn nu_f(f: &Surd) -> Result<AtomicMeasure> {
    let c = cfe_period(f)?;
    let w = BigRational::new(BigInt::one(), BigInt::from(c.ell()));
    let mut nu = AtomicMeasure::new();
    for x in c.cycle_points() {
        nu.add(x, w.clone());
    }
    Ok(nu)
}

/// The largest `c` with `nu >= c * target`.
pub fn nu_lower_bound(nu: &AtomicMeasure, target: &AtomicMeasure) -> Result<BigRational> {
    target
        .atoms
        .iter()
        .map(|(x, w)| nu.weight(x) / w)
        .min()
        .ok_or(Error::EmptyMeasure)
}

/// The cylinder `{f in M : a_1(f) = d_1, ..., a_k(f) = d_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSpec {
    digits: Vec<Poly>,
}

impl CylinderSpec {
    pub fn new(digits: Vec<Poly>) -> Result<CylinderSpec> {
        if digits.is_empty() || digits.iter().any(Poly::is_constant) {
            return Err(Error::ConstantDigit);
        }
        Ok(CylinderSpec { digits })
    }

    pub fn digits(&self) -> &[Poly] {
        &self.digits
    }
}

fn q_pow(q: u64, e: i64) -> BigRational {
    let q = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        q.pow(e as u32)
    } else {
        q.pow(-e as u32).recip()
    }
}

/// Haar mass, normalized on `M`, of a cylinder.
///
/// The cylinder is the image of `M` under `t -> (p_k + p_{k-1} t) / (q_k +
/// q_{k-1} t)`. On `M` the denominator has absolute value `|q_k|`, so the
/// map scales distances by `|det| / |q_k|^2 = q^(-2 deg q_k)` and sends the
/// ball `M` onto a ball of that relative mass.
pub fn cylinder_measure(c: &CylinderSpec) -> BigRational {
    let ctx = c.digits[0].ctx();
    let mut digits = vec![Poly::zero(ctx)];
    digits.extend(c.digits.iter().cloned());
    let (_, qk) = convergents_of(&digits).pop().expect("nonempty");
    q_pow(ctx.q(), -2 * qk.deg().expect("q_k is nonzero") as i64)
}

/// Exact values attached to the cross-section mass computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassConstants {
    pub q: u64,
    /// `(q-1)^2/(2q) * sum_{n>=1} (q-1) q^n / q^(4n)`, summed in closed form.
    pub series: BigRational,
    /// Partial sums through `n = 1, ..., partial_sums.len()`.
    pub partial_sums: Vec<BigRational>,
    /// The stated closed form `q^3 (q-1)^2 / (2 (q^2+q+1))`.
    pub stated_mass: BigRational,
    /// The stated multiple `q^4 (q-1)^2 / (2 (q^2+q+1))` of the Haar measure.
    pub stated_haar_multiple: BigRational,
    /// `q * series`, the multiple implied by the summed series.
    pub derived_haar_multiple: BigRational,
    /// True when the summed series and the stated closed form disagree.
    pub mismatch: bool,
}

pub const PARTIAL_SUM_CUTOFF: usize = 20;

pub fn mass_constants(q: u64) -> MassConstants {
    let qr = BigRational::from_integer(BigInt::from(q));
    let one = BigRational::one();
    let qm1 = &qr - &one;
    let prefactor = &qm1 * &qm1 / (BigRational::from_integer(2.into()) * &qr);
    let term = |n: i64| &qm1 * q_pow(q, n) * q_pow(q, -4 * n);
    // geometric series with first term term(1) and ratio q^-3
    let series = &prefactor * term(1) / (&one - q_pow(q, -3));
    let mut acc = BigRational::zero();
    let partial_sums = (1..=PARTIAL_SUM_CUTOFF as i64)
        .map(|n| {
            acc += term(n);
            &prefactor * &acc
        })
        .collect();
    let den = BigRational::from_integer(2.into()) * (&qr * &qr + &qr + &one);
    let stated_mass = q_pow(q, 3) * &qm1 * &qm1 / &den;
    let stated_haar_multiple = q_pow(q, 4) * &qm1 * &qm1 / &den;
    MassConstants {
        q,
        derived_haar_multiple: &qr * &series,
        mismatch: series != stated_mass,
        series,
        partial_sums,
        stated_mass,
        stated_haar_multiple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Ctx, FieldCtx};
    use crate::natext::f_of_periodic_orbit;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn f3() -> Ctx {
        FieldCtx::prime(3).unwrap()
    }

    #[test]
    fn nu_examples() {
        let k = f3();
        let f = Surd::parse(&k, "0,2|1|1|1,0,1").unwrap();
        let nu = nu_f(&f).unwrap();
        assert_eq!(nu.weight(&f), r(1, 1));
        assert_eq!(nu_lower_bound(&nu, &nu).unwrap(), r(1, 1));
        assert_eq!(f_of_periodic_orbit(&f).unwrap().normalized(), nu);
        let g = Surd::parse(&k, "0|1|1|1,1,0,0,1").unwrap();
        let nu_g = nu_f(&g).unwrap();
        assert_eq!(nu_g.total_mass(), r(1, 1));
        assert_eq!(nu_lower_bound(&nu, &nu_g).unwrap(), r(0, 1));
        let mut half = AtomicMeasure::new();
        half.add(f.clone(), r(1, 2));
        half.add(g, r(1, 2));
        assert_eq!(nu_lower_bound(&half, &nu).unwrap(), r(1, 2));
        assert_eq!(
            nu_lower_bound(&nu, &AtomicMeasure::new()).unwrap_err(),
            Error::EmptyMeasure
        );
    }

    #[test]
    fn cylinder_examples() {
        let k = f3();
        let p = |c: &[i64]| Poly::from_ints(&k, c);
        let c = CylinderSpec::new(vec![p(&[0, 2])]).unwrap();
        assert_eq!(cylinder_measure(&c), r(1, 9));
        let c = CylinderSpec::new(vec![p(&[0, 1]), p(&[1, 0, 1])]).unwrap();
        assert_eq!(cylinder_measure(&c), r(1, 729));
        assert_eq!(
            CylinderSpec::new(vec![p(&[0, 1]), p(&[2])]).unwrap_err(),
            Error::ConstantDigit
        );
        assert_eq!(CylinderSpec::new(vec![]).unwrap_err(), Error::ConstantDigit);
    }

    #[test]
    fn mass_constants_q3() {
        let m = mass_constants(3);
        assert_eq!(m.series, r(2, 39));
        assert_eq!(m.stated_mass, r(54, 13));
        assert_eq!(m.stated_haar_multiple, r(162, 13));
        assert_eq!(m.derived_haar_multiple, r(2, 13));
        assert!(m.mismatch);
    }
}
