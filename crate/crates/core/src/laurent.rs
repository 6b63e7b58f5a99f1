//! Truncated Laurent series in `1/Y` over F_q, i.e. elements of
//! `F_q((1/Y))` known up to a finite precision.
//!
//! A series is `sum_{k >= v} c_k Y^(-k)`; the index `k` is the power of
//! `1/Y`, so the valuation `v_inf` is the smallest index with a nonzero
//! coefficient. `prec` is the exclusive bound on known indices: every
//! coefficient with index `< prec` is known. Exact series (polynomials and
//! other finite sums) carry no bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{Ctx, Fq, Poly, Val};
use crate::error::{Error, Result};

/// Relative precision used when an exact series must be expanded.
pub const DEFAULT_PRECISION: usize = 64;

#[derive(Clone)]
pub struct Laurent {
    ctx: Ctx,
    /// Index of `coeffs[0]`.
    val: i64,
    coeffs: Vec<Fq>,
    prec: Option<i64>,
}

impl Laurent {
    /// Builds `sum coeffs[i] Y^-(start + i)` known below `prec`
    /// (`None` for exact). Coefficients at or past `prec` are dropped.
    pub fn new(ctx: &Ctx, start: i64, mut coeffs: Vec<Fq>, prec: Option<i64>) -> Laurent {
        if let Some(p) = prec {
            let keep = (p - start).max(0) as usize;
            coeffs.truncate(keep);
            if coeffs.len() < keep {
                // a finite list below a bound means the rest is zero
                coeffs.resize(keep, Fq::ZERO);
            }
        }
        let mut s = Laurent {
            ctx: Arc::clone(ctx),
            val: start,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    pub fn zero(ctx: &Ctx) -> Laurent {
        Laurent::new(ctx, 0, Vec::new(), None)
    }

    pub fn one(ctx: &Ctx) -> Laurent {
        Laurent::new(ctx, 0, vec![Fq::ONE], None)
    }

    /// Exact embedding of a polynomial.
    pub fn from_poly(f: &Poly) -> Laurent {
        let n = f.coeffs().len() as i64;
        let rev: Vec<Fq> = f.coeffs().iter().rev().copied().collect();
        Laurent::new(f.ctx(), 1 - n, rev, None)
    }

    /// `Y^-k`, exact.
    pub fn monomial(ctx: &Ctx, a: Fq, k: i64) -> Laurent {
        Laurent::new(ctx, k, vec![a], None)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        match self.prec {
            None => {
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
                if self.coeffs.is_empty() {
                    self.val = 0;
                }
            }
            Some(p) => {
                if self.coeffs.is_empty() {
                    self.val = p;
                }
            }
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// `v_inf`. `Infinity` when no nonzero coefficient is known; for an
    /// inexact series this only says the value vanishes below `prec`.
    pub fn vinf(&self) -> Val {
        if self.coeffs.is_empty() {
            Val::Infinity
        } else {
            Val::Finite(self.val)
        }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True if no nonzero coefficient is known.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `Y^-k`, `None` when not known.
    pub fn coeff(&self, k: i64) -> Option<Fq> {
        if self.prec.is_some_and(|p| k >= p) {
            return None;
        }
        if k < self.val {
            return Some(Fq::ZERO);
        }
        Some(
            self.coeffs
                .get((k - self.val) as usize)
                .copied()
                .unwrap_or(Fq::ZERO),
        )
    }

    /// Leading coefficient (zero for a zero series).
    pub fn lc(&self) -> Fq {
        self.coeffs.first().copied().unwrap_or(Fq::ZERO)
    }

    /// Forgets every coefficient of index `>= prec`.
    pub fn truncate(&self, prec: i64) -> Laurent {
        let p = match self.prec {
            Some(own) => own.min(prec),
            None => prec,
        };
        Laurent::new(&self.ctx, self.val, self.coeffs.clone(), Some(p))
    }

    pub fn scale(&self, a: Fq) -> Laurent {
        let k = &self.ctx;
        Laurent::new(
            k,
            self.val,
            self.coeffs.iter().map(|&c| k.mul(c, a)).collect(),
            self.prec,
        )
    }

    /// Coefficients relative to the valuation: `c_v, c_{v+1}, ...` up to the
    /// precision bound, or exactly the stored ones for exact series.
    fn rel(&self) -> &[Fq] {
        &self.coeffs
    }

    /// Number of known coefficients counted from the valuation, with
    /// `fallback` for exact series.
    fn rel_prec(&self, fallback: usize) -> usize {
        match self.prec {
            Some(p) => (p - self.val) as usize,
            None => fallback,
        }
    }

    /// Multiplicative inverse. Exact inputs are expanded to
    /// [`DEFAULT_PRECISION`] coefficients.
    pub fn inv(&self) -> Result<Laurent> {
        self.inv_with(DEFAULT_PRECISION)
    }

    /// Inverse with `n` relative coefficients when the input is exact.
    pub fn inv_with(&self, n: usize) -> Result<Laurent> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let k = &self.ctx;
        let n = self.rel_prec(n);
        let c = self.rel();
        let c0_inv = k.inv(c[0]).expect("leading coefficient is nonzero");
        let mut e = Vec::with_capacity(n);
        e.push(c0_inv);
        for m in 1..n {
            let mut s = Fq::ZERO;
            for i in 1..=m.min(c.len() - 1) {
                s = k.add(s, k.mul(c[i], e[m - i]));
            }
            e.push(k.neg(k.mul(s, c0_inv)));
        }
        Ok(Laurent::new(k, -self.val, e, Some(-self.val + n as i64)))
    }

    /// Square root by coefficient recursion. The branch is fixed by taking
    /// the canonical root of the leading coefficient.
    pub fn sqrt(&self) -> Result<Laurent> {
        self.sqrt_with(DEFAULT_PRECISION)
    }

    /// Square root with `n` relative coefficients when the input is exact.
    pub fn sqrt_with(&self, n: usize) -> Result<Laurent> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.val.rem_euclid(2) != 0 {
            return Err(Error::OddValuation);
        }
        let k = &self.ctx;
        let d0 = k.sqrt(self.lc()).ok_or(Error::NonSquareLeadingCoeff)?;
        let n = self.rel_prec(n);
        let mut d = vec![d0];
        sqrt_extend(k, self.rel(), &mut d, n);
        let v = self.val / 2;
        Ok(Laurent::new(k, v, d, Some(v + n as i64)))
    }

    /// Splits `f = [f] + {f}` into its polynomial part and the part of
    /// positive valuation.
    pub fn int_frac(&self) -> Result<(Poly, Laurent)> {
        if self.prec.is_some_and(|p| p < 1) {
            return Err(Error::InsufficientPrecision);
        }
        let k = &self.ctx;
        let split = ((1 - self.val).max(0) as usize).min(self.coeffs.len());
        let (head, tail) = self.coeffs.split_at(split);
        // head holds indices val..=0, i.e. Y^-val down to Y^0
        let mut poly = vec![Fq::ZERO; (1 - self.val).max(0) as usize];
        for (i, &c) in head.iter().enumerate() {
            poly[(-(self.val + i as i64)) as usize] = c;
        }
        let frac = Laurent::new(k, self.val + split as i64, tail.to_vec(), self.prec);
        Ok((Poly::new(k, poly), frac))
    }

    /// True if the known parts agree on every index known in both.
    pub fn agrees_with(&self, other: &Laurent) -> bool {
        let end = match (self.prec, other.prec) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => {
                return self.val == other.val && self.coeffs == other.coeffs;
            }
        };
        let start = self.val.min(other.val);
        (start..end).all(|i| self.coeff(i) == other.coeff(i))
    }
}

/// Extends the relative square-root coefficients `d` of the series with
/// relative coefficients `c` (missing entries are zero) to length `n`.
/// `d[0]` must already hold a root of `c[0]`.
pub(crate) fn sqrt_extend(k: &Ctx, c: &[Fq], d: &mut Vec<Fq>, n: usize) {
    let two_d0_inv = k
        .inv(k.add(d[0], d[0]))
        .expect("odd characteristic and nonzero leading root");
    while d.len() < n {
        let m = d.len();
        let mut s = c.get(m).copied().unwrap_or(Fq::ZERO);
        for i in 1..m {
            s = k.sub(s, k.mul(d[i], d[m - i]));
        }
        d.push(k.mul(s, two_d0_inv));
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let k = &self.ctx;
        let prec = min_prec(self.prec, rhs.prec);
        let start = self.val.min(rhs.val);
        let end = match prec {
            Some(p) => p,
            None => (self.val + self.coeffs.len() as i64).max(rhs.val + rhs.coeffs.len() as i64),
        };
        let coeffs = (start..end.max(start))
            .map(|i| {
                k.add(
                    self.coeff(i).unwrap_or(Fq::ZERO),
                    rhs.coeff(i).unwrap_or(Fq::ZERO),
                )
            })
            .collect();
        Laurent::new(k, start, coeffs, prec)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(self.ctx.neg(Fq::ONE))
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let k = &self.ctx;
        if (self.is_zero() && self.is_exact()) || (rhs.is_zero() && rhs.is_exact()) {
            return Laurent::zero(k);
        }
        let prec = match (self.prec, rhs.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p + rhs.val),
            (None, Some(p)) => Some(p + self.val),
            (Some(a), Some(b)) => Some((a + rhs.val).min(b + self.val)),
        };
        let start = self.val + rhs.val;
        let len = match prec {
            Some(p) => (p - start).max(0) as usize,
            None => self.coeffs.len() + rhs.coeffs.len() - 1,
        };
        let mut out = vec![Fq::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Laurent::new(k, start, out, prec)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.ctx;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = -(self.val + i as i64);
            let mono = match e {
                0 => String::new(),
                1 => "Y".to_string(),
                _ => format!("Y^{e}"),
            };
            terms.push(match (c == Fq::ONE, e) {
                (_, 0) => k.fmt_elem(c),
                (true, _) => mono,
                (false, _) => format!("{}*{mono}", k.fmt_elem(c)),
            });
        }
        if let Some(p) = self.prec {
            terms.push(match -p {
                0 => "O(1)".to_string(),
                1 => "O(Y)".to_string(),
                e => format!("O(Y^{e})"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::FieldCtx;

    fn f3() -> Ctx {
        FieldCtx::prime(3).unwrap()
    }

    fn series(k: &Ctx, start: i64, c: &[i64], prec: i64) -> Laurent {
        Laurent::new(
            k,
            start,
            c.iter().map(|&x| k.from_int(x)).collect(),
            Some(prec),
        )
    }

    fn random_series(k: &Ctx, rng: &mut ChaCha8Rng) -> Laurent {
        let start = rng.gen_range(-5..5);
        let len = rng.gen_range(1..20);
        let mut c: Vec<Fq> = (0..len).map(|_| k.elem(rng.gen_range(0..k.q()))).collect();
        c[0] = k.elem(rng.gen_range(1..k.q()));
        Laurent::new(k, start, c, Some(start + len as i64))
    }

    #[test]
    fn valuation_examples() {
        let k = f3();
        assert_eq!(Laurent::from_poly(&Poly::y(&k)).vinf(), Val::Finite(-1));
        assert_eq!(Laurent::zero(&k).vinf(), Val::Infinity);
        assert_eq!(series(&k, 1, &[2, 0, 1], 8).vinf(), Val::Finite(1));
    }

    #[test]
    fn inverse_examples() {
        let k = f3();
        let y = Laurent::from_poly(&Poly::y(&k));
        let yi = y.inv().unwrap();
        assert_eq!(yi.vinf(), Val::Finite(1));
        assert_eq!(yi.coeff(1), Some(Fq::ONE));
        assert!((2..DEFAULT_PRECISION as i64).all(|i| yi.coeff(i) == Some(Fq::ZERO)));
        // 1/(1 + Y^-1) = sum (-1)^k Y^-k and -1 = 2
        let g = Laurent::new(&k, 0, vec![Fq::ONE, Fq::ONE], None)
            .inv()
            .unwrap();
        for i in 0..10 {
            let expected = if i % 2 == 0 { 1 } else { 2 };
            assert_eq!(g.coeff(i), Some(k.from_int(expected)));
        }
        assert_eq!(
            series(&k, 0, &[0, 0], 2).inv().unwrap_err(),
            Error::ZeroDivisor
        );
    }

    #[test]
    fn sqrt_examples() {
        let k = f3();
        let y2 = Laurent::from_poly(&Poly::from_ints(&k, &[0, 0, 1]));
        let r = y2.sqrt().unwrap();
        assert_eq!(r.vinf(), Val::Finite(-1));
        assert!((0..60).all(|i| r.coeff(i) == Some(Fq::ZERO)));
        let s = Laurent::from_poly(&Poly::from_ints(&k, &[1, 0, 1]));
        let r = s.sqrt().unwrap();
        // Y + 2Y^-1 + Y^-3 + Y^-5
        let expected = series(&k, -1, &[1, 0, 2, 0, 1, 0, 1], 6);
        assert!(r.truncate(6).agrees_with(&expected));
        assert_eq!(
            r.truncate(6).to_string(),
            "Y + 2*Y^-1 + Y^-3 + Y^-5 + O(Y^-6)"
        );
        // squaring the four-term truncation gives Y^2+1 up to O(Y^-6)
        let t = series(&k, -1, &[1, 0, 2, 0, 1, 0, 1], 6);
        let t_exact = Laurent::new(&k, -1, t.coeffs.clone(), None);
        let sq = (&t_exact * &t_exact).truncate(6);
        assert!(sq.agrees_with(&s.truncate(6)));
        assert_eq!(
            Laurent::from_poly(&Poly::y(&k)).sqrt().unwrap_err(),
            Error::OddValuation
        );
        assert_eq!(
            Laurent::from_poly(&Poly::from_ints(&k, &[0, 0, 2]))
                .sqrt()
                .unwrap_err(),
            Error::NonSquareLeadingCoeff
        );
    }

    #[test]
    fn sqrt_inverse_round_trip() {
        let k = f3();
        let r = Laurent::from_poly(&Poly::from_ints(&k, &[1, 0, 1]))
            .sqrt()
            .unwrap();
        let prod = &r * &r.inv().unwrap();
        assert!(prod.agrees_with(&Laurent::one(&k)));
        assert!(prod.prec().unwrap() >= DEFAULT_PRECISION as i64 - 2);
    }

    #[test]
    fn int_frac_examples() {
        let k = f3();
        let f = &Laurent::from_poly(&Poly::from_ints(&k, &[0, 0, 1]))
            + &Laurent::monomial(&k, Fq::ONE, 1);
        let (i, fr) = f.int_frac().unwrap();
        assert_eq!(i, Poly::from_ints(&k, &[0, 0, 1]));
        assert!(fr.agrees_with(&Laurent::monomial(&k, Fq::ONE, 1)));
        let r = Laurent::from_poly(&Poly::from_ints(&k, &[1, 0, 1]))
            .sqrt()
            .unwrap();
        let (i, fr) = r.int_frac().unwrap();
        assert_eq!(i, Poly::y(&k));
        assert_eq!(fr.vinf(), Val::Finite(1));
        assert_eq!(fr.coeff(1), Some(k.from_int(2)));
        let (i, fr) = Laurent::zero(&k).int_frac().unwrap();
        assert!(i.is_zero() && fr.is_zero());
        assert_eq!(
            series(&k, -2, &[1], 0).int_frac().unwrap_err(),
            Error::InsufficientPrecision
        );
        // (Y^3 + 1)/Y has polynomial part Y^2
        let g = &Laurent::from_poly(&Poly::from_ints(&k, &[1, 0, 0, 1]))
            * &Laurent::from_poly(&Poly::y(&k)).inv().unwrap();
        assert_eq!(g.int_frac().unwrap().0, Poly::from_ints(&k, &[0, 0, 1]));
    }

    #[test]
    fn seeded_valuation_laws() {
        for q in [3, 5] {
            let k = FieldCtx::prime(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..500 {
                let f = random_series(&k, &mut rng);
                let g = random_series(&k, &mut rng);
                let (Val::Finite(vf), Val::Finite(vg)) = (f.vinf(), g.vinf()) else {
                    unreachable!()
                };
                assert_eq!((&f * &g).vinf(), Val::Finite(vf + vg));
                let s = &f + &g;
                if vf != vg {
                    assert_eq!(s.vinf(), Val::Finite(vf.min(vg)));
                } else if let Val::Finite(vs) = s.vinf() {
                    assert!(vs >= vf);
                }
                let fi = f.inv().unwrap();
                assert!((&f * &fi).agrees_with(&Laurent::one(&k)));
                if vf % 2 == 0 && k.is_square(f.lc()) {
                    let r = f.sqrt().unwrap();
                    assert!((&r * &r).agrees_with(&f));
                }
                match f.int_frac() {
                    Ok((i, fr)) => {
                        assert!((&Laurent::from_poly(&i) + &fr).agrees_with(&f));
                        assert!(fr.vinf() >= Val::Finite(1));
                    }
                    Err(e) => {
                        assert_eq!(e, Error::InsufficientPrecision);
                        assert!(f.prec().unwrap() < 1);
                    }
                }
            }
        }
    }
}
