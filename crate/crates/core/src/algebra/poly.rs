//! Dense univariate polynomials over F_q.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Ctx, Fq};
use crate::error::{Error, Result};

/// Operands above this degree are multiplied with Karatsuba.
const KARATSUBA_DEGREE: usize = 64;

/// Degree with the sentinel `NegInfinity` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

/// The valuation `v_inf`, with `Infinity` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(i64),
    Infinity,
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinity => write!(f, "+inf"),
        }
    }
}

/// A polynomial in `F_q[Y]`, coefficients in ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly {
    ctx: Ctx,
    c: Vec<Fq>,
}

impl Poly {
    pub fn new(ctx: &Ctx, mut c: Vec<Fq>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly {
            ctx: Arc::clone(ctx),
            c,
        }
    }

    pub fn zero(ctx: &Ctx) -> Poly {
        Poly::new(ctx, Vec::new())
    }

    pub fn one(ctx: &Ctx) -> Poly {
        Poly::constant(ctx, Fq::ONE)
    }

    pub fn constant(ctx: &Ctx, a: Fq) -> Poly {
        Poly::new(ctx, vec![a])
    }

    /// `a * Y^n`.
    pub fn monomial(ctx: &Ctx, a: Fq, n: usize) -> Poly {
        let mut c = vec![Fq::ZERO; n + 1];
        c[n] = a;
        Poly::new(ctx, c)
    }

    /// The indeterminate `Y`.
    pub fn y(ctx: &Ctx) -> Poly {
        Poly::monomial(ctx, Fq::ONE, 1)
    }

    /// Ascending integer coefficients, reduced through the prime subfield.
    pub fn from_ints(ctx: &Ctx, c: &[i64]) -> Poly {
        Poly::new(ctx, c.iter().map(|&x| ctx.from_int(x)).collect())
    }

    pub(crate) fn from_codes(ctx: &Ctx, c: &[u32]) -> Poly {
        Poly::new(ctx, c.iter().map(|&x| ctx.elem(x as u64)).collect())
    }

    /// Parses a literal of comma-separated ascending coefficient codes,
    /// e.g. `1,0,1` for `Y^2+1`. Codes are reduced mod q.
    pub fn parse(ctx: &Ctx, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial literal".into()));
        }
        let c = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>()
                    .map(|n| ctx.elem(n.rem_euclid(ctx.q() as i64) as u64))
                    .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(ctx, c))
    }

    /// Inverse of [`Poly::parse`].
    pub fn to_literal(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.c
            .iter()
            .map(|x| x.code().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    /// Coefficient of `Y^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == Fq::ONE
    }

    /// True for zero and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.c.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a nonzero polynomial, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// `v_inf(P) = -deg P`.
    pub fn vinf(&self) -> Val {
        match self.deg() {
            None => Val::Infinity,
            Some(d) => Val::Finite(-(d as i64)),
        }
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Fq {
        self.c.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Fq::ONE
    }

    pub fn scale(&self, a: Fq) -> Poly {
        let k = &self.ctx;
        Poly::new(k, self.c.iter().map(|&x| k.mul(x, a)).collect())
    }

    /// Multiplication by `Y^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Fq::ZERO; n];
        c.extend_from_slice(&self.c);
        Poly::new(&self.ctx, c)
    }

    /// The monic associate together with the unit removed.
    pub fn monic_with_unit(&self) -> (Poly, Fq) {
        if self.is_zero() {
            return (self.clone(), Fq::ONE);
        }
        let u = self.lc();
        let inv = self.ctx.inv(u).expect("nonzero leading coefficient");
        (self.scale(inv), u)
    }

    pub fn monic(&self) -> Poly {
        self.monic_with_unit().0
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let k = &self.ctx;
        self.c
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &a| k.add(k.mul(acc, x), a))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let k = &self.ctx;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| k.mul(k.from_int((i as u64 % k.p()) as i64), a))
            .collect();
        Poly::new(k, c)
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = &self.ctx;
        if self.c.len() < b.c.len() {
            return Ok((Poly::zero(k), self.clone()));
        }
        let inv_lc = k.inv(b.lc()).expect("nonzero leading coefficient");
        let db = b.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![Fq::ZERO; self.c.len() - db];
        for i in (0..q.len()).rev() {
            let t = r[i + db];
            if t.is_zero() {
                continue;
            }
            let t = k.mul(t, inv_lc);
            q[i] = t;
            for (j, &bj) in b.c.iter().enumerate() {
                r[i + j] = k.sub(r[i + j], k.mul(t, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::new(k, q), Poly::new(k, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        self.divmod(b).map(|(_, r)| r)
    }

    /// Quotient when `b` divides `self`, `None` otherwise.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        match self.divmod(b) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Monic gcd.
    pub fn gcd(&self, b: &Poly) -> Result<Poly> {
        if self.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self^n mod m`.
    pub fn pow_mod(&self, mut n: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.ctx).rem(m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            n >>= 1;
            if n > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's irreducibility test over F_q.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.deg() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantInput),
        };
        if n == 1 {
            return Ok(true);
        }
        let q = self.ctx.q();
        let y = Poly::y(&self.ctx);
        // frob[i] = Y^(q^i) mod self
        let mut frob = vec![y.rem(self)?];
        for i in 1..=n {
            let next = frob[i - 1].pow_mod(q, self)?;
            frob.push(next);
        }
        if frob[n] != y.rem(self)? {
            return Ok(false);
        }
        for r in prime_divisors(n) {
            let h = &frob[n / r] - &y;
            if !self.gcd(&h)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Polynomial with every coefficient replaced by its p-th root and
    /// exponents divided by p. Requires all exponents divisible by p.
    fn pth_root(&self) -> Poly {
        let k = &self.ctx;
        let p = k.p() as usize;
        let c = self.c.iter().step_by(p).map(|&a| k.pth_root(a)).collect();
        Poly::new(k, c)
    }

    /// Squarefree factorization of a monic polynomial: pairwise coprime
    /// squarefree monic factors with their multiplicities.
    fn squarefree_factors(&self) -> Vec<(Poly, usize)> {
        let k = &self.ctx;
        let p = k.p() as usize;
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (f, m) in self.pth_root().squarefree_factors() {
                out.push((f, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d).expect("nonzero input");
        let mut w = self.div_exact(&c).expect("gcd divides");
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c).expect("w nonzero");
            let fac = w.div_exact(&y).expect("gcd divides");
            if !fac.is_one() {
                out.push((fac, i));
            }
            i += 1;
            c = c.div_exact(&y).expect("gcd divides");
            w = y;
        }
        if !c.is_one() {
            for (f, m) in c.pth_root().squarefree_factors() {
                out.push((f, m * p));
            }
        }
        out
    }

    /// Writes `self = u * S * m^2` with `S` monic squarefree, `m` monic and
    /// `u` a unit. Returns `(S, m, u)`.
    pub fn squarefree_split(&self) -> Result<(Poly, Poly, Fq)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (monic, u) = self.monic_with_unit();
        let mut s = Poly::one(&self.ctx);
        let mut m = Poly::one(&self.ctx);
        for (f, mult) in monic.squarefree_factors() {
            if mult % 2 == 1 {
                s = &s * &f;
            }
            m = &m * &f.pow((mult / 2) as u64);
        }
        Ok((s, m, u))
    }

    /// Strict total order: by degree, then coefficients from the top.
    fn cmp_coeffs(&self, other: &Poly) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.c == other.c
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        self.cmp_coeffs(other)
    }
}

fn add_slices(k: &Ctx, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = k.add(*o, s);
    }
    out
}

fn schoolbook(k: &Ctx, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fq::ZERO; a.len() + b.len() - 1];
    if k.is_prime_field() {
        // accumulate in u64 and reduce once per output coefficient
        let p = k.p();
        let bound = u64::MAX / ((p - 1) * (p - 1)).max(1);
        let mut acc = vec![0u64; out.len()];
        let mut pending = 0u64;
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if pending + 1 >= bound {
                acc.iter_mut().for_each(|v| *v %= p);
                pending = 0;
            }
            pending += 1;
            let xv = x.code() as u64;
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += xv * y.code() as u64;
            }
        }
        for (o, v) in out.iter_mut().zip(acc) {
            *o = k.elem(v % p);
        }
        return out;
    }
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    out
}

fn karatsuba(k: &Ctx, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.len().min(b.len()) <= KARATSUBA_DEGREE + 1 {
        return schoolbook(k, a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let z0 = karatsuba(k, a0, b0);
    let z2 = karatsuba(k, a1, b1);
    let z1 = karatsuba(k, &add_slices(k, a0, a1), &add_slices(k, b0, b1));
    let mut out = vec![Fq::ZERO; a.len() + b.len() - 1];
    for (i, &v) in z0.iter().enumerate() {
        out[i] = k.add(out[i], v);
    }
    for (i, &v) in z2.iter().enumerate() {
        out[i + 2 * half] = k.add(out[i + 2 * half], v);
    }
    for i in 0..z1.len() {
        let mid = k.sub(
            k.sub(z1[i], z0.get(i).copied().unwrap_or(Fq::ZERO)),
            z2.get(i).copied().unwrap_or(Fq::ZERO),
        );
        if !mid.is_zero() {
            out[i + half] = k.add(out[i + half], mid);
        }
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::new(&self.ctx, add_slices(&self.ctx, &self.c, &rhs.c))
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let k = &self.ctx;
        Poly::new(k, self.c.iter().map(|&x| k.neg(x)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::new(&self.ctx, karatsuba(&self.ctx, &self.c, &rhs.c))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let k = &self.ctx;
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "Y".to_string(),
                _ => format!("Y^{i}"),
            };
            match (a == Fq::ONE, i) {
                (_, 0) => write!(f, "{}", k.fmt_elem(a))?,
                (true, _) => write!(f, "{mono}")?,
                (false, _) => write!(f, "{}*{mono}", k.fmt_elem(a))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
