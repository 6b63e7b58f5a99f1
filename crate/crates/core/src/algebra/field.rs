//! The coefficient field F_q, q = p^e with p odd.
//!
//! Elements are plain codes ([`Fq`]); all arithmetic goes through the
//! shared [`FieldCtx`]. For e = 1 the code is the residue mod p. For e > 1
//! the code is the base-p encoding `d_0 + d_1 p + ... + d_{e-1} p^{e-1}` of
//! the residue `d_0 + d_1 t + ...` modulo the defining polynomial of t.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to a field context.
pub type Ctx = Arc<FieldCtx>;

/// An element of F_q, encoded as an integer in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// The integer code of this element.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    /// Monic defining polynomial over F_p in ascending order (length e + 1).
    modulus: Option<Vec<u32>>,
    /// A fixed quadratic non-residue, used by Tonelli-Shanks.
    non_residue: Fq,
}

/// Largest field order accepted; element codes must fit in `u32`.
const MAX_ORDER: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Ctx> {
        Self::make(p, 1, None)
    }

    /// Builds F_q for q = p^e. `modulus` lists the ascending F_p coefficients
    /// of a monic irreducible polynomial of degree e and must be present
    /// exactly when e > 1.
    pub fn make(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Ctx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if e == 0 || (e > 1) != modulus.is_some() {
            return Err(Error::ModulusMismatch);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(p))?;
        let modulus = match modulus {
            None => None,
            Some(m) => {
                let mut m: Vec<u32> = m.iter().map(|&c| (c % p) as u32).collect();
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::ReducibleModulus);
                }
                let base = Self::prime(p)?;
                if !super::Poly::from_codes(&base, &m).is_irreducible()? {
                    return Err(Error::ReducibleModulus);
                }
                Some(m)
            }
        };
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            non_residue: Fq::ZERO,
        };
        ctx.non_residue = (1..q as u32)
            .map(Fq)
            .find(|&x| !ctx.is_square(x))
            .expect("odd field order always has non-residues");
        Ok(Arc::new(ctx))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Element with the given code, reduced mod q.
    pub fn elem(&self, code: u64) -> Fq {
        Fq((code % self.q) as u32)
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u32).map(Fq)
    }

    fn digits(&self, x: Fq) -> Vec<u64> {
        let mut v = x.0 as u64;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> Fq {
        Fq(d.iter().rev().fold(0u64, |acc, &x| acc * self.p + x) as u32)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.e == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Fq(if s >= self.p { s - self.p } else { s } as u32);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if a.0 == 0 {
            return a;
        }
        if self.e == 1 {
            return Fq((self.p - a.0 as u64) as u32);
        }
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.undigits(&d)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        if self.e == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.p) as u32);
        }
        let m = self
            .modulus
            .as_ref()
            .expect("extension field has a modulus");
        let e = self.e as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce with the monic modulus: t^e = -sum m_i t^i
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let sub = c * m[i] as u64 % self.p;
                prod[k - e + i] = (prod[k - e + i] + self.p - sub) % self.p;
            }
        }
        prod.truncate(e);
        self.undigits(&prod)
    }

    pub fn pow(&self, mut a: Fq, mut n: u64) -> Fq {
        let mut acc = Fq::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        if self.e == 1 {
            // extended Euclid over the integers
            let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let t = r0 / r1;
                (r0, r1) = (r1, r0 - t * r1);
                (s0, s1) = (s1, s0 - t * s1);
            }
            return Some(self.from_int(s0));
        }
        Some(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: Fq) -> bool {
        a.is_zero() || self.pow(a, (self.q - 1) / 2) == Fq::ONE
    }

    /// The canonical square root: of the two roots `r`, `-r`, the one with
    /// the smaller code. `None` for non-squares.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return Some(Fq::ZERO);
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks with q - 1 = 2^s * t, t odd
        let mut s = 0u32;
        let mut t = self.q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let mut m = s;
        let mut c = self.pow(self.non_residue, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        while b != Fq::ONE {
            let mut i = 0;
            let mut b2 = b;
            while b2 != Fq::ONE {
                b2 = self.mul(b2, b2);
                i += 1;
            }
            let mut f = c;
            for _ in 0..(m - i - 1) {
                f = self.mul(f, f);
            }
            x = self.mul(x, f);
            c = self.mul(f, f);
            b = self.mul(b, c);
            m = i;
        }
        let y = self.neg(x);
        Some(x.min(y))
    }

    /// Frobenius root `a^(1/p)`.
    pub fn pth_root(&self, a: Fq) -> Fq {
        self.pow(a, self.q / self.p)
    }

    pub fn fmt_elem(&self, a: Fq) -> String {
        if self.e == 1 || (a.0 as u64) < self.p {
            return a.0.to_string();
        }
        let d = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        format!("({})", terms.join("+"))
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(FieldCtx::prime(2).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(FieldCtx::prime(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(
            FieldCtx::make(3, 2, None).unwrap_err(),
            Error::ModulusMismatch
        );
        // t^2 + 2 = (t+1)(t+2) over F_3
        assert_eq!(
            FieldCtx::make(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            Error::ReducibleModulus
        );
    }

    #[test]
    fn f9_context() {
        // t^2 + 1 has no root in F_3
        assert!((0..3u64).all(|t| (t * t + 1) % 3 != 0));
        let k = FieldCtx::make(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(k.q(), 9);
        let t = k.elem(3);
        assert_eq!(k.mul(t, t), k.from_int(-1));
    }

    fn check_axioms(k: &FieldCtx) {
        let els: Vec<Fq> = k.elements().collect();
        for &a in &els {
            assert_eq!(k.add(a, Fq::ZERO), a);
            assert_eq!(k.mul(a, Fq::ONE), a);
            assert_eq!(k.add(a, k.neg(a)), Fq::ZERO);
            if !a.is_zero() {
                assert_eq!(k.mul(a, k.inv(a).unwrap()), Fq::ONE);
            }
            for &b in &els {
                assert_eq!(k.add(a, b), k.add(b, a));
                assert_eq!(k.mul(a, b), k.mul(b, a));
                for &c in &els {
                    assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                    assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                    assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [3, 5, 7] {
            check_axioms(&FieldCtx::prime(p).unwrap());
        }
        check_axioms(&FieldCtx::make(3, 2, Some(&[1, 0, 1])).unwrap());
    }

    #[test]
    fn square_roots() {
        let k = FieldCtx::prime(3).unwrap();
        assert_eq!(k.sqrt(Fq::ZERO), Some(Fq::ZERO));
        assert_eq!(k.sqrt(Fq::ONE), Some(Fq::ONE));
        assert_eq!(k.sqrt(k.elem(2)), None);
        for k in [
            FieldCtx::prime(5).unwrap(),
            FieldCtx::prime(13).unwrap(),
            FieldCtx::prime(17).unwrap(),
            FieldCtx::make(3, 2, Some(&[1, 0, 1])).unwrap(),
            FieldCtx::make(5, 3, Some(&[1, 1, 0, 1])).unwrap(),
        ] {
            let squares: std::collections::HashSet<Fq> =
                k.elements().map(|x| k.mul(x, x)).collect();
            for a in k.elements() {
                match k.sqrt(a) {
                    Some(r) => {
                        assert_eq!(k.mul(r, r), a);
                        assert!(r <= k.neg(r));
                    }
                    None => assert!(!squares.contains(&a)),
                }
            }
        }
    }
}
