//! Quadratic irrationals `(A + B sqrt(S)) / C` over `K = F_q(Y)`, embedded
//! in `F_q((1/Y))`.
//!
//! `sqrt(S)` always denotes the Laurent branch with leading coefficient 1;
//! the Galois conjugate flips the sign of `B`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use crate::algebra::{Ctx, Fq, Poly, Val};
use crate::error::{Error, Result};
use crate::laurent::{sqrt_extend, Laurent};

/// A squarefree monic kernel `S` of even degree, together with a memo of
/// the relative coefficients of `sqrt(S)`. The memo only grows; readers
/// take a snapshot and never see a partially extended window.
pub struct Kernel {
    s: Poly,
    root: RwLock<Arc<Vec<Fq>>>,
}

impl Kernel {
    fn new(s: Poly) -> Arc<Kernel> {
        debug_assert!(s.is_monic() && s.deg().is_some_and(|d| d % 2 == 0 && d >= 2));
        Arc::new(Kernel {
            s,
            root: RwLock::new(Arc::new(vec![Fq::ONE])),
        })
    }

    pub fn s(&self) -> &Poly {
        &self.s
    }

    /// `deg S / 2`, the degree of `sqrt(S)`.
    pub fn half_deg(&self) -> usize {
        self.s.deg().expect("kernel is nonzero") / 2
    }

    /// At least `n` coefficients `d_0, d_1, ...` with
    /// `sqrt(S) = sum d_i Y^(g - i)`.
    pub fn root_coeffs(&self, n: usize) -> Arc<Vec<Fq>> {
        {
            let cur = self.root.read().expect("root memo lock");
            if cur.len() >= n {
                return Arc::clone(&cur);
            }
        }
        let mut guard = self.root.write().expect("root memo lock");
        if guard.len() < n {
            let mut ext: Vec<Fq> = guard.as_ref().clone();
            let rel: Vec<Fq> = self.s.coeffs().iter().rev().copied().collect();
            sqrt_extend(self.s.ctx(), &rel, &mut ext, n);
            *guard = Arc::new(ext);
        }
        Arc::clone(&guard)
    }

    /// Number of memoized coefficients.
    pub fn memo_len(&self) -> usize {
        self.root.read().expect("root memo lock").len()
    }

    /// `sqrt(S)` known below index `prec`.
    pub fn sqrt_series(&self, prec: i64) -> Laurent {
        let g = self.half_deg() as i64;
        let n = (prec + g).max(1) as usize;
        let d = self.root_coeffs(n);
        Laurent::new(self.s.ctx(), -g, d[..n].to_vec(), Some(prec.max(1 - g)))
    }

    /// The polynomial part `[B sqrt(S)]`, computed exactly.
    pub fn int_part_times(&self, b: &Poly) -> Poly {
        let k = b.ctx();
        let Some(db) = b.deg() else {
            return Poly::zero(k);
        };
        let g = self.half_deg();
        let d = self.root_coeffs(db + g + 1);
        // coefficient of Y^e: sum_j b_j d_{j + g - e}
        let top = db + g;
        let c = (0..=top)
            .map(|e| {
                let mut acc = Fq::ZERO;
                for (j, &bj) in b.coeffs().iter().enumerate() {
                    if bj.is_zero() || j + g < e {
                        continue;
                    }
                    acc = k.add(acc, k.mul(bj, d[j + g - e]));
                }
                acc
            })
            .collect();
        Poly::new(k, c)
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernel({})", self.s)
    }
}

/// An element `(a + b sqrt(S)) / c` of `K(sqrt(S))`, reduced so that
/// `gcd(a, b, c) = 1` and `c` is monic. `b` may vanish.
#[derive(Clone)]
pub struct QuadElem {
    a: Poly,
    b: Poly,
    c: Poly,
    kernel: Arc<Kernel>,
}

impl QuadElem {
    fn reduced(a: Poly, b: Poly, c: Poly, kernel: &Arc<Kernel>) -> QuadElem {
        debug_assert!(!c.is_zero());
        let g = a
            .gcd(&b)
            .map_or_else(|_| c.monic(), |g| g.gcd(&c).expect("c nonzero"));
        let (mut a, mut b, mut c) = if g.is_one() {
            (a, b, c)
        } else {
            (
                a.div_exact(&g).expect("gcd divides"),
                b.div_exact(&g).expect("gcd divides"),
                c.div_exact(&g).expect("gcd divides"),
            )
        };
        if !c.is_monic() {
            let inv = c.ctx().inv(c.lc()).expect("nonzero");
            a = a.scale(inv);
            b = b.scale(inv);
            c = c.scale(inv);
        }
        QuadElem {
            a,
            b,
            c,
            kernel: Arc::clone(kernel),
        }
    }

    pub fn from_poly(p: &Poly, kernel: &Arc<Kernel>) -> QuadElem {
        let k = p.ctx();
        QuadElem::reduced(p.clone(), Poly::zero(k), Poly::one(k), kernel)
    }

    /// The rational element `num / den`.
    pub fn ratio(num: &Poly, den: &Poly, kernel: &Arc<Kernel>) -> Result<QuadElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadElem::reduced(
            num.clone(),
            Poly::zero(num.ctx()),
            den.clone(),
            kernel,
        ))
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }
    pub fn b(&self) -> &Poly {
        &self.b
    }
    pub fn c(&self) -> &Poly {
        &self.c
    }
    pub fn kernel(&self) -> &Arc<Kernel> {
        &self.kernel
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check(&self, other: &QuadElem) -> Result<()> {
        if self.kernel.s != other.kernel.s {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &QuadElem) -> Result<QuadElem> {
        self.check(o)?;
        Ok(QuadElem::reduced(
            &self.a * &o.c + &o.a * &self.c,
            &self.b * &o.c + &o.b * &self.c,
            &self.c * &o.c,
            &self.kernel,
        ))
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            kernel: Arc::clone(&self.kernel),
        }
    }

    pub fn sub(&self, o: &QuadElem) -> Result<QuadElem> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QuadElem) -> Result<QuadElem> {
        self.check(o)?;
        let s = &self.kernel.s;
        Ok(QuadElem::reduced(
            &self.a * &o.a + &(&self.b * &o.b) * s,
            &self.a * &o.b + &self.b * &o.a,
            &self.c * &o.c,
            &self.kernel,
        ))
    }

    /// `a + b sqrt(S)` times `a - b sqrt(S)`, over `c^2`: the norm as
    /// `(numerator, denominator)` before reduction.
    fn norm_parts(&self) -> (Poly, Poly) {
        (
            &self.a * &self.a - &(&self.b * &self.b) * &self.kernel.s,
            &self.c * &self.c,
        )
    }

    pub fn inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // c / (a + b r) = c (a - b r) / (a^2 - b^2 S)
        let (n, _) = self.norm_parts();
        Ok(QuadElem::reduced(
            &self.c * &self.a,
            -(&self.c * &self.b),
            n,
            &self.kernel,
        ))
    }

    pub fn scale_poly(&self, p: &Poly) -> QuadElem {
        QuadElem::reduced(&self.a * p, &self.b * p, self.c.clone(), &self.kernel)
    }

    pub fn add_poly(&self, p: &Poly) -> QuadElem {
        QuadElem::reduced(
            &self.a + &(p * &self.c),
            self.b.clone(),
            self.c.clone(),
            &self.kernel,
        )
    }

    /// `[x]`, exact.
    pub fn integral_part(&self) -> Poly {
        let w = self.kernel.int_part_times(&self.b);
        (&self.a + &w).divmod(&self.c).expect("c nonzero").0
    }

    /// Laurent expansion known below index `prec`.
    pub fn to_laurent(&self, prec: i64) -> Laurent {
        let g = self.kernel.half_deg() as i64;
        let deg = |p: &Poly| p.deg().map_or(0, |d| d as i64);
        let (da, db, dc) = (deg(&self.a), deg(&self.b), deg(&self.c));
        let root = self.kernel.sqrt_series(prec + db - dc + 1);
        let num = &Laurent::from_poly(&self.a) + &(&Laurent::from_poly(&self.b) * &root);
        // v(num) >= -max(deg A, deg B + g)
        let n = (prec + da.max(db + g) + 1).max(1) as usize;
        let cinv = Laurent::from_poly(&self.c).inv_with(n).expect("c nonzero");
        let out = &num * &cinv;
        debug_assert!(out.prec().is_some_and(|p| p >= prec) || out.is_exact());
        out.truncate(prec)
    }
}

impl PartialEq for QuadElem {
    fn eq(&self, o: &QuadElem) -> bool {
        self.a == o.a && self.b == o.b && self.c == o.c && self.kernel.s == o.kernel.s
    }
}

impl Eq for QuadElem {}

/// A quadratic irrational in canonical form: `B != 0`, `S` monic
/// squarefree of even degree `>= 2`, `gcd(A, B, C) = 1`, `C` monic.
#[derive(Clone, PartialEq, Eq)]
pub struct Surd(QuadElem);

impl Surd {
    /// Normal form of `(a + b sqrt(d)) / c`. With `d = u S m^2`
    /// (`S` squarefree monic), `sqrt(d)` is read as `sqrt(u) m sqrt(S)` with
    /// the canonical root of `u`.
    pub fn canonicalize(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<Surd> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if b.is_zero() || d.is_zero() {
            return Err(Error::SquareDiscriminant);
        }
        let (s, m, u) = d.squarefree_split()?;
        let k = d.ctx();
        let root_u = k.sqrt(u);
        if s.is_constant() {
            return Err(match root_u {
                Some(_) => Error::SquareDiscriminant,
                None => Error::NotInLaurentField,
            });
        }
        let root_u = match root_u {
            Some(r) if s.deg().unwrap() % 2 == 0 => r,
            _ => return Err(Error::NotInLaurentField),
        };
        let kernel = Kernel::new(s);
        let b = (b * &m).scale(root_u);
        Ok(Surd(QuadElem::reduced(a.clone(), b, c.clone(), &kernel)))
    }

    /// `(a + b sqrt(S)) / c` over an existing kernel.
    pub fn with_kernel(a: &Poly, b: &Poly, c: &Poly, kernel: &Arc<Kernel>) -> Result<Surd> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if b.is_zero() {
            return Err(Error::SquareDiscriminant);
        }
        Ok(Surd(QuadElem::reduced(
            a.clone(),
            b.clone(),
            c.clone(),
            kernel,
        )))
    }

    /// Wraps a quadratic element known to be irrational.
    pub fn from_quad(x: QuadElem) -> Result<Surd> {
        if x.b.is_zero() {
            return Err(Error::SquareDiscriminant);
        }
        Ok(Surd(x))
    }

    /// Parses `A|B|C|S` where each part is a polynomial literal.
    pub fn parse(ctx: &Ctx, s: &str) -> Result<Surd> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "surd literal `{s}` needs four parts A|B|C|S"
            )));
        }
        let p = parts
            .iter()
            .map(|t| Poly::parse(ctx, t))
            .collect::<Result<Vec<_>>>()?;
        Surd::canonicalize(&p[0], &p[1], &p[2], &p[3])
    }

    pub fn to_literal(&self) -> String {
        format!(
            "{}|{}|{}|{}",
            self.0.a.to_literal(),
            self.0.b.to_literal(),
            self.0.c.to_literal(),
            self.0.kernel.s.to_literal()
        )
    }

    pub fn a(&self) -> &Poly {
        &self.0.a
    }
    pub fn b(&self) -> &Poly {
        &self.0.b
    }
    pub fn c(&self) -> &Poly {
        &self.0.c
    }
    pub fn s(&self) -> &Poly {
        &self.0.kernel.s
    }
    pub fn kernel(&self) -> &Arc<Kernel> {
        &self.0.kernel
    }
    pub fn ctx(&self) -> &Ctx {
        self.0.a.ctx()
    }
    pub fn as_quad(&self) -> &QuadElem {
        &self.0
    }

    pub fn conjugate(&self) -> Surd {
        Surd(QuadElem {
            a: self.0.a.clone(),
            b: -&self.0.b,
            c: self.0.c.clone(),
            kernel: Arc::clone(&self.0.kernel),
        })
    }

    /// `[f]`.
    pub fn integral_part(&self) -> Poly {
        self.0.integral_part()
    }

    /// `{f} = f - [f]`.
    pub fn fractional_part(&self) -> Surd {
        self.sub_poly(&self.integral_part())
    }

    pub fn add_poly(&self, p: &Poly) -> Surd {
        Surd(self.0.add_poly(p))
    }

    pub fn sub_poly(&self, p: &Poly) -> Surd {
        Surd(self.0.add_poly(&-p))
    }

    /// `p * f` for nonzero `p`.
    pub fn scale_poly(&self, p: &Poly) -> Result<Surd> {
        if p.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Surd(self.0.scale_poly(p)))
    }

    /// `f / p` for nonzero `p`.
    pub fn div_poly(&self, p: &Poly) -> Result<Surd> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let x = &self.0;
        Ok(Surd(QuadElem::reduced(
            x.a.clone(),
            x.b.clone(),
            &x.c * p,
            &x.kernel,
        )))
    }

    pub fn recip(&self) -> Surd {
        Surd(self.0.inv().expect("irrational elements are nonzero"))
    }

    pub fn to_laurent(&self, prec: i64) -> Laurent {
        self.0.to_laurent(prec)
    }

    /// `v_inf(f)`, found by expanding until a nonzero coefficient appears.
    pub fn vinf(&self) -> i64 {
        let mut prec = 8;
        loop {
            if let Val::Finite(v) = self.to_laurent(prec).vinf() {
                return v;
            }
            prec *= 2;
        }
    }

    /// `f` in the maximal ideal `M` (`v_inf >= 1`).
    pub fn is_in_m(&self) -> bool {
        self.integral_part().is_zero()
    }

    /// `f` outside the valuation ring `O` (`v_inf < 0`).
    pub fn is_in_co(&self) -> bool {
        !self.integral_part().is_constant()
    }

    /// `f` in `M` with conjugate outside `O`.
    pub fn is_reduced(&self) -> bool {
        self.is_in_m() && self.conjugate().is_in_co()
    }

    /// `f + f^sigma` and `f * f^sigma` as reduced fractions with monic
    /// denominators.
    pub fn trace_norm(&self) -> ((Poly, Poly), (Poly, Poly)) {
        let x = &self.0;
        let two = x.a.ctx().from_int(2);
        let tr = reduce_fraction(x.a.scale(two), x.c.clone());
        let (n, d) = x.norm_parts();
        (tr, reduce_fraction(n, d))
    }
}

fn reduce_fraction(n: Poly, d: Poly) -> (Poly, Poly) {
    let g = n.gcd(&d).expect("denominator nonzero");
    let (n, d) = (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap());
    let (d, u) = d.monic_with_unit();
    let inv = n.ctx().inv(u).unwrap();
    (n.scale(inv), d)
}

impl Hash for Surd {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.a.hash(state);
        self.0.b.hash(state);
        self.0.c.hash(state);
        self.0.kernel.s.hash(state);
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, o: &Surd) -> Ordering {
        (self.s(), self.c(), self.a(), self.b()).cmp(&(o.s(), o.c(), o.a(), o.b()))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c, s) = (self.a(), self.b(), self.c(), self.s());
        let root = if b.is_one() {
            format!("sqrt({s})")
        } else if b.is_constant() {
            format!("{b}*sqrt({s})")
        } else {
            format!("({b})*sqrt({s})")
        };
        let num = if a.is_zero() {
            root
        } else {
            format!("{a} + {root}")
        };
        if c.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({c})")
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

/// A 2x2 polynomial matrix acting by `z -> (a z + b) / (c z + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moebius {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl Moebius {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> Result<Moebius> {
        let m = Moebius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity(ctx: &Ctx) -> Moebius {
        Moebius {
            a: Poly::one(ctx),
            b: Poly::zero(ctx),
            c: Poly::zero(ctx),
            d: Poly::one(ctx),
        }
    }

    /// `z -> 1/z`.
    pub fn inversion(ctx: &Ctx) -> Moebius {
        Moebius {
            a: Poly::zero(ctx),
            b: Poly::one(ctx),
            c: Poly::one(ctx),
            d: Poly::zero(ctx),
        }
    }

    /// `z -> z + t`.
    pub fn translation(t: &Poly) -> Moebius {
        let k = t.ctx();
        Moebius {
            a: Poly::one(k),
            b: t.clone(),
            c: Poly::zero(k),
            d: Poly::one(k),
        }
    }

    /// `z -> (y1 / y2) z` as `diag(y1, y2)`.
    pub fn diagonal(y1: &Poly, y2: &Poly) -> Result<Moebius> {
        let k = y1.ctx();
        Moebius::new(y1.clone(), Poly::zero(k), Poly::zero(k), y2.clone())
    }

    pub fn det(&self) -> Poly {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Matrix product `self * other`, i.e. apply `other` first.
    pub fn compose(&self, o: &Moebius) -> Moebius {
        Moebius {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn apply(&self, f: &Surd) -> Result<Surd> {
        if self.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let x = &f.0;
        // (a x + b) / (c x + d) with x = (A + B r) / C:
        // numerator (aA + bC) + aB r, denominator (cA + dC) + cB r
        let n1 = &self.a * &x.a + &self.b * &x.c;
        let n2 = &self.a * &x.b;
        let m1 = &self.c * &x.a + &self.d * &x.c;
        let m2 = &self.c * &x.b;
        let s = &x.kernel.s;
        let den = &m1 * &m1 - &(&m2 * &m2) * s;
        let num_a = &n1 * &m1 - &(&n2 * &m2) * s;
        let num_b = &n2 * &m1 - &n1 * &m2;
        Surd::from_quad(QuadElem::reduced(num_a, num_b, den, &x.kernel))
    }
}
