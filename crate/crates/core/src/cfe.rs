//! The Artin map `f -> {1/f}`, continued fraction expansions, exact period
//! detection, convergents and degree statistics.
//!
//! Expansions run on the integral recursion for `x = (P + r) / Q` with a
//! fixed `r = B' sqrt(S)` and `Q | r^2 - P^2`:
//!
//! ```text
//! a = (P + [r]) div Q,   P' = a Q - P,   Q' = (r^2 - P'^2) / Q
//! ```
//!
//! so every digit comes from one polynomial division and no series is
//! needed beyond `[r]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::surd::{Kernel, Moebius, Surd};

/// Default cap on the number of states visited by period detection.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// One state `(P + r) / Q` of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfeState {
    pub p: Poly,
    pub q: Poly,
}

/// The data shared by all states of one expansion: `r = rb sqrt(S)`,
/// `d = r^2` and `w = [r]`.
#[derive(Clone, Debug)]
pub struct Recursion {
    rb: Poly,
    d: Poly,
    w: Poly,
    kernel: Arc<Kernel>,
}

impl Recursion {
    /// Folds `f = (A + B sqrt(S)) / C` into the recursion. When `C` does not
    /// divide `B^2 S - A^2` numerator and denominator are multiplied by `C`.
    pub fn new(f: &Surd) -> (Recursion, CfeState) {
        let kernel = Arc::clone(f.kernel());
        let d = &(f.b() * f.b()) * f.s();
        let norm = &d - &(f.a() * f.a());
        let (rb, d, state) = if f.c().divides(&norm) {
            (
                f.b().clone(),
                d,
                CfeState {
                    p: f.a().clone(),
                    q: f.c().clone(),
                },
            )
        } else {
            let c2 = f.c() * f.c();
            (
                f.b() * f.c(),
                &d * &c2,
                CfeState {
                    p: f.a() * f.c(),
                    q: c2,
                },
            )
        };
        let w = kernel.int_part_times(&rb);
        (Recursion { rb, d, w, kernel }, state)
    }

    /// `(digit, next state)`.
    pub fn step(&self, x: &CfeState) -> (Poly, CfeState) {
        let a = (&x.p + &self.w)
            .divmod(&x.q)
            .expect("state denominator is nonzero")
            .0;
        let p = &(&a * &x.q) - &x.p;
        let q = (&self.d - &(&p * &p))
            .div_exact(&x.q)
            .expect("Q divides D - P^2 at every step");
        debug_assert!(!q.is_zero());
        (a, CfeState { p, q })
    }

    /// The surd `(P + r) / Q`.
    pub fn surd(&self, x: &CfeState) -> Surd {
        Surd::with_kernel(&x.p, &self.rb, &x.q, &self.kernel).expect("r is irrational")
    }

    /// `x - a` for the state `x` whose successor is `next`, i.e.
    /// `(r - P_next) / Q`.
    pub fn fractional(&self, x: &CfeState, next: &CfeState) -> Surd {
        Surd::with_kernel(&-&next.p, &self.rb, &x.q, &self.kernel).expect("r is irrational")
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }
}

/// One application of the Artin map on `f` in `M`: returns `[1/f]` and
/// `{1/f}`, computed with exact surd arithmetic.
pub fn artin_step(f: &Surd) -> Result<(Poly, Surd)> {
    if !f.is_in_m() {
        return Err(Error::NotInM);
    }
    let inv = f.recip();
    let digit = inv.integral_part();
    debug_assert!(!digit.is_constant());
    let next = inv.sub_poly(&digit);
    Ok((digit, next))
}

/// `[a_0; a_1, ..., a_n]`.
pub fn cfe_expand(f: &Surd, n: usize) -> Vec<Poly> {
    let (rec, mut x) = Recursion::new(f);
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let (a, next) = rec.step(&x);
        out.push(a);
        x = next;
    }
    out
}

/// An eventually periodic expansion. The cycle is the minimal period of the
/// Artin orbit of `{f}`: with `k` the number of Artin steps before `{f}`
/// enters its cycle, `preperiod = [a_0, ..., a_k]` and
/// `cycle = [a_{k+1}, ..., a_{k+ell}]`.
#[derive(Clone, Debug)]
pub struct PeriodicCfe {
    pub preperiod: Vec<Poly>,
    pub cycle: Vec<Poly>,
    /// `Psi^k({f})`, the first point of the cycle.
    pub cycle_entry: Surd,
    /// Artin steps from `{f}` to `cycle_entry`.
    pub k: usize,
    rec: Recursion,
    /// States `x_{k}, ..., x_{k+ell}`; point `j` of the cycle is
    /// `(r - P_{k+j+1}) / Q_{k+j}`.
    states: Vec<CfeState>,
}

impl PeriodicCfe {
    pub fn ell(&self) -> usize {
        self.cycle.len()
    }

    /// True when `{f}` itself lies on its cycle.
    pub fn is_purely_periodic(&self) -> bool {
        self.k == 0
    }

    /// The `ell` distinct points `Psi^(k+j)({f})`, `0 <= j < ell`.
    pub fn cycle_points(&self) -> Vec<Surd> {
        self.states
            .windows(2)
            .map(|w| self.rec.fractional(&w[0], &w[1]))
            .collect()
    }

    /// Rebuilds `f` from the digits alone: solves the fixed-point quadratic
    /// of the cycle, then applies the preperiod.
    pub fn reconstruct(&self) -> Result<Surd> {
        let ctx = self.cycle_entry.ctx();
        let recip_shift = |c: &Poly| Moebius {
            a: Poly::zero(ctx),
            b: Poly::one(ctx),
            c: Poly::one(ctx),
            d: c.clone(),
        };
        let h = self
            .cycle
            .iter()
            .fold(Moebius::identity(ctx), |m, c| m.compose(&recip_shift(c)));
        // gamma g^2 + (delta - alpha) g - beta = 0
        let disc = &(&h.d - &h.a) * &(&h.d - &h.a) + &(&h.b * &h.c).scale(ctx.from_int(4));
        let num = &h.a - &h.d;
        let den = h.c.scale(ctx.from_int(2));
        let g = [Poly::one(ctx), Poly::constant(ctx, ctx.from_int(-1))]
            .iter()
            .map(|sign| Surd::canonicalize(&num, sign, &den, &disc))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(Surd::is_in_m)
            .ok_or(Error::NotInM)?;
        let (a0, rest) = self.preperiod.split_first().expect("preperiod holds a_0");
        let m = rest
            .iter()
            .fold(Moebius::translation(a0), |m, c| m.compose(&recip_shift(c)));
        m.apply(&g)
    }
}

/// Detects the period of the Artin orbit of `{f}` with the default budget.
pub fn cfe_period(f: &Surd) -> Result<PeriodicCfe> {
    cfe_period_with_budget(f, DEFAULT_BUDGET)
}

pub fn cfe_period_with_budget(f: &Surd, budget: usize) -> Result<PeriodicCfe> {
    let (rec, x0) = Recursion::new(f);
    let mut digits = Vec::new();
    let mut states = vec![x0];
    let mut seen: HashMap<CfeState, usize> = HashMap::new();
    let (j, m) = loop {
        let (a, next) = rec.step(states.last().unwrap());
        digits.push(a);
        let m = states.len();
        if let Some(&j) = seen.get(&next) {
            states.push(next);
            break (j, m);
        }
        if m > budget {
            return Err(Error::IterationBudgetExceeded(budget));
        }
        seen.insert(next.clone(), m);
        states.push(next);
    };
    // x_j = x_m with j >= 1; digits a_j..a_{m-1} repeat
    let state_cycle = &digits[j..m];
    let ell = minimal_period(state_cycle);
    let k = j - 1;
    let cycle = state_cycle[..ell].to_vec();
    let preperiod = digits[..j].to_vec();
    let states: Vec<CfeState> = states[k..=k + ell].to_vec();
    let cycle_entry = rec.fractional(&states[0], &states[1]);
    Ok(PeriodicCfe {
        preperiod,
        cycle,
        cycle_entry,
        k,
        rec,
        states,
    })
}

/// Smallest `l` dividing `s.len()` such that `s` is `l`-periodic.
fn minimal_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    (1..=n)
        .filter(|&l| n.is_multiple_of(l))
        .find(|&l| (l..n).all(|i| s[i] == s[i - l]))
        .unwrap_or(n)
}

/// `(k, g)` with `g = Psi^k({f})` the first point of `{f}`'s orbit lying on
/// its cycle.
pub fn cfe_reduce(f: &Surd) -> Result<(usize, Surd)> {
    let c = cfe_period(f)?;
    Ok((c.k, c.cycle_entry))
}

/// Convergents `p_i / q_i` for `0 <= i <= n`.
pub fn convergents(f: &Surd, n: usize) -> Vec<(Poly, Poly)> {
    convergents_of(&cfe_expand(f, n))
}

pub fn convergents_of(digits: &[Poly]) -> Vec<(Poly, Poly)> {
    let Some(first) = digits.first() else {
        return Vec::new();
    };
    let ctx = first.ctx();
    let (mut p0, mut q0) = (Poly::one(ctx), Poly::zero(ctx));
    let (mut p1, mut q1) = (first.clone(), Poly::one(ctx));
    let mut out = vec![(p1.clone(), q1.clone())];
    for a in &digits[1..] {
        let p2 = &(a * &p1) + &p0;
        let q2 = &(a * &q1) + &q0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        out.push((p1.clone(), q1.clone()));
    }
    out
}

/// `v_inf(f - p/q)`, evaluated through the Laurent embedding.
pub fn approximation_valuation(f: &Surd, p: &Poly, q: &Poly) -> Result<i64> {
    let a = &(f.a() * q) - &(p * f.c());
    let b = f.b() * q;
    let c = f.c() * q;
    Ok(Surd::with_kernel(&a, &b, &c, f.kernel())?.vinf())
}

/// Degree statistics of a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub ell: usize,
    pub degs: Vec<usize>,
    pub sum_deg: usize,
    pub max_deg: usize,
    /// `2 * sum_deg`, the length of the associated closed geodesic.
    pub lambda: usize,
}

impl DegreeStats {
    pub fn of_cycle(cycle: &[Poly]) -> DegreeStats {
        let degs: Vec<usize> = cycle
            .iter()
            .map(|a| a.deg().expect("cycle digits are nonzero"))
            .collect();
        let sum_deg = degs.iter().sum();
        DegreeStats {
            ell: degs.len(),
            max_deg: degs.iter().copied().max().unwrap_or(0),
            lambda: 2 * sum_deg,
            sum_deg,
            degs,
        }
    }

    /// `(max_deg - n) / sum_deg`.
    pub fn escape_ratio(&self, n: u64) -> BigRational {
        BigRational::new(
            BigInt::from(self.max_deg) - BigInt::from(n),
            BigInt::from(self.sum_deg),
        )
    }

    /// Degree histogram.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &d in &self.degs {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }
}

/// Degree statistics and the escape ratio `(max_i d_i - n) / sum_i d_i`.
pub fn degree_stats(c: &PeriodicCfe, n: u64) -> (DegreeStats, BigRational) {
    let stats = DegreeStats::of_cycle(&c.cycle);
    let ratio = stats.escape_ratio(n);
    (stats, ratio)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{Ctx, FieldCtx, Fq};

    fn f3() -> Ctx {
        FieldCtx::prime(3).unwrap()
    }

    fn p(k: &Ctx, c: &[i64]) -> Poly {
        Poly::from_ints(k, c)
    }

    fn fixed(k: &Ctx) -> Surd {
        Surd::parse(k, "0,2|1|1|1,0,1").unwrap()
    }

    fn random_surd(k: &Ctx, rng: &mut ChaCha8Rng, max_g: usize) -> Surd {
        loop {
            let g = rng.gen_range(1..=max_g);
            let mut sc: Vec<Fq> = (0..2 * g)
                .map(|_| k.elem(rng.gen_range(0..k.q())))
                .collect();
            sc.push(Fq::ONE);
            let s = Poly::new(k, sc);
            let rp = |rng: &mut ChaCha8Rng, d: usize| {
                let d = rng.gen_range(0..=d);
                Poly::new(
                    k,
                    (0..=d).map(|_| k.elem(rng.gen_range(0..k.q()))).collect(),
                )
            };
            let (a, b, c) = (rp(rng, 2), rp(rng, 1), rp(rng, 2));
            if let Ok(f) = Surd::canonicalize(&a, &b, &c, &s) {
                return f;
            }
        }
    }

    #[test]
    fn artin_step_examples() {
        let k = f3();
        let f = fixed(&k);
        let (a, next) = artin_step(&f).unwrap();
        assert_eq!(a, p(&k, &[0, 2]));
        assert_eq!(next, f);
        // g = sqrt(Y^2+1) - Y
        let g = Surd::parse(&k, "0,2|1|1|1,0,1").unwrap();
        let g2 = Surd::parse(&k, "0,-1|1|1|1,0,1").unwrap();
        assert_eq!(g, g2);
        assert_eq!(artin_step(&g2).unwrap(), (p(&k, &[0, 2]), g2.clone()));
        assert_eq!(artin_step(&f.conjugate()).unwrap_err(), Error::NotInM);
    }

    #[test]
    fn expansion_examples() {
        let k = f3();
        let y = Poly::y(&k);
        let y2 = p(&k, &[0, 2]);
        let r = Surd::parse(&k, "0|1|1|1,0,1").unwrap();
        assert_eq!(
            cfe_expand(&r, 3),
            vec![y.clone(), y2.clone(), y2.clone(), y2.clone()]
        );
        let fs = fixed(&k).conjugate();
        assert_eq!(cfe_expand(&fs, 3), vec![y.clone(); 4]);
        assert_eq!(
            cfe_expand(&fixed(&k), 3),
            vec![Poly::zero(&k), y2.clone(), y2.clone(), y2]
        );
    }

    #[test]
    fn period_examples() {
        let k = f3();
        let y = Poly::y(&k);
        let y2 = p(&k, &[0, 2]);
        let r = Surd::parse(&k, "0|1|1|1,0,1").unwrap();
        let c = cfe_period(&r).unwrap();
        assert_eq!(
            (c.preperiod.clone(), c.cycle.clone()),
            (vec![y.clone()], vec![y2.clone()])
        );
        let c = cfe_period(&fixed(&k).conjugate()).unwrap();
        assert_eq!(
            (c.preperiod.clone(), c.cycle.clone()),
            (vec![y.clone()], vec![y.clone()])
        );
        let c = cfe_period(&fixed(&k)).unwrap();
        assert_eq!(
            (c.preperiod.clone(), c.cycle.clone()),
            (vec![Poly::zero(&k)], vec![y2])
        );
    }

    #[test]
    fn reduce_examples() {
        let k = f3();
        let f = fixed(&k);
        assert_eq!(cfe_reduce(&f).unwrap(), (0, f.clone()));
        let fs = f.conjugate();
        assert_eq!(cfe_reduce(&fs).unwrap(), (0, fs.sub_poly(&Poly::y(&k))));
        let r = Surd::parse(&k, "0|1|1|1,0,1").unwrap();
        assert_eq!(cfe_reduce(&r).unwrap(), (0, r.sub_poly(&Poly::y(&k))));
    }

    #[test]
    fn convergent_examples() {
        let k = f3();
        let fs = fixed(&k).conjugate();
        let cv = convergents(&fs, 2);
        assert_eq!(cv[0], (Poly::y(&k), Poly::one(&k)));
        assert_eq!(cv[1], (p(&k, &[1, 0, 1]), Poly::y(&k)));
        assert_eq!(cv[2], (p(&k, &[0, 2, 0, 1]), p(&k, &[1, 0, 1])));
        assert_eq!(approximation_valuation(&fs, &cv[1].0, &cv[1].1).unwrap(), 3);
        let r = Surd::parse(&k, "1,1|2|1,1|1,1,1,0,1").unwrap();
        assert_eq!(convergents(&r, 0), vec![(r.integral_part(), Poly::one(&k))]);
    }

    #[test]
    fn degree_stats_examples() {
        let k = f3();
        let c = cfe_period(&fixed(&k)).unwrap();
        let (s, ratio) = degree_stats(&c, 0);
        assert_eq!(
            (s.ell, s.degs.clone(), s.sum_deg, s.max_deg, s.lambda),
            (1, vec![1], 1, 1, 2)
        );
        assert_eq!(ratio, BigRational::from_integer(1.into()));
        let cyc = [p(&k, &[0, 1]), p(&k, &[0, 0, 0, 1]), p(&k, &[1, 1])];
        let s = DegreeStats::of_cycle(&cyc);
        assert_eq!(s.escape_ratio(0), BigRational::new(3.into(), 5.into()));
        assert_eq!(s.escape_ratio(1), BigRational::new(2.into(), 5.into()));
        let c = cfe_period(&fixed(&k).conjugate()).unwrap();
        assert_eq!(degree_stats(&c, 0).1, BigRational::from_integer(1.into()));
    }

    #[test]
    fn seeded_periods_reconstruct_and_stay_valid() {
        for q in [3, 5] {
            let k = FieldCtx::prime(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..100 {
                let f = random_surd(&k, &mut rng, 3);
                let c = cfe_period(&f).unwrap();
                assert!(c.cycle.iter().all(|a| !a.is_constant()));
                assert!(c.preperiod[1..].iter().all(|a| !a.is_constant()));
                assert_eq!(minimal_period(&c.cycle), c.ell());
                assert_eq!(c.reconstruct().unwrap(), f, "reconstruction of {f}");
                // the entry re-expands to the cycle and is purely periodic
                let again = cfe_period(&c.cycle_entry).unwrap();
                assert_eq!(again.k, 0);
                assert_eq!(again.cycle, c.cycle);
                // digits agree with the plain expansion
                let n = c.preperiod.len() + 2 * c.ell();
                let digits = cfe_expand(&f, n);
                for (i, a) in digits.iter().enumerate().skip(c.preperiod.len()) {
                    assert_eq!(a, &c.cycle[(i - c.preperiod.len()) % c.ell()]);
                }
            }
        }
    }

    #[test]
    fn cycle_points_match_surd_artin_steps() {
        let k = FieldCtx::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..30 {
            let f = random_surd(&k, &mut rng, 2);
            let c = cfe_period(&f).unwrap();
            let pts = c.cycle_points();
            assert_eq!(pts[0], c.cycle_entry);
            let mut x = c.cycle_entry.clone();
            for (j, pt) in pts.iter().enumerate() {
                assert_eq!(&x, pt);
                let (a, next) = artin_step(&x).unwrap();
                assert_eq!(a, c.cycle[j]);
                x = next;
            }
            assert_eq!(x, c.cycle_entry);
            let mut distinct = pts.clone();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len(), c.ell());
        }
    }

    #[test]
    fn convergent_metric_identity() {
        for q in [3, 5] {
            let k = FieldCtx::prime(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(200 + q);
            for _ in 0..5 {
                let f = random_surd(&k, &mut rng, 2);
                let cv = convergents(&f, 21);
                for i in 0..20 {
                    let (pi, qi) = &cv[i];
                    assert!(pi.gcd(qi).unwrap().is_one());
                    let expected = (qi.deg().unwrap() + cv[i + 1].1.deg().unwrap()) as i64;
                    assert_eq!(approximation_valuation(&f, pi, qi).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let k = FieldCtx::prime(5).unwrap();
        let f = Surd::parse(&k, "0|1|1|1,2,3,0,1").unwrap();
        let c = cfe_period(&f).unwrap();
        if c.preperiod.len() + c.ell() > 2 {
            assert_eq!(
                cfe_period_with_budget(&f, 1).unwrap_err(),
                Error::IterationBudgetExceeded(1)
            );
        }
    }
}
