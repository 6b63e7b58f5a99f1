//! Hecke neighbors and rays on quadratic irrationals, and the degree-escape
//! tables computed along them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Poly;
use crate::cfe::{cfe_period, cfe_reduce, DegreeStats};
use crate::error::{Error, Result};
use crate::surd::Surd;

fn check_irreducible(p: &Poly) -> Result<()> {
    match p.is_irreducible() {
        Ok(true) => Ok(()),
        _ => Err(Error::ReducibleP),
    }
}

/// All polynomials of degree `< n`, in lexicographic order of coefficients.
fn residues(p: &Poly) -> Vec<Poly> {
    let ctx = p.ctx();
    let n = p.deg().unwrap_or(0);
    let mut out = vec![Poly::zero(ctx)];
    for i in 0..n {
        let mut next = Vec::with_capacity(out.len() * ctx.q() as usize);
        for b in &out {
            for x in ctx.elements() {
                next.push(b + &Poly::monomial(ctx, x, i));
            }
        }
        out = next;
    }
    out
}

/// A move in the Hecke correspondence: `f -> P f` or `f -> (f + b) / P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeckeMove {
    Multiply,
    Divide(Poly),
}

impl HeckeMove {
    pub fn apply(&self, f: &Surd, p: &Poly) -> Result<Surd> {
        match self {
            HeckeMove::Multiply => f.scale_poly(p),
            HeckeMove::Divide(b) => f.add_poly(b).div_poly(p),
        }
    }

    /// The move that undoes `self` on the level of lattices.
    pub fn reverse(&self, p: &Poly) -> HeckeMove {
        match self {
            HeckeMove::Multiply => HeckeMove::Divide(Poly::zero(p.ctx())),
            HeckeMove::Divide(_) => HeckeMove::Multiply,
        }
    }
}

/// The `q^deg P + 1` moves out of any vertex.
pub fn hecke_moves(p: &Poly) -> Result<Vec<HeckeMove>> {
    check_irreducible(p)?;
    let mut moves = vec![HeckeMove::Multiply];
    moves.extend(residues(p).into_iter().map(HeckeMove::Divide));
    Ok(moves)
}

/// `{P f} u {(f + b) / P : deg b < deg P}`.
pub fn hecke_neighbors(f: &Surd, p: &Poly) -> Result<Vec<Surd>> {
    hecke_moves(p)?.iter().map(|m| m.apply(f, p)).collect()
}

/// Whether `f` and `g` lie in one orbit of `PGL_2(F_q[Y])`: the cycle of `g`
/// must meet the unit multiples of the cycle of `f`.
pub fn gamma_equivalent(f: &Surd, g: &Surd) -> Result<bool> {
    if f.s() != g.s() {
        return Ok(false);
    }
    let entry = cfe_reduce(g)?.1;
    let ctx = f.ctx();
    let cycle = cfe_period(f)?.cycle_points();
    for u in ctx.elements().filter(|u| !u.is_zero()) {
        let u = Poly::constant(ctx, u);
        for x in &cycle {
            if x.scale_poly(&u)? == entry {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `[f, P f, ..., P^n f]`, each replaced by the entry point of its cycle.
pub fn hecke_ray(f: &Surd, p: &Poly, n_max: usize) -> Result<Vec<Surd>> {
    check_irreducible(p)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut x = f.clone();
    for n in 0..=n_max {
        if n > 0 {
            x = x.scale_poly(p)?;
        }
        out.push(cfe_reduce(&x)?.1);
    }
    Ok(out)
}

/// Degree statistics of one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeRow {
    pub n: usize,
    pub ell: usize,
    pub sum_deg: usize,
    pub max_deg: usize,
    pub ratio_n: BigRational,
    pub lambda: usize,
    /// Supremum of the height along the periodic orbit, `max_deg`.
    pub height: usize,
    pub hist: BTreeMap<usize, usize>,
}

pub const CSV_HEADER: &str = "n,period_len,sum_deg,max_deg,ratio_N,lambda,height,hist";

impl HeckeRow {
    pub fn of_surd(n: usize, f: &Surd, big_n: u64) -> Result<HeckeRow> {
        let c = cfe_period(f)?;
        let stats = DegreeStats::of_cycle(&c.cycle);
        Ok(HeckeRow {
            n,
            ell: stats.ell,
            sum_deg: stats.sum_deg,
            max_deg: stats.max_deg,
            ratio_n: stats.escape_ratio(big_n),
            lambda: stats.lambda,
            height: stats.max_deg,
            hist: stats.histogram(),
        })
    }

    pub fn to_csv(&self) -> String {
        let hist: Vec<String> = self.hist.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        format!(
            "{},{},{},{},{}/{},{},{},{}",
            self.n,
            self.ell,
            self.sum_deg,
            self.max_deg,
            self.ratio_n.numer(),
            self.ratio_n.denom(),
            self.lambda,
            self.height,
            hist.join(";")
        )
    }
}

pub fn rows_to_csv(rows: &[HeckeRow]) -> String {
    let mut s = String::new();
    writeln!(s, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(s, "{}", r.to_csv()).unwrap();
    }
    s
}

/// One row per `P^n f`, `0 <= n <= n_max`; rows are computed in parallel.
pub fn escape_table(f: &Surd, p: &Poly, n_max: usize, big_n: u64) -> Result<Vec<HeckeRow>> {
    check_irreducible(p)?;
    let mut vertices = Vec::with_capacity(n_max + 1);
    let mut x = f.clone();
    for n in 0..=n_max {
        if n > 0 {
            x = x.scale_poly(p)?;
        }
        vertices.push(x.clone());
    }
    vertices
        .par_iter()
        .enumerate()
        .map(|(n, v)| HeckeRow::of_surd(n, v, big_n))
        .collect()
}

/// Branch selection for [`hecke_walk_explore`].
#[derive(Clone, Debug)]
pub enum Chooser {
    AlwaysMultiply,
    /// Uniform among non-backtracking moves, driven by a seeded ChaCha stream.
    Seeded(u64),
}

/// A non-backtracking walk of `depth` steps from `f`; one row per visited
/// vertex after the start.
pub fn hecke_walk_explore(
    f: &Surd,
    p: &Poly,
    depth: usize,
    chooser: &Chooser,
) -> Result<Vec<(Surd, HeckeRow)>> {
    let moves = hecke_moves(p)?;
    let mut rng = match chooser {
        Chooser::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        Chooser::AlwaysMultiply => None,
    };
    let mut out = Vec::with_capacity(depth);
    let mut x = f.clone();
    let mut banned: Option<HeckeMove> = None;
    for n in 1..=depth {
        let mv = match rng.as_mut() {
            None => HeckeMove::Multiply,
            Some(rng) => {
                let allowed: Vec<&HeckeMove> = moves
                    .iter()
                    .filter(|m| Some(*m) != banned.as_ref())
                    .collect();
                allowed[rng.gen_range(0..allowed.len())].clone()
            }
        };
        x = mv.apply(&x, p)?;
        banned = Some(mv.reverse(p));
        out.push((x.clone(), HeckeRow::of_surd(n, &x, 0)?));
    }
    Ok(out)
}

/// Checks that every neighbor `g` of `f` has a neighbor equivalent to `f`.
pub fn neighbor_symmetry(f: &Surd, p: &Poly) -> Result<bool> {
    for g in hecke_neighbors(f, p)? {
        let back = hecke_neighbors(&g, p)?;
        if back.contains(f) {
            continue;
        }
        let mut found = false;
        for h in &back {
            if gamma_equivalent(f, h)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
