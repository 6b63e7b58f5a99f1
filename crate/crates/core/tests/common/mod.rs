#![allow(dead_code)]

use artin_cfe::cfe::cfe_reduce;
use artin_cfe::{Ctx, Fq, Poly, Surd};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn poly(k: &Ctx, c: &[i64]) -> Poly {
    Poly::from_ints(k, c)
}

pub fn random_poly(k: &Ctx, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::new(
        k,
        (0..=d).map(|_| k.elem(rng.gen_range(0..k.q()))).collect(),
    )
}

/// A surd whose kernel is a random monic polynomial of degree `deg_s`.
pub fn random_surd_with(k: &Ctx, rng: &mut ChaCha8Rng, deg_s: usize) -> Surd {
    loop {
        let mut sc: Vec<Fq> = (0..deg_s)
            .map(|_| k.elem(rng.gen_range(0..k.q())))
            .collect();
        sc.push(k.elem(1));
        let s = Poly::new(k, sc);
        let a = random_poly(k, rng, 2);
        let b = random_poly(k, rng, 1);
        let c = random_poly(k, rng, 2);
        if let Ok(f) = Surd::canonicalize(&a, &b, &c, &s) {
            if f.s().deg() == Some(deg_s) {
                return f;
            }
        }
    }
}

pub fn random_surd(k: &Ctx, rng: &mut ChaCha8Rng, max_deg_s: usize) -> Surd {
    let g = rng.gen_range(1..=max_deg_s / 2);
    random_surd_with(k, rng, 2 * g)
}

/// A reduced surd: the entry point of a random surd's Artin cycle.
pub fn random_reduced(k: &Ctx, rng: &mut ChaCha8Rng, max_deg_s: usize) -> Surd {
    cfe_reduce(&random_surd(k, rng, max_deg_s)).unwrap().1
}

/// Every polynomial of degree exactly `d`.
pub fn polys_of_degree(k: &Ctx, d: usize) -> Vec<Poly> {
    let q = k.q();
    let lead = (q - 1) * q.pow(d as u32);
    (0..lead)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(k.elem(idx % q));
                idx /= q;
            }
            c.push(k.elem(1 + idx));
            Poly::new(k, c)
        })
        .collect()
}
