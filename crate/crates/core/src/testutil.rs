//! Seeded generators shared by the unit tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Ctx, Fq, Poly};
use crate::cfe::cfe_reduce;
use crate::surd::Surd;

pub fn random_poly(k: &Ctx, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::new(
        k,
        (0..=d).map(|_| k.elem(rng.gen_range(0..k.q()))).collect(),
    )
}

/// A surd with monic kernel of degree `2g`, `1 <= g <= max_g`.
pub fn random_surd(k: &Ctx, rng: &mut ChaCha8Rng, max_g: usize) -> Surd {
    loop {
        let g = rng.gen_range(1..=max_g);
        let mut sc: Vec<Fq> = (0..2 * g)
            .map(|_| k.elem(rng.gen_range(0..k.q())))
            .collect();
        sc.push(Fq::ONE);
        let s = Poly::new(k, sc);
        let (a, b, c) = (
            random_poly(k, rng, 2),
            random_poly(k, rng, 1),
            random_poly(k, rng, 2),
        );
        if let Ok(f) = Surd::canonicalize(&a, &b, &c, &s) {
            return f;
        }
    }
}

/// A point on the Artin cycle of a random surd.
pub fn random_cycle_point(k: &Ctx, rng: &mut ChaCha8Rng, max_g: usize) -> Surd {
    cfe_reduce(&random_surd(k, rng, max_g)).unwrap().1
}
