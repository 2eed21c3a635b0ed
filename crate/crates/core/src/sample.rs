//! Seeded random sampling of group, algebra and dual elements.
//!
//! Traceless matrices have i.i.d. complex normal entries projected onto
//! trace zero; unimodular matrices are their exponentials; hermitian matrices
//! come from normal four-vectors through `h`.

use crate::spinor::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal<R: Rng>(r: &mut R) -> f64 {
    r.sample(StandardNormal)
}

pub fn cnormal<R: Rng>(r: &mut R) -> C64 {
    cplx(normal(r), normal(r))
}

pub fn traceless<R: Rng>(r: &mut R, scale: f64) -> M2 {
    let m = M2::new(cnormal(r), cnormal(r), cnormal(r), cnormal(r)).scale(scale);
    m - id2() * (m.trace() * 0.5)
}

pub fn four<R: Rng>(r: &mut R, scale: f64) -> FourVector {
    FourVector::new(normal(r), normal(r), normal(r), normal(r)).scale(scale)
}

pub fn herm<R: Rng>(r: &mut R, scale: f64) -> Herm2 {
    h_map(four(r, scale))
}

pub fn sl2<R: Rng>(r: &mut R, scale: f64) -> SL2 {
    let a = traceless(r, scale);
    alg_exp(
        &AlgElem {
            a,
            h: Herm2::zero(),
        },
        1.0,
    )
    .a
}

pub fn group<R: Rng>(r: &mut R, scale: f64) -> GroupElem {
    GroupElem {
        a: sl2(r, scale),
        h: herm(r, 1.0),
    }
}

pub fn alg<R: Rng>(r: &mut R, scale: f64) -> AlgElem {
    AlgElem {
        a: traceless(r, scale),
        h: herm(r, scale),
    }
}

pub fn coform<R: Rng>(r: &mut R, scale: f64) -> CoForm {
    CoForm {
        a: traceless(r, scale),
        k: herm(r, scale),
    }
}

pub fn spinor<R: Rng>(r: &mut R) -> V2 {
    V2::new(cnormal(r), cnormal(r))
}

pub fn unit3<R: Rng>(r: &mut R) -> Vec3 {
    loop {
        let v = [normal(r), normal(r), normal(r)];
        let n = norm3(&v);
        if n > 1e-3 {
            return scale3(1.0 / n, &v);
        }
    }
}

pub fn uniform<R: Rng>(r: &mut R, lo: f64, hi: f64) -> f64 {
    r.random_range(lo..hi)
}

pub fn sign<R: Rng>(r: &mut R) -> f64 {
    if r.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}
