//! Coadjoint orbit types, canonical representatives and quantizability.
//!
//! An orbit is labelled by the signs of |P| = det k and |W| = det h(W), by the
//! vanishing of P, W and det a, and (inside some types) by the time
//! orientation of P or W.

use crate::error::{Error, Result};
use crate::spinor::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Result of classifying a dual element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitType {
    pub type_id: u8,
    pub mass_sq: f64,
    pub w_sq: f64,
    /// W = sP (type 4 only).
    pub s: Option<f64>,
    /// sign(Tr P) when P is causal and nonzero (types 3, 4, 5).
    pub sign_tr_p: Option<f64>,
    /// sign(Tr W) when W is causal and nonzero (types 7, 9).
    pub sign_tr_w: Option<f64>,
    /// det a (types 1 and 2, where it is an invariant).
    pub det_a: Option<[f64; 2]>,
    pub quantizable: bool,
    pub r_quantizable: bool,
}

/// Where an orbit sits in the quantizability lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantizability {
    RQuantizable,
    /// Quantizable but not ℝ-quantizable, with the integer T of the list.
    Quantizable {
        t: u32,
    },
    /// Not in either list; nothing is inferred.
    NotListed,
}

impl Quantizability {
    pub fn flags(&self) -> (bool, bool) {
        match self {
            Quantizability::RQuantizable => (true, true),
            Quantizability::Quantizable { .. } => (true, false),
            Quantizability::NotListed => (false, false),
        }
    }
}

/// A canonical representative with the branch choices that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalRep {
    pub alpha: CoForm,
    pub conditions: Conditions,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Conditions {
    pub sign_tr_p: Option<f64>,
    pub sign_tr_w: Option<f64>,
    pub eta: Option<f64>,
}

fn is_zero(q: f64, scale: f64, deg: i32, tol: f64) -> bool {
    q.abs() <= tol * scale.powi(deg)
}

fn sign_of(x: f64, scale: f64, tol: f64, what: &str) -> Result<f64> {
    if is_zero(x, scale, 1, tol) {
        return Err(Error::Degenerate(format!("{what} has vanishing trace")));
    }
    Ok(x.signum())
}

/// Classifies `alpha` by the sign pattern of its invariants.
///
/// A quantity of polynomial degree d in α counts as zero when
/// `|q| ≤ tol·(1 + ‖α‖)^d`.
pub fn classify(alpha: &CoForm, tol: f64) -> Result<OrbitType> {
    let scale = 1.0 + alpha.norm();
    if alpha.norm() <= tol * scale {
        return Err(Error::Degenerate("form vanishes".into()));
    }
    let p = dyn_vars(alpha).p;
    let w = pauli_lubanski(alpha);
    let (p2, w2) = (p.square(), w.square());
    let p_zero = p.max_abs() <= tol * scale;
    let w_zero = w.max_abs() <= tol * scale * scale;
    let p2_zero = is_zero(p2, scale, 2, tol);
    let w2_zero = is_zero(w2, scale, 4, tol);
    let det_a = alpha.a.determinant();

    let mut t = OrbitType {
        type_id: 0,
        mass_sq: p2,
        w_sq: w2,
        s: None,
        sign_tr_p: None,
        sign_tr_w: None,
        det_a: None,
        quantizable: false,
        r_quantizable: false,
    };
    let fail = |why: &str| {
        Err(Error::Classification(format!(
            "{why} (|P|={p2:e}, |W|={w2:e})"
        )))
    };

    if p_zero {
        if !w_zero {
            return fail("P vanishes but W does not");
        }
        t.type_id = if is_zero(det_a.norm(), scale, 2, tol) {
            1
        } else {
            2
        };
        t.det_a = Some([det_a.re, det_a.im]);
    } else if p2_zero {
        t.sign_tr_p = Some(sign_of(p.x4(), scale, tol, "P")?);
        if w2_zero {
            t.type_id = 4;
            let pv = p.0;
            let num: f64 = (0..4).map(|i| w.0[i] * pv[i]).sum();
            let den: f64 = pv.iter().map(|x| x * x).sum();
            t.s = Some(num / den);
        } else if w2 < 0.0 {
            t.type_id = 3;
        } else {
            return fail("null P with timelike W");
        }
    } else if p2 > 0.0 {
        if !w2_zero && w2 > 0.0 {
            return fail("timelike P with timelike W");
        }
        t.type_id = 5;
        t.sign_tr_p = Some(sign_of(p.x4(), scale, tol, "P")?);
    } else if w_zero {
        t.type_id = 6;
    } else if w2_zero {
        t.type_id = 9;
        t.sign_tr_w = Some(sign_of(w.x4(), scale * scale, tol, "W")?);
    } else if w2 > 0.0 {
        t.type_id = 7;
        t.sign_tr_w = Some(sign_of(w.x4(), scale * scale, tol, "W")?);
    } else {
        t.type_id = 8;
    }
    let (q, rq) = quantizability(&t).flags();
    t.quantizable = q;
    t.r_quantizable = rq;
    Ok(t)
}

fn near_positive_integer(x: f64) -> Option<u32> {
    let n = x.round();
    if n >= 1.0 && (x - n).abs() <= 1e-9 * n.max(1.0) {
        Some(n as u32)
    } else {
        None
    }
}

/// Membership in the lists of ℝ-quantizable and quantizable orbits.
pub fn quantizability(t: &OrbitType) -> Quantizability {
    let abs_w_zero = t.w_sq.abs() <= 1e-9 * (1.0 + t.mass_sq.abs()).powi(2);
    match t.type_id {
        3 | 6 | 8 | 9 => Quantizability::RQuantizable,
        5 if abs_w_zero => Quantizability::RQuantizable,
        5 => {
            // {iT/8π σ₃, ...}: (1/2)√(−|W|/|P|) = T/8π.
            let r = (-t.w_sq / t.mass_sq).max(0.0).sqrt();
            near_positive_integer(4.0 * PI * r).map_or(Quantizability::NotListed, |t| {
                Quantizability::Quantizable { t }
            })
        }
        7 => {
            let r = (-t.w_sq / t.mass_sq).max(0.0).sqrt();
            near_positive_integer(4.0 * PI * r).map_or(Quantizability::NotListed, |t| {
                Quantizability::Quantizable { t }
            })
        }
        4 => match t.s {
            Some(s) => near_positive_integer(4.0 * PI * s.abs())
                .map_or(Quantizability::NotListed, |t| Quantizability::Quantizable {
                    t,
                }),
            None => Quantizability::NotListed,
        },
        2 => match t.det_a {
            // √(−det a) = iT/8π  ⇔  det a = (T/8π)².
            Some([re, im]) if re > 0.0 && im.abs() <= 1e-12 * re.max(1e-300) + 1e-15 => {
                near_positive_integer(8.0 * PI * re.sqrt()).map_or(Quantizability::NotListed, |t| {
                    Quantizability::Quantizable { t }
                })
            }
            _ => Quantizability::NotListed,
        },
        _ => Quantizability::NotListed,
    }
}

fn lower() -> M2 {
    M2::new(
        cplx(0.0, 0.0),
        cplx(0.0, 0.0),
        cplx(1.0, 0.0),
        cplx(0.0, 0.0),
    )
}

fn diag10() -> M2 {
    M2::new(
        cplx(1.0, 0.0),
        cplx(0.0, 0.0),
        cplx(0.0, 0.0),
        cplx(0.0, 0.0),
    )
}

fn need<T>(x: Option<T>, what: &'static str) -> Result<T> {
    x.ok_or(Error::MissingParameter(what))
}

/// Canonical representative of the orbit described by `t`.
pub fn canonical_rep(t: &OrbitType) -> Result<CanonicalRep> {
    let mut cond = Conditions::default();
    let s3 = sigma(3);
    let (a, k) = match t.type_id {
        1 => (lower(), M2::zeros()),
        2 => {
            let [re, im] = need(t.det_a, "det a")?;
            let mut r = (-cplx(re, im)).sqrt();
            // Im √(−det a) > 0, or √(−det a) real positive.
            if r.im < 0.0 || (r.im == 0.0 && r.re < 0.0) {
                r = -r;
            }
            (s3 * r, M2::zeros())
        }
        3 => {
            let sp = need(t.sign_tr_p, "sign(Tr P)")?;
            cond.sign_tr_p = Some(sp);
            (
                lower() * cplx((-t.w_sq).max(0.0).sqrt(), 0.0),
                diag10().scale(-sp),
            )
        }
        4 => {
            let sp = need(t.sign_tr_p, "sign(Tr P)")?;
            let s = need(t.s, "s")?;
            cond.sign_tr_p = Some(sp);
            (s3 * cplx(0.0, 0.5 * s), diag10().scale(-sp))
        }
        5 => {
            let sp = need(t.sign_tr_p, "sign(Tr P)")?;
            cond.sign_tr_p = Some(sp);
            if t.mass_sq <= 0.0 {
                return Err(Error::Invalid("type 5 needs |P| > 0".into()));
            }
            let r = (-t.w_sq / t.mass_sq).max(0.0).sqrt();
            (s3 * cplx(0.0, 0.5 * r), id2().scale(-sp * t.mass_sq.sqrt()))
        }
        6 | 7 | 8 | 9 => {
            if t.mass_sq >= 0.0 {
                return Err(Error::Invalid(format!("type {} needs |P| < 0", t.type_id)));
            }
            let c = (-t.mass_sq).sqrt();
            let k = s3.scale(c);
            let a = match t.type_id {
                6 => M2::zeros(),
                7 => {
                    let sw = need(t.sign_tr_w, "sign(Tr W)")?;
                    cond.sign_tr_w = Some(sw);
                    let r = (-t.w_sq / t.mass_sq).max(0.0).sqrt();
                    s3 * cplx(0.0, -0.5 * sw * r)
                }
                8 => lower() * cplx((t.w_sq / t.mass_sq).max(0.0).sqrt(), 0.0),
                _ => {
                    // Nilpotent a with null W; η = −sign(Tr W).
                    let eta = -need(t.sign_tr_w, "sign(Tr W)")?;
                    cond.eta = Some(eta);
                    s3 * cplx(0.0, eta) + sigma(1)
                }
            };
            (a, k)
        }
        n => return Err(Error::Invalid(format!("orbit type {n} is not in 1..=9"))),
    };
    Ok(CanonicalRep {
        alpha: CoForm {
            a,
            k: Herm2::project(k),
        },
        conditions: cond,
    })
}

/// Orbit descriptor for one table row built from particle-style parameters:
/// mass scale m, signs η and χ and the integer T.
pub fn row_type(type_id: u8, m: f64, eta: f64, chi: f64, t: u32) -> OrbitType {
    let tf = t as f64;
    let r = tf / (4.0 * PI);
    let mut o = OrbitType {
        type_id,
        mass_sq: 0.0,
        w_sq: 0.0,
        s: None,
        sign_tr_p: None,
        sign_tr_w: None,
        det_a: None,
        quantizable: false,
        r_quantizable: false,
    };
    match type_id {
        1 => o.det_a = Some([0.0, 0.0]),
        2 => o.det_a = Some([(tf / (8.0 * PI)).powi(2), 0.0]),
        3 => {
            o.w_sq = -(m * r).powi(2);
            o.sign_tr_p = Some(-eta);
        }
        4 => {
            o.s = Some(chi * r);
            o.sign_tr_p = Some(-eta);
        }
        5 => {
            o.mass_sq = m * m;
            o.w_sq = -(m * r).powi(2);
            o.sign_tr_p = Some(-eta);
        }
        6 => o.mass_sq = -m * m,
        7 => {
            o.mass_sq = -m * m;
            o.w_sq = (m * r).powi(2);
            o.sign_tr_w = Some(-chi);
        }
        8 => {
            o.mass_sq = -m * m;
            o.w_sq = -(m * r).powi(2);
        }
        9 => {
            o.mass_sq = -m * m;
            o.sign_tr_w = Some(-eta);
        }
        _ => {}
    }
    let (q, rq) = quantizability(&o).flags();
    o.quantizable = q;
    o.r_quantizable = rq;
    o
}
