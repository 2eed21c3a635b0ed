//! Batch front-end: run configurations, field synthesis to CSV/JSON,
//! orbit classification and invariants of dual elements.

use crate::error::{Error, Result};
use crate::massive::*;
use crate::massless::*;
use crate::measure::*;
use crate::orbit::*;
use crate::photon::*;
use crate::quad::par_map;
use crate::spinor::*;
use crate::suite::demo_photon_field;
use crate::synth::PlaneWaveSum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::Write;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const BAD_INPUT: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    pub const QUADRATURE: i32 = 4;
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn input(e: impl std::fmt::Display) -> Self {
        Failure::new(exit::BAD_INPUT, e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ParticleSpec {
    Kg {
        m: f64,
        eta: f64,
    },
    Dirac {
        m: f64,
        eta: f64,
    },
    Massless {
        eta: f64,
        chi: f64,
        #[serde(rename = "T")]
        t: u32,
    },
    Photon {
        eta: f64,
        chi: f64,
    },
}

impl ParticleSpec {
    /// Field components per spacetime point.
    pub fn components(&self) -> usize {
        match self {
            ParticleSpec::Kg { .. } => 1,
            ParticleSpec::Dirac { .. } => 4,
            ParticleSpec::Massless { t, .. } => 1 << t,
            ParticleSpec::Photon { .. } => 3,
        }
    }

    pub fn default_profile(&self) -> Profile {
        let one = cplx(1.0, 0.0);
        match self {
            ParticleSpec::Kg { .. } => Profile::bump(ChartId::HM, &[0.3, -0.2, 0.1], 0.8, one),
            ParticleSpec::Dirac { .. } => {
                Profile::bump(ChartId::HM_P1_S, &[0.2, 0.0, 0.1, 0.3, -0.2], 0.7, one)
            }
            _ => Profile::bump(ChartId::CPLUS, &[0.2, 0.3, 1.0], 0.6, one),
        }
    }
}

/// Spacetime sampling box: `samples[i]` points from `origin[i]` to
/// `origin[i] + extent[i]` inclusive (a single sample sits at the origin).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub origin: [f64; 4],
    pub extent: [f64; 4],
    pub samples: [usize; 4],
}

impl GridSpec {
    pub fn len(&self) -> usize {
        self.samples.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point `i`, with x¹ varying fastest and x⁴ slowest.
    pub fn point(&self, mut i: usize) -> FourVector {
        let mut x = [0.0; 4];
        for d in 0..4 {
            let n = self.samples[d];
            let j = i % n;
            i /= n;
            x[d] = if n == 1 {
                self.origin[d]
            } else {
                self.origin[d] + self.extent[d] * j as f64 / (n - 1) as f64
            };
        }
        FourVector(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub particle: ParticleSpec,
    /// Momentum profile of the massive and massless fields.
    #[serde(default)]
    pub profile: Option<Profile>,
    /// Profiles of the four components of the photon's cone vector field.
    #[serde(default)]
    pub field_profiles: Option<[Profile; 4]>,
    pub grid: GridSpec,
    pub order: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            particle: ParticleSpec::Kg { m: 1.0, eta: 1.0 },
            profile: None,
            field_profiles: None,
            grid: GridSpec {
                origin: [-0.5, -0.5, -0.5, 0.0],
                extent: [1.0, 1.0, 1.0, 0.0],
                samples: [8, 8, 8, 1],
            },
            order: 16,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Default configuration overlaid with a JSON file's fields, then with
    /// flag overrides given as (dotted path, value) pairs.
    pub fn layered(
        file: Option<&str>,
        overrides: &[(&str, Value)],
    ) -> std::result::Result<Self, Failure> {
        let mut v = serde_json::to_value(RunConfig::default()).map_err(Failure::input)?;
        if let Some(text) = file {
            let f: Value = serde_json::from_str(text).map_err(Failure::input)?;
            merge(&mut v, f);
        }
        for (path, val) in overrides {
            set_path(&mut v, path, val.clone());
        }
        // Parameters a particle kind does not read are ignored, so every
        // kind can fall back on the same defaults.
        if let Some(p) = v.get_mut("particle").and_then(Value::as_object_mut) {
            for (k, d) in [("m", 1.0), ("eta", 1.0), ("chi", 1.0)] {
                p.entry(k).or_insert(json!(d));
            }
            p.entry("T").or_insert(json!(1));
        }
        let cfg: RunConfig = serde_json::from_value(v).map_err(Failure::input)?;
        cfg.validate().map_err(Failure::input)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        match self.particle {
            ParticleSpec::Kg { m, eta } | ParticleSpec::Dirac { m, eta } => {
                MassiveSpec::new(m, eta, 1)?;
            }
            ParticleSpec::Massless { eta, chi, t } => {
                MasslessSpec::new(eta, chi, t)?;
            }
            ParticleSpec::Photon { eta, chi } => {
                PhotonSpec::new(eta, chi)?;
            }
        }
        if self.grid.samples.contains(&0) {
            return Err(Error::Invalid(
                "every grid axis needs at least one sample".into(),
            ));
        }
        if self.order == 0 {
            return Err(Error::Invalid("quadrature order must be positive".into()));
        }
        match &self.field_profiles {
            Some(ps) if matches!(self.particle, ParticleSpec::Photon { .. }) => {
                ps.iter().try_for_each(Profile::validate)
            }
            _ => self.profile().validate(),
        }
    }

    pub fn profile(&self) -> Profile {
        self.profile
            .clone()
            .unwrap_or_else(|| self.particle.default_profile())
    }
}

/// Recursively overlays `top` on `base`.
fn merge(base: &mut Value, top: Value) {
    match (base, top) {
        (Value::Object(b), Value::Object(t)) => {
            for (k, v) in t {
                match b.get_mut(&k) {
                    Some(slot) if slot.is_object() && v.is_object() && k != "particle" => {
                        merge(slot, v)
                    }
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (b, t) => *b = t,
    }
}

fn set_path(v: &mut Value, path: &str, val: Value) {
    let mut cur = v;
    let parts: Vec<&str> = path.split('.').collect();
    for p in &parts[..parts.len() - 1] {
        if !cur.get(*p).is_some_and(Value::is_object) {
            cur[*p] = json!({});
        }
        cur = &mut cur[*p];
    }
    cur[parts[parts.len() - 1]] = val;
}

/// Synthesized field values on the sampling grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Synthesis {
    pub config: RunConfig,
    pub nodes: usize,
    pub points: Vec<FourVector>,
    /// `components` values per point.
    pub values: Vec<Vec<C64>>,
    pub components: usize,
}

fn photon_field(cfg: &RunConfig) -> Result<ConeVectorField> {
    match &cfg.field_profiles {
        Some(ps) => ConeVectorField::from_profiles(ps.clone()),
        None => demo_photon_field(),
    }
}

/// The plane-wave sum of the configured particle.
pub fn plane_wave_sum(cfg: &RunConfig) -> Result<PlaneWaveSum> {
    let prof = cfg.profile();
    match cfg.particle {
        ParticleSpec::Kg { m, eta } => {
            let grid = build_grid(&prof, cfg.order, Measure::Nu { m })?;
            kg_synth(&MassiveSpec::new(m, eta, 0)?, &prof, &grid)
        }
        ParticleSpec::Dirac { m, eta } => {
            let spec = MassiveSpec::new(m, eta, 1)?;
            let grid = build_grid(&prof, cfg.order, Measure::Mu { m })?;
            dirac_synth(&massive_section(&spec, &prof), &grid)
        }
        ParticleSpec::Massless { eta, chi, t } => {
            let spec = MasslessSpec::new(eta, chi, t)?;
            let grid = build_grid(&prof, cfg.order, Measure::Omega)?;
            penrose_synth(&spec, &massless_section(&spec, &prof), &grid)
        }
        ParticleSpec::Photon { eta, chi } => {
            let a = photon_field(cfg)?;
            photon_synth(&PhotonSpec::new(eta, chi)?, &a, &a.grid(cfg.order)?)
        }
    }
}

pub fn synthesize(cfg: &RunConfig) -> Result<Synthesis> {
    let sum = plane_wave_sum(cfg)?;
    if sum.nodes.is_empty() {
        return Err(Error::Quadrature(
            "no quadrature node meets the profile support".into(),
        ));
    }
    let points: Vec<FourVector> = (0..cfg.grid.len()).map(|i| cfg.grid.point(i)).collect();
    let photon = matches!(cfg.particle, ParticleSpec::Photon { .. });
    let values = par_map(points.len(), |i| {
        let v = sum.eval(points[i])?;
        // Symmetric 2×2 photon values: entries (1,1), (1,2), (2,2).
        Ok(if photon { vec![v[0], v[1], v[3]] } else { v })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Synthesis {
        config: cfg.clone(),
        nodes: sum.nodes.len(),
        points,
        values,
        components: cfg.particle.components(),
    })
}

/// Round-trip exact decimal form of a double (17 significant digits).
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn metadata(s: &Synthesis) -> Value {
    json!({
        "library": format!("gq {}", env!("CARGO_PKG_VERSION")),
        "particle": s.config.particle,
        "profile": match s.config.particle {
            ParticleSpec::Photon { .. } => json!(s.config.field_profiles),
            _ => json!(s.config.profile()),
        },
        "grid": s.config.grid,
        "quadrature": { "order": s.config.order, "nonzero_nodes": s.nodes },
        "seed": s.config.seed,
        "components": s.components,
    })
}

/// CSV with `#` metadata lines and columns x1,x2,x3,x4,component,re,im.
pub fn write_csv<W: Write>(s: &Synthesis, out: W) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(out);
    if let Value::Object(meta) = metadata(s) {
        for (k, v) in meta {
            writeln!(out, "# {k}: {v}")?;
        }
    }
    let io = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        k => std::io::Error::other(format!("{k:?}")),
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x1", "x2", "x3", "x4", "component", "re", "im"])
        .map_err(io)?;
    for (x, vals) in s.points.iter().zip(&s.values) {
        for (c, v) in vals.iter().enumerate() {
            let mut rec: Vec<String> = x.0.iter().map(|&t| num(t)).collect();
            rec.push(c.to_string());
            rec.push(num(v.re));
            rec.push(num(v.im));
            w.write_record(&rec).map_err(io)?;
        }
    }
    w.flush()
}

pub fn write_json<W: Write>(s: &Synthesis, mut out: W) -> std::io::Result<()> {
    let points: Vec<Value> = s
        .points
        .iter()
        .zip(&s.values)
        .map(|(x, v)| json!({ "x": x.0, "values": v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>() }))
        .collect();
    let doc = json!({ "metadata": metadata(s), "points": points });
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)
}

/// A dual element given either as the pair {a, k} of 2×2 complex matrices
/// (rows of [re, im] entries) or by its dynamical variables.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CoFormInput {
    Matrices {
        a: [[C64; 2]; 2],
        k: [[C64; 2]; 2],
    },
    DynVars {
        #[serde(rename = "P")]
        p: [f64; 4],
        l: [f64; 3],
        g: [f64; 3],
    },
}

impl CoFormInput {
    pub fn to_coform(&self) -> Result<CoForm> {
        match self {
            CoFormInput::Matrices { a, k } => {
                let m = |x: &[[C64; 2]; 2]| M2::new(x[0][0], x[0][1], x[1][0], x[1][1]);
                CoForm::new(m(a), m(k), &Tol::default())
            }
            CoFormInput::DynVars { p, l, g } => Ok(DynVars {
                p: FourVector(*p),
                l: *l,
                g: *g,
            }
            .to_coform()),
        }
    }
}

pub fn parse_coform(text: &str) -> std::result::Result<CoForm, Failure> {
    let input: CoFormInput = serde_json::from_str(text).map_err(Failure::input)?;
    input.to_coform().map_err(Failure::input)
}

fn matrix_json(m: &M2) -> Value {
    json!([
        [[m[(0, 0)].re, m[(0, 0)].im], [m[(0, 1)].re, m[(0, 1)].im]],
        [[m[(1, 0)].re, m[(1, 0)].im], [m[(1, 1)].re, m[(1, 1)].im]]
    ])
}

/// Dynamical variables, Pauli–Lubanski vector and the two Casimirs.
pub fn invariants_json(alpha: &CoForm) -> Value {
    let d = dyn_vars(alpha);
    let (p2, w2) = orbit_invariants(alpha);
    json!({
        "P": d.p.0,
        "l": d.l,
        "g": d.g,
        "W": pauli_lubanski(alpha).0,
        "mass_sq": p2,
        "w_sq": w2,
    })
}

pub fn classify_json(alpha: &CoForm) -> std::result::Result<Value, Failure> {
    let t = classify(alpha, DEFAULT_TOL).map_err(|e| match e {
        Error::Degenerate(_) | Error::Classification(_) => {
            Failure::new(exit::DEGENERATE, e.to_string())
        }
        e => Failure::input(e),
    })?;
    let rep = canonical_rep(&t).map_err(|e| Failure::new(exit::DEGENERATE, e.to_string()))?;
    let q = quantizability(&t);
    Ok(json!({
        "type": t.type_id,
        "invariants": invariants_json(alpha),
        "orbit": t,
        "canonical": { "a": matrix_json(&rep.alpha.a), "k": matrix_json(&rep.alpha.k), "conditions": rep.conditions },
        "quantizable": t.quantizable,
        "r_quantizable": t.r_quantizable,
        "quantizability": q,
    }))
}
