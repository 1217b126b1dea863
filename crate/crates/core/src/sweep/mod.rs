//! Batch sweeps over symbol families, exponents and grid sizes.

mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalogue::ScalarFn;
use crate::error::{Error, Result};
use crate::estimate::{
    op_norm_infty_ascent, op_norm_infty_haagerup, op_norm_lower_bound,
    op_norm_lower_bound_amplified, op_norm_p2, NormEstimate, DEFAULT_TOLERANCE,
};
use crate::hms::{hms_delta_norm, hms_norm, hms_sobolev_norm, SobolevParams};
use crate::io::load_symbol;
use crate::lattice::{Lattice, Topology};
use crate::linalg::C64;
use crate::lp::psi0;
use crate::schatten::SchattenExponent;
use crate::symbol::{
    alpha_divided_difference, central_slope, corona_symbol, divided_difference, toeplitz_symbol,
    SymbolGrid,
};

pub use report::{emit_report, ReportFormat, CSV_COLUMNS};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `M(x, y) = m(x - y)` with `m` a catalogue function (`n = 1` or `2`, radial in 2D).
    ToeplitzHm,
    /// `(f(x) - f(y)) / (x - y)`, diagonal = symmetric difference quotient at spacing `h`.
    DividedDifference,
    /// `(f(x) - f(y)) / |x - y|^α`, diagonal 0.
    AlphaDivided,
    /// `ψ0(2^j (|x|² + |y|²)^{1/2})`.
    Corona,
    /// A symbol read from a `SYMG` binary or JSON file; sizes are ignored.
    CustomFile,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ToeplitzHm => "toeplitz_hm",
            Family::DividedDifference => "divided_difference",
            Family::AlphaDivided => "alpha_divided",
            Family::Corona => "corona",
            Family::CustomFile => "custom_file",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [
            Family::ToeplitzHm,
            Family::DividedDifference,
            Family::AlphaDivided,
            Family::Corona,
            Family::CustomFile,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::Format(format!("unknown family {s:?}")))
    }
}

/// A grid size `(N, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSize {
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    /// Matrix amplification level for finite `p` (1 = none).
    #[serde(default = "one")]
    pub amplification: usize,
    /// Bracket tolerance of the `p = ∞` factorization solver.
    #[serde(default = "default_tolerance")]
    pub haagerup_tolerance: f64,
    /// Point count above which `p = ∞` falls back to the ascent lower bound.
    #[serde(default = "default_haagerup_points")]
    pub haagerup_max_points: usize,
}

fn one() -> usize {
    1
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_haagerup_points() -> usize {
    65
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Hms,
    HmsDelta,
    HmsSobolev,
}

/// The symbol norm that divides the estimate in the `ratio` column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalizer {
    Hms,
    HmsDelta,
    HmsSobolev,
    /// Lipschitz constant of `f` (Hölder constant for `alpha_divided`).
    Lipschitz,
    /// No symbol norm: `ratio = estimate / (p²/(p-1))`.
    One,
}

impl Normalizer {
    pub fn name(self) -> &'static str {
        match self {
            Normalizer::Hms => "hms",
            Normalizer::HmsDelta => "hms_delta",
            Normalizer::HmsSobolev => "hms_sobolev",
            Normalizer::Lipschitz => "lipschitz",
            Normalizer::One => "one",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [
            Normalizer::Hms,
            Normalizer::HmsDelta,
            Normalizer::HmsSobolev,
            Normalizer::Lipschitz,
            Normalizer::One,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::Format(format!("unknown normalizer {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SobolevConfig {
    #[serde(default = "default_q")]
    pub q: f64,
    /// Defaults to `n/2 + 1/2`.
    #[serde(default)]
    pub sigma: Option<f64>,
    /// Inclusive dyadic scale range `[j_min, j_max]`.
    #[serde(default)]
    pub scales: [i32; 2],
}

fn default_q() -> f64 {
    2.0
}

impl Default for SobolevConfig {
    fn default() -> Self {
        SobolevConfig {
            q: 2.0,
            sigma: None,
            scales: [0, 0],
        }
    }
}

/// A sweep description, read from a single JSON document.
///
/// `family_params` keys: `f` (comma-separated catalogue names, one family
/// instance each; default `abs`), `alpha` (default `0.5`), `j` (corona scale,
/// default `0`), `dimension` (`1` or `2`, default `1`), `topology`
/// (`sampled_box`, `integer` or `cyclic`, default `sampled_box`), `path`
/// (for `custom_file`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    #[serde(default)]
    pub family_params: BTreeMap<String, String>,
    pub p_list: Vec<SchattenExponent>,
    pub sizes: Vec<GridSize>,
    pub estimator: EstimatorConfig,
    #[serde(default)]
    pub norms: Vec<NormKind>,
    #[serde(default)]
    pub sobolev: SobolevConfig,
    /// Defaults to `lipschitz` for the divided-difference families and `hms` otherwise.
    #[serde(default)]
    pub normalizer: Option<Normalizer>,
}

/// One family member: the resolved parameters that are recorded in each row.
#[derive(Clone, Debug, PartialEq)]
struct Instance {
    params: BTreeMap<String, String>,
    f: Option<ScalarFn>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_list.is_empty() {
            return Err(Error::InvalidArgument("p_list is empty".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::InvalidArgument("sizes is empty".into()));
        }
        if self.estimator.restarts == 0
            || self.estimator.iterations == 0
            || self.estimator.amplification == 0
        {
            return Err(Error::InvalidArgument(
                "estimator restarts, iterations and amplification must be positive".into(),
            ));
        }
        if self.estimator.haagerup_tolerance.is_nan() || self.estimator.haagerup_tolerance <= 0.0 {
            return Err(Error::InvalidArgument(
                "haagerup_tolerance must be positive".into(),
            ));
        }
        for s in &self.sizes {
            if !(s.h.is_finite() && s.h > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "grid spacing {} must be positive",
                    s.h
                )));
            }
        }
        if self.sobolev.scales[0] > self.sobolev.scales[1] {
            return Err(Error::InvalidArgument(
                "sobolev scales must satisfy j_min <= j_max".into(),
            ));
        }
        self.sobolev_params()?;
        for (k, v) in &self.family_params {
            if k.contains(['=', ';', ',']) || v.contains([';', '=']) {
                return Err(Error::InvalidArgument(format!(
                    "family parameter {k}={v} uses a reserved character"
                )));
            }
        }
        self.instances()?;
        Ok(())
    }

    fn param(&self, key: &str) -> Option<&str> {
        self.family_params.get(key).map(String::as_str)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.param(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                Error::InvalidArgument(format!("family parameter {key}={v} is malformed"))
            }),
        }
    }

    fn dimension(&self) -> Result<usize> {
        self.parsed("dimension", 1)
    }

    fn topology(&self) -> Result<Topology> {
        match self.param("topology").unwrap_or("sampled_box") {
            "sampled_box" => Ok(Topology::SampledBox),
            "integer" => Ok(Topology::Integer),
            "cyclic" => Ok(Topology::Cyclic),
            t => Err(Error::InvalidArgument(format!("unknown topology {t:?}"))),
        }
    }

    fn sobolev_params(&self) -> Result<SobolevParams> {
        let n = self.dimension()?;
        SobolevParams::new(
            self.sobolev.q,
            self.sobolev.sigma.unwrap_or(crate::hms::default_sigma(n)),
        )
    }

    fn normalizer(&self) -> Normalizer {
        self.normalizer.unwrap_or(match self.family {
            Family::DividedDifference | Family::AlphaDivided => Normalizer::Lipschitz,
            _ => Normalizer::Hms,
        })
    }

    fn instances(&self) -> Result<Vec<Instance>> {
        self.dimension()?;
        self.topology()?;
        let mut shared = BTreeMap::new();
        for key in ["dimension", "topology"] {
            if let Some(v) = self.param(key) {
                shared.insert(key.to_string(), v.to_string());
            }
        }
        match self.family {
            Family::CustomFile => {
                let path = self.param("path").ok_or_else(|| {
                    Error::InvalidArgument("custom_file needs family_params.path".into())
                })?;
                let mut params = BTreeMap::new();
                params.insert("path".to_string(), path.to_string());
                Ok(vec![Instance { params, f: None }])
            }
            Family::Corona => {
                let j: i32 = self.parsed("j", 0)?;
                let mut params = shared;
                params.insert("j".to_string(), j.to_string());
                Ok(vec![Instance { params, f: None }])
            }
            _ => {
                let names = self.param("f").unwrap_or("abs");
                let mut out = Vec::new();
                for name in names.split(',') {
                    let f: ScalarFn = name.parse()?;
                    let mut params = shared.clone();
                    params.insert("f".to_string(), f.name().to_string());
                    if self.family == Family::AlphaDivided {
                        let alpha: f64 = self.parsed("alpha", 0.5)?;
                        if !(alpha > 0.0 && alpha < 1.0) {
                            return Err(Error::InvalidArgument(format!(
                                "alpha {alpha} must lie in (0, 1)"
                            )));
                        }
                        params.insert("alpha".to_string(), alpha.to_string());
                    }
                    out.push(Instance { params, f: Some(f) });
                }
                Ok(out)
            }
        }
    }

    /// SHA-256 of the canonical JSON form of the config, hex encoded.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config JSON");
        hex::encode(Sha256::digest(&canonical))
    }
}

/// A symbol built from a config, with the instance parameters and size it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfiguredSymbol {
    pub params: BTreeMap<String, String>,
    pub size: GridSize,
    pub symbol: SymbolGrid,
}

impl ExperimentConfig {
    /// Every (family instance, size) symbol described by the config, in sweep order.
    pub fn symbols(&self) -> Result<Vec<ConfiguredSymbol>> {
        self.validate()?;
        let mut out = Vec::new();
        for inst in self.instances()? {
            for &size in &self.sizes {
                out.push(ConfiguredSymbol {
                    params: inst.params.clone(),
                    size,
                    symbol: build_symbol(self, &inst, size)?,
                });
            }
        }
        Ok(out)
    }
}

/// The regularity norms computed for a row.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NormTotals {
    pub hms: Option<f64>,
    pub hms_delta: Option<f64>,
    pub hms_sobolev: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub family: Family,
    pub params: BTreeMap<String, String>,
    pub p: SchattenExponent,
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
    pub norm_estimate: Option<NormEstimate>,
    pub hms: NormTotals,
    pub normalizer: Normalizer,
    pub normalizer_value: Option<f64>,
    /// `estimate / (p²/(p-1) · normalizer_value)`.
    pub ratio: Option<f64>,
    pub error: Option<String>,
    pub config_hash: String,
    pub version: String,
}

impl ReportRow {
    /// Recompute the ratio from the stored fields.
    pub fn recompute_ratio(&self) -> Option<f64> {
        ratio(
            self.norm_estimate.as_ref()?.value,
            self.p,
            self.normalizer_value?,
        )
    }
}

fn ratio(value: f64, p: SchattenExponent, normalizer: f64) -> Option<f64> {
    let c = p.theorem_constant()?;
    (normalizer > 0.0).then(|| value / (c * normalizer))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report JSON")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("report JSON: {e}")))
    }
}

fn build_lattice(config: &ExperimentConfig, size: GridSize) -> Result<Lattice> {
    let topology = config.topology()?;
    let h = if topology == Topology::SampledBox {
        size.h
    } else {
        1.0
    };
    if topology != Topology::SampledBox && size.h != 1.0 {
        return Err(Error::InvalidArgument(format!(
            "{topology:?} lattices need h = 1, got {}",
            size.h
        )));
    }
    Lattice::new(config.dimension()?, size.n, h, topology)
}

fn build_symbol(config: &ExperimentConfig, inst: &Instance, size: GridSize) -> Result<SymbolGrid> {
    if config.family == Family::CustomFile {
        return load_symbol(&PathBuf::from(&inst.params["path"]));
    }
    let lattice = build_lattice(config, size)?;
    let label = |m: SymbolGrid| {
        let tag: Vec<String> = inst
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        m.relabel(format!("{}[{}]", config.family.name(), tag.join(";")))
    };
    let f = inst.f;
    let eval = move |x: f64| f.expect("function family").eval(x);
    let m = match config.family {
        Family::ToeplitzHm => toeplitz_symbol(&lattice, |t| {
            C64::from(match t {
                [t] => eval(*t),
                _ => eval(t.iter().map(|v| v * v).sum::<f64>().sqrt()),
            })
        })?,
        Family::DividedDifference => {
            divided_difference(&lattice, eval, central_slope(eval, lattice.spacing()))?
        }
        Family::AlphaDivided => alpha_divided_difference(
            &lattice,
            eval,
            inst.params["alpha"].parse().expect("validated"),
        )?,
        Family::Corona => {
            corona_symbol(&lattice, psi0, inst.params["j"].parse().expect("validated"))?
        }
        Family::CustomFile => unreachable!(),
    };
    Ok(label(m))
}

fn estimate(
    config: &ExperimentConfig,
    m: &SymbolGrid,
    p: SchattenExponent,
) -> Result<NormEstimate> {
    let e = &config.estimator;
    match p {
        SchattenExponent::Finite(2.0) => Ok(op_norm_p2(m)),
        SchattenExponent::Infinity if m.len() <= e.haagerup_max_points => {
            Ok(op_norm_infty_haagerup(m, e.haagerup_tolerance)?.estimate)
        }
        SchattenExponent::Infinity => op_norm_infty_ascent(m, e.restarts, e.iterations, e.seed),
        _ if e.amplification > 1 => {
            op_norm_lower_bound_amplified(m, p, e.amplification, e.restarts, e.iterations, e.seed)
        }
        _ => op_norm_lower_bound(m, p, e.restarts, e.iterations, e.seed),
    }
}

fn symbol_norms(
    config: &ExperimentConfig,
    m: &SymbolGrid,
    normalizer: Normalizer,
) -> Result<NormTotals> {
    let mut want = config.norms.clone();
    match normalizer {
        Normalizer::Hms => want.push(NormKind::Hms),
        Normalizer::HmsDelta => want.push(NormKind::HmsDelta),
        Normalizer::HmsSobolev => want.push(NormKind::HmsSobolev),
        _ => {}
    }
    want.sort();
    want.dedup();
    let mut t = NormTotals::default();
    for k in want {
        match k {
            NormKind::Hms => t.hms = Some(hms_norm(m)?.total),
            NormKind::HmsDelta => t.hms_delta = Some(hms_delta_norm(m)?.total),
            NormKind::HmsSobolev => {
                let [lo, hi] = config.sobolev.scales;
                t.hms_sobolev = Some(hms_sobolev_norm(m, config.sobolev_params()?, lo..=hi)?);
            }
        }
    }
    Ok(t)
}

fn normalizer_value(
    config: &ExperimentConfig,
    inst: &Instance,
    norms: &NormTotals,
    normalizer: Normalizer,
) -> Option<f64> {
    match normalizer {
        Normalizer::Hms => norms.hms,
        Normalizer::HmsDelta => norms.hms_delta,
        Normalizer::HmsSobolev => norms.hms_sobolev,
        Normalizer::One => Some(1.0),
        Normalizer::Lipschitz => {
            let f = inst.f?;
            match config.family {
                Family::AlphaDivided => f.holder(inst.params["alpha"].parse().ok()?),
                _ => f.lipschitz(),
            }
        }
    }
}

/// Rows for one family instance at one size, in `p_list` order.
fn run_group(
    config: &ExperimentConfig,
    inst: &Instance,
    size: GridSize,
    hash: &str,
) -> Vec<ReportRow> {
    let normalizer = config.normalizer();
    let blank = |p: SchattenExponent| ReportRow {
        family: config.family,
        params: inst.params.clone(),
        p,
        n: size.n,
        h: size.h,
        norm_estimate: None,
        hms: NormTotals::default(),
        normalizer,
        normalizer_value: None,
        ratio: None,
        error: None,
        config_hash: hash.to_string(),
        version: VERSION.to_string(),
    };
    let prepared = build_symbol(config, inst, size)
        .and_then(|m| symbol_norms(config, &m, normalizer).map(|norms| (m, norms)));
    let (m, norms) = match prepared {
        Ok(v) => v,
        Err(e) => {
            return config
                .p_list
                .iter()
                .map(|&p| ReportRow {
                    error: Some(e.to_string()),
                    ..blank(p)
                })
                .collect()
        }
    };
    let nv = normalizer_value(config, inst, &norms, normalizer);
    config
        .p_list
        .par_iter()
        .map(|&p| {
            let mut row = blank(p);
            row.hms = norms;
            row.normalizer_value = nv;
            match estimate(config, &m, p) {
                Ok(est) => {
                    row.ratio = nv.and_then(|v| ratio(est.value, p, v));
                    row.norm_estimate = Some(est);
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}

/// One row per (family instance, size, p), in that nesting order.
///
/// Groups run in parallel on the current rayon pool; the output order and
/// every value are independent of the thread count.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let hash = config.hash();
    let instances = config.instances()?;
    let groups: Vec<(&Instance, GridSize)> = instances
        .iter()
        .flat_map(|i| config.sizes.iter().map(move |&s| (i, s)))
        .collect();
    let rows: Vec<Vec<ReportRow>> = groups
        .par_iter()
        .map(|(inst, size)| run_group(config, inst, *size, &hash))
        .collect();
    Ok(Report {
        rows: rows.into_iter().flatten().collect(),
    })
}

/// [`run_sweep`] on a dedicated pool with `threads` workers.
pub fn run_sweep_with_threads(config: &ExperimentConfig, threads: usize) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(config))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: &str, f: &str) -> ExperimentConfig {
        ExperimentConfig::from_json(&format!(
            r#"{{
                "family": "{family}",
                "family_params": {{"f": "{f}"}},
                "p_list": [1.5, 2, 4, "inf"],
                "sizes": [{{"N": 6, "h": 0.5}}, {{"N": 8, "h": 0.25}}],
                "estimator": {{"restarts": 3, "iterations": 30, "seed": 5}},
                "norms": ["hms"]
            }}"#
        ))
        .unwrap()
    }

    #[test]
    fn identity_divided_difference_is_one() {
        let r = run_sweep(&config("divided_difference", "identity")).unwrap();
        assert_eq!(r.rows.len(), 8);
        for row in &r.rows {
            assert!(row.error.is_none(), "{:?}", row.error);
            let est = row.norm_estimate.as_ref().unwrap();
            assert!(
                (est.value - 1.0).abs() <= 1e-9,
                "{} at p = {}",
                est.value,
                row.p
            );
            assert_eq!(row.normalizer, Normalizer::Lipschitz);
            if let Some(c) = row.p.theorem_constant() {
                assert!(row.ratio.unwrap() <= 1.0 / c + 1e-9);
            }
            assert_eq!(row.recompute_ratio(), row.ratio);
        }
    }

    #[test]
    fn rows_follow_config_order() {
        let c = config("toeplitz_hm", "sin,exp_neg_abs");
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.rows.len(), 2 * 2 * 4);
        let mut expected = Vec::new();
        for f in ["sin", "exp_neg_abs"] {
            for n in [6, 8] {
                for p in &c.p_list {
                    expected.push((f.to_string(), n, *p));
                }
            }
        }
        let got: Vec<_> = r
            .rows
            .iter()
            .map(|x| (x.params["f"].clone(), x.n, x.p))
            .collect();
        assert_eq!(got, expected);
        assert!(r
            .rows
            .iter()
            .all(|x| x.config_hash == c.hash() && x.version == VERSION));
    }

    #[test]
    fn validation() {
        let ok = config("divided_difference", "abs");
        let mut bad = ok.clone();
        bad.p_list.clear();
        assert!(matches!(run_sweep(&bad), Err(Error::InvalidArgument(_))));
        let mut bad = ok.clone();
        bad.sizes.clear();
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.family_params.insert("f".into(), "cosh".into());
        assert!(bad.validate().is_err());
        assert!(ExperimentConfig::from_json(
            r#"{"family": "corona", "p_list": [2], "sizes": [{"N": 4, "h": 1}]}"#
        )
        .is_err());
    }

    #[test]
    fn module_errors_stay_in_the_row() {
        let mut c = config("divided_difference", "abs");
        c.family_params.insert("topology".into(), "integer".into());
        c.sizes = vec![GridSize { n: 4, h: 0.5 }, GridSize { n: 4, h: 1.0 }];
        let r = run_sweep(&c).unwrap();
        assert!(r.rows[..4]
            .iter()
            .all(|x| x.error.is_some() && x.norm_estimate.is_none()));
        assert!(r.rows[4..].iter().all(|x| x.error.is_none()));
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = config("divided_difference", "abs");
        assert_eq!(a.hash(), a.clone().hash());
        assert_eq!(a.hash().len(), 64);
        let mut b = a.clone();
        b.estimator.seed += 1;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let c = config("alpha_divided", "sqrt_abs");
        let one = run_sweep_with_threads(&c, 1).unwrap().to_json();
        let four = run_sweep_with_threads(&c, 4).unwrap().to_json();
        assert_eq!(one, four);
    }
}
