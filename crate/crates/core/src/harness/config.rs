//! Flat `key=value` run configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::collocation::DEFAULT_MIN_YEAR;
use crate::combine::CombineParams;
use crate::corpus::{FilterCriteria, PruneSettings};
use crate::error::{Error, Result};
use crate::esa::{BuildSettings, Normalization, TfMode};
use crate::eval::{DEFAULT_ITERATIONS, DEFAULT_SPAN};
use crate::svr::{SvrParams, DEFAULT_SEED};
use crate::text::PipelineMode;

/// What the SVR consumes per pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SvrFeatures {
    /// `[esa, wnp, C_direct, C_inverse]`.
    #[default]
    Components,
    /// `[esa, wnp]`.
    EwComponents,
    /// The single combined EWC score.
    Combined,
}

impl SvrFeatures {
    pub fn as_str(self) -> &'static str {
        match self {
            SvrFeatures::Components => "components",
            SvrFeatures::EwComponents => "ew-components",
            SvrFeatures::Combined => "combined",
        }
    }
}

impl std::str::FromStr for SvrFeatures {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "components" => Ok(SvrFeatures::Components),
            "ew-components" => Ok(SvrFeatures::EwComponents),
            "combined" => Ok(SvrFeatures::Combined),
            _ => Err(Error::Invalid(format!("unknown SVR feature layout `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: PipelineMode,
    pub filter: FilterCriteria,
    /// 1 disables sentence weighting.
    pub sentence_weight: u32,
    pub prune_sections: bool,
    pub prune_threshold: f64,
    pub tf: TfMode,
    pub normalization: Normalization,
    pub top_k: Option<usize>,
    pub combine: CombineParams,
    pub min_year: i32,
    pub seed: u64,
    pub tune_restarts: usize,
    pub dedupe: bool,
    pub lowess_span: f64,
    pub lowess_iterations: usize,
    pub svr: SvrParams,
    pub svr_folds: usize,
    pub svr_features: SvrFeatures,
    pub dump: Option<PathBuf>,
    pub annotations: Option<PathBuf>,
    pub wordnet_dir: Option<PathBuf>,
    pub ngrams_uni: Option<PathBuf>,
    pub ngrams_bi: Option<PathBuf>,
    pub testset: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: PipelineMode::Stemmed,
            filter: FilterCriteria::ADAPTED_2011,
            sentence_weight: 1,
            prune_sections: false,
            prune_threshold: PruneSettings::default().threshold,
            tf: TfMode::Raw,
            normalization: Normalization::Concept,
            top_k: None,
            combine: CombineParams::default(),
            min_year: DEFAULT_MIN_YEAR,
            seed: DEFAULT_SEED,
            tune_restarts: 8,
            dedupe: false,
            lowess_span: DEFAULT_SPAN,
            lowess_iterations: DEFAULT_ITERATIONS,
            svr: SvrParams::default(),
            svr_folds: 10,
            svr_features: SvrFeatures::Components,
            dump: None,
            annotations: None,
            wordnet_dir: None,
            ngrams_uni: None,
            ngrams_bi: None,
            testset: None,
            index: None,
            out_dir: None,
        }
    }
}

/// Keys that change the index contents.
const BUILD_KEYS: &[&str] = &[
    "mode",
    "min_terms",
    "min_links",
    "sentence_weight",
    "prune_sections",
    "prune_threshold",
    "tf",
    "normalization",
    "top_k",
];

/// Paths that must exist when a config is loaded.
const INPUT_PATH_KEYS: &[&str] = &["dump", "annotations", "wordnet_dir", "ngrams_uni", "ngrams_bi", "testset"];

fn path_str(p: &Option<PathBuf>) -> String {
    p.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "on" | "yes" | "1" => Some(true),
        "false" | "off" | "no" | "0" => Some(false),
        _ => None,
    }
}

impl RunConfig {
    /// `(key, value)` in canonical order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let c = &self.combine;
        vec![
            ("mode", self.mode.as_str().to_string()),
            ("min_terms", self.filter.min_terms.to_string()),
            ("min_links", self.filter.min_links.to_string()),
            ("sentence_weight", self.sentence_weight.to_string()),
            ("prune_sections", self.prune_sections.to_string()),
            ("prune_threshold", self.prune_threshold.to_string()),
            ("tf", self.tf.as_str().to_string()),
            ("normalization", self.normalization.as_str().to_string()),
            ("top_k", self.top_k.map_or("off".to_string(), |k| k.to_string())),
            ("lambda", c.lambda.to_string()),
            ("m", c.m.to_string()),
            ("s", c.s.to_string()),
            ("lambda_prime", c.lambda_prime.to_string()),
            ("m_prime", c.m_prime.to_string()),
            ("s_prime", c.s_prime.to_string()),
            ("xi", c.xi.to_string()),
            ("min_year", self.min_year.to_string()),
            ("seed", self.seed.to_string()),
            ("tune_restarts", self.tune_restarts.to_string()),
            ("dedupe", self.dedupe.to_string()),
            ("lowess_span", self.lowess_span.to_string()),
            ("lowess_iterations", self.lowess_iterations.to_string()),
            ("svr_degree", self.svr.degree.to_string()),
            ("svr_c", self.svr.c.to_string()),
            ("svr_epsilon", self.svr.epsilon.to_string()),
            ("svr_folds", self.svr_folds.to_string()),
            ("svr_features", self.svr_features.as_str().to_string()),
            ("dump", path_str(&self.dump)),
            ("annotations", path_str(&self.annotations)),
            ("wordnet_dir", path_str(&self.wordnet_dir)),
            ("ngrams_uni", path_str(&self.ngrams_uni)),
            ("ngrams_bi", path_str(&self.ngrams_bi)),
            ("testset", path_str(&self.testset)),
            ("index", path_str(&self.index)),
            ("out_dir", path_str(&self.out_dir)),
        ]
    }

    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Invalid(format!("bad value `{value}` for `{key}`"));
        let num = |v: &str| v.parse::<f64>().map_err(|_| bad());
        let path = |v: &str| (!v.is_empty()).then(|| PathBuf::from(v));
        match key {
            "mode" => self.mode = value.parse()?,
            "min_terms" => self.filter.min_terms = value.parse().map_err(|_| bad())?,
            "min_links" => self.filter.min_links = value.parse().map_err(|_| bad())?,
            "sentence_weight" => {
                self.sentence_weight = value.parse().map_err(|_| bad())?;
                if self.sentence_weight == 0 {
                    return Err(bad());
                }
            }
            "prune_sections" => self.prune_sections = parse_bool(value).ok_or_else(bad)?,
            "prune_threshold" => self.prune_threshold = num(value)?,
            "tf" => self.tf = TfMode::parse(value)?,
            "normalization" => self.normalization = Normalization::parse(value)?,
            "top_k" => {
                self.top_k = match value {
                    "off" | "" => None,
                    v => Some(v.parse().map_err(|_| bad())?),
                }
            }
            "lambda" | "m" | "s" | "lambda_prime" | "m_prime" | "s_prime" | "xi" => {
                self.combine.set(key, num(value)?)?
            }
            "min_year" => self.min_year = value.parse().map_err(|_| bad())?,
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "tune_restarts" => self.tune_restarts = value.parse().map_err(|_| bad())?,
            "dedupe" => self.dedupe = parse_bool(value).ok_or_else(bad)?,
            "lowess_span" => self.lowess_span = num(value)?,
            "lowess_iterations" => self.lowess_iterations = value.parse().map_err(|_| bad())?,
            "svr_degree" => self.svr.degree = value.parse().map_err(|_| bad())?,
            "svr_c" => self.svr.c = num(value)?,
            "svr_epsilon" => self.svr.epsilon = num(value)?,
            "svr_folds" => self.svr_folds = value.parse().map_err(|_| bad())?,
            "svr_features" => self.svr_features = value.parse()?,
            "dump" => self.dump = path(value),
            "annotations" => self.annotations = path(value),
            "wordnet_dir" => self.wordnet_dir = path(value),
            "ngrams_uni" => self.ngrams_uni = path(value),
            "ngrams_bi" => self.ngrams_bi = path(value),
            "testset" => self.testset = path(value),
            "index" => self.index = path(value),
            "out_dir" => self.out_dir = path(value),
            _ => return Err(Error::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Parses config text without touching the file system.
    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(file, i + 1, "expected key=value"))?;
            let k = k.trim();
            if !seen.insert(k.to_string()) {
                return Err(Error::parse(file, i + 1, format!("key `{k}` given twice")));
            }
            cfg.set(k, v.trim()).map_err(|e| match e {
                Error::UnknownKey(_) => e,
                other => Error::parse(file, i + 1, other.to_string()),
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.combine.validate()?;
        if !(self.lowess_span > 0.0 && self.lowess_span <= 1.0) {
            return Err(Error::Invalid("lowess_span must lie in (0, 1]".into()));
        }
        if !(0.0..=1.0).contains(&self.prune_threshold) {
            return Err(Error::Invalid("prune_threshold must lie in [0, 1]".into()));
        }
        if self.svr.degree < 1 || !(self.svr.c > 0.0) || !(self.svr.epsilon >= 0.0) {
            return Err(Error::Invalid("SVR needs degree >= 1, C > 0, epsilon >= 0".into()));
        }
        if self.svr_folds < 2 {
            return Err(Error::Invalid("svr_folds must be at least 2".into()));
        }
        Ok(())
    }

    /// Every configured input path must exist.
    pub fn check_paths(&self) -> Result<()> {
        for (key, value) in self.entries() {
            if INPUT_PATH_KEYS.contains(&key) && !value.is_empty() && !Path::new(&value).exists() {
                return Err(Error::file(
                    &value,
                    std::io::Error::new(std::io::ErrorKind::NotFound, format!("`{key}` does not exist")),
                ));
            }
        }
        Ok(())
    }

    /// Hash of the full canonical text.
    pub fn hash(&self) -> String {
        hex_sha256(self.to_string().as_bytes())
    }

    /// Hash over the keys that determine index contents.
    pub fn build_hash(&self) -> String {
        let text: String = self
            .entries()
            .into_iter()
            .filter(|(k, _)| BUILD_KEYS.contains(k))
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        hex_sha256(text.as_bytes())
    }

    pub fn build_settings(&self) -> BuildSettings {
        BuildSettings {
            mode: self.mode,
            tf: self.tf,
            normalization: self.normalization,
            top_k: self.top_k,
        }
    }

    pub fn prune_settings(&self) -> Option<PruneSettings> {
        self.prune_sections.then(|| PruneSettings {
            threshold: self.prune_threshold,
            ..PruneSettings::default()
        })
    }
}

fn hex_sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.entries() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Reads and validates a config file; configured input paths must exist.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    let cfg = RunConfig::parse(&text, &path.display().to_string())?;
    cfg.check_paths()?;
    Ok(cfg)
}

pub fn save_config(cfg: &RunConfig, path: &Path) -> Result<()> {
    std::fs::write(path, cfg.to_string()).map_err(|e| Error::file(path, e))
}
