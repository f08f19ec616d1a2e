//! The `relmix` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::combine::{tune, Bounds, CombineParams, TuneSettings};
use crate::error::{Error, Result};
use crate::eval::{load_test_set, spearman, write_curve_svg, write_scatter_svg, EvalReport, TestSet};
use crate::svr::{cross_validate, train_svr, FeatureRow};

use super::config::{load_config, save_config, RunConfig, SvrFeatures};
use super::pipeline::{
    build_index_from_dump, check_index_hash, load_index, save_index, Measure, Resources, CACHE_ENV,
};

#[derive(Parser, Debug)]
#[command(name = "relmix", version, about = "Word relatedness from ESA, WordNet and collocations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Overrides applied on top of `--config`.
#[derive(Args, Debug, Default)]
struct Common {
    /// Run configuration (key=value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    dump: Option<PathBuf>,
    /// POS sidecar for the pos-* modes.
    #[arg(long, global = true)]
    annotations: Option<PathBuf>,
    #[arg(long, global = true)]
    wordnet_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    ngrams_uni: Option<PathBuf>,
    #[arg(long, global = true)]
    ngrams_bi: Option<PathBuf>,
    #[arg(long, global = true)]
    testset: Option<PathBuf>,
    #[arg(long, global = true)]
    index: Option<PathBuf>,
    #[arg(long, global = true)]
    min_terms: Option<usize>,
    #[arg(long, global = true)]
    min_links: Option<u64>,
    /// stemmed, pos-noun or pos-all.
    #[arg(long, global = true)]
    mode: Option<String>,
    #[arg(long, global = true)]
    sentence_weight: Option<u32>,
    #[arg(long, global = true)]
    prune_sections: bool,
    #[arg(long, global = true)]
    min_year: Option<i32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Keep only the first occurrence of repeated test pairs.
    #[arg(long, global = true)]
    dedupe: bool,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Combination parameters file overriding the config values.
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Use an index built under different settings.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the ESA index from a dump.
    BuildIndex,
    /// Print index statistics.
    IndexStats,
    /// Score one word pair with every available component.
    Measure { w1: String, w2: String },
    /// Spearman rho of a measure on the test set, with stability and plots.
    Eval(MeasureArg),
    /// Tune the combination parameters on the test set.
    Tune {
        /// ew or ewc.
        #[arg(long, default_value = "ewc")]
        target: String,
        /// Start from the identity (all gates off) instead of the config.
        #[arg(long)]
        from_identity: bool,
    },
    /// Leave-one-out stability of each test pair.
    Stability {
        #[command(flatten)]
        measure: MeasureArg,
        /// Rows to print.
        #[arg(long, default_value_t = 40)]
        top: usize,
    },
    /// Rho after removing the lowest-scored pairs one by one.
    RemovalCurve(MeasureArg),
    /// Cross-validated SVR over per-pair features.
    SvrEval {
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long = "c")]
        c: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        folds: Option<usize>,
        /// components, ew-components or combined.
        #[arg(long)]
        svr_features: Option<String>,
    },
}

#[derive(Args, Debug)]
struct MeasureArg {
    /// esa, wnp, wup, lch, cxi, ew, ewc or gold.
    #[arg(long, default_value = "ewc")]
    measure: String,
    /// Drop pairs whose scoring fails instead of aborting.
    #[arg(long)]
    skip_failures: bool,
}

/// Runs the CLI; returns the process exit code. Usage errors give 2,
/// runtime errors 1 with a single `error: <kind>: <message>` line.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {}: {msg}", e.kind());
            1
        }
    }
}

fn resolve_config(c: &Common) -> Result<RunConfig> {
    let mut cfg = match &c.config {
        Some(p) => load_config(p)?,
        None => RunConfig::default(),
    };
    let paths = [
        ("dump", &c.dump),
        ("annotations", &c.annotations),
        ("wordnet_dir", &c.wordnet_dir),
        ("ngrams_uni", &c.ngrams_uni),
        ("ngrams_bi", &c.ngrams_bi),
        ("testset", &c.testset),
        ("index", &c.index),
        ("out_dir", &c.out_dir),
    ];
    for (key, value) in paths {
        if let Some(p) = value {
            cfg.set(key, &p.display().to_string())?;
        }
    }
    if let Some(v) = c.min_terms {
        cfg.filter.min_terms = v;
    }
    if let Some(v) = c.min_links {
        cfg.filter.min_links = v;
    }
    if let Some(v) = &c.mode {
        cfg.set("mode", v)?;
    }
    if let Some(v) = c.sentence_weight {
        cfg.set("sentence_weight", &v.to_string())?;
    }
    if let Some(v) = c.min_year {
        cfg.min_year = v;
    }
    if let Some(v) = c.seed {
        cfg.seed = v;
    }
    cfg.prune_sections |= c.prune_sections;
    cfg.dedupe |= c.dedupe;
    if let Some(p) = &c.params {
        let text = std::fs::read_to_string(p).map_err(|e| Error::file(p, e))?;
        cfg.combine = text.parse()?;
    }
    cfg.validate()?;
    cfg.check_paths()?;
    Ok(cfg)
}

fn out_dir(cfg: &RunConfig) -> Result<PathBuf> {
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("relmix-out"));
    std::fs::create_dir_all(&dir).map_err(|e| Error::file(&dir, e))?;
    Ok(dir)
}

fn index_path(cfg: &RunConfig) -> Result<PathBuf> {
    match &cfg.index {
        Some(p) => Ok(p.clone()),
        None => Ok(out_dir(cfg)?.join("index.relmix")),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::file(path, e))
}

fn finish(mut w: BufWriter<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::file(path, e))
}

fn hash_comment(cfg: &RunConfig) -> Vec<String> {
    vec![format!("config_hash={}", cfg.hash())]
}

fn test_set(cfg: &RunConfig, err: &mut dyn Write) -> Result<TestSet> {
    let path = cfg
        .testset
        .as_ref()
        .ok_or_else(|| Error::Invalid("no test set configured".into()))?;
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    let set = load_test_set(BufReader::new(file), &path.display().to_string())?;
    for (first, repeat) in &set.duplicates {
        let p = &set.pairs[*repeat];
        writeln!(err, "warning: pair {}/{} on row {} repeats row {}", p.w1, p.w2, repeat + 1, first + 1)?;
    }
    Ok(if cfg.dedupe { set.dedupe() } else { set })
}

fn resources(cfg: &RunConfig, measure: Measure, set: &TestSet, force: bool, err: &mut dyn Write) -> Result<Resources> {
    let res = Resources::for_measure(cfg, measure, &set.vocabulary())?;
    if let Some(ix) = &res.index {
        if check_index_hash(ix, cfg, force)? {
            writeln!(err, "warning: index was built under different settings (--force)")?;
        }
    }
    Ok(res)
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let force = cli.common.force;
    let mut cfg = resolve_config(&cli.common)?;
    match cli.command {
        Command::BuildIndex => {
            let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
            let (index, report) = build_index_from_dump(&cfg, cache.as_deref())?;
            let path = index_path(&cfg)?;
            save_index(&index, &path)?;
            writeln!(out, "index\t{}", path.display())?;
            writeln!(out, "config_hash\t{}", cfg.build_hash())?;
            writeln!(out, "pages read\t{}", report.pages_read)?;
            writeln!(out, "pages kept\t{}", report.pages_kept)?;
            if let Some(r) = report.redirects {
                writeln!(out, "redirects\t{r}")?;
            }
            if let Some(d) = report.markup_diagnostics {
                writeln!(out, "markup diagnostics\t{d}")?;
            }
            if report.unknown_pos_tags > 0 {
                writeln!(out, "unknown POS tags\t{}", report.unknown_pos_tags)?;
            }
            write!(out, "{}", index.stats().report())?;
        }
        Command::IndexStats => {
            let index = load_index(&index_path(&cfg)?)?;
            for (k, v) in index.metadata() {
                writeln!(out, "{k}\t{v}")?;
            }
            write!(out, "{}", index.stats().report())?;
        }
        Command::Measure { w1, w2 } => {
            let res = Resources::available(&cfg, &[w1.clone(), w2.clone()])?;
            if let Some(ix) = &res.index {
                if check_index_hash(ix, &cfg, force)? {
                    writeln!(err, "warning: index was built under different settings (--force)")?;
                }
            }
            let f = res.features(&w1, &w2)?;
            let p = &cfg.combine;
            if res.index.is_some() {
                writeln!(out, "esa\t{}", f.esa)?;
            }
            if res.wordnet.is_some() {
                writeln!(out, "wnp\t{}", f.wnp)?;
            }
            if res.ngrams.is_some() {
                writeln!(out, "cxi\t{}", f.cxi(p.xi))?;
            }
            if res.index.is_some() && res.wordnet.is_some() {
                writeln!(out, "ew\t{}", f.ew(p))?;
                if res.ngrams.is_some() {
                    writeln!(out, "ewc\t{}", f.ewc(p))?;
                }
            }
        }
        Command::Eval(m) => {
            let (report, measure) = evaluate(&cfg, &m, force, err)?;
            let dir = out_dir(&cfg)?;
            write_report_files(&cfg, &report, &dir, measure)?;
            writeln!(out, "measure\t{}", measure.name())?;
            writeln!(out, "pairs\t{}", report.pairs.len())?;
            writeln!(out, "skipped\t{}", report.skipped.len())?;
            writeln!(out, "rho\t{:.6}", report.rho)?;
            writeln!(out, "config_hash\t{}", cfg.hash())?;
        }
        Command::Stability { measure: m, top } => {
            let (report, _) = evaluate(&cfg, &m, force, err)?;
            let dir = out_dir(&cfg)?;
            let path = dir.join("stability.csv");
            let mut w = create(&path)?;
            report.write_stability_csv(&mut w, &hash_comment(&cfg))?;
            finish(w, &path)?;
            writeln!(out, "rho\t{:.6}", report.rho)?;
            for i in report.ranked_stability().into_iter().take(top) {
                let p = &report.pairs[i];
                writeln!(out, "{}/{}\t{:+.6}", p.w1, p.w2, report.stability[i])?;
            }
        }
        Command::RemovalCurve(m) => {
            let (report, _) = evaluate(&cfg, &m, force, err)?;
            let dir = out_dir(&cfg)?;
            let path = dir.join("removal_curve.csv");
            let mut w = create(&path)?;
            report.write_removal_csv(&mut w, &hash_comment(&cfg))?;
            finish(w, &path)?;
            for (k, rho) in &report.removal_curve {
                writeln!(out, "{k}\t{rho:.6}")?;
            }
        }
        Command::Tune { target, from_identity } => {
            let set = test_set(&cfg, err)?;
            let measure: Measure = target.parse()?;
            let bounds = match measure {
                Measure::Ew => Bounds::ew_only(),
                Measure::Ewc => Bounds::wide(),
                _ => return Err(Error::Invalid("tune target must be ew or ewc".into())),
            };
            let res = resources(&cfg, measure, &set, force, err)?;
            let feats = res.pair_features(&set.pairs)?;
            let golds = set.golds();
            let score = |p: &CombineParams| {
                let s: Vec<f64> = feats
                    .iter()
                    .map(|f| if measure == Measure::Ew { f.ew(p) } else { f.ewc(p) })
                    .collect();
                spearman(&s, &golds).unwrap_or(f64::NAN)
            };
            let mut initial = if from_identity { CombineParams::identity() } else { cfg.combine };
            if measure == Measure::Ew {
                initial.lambda_prime = 0.0;
                initial.xi = bounds.lower.xi;
            }
            let start = score(&initial);
            let settings = TuneSettings {
                restarts: cfg.tune_restarts,
                seed: cfg.seed,
                ..TuneSettings::default()
            };
            let result = tune(score, initial, &bounds, &settings)?;
            cfg.combine = result.params;
            let dir = out_dir(&cfg)?;
            let path = dir.join("params.txt");
            let mut w = create(&path)?;
            writeln!(w, "# config_hash={}", cfg.hash())?;
            writeln!(w, "# rho={}", result.score)?;
            write!(w, "{}", result.params)?;
            finish(w, &path)?;
            save_config(&cfg, &dir.join("run_config.txt"))?;
            writeln!(out, "rho_initial\t{start:.6}")?;
            writeln!(out, "rho_tuned\t{:.6}", result.score)?;
            writeln!(out, "evaluations\t{}", result.evaluations)?;
            write!(out, "{}", result.params)?;
        }
        Command::SvrEval {
            degree,
            c,
            epsilon,
            folds,
            svr_features,
        } => {
            if let Some(d) = degree {
                cfg.svr.degree = d;
            }
            if let Some(c) = c {
                cfg.svr.c = c;
            }
            if let Some(e) = epsilon {
                cfg.svr.epsilon = e;
            }
            if let Some(f) = folds {
                cfg.svr_folds = f;
            }
            if let Some(f) = svr_features {
                cfg.svr_features = f.parse()?;
            }
            cfg.validate()?;
            let set = test_set(&cfg, err)?;
            let needs = match cfg.svr_features {
                SvrFeatures::EwComponents => Measure::Ew,
                _ => Measure::Ewc,
            };
            let res = resources(&cfg, needs, &set, force, err)?;
            let feats = res.pair_features(&set.pairs)?;
            let rows: Vec<FeatureRow> = feats
                .iter()
                .zip(&set.pairs)
                .map(|(f, p)| {
                    let x = match cfg.svr_features {
                        SvrFeatures::Components => vec![f.esa, f.wnp, f.colloc_direct, f.colloc_inverse],
                        SvrFeatures::EwComponents => vec![f.esa, f.wnp],
                        SvrFeatures::Combined => vec![f.ewc(&cfg.combine)],
                    };
                    FeatureRow::new(x, p.gold)
                })
                .collect();
            let cv = cross_validate(&rows, &cfg.svr, cfg.svr_folds, cfg.seed)?;
            let model = train_svr(&rows, &cfg.svr)?;
            let dir = out_dir(&cfg)?;
            let path = dir.join("svr_predictions.csv");
            let mut w = create(&path)?;
            writeln!(w, "# config_hash={}", cfg.hash())?;
            writeln!(w, "w1,w2,gold,prediction,fold")?;
            for ((p, pred), fold) in set.pairs.iter().zip(&cv.predictions).zip(&cv.fold_of) {
                writeln!(w, "{},{},{},{pred},{fold}", p.w1, p.w2, p.gold)?;
            }
            finish(w, &path)?;
            let path = dir.join("svr_model.txt");
            let mut w = create(&path)?;
            writeln!(w, "# config_hash={}", cfg.hash())?;
            model.write(&mut w)?;
            finish(w, &path)?;
            save_config(&cfg, &dir.join("run_config.txt"))?;
            writeln!(out, "features\t{}", cfg.svr_features.as_str())?;
            writeln!(out, "folds\t{}", cfg.svr_folds)?;
            writeln!(out, "rho\t{:.6}", cv.rho)?;
        }
    }
    Ok(())
}

fn evaluate(cfg: &RunConfig, m: &MeasureArg, force: bool, err: &mut dyn Write) -> Result<(EvalReport, Measure)> {
    let measure: Measure = m.measure.parse()?;
    let set = test_set(cfg, err)?;
    let res = resources(cfg, measure, &set, force, err)?;
    let params = cfg.combine;
    let report = crate::eval::evaluate_measure(&set.pairs, |p| res.score(measure, p, &params), m.skip_failures)?;
    for (p, why) in &report.skipped {
        writeln!(err, "warning: skipped {}/{}: {why}", p.w1, p.w2)?;
    }
    Ok((report, measure))
}

fn write_report_files(cfg: &RunConfig, report: &EvalReport, dir: &Path, measure: Measure) -> Result<()> {
    let comments = hash_comment(cfg);
    let path = dir.join("stability.csv");
    let mut w = create(&path)?;
    report.write_stability_csv(&mut w, &comments)?;
    finish(w, &path)?;

    let path = dir.join("removal_curve.csv");
    let mut w = create(&path)?;
    report.write_removal_csv(&mut w, &comments)?;
    finish(w, &path)?;

    let path = dir.join("lowess.csv");
    let mut w = create(&path)?;
    report.write_lowess_csv(&mut w, &comments, cfg.lowess_span, cfg.lowess_iterations)?;
    finish(w, &path)?;

    let rows = report.lowess_points(cfg.lowess_span, cfg.lowess_iterations)?;
    let path = dir.join("scatter.svg");
    let mut w = create(&path)?;
    write_scatter_svg(&mut w, &rows, &format!("{} vs gold", measure.name()))?;
    finish(w, &path)?;

    let curve: Vec<(f64, f64)> = report
        .removal_curve
        .iter()
        .filter(|(_, r)| r.is_finite())
        .map(|(k, r)| (*k as f64, *r))
        .collect();
    let path = dir.join("removal_curve.svg");
    let mut w = create(&path)?;
    write_curve_svg(&mut w, &curve, "removal curve", "pairs removed", "rho")?;
    finish(w, &path)?;

    save_config(cfg, &dir.join("run_config.txt"))
}
