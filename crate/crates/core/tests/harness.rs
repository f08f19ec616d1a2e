use std::path::{Path, PathBuf};

use relmix::corpus::synthetic::{synthetic_word, SyntheticDump};
use relmix::harness::{build_index_from_dump, load_config, run_cli, save_config, RunConfig};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["relmix"];
    argv.extend_from_slice(args);
    let code = run_cli(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Workspace {
    _dir: tempfile::TempDir,
    root: PathBuf,
    dump: PathBuf,
    wordnet: PathBuf,
    uni: PathBuf,
    bi: PathBuf,
    testset: PathBuf,
}

/// Dump, WordNet, n-grams and a test set whose words all occur in the dump.
fn workspace() -> Workspace {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_path_buf();
    let dump = root.join("dump.xml");
    let gen = SyntheticDump {
        pages: 600,
        vocabulary: 800,
        ..SyntheticDump::default()
    };
    std::fs::write(&dump, gen.to_string()).unwrap();

    let w = |i| synthetic_word(i);
    let wordnet = root.join("wn");
    std::fs::create_dir(&wordnet).unwrap();
    let noun = format!(
        "  1 license text\n\
         00000001 03 n 01 entity 0 000 | root\n\
         00000002 03 n 01 {} 0 001 @ 00000001 n 0000 | a\n\
         00000003 03 n 01 {} 0 001 @ 00000002 n 0000 | b\n\
         00000004 03 n 01 {} 0 001 @ 00000002 n 0000 | c\n\
         00000005 03 n 01 {} 0 001 @ 00000001 n 0000 | d\n",
        w(3),
        w(4),
        w(5),
        w(6)
    );
    std::fs::write(wordnet.join("data.noun"), noun).unwrap();
    std::fs::write(wordnet.join("data.verb"), "").unwrap();

    let uni = root.join("uni.tsv");
    let bi = root.join("bi.tsv");
    let mut u = String::new();
    let mut b = String::new();
    for i in 0..12 {
        u.push_str(&format!("{}\t1999\t{}\t1\n", w(i), 100 + 10 * i));
        b.push_str(&format!("{} {}\t2001\t{}\t1\n", w(i), w(i + 1), 5 * i + 1));
    }
    std::fs::write(&uni, u).unwrap();
    std::fs::write(&bi, b).unwrap();

    let testset = root.join("pairs.tsv");
    let mut t = String::from("Word 1\tWord 2\tHuman (mean)\n");
    for i in 0..12 {
        t.push_str(&format!("{}\t{}\t{}\n", w(i), w(i + 1), (i * 7 % 10) as f64 + 0.5));
    }
    t.push_str(&format!("{}\t{}\t3.0\n", w(0), w(1)));
    std::fs::write(&testset, t).unwrap();
    Workspace {
        _dir: dir,
        root,
        dump,
        wordnet,
        uni,
        bi,
        testset,
    }
}

const LOW_FILTER: [&str; 4] = ["--min-terms", "20", "--min-links", "1"];

fn build(ws: &Workspace, index: &Path, extra: &[&str]) -> Run {
    let mut args = vec!["build-index", "--dump", s(&ws.dump), "--index", s(index)];
    args.extend_from_slice(&LOW_FILTER);
    args.extend_from_slice(extra);
    cli(&args)
}

#[test]
fn build_index_is_byte_identical_and_hash_checked() {
    let ws = workspace();
    let a = ws.root.join("a.idx");
    let b = ws.root.join("b.idx");
    let r = build(&ws, &a, &[]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("#concepts"));
    assert_eq!(build(&ws, &b, &[]).code, 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let out = ws.root.join("out");
    let base = ["--testset", s(&ws.testset), "--index", s(&a), "--out-dir", s(&out)];
    let mut args = vec!["eval", "--measure", "esa"];
    args.extend_from_slice(&base);
    args.extend_from_slice(&LOW_FILTER);
    let r = cli(&args);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.err.contains("repeats row"));
    for f in ["stability.csv", "removal_curve.csv", "lowess.csv", "scatter.svg", "removal_curve.svg"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let csv = std::fs::read_to_string(out.join("stability.csv")).unwrap();
    assert!(csv.starts_with("# config_hash="));

    // Different filter settings: refused unless forced.
    let mut args = vec!["eval", "--measure", "esa"];
    args.extend_from_slice(&base);
    let r = cli(&args);
    assert_eq!(r.code, 1);
    let errors: Vec<&str> = r.err.lines().filter(|l| l.starts_with("error:")).collect();
    assert_eq!(errors.len(), 1);
    assert!(errors[0].starts_with("error: hash-mismatch:"), "{}", r.err);
    args.push("--force");
    assert_eq!(cli(&args).code, 0);

    let r = cli(&["index-stats", "--index", s(&a)]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("config_hash\t"));
}

#[test]
fn gold_passthrough_gives_rho_one() {
    let ws = workspace();
    let out = ws.root.join("out");
    let r = cli(&["eval", "--measure", "gold", "--testset", s(&ws.testset), "--out-dir", s(&out), "--dedupe"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("rho\t1.000000"), "{}", r.out);
    assert!(r.out.contains("pairs\t12"));
}

#[test]
fn measure_reports_every_component() {
    let ws = workspace();
    let idx = ws.root.join("m.idx");
    assert_eq!(build(&ws, &idx, &[]).code, 0);
    let common = [
        "--index",
        s(&idx),
        "--wordnet-dir",
        s(&ws.wordnet),
        "--ngrams-uni",
        s(&ws.uni),
        "--ngrams-bi",
        s(&ws.bi),
        "--min-terms",
        "20",
        "--min-links",
        "1",
    ];
    let mut args = vec!["measure", "zzzqqq", "qqqzzz"];
    args.extend_from_slice(&common);
    let r = cli(&args);
    assert_eq!(r.code, 0, "{}", r.err);
    for key in ["esa", "wnp", "cxi", "ew", "ewc"] {
        assert!(r.out.contains(&format!("{key}\t0\n")), "{key}: {}", r.out);
    }

    let (a, b) = (synthetic_word(4), synthetic_word(5));
    let mut args = vec!["measure", a.as_str(), b.as_str()];
    args.extend_from_slice(&common);
    let r = cli(&args);
    assert_eq!(r.code, 0, "{}", r.err);
    let wnp: f64 = r.out.lines().find_map(|l| l.strip_prefix("wnp\t")).unwrap().parse().unwrap();
    assert!((wnp - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn usage_and_input_errors() {
    let r = cli(&["eval", "--no-such-flag"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("Usage"));
    let r = cli(&["build-index", "--dump", "/no/such/dump.xml"]);
    assert_eq!(r.code, 1);
    assert!(r.err.starts_with("error: io:"), "{}", r.err);
    assert_eq!(r.err.lines().count(), 1);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn tune_and_svr_runs_write_artifacts() {
    let ws = workspace();
    let idx = ws.root.join("t.idx");
    assert_eq!(build(&ws, &idx, &[]).code, 0);
    let out = ws.root.join("out");
    let common = [
        "--index",
        s(&idx),
        "--wordnet-dir",
        s(&ws.wordnet),
        "--ngrams-uni",
        s(&ws.uni),
        "--ngrams-bi",
        s(&ws.bi),
        "--testset",
        s(&ws.testset),
        "--out-dir",
        s(&out),
        "--min-terms",
        "20",
        "--min-links",
        "1",
        "--dedupe",
    ];
    let mut args = vec!["tune", "--from-identity"];
    args.extend_from_slice(&common);
    let r = cli(&args);
    assert_eq!(r.code, 0, "{}", r.err);
    let get = |out: &str, key: &str| -> f64 {
        out.lines().find_map(|l| l.strip_prefix(&format!("{key}\t"))).unwrap().parse().unwrap()
    };
    assert!(get(&r.out, "rho_tuned") >= get(&r.out, "rho_initial"));
    let params = out.join("params.txt");
    assert!(std::fs::read_to_string(&params).unwrap().starts_with("# config_hash="));

    let mut args = vec!["eval", "--measure", "ewc", "--params", s(&params)];
    args.extend_from_slice(&common);
    let r = cli(&args);
    assert_eq!(r.code, 0, "{}", r.err);

    let mut args = vec!["svr-eval", "--folds", "4", "--seed", "3"];
    args.extend_from_slice(&common);
    let first = cli(&args);
    assert_eq!(first.code, 0, "{}", first.err);
    let preds = std::fs::read_to_string(out.join("svr_predictions.csv")).unwrap();
    let second = cli(&args);
    assert_eq!(first.out, second.out);
    assert_eq!(preds, std::fs::read_to_string(out.join("svr_predictions.csv")).unwrap());
    let model = std::fs::read_to_string(out.join("svr_model.txt")).unwrap();
    assert!(model.starts_with("# config_hash="));
    relmix::svr::SvrModel::read(model.as_bytes(), "svr_model.txt").unwrap();
    let saved = load_config(&out.join("run_config.txt")).unwrap();
    assert_eq!(saved.svr_folds, 4);
}

#[test]
fn page_cache_reproduces_the_index() {
    let ws = workspace();
    let cache = ws.root.join("cache");
    let mut cfg = RunConfig::default();
    cfg.dump = Some(ws.dump.clone());
    cfg.filter.min_terms = 20;
    cfg.filter.min_links = 1;
    let (first, r1) = build_index_from_dump(&cfg, Some(&cache)).unwrap();
    let (second, r2) = build_index_from_dump(&cfg, Some(&cache)).unwrap();
    assert!(!r1.from_cache && r2.from_cache);
    assert_eq!(first, second);
    let (plain, _) = build_index_from_dump(&cfg, None).unwrap();
    assert_eq!(plain, first);

    let path = ws.root.join("run.cfg");
    save_config(&cfg, &path).unwrap();
    assert_eq!(load_config(&path).unwrap(), cfg);
}
