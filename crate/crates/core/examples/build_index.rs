//! Generate a synthetic dump, ingest it, filter pages and write an index.
//!
//!     cargo run --release --example build_index -- 2000 /tmp/demo.relmix

use std::path::PathBuf;

use relmix::corpus::synthetic::SyntheticDump;
use relmix::harness::{build_index_from_dump, load_index, save_index, RunConfig};

fn main() -> relmix::Result<()> {
    let mut args = std::env::args().skip(1);
    let pages: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(2000);
    let dir = std::env::temp_dir().join("relmix-example");
    std::fs::create_dir_all(&dir)?;
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| dir.join("demo.relmix"));

    let dump = dir.join("dump.xml");
    let gen = SyntheticDump { pages, ..SyntheticDump::default() };
    gen.write(std::io::BufWriter::new(std::fs::File::create(&dump)?))?;

    let mut cfg = RunConfig::default();
    cfg.dump = Some(dump);
    cfg.filter.min_terms = 60;
    cfg.filter.min_links = 2;
    let (index, report) = build_index_from_dump(&cfg, None)?;
    println!("pages read {} kept {}", report.pages_read, report.pages_kept);
    print!("{}", index.stats().report());

    save_index(&index, &out)?;
    let back = load_index(&out)?;
    assert_eq!(back, index);
    println!("wrote {}", out.display());
    Ok(())
}
