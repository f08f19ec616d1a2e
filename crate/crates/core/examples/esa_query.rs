//! Build a small index in memory and compare words by their concept
//! vectors.

use std::collections::BTreeMap;

use relmix::corpus::synthetic::{synthetic_word, SyntheticDump};
use relmix::corpus::{filter_pages, ingest, FilterCriteria};
use relmix::esa::{build_index, documents_from_pages, BuildSettings, ExtractSettings};

fn main() -> relmix::Result<()> {
    let dump = SyntheticDump { pages: 800, vocabulary: 1500, ..SyntheticDump::default() }.to_string();
    let ingested = ingest(dump.as_bytes())?;
    let settings = ExtractSettings::default();
    let criteria = FilterCriteria { min_terms: 50, min_links: 1 };
    let pages = filter_pages(ingested.pages, criteria, &settings.stopwords);
    let (docs, _) = documents_from_pages(&pages, &settings, None);
    let index = build_index(&docs, &BuildSettings::default(), &settings.stopwords, BTreeMap::new())?;
    println!("{} concepts, {} terms", index.concept_count(), index.term_count());

    let words: Vec<String> = [3, 7, 40, 400, 1400].into_iter().map(synthetic_word).collect();
    for a in &words {
        for b in &words {
            print!("{:>8.4}", index.esa(a, b));
        }
        println!("  {a}");
    }

    let mut top = index.concept_vector(&words[2]).entries().to_vec();
    top.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("strongest concepts for {}:", words[2]);
    for (id, w) in top.iter().take(5) {
        let (_, title) = index.concept(*id).expect("concept id");
        println!("  {title:<12} {w:.4}");
    }
    Ok(())
}
