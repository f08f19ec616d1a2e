//! Tokenize, drop stop words and stem a sentence; then run the POS path
//! on a tagged line.
//!
//!     cargo run --example text_pipeline -- "The cats were running across fields"

use relmix::text::{normalize_pos, parse_pos_sentences, stemmed_terms, tokenize, PosDiagnostics, PosMode, StopWords};

fn main() -> relmix::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "The cats were running across the generously watered fields.".into());
    let sw = StopWords::english();

    let tokens: Vec<String> = tokenize(&text).into_iter().map(|t| t.surface).collect();
    println!("tokens:  {tokens:?}");
    let terms: Vec<String> = stemmed_terms(&text, &sw).into_iter().map(|t| t.0).collect();
    println!("stemmed: {terms:?}");

    let tagged = "The\tDT\tthe\ncats\tNNS\tcat\nwere\tVBD\tbe\nrunning\tVBG\trun\nhome\tNN\thome\n";
    let sentences = parse_pos_sentences(tagged, "inline", 1)?;
    for mode in [PosMode::NounOnly, PosMode::NounVerbAdj] {
        let mut diag = PosDiagnostics::default();
        let terms: Vec<String> = sentences
            .iter()
            .flat_map(|s| normalize_pos(s, mode, &mut diag))
            .map(|t| t.0)
            .collect();
        println!("{mode:?}: {terms:?}");
    }
    Ok(())
}
