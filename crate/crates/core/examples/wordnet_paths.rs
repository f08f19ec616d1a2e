//! Path-based and information-content measures on a hand-built taxonomy.
//! Pass a WordNet dict directory to use the real database instead.
//!
//!     cargo run --example wordnet_paths -- /usr/share/wordnet car bicycle

use relmix::wordnet::{compute_ic, load_wordnet, MeasureKind, Pos, WordnetBuilder};

fn main() -> relmix::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [dir, w1, w2] = args.as_slice() {
        let g = load_wordnet(std::path::Path::new(dir))?;
        for kind in [MeasureKind::Wnp, MeasureKind::Wup, MeasureKind::Lch] {
            println!("{}\t{:.4}", kind.as_str(), g.word_measure(kind, w1, w2)?);
        }
        return Ok(());
    }

    let mut b = WordnetBuilder::new();
    b.synset("entity", Pos::Noun, &["entity"], &[])
        .synset("animal", Pos::Noun, &["animal"], &["entity"])
        .synset("bird", Pos::Noun, &["bird"], &["animal"])
        .synset("cock", Pos::Noun, &["cock", "rooster"], &["bird"])
        .synset("hen", Pos::Noun, &["hen"], &["bird"])
        .synset("mammal", Pos::Noun, &["mammal"], &["animal"])
        .synset("dog", Pos::Noun, &["dog"], &["mammal"])
        .synset("artifact", Pos::Noun, &["artifact"], &["entity"])
        .synset("car", Pos::Noun, &["car"], &["artifact"]);
    let g = b.build()?;
    let counts = [("cock", 10.0), ("hen", 12.0), ("dog", 40.0), ("car", 80.0), ("bird", 5.0)];
    let counts = counts.iter().map(|(w, c)| (w.to_string(), *c)).collect();
    let ic = compute_ic(&g, &counts)?;
    // Identical synsets make JCN unbounded; cap it for display.
    let g = g.with_ic(ic).with_jcn_ceiling(100.0);

    let pairs = [("cock", "rooster"), ("cock", "hen"), ("cock", "dog"), ("cock", "car")];
    print!("{:<16}", "");
    for kind in MeasureKind::ALL {
        print!("{:>10}", kind.as_str());
    }
    println!();
    for (a, c) in pairs {
        print!("{:<16}", format!("{a}/{c}"));
        for kind in MeasureKind::ALL {
            print!("{:>10.3}", g.word_measure(kind, a, c)?);
        }
        println!();
    }
    Ok(())
}
