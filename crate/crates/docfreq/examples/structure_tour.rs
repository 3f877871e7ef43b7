//! A guided tour of the structures behind the indexes, printed for a toy
//! two-document collection: suffix array, document array, interleaved LCP
//! with its run-length encodings, the document-array grammar with a
//! maximal cover, and the direction bitvectors.
//!
//! ```text
//! cargo run --example structure_tour
//! ```

use docfreq::gcda_lr::LrIndex;
use docfreq::ilcp::{IlcpIndex, Orientation};
use docfreq::pdl::PdlIndex;
use docfreq::rindex::RlbwtIndex;
use docfreq::suffix::{build_ilcp, SuffixStructures};
use docfreq::{Collection, ProviderKind};

fn printable(b: u8) -> char {
    match b {
        0x00 => '#',
        0x01 => '$',
        other => other as char,
    }
}

fn main() {
    let coll = Collection::from_docs(vec![b"ata".to_vec(), b"tata".to_vec()]).unwrap();
    let text = coll.concat();
    println!(
        "documents: {:?}, {:?}",
        std::str::from_utf8(coll.doc_body(1)).unwrap(),
        std::str::from_utf8(coll.doc_body(2)).unwrap()
    );
    println!(
        "concatenation ('$' = document sentinel, '#' = global): {}\n",
        text.iter().map(|&b| printable(b)).collect::<String>()
    );

    let s = SuffixStructures::build(&coll);
    let arrays = build_ilcp(&coll, &s);
    println!("{:>4} {:>4} {:>4} {:>5} {:>5} {:>6}  suffix", "row", "SA", "DA", "LCP", "ILCP", "RILCP");
    for row in 1..=s.len() {
        let suffix: String = text[s.sa_at(row) - 1..].iter().map(|&b| printable(b)).collect();
        println!(
            "{:>4} {:>4} {:>4} {:>5} {:>5} {:>6}  {}",
            row,
            s.sa_at(row),
            s.da_at(row),
            s.lcp_at(row),
            arrays.ilcp_at(row),
            arrays.rilcp_at(row),
            suffix
        );
    }

    let plain = IlcpIndex::build(arrays.ilcp(), s.da(), Orientation::Left, false);
    let starred = IlcpIndex::build(arrays.ilcp(), s.da(), Orientation::Left, true);
    println!(
        "\nILCP runs:  values {:?} lengths {:?} (rho = {})",
        plain.run_values(),
        plain.run_lengths(),
        plain.run_count()
    );
    println!(
        "merged:     values {:?} lengths {:?} same-doc {:?} (rho* = {})",
        starred.run_values(),
        starred.run_lengths(),
        starred.same_doc_flags(),
        starred.run_count()
    );

    let global = RlbwtIndex::build(text, ProviderKind::Plain);
    println!("\nBWT has {} runs over {} rows", global.run_count(), global.len());

    let pdl = PdlIndex::build(s.da(), 0);
    let slp = pdl.slp();
    println!(
        "grammar over DA: {} nonterminals, height {}",
        slp.nonterminal_count(),
        slp.height()
    );
    let iv = global.pattern_interval(b"a").unwrap().unwrap();
    let cover = slp.maximal_cover(iv.start, iv.end).unwrap();
    println!(
        "pattern \"a\" covers SA rows [{}..{}]; maximal cover: {:?}",
        iv.start,
        iv.end,
        cover
            .iter()
            .map(|&(sym, start)| format!("sym{sym}@{start}(len {})", slp.expansion_len(sym)))
            .collect::<Vec<_>>()
    );
    for &(sym, _) in &cover {
        println!("  sym{sym} expands to {:?} list {:?}", slp.expand(sym), pdl.stored_list(sym));
    }

    let lr = LrIndex::build(s.da(), coll.doc_count());
    println!("\ndirection bits at the grammar root (doc: L R):");
    for doc in 1..=coll.doc_count() as u32 {
        println!(
            "  doc {doc}: {} {}",
            lr.l_bit(slp.root(), doc) as u8,
            lr.r_bit(lr.slp().root(), doc) as u8
        );
    }
}
