//! Watch the compressed structures react to repetitiveness: generate
//! versioned collections across a range of mutation probabilities and print
//! how the BWT run count, the interleaved-LCP run counts and the grammar
//! size grow.
//!
//! ```text
//! cargo run --release --example repetitiveness_trends
//! ```

use docfreq::ilcp::{build_rle, IlcpIndex, Orientation};
use docfreq::pdl::PdlIndex;
use docfreq::rindex::RlbwtIndex;
use docfreq::suffix::{build_ilcp, SuffixStructures};
use docfreq::synthgen::{gen_concat, ConcatParams};
use docfreq::ProviderKind;

fn main() {
    println!(
        "{:>8} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "R", "n", "r", "rho", "rho*", "nu"
    );
    for rate in [0.0, 0.001, 0.003, 0.01, 0.03, 0.1] {
        let coll = gen_concat(&ConcatParams {
            base_docs: 5,
            versions_total: 100,
            mutation_rate: rate,
            base_len: 500,
            seed: 4242,
            ..Default::default()
        })
        .expect("valid parameters");

        let structures = SuffixStructures::build(&coll);
        let global = RlbwtIndex::build_from_suffixes(
            coll.concat(),
            structures.text_suffixes(),
            ProviderKind::Plain,
        );
        let arrays = build_ilcp(&coll, &structures);
        let rho = build_rle(arrays.ilcp()).run_count();
        let rho_star =
            IlcpIndex::build(arrays.ilcp(), structures.da(), Orientation::Left, true).run_count();
        let pdl = PdlIndex::build(structures.da(), 0);

        println!(
            "{:>8} {:>9} {:>9} {:>9} {:>9} {:>9}",
            rate,
            coll.total_len(),
            global.run_count(),
            rho,
            rho_star,
            pdl.slp().nonterminal_count()
        );
    }
    println!("\nhigher mutation probability = less repetition = larger structures");
}
