//! Assign simulated reads to species with the k-mer and maximal-run
//! criteria. Each species document is the concatenation of several highly
//! similar strains; reads are sampled from one strain with light noise.
//!
//! ```text
//! cargo run --release --example pseudoalign_reads
//! ```

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use docfreq::pseudoalign::{kmer_assign, maxrun_assign, Status};
use docfreq::{Collection, Method, ProviderKind, QueryEngine};

const BASES: &[u8] = b"ACGT";

fn random_genome(rng: &mut StdRng, len: usize) -> Vec<u8> {
    (0..len).map(|_| BASES[rng.random_range(0..4)]).collect()
}

fn mutate(rng: &mut StdRng, genome: &[u8], rate: f64) -> Vec<u8> {
    genome
        .iter()
        .map(|&b| {
            if rng.random_bool(rate) {
                let mut c = BASES[rng.random_range(0..4)];
                while c == b {
                    c = BASES[rng.random_range(0..4)];
                }
                c
            } else {
                b
            }
        })
        .collect()
}

fn main() {
    let mut rng = StdRng::seed_from_u64(33);
    let species = 3;
    let strains = 8;
    let genome_len = 4000;

    // one document per species = concatenation of its strains
    let mut docs = Vec::new();
    let mut strain_banks = Vec::new();
    for _ in 0..species {
        let base = random_genome(&mut rng, genome_len);
        let bank: Vec<Vec<u8>> = (0..strains).map(|_| mutate(&mut rng, &base, 0.01)).collect();
        docs.push(bank.concat());
        strain_banks.push(bank);
    }
    let coll = Collection::from_docs(docs).expect("valid documents");
    let engine = QueryEngine::build(coll, Method::Pdl, ProviderKind::GrammarDiff);

    let k = 31;
    let read_len = 120;
    let reads = 60;
    let mut correct_kmer = 0;
    let mut correct_maxrun = 0;
    for _ in 0..reads {
        let true_species = rng.random_range(0..species);
        let strain = &strain_banks[true_species][rng.random_range(0..strains)];
        let start = rng.random_range(0..strain.len() - read_len);
        let read = mutate(&mut rng, &strain[start..start + read_len], 0.001);

        let a = kmer_assign(&engine, &read, k, false).expect("read long enough");
        if a.status == Status::Assigned(true_species as u32 + 1) {
            correct_kmer += 1;
        }
        let a = maxrun_assign(engine.global(), &engine, &read, k, false).unwrap();
        if a.status == Status::Assigned(true_species as u32 + 1) {
            correct_maxrun += 1;
        }
    }
    println!("{reads} reads of length {read_len}, k = {k}");
    println!("k-mer criterion:       {correct_kmer}/{reads} assigned to the true species");
    println!("maximal-run criterion: {correct_maxrun}/{reads} assigned to the true species");

    let junk = random_genome(&mut rng, read_len);
    let a = kmer_assign(&engine, &junk, k, false).unwrap();
    println!("random read: {:?}", a.status);
}
