// Composes "Mary likes musicals" from the fixture lexicon and checks the
// result against an explicit sum over indices.
// Run with `cargo run --example tensor_semantics`.

use infostruct::lexicon::Lexicon;
use infostruct::pregroup::parse_type;
use infostruct::tensor::{compose, Tensor};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lexicon.json");
    let lexicon = Lexicon::load(path).expect("fixture lexicon loads");
    let words = ["Mary", "likes", "musicals"];
    let parses = lexicon.parses(&words, &parse_type("s").unwrap()).expect("known words");
    let parse = &parses[0];
    let typed: Vec<_> = words
        .iter()
        .zip(&parse.senses)
        .map(|(w, &k)| lexicon.entry(w).unwrap().senses[k].typed())
        .collect();
    let meaning = compose(&typed, &parse.diagram).expect("diagram fits the words");
    println!("reduction {}", parse.diagram.to_json());
    println!("meaning   {:?}", meaning.tensor().data());

    // Σ_ij subj_i verb_ikj obj_j
    let (subj, verb, obj) = (typed[0].tensor(), typed[1].tensor(), typed[2].tensor());
    let d = subj.len();
    let by_hand: Vec<f64> = (0..d)
        .map(|k| {
            let mut sum = 0.0;
            for i in 0..d {
                for j in 0..d {
                    sum += subj.get(&[i]) * verb.get(&[i, k, j]) * obj.get(&[j]);
                }
            }
            sum
        })
        .collect();
    println!("by hand   {by_hand:?}");
    println!("relative distance {:e}", meaning.tensor().relative_distance(&Tensor::vector(by_hand)));
}
