// A set-theoretic world: individuals are basis vectors and a relation is a
// 0/1 matrix. "John likes {R Mary}" is answered by intersecting the theme
// with the rheme.
// Run with `cargo run --example truth_model`.

use infostruct::intonation::{meaning, AnnotatedSentence};
use infostruct::truth::World;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/universe.json");
    let world = World::load(path).expect("fixture universe loads");
    let lexicon = world.to_lexicon().unwrap();
    for (s, o) in [("John", "Mary"), ("John", "John"), ("Mary", "Sue")] {
        let a = world.answer(s, "likes", o).unwrap();
        println!(
            "{s} likes {{R {o}}}: alternatives {:?}, member {}, answer {:?}",
            a.alternatives, a.member, a.answer
        );
        // the same vector falls out of the intonation pipeline
        let sentence = AnnotatedSentence::parse(&format!("{s} likes {{R {o}}}")).unwrap();
        let m = meaning(&sentence, &lexicon).unwrap();
        assert_eq!(m.tensor, a.vector);
    }
}
