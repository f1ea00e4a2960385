// Sentences with more than one boundary: two rhemes around a verb, a
// rheme inside a split theme, and a theme that is a whole clause.
// Run with `cargo run --example complex_patterns`.

use infostruct::intonation::{meanings, merge_categorical, AnnotatedSentence};
use infostruct::lexicon::Lexicon;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lexicon.json");
    let lexicon = Lexicon::load(path).expect("fixture lexicon loads").with_intonation();
    for text in [
        "{R John} likes {R Mary}",
        "{T Mary wrote} {R a book} {T about art}",
        "{T Mary wrote a book about} {R art}",
    ] {
        let sentence = AnnotatedSentence::parse(text).unwrap();
        for m in meanings(&sentence, &lexicon).unwrap() {
            let cat = merge_categorical(m.pattern, &m.span_tensors()).unwrap();
            println!("{sentence}  [{}] shape {:?}", m.pattern, m.tensor.shape());
            for span in &m.spans {
                let types: Vec<String> = span.types.iter().map(|t| t.pretty()).collect();
                println!("  {} {:?}: {}", span.role, span.tokens, types.join(" | "));
            }
            println!("  boundary wiring agrees to {:e}", m.tensor.relative_distance(&cat));
        }
    }
}
