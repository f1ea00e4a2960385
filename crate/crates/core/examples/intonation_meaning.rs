// Moving the focus changes the meaning: the same words with the rheme on
// the object and on the subject.
// Run with `cargo run --example intonation_meaning`.

use infostruct::intonation::{meaning, AnnotatedSentence};
use infostruct::lexicon::{cosine, Lexicon};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lexicon.json");
    let lexicon = Lexicon::load(path).expect("fixture lexicon loads").with_intonation();
    let mut seen = Vec::new();
    for text in ["Mary likes {R musicals}", "{R Mary} likes musicals"] {
        let sentence = AnnotatedSentence::parse(text).expect("well formed");
        let m = meaning(&sentence, &lexicon).expect("felicitous");
        println!("{sentence}  [{}]", m.pattern);
        for span in &m.spans {
            println!("  {} {:?} : {}", span.role, span.tokens, span.value.ty().pretty());
        }
        println!("  meaning {:?}", m.tensor.data());
        seen.push(m.tensor);
    }
    println!("cosine {:.6}", cosine(&seen[0], &seen[1]).unwrap());

    let bad = AnnotatedSentence::parse("{T Mary} {R likes}").unwrap();
    println!("{bad}: {}", meaning(&bad, &lexicon).unwrap_err());
}
