// Reduces a few type sequences and prints every planar reduction found.
// Run with `cargo run --example pregroup_reduction`.

use infostruct::pregroup::{parse_type, reduce, PregroupType};

fn show(words: &[&str], target: &str) {
    let types: Vec<PregroupType> = words.iter().map(|w| parse_type(w).expect("valid type")).collect();
    let target = parse_type(target).expect("valid target");
    let line: Vec<String> = types.iter().map(PregroupType::pretty).collect();
    match reduce(&types, &target) {
        Ok(found) => {
            println!("{} -> {}: {} reduction(s)", line.join(" | "), target.pretty(), found.len());
            for d in found {
                println!("  {}", d.to_json());
            }
        }
        Err(e) => println!("{} -> {}: {e}", line.join(" | "), target.pretty()),
    }
}

fn main() {
    show(&["n", "n.r s n.l", "n"], "s");
    show(&["n", "n.r s"], "s");
    show(&["n", "n.r s n.l n.l", "n", "n"], "s");
    show(&["n n.r n.r.r n.r n.r.r n.r.r.r"], "");
    show(&["n", "n"], "s");
}
