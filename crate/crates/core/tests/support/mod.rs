//! Reference implementations used as oracles. They share no code with the
//! library beyond the `Tensor` container and are written for clarity, not
//! speed.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use infostruct::pregroup::{AtomicType, PregroupType, SimpleType};
use infostruct::tensor::Tensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub const BASES: [&str; 4] = ["n", "s", "theta", "rho"];

/// A factor as (base index, adjoint order).
pub type Factor = (usize, i32);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_simple(f: Factor) -> SimpleType {
    SimpleType::new(AtomicType::new(BASES[f.0]), f.1)
}

pub fn to_type(fs: &[Factor]) -> PregroupType {
    PregroupType::new(fs.iter().copied().map(to_simple).collect())
}

fn legal(a: Factor, b: Factor) -> bool {
    a.0 == b.0 && b.1 == a.1 + 1
}

/// All ways to cancel `fs[lo..hi]` completely with nested cups.
fn cancellations(fs: &[Factor], lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo == hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in (lo + 1..hi).step_by(2) {
        if !legal(fs[lo], fs[j]) {
            continue;
        }
        for inner in cancellations(fs, lo + 1, j) {
            for rest in cancellations(fs, j + 1, hi) {
                let mut links = vec![(lo, j)];
                links.extend(&inner);
                links.extend(&rest);
                out.push(links);
            }
        }
    }
    out
}

/// Every planar reduction of `fs[pos..]` onto `target[t..]`, survivors at top level.
fn reductions_from(fs: &[Factor], target: &[Factor], pos: usize, t: usize) -> Vec<(Vec<(usize, usize)>, Vec<usize>)> {
    if pos == fs.len() {
        return if t == target.len() { vec![(Vec::new(), Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    if t < target.len() && fs[pos] == target[t] {
        for (links, mut survivors) in reductions_from(fs, target, pos + 1, t + 1) {
            survivors.insert(0, pos);
            out.push((links, survivors));
        }
    }
    for j in pos + 1..fs.len() {
        if !legal(fs[pos], fs[j]) {
            continue;
        }
        for inner in cancellations(fs, pos + 1, j) {
            for (rest, survivors) in reductions_from(fs, target, j + 1, t) {
                let mut links = vec![(pos, j)];
                links.extend(&inner);
                links.extend(rest);
                out.push((links, survivors));
            }
        }
    }
    out
}

/// Brute-force planar matching: the set of (sorted links, survivors) pairs.
pub fn brute_reductions(fs: &[Factor], target: &[Factor]) -> BTreeSet<(Vec<(usize, usize)>, Vec<usize>)> {
    reductions_from(fs, target, 0, 0)
        .into_iter()
        .map(|(mut links, survivors)| {
            links.sort();
            (links, survivors)
        })
        .collect()
}

pub fn random_factor(r: &mut ChaCha8Rng, bases: usize, max_adj: i32) -> Factor {
    (r.gen_range(0..bases), r.gen_range(-max_adj..=max_adj))
}

/// A type sequence of length at most `max_len`, built half the time by
/// inserting cancelling pairs around `target` so that reducible inputs are common.
pub fn random_sequence(r: &mut ChaCha8Rng, target: &[Factor], max_len: usize) -> Vec<Factor> {
    if r.gen_bool(0.5) {
        let len = r.gen_range(1..=max_len);
        return (0..len).map(|_| random_factor(r, 2, 2)).collect();
    }
    let mut fs = target.to_vec();
    while fs.len() + 2 <= max_len && r.gen_bool(0.8) {
        let (b, a) = random_factor(r, 2, 2);
        let at = r.gen_range(0..=fs.len());
        fs.insert(at, (b, a + 1));
        fs.insert(at, (b, a));
    }
    if fs.is_empty() {
        fs.push(random_factor(r, 2, 2));
    }
    fs
}

pub fn random_tensor(r: &mut ChaCha8Rng, shape: &[usize]) -> Tensor {
    let len = shape.iter().product();
    Tensor::new(shape.to_vec(), (0..len).map(|_| r.gen::<f64>() * 2.0 - 1.0).collect()).unwrap()
}

pub fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> Tensor {
    random_tensor(r, &[dim])
}

/// Row-major offset of `idx` in `shape`.
pub fn offset(shape: &[usize], idx: &[usize]) -> usize {
    shape.iter().zip(idx).fold(0, |acc, (&d, &i)| acc * d + i)
}

/// Steps `idx` through all indices of `shape` in row-major order.
pub fn next_index(shape: &[usize], idx: &mut [usize]) -> bool {
    for k in (0..shape.len()).rev() {
        idx[k] += 1;
        if idx[k] < shape[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// Evaluates the contraction pattern by summing over every index assignment.
/// Factor positions count across the concatenated word axes; linked positions
/// share one summation index and survivors index the result in order.
pub fn naive_compose(words: &[&Tensor], links: &[(usize, usize)], survivors: &[usize]) -> Tensor {
    let dims: Vec<usize> = words.iter().flat_map(|w| w.shape().to_vec()).collect();
    let mut var_of = vec![usize::MAX; dims.len()];
    let mut var_dims = Vec::new();
    for &(i, j) in links {
        assert_eq!(dims[i], dims[j]);
        var_of[i] = var_dims.len();
        var_of[j] = var_dims.len();
        var_dims.push(dims[i]);
    }
    let out_shape: Vec<usize> = survivors.iter().map(|&k| dims[k]).collect();
    for &k in survivors {
        var_of[k] = var_dims.len();
        var_dims.push(dims[k]);
    }
    assert!(var_of.iter().all(|&v| v != usize::MAX), "every factor is linked or survives");

    let mut out = vec![0.0; out_shape.iter().product()];
    let mut vars = vec![0; var_dims.len()];
    loop {
        let mut product = 1.0;
        let mut base = 0;
        for w in words {
            let idx: Vec<usize> = (0..w.order()).map(|k| vars[var_of[base + k]]).collect();
            product *= w.data()[offset(w.shape(), &idx)];
            base += w.order();
        }
        let out_idx = &vars[links.len()..];
        out[offset(&out_shape, out_idx)] += product;
        if !next_index(&var_dims, &mut vars) {
            break;
        }
    }
    Tensor::new(out_shape, out).unwrap()
}

/// Naive `Σ_k a[.., k, ..] b[.., k, ..]`, free axes of `a` first.
pub fn naive_contract(a: &Tensor, ax: usize, b: &Tensor, bx: usize) -> Tensor {
    let la = a.order();
    let mut links = vec![(ax, la + bx)];
    links.sort();
    let survivors: Vec<usize> = (0..la + b.order()).filter(|&k| k != ax && k != la + bx).collect();
    naive_compose(&[a, b], &links, &survivors)
}

pub fn hadamard(a: &Tensor, b: &Tensor) -> Tensor {
    assert_eq!(a.shape(), b.shape());
    Tensor::new(a.shape().to_vec(), a.data().iter().zip(b.data()).map(|(x, y)| x * y).collect()).unwrap()
}

/// Kronecker delta with `legs` axes of size `dim`.
pub fn kronecker(legs: usize, dim: usize) -> Tensor {
    let shape = vec![dim; legs];
    let mut data = vec![0.0; dim.pow(legs as u32)];
    for i in 0..dim {
        data[offset(&shape, &vec![i; legs])] = 1.0;
    }
    Tensor::new(shape, data).unwrap()
}

/// `‖a − b‖∞ / max(‖a‖∞, ‖b‖∞)`, zero when both vanish.
pub fn rel_err(a: &Tensor, b: &Tensor) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shapes differ");
    let inf = |t: &Tensor| t.data().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let scale = inf(a).max(inf(b));
    if scale == 0.0 {
        return 0.0;
    }
    a.data().iter().zip(b.data()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// The shipped lexicon read straight from its JSON and TSV files.
pub struct RawLexicon {
    pub tensors: BTreeMap<(String, String), Tensor>,
    pub matrices: BTreeMap<String, Tensor>,
}

impl RawLexicon {
    pub fn load() -> Self {
        let json: Value = serde_json::from_str(&std::fs::read_to_string(fixture("lexicon.json")).unwrap()).unwrap();
        let tsv: BTreeMap<String, Vec<f64>> = std::fs::read_to_string(fixture("vectors.tsv"))
            .unwrap()
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let (w, v) = l.split_once('\t').unwrap();
                (w.to_owned(), v.split_whitespace().map(|x| x.parse().unwrap()).collect())
            })
            .collect();
        let floats = |v: &Value| -> Vec<f64> { v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect() };
        let shape = |v: &Value| -> Vec<usize> { v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect() };
        let mut raw = RawLexicon {
            tensors: BTreeMap::new(),
            matrices: BTreeMap::new(),
        };
        for e in json["entries"].as_array().unwrap() {
            let word = e["word"].as_str().unwrap().to_owned();
            if let Some(m) = e.get("verb_matrix") {
                raw.matrices.insert(word.clone(), Tensor::new(shape(&m["shape"]), floats(&m["data"])).unwrap());
            }
            if let Some(ty) = e.get("type") {
                let data = match e.get("data") {
                    Some(d) => floats(d),
                    None => tsv[&word].clone(),
                };
                let shp = e.get("shape").map(shape).unwrap_or_else(|| vec![data.len()]);
                raw.tensors.insert((word, ty.as_str().unwrap().to_owned()), Tensor::new(shp, data).unwrap());
            }
        }
        raw
    }

    pub fn get(&self, word: &str, ty: &str) -> &Tensor {
        &self.tensors[&(word.to_owned(), ty.to_owned())]
    }
}

pub fn mid_sentence_oracle(raw: &RawLexicon) -> Tensor {
    let t1 = naive_contract(raw.get("Mary", "n"), 0, &raw.matrices["wrote"], 0);
    let rh = naive_contract(raw.get("a", "rho n.l"), 1, raw.get("book", "n"), 0);
    let t2 = naive_contract(raw.get("about", "theta n.l"), 1, raw.get("art", "n"), 0);
    hadamard(&hadamard(&t1, &rh), &t2)
}

/// (sentence, golden file stem, pattern, expected meaning) for each shipped fixture.
pub fn fixture_oracles(raw: &RawLexicon) -> Vec<(&'static str, &'static str, &'static str, Tensor)> {
    let musicals = hadamard(
        &naive_contract(raw.get("Mary", "n"), 0, &raw.matrices["likes"], 0),
        raw.get("musicals", "n"),
    );
    let (john, mary, likes) = (raw.get("John", "n"), raw.get("Mary", "n"), raw.get("likes", "theta theta"));
    let d = john.len();
    let two_rhemes = Tensor::from_fn(vec![d, d], |ix| john.data()[ix[0]] * mary.data()[ix[1]] * likes.data()[ix[0] * d + ix[1]]);
    let nested_theme = naive_compose(
        &[
            raw.get("Mary", "n"),
            raw.get("wrote", "n.r s n.l"),
            raw.get("a", "n n.l"),
            raw.get("book", "n"),
            raw.get("about", "s.r theta"),
        ],
        &[(0, 1), (2, 7), (3, 4), (5, 6)],
        &[8],
    );
    vec![
        ("Mary likes {R musicals}", "mary_likes_musicals", "theme-rheme", musicals),
        ("{R John} likes {R Mary}", "john_likes_mary", "multiple-rhemes", two_rhemes),
        (
            "{T Mary wrote a book about} {R art}",
            "nested_rheme_art",
            "theme-rheme",
            hadamard(&nested_theme, raw.get("art", "n")),
        ),
        (
            "{T Mary wrote} {R a book} {T about art}",
            "mid_sentence_a_book",
            "split-theme",
            mid_sentence_oracle(raw),
        ),
    ]
}

