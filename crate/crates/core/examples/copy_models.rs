// Building a transitive verb from a relation matrix by copying one of its
// wires, and what each choice does to "subject verb object".
// Run with `cargo run --example copy_models`.

use infostruct::intonation::{copy_expand, CopyWire};
use infostruct::pregroup::{parse_type, reduce};
use infostruct::tensor::{compose, Tensor, TypedTensor};

fn main() {
    let m = Tensor::matrix(&[vec![1.0, 2.0], vec![0.5, -1.0]]).unwrap();
    let subj = Tensor::vector(vec![1.0, 3.0]);
    let obj = Tensor::vector(vec![2.0, 1.0]);
    let ty = |s: &str| parse_type(s).unwrap();
    let types = [ty("n"), ty("n.r s n.l"), ty("n")];
    let diagram = reduce(&types, &ty("s")).unwrap().remove(0);

    for wire in [CopyWire::Object, CopyWire::Subject] {
        let verb = copy_expand(&m, wire).unwrap();
        let words = [
            TypedTensor::new(types[0].clone(), subj.clone()).unwrap(),
            TypedTensor::new(types[1].clone(), verb).unwrap(),
            TypedTensor::new(types[2].clone(), obj.clone()).unwrap(),
        ];
        let sentence = compose(&words, &diagram).unwrap();
        println!("{wire:?}: {:?}", sentence.tensor().data());
    }
    let s_m = subj.contract(0, &m, 0).unwrap();
    let m_o = m.contract(1, &obj, 0).unwrap();
    println!("(s × M) ⊙ o = {:?}", s_m.hadamard(&obj).unwrap().data());
    println!("s ⊙ (M × o) = {:?}", subj.hadamard(&m_o).unwrap().data());
}
