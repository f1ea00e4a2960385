// The copy and merge maps on a small space, the Frobenius condition and a
// spider fusion.
// Run with `cargo run --example frobenius_spiders`.

use infostruct::frobenius::{delta, frobenius_condition_check, iota, merge, mu, zeta, Spider};
use infostruct::selfcheck::plug;
use infostruct::tensor::Tensor;

fn main() {
    let v = Tensor::vector(vec![0.5, -1.0, 2.0]);
    let copied = delta(&v).unwrap();
    println!("Δ(v) = {:?}", copied.data());
    println!("μ(Δ(v)) = {:?}", mu(&copied).unwrap().data());
    println!("ι(v) = {}", iota(&v).unwrap());
    println!("μ(ζ ⊗ v) = {:?}", merge(&zeta(3), &v).unwrap().data());
    println!("u ⊙ v = {:?}", merge(&Tensor::vector(vec![1.0, 2.0, 3.0]), &v).unwrap().data());

    for dim in 1..=4 {
        println!("Frobenius condition at dim {dim}: {}", frobenius_condition_check(dim));
    }

    let a = Spider::new(1, 3, 2);
    let b = Spider::new(2, 1, 2);
    let fused = a.fuse(&b, 2).unwrap();
    let plugged = plug(&a.to_tensor(), &b.to_tensor(), 2).unwrap();
    println!("{a:?} then {b:?} over 2 wires = {fused:?}: {}", plugged == fused.to_tensor());
}
