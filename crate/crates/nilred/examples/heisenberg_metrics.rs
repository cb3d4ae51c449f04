//! Families of metrics on Heisenberg algebras: the skew-map constructor, the
//! center sign flip, and how the j-maps transform.
//!
//! ```sh
//! cargo run --example heisenberg_metrics
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::construct::{flip_center_sign, heisenberg};
use nilred::form::SymmetricForm;
use nilred::matrix::{basis_vec, RatMatrix};
use nilred::rat::rat;
use nilred::reductive::{naturally_reductive_check, Verdict};

fn main() {
    // any nonsingular t ∈ so(R^{2n}, B) with λ ≠ 0 produces a Heisenberg
    // algebra with ⟨z,z⟩ = λ; the splitting recovers j(z) = λ·t
    let rotation = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
    let m1 = heisenberg(
        1,
        &SymmetricForm::diagonal(&[rat(1), rat(1)]),
        &rotation,
        &rat(-1),
    )
    .unwrap();
    let s = m1.center_splitting().unwrap();
    println!("heisenberg(1, I, rotation, λ=-1):");
    println!("  metric = {:?}", m1.metric().gram());
    println!("  j(e3)  = {:?}", s.j_of(&s.z_coords(&basis_vec(3, 2))));

    let m2 = heisenberg(
        1,
        &SymmetricForm::from_i64_rows(&[&[-1, 0], &[0, 1]]),
        &RatMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
        &rat(1),
    )
    .unwrap();
    let s = m2.center_splitting().unwrap();
    println!("heisenberg(1, diag(-1,1), boost, λ=1):");
    println!("  j(e3)  = {:?}", s.j_of(&s.z_coords(&basis_vec(3, 2))));

    // flipping the sign of the metric on the center negates every j(z) and
    // preserves the reductivity verdict
    let entry = example_catalog(ExampleId::H3Riemannian);
    let canonical = entry.as_metric().unwrap();
    let flipped = flip_center_sign(canonical).unwrap();
    println!(
        "\nflip_center_sign: signature {:?} -> {:?}",
        canonical.metric().signature(),
        flipped.metric().signature()
    );
    let s0 = canonical.center_splitting().unwrap();
    let s1 = flipped.center_splitting().unwrap();
    let z = basis_vec(3, 2);
    println!(
        "  J(e3) = {:?}, after the flip j(e3) = {:?}",
        s0.j_of(&s0.z_coords(&z)),
        s1.j_of(&s1.z_coords(&z))
    );
    let verdict = naturally_reductive_check(&flipped).unwrap().verdict;
    println!(
        "  flipped metric still naturally reductive: {}",
        verdict == Verdict::NaturallyReductive
    );

    // a larger instance: h5 with two commuting rotation blocks
    let block = RatMatrix::from_i64_rows(&[
        &[0, -1, 0, 0],
        &[1, 0, 0, 0],
        &[0, 0, 0, -2],
        &[0, 0, 2, 0],
    ]);
    let m5 = heisenberg(2, &SymmetricForm::diagonal(&vec![rat(1); 4]), &block, &rat(1)).unwrap();
    println!(
        "\nheisenberg(2, I, two rotation blocks, λ=1): dim {}, verdict {:?}",
        m5.dim(),
        naturally_reductive_check(&m5).unwrap().verdict
    );
}
