//! The orthogonal splitting n = z ⊕ v and its family of maps j(x) ∈ so(v),
//! defined by ⟨[u,w], x⟩ = ⟨j(x)u, w⟩.
//!
//! ```sh
//! cargo run --example j_maps
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::matrix::basis_vec;
use nilred::nilalg::{is_nonsingular, Nonsingularity};

fn main() {
    for id in [
        ExampleId::H3Riemannian,
        ExampleId::H3Lorentz1,
        ExampleId::H3Lorentz2,
        ExampleId::RxH3Lorentz,
        ExampleId::Heisenberg2n1,
    ] {
        let entry = example_catalog(id);
        let m = entry.as_metric().unwrap();
        let s = m.center_splitting().unwrap();
        println!("{id}:");
        println!("  dim z = {}, dim v = {}", s.z_basis.cols(), s.v_basis.cols());
        println!("  signature {:?}", m.metric().signature());
        for a in 0..s.z_basis.cols() {
            // print j for each ambient basis vector spanning the center
            let z = s.z_basis.col(a);
            let name_idx = z
                .iter()
                .position(|c| !num_traits::Zero::is_zero(c))
                .unwrap();
            println!(
                "  j({}) = {:?}",
                m.alg().basis_names()[name_idx],
                s.j_of(&s.z_coords(&z))
            );
        }
        println!("  j injective: {}", s.j_injective);
        match is_nonsingular(&s) {
            Nonsingularity::Nonsingular => println!("  nonsingular: yes (decided exactly)"),
            Nonsingularity::SingularWitness(w) => println!(
                "  nonsingular: no, singular direction {:?}",
                w.iter().map(nilred::rat::fmt_rat).collect::<Vec<_>>()
            ),
            Nonsingularity::ProbablyNonsingular => {
                println!("  nonsingular: probably (64 sampled directions)")
            }
        }
        println!();
    }

    // the structure endomorphisms work even with a degenerate center
    let entry = example_catalog(ExampleId::Dim6CotangentH3);
    let dim6 = entry.as_metric().unwrap();
    let endos = dim6.structure_endomorphisms(None).unwrap();
    println!("dim6_cotangent_h3: {} structure endomorphisms J_i;", endos.len());
    println!("  J_1 kills the center: J_1 e1 = {:?}", endos[0].mul_vec(&basis_vec(6, 0)));
}
