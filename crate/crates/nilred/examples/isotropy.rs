//! The isotropy algebra: pairs (A, B) ∈ so(z) × so(v) with [B, j(x)] = j(Ax),
//! solved as an exact nullspace problem. Its dimension measures how many
//! isometries fix the identity.
//!
//! ```sh
//! cargo run --example isotropy
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::construct::from_data_set;
use nilred::form::SymmetricForm;
use nilred::metgeo::MetricNilLieAlgebra;
use nilred::nilalg::NilLieAlgebra;
use nilred::rat::rat;
use nilred::reductive::isotropy_algebra;

fn main() {
    // the three h3 metrics all have a one-dimensional isotropy algebra, the
    // centralizer of t = j(e3) inside so(v, B)
    for id in [
        ExampleId::H3Riemannian,
        ExampleId::H3Lorentz1,
        ExampleId::H3Lorentz2,
    ] {
        let entry = example_catalog(id);
        let iso = isotropy_algebra(entry.as_metric().unwrap()).unwrap();
        println!("{id}: dim h = {}", iso.dim);
        println!("  B generator = {:?}", iso.basis[0].1);
    }

    // for the so(3) adjoint construction the isotropy is g itself: dim 3,
    // with no extra skew intertwiners
    let entry = example_catalog(ExampleId::So3AdjointDataset);
    let m = from_data_set(entry.as_data_set().unwrap()).unwrap();
    let iso = isotropy_algebra(&m).unwrap();
    println!("so3 adjoint construction: dim h = {}", iso.dim);

    // abelian algebras carry no j-constraints at all: h = so(z)
    for dim in [2usize, 3, 4] {
        let m = MetricNilLieAlgebra::new(
            NilLieAlgebra::abelian(dim),
            SymmetricForm::diagonal(&vec![rat(1); dim]),
        )
        .unwrap();
        let iso = isotropy_algebra(&m).unwrap();
        println!("abelian R^{dim}: dim h = {} (= dim so({dim}))", iso.dim);
    }
}
