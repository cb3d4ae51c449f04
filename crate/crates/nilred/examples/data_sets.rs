//! The data-set construction: a Lie algebra with an ad-invariant metric plus
//! a compatible representation determines a naturally reductive 2-step
//! nilpotent metric Lie group.
//!
//! ```sh
//! cargo run --example data_sets
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::construct::{from_data_set, so_pq, DataSet};
use nilred::form::SymmetricForm;
use nilred::matrix::{basis_vec, RatMatrix};
use nilred::nilalg::LieAlgebra;
use nilred::rat::rat;

fn main() {
    // smallest example: g = R acting on R^2 by rotation gives h3 with its
    // canonical inner product
    let rotation = DataSet::new(
        LieAlgebra::from_structure_constants(1, &[]).unwrap(),
        SymmetricForm::diagonal(&[rat(1)]),
        vec![RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]])],
        SymmetricForm::diagonal(&[rat(1), rat(1)]),
    )
    .unwrap();
    let m = from_data_set(&rotation).unwrap();
    println!(
        "rotation data set -> dim {}, signature {:?}, step {}",
        m.dim(),
        m.metric().signature(),
        m.alg().step()
    );
    let s = m.center_splitting().unwrap();
    println!(
        "recovered j equals the representation: j(z) = {:?}",
        s.j_of(&s.z_coords(&basis_vec(3, 0)))
    );

    // so(3) acting on itself adjointly, both sides carrying the Killing form
    let entry = example_catalog(ExampleId::So3AdjointDataset);
    let ds = entry.as_data_set().unwrap();
    println!(
        "\nso(3) adjoint data set: Killing form = {:?}",
        ds.metric_g.gram()
    );
    let m = from_data_set(ds).unwrap();
    println!(
        "-> dim {}, signature {:?}; center = commutator = g",
        m.dim(),
        m.metric().signature()
    );

    // validation reports every violated axiom, not just the first
    let (g, _, _) = so_pq(3, 0);
    let bad = DataSet::new(
        g,
        SymmetricForm::diagonal(&[rat(1), rat(2), rat(3)]), // not ad-invariant
        vec![
            RatMatrix::identity(2), // not skew, not a homomorphism
            RatMatrix::zeros(2, 2),
            RatMatrix::zeros(2, 2),
        ],
        SymmetricForm::diagonal(&[rat(1), rat(1)]),
    );
    match bad {
        Err(e) => println!("\ninvalid data set:\n{e}"),
        Ok(_) => unreachable!(),
    }
}
