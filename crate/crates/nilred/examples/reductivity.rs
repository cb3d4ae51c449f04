//! Deciding natural reductivity: j(z) must close under the commutator with
//! the solved bracket τ skew-adjoint on the center. The verdicts come with
//! witnesses, and the recovered (z, τ) is returned as a Lie algebra.
//!
//! ```sh
//! cargo run --example reductivity
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::construct::from_data_set;
use nilred::form::SymmetricForm;
use nilred::metgeo::MetricNilLieAlgebra;
use nilred::nilalg::NilLieAlgebra;
use nilred::rat::rat;
use nilred::reductive::{naturally_reductive_check, Verdict};

fn describe(name: &str, m: &MetricNilLieAlgebra) {
    match naturally_reductive_check(m) {
        Ok(report) => {
            let verdict = match &report.verdict {
                Verdict::NaturallyReductive => "naturally reductive".to_string(),
                Verdict::Fails(w) => format!("fails ({w:?})"),
                Verdict::Inapplicable { reason } => format!("inapplicable: {reason}"),
            };
            println!("{name}: {verdict}");
            if let Some(tau) = &report.tau {
                let nontrivial = (0..tau.dim())
                    .flat_map(|i| (i + 1..tau.dim()).map(move |j| (i, j)))
                    .filter(|&(i, j)| {
                        !tau.bracket_basis(i, j)
                            .iter()
                            .all(num_traits::Zero::is_zero)
                    })
                    .count();
                println!("  recovered tau: {} nontrivial bracket pairs", nontrivial);
            }
        }
        Err(e) => println!("{name}: {e}"),
    }
}

fn main() {
    // every nondegenerate-center metric on a Heisenberg algebra passes
    for id in [
        ExampleId::H3Riemannian,
        ExampleId::H3Lorentz1,
        ExampleId::H3Lorentz2,
        ExampleId::Heisenberg2n1,
    ] {
        let entry = example_catalog(id);
        describe(&id.to_string(), entry.as_metric().unwrap());
    }

    // data-set outputs recover τ equal to the bracket of g
    let entry = example_catalog(ExampleId::So3AdjointDataset);
    let m = from_data_set(entry.as_data_set().unwrap()).unwrap();
    describe("so3 adjoint construction", &m);

    // j with a kernel makes the criterion inapplicable
    let entry = example_catalog(ExampleId::RxH3Lorentz);
    describe("r_x_h3_lorentz", entry.as_metric().unwrap());

    // and a 2-dimensional center whose j-span does not close fails with a
    // witness pair: j(z1) = R_12 + R_34, j(z2) = R_13 inside so(4)
    let alg = NilLieAlgebra::from_structure_constants(
        6,
        &[
            (0, 1, vec![(4, rat(1))]),
            (2, 3, vec![(4, rat(1))]),
            (0, 2, vec![(5, rat(1))]),
        ],
    )
    .unwrap();
    let m = MetricNilLieAlgebra::new(alg, SymmetricForm::diagonal(&vec![rat(1); 6])).unwrap();
    describe("non-closing j-span", &m);
}
