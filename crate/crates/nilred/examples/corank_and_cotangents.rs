//! Ad-invariant metrics: the cotangent double, the corank decomposition and
//! the modified-cotangent normal form.
//!
//! ```sh
//! cargo run --example corank_and_cotangents
//! ```

use nilred::catalog::{dim6_relabeling, example_catalog, h3, ExampleId};
use nilred::construct::{cotangent_double, modified_cotangent, so_pq};
use nilred::form::SymmetricForm;
use nilred::matrix::basis_vec;
use nilred::metgeo::MetricNilLieAlgebra;
use nilred::nilalg::NilLieAlgebra;
use nilred::rat::rat;
use nilred::reductive::{corank_decomposition, is_ad_invariant, AdInvariance};

fn main() {
    // T*h3 carries the canonical neutral ad-invariant metric
    let double = cotangent_double(&h3());
    println!(
        "T*h3: dim {}, signature {:?}, ad-invariant: {}",
        double.dim(),
        double.metric().signature(),
        matches!(is_ad_invariant(&double), AdInvariance::Yes)
    );
    // and is, after a signed relabeling, the classical six-dimensional
    // bi-invariant example
    let relabeled = double.change_basis(&dim6_relabeling()).unwrap();
    let entry = example_catalog(ExampleId::Dim6CotangentH3);
    let dim6 = entry.as_metric().unwrap();
    println!(
        "matches the catalog dim-6 example entrywise: {}",
        relabeled.metric().gram() == dim6.metric().gram()
    );

    // corank decomposition: the dim-6 example is already corank zero, and
    // its corank-zero factor is rebuilt as a modified cotangent
    let nf = corank_decomposition(dim6).unwrap();
    println!("\ndim-6 corank: {}", nf.corank);
    let factor = nf.factor.as_ref().unwrap();
    println!(
        "recovered rho(w1) = {:?} (rho(u)u = 0 holds on the basis)",
        factor.rho[0]
    );
    println!(
        "rebuilt modified cotangent equals the factor: {}",
        factor.rebuilt == factor.factor_algebra
    );

    // an orthogonal abelian factor raises the corank
    let r2 = MetricNilLieAlgebra::new(
        NilLieAlgebra::abelian(2),
        SymmetricForm::diagonal(&[rat(1), rat(-1)]),
    )
    .unwrap();
    let product = r2.orthogonal_product(dim6);
    println!(
        "R^2 x dim-6: corank {}",
        corank_decomposition(&product).unwrap().corank
    );

    // modified cotangents can be built directly: take so(3) with the
    // negative of its Killing form and the adjoint map
    let (g, _, _) = so_pq(3, 0);
    let inner = SymmetricForm::new(-g.killing_form().gram()).unwrap();
    let rho: Vec<_> = (0..3).map(|i| g.ad(&basis_vec(3, i))).collect();
    let mc = modified_cotangent(&inner, &rho).unwrap();
    println!(
        "\nmodified cotangent of so(3): dim {}, signature {:?}, flat: {:?}",
        mc.dim(),
        mc.metric().signature(),
        mc.flatness_check()
    );
}
