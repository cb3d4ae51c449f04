//! Witt decomposition for degenerate centers: n = (u ⊕ v) ⊕ (z̃ ⊕ ṽ) with u
//! the null part of the center, v an isotropic partner and nondegenerate
//! complements.
//!
//! ```sh
//! cargo run --example witt_decomposition
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::form::SymmetricForm;
use nilred::matrix::basis_vec;

fn main() {
    // the dim-6 bi-invariant example has a totally isotropic center
    let entry = example_catalog(ExampleId::Dim6CotangentH3);
    let m = entry.as_metric().unwrap();
    let center = m.alg().center_basis();
    println!(
        "dim-6 example: center dim {}, restricted signature {:?}",
        center.cols(),
        m.metric().restrict(&center).signature()
    );
    let w = m.metric().witt_decompose(&center).unwrap();
    println!(
        "Witt parts: dim u = {}, dim v = {}, dim z~ = {}, dim v~ = {}",
        w.u.cols(),
        w.v.cols(),
        w.z_tilde.cols(),
        w.v_tilde.cols()
    );
    let pairing = &(&w.u.transpose() * m.metric().gram()) * &w.v;
    println!("u x v pairing (normalized to the identity): {pairing:?}");

    // a nondegenerate center has empty null part
    let entry = example_catalog(ExampleId::H3Lorentz1);
    let m = entry.as_metric().unwrap();
    let w = m
        .metric()
        .witt_decompose(&m.alg().center_basis())
        .unwrap();
    println!(
        "\nh3_lorentz_1: dim u = {}, z~ spans the center: {}",
        w.u.cols(),
        w.z_tilde.span_eq(&m.alg().center_basis())
    );

    // mixed case: a center that is partly null
    let form = SymmetricForm::from_i64_rows(&[
        &[0, 1, 0, 0, 0],
        &[1, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
        &[0, 0, 0, 0, -1],
    ]);
    let center = nilred::matrix::RatMatrix::from_columns(&[basis_vec(5, 0), basis_vec(5, 3)]);
    let w = form.witt_decompose(&center).unwrap();
    println!(
        "\nmixed example: dim u = {}, dim z~ = {}, dim v~ = {}",
        w.u.cols(),
        w.z_tilde.cols(),
        w.v_tilde.cols()
    );
}
