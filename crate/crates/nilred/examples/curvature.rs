//! Connection, curvature, sectional curvature and Ricci, all exact.
//!
//! ```sh
//! cargo run --example curvature
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::matrix::basis_vec;
use nilred::metgeo::Flatness;
use nilred::rat::fmt_rat;

fn main() {
    let entry = example_catalog(ExampleId::H3Riemannian);
    let h3 = entry.as_metric().unwrap();
    let e = |i| basis_vec(3, i);

    let nabla = h3.covariant_derivative(&e(0), &e(1));
    println!(
        "h3 canonical: nabla_e1 e2 = {:?}",
        nabla.iter().map(fmt_rat).collect::<Vec<_>>()
    );
    let r = h3.curvature(&e(0), &e(1), &e(1));
    println!(
        "             R(e1,e2)e2  = {:?}",
        r.iter().map(fmt_rat).collect::<Vec<_>>()
    );
    println!(
        "             K(e1,e2) = {}, K(e1,e3) = {}",
        fmt_rat(&h3.sectional_curvature(&e(0), &e(1)).unwrap()),
        fmt_rat(&h3.sectional_curvature(&e(0), &e(2)).unwrap()),
    );
    let ricci = h3.ricci();
    println!("             Ric = {:?}", ricci.form);
    println!("             Ricci transformation T = {:?}", ricci.transform);

    // the case table of the splitting gives the same answers as the
    // definition-based computation
    let s = h3.center_splitting().unwrap();
    let via_table = h3.curvature_split(&s, &e(0), &e(1), &e(1));
    assert_eq!(via_table, r);
    println!("case table agrees with the definition on h3");

    // a bi-invariant metric is flat in the 2-step case
    let entry = example_catalog(ExampleId::Dim6CotangentH3);
    let dim6 = entry.as_metric().unwrap();
    println!("dim6_cotangent_h3 flatness: {:?}", dim6.flatness_check());

    // while the 3-step bi-invariant example is curved
    let entry = example_catalog(ExampleId::Free3step2gen);
    let free3 = entry.as_metric().unwrap();
    match free3.flatness_check() {
        Flatness::CurvatureWitness(i, j, k) => println!(
            "free3step2gen: R(e{},e{})e{} != 0 (bi-invariant but 3-step)",
            i + 1,
            j + 1,
            k + 1
        ),
        Flatness::Flat => unreachable!(),
    }
}
