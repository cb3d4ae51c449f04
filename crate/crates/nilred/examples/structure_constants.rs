//! Build nilpotent Lie algebras from structure constants and inspect their
//! structure: center, commutator, corank, nilpotency step.
//!
//! ```sh
//! cargo run --example structure_constants
//! ```

use nilred::matrix::basis_vec;
use nilred::nilalg::NilLieAlgebra;
use nilred::rat::rat;

fn main() {
    // the Heisenberg algebra h3: [e1, e2] = e3
    let h3 = NilLieAlgebra::from_structure_constants(3, &[(0, 1, vec![(2, rat(1))])]).unwrap();
    let report = h3.structure_report();
    println!("h3: dim {}, step {}", h3.dim(), report.step);
    println!("  center dim      {}", report.center_basis.cols());
    println!("  commutator dim  {}", report.commutator_basis.cols());
    println!("  corank          {}", report.corank);

    // a 3-step algebra is accepted but flagged
    let free3 = NilLieAlgebra::from_structure_constants(
        5,
        &[
            (0, 1, vec![(2, rat(1))]),
            (0, 2, vec![(3, rat(1))]),
            (1, 2, vec![(4, rat(1))]),
        ],
    )
    .unwrap();
    println!(
        "free 3-step on two generators: step {}, two-step: {}",
        free3.step(),
        free3.is_two_step()
    );

    // brackets evaluate exactly on rational vectors
    let x = vec![rat(2), rat(0), rat(0), rat(0), rat(0)];
    let y = vec![rat(0), rat(3), rat(0), rat(0), rat(0)];
    println!(
        "[2e1, 3e2] = {:?}",
        free3
            .bracket(&x, &y)
            .iter()
            .map(nilred::rat::fmt_rat)
            .collect::<Vec<_>>()
    );

    // validation failures carry witnesses
    let err = NilLieAlgebra::from_structure_constants(
        3,
        &[(0, 1, vec![(2, rat(1))]), (1, 2, vec![(1, rat(1))])],
    )
    .unwrap_err();
    println!("invalid input: {err}");

    let err =
        NilLieAlgebra::from_structure_constants(3, &[(0, 1, vec![(0, rat(1))])]).unwrap_err();
    println!("invalid input: {err}");

    // antisymmetry is completed automatically; only contradictions fail
    let ok = NilLieAlgebra::from_structure_constants(
        3,
        &[(0, 1, vec![(2, rat(1))]), (1, 0, vec![(2, rat(-1))])],
    );
    println!("mirror bracket accepted: {}", ok.is_ok());

    // ad(x) as an exact matrix
    let ad_e1 = h3.ad(&basis_vec(3, 0));
    println!("ad(e1) on h3 = {ad_e1:?}");
}
