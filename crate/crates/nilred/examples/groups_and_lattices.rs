//! Group arithmetic in exponential coordinates and lattice closure.
//!
//! ```sh
//! cargo run --example groups_and_lattices
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::group::{
    group_inverse, group_multiply, lattice_closure_check, GroupPoint, LatticeClosure,
    LatticeSpec,
};
use nilred::rat::{fmt_rat, rat, ratio};

fn pretty(p: &GroupPoint<nilred::rat::Rat>) -> String {
    let coords: Vec<String> = p.coords.iter().map(fmt_rat).collect();
    format!("({})", coords.join(", "))
}

fn main() {
    let entry = example_catalog(ExampleId::Dim6CotangentH3);
    let alg = entry.as_metric().unwrap().alg();

    // the group law is x·y = x + y + ½[x, y], exact on rational points
    let x = GroupPoint::new(vec![rat(0), rat(0), rat(0), rat(1), rat(0), rat(0)]);
    let y = GroupPoint::new(vec![rat(0), rat(0), rat(0), rat(0), rat(1), rat(0)]);
    let xy = group_multiply(alg, &x, &y).unwrap();
    println!("exp(e4) · exp(e5) = exp{}", pretty(&xy));
    let inv = group_inverse(alg, &xy).unwrap();
    println!("its inverse        = exp{}", pretty(&inv));
    println!(
        "product with the inverse is the identity: {}",
        pretty(&group_multiply(alg, &xy, &inv).unwrap())
    );

    // a diagonal scaling is a lattice iff the bracket corrections stay
    // integral; doubling the right generators fixes the half
    let doubled =
        LatticeSpec::new(vec![rat(1), rat(1), rat(1), rat(2), rat(1), rat(2)]).unwrap();
    println!(
        "\nGamma = diag(1,1,1,2,1,2)·Z^6 closed: {:?}",
        lattice_closure_check(alg, &doubled).unwrap()
    );
    let identity = LatticeSpec::new(vec![rat(1); 6]).unwrap();
    match lattice_closure_check(alg, &identity).unwrap() {
        LatticeClosure::NotClosed { i, j } => println!(
            "Z^6 is not closed: ½[e{}, e{}] leaves the lattice",
            i + 1,
            j + 1
        ),
        LatticeClosure::Closed => unreachable!(),
    }

    // membership testing is exact
    let p = GroupPoint::new(vec![
        rat(3),
        rat(-1),
        rat(7),
        rat(4),
        rat(2),
        ratio(6, 1),
    ]);
    println!("(3,-1,7,4,2,6) in Gamma: {}", doubled.contains(&p));
}
