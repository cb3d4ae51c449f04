//! Pre-validated worked examples.
//!
//! Every identifier resolves to a fully validated object. One sign deserves
//! a note: the six-dimensional bi-invariant example is often quoted with all
//! three metric pairings equal to `+1`, but that form is not ad-invariant
//! against its own brackets (the triple `(e4, e5, e6)` gives `1 + 1 ≠ 0`);
//! the unique ad-invariant choice keeping the brackets and `⟨e1,e6⟩ = 1` is
//! `⟨e2,e5⟩ = −1`, `⟨e3,e4⟩ = 1`, and it is what the cotangent double of
//! `h3` actually produces. The catalog ships the ad-invariant form, together
//! with the signed relabeling that connects it to
//! [`cotangent_double`](crate::construct::cotangent_double).

use crate::construct::{so_pq, DataSet};
use crate::form::SymmetricForm;
use crate::matrix::{basis_vec, RatMatrix};
use crate::metgeo::MetricNilLieAlgebra;
use crate::nilalg::NilLieAlgebra;
use crate::rat::{rat, Rat};
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

/// Identifiers of the catalog entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleId {
    /// `h3` with the canonical inner product.
    H3Riemannian,
    /// `h3` with `⟨e3,e3⟩ = −1`: the first Lorentz metric.
    H3Lorentz1,
    /// `h3` with `⟨e1,e1⟩ = −1`: the second Lorentz metric.
    H3Lorentz2,
    /// `ℝ × h3` with the degenerate-j Lorentz metric.
    RxH3Lorentz,
    /// `h5` with the canonical inner product.
    Heisenberg2n1,
    /// The free 3-step algebra on two generators with its ad-invariant
    /// metric.
    Free3step2gen,
    /// The six-dimensional bi-invariant example, the cotangent double of
    /// `h3`.
    Dim6CotangentH3,
    /// Data set: `so(3)` with its Killing form acting on itself adjointly.
    So3AdjointDataset,
    /// Data set: `so(2,1)` with its Killing form acting on `ℝ^{2,1}` by
    /// evaluation.
    SoPqEvaluation,
    /// Data set: the modified tangent of the noncompact `so(2,1)` (Killing
    /// form on both summands, adjoint action).
    ModifiedTangent,
}

pub const ALL_EXAMPLES: [ExampleId; 10] = [
    ExampleId::H3Riemannian,
    ExampleId::H3Lorentz1,
    ExampleId::H3Lorentz2,
    ExampleId::RxH3Lorentz,
    ExampleId::Heisenberg2n1,
    ExampleId::Free3step2gen,
    ExampleId::Dim6CotangentH3,
    ExampleId::So3AdjointDataset,
    ExampleId::SoPqEvaluation,
    ExampleId::ModifiedTangent,
];

impl ExampleId {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleId::H3Riemannian => "h3_riemannian",
            ExampleId::H3Lorentz1 => "h3_lorentz_1",
            ExampleId::H3Lorentz2 => "h3_lorentz_2",
            ExampleId::RxH3Lorentz => "r_x_h3_lorentz",
            ExampleId::Heisenberg2n1 => "heisenberg_2n1",
            ExampleId::Free3step2gen => "free3step2gen",
            ExampleId::Dim6CotangentH3 => "dim6_cotangent_h3",
            ExampleId::So3AdjointDataset => "so3_adjoint_dataset",
            ExampleId::SoPqEvaluation => "so_pq_evaluation",
            ExampleId::ModifiedTangent => "modified_tangent",
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown example {0:?}; known ids: h3_riemannian, h3_lorentz_1, h3_lorentz_2, r_x_h3_lorentz, heisenberg_2n1, free3step2gen, dim6_cotangent_h3, so3_adjoint_dataset, so_pq_evaluation, modified_tangent")]
pub struct UnknownExample(pub String);

impl FromStr for ExampleId {
    type Err = UnknownExample;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_EXAMPLES
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| UnknownExample(s.to_string()))
    }
}

/// A catalog entry: either a metric algebra or a data set.
#[derive(Debug, Clone)]
pub enum CatalogEntry {
    Metric(MetricNilLieAlgebra),
    DataSet(DataSet),
}

impl CatalogEntry {
    pub fn as_metric(&self) -> Option<&MetricNilLieAlgebra> {
        match self {
            CatalogEntry::Metric(m) => Some(m),
            CatalogEntry::DataSet(_) => None,
        }
    }

    pub fn as_data_set(&self) -> Option<&DataSet> {
        match self {
            CatalogEntry::DataSet(d) => Some(d),
            CatalogEntry::Metric(_) => None,
        }
    }
}

pub fn h3() -> NilLieAlgebra {
    NilLieAlgebra::from_structure_constants(3, &[(0, 1, vec![(2, rat(1))])])
        .expect("h3 is valid")
}

fn h3_with_diag(diag: [i64; 3]) -> MetricNilLieAlgebra {
    MetricNilLieAlgebra::new(h3(), SymmetricForm::diagonal(&diag.map(rat)))
        .expect("diagonal metric is nondegenerate")
}

/// The six-dimensional bi-invariant example in its customary basis:
/// `[e4,e5] = e1`, `[e4,e6] = e2`, `[e5,e6] = e3` with the neutral
/// ad-invariant metric `⟨e1,e6⟩ = ⟨e3,e4⟩ = 1`, `⟨e2,e5⟩ = −1`.
pub fn dim6_example() -> MetricNilLieAlgebra {
    let alg = NilLieAlgebra::from_structure_constants(
        6,
        &[
            (3, 4, vec![(0, rat(1))]),
            (3, 5, vec![(1, rat(1))]),
            (4, 5, vec![(2, rat(1))]),
        ],
    )
    .expect("dim-6 brackets are 2-step");
    let gram = SymmetricForm::from_i64_rows(&[
        &[0, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, -1, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0, 0],
        &[0, -1, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 0],
    ]);
    MetricNilLieAlgebra::new(alg, gram).expect("neutral metric is nondegenerate")
}

/// Signed relabeling taking the basis of `cotangent_double(h3)` (duals
/// `e^1,e^2,e^3` first, then `e1,e2,e3`) to the customary dim-6 basis:
///
/// ```text
/// f1 = e3,  f2 = −e^2,  f3 = e^1,  f4 = e1,  f5 = e2,  f6 = e^3
/// ```
///
/// Applying [`MetricNilLieAlgebra::change_basis`] with this matrix to the
/// double reproduces [`dim6_example`] entry for entry.
pub fn dim6_relabeling() -> RatMatrix {
    let mut cols = vec![vec![Rat::zero(); 6]; 6];
    cols[0] = basis_vec(6, 5); // f1 = original e3
    cols[1] = basis_vec(6, 1).iter().map(|x| -x.clone()).collect(); // f2 = −e^2
    cols[2] = basis_vec(6, 0); // f3 = e^1
    cols[3] = basis_vec(6, 3); // f4 = e1
    cols[4] = basis_vec(6, 4); // f5 = e2
    cols[5] = basis_vec(6, 2); // f6 = e^3
    RatMatrix::from_columns(&cols)
}

fn so3_adjoint_data_set() -> DataSet {
    let (g, _, _) = so_pq(3, 0);
    let killing = g.killing_form();
    let rep: Vec<RatMatrix> = (0..3).map(|i| g.ad(&basis_vec(3, i))).collect();
    DataSet::new(g, killing.clone(), rep, killing).expect("so(3) adjoint data set is valid")
}

fn so21_evaluation_data_set() -> DataSet {
    let (g, mats, eta) = so_pq(2, 1);
    DataSet::new(g.clone(), g.killing_form(), mats, eta)
        .expect("so(2,1) evaluation data set is valid")
}

fn so21_modified_tangent_data_set() -> DataSet {
    let (g, _, _) = so_pq(2, 1);
    let killing = g.killing_form();
    let rep: Vec<RatMatrix> = (0..3).map(|i| g.ad(&basis_vec(3, i))).collect();
    DataSet::new(g, killing.clone(), rep, killing)
        .expect("so(2,1) modified tangent data set is valid")
}

/// Resolves an identifier to its validated object.
pub fn example_catalog(id: ExampleId) -> CatalogEntry {
    match id {
        ExampleId::H3Riemannian => CatalogEntry::Metric(h3_with_diag([1, 1, 1])),
        ExampleId::H3Lorentz1 => CatalogEntry::Metric(h3_with_diag([1, 1, -1])),
        ExampleId::H3Lorentz2 => CatalogEntry::Metric(h3_with_diag([-1, 1, 1])),
        ExampleId::RxH3Lorentz => {
            let alg =
                NilLieAlgebra::from_structure_constants(4, &[(0, 1, vec![(2, rat(1))])])
                    .expect("ℝ×h3 is valid");
            let gram = SymmetricForm::from_i64_rows(&[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
            ]);
            CatalogEntry::Metric(
                MetricNilLieAlgebra::new(alg, gram).expect("metric nondegenerate"),
            )
        }
        ExampleId::Heisenberg2n1 => {
            let alg = NilLieAlgebra::from_structure_constants(
                5,
                &[(0, 1, vec![(4, rat(1))]), (2, 3, vec![(4, rat(1))])],
            )
            .expect("h5 is valid");
            CatalogEntry::Metric(
                MetricNilLieAlgebra::new(alg, SymmetricForm::diagonal(&vec![rat(1); 5]))
                    .expect("inner product"),
            )
        }
        ExampleId::Free3step2gen => {
            let alg = NilLieAlgebra::from_structure_constants(
                5,
                &[
                    (0, 1, vec![(2, rat(1))]),
                    (0, 2, vec![(3, rat(1))]),
                    (1, 2, vec![(4, rat(1))]),
                ],
            )
            .expect("free 3-step algebra is valid");
            // ⟨e3,e3⟩ = 1 = ⟨e1,e5⟩ = −⟨e2,e4⟩
            let gram = SymmetricForm::from_i64_rows(&[
                &[0, 0, 0, 0, 1],
                &[0, 0, 0, -1, 0],
                &[0, 0, 1, 0, 0],
                &[0, -1, 0, 0, 0],
                &[1, 0, 0, 0, 0],
            ]);
            CatalogEntry::Metric(
                MetricNilLieAlgebra::new(alg, gram).expect("metric nondegenerate"),
            )
        }
        ExampleId::Dim6CotangentH3 => CatalogEntry::Metric(dim6_example()),
        ExampleId::So3AdjointDataset => CatalogEntry::DataSet(so3_adjoint_data_set()),
        ExampleId::SoPqEvaluation => CatalogEntry::DataSet(so21_evaluation_data_set()),
        ExampleId::ModifiedTangent => CatalogEntry::DataSet(so21_modified_tangent_data_set()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cotangent_double;
    use crate::reductive::{is_ad_invariant, AdInvariance};

    #[test]
    fn every_id_round_trips_through_its_name() {
        for id in ALL_EXAMPLES {
            assert_eq!(ExampleId::from_str(id.name()).unwrap(), id);
        }
        assert!(ExampleId::from_str("nope").is_err());
    }

    #[test]
    fn every_entry_is_validated_on_construction() {
        for id in ALL_EXAMPLES {
            match example_catalog(id) {
                CatalogEntry::Metric(m) => {
                    assert!(m.metric().is_nondegenerate());
                }
                CatalogEntry::DataSet(ds) => {
                    assert!(ds.validate().is_empty());
                }
            }
        }
    }

    #[test]
    fn r_x_h3_metric_is_verbatim() {
        let m = example_catalog(ExampleId::RxH3Lorentz);
        let m = m.as_metric().unwrap();
        assert_eq!(*m.metric().gram().at(0, 0), rat(1));
        assert_eq!(*m.metric().gram().at(1, 1), rat(1));
        assert_eq!(*m.metric().gram().at(2, 3), rat(1));
        assert_eq!(*m.metric().gram().at(2, 2), rat(0));
        assert_eq!(m.metric().signature(), (3, 1, 0));
    }

    #[test]
    fn free3step_metric_is_verbatim_and_ad_invariant() {
        let entry = example_catalog(ExampleId::Free3step2gen);
        let m = entry.as_metric().unwrap();
        assert_eq!(*m.metric().gram().at(2, 2), rat(1));
        assert_eq!(*m.metric().gram().at(0, 4), rat(1));
        assert_eq!(*m.metric().gram().at(1, 3), rat(-1));
        assert!(matches!(is_ad_invariant(m), AdInvariance::Yes));
        assert_eq!(m.alg().step(), 3);
    }

    #[test]
    fn dim6_is_the_relabeled_cotangent_double_of_h3() {
        let double = cotangent_double(&h3());
        let relabeled = double.change_basis(&dim6_relabeling()).unwrap();
        let canonical_form = dim6_example();
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    assert_eq!(relabeled.alg().c(i, j, k), canonical_form.alg().c(i, j, k));
                }
            }
        }
        assert_eq!(relabeled.metric().gram(), canonical_form.metric().gram());
    }

    #[test]
    fn so21_killing_form_is_indefinite() {
        let (g, _, _) = so_pq(2, 1);
        assert_eq!(g.killing_form().signature(), (2, 1, 0));
        // modified tangent of so(2,1) therefore has signature (4, 2)
        let ds = example_catalog(ExampleId::ModifiedTangent);
        let m = crate::construct::from_data_set(ds.as_data_set().unwrap()).unwrap();
        assert_eq!(m.metric().signature(), (4, 2, 0));
    }
}
