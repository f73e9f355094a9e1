//! Conditions on the relation spaces, distributivity of subspace tuples, kernel purity and
//! the bounded Koszulity verdict.

pub mod complex;
pub mod conditions;
pub mod lattice;
pub mod purity;
pub mod report;
pub mod verdict;

pub use complex::{build_layer, ComplexLayer, DifferentialKind, HomologyCell, Layer, Slot};
pub use conditions::{check_ec, check_ecc, check_evc, check_exclusive, ec_sides};
pub use lattice::{check_multidistributive, check_triple_distributive, distributive_detail, multidistributive_detail, LatticeCheck};
pub use purity::{build_theorem_spaces, hypothesis_chain, kernel_purity_report, TheoremSpaces};
pub use report::{ConditionReport, DegreeDetail, Verdict, Witness, WitnessTerm};
pub use verdict::{koszul_verdict, ComplexWitness, ExactnessCell, KoszulVerdict, Overall, Strategy};
