//! Comparator dependence measures.
//!
//! These estimators exist to be run side by side with the grid-based
//! statistic on the same benchmark data: [`kraskov_mi`] is the
//! k-nearest-neighbor mutual-information estimator (reported on the squared
//! Linfoot scale by [`mi_linfoot_score`]), and [`distance_correlation`] is
//! the sample distance correlation.

mod dcor;
mod knn;

pub use dcor::distance_correlation;
pub use knn::{kraskov_mi, mi_linfoot_score, KraskovParams};
