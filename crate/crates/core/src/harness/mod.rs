// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Algebra catalog, SVD-free oracles and seeded property suites.

pub mod catalog;
pub mod oracle;
pub mod suites;

pub use catalog::{catalog, CatalogEntry, Trait};
pub use oracle::brute_force_extremes;
pub use suites::{run_suite, run_suite_with, Failure, PropertyRunReport, Suite, SuiteOptions};
