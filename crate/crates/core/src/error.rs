// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Shapes or declared sizes disagree.
    #[error("structural error: {0}")]
    Structural(String),

    /// An argument lies outside the operation's domain (e.g. `x = 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A dense solver failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("invalid algebra file: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
