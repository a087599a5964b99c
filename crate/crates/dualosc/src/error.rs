// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::decode::OpNibble;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("no accepted index decodes phase {phi} on curve g = {g}")]
    Undecodable { phi: f64, g: f64 },
    #[error("module reuse: {0:?} appears more than once in the convolution")]
    ModuleReuse(OpNibble),
    #[error("qubit {0} is entangled; components are undefined")]
    Entangled(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
