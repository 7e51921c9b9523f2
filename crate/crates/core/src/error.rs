//! Error type shared by all modules.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("{what} cap exceeded (limit {limit})")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("not Bruhat-comparable: {0}")]
    NotComparable(String),
    #[error("word {0:?} is not a reduced expression")]
    NotReduced(Vec<usize>),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} must exceed the Coxeter number h = {h}")]
    PTooSmall { p: u64, h: i64 },
    #[error("positivity violation: {0}")]
    Positivity(String),
    #[error("dimension is not a positive integer: {0}")]
    BadDimension(String),
    #[error("no witness found for y-lengths up to {0}")]
    SearchExhausted(u32),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
