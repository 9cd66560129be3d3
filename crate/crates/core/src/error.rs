use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Some k-subset of normals is linearly dependent. Indices are 0-based.
    #[error("arrangement is not generic: normals {} are linearly dependent", one_based(.subset))]
    NotGeneric { subset: Vec<usize> },

    #[error("generation failed: {0}")]
    Generation(String),
}

fn one_based(subset: &[usize]) -> String {
    let parts: Vec<String> = subset.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
