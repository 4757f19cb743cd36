use layered_heap::HeapError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl BenchError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        BenchError::Io { context: context.into(), source }
    }

    pub fn is_config(&self) -> bool {
        matches!(self, BenchError::Config(_) | BenchError::Heap(HeapError::Config(_)))
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
