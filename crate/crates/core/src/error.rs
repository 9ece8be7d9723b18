use thiserror::Error;

use crate::forest::Vertex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForestError {
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("off-diagonal support contains a cycle through vertices {cycle:?}")]
    HasCycle { cycle: Vec<Vertex> },
    #[error("edge ({u}, {v}) has weight zero")]
    ZeroEdgeWeight { u: Vertex, v: Vertex },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("coefficient mode supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StarSetError {
    #[error("no vertex has a nonzero deleted-vertex determinant at {lambda}")]
    NoStarVertex { lambda: f64 },
    #[error("no star set of size {k} found for {lambda}")]
    StarSetNotFound { lambda: f64, k: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("vertex {vertex} is not a star vertex for {lambda}")]
    NotAStarVertex { lambda: f64, vertex: Vertex },
    #[error("normalizer phi(A-u)phi'(A) = {value} is not positive at {lambda}")]
    NonPositiveNormalizer { lambda: f64, value: f64 },
    #[error("vertex set {vertices:?} is not a star set for {lambda}")]
    InvalidStarSet { lambda: f64, vertices: Vec<Vertex> },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    StarSet(#[from] StarSetError),
    #[error("at eigenvalue {lambda}: {source}")]
    AtEigenvalue {
        lambda: f64,
        #[source]
        source: Box<EigenError>,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("instance of size {n} exceeds the enumeration limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NotConverged { sweeps: usize },
    #[error("vector is identically zero")]
    ZeroVector,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}
