//! Incidence structures and the partial linear space carried by a scheme.

mod extract;
mod incidence;

pub use extract::{extract_incidence, LineStabilizerMap};
pub use incidence::{
    classify_incidence, incidence_isomorphic, regular_line_preserving, IncidenceClass, IncidenceStructure,
};
