//! Positioning machinery for veering triangulations of drilled Anosov
//! torus bundles: exact orbit-space rectangle combinatorics, anchor and
//! buoy systems, tight-arc diagonals, the peel/round/rotate perturbation
//! pipeline, Agol-Gueritaud triangulation assembly with axiom
//! verification, and numerical certification of the bicontact filling
//! models.

pub mod bicontact;
pub mod diagonal;
pub mod exact;
pub mod geom;
pub mod orbit;
pub mod perturb;
pub mod rect;
pub mod report;
pub mod svg;
pub mod tri;

pub mod anchor;

pub use exact::QuadNum;
pub use geom::Pt;
pub use orbit::{DeckElement, MonodromySpec, OrbitSpace, PointOrbitSet, Window};
