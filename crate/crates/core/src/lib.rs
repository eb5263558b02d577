//! Exact Seshadri constants of the anticanonical divisor on del Pezzo
//! surfaces `X_r`, the blow-up of the projective plane at `r <= 8` general
//! points.
//!
//! * [`picard`]: the lattice `Z^{1+r}` with its intersection form.
//! * [`atlas`]: (-1)-classes, Mori cone generators, distinguished curves and
//!   the candidate pool of the brute-force oracle.
//! * [`linear_systems`]: dimension counts, Bezout bounds, the sextic
//!   exclusion argument, and the discriminant of a cubic pencil.
//! * [`seshadri`]: the engine, its witnesses, the `r = 8` limiting family.
//! * [`positivity`]: `-K` on the 10- and 13-point blow-ups.
//!
//! Everything is exact: lattice data are integers and every threshold,
//! ratio and discriminant coefficient is a `BigRational`.

pub mod atlas;
pub mod error;
pub mod exact;
pub mod linear_systems;
pub mod picard;
pub mod positivity;
pub mod seshadri;

pub use error::{Error, Result};
pub use exact::Q;
pub use picard::{DivisorClass, PositionAssumption, SurfaceModel};
pub use seshadri::{PointSpec, SeshadriResult, Witness};
