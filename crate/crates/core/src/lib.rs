pub mod algrep;
pub mod fplinalg;
pub mod gacohom;
pub mod sl2dist;
pub mod verify;
pub mod weightcomb;

use std::sync::Arc;

use algrep::{GenAlgebra, OracleConfig, RepError};

/// Look up an algebra by the id stored in module files.
pub fn algebra_by_id(id: &str, config: OracleConfig) -> Result<Arc<GenAlgebra>, RepError> {
    if let Some((p, r)) = sl2dist::parse_algebra_id(id) {
        return Ok(sl2dist::Sl2Algebra::with_config(p, r, config)?.algebra().clone());
    }
    if let Some((p, r)) = gacohom::parse_algebra_id(id) {
        return Ok(gacohom::TruncatedPolyAlgebra::with_config(p, r, config)?.algebra().clone());
    }
    Err(RepError::OutOfRange(format!("unknown algebra `{id}`")))
}
