use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coordinated-turn radius `R = Va²·cos γ / (g·tan φ)`; the sign follows the bank direction.
///
/// Wings level has no finite radius and is reported as a domain error.
pub fn coordinated_turn_radius<T: Scalar>(va: T, phi: T, gamma_climb: T, gravity: T) -> Result<T> {
    let t = phi.tan();
    if t == T::zero() || !t.is_finite() {
        return Err(Error::Domain(format!("no finite turn radius at bank {phi}")));
    }
    Ok(va * va * gamma_climb.cos() / (gravity * t))
}
