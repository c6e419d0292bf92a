use crate::error::{Error, Result};

/// `xᵀy / (‖x‖‖y‖)` accumulated in `f64`, clamped to `[-1, 1]`.
pub fn cosine_similarity(x: &[f32], y: &[f32]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    let mut dot = 0.0f64;
    let mut xx = 0.0f64;
    let mut yy = 0.0f64;
    for (&a, &b) in x.iter().zip(y) {
        let (a, b) = (f64::from(a), f64::from(b));
        dot += a * b;
        xx += a * a;
        yy += b * b;
    }
    if xx == 0.0 || yy == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((dot / (xx.sqrt() * yy.sqrt())).clamp(-1.0, 1.0))
}
