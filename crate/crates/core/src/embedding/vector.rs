use std::ops::Deref;

use crate::error::{Error, Result};

/// Fixed-length embedding with finite `f32` components.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f32>);

impl Vector {
    pub fn new(components: Vec<f32>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Invalid("vector must have at least one component".into()));
        }
        if let Some(bad) = components.iter().find(|c| !c.is_finite()) {
            return Err(Error::Invalid(format!("non-finite vector component {bad}")));
        }
        Ok(Vector(components))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn l2_norm(&self) -> f64 {
        self.0.iter().map(|&c| f64::from(c) * f64::from(c)).sum::<f64>().sqrt()
    }

    /// Multiplies every component by `factor`.
    pub fn scaled(&self, factor: f32) -> Result<Self> {
        Vector::new(self.0.iter().map(|c| c * factor).collect())
    }

    pub(crate) fn from_raw(components: Vec<f32>) -> Self {
        debug_assert!(components.iter().all(|c| c.is_finite()));
        Vector(components)
    }
}

impl Deref for Vector {
    type Target = [f32];

    fn deref(&self) -> &[f32] {
        &self.0
    }
}

impl TryFrom<Vec<f32>> for Vector {
    type Error = Error;

    fn try_from(value: Vec<f32>) -> Result<Self> {
        Vector::new(value)
    }
}
