//! Truncated coordinate vectors of the sequence space.

use crate::error::{Error, Result};

/// A truncated coordinate vector of length `N`, the universal state type.
///
/// Represents an element of the sequence space by its first `N`
/// coordinates; all coordinates are finite by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqVector {
    coords: Vec<f64>,
}

impl SeqVector {
    /// Wraps a coordinate vector, rejecting non-finite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Overflow {
                context: "SeqVector::new",
            });
        }
        Ok(Self { coords })
    }

    /// The zero vector of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            coords: vec![0.0; n],
        }
    }

    /// The unit coordinate vector `e_i` (zero-based index `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "unit index {i} out of range for length {n}");
        let mut coords = vec![0.0; n];
        coords[i] = 1.0;
        Self { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Plain Euclidean norm, i.e. the scale norm at `tau = 0`.
    pub fn l2_norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Coordinate-wise difference `self - other`.
    pub fn sub(&self, other: &SeqVector) -> SeqVector {
        assert_eq!(self.len(), other.len(), "length mismatch in sub");
        SeqVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Coordinate-wise sum `self + other`.
    pub fn add(&self, other: &SeqVector) -> SeqVector {
        assert_eq!(self.len(), other.len(), "length mismatch in add");
        SeqVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: f64) -> SeqVector {
        SeqVector {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Builds a vector from a coordinate-wise map over indices `0..n`.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self {
            coords: (0..n).map(f).collect(),
        }
    }
}

impl std::ops::Index<usize> for SeqVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(SeqVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(SeqVector::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(SeqVector::new(vec![1.0, -2.0]).is_ok());
    }

    #[test]
    fn unit_and_norm() {
        let e2 = SeqVector::unit(5, 1);
        assert_eq!(e2[1], 1.0);
        assert_eq!(e2.l2_norm(), 1.0);
        assert_eq!(SeqVector::zeros(5).l2_norm(), 0.0);
    }

    #[test]
    fn arithmetic() {
        let a = SeqVector::new(vec![1.0, 2.0]).unwrap();
        let b = SeqVector::new(vec![0.5, -1.0]).unwrap();
        assert_eq!(a.sub(&b).coords(), &[0.5, 3.0]);
        assert_eq!(a.add(&b).coords(), &[1.5, 1.0]);
        assert_eq!(a.scale(2.0).coords(), &[2.0, 4.0]);
    }
}
