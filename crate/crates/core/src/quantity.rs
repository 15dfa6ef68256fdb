use std::fmt;

/// A scalar that may legitimately be infinite or undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Finite(f64),
    /// Unsigned infinity, e.g. equal populations or a vanishing denominator.
    Infinite,
    Undefined,
}

impl Quantity {
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `+inf` for [`Quantity::Infinite`] and NaN for [`Quantity::Undefined`].
    pub fn to_f64(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::Infinite => f64::INFINITY,
            Self::Undefined => f64::NAN,
        }
    }
}

impl From<Option<f64>> for Quantity {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Self::Undefined, Self::Finite)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinite => f.write_str("inf"),
            Self::Undefined => f.write_str("nan"),
        }
    }
}
