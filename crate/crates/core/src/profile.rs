use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::DerivedGroups;

/// Soliton branch of the hard-core particle density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Density dip.
    Dark,
    /// Density bump on the half-filled pedestal.
    Antidark,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Branch {
    /// `−1` for dark, `+1` for antidark.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Dark => -1.0,
            Branch::Antidark => 1.0,
            Branch::NotApplicable => 0.0,
        }
    }

    pub fn mirror(self) -> Branch {
        match self {
            Branch::Dark => Branch::Antidark,
            Branch::Antidark => Branch::Dark,
            Branch::NotApplicable => Branch::NotApplicable,
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dark" => Ok(Branch::Dark),
            "antidark" => Ok(Branch::Antidark),
            other => Err(format!("expected `dark` or `antidark`, got `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    HgpeDensity,
    HgpeCondensate,
    HgpePhase,
    GpeWavefunction,
    GpeDensity,
    /// Orbit of a traveling-wave quadrature ODE.
    Orbit,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileValues {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// A field sampled on uniform positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub x: Vec<f64>,
    pub values: ProfileValues,
    pub kind: ProfileKind,
    pub groups: Option<DerivedGroups>,
    pub branch: Branch,
}

impl Profile {
    pub fn real(x: Vec<f64>, values: Vec<f64>, kind: ProfileKind) -> Self {
        assert_eq!(x.len(), values.len());
        Profile {
            x,
            values: ProfileValues::Real(values),
            kind,
            groups: None,
            branch: Branch::NotApplicable,
        }
    }

    pub fn with_groups(mut self, groups: DerivedGroups) -> Self {
        self.groups = Some(groups);
        self
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Real samples, or the modulus squared of complex samples.
    pub fn real_values(&self) -> std::borrow::Cow<'_, [f64]> {
        match &self.values {
            ProfileValues::Real(v) => std::borrow::Cow::Borrowed(v),
            ProfileValues::Complex(v) => v.iter().map(|c| c.norm_sqr()).collect(),
        }
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match &self.values {
            ProfileValues::Real(v) => Some(v),
            ProfileValues::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Option<&[Complex64]> {
        match &self.values {
            ProfileValues::Complex(v) => Some(v),
            ProfileValues::Real(_) => None,
        }
    }

    pub fn spacing(&self) -> f64 {
        if self.x.len() < 2 {
            0.0
        } else {
            self.x[1] - self.x[0]
        }
    }
}

/// `n` points evenly spaced over `[-half_width, half_width]`.
pub fn symmetric_grid(half_width: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let dx = 2.0 * half_width / (n - 1) as f64;
    (0..n)
        .map(|i| {
            // keep the centre point exactly at zero for odd n
            let k = i as f64 - (n - 1) as f64 / 2.0;
            k * dx
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_grid_is_centred() {
        let g = symmetric_grid(5.0, 11);
        assert_eq!(g[5], 0.0);
        assert_eq!(g[0], -5.0);
        assert_eq!(g[10], 5.0);
        for (a, b) in g.iter().zip(g.iter().rev()) {
            assert_eq!(*a, -*b);
        }
    }
}
