//! Dense and factored real polynomials.

/// Coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1.0] }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0.0 {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly { coeffs: vec![0.0] };
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Coefficientwise `self − other`, padded to the longer length.
    pub fn sub(&self, other: &Poly) -> Vec<f64> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(0.0) - other.coeffs.get(k).copied().unwrap_or(0.0)
            })
            .collect()
    }
}

/// `lead · Π (x − r_k)`, evaluated as a product so values near a root keep
/// full relative accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPoly {
    pub lead: f64,
    pub roots: Vec<f64>,
}

impl FactoredPoly {
    pub fn new(lead: f64, roots: Vec<f64>) -> Self {
        FactoredPoly { lead, roots }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.roots.iter().fold(self.lead, |acc, r| acc * (x - r))
    }

    pub fn expand(&self) -> Poly {
        self.roots
            .iter()
            .fold(Poly::new(vec![self.lead]), |acc, &r| acc.mul(&Poly::new(vec![-r, 1.0])))
    }

    pub fn multiplicity(&self, root: f64) -> usize {
        self.roots.iter().filter(|&&r| r == root).count()
    }

    /// Roots of multiplicity one, ascending.
    pub fn simple_roots(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .roots
            .iter()
            .copied()
            .filter(|&r| self.multiplicity(r) == 1)
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Distinct roots of multiplicity two or more, ascending.
    pub fn multiple_roots(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .roots
            .iter()
            .copied()
            .filter(|&r| self.multiplicity(r) >= 2)
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Product of `(x − r)` over the roots other than one copy of `skip`.
    pub fn deflated_at(&self, x: f64, skip: f64, copies: usize) -> f64 {
        let mut skipped = 0;
        let mut acc = self.lead;
        for &r in &self.roots {
            if r == skip && skipped < copies {
                skipped += 1;
                continue;
            }
            acc *= x - r;
        }
        acc
    }

    /// `Σ 1/(x − r)` over the roots other than one copy of `skip`.
    pub fn log_derivative_deflated(&self, x: f64, skip: f64) -> f64 {
        let mut skipped = false;
        let mut acc = 0.0;
        for &r in &self.roots {
            if r == skip && !skipped {
                skipped = true;
                continue;
            }
            acc += 1.0 / (x - r);
        }
        acc
    }
}
