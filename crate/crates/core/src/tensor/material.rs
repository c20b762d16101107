use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which phase of the two-phase medium a derived quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Matrix,
    Inclusion,
}

/// Lame parameters of the matrix (lambda, mu) and the inclusion
/// (lambda_tilde, mu_tilde), in pressure units, together with the derived
/// bulk moduli and kernel constants.
///
/// Admissibility: strong convexity in both phases and the well-ordering
/// (lambda - lambda~)(mu - mu~) > 0, which makes C^1 - C^0 definite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialPair {
    pub lambda: f64,
    pub mu: f64,
    #[serde(rename = "lambda_tilde")]
    pub lambda_tilde: f64,
    #[serde(rename = "mu_tilde")]
    pub mu_tilde: f64,
}

impl MaterialPair {
    pub fn new(lambda: f64, mu: f64, lambda_tilde: f64, mu_tilde: f64) -> Result<Self> {
        let pair = MaterialPair {
            lambda,
            mu,
            lambda_tilde,
            mu_tilde,
        };
        pair.validate(3)?;
        Ok(pair)
    }

    /// Checks strong convexity (mu > 0, kappa > 0 in both phases) and the
    /// well-ordering condition at dimension d.
    pub fn validate(&self, d: usize) -> Result<()> {
        let d = d as f64;
        if self.mu <= 0.0 || d * self.lambda + 2.0 * self.mu <= 0.0 {
            return Err(Error::ConvexityViolation(format!(
                "matrix phase: mu = {}, kappa = {}",
                self.mu,
                d * self.lambda + 2.0 * self.mu
            )));
        }
        if self.mu_tilde <= 0.0 || d * self.lambda_tilde + 2.0 * self.mu_tilde <= 0.0 {
            return Err(Error::ConvexityViolation(format!(
                "inclusion phase: mu~ = {}, kappa~ = {}",
                self.mu_tilde,
                d * self.lambda_tilde + 2.0 * self.mu_tilde
            )));
        }
        let well = (self.lambda - self.lambda_tilde) * (self.mu - self.mu_tilde);
        if well <= 0.0 {
            return Err(Error::InadmissiblePair(format!(
                "well-ordering (lambda - lambda~)(mu - mu~) = {well} must be > 0"
            )));
        }
        Ok(())
    }

    /// Bulk modulus in the convention used by the trace-bound formulas:
    /// kappa_conv = lambda + 2 mu / d.
    pub fn kappa_conv(&self, phase: Phase, d: usize) -> f64 {
        let (l, m) = self.lame(phase);
        l + 2.0 * m / d as f64
    }

    /// Bulk modulus in the convention kappa = d lambda + 2 mu.
    pub fn kappa_paper(&self, phase: Phase, d: usize) -> f64 {
        let (l, m) = self.lame(phase);
        d as f64 * l + 2.0 * m
    }

    pub fn lame(&self, phase: Phase) -> (f64, f64) {
        match phase {
            Phase::Matrix => (self.lambda, self.mu),
            Phase::Inclusion => (self.lambda_tilde, self.mu_tilde),
        }
    }

    /// alpha_1 = (1/2)(1/mu + 1/(2 mu + lambda)), matrix phase.
    pub fn alpha1(&self) -> f64 {
        0.5 * (1.0 / self.mu + 1.0 / (2.0 * self.mu + self.lambda))
    }

    /// alpha_2 = (1/2)(1/mu - 1/(2 mu + lambda)), matrix phase.
    pub fn alpha2(&self) -> f64 {
        0.5 * (1.0 / self.mu - 1.0 / (2.0 * self.mu + self.lambda))
    }

    /// alpha = (alpha_1 + alpha_2) / (2 alpha_2) = (2 mu + lambda)/(mu + lambda),
    /// always > 1 for admissible parameters.
    pub fn alpha(&self) -> f64 {
        (2.0 * self.mu + self.lambda) / (self.mu + self.lambda)
    }

    /// Poisson ratio of the matrix phase.
    pub fn poisson(&self) -> f64 {
        self.lambda / (2.0 * (self.lambda + self.mu))
    }

    /// Sign of the contrast (positive when the inclusion is stiffer).
    pub fn contrast_sign(&self) -> f64 {
        (self.mu_tilde - self.mu).signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn alphas_at_unit_lame() {
        let p = MaterialPair::new(1.0, 1.0, 2.0, 2.0).unwrap();
        assert_relative_eq!(p.alpha1(), 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(p.alpha2(), 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(p.alpha(), 1.5, epsilon = 1e-15);
        // Definition alpha = (a1 + a2) / (2 a2).
        assert_relative_eq!(
            p.alpha(),
            (p.alpha1() + p.alpha2()) / (2.0 * p.alpha2()),
            epsilon = 1e-14
        );
    }

    #[test]
    fn kappa_conventions() {
        let p = MaterialPair::new(1.0, 1.0, 2.0, 2.0).unwrap();
        assert_relative_eq!(p.kappa_conv(Phase::Matrix, 3), 5.0 / 3.0);
        assert_relative_eq!(p.kappa_conv(Phase::Inclusion, 3), 10.0 / 3.0);
        assert_relative_eq!(p.kappa_paper(Phase::Matrix, 3), 5.0);
        assert_relative_eq!(p.kappa_paper(Phase::Inclusion, 3), 10.0);
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(MaterialPair::new(1.0, -1.0, 2.0, 2.0).is_err());
        // Well-ordering violated: lambda up, mu down.
        assert!(MaterialPair::new(1.0, 1.0, 2.0, 0.5).is_err());
        // Zero contrast violates the strict well-ordering too.
        assert!(MaterialPair::new(1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn alpha_above_one_for_random_admissible_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut count = 0;
        while count < 200 {
            let lambda = rng.gen_range(-0.5..4.0);
            let mu = rng.gen_range(0.05..4.0);
            let dl: f64 = rng.gen_range(-2.0..2.0);
            let dm = rng.gen_range(0.05..2.0) * dl.signum();
            let p = MaterialPair {
                lambda,
                mu,
                lambda_tilde: lambda + dl,
                mu_tilde: mu + dm,
            };
            if p.validate(3).is_err() {
                continue;
            }
            count += 1;
            assert!(p.alpha() > 1.0, "alpha = {} for {:?}", p.alpha(), p);
        }
    }

    #[test]
    fn json_schema_field_names() {
        let p = MaterialPair::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"lambda\""));
        assert!(s.contains("\"lambda_tilde\""));
        let q: MaterialPair =
            serde_json::from_str("{\"lambda\":1,\"mu\":1,\"lambda_tilde\":2,\"mu_tilde\":2}")
                .unwrap();
        assert_eq!(p, q);
    }
}
