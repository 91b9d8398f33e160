//! Residual reports shared by the ring, braided and algebra checkers.

use serde::Serialize;

use crate::error::Error;

/// Worst violation of one axiom together with the index tuple where it occurs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub axiom: &'static str,
    pub value: f64,
    pub at: Vec<usize>,
}

impl Residual {
    pub fn zero(axiom: &'static str) -> Self {
        Residual {
            axiom,
            value: 0.0,
            at: Vec::new(),
        }
    }

    /// Keep the larger of the current and the candidate violation.
    pub fn record(&mut self, value: f64, at: &[usize]) {
        if value > self.value || value.is_nan() {
            self.value = value;
            self.at = at.to_vec();
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.value <= tol
    }
}

/// Per-axiom pass/fail outcome of a validation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationResult {
    pub tol: f64,
    pub checks: Vec<Residual>,
}

impl ValidationResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|r| r.passes(self.tol))
    }

    pub fn get(&self, axiom: &str) -> Option<&Residual> {
        self.checks.iter().find(|r| r.axiom == axiom)
    }

    pub fn worst(&self) -> Option<&Residual> {
        self.checks
            .iter()
            .filter(|r| !r.passes(self.tol))
            .max_by(|a, b| a.value.total_cmp(&b.value))
    }

    /// Turn the first failing check into an error.
    pub fn into_result(self) -> Result<Self, Error> {
        match self.checks.iter().find(|r| !r.passes(self.tol)) {
            Some(r) => Err(Error::AxiomViolation {
                axiom: r.axiom.to_string(),
                at: r.at.clone(),
                residual: r.value,
            }),
            None => Ok(self),
        }
    }
}
