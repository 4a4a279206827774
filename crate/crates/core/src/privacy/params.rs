use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Slack allowed when comparing ledger totals.
pub const LEDGER_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacyParams {
    pub epsilon: f64,
    pub delta: f64,
}

impl PrivacyParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(invalid("epsilon", format!("{epsilon} must be positive")));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(invalid("delta", format!("{delta} must lie in [0, 1)")));
        }
        Ok(PrivacyParams { epsilon, delta })
    }

    /// Pure `ε`-DP.
    pub fn pure(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 0.0)
    }

    /// Requires `ε, δ ∈ (0, 1)`.
    pub fn approximate(epsilon: f64, delta: f64) -> Result<Self> {
        let p = Self::new(epsilon, delta)?;
        if epsilon >= 1.0 {
            return Err(invalid("epsilon", format!("{epsilon} must lie in (0, 1)")));
        }
        if delta <= 0.0 {
            return Err(invalid("delta", format!("{delta} must lie in (0, 1)")));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Debit {
    pub mechanism: String,
    pub epsilon: f64,
    pub delta: f64,
}

/// Every mechanism run inside a pipeline debits its budget here. Totals use
/// simple composition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetLedger {
    pub declared: PrivacyParams,
    pub debits: Vec<Debit>,
}

impl BudgetLedger {
    pub fn new(declared: PrivacyParams) -> Self {
        BudgetLedger {
            declared,
            debits: Vec::new(),
        }
    }

    pub fn debit(&mut self, mechanism: &str, epsilon: f64, delta: f64) {
        self.debits.push(Debit {
            mechanism: mechanism.to_string(),
            epsilon,
            delta,
        });
    }

    pub fn total(&self) -> (f64, f64) {
        self.debits
            .iter()
            .fold((0.0, 0.0), |(e, d), x| (e + x.epsilon, d + x.delta))
    }

    /// Spent budget equals the declared one.
    pub fn balances(&self) -> bool {
        let (e, d) = self.total();
        (e - self.declared.epsilon).abs() <= LEDGER_EPS && (d - self.declared.delta).abs() <= LEDGER_EPS
    }

    /// Spent budget does not exceed the declared one.
    pub fn within_budget(&self) -> bool {
        let (e, d) = self.total();
        e <= self.declared.epsilon + LEDGER_EPS && d <= self.declared.delta + LEDGER_EPS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PrivacyParams::new(0.0, 0.1).is_err());
        assert!(PrivacyParams::new(1.0, 1.0).is_err());
        assert!(PrivacyParams::pure(2.0).is_ok());
        assert!(PrivacyParams::approximate(0.5, 0.0).is_err());
        assert!(PrivacyParams::approximate(0.5, 0.01).is_ok());
    }

    #[test]
    fn ledger_composes() {
        let mut l = BudgetLedger::new(PrivacyParams::new(0.5, 0.01).unwrap());
        l.debit("a", 0.25, 0.01);
        assert!(!l.balances());
        assert!(l.within_budget());
        l.debit("b", 0.25, 0.0);
        assert!(l.balances());
    }
}
