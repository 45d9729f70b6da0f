use std::fmt;

use serde::{Serialize, Serializer};

/// One failed instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an exhaustive or sampled identity check.
///
/// `passed()` holds exactly when no violation was recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Axiom identifiers that were evaluated, in evaluation order.
    pub axioms: Vec<String>,
    /// Number of individual instances evaluated.
    pub instances: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn declare(&mut self, axiom: impl Into<String>) {
        let axiom = axiom.into();
        if !self.axioms.contains(&axiom) {
            self.axioms.push(axiom);
        }
    }

    pub fn record(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.instances += 1;
        if !ok {
            self.violations.push(violation());
        }
    }

    /// Axiom families with at least one violation, in declaration order.
    pub fn failed_axioms(&self) -> Vec<&str> {
        self.axioms
            .iter()
            .filter(|a| self.violations.iter().any(|v| &v.axiom == *a))
            .map(String::as_str)
            .collect()
    }

    pub fn first_violation(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn merge(&mut self, other: AxiomReport) {
        for a in other.axioms {
            self.declare(a);
        }
        self.instances += other.instances;
        self.violations.extend(other.violations);
    }

    /// Sorts violations by axiom then witness so reports are order independent.
    pub fn sort(&mut self) {
        self.violations.sort();
    }
}

impl Serialize for AxiomReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AxiomReport", 4)?;
        st.serialize_field("passed", &self.passed())?;
        st.serialize_field("axioms", &self.axioms)?;
        st.serialize_field("instances", &self.instances)?;
        st.serialize_field("violations", &self.violations)?;
        st.end()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failed_axioms().len();
        write!(
            f,
            "{} ({}/{} axiom families, {} instances)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.axioms.len() - failed,
            self.axioms.len(),
            self.instances
        )?;
        for v in self.violations.iter().take(8) {
            write!(
                f,
                "\n  {} at {}: {} != {}",
                v.axiom, v.witness, v.lhs, v.rhs
            )?;
        }
        if self.violations.len() > 8 {
            write!(f, "\n  ... {} more", self.violations.len() - 8)?;
        }
        Ok(())
    }
}
