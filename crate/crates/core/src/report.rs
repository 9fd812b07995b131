//! Pass/fail records for identity batteries.

use std::fmt;

use serde::Serialize;

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::tensor::Tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

/// The first offending coordinate of a failed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Which instance of a quantified identity failed, e.g. `h = e2`.
    pub context: String,
    /// Multi-index of the first differing coordinate (empty for scalars).
    pub index: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            failure: None,
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            failure: None,
            note: Some(reason.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records a failure unless one is already recorded.
    pub fn fail(&mut self, failure: Failure) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.failure = Some(failure);
        }
    }

    /// Fails with a free-form message.
    pub fn fail_msg(&mut self, context: impl Into<String>, message: impl Into<String>) {
        self.fail(Failure {
            context: context.into(),
            index: Vec::new(),
            lhs: message.into(),
            rhs: String::new(),
        });
    }

    /// Coordinatewise comparison; the context closure only runs on failure.
    pub fn tensors<S: Scalar>(&mut self, context: impl FnOnce() -> String, lhs: &Tensor<S>, rhs: &Tensor<S>) -> bool {
        match lhs.first_difference(rhs) {
            None => true,
            Some((index, a, b)) => {
                let (lhs, rhs) = if lhs.shape() == rhs.shape() {
                    (a.to_string(), b.to_string())
                } else {
                    (format!("shape {:?}", lhs.shape()), format!("shape {:?}", rhs.shape()))
                };
                self.fail(Failure {
                    context: context(),
                    index,
                    lhs,
                    rhs,
                });
                false
            }
        }
    }

    pub fn vectors<S: Scalar>(&mut self, context: impl FnOnce() -> String, lhs: &[S], rhs: &[S]) -> bool {
        self.tensors(context, &Tensor::from_vec(lhs.to_vec()), &Tensor::from_vec(rhs.to_vec()))
    }

    pub fn scalars<S: Scalar>(&mut self, context: impl FnOnce() -> String, lhs: &S, rhs: &S) -> bool {
        self.tensors(context, &Tensor::scalar(lhs.clone()), &Tensor::scalar(rhs.clone()))
    }

    pub fn matrices<S: Scalar>(&mut self, context: impl FnOnce() -> String, lhs: &Matrix<S>, rhs: &Matrix<S>) -> bool {
        self.tensors(context, &matrix_tensor(lhs), &matrix_tensor(rhs))
    }

    pub fn truth(&mut self, context: impl FnOnce() -> String, ok: bool) -> bool {
        if !ok {
            self.fail(Failure {
                context: context(),
                index: Vec::new(),
                lhs: "false".into(),
                rhs: "true".into(),
            });
        }
        ok
    }
}

pub(crate) fn matrix_tensor<S: Scalar>(m: &Matrix<S>) -> Tensor<S> {
    let coords = (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect();
    Tensor::from_coords(&[m.rows(), m.cols()], coords).expect("matrix shape")
}

/// An ordered collection of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends another report with every name prefixed by `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// True when nothing failed (skips count as passing).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn sorted(mut self) -> Self {
        self.sort();
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", c.status, c.name)?;
            if let Some(fail) = &c.failure {
                write!(f, " [{}]", fail.context)?;
                if !fail.index.is_empty() {
                    write!(f, " at {:?}", fail.index)?;
                }
                if fail.rhs.is_empty() {
                    write!(f, ": {}", fail.lhs)?;
                } else {
                    write!(f, ": lhs = {}, rhs = {}", fail.lhs, fail.rhs)?;
                }
            }
            if let Some(note) = &c.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn first_failure_is_kept() {
        let a = Tensor::from_vec(vec![Rational::from_i64(1), Rational::from_i64(2)]);
        let b = Tensor::from_vec(vec![Rational::from_i64(1), Rational::from_i64(3)]);
        let mut c = Check::new("x");
        assert!(c.tensors(|| "first".into(), &a, &a));
        assert!(!c.tensors(|| "second".into(), &a, &b));
        c.truth(|| "third".into(), false);
        let f = c.failure.clone().unwrap();
        assert_eq!(f.context, "second");
        assert_eq!(f.index, vec![1]);
        assert_eq!((f.lhs.as_str(), f.rhs.as_str()), ("2", "3"));
    }

    #[test]
    fn skips_do_not_fail_a_report() {
        let mut r = VerificationReport::new();
        r.push(Check::new("b"));
        r.push(Check::skipped("a", "needs inverse"));
        assert!(r.passed());
        let r = r.sorted();
        assert_eq!(r.checks[0].name, "a");
        let mut bad = Check::new("c");
        bad.fail_msg("ctx", "boom");
        let mut r2 = r.clone();
        r2.push(bad);
        assert!(!r2.passed());
        assert_eq!(r2.failures().count(), 1);
    }
}
