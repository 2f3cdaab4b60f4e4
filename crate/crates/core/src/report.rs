//! Condition-by-condition verification reports.
//!
//! Every identity in this crate is multilinear, so it holds everywhere iff it
//! holds on all tuples of basis vectors. Checks walk those tuples in
//! lexicographic order and stop each condition at its first failure.

use std::fmt;

use crate::exactlin::{format_rational, Vector};

/// A basis tuple on which a condition fails, with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Variable names in substitution order, e.g. `["x", "v", "y"]`.
    pub roles: Vec<String>,
    /// 0-based basis indices, one per role, each in the role's own space.
    pub basis_tuple: Vec<usize>,
    pub lhs_value: Vector,
    pub rhs_value: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub label: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub passed: bool,
    pub condition_results: Vec<ConditionResult>,
    /// Free-form remarks about conventions used by the check.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn from_results(condition_results: Vec<ConditionResult>) -> Self {
        let passed = condition_results.iter().all(|c| c.passed);
        Self {
            passed,
            condition_results,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn result(&self, label: &str) -> Option<&ConditionResult> {
        self.condition_results.iter().find(|c| c.label == label)
    }

    pub fn first_failure(&self) -> Option<&ConditionResult> {
        self.condition_results.iter().find(|c| !c.passed)
    }

    pub fn failed_labels(&self) -> Vec<&str> {
        self.condition_results
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.label.as_str())
            .collect()
    }

    /// Concatenates two reports; the result passes iff both do.
    pub fn merge(mut self, other: CheckReport) -> Self {
        self.condition_results.extend(other.condition_results);
        self.notes.extend(other.notes);
        self.passed = self.condition_results.iter().all(|c| c.passed);
        self
    }
}

fn fmt_vec(v: &[crate::exactlin::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binding: Vec<String> = self
            .roles
            .iter()
            .zip(&self.basis_tuple)
            .map(|(r, i)| format!("{r}={}", i + 1))
            .collect();
        write!(
            f,
            "at {}: lhs = {}, rhs = {}",
            binding.join(", "),
            fmt_vec(&self.lhs_value),
            fmt_vec(&self.rhs_value)
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.condition_results {
            write!(f, "{:<6} {}", c.label, if c.passed { "ok" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, "  {w}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

type Eval<'a> = Box<dyn Fn(&[usize]) -> (Vector, Vector) + 'a>;

/// One polynomial identity `lhs(t) = rhs(t)` over basis tuples `t`.
pub(crate) struct Condition<'a> {
    label: String,
    roles: Vec<String>,
    dims: Vec<usize>,
    eval: Eval<'a>,
}

impl<'a> Condition<'a> {
    /// `roles` is a comma separated list of variable names, one per entry of
    /// `dims`.
    pub(crate) fn new(
        label: impl Into<String>,
        roles: &str,
        dims: &[usize],
        eval: impl Fn(&[usize]) -> (Vector, Vector) + 'a,
    ) -> Self {
        let roles: Vec<String> = roles
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        assert_eq!(roles.len(), dims.len(), "one role per dimension");
        Self {
            label: label.into(),
            roles,
            dims: dims.to_vec(),
            eval: Box::new(eval),
        }
    }

    pub(crate) fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub(crate) fn check(&self) -> ConditionResult {
        let witness = tuples(&self.dims).find_map(|t| {
            let (lhs, rhs) = (self.eval)(&t);
            (lhs != rhs).then(|| Witness {
                roles: self.roles.clone(),
                basis_tuple: t,
                lhs_value: lhs,
                rhs_value: rhs,
            })
        });
        ConditionResult {
            label: self.label.clone(),
            passed: witness.is_none(),
            witness,
        }
    }
}

pub(crate) fn run(conditions: &[Condition<'_>]) -> CheckReport {
    CheckReport::from_results(conditions.iter().map(Condition::check).collect())
}

/// All index tuples in `0..d₁ × … × 0..dₖ` in lexicographic order. Empty when
/// any factor is empty.
pub(crate) fn tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |mut n| {
        let mut t = vec![0; dims.len()];
        for (slot, &d) in t.iter_mut().zip(dims).rev() {
            *slot = n % d;
            n /= d;
        }
        t
    })
}
