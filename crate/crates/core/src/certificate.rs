//! Evaluated inequalities with exact or interval-certified sides.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::Error;
use crate::interval::Interval;
use crate::rational::{format_rational, Rational};

/// Which inequality or identity a certificate evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementId {
    Elementary,
    GsKfold,
    FreimanKfold,
    FreimanLemma,
    SimplexFormula,
    DiscreteBm,
    RuzsaTriangle,
    PlunneckeRuzsa,
    IteratedPr,
    LinearPr,
    FiberBound,
    MainTerm,
    DeterminantMainTerm,
    Khovanskii,
    SumMonotone,
    SumContainment,
    ProjectionMonotone,
    ShearCounterexample,
}

impl StatementId {
    pub const ALL: [StatementId; 18] = [
        StatementId::Elementary,
        StatementId::GsKfold,
        StatementId::FreimanKfold,
        StatementId::FreimanLemma,
        StatementId::SimplexFormula,
        StatementId::DiscreteBm,
        StatementId::RuzsaTriangle,
        StatementId::PlunneckeRuzsa,
        StatementId::IteratedPr,
        StatementId::LinearPr,
        StatementId::FiberBound,
        StatementId::MainTerm,
        StatementId::DeterminantMainTerm,
        StatementId::Khovanskii,
        StatementId::SumMonotone,
        StatementId::SumContainment,
        StatementId::ProjectionMonotone,
        StatementId::ShearCounterexample,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::Elementary => "elementary",
            StatementId::GsKfold => "gs_kfold",
            StatementId::FreimanKfold => "freiman_kfold",
            StatementId::FreimanLemma => "freiman_lemma",
            StatementId::SimplexFormula => "simplex_formula",
            StatementId::DiscreteBm => "discrete_bm",
            StatementId::RuzsaTriangle => "ruzsa_triangle",
            StatementId::PlunneckeRuzsa => "plunnecke_ruzsa",
            StatementId::IteratedPr => "iterated_pr",
            StatementId::LinearPr => "linear_pr",
            StatementId::FiberBound => "fiber_bound",
            StatementId::MainTerm => "main_term",
            StatementId::DeterminantMainTerm => "determinant_main_term",
            StatementId::Khovanskii => "khovanskii",
            StatementId::SumMonotone => "sum_monotone",
            StatementId::SumContainment => "sum_containment",
            StatementId::ProjectionMonotone => "projection_monotone",
            StatementId::ShearCounterexample => "shear_counterexample",
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        StatementId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown statement {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Indeterminate,
}

/// The claimed relation between the two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≥ rhs`
    AtLeast,
    /// `lhs ≤ rhs`
    AtMost,
    /// `lhs = rhs`
    Equal,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Equal => "=",
        }
    }
}

/// One side of a comparison: exact, or enclosed in a certified interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Exact(Rational),
    Interval(Interval),
}

impl Bound {
    pub fn as_interval(&self) -> Interval {
        match self {
            Bound::Exact(v) => Interval::exact(v.clone()),
            Bound::Interval(iv) => iv.clone(),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Bound::Exact(v) => Some(v),
            Bound::Interval(_) => None,
        }
    }

    /// Exact value as `p/q`, or an enclosure as `[lo,hi]`.
    pub fn render(&self) -> String {
        match self {
            Bound::Exact(v) => format_rational(v),
            Bound::Interval(iv) => format!("[{},{}]", format_rational(&iv.lo), format_rational(&iv.hi)),
        }
    }

    fn from_interval(iv: Interval) -> Self {
        if iv.is_exact() {
            Bound::Exact(iv.lo)
        } else {
            Bound::Interval(iv)
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Bound::Exact(v) => Json::String(format_rational(v)),
            Bound::Interval(iv) => json!({
                "lower": format_rational(&iv.lo),
                "upper": format_rational(&iv.hi),
            }),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(v) => f.write_str(&format_rational(v)),
            Bound::Interval(iv) => {
                let lo = rational_to_f64(&iv.lo);
                let hi = rational_to_f64(&iv.hi);
                write!(f, "[{lo:.6}, {hi:.6}]")
            }
        }
    }
}

pub(crate) fn rational_to_f64(v: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

/// Decides a comparison rigorously: exact sides compare exactly, interval
/// sides only yield `Holds`/`Violated` once the enclosures separate.
pub fn decide(relation: Relation, lhs: &Bound, rhs: &Bound) -> Verdict {
    let l = lhs.as_interval();
    let r = rhs.as_interval();
    match relation {
        Relation::AtLeast => {
            if l.lo >= r.hi {
                Verdict::Holds
            } else if l.hi < r.lo {
                Verdict::Violated
            } else {
                Verdict::Indeterminate
            }
        }
        Relation::AtMost => {
            if l.hi <= r.lo {
                Verdict::Holds
            } else if l.lo > r.hi {
                Verdict::Violated
            } else {
                Verdict::Indeterminate
            }
        }
        Relation::Equal => {
            if l.is_exact() && r.is_exact() {
                if l.lo == r.lo {
                    Verdict::Holds
                } else {
                    Verdict::Violated
                }
            } else if l.hi < r.lo || r.hi < l.lo {
                Verdict::Violated
            } else {
                Verdict::Indeterminate
            }
        }
    }
}

/// A machine-checkable record of one evaluation.
///
/// `slack` is always `rhs − lhs`; its sign convention therefore depends on
/// `relation` (non-negative when an `AtMost` statement holds, non-positive
/// when an `AtLeast` statement holds).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub statement: StatementId,
    pub relation: Relation,
    pub lhs: Bound,
    pub rhs: Bound,
    pub verdict: Verdict,
    pub precision_bits: Option<u32>,
    pub input_digests: Vec<String>,
    pub details: BTreeMap<String, String>,
}

impl Certificate {
    pub fn new(statement: StatementId, relation: Relation, lhs: Bound, rhs: Bound) -> Self {
        let verdict = decide(relation, &lhs, &rhs);
        Self {
            statement,
            relation,
            lhs,
            rhs,
            verdict,
            precision_bits: None,
            input_digests: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn exact(
        statement: StatementId,
        relation: Relation,
        lhs: impl Into<Rational>,
        rhs: impl Into<Rational>,
    ) -> Self {
        Self::new(
            statement,
            relation,
            Bound::Exact(lhs.into()),
            Bound::Exact(rhs.into()),
        )
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = Some(bits);
        self
    }

    pub fn with_inputs(mut self, digests: impl IntoIterator<Item = String>) -> Self {
        self.input_digests.extend(digests);
        self
    }

    pub fn with_detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    /// Overrides the computed verdict; used by probes whose verdicts are
    /// informational.
    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn slack(&self) -> Bound {
        Bound::from_interval(self.rhs.as_interval().sub(&self.lhs.as_interval()))
    }

    pub fn to_json(&self) -> Json {
        json!({
            "statement_id": self.statement.as_str(),
            "relation": self.relation.symbol(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "slack": self.slack().to_json(),
            "verdict": self.verdict,
            "precision_bits": self.precision_bits,
            "input_digests": self.input_digests,
            "details": self.details,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} (slack {}) -> {:?}",
            self.statement,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            self.slack(),
            self.verdict
        )
    }
}
