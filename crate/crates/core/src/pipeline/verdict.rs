use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::region::Region;
use crate::exactnum::{Rational, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::I, Condition::II, Condition::III];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "!=")]
    Ne,
}

impl Relation {
    pub fn evaluate(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ne => lhs != rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ne => "!=",
        })
    }
}

/// One exact comparison `lhs relation rhs`, with its recorded outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<Condition>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub holds: bool,
}

impl TraceStep {
    pub fn new(
        rule: impl Into<String>,
        condition: Option<Condition>,
        lhs: Rational,
        relation: Relation,
        rhs: Rational,
    ) -> Self {
        let holds = relation.evaluate(&lhs, &rhs);
        TraceStep {
            rule: rule.into(),
            condition,
            lhs,
            rhs,
            relation,
            holds,
        }
    }

    /// Whether the recorded outcome agrees with re-evaluating the comparison.
    pub fn replay(&self) -> bool {
        self.relation.evaluate(&self.lhs, &self.rhs) == self.holds
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.condition {
            write!(f, "({c}) ")?;
        }
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.rule,
            self.lhs,
            self.relation,
            self.rhs,
            if self.holds { "holds" } else { "fails" }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "condition", rename_all = "kebab-case")]
pub enum Status {
    Characterizing(Condition),
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Characterizing(c) => write!(f, "Characterizing ({c})"),
            Status::Unknown => f.write_str("Unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub slope: Slope,
    pub status: Status,
    pub trace: Vec<TraceStep>,
}

impl Verdict {
    pub fn is_characterizing(&self) -> bool {
        matches!(self.status, Status::Characterizing(_))
    }

    /// Re-derives the status from the trace alone.
    ///
    /// Every step must re-evaluate to its recorded outcome. A failing guard
    /// step forces `Unknown`; otherwise a condition is satisfied when all of
    /// its steps hold, and the status must name the first such condition.
    pub fn replay(&self) -> bool {
        if !self.trace.iter().all(TraceStep::replay) {
            return false;
        }
        let guards_hold = self
            .trace
            .iter()
            .filter(|s| s.condition.is_none())
            .all(|s| s.holds);
        let expected = if !guards_hold {
            Status::Unknown
        } else {
            Condition::ALL
                .into_iter()
                .find(|&c| {
                    let mut steps = self
                        .trace
                        .iter()
                        .filter(|s| s.condition == Some(c))
                        .peekable();
                    steps.peek().is_some() && steps.all(|s| s.holds)
                })
                .map_or(Status::Unknown, Status::Characterizing)
        };
        if expected == Status::Unknown && guards_hold {
            // every condition must have been tried and refuted
            let all_tried = Condition::ALL
                .iter()
                .all(|&c| self.trace.iter().any(|s| s.condition == Some(c)));
            if !all_tried {
                return false;
            }
        }
        expected == self.status
    }
}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from(n.into())
}

/// Tests the slope against each region condition in order.
///
/// All three conditions are evaluated so the trace refutes every condition
/// for an `Unknown` answer. The zero slope and the meridian fail a guard.
pub fn check_slope(region: &Region, slope: &Slope) -> Verdict {
    let p = slope.p().clone();
    let q = slope.q().clone();
    let mut trace = vec![
        TraceStep::new(
            "slope is not the meridian: q != 0",
            None,
            int(q.clone()),
            Relation::Ne,
            int(0),
        ),
        TraceStep::new(
            "slope is not zero: p != 0",
            None,
            int(p.clone()),
            Relation::Ne,
            int(0),
        ),
    ];
    if q.is_zero() || p.is_zero() {
        return Verdict {
            slope: slope.clone(),
            status: Status::Unknown,
            trace,
        };
    }

    let step = |rule: &str, c, lhs, rel, rhs| TraceStep::new(rule, Some(c), lhs, rel, rhs);
    trace.push(step(
        "q >= q_min",
        Condition::I,
        int(q.clone()),
        Relation::Ge,
        int(region.q_min),
    ));

    trace.push(step(
        "p >= pos_slope_coeff * q",
        Condition::II,
        int(p.clone()),
        Relation::Ge,
        int(&q * region.pos_slope_coeff),
    ));
    trace.push(step(
        "p >= pos_p_min",
        Condition::II,
        int(p.clone()),
        Relation::Ge,
        int(region.pos_p_min),
    ));

    let [a, b, c] = region.neg_quadratic;
    let quad = &q * &q * a + &q * b + c;
    trace.push(step(
        "q >= 2",
        Condition::III,
        int(q.clone()),
        Relation::Ge,
        int(2),
    ));
    trace.push(step(
        "p <= -(a q^2 + b q + c)",
        Condition::III,
        int(p.clone()),
        Relation::Le,
        int(-quad),
    ));
    trace.push(step(
        "p <= -pos_p_min",
        Condition::III,
        int(p),
        Relation::Le,
        int(-region.pos_p_min),
    ));

    let status = Condition::ALL
        .into_iter()
        .find(|&c| {
            trace
                .iter()
                .filter(|s| s.condition == Some(c))
                .all(|s| s.holds)
        })
        .map_or(Status::Unknown, Status::Characterizing);
    Verdict {
        slope: slope.clone(),
        status,
        trace,
    }
}
