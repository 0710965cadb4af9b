//! Report types shared by the chain verifiers.

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::Frac;
use crate::fset::FSet;
use crate::ops::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// Constant-free; must hold on every input.
    Exact,
    /// Carries an unspecified constant; only the ratio is reported.
    Diagnostic,
}

/// Direction of the claimed (possibly constant-bearing) comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// One inequality `lhs (relation) rhs`. Exact steps are always stored as `lhs ≤ rhs`.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub name: String,
    pub kind: StepKind,
    pub relation: Relation,
    pub lhs: Frac,
    pub rhs: Frac,
    pub pass: Option<bool>,
}

impl ChainStep {
    pub fn exact(name: impl Into<String>, lhs: Frac, rhs: Frac) -> Self {
        let pass = Some(lhs <= rhs);
        ChainStep {
            name: name.into(),
            kind: StepKind::Exact,
            relation: Relation::Le,
            lhs,
            rhs,
            pass,
        }
    }

    pub fn diagnostic(name: impl Into<String>, relation: Relation, lhs: Frac, rhs: Frac) -> Self {
        ChainStep {
            name: name.into(),
            kind: StepKind::Diagnostic,
            relation,
            lhs,
            rhs,
            pass: None,
        }
    }

    /// `lhs / rhs`.
    pub fn ratio(&self) -> Frac {
        self.lhs.div(&self.rhs)
    }
}

impl Serialize for ChainStep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let big = |x: &BigUint| x.to_string();
        let mut st = s.serialize_struct("ChainStep", 9)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("relation", &self.relation)?;
        st.serialize_field("lhs_num", &big(&self.lhs.num))?;
        st.serialize_field("lhs_den", &big(&self.lhs.den))?;
        st.serialize_field("rhs_num", &big(&self.rhs.num))?;
        st.serialize_field("rhs_den", &big(&self.rhs.den))?;
        st.serialize_field("pass", &self.pass)?;
        st.serialize_field("ratio", &self.ratio().to_sci())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    T11,
    T12,
    T13,
    T14,
    T15,
    P51,
    #[serde(rename = "REMARK")]
    Remark,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Spade,
    Club,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDesc {
    pub name: String,
    pub card: usize,
    pub elements: FSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinalRatio {
    pub name: String,
    pub exact: Frac,
    pub ratio: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub theorem: Theorem,
    pub sign: Sign,
    pub p: u32,
    pub inputs: Vec<InputDesc>,
    pub steps: Vec<ChainStep>,
    pub case: Option<Case>,
    pub final_ratio: Option<FinalRatio>,
    /// Set when some exact step fails.
    pub violation: bool,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl ChainReport {
    pub fn exact_steps(&self) -> impl Iterator<Item = &ChainStep> {
        self.steps.iter().filter(|s| s.kind == StepKind::Exact)
    }

    pub fn failures(&self) -> Vec<&ChainStep> {
        self.exact_steps()
            .filter(|s| s.pass != Some(true))
            .collect()
    }

    pub fn step(&self, name: &str) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.name == name)
    }
}

/// Accumulates steps, warnings and notes for one report.
#[derive(Default)]
pub(crate) struct Builder {
    pub steps: Vec<ChainStep>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    prefix: String,
}

impl Builder {
    pub fn with_prefix(&mut self, prefix: &str) {
        self.prefix = prefix.to_string();
    }

    fn label(&self, name: &str) -> String {
        if self.prefix.is_empty() {
            name.to_string()
        } else {
            format!("{} {}", self.prefix, name)
        }
    }

    pub fn exact(&mut self, name: &str, lhs: Frac, rhs: Frac) {
        let name = self.label(name);
        self.steps.push(ChainStep::exact(name, lhs, rhs));
    }

    pub fn le(&mut self, name: &str, lhs: Frac, rhs: Frac) -> Frac {
        let name = self.label(name);
        let s = ChainStep::diagnostic(name, Relation::Le, lhs, rhs);
        let r = s.ratio();
        self.steps.push(s);
        r
    }

    pub fn ge(&mut self, name: &str, lhs: Frac, rhs: Frac) -> Frac {
        let name = self.label(name);
        let s = ChainStep::diagnostic(name, Relation::Ge, lhs, rhs);
        let r = s.ratio();
        self.steps.push(s);
        r
    }

    pub fn final_of(&self, name: &str) -> Option<FinalRatio> {
        let name = self.label(name);
        self.steps.iter().find(|s| s.name == name).map(|s| {
            let exact = s.ratio().reduced();
            FinalRatio {
                name: s.name.clone(),
                ratio: exact.to_sci(),
                exact,
            }
        })
    }

    pub fn finish(
        self,
        theorem: Theorem,
        sign: Sign,
        inputs: Vec<InputDesc>,
        case: Option<Case>,
        final_ratio: Option<FinalRatio>,
    ) -> ChainReport {
        let p = inputs.first().map(|i| i.elements.p()).unwrap_or(0);
        let violation = self
            .steps
            .iter()
            .any(|s| s.kind == StepKind::Exact && s.pass != Some(true));
        ChainReport {
            theorem,
            sign,
            p,
            inputs,
            steps: self.steps,
            case,
            final_ratio,
            violation,
            warnings: self.warnings,
            notes: self.notes,
        }
    }
}
