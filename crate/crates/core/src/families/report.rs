//! Regression report types shared by the family and curve checks.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "PASS-WITH-DISCREPANCY")]
    PassWithDiscrepancy,
    #[serde(rename = "FAIL")]
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::PassWithDiscrepancy => "PASS-WITH-DISCREPANCY",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyKind {
    /// Printed cofactor differs from the exact quotient.
    Cofactor,
    /// Printed curve point does not lie on the curve.
    Point,
    /// Printed value of `a`, `p` or `q` differs from the derived one.
    StatedValue,
    /// Printed exponents of the left-hand side name a different case.
    Label,
    /// A printed exclusion removes valid parameter values.
    Exclusion,
    /// A component of the solution set is missing from the statement.
    OmittedBranch,
    /// A factor dividing for every `a` is missing from the statement.
    OmittedUniversalLocus,
    /// Printed back-substitution formula does not parameterize the condition.
    Map,
}

impl DiscrepancyKind {
    pub fn name(self) -> &'static str {
        match self {
            DiscrepancyKind::Cofactor => "cofactor",
            DiscrepancyKind::Point => "point",
            DiscrepancyKind::StatedValue => "stated-value",
            DiscrepancyKind::Label => "label",
            DiscrepancyKind::Exclusion => "exclusion",
            DiscrepancyKind::OmittedBranch => "omitted-branch",
            DiscrepancyKind::OmittedUniversalLocus => "omitted-universal-locus",
            DiscrepancyKind::Map => "map",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub id: String,
    pub kind: DiscrepancyKind,
    pub detail: String,
    pub printed: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub id: String,
    pub status: Status,
    /// One line per verified identity or solution.
    pub computed: Vec<String>,
    pub printed: Vec<String>,
    pub discrepancy: Vec<Discrepancy>,
    pub failures: Vec<String>,
}

impl ReportEntry {
    pub fn new(id: &str) -> Self {
        ReportEntry {
            id: id.to_string(),
            status: Status::Pass,
            computed: Vec::new(),
            printed: Vec::new(),
            discrepancy: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn flag(&mut self, kind: DiscrepancyKind, detail: impl Into<String>, printed: impl Into<String>, computed: impl Into<String>) {
        self.discrepancy.push(Discrepancy {
            id: self.id.clone(),
            kind,
            detail: detail.into(),
            printed: printed.into(),
            computed: computed.into(),
        });
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    /// Sets the status from the collected findings.
    pub fn finish(mut self) -> Self {
        self.status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.discrepancy.is_empty() {
            Status::PassWithDiscrepancy
        } else {
            Status::Pass
        };
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperReport {
    pub entries: Vec<ReportEntry>,
    pub discrepancies: Vec<Discrepancy>,
    pub pass: usize,
    pub pass_with_discrepancy: usize,
    pub fail: usize,
}

impl PaperReport {
    pub fn from_entries(entries: Vec<ReportEntry>) -> Self {
        let count = |s| entries.iter().filter(|e| e.status == s).count();
        PaperReport {
            discrepancies: entries.iter().flat_map(|e| e.discrepancy.iter().cloned()).collect(),
            pass: count(Status::Pass),
            pass_with_discrepancy: count(Status::PassWithDiscrepancy),
            fail: count(Status::Fail),
            entries,
        }
    }
}
