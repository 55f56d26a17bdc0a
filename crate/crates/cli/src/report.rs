//! JSON reports printed under `--json`. The shapes are described by
//! `docs/report.schema.json`; indices in them are 0-based.

use serde::Serialize;
use smallcancel_core::checker::symmetrized;
use smallcancel_core::{
    Bound, BoundNote, BoundValue, CheckReport, Estimate, Failure, ParamPoint, Presentation, Result, SymmetrizedWord, Word,
};

use crate::text::render_word;

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub r: u32,
    pub l1: u32,
    pub l2: u32,
    pub m: u32,
    pub lambda: String,
}

impl From<&ParamPoint> for Params {
    fn from(p: &ParamPoint) -> Params {
        Params { r: p.r, l1: p.l1, l2: p.l2, m: p.m, lambda: p.lambda.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    /// The bound as an `f64`; 0 on underflow.
    pub value: f64,
    /// `null` when the bound is exactly zero.
    pub log10: Option<f64>,
    /// `"num/den"` when evaluated exactly.
    pub exact: Option<String>,
    pub note: &'static str,
}

pub fn note_name(note: BoundNote) -> &'static str {
    match note {
        BoundNote::Proper => "proper",
        BoundNote::Vacuous => "vacuous",
        BoundNote::ZeroClause => "zero_clause",
        BoundNote::EmptyProduct => "empty_product",
    }
}

impl From<&Bound> for BoundReport {
    fn from(b: &Bound) -> BoundReport {
        let log10 = b.value.log10();
        BoundReport {
            value: b.value.to_f64(),
            log10: log10.is_finite().then_some(log10),
            exact: match &b.value {
                BoundValue::Exact(q) => Some(format!("{}/{}", q.numer(), q.denom())),
                BoundValue::Log(_) => None,
            },
            note: note_name(b.note),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Limit {
    pub value: Option<u64>,
    pub error: Option<String>,
}

impl<T: Into<u64>> From<Result<T>> for Limit {
    fn from(r: Result<T>) -> Limit {
        match r {
            Ok(v) => Limit { value: Some(v.into()), error: None },
            Err(e) => Limit { value: None, error: Some(e.to_string()) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Limits {
    pub target_p: f64,
    pub min_length: Limit,
    pub min_rank: Limit,
    pub max_relators_sufficient: Option<Limit>,
    pub max_relators_necessary: Option<Limit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub kind: &'static str,
    pub params: Params,
    pub lower: BoundReport,
    pub lower_rough: BoundReport,
    pub upper: Option<BoundReport>,
    pub upper_rough: Option<BoundReport>,
    pub limits: Option<Limits>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub kind: &'static str,
    pub params: Params,
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
}

impl EstimateReport {
    pub fn new(params: &ParamPoint, e: &Estimate) -> EstimateReport {
        EstimateReport {
            kind: "estimate",
            params: params.into(),
            successes: e.successes,
            trials: e.trials,
            estimate: e.point_estimate,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            confidence: e.confidence,
            seed: e.seed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Member {
    pub relator: usize,
    pub offset: usize,
    pub inverted: bool,
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReport {
    NotPowerFree { relator: usize, word: String },
    NotMinimal { first: usize, second: usize, words: [String; 2] },
    Piece { length: usize, piece: String, first: Member, second: Member },
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub index: usize,
    pub rank: u32,
    pub relators: Vec<String>,
    pub verdict: &'static str,
    pub failures: Vec<FailureReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub kind: &'static str,
    pub lambda: String,
    pub passed: usize,
    pub total: usize,
    pub presentations: Vec<PresentationReport>,
}

impl PresentationReport {
    pub fn new(index: usize, p: &Presentation, report: &CheckReport) -> Result<PresentationReport> {
        let rank = p.rank();
        let word = |i: usize| render_word(&p.relators()[i], rank);
        let member = |s: SymmetrizedWord| -> Result<Member> {
            Ok(Member {
                relator: s.relator,
                offset: s.offset,
                inverted: s.inverted,
                word: render_word(&symmetrized(p.relators(), s)?, rank),
            })
        };
        let failures = report
            .failures
            .iter()
            .map(|f| {
                Ok(match *f {
                    Failure::NotPowerFree { relator } => FailureReport::NotPowerFree { relator, word: word(relator) },
                    Failure::NotMinimal { first, second } => {
                        FailureReport::NotMinimal { first, second, words: [word(first), word(second)] }
                    }
                    Failure::Piece(w) => {
                        let start = symmetrized(p.relators(), w.first)?;
                        let piece = Word::from_reduced(start.letters()[..w.length].to_vec()).expect("prefix of a reduced word");
                        FailureReport::Piece {
                            length: w.length,
                            piece: render_word(&piece, rank),
                            first: member(w.first)?,
                            second: member(w.second)?,
                        }
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PresentationReport {
            index,
            rank,
            relators: (0..p.relators().len()).map(word).collect(),
            verdict: if report.passed() { "pass" } else { "fail" },
            failures,
        })
    }
}
