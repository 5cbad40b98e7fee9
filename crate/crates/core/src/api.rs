//! The solve request/response model shared by the command-line tool and the
//! HTTP service. Both render payloads through [`payload_json`], so identical
//! requests produce byte-identical JSON.

use serde::{Deserialize, Serialize};

use crate::af::{ArgSet, ArgumentationFramework};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::format::FrameworkJson;
use crate::power::{ExactValue, PowerIndex};
use crate::properties::{check_evaluated, CheckOptions, Evaluation, PropertyId, PropertyReport};
use crate::ranking::{Fixed5, PiScore, Precision};
use crate::semantics::{labelling_from_inset, ExtensionFamily, Semantics};
use crate::HARD_MAX_ARGS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Extensions,
    Labellings,
    Rank,
    Properties,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::Extensions => "extensions",
            Task::Labellings => "labellings",
            Task::Rank => "rank",
            Task::Properties => "properties",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveOptions {
    #[serde(default)]
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_args: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveRequest {
    pub framework: FrameworkJson,
    pub semantics: Semantics,
    pub task: Task,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<PowerIndex>,
    #[serde(default)]
    pub options: SolveOptions,
}

impl SolveRequest {
    /// Effective argument limit: the request's own `max_args` may only lower
    /// the caller's cap.
    pub fn limit(&self, cap: usize) -> Result<usize> {
        let cap = cap.min(HARD_MAX_ARGS);
        match self.options.max_args {
            Some(m) if m > HARD_MAX_ARGS => Err(Error::InvalidRequest(format!(
                "max_args {m} exceeds the hard cap of {HARD_MAX_ARGS}"
            ))),
            Some(m) => Ok(m.min(cap)),
            None => Ok(cap),
        }
    }

    /// Index to use, enforcing that `rank` names one and that enumeration
    /// tasks do not.
    pub fn resolved_index(&self) -> Result<Option<PowerIndex>> {
        match (self.task, self.index) {
            (Task::Rank, None) => Err(Error::InvalidRequest("task rank requires an index".into())),
            (Task::Rank, Some(i)) => Ok(Some(i)),
            (Task::Properties, i) => Ok(Some(i.unwrap_or(PowerIndex::Shapley))),
            (Task::Extensions | Task::Labellings, Some(_)) => Err(Error::InvalidRequest(format!(
                "task {} does not take an index",
                self.task.as_str()
            ))),
            (_, None) => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreRow {
    pub argument: String,
    pub pi_in: String,
    pub pi_out: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_in_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_out_exact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Shade {
    pub argument: String,
    pub shade: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabellingRow {
    #[serde(rename = "in")]
    pub in_set: Vec<String>,
    pub out: Vec<String>,
    pub undec: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SolveResult {
    Extensions {
        count: usize,
        extensions: Vec<Vec<String>>,
    },
    Labellings {
        count: usize,
        labellings: Vec<LabellingRow>,
    },
    Rank {
        scores: Vec<ScoreRow>,
        ranking: Vec<Vec<String>>,
        rendered: String,
        shades: Vec<Shade>,
    },
    Properties {
        reports: Vec<PropertyReport>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolvePayload {
    pub task: Task,
    pub semantics: Semantics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<PowerIndex>,
    pub result: SolveResult,
    pub warnings: Vec<String>,
}

/// Compact JSON for a payload.
pub fn payload_json(payload: &SolvePayload) -> String {
    serde_json::to_string(payload).expect("payloads contain only strings and lists")
}

/// Ratio text `p/q`, or just `p` for integers.
pub fn exact_string(x: &ExactValue) -> String {
    x.to_string()
}

pub fn score_rows(scores: &[PiScore], exact: bool) -> Vec<ScoreRow> {
    scores
        .iter()
        .map(|s| ScoreRow {
            argument: s.argument.to_string(),
            pi_in: s.pi_in_5dp.to_string(),
            pi_out: s.pi_out_5dp.to_string(),
            pi_in_exact: exact.then(|| exact_string(&s.pi_in)),
            pi_out_exact: exact.then(|| exact_string(&s.pi_out)),
        })
        .collect()
}

fn names(af: &ArgumentationFramework, s: ArgSet) -> Vec<String> {
    af.names(s).into_iter().map(|a| a.to_string()).collect()
}

fn family_warnings(
    af: &ArgumentationFramework,
    semantics: Semantics,
    family: &ExtensionFamily,
    warnings: &mut Vec<String>,
) {
    if af.is_empty() {
        warnings.push("framework has no arguments".into());
    }
    if family.is_empty() {
        warnings.push(format!("no {semantics} extension"));
    }
}

/// Deegan-Packel under semantics whose family always contains the empty set.
pub fn degenerate_index_warning(semantics: Semantics, index: PowerIndex) -> Option<String> {
    let always_empty = matches!(semantics, Semantics::ConflictFree | Semantics::Admissible);
    (index == PowerIndex::DeeganPackel && always_empty).then(|| {
        format!(
            "deegan-packel is uninformative under {semantics}: the empty set is an extension, \
             so it is the only minimal winning coalition and every value is 0"
        )
    })
}

/// Runs a request against a framework limit `cap` and a time budget.
pub fn solve(request: &SolveRequest, cap: usize, budget: &Budget) -> Result<SolvePayload> {
    let index = request.resolved_index()?;
    let af = request.framework.to_framework(request.limit(cap)?)?;
    solve_framework(
        &af,
        request.semantics,
        request.task,
        index,
        request.options.exact,
        budget,
    )
}

/// Like [`solve`] for an already parsed framework, which must already respect
/// the caller's limit.
pub fn solve_framework(
    af: &ArgumentationFramework,
    semantics: Semantics,
    task: Task,
    index: Option<PowerIndex>,
    exact: bool,
    budget: &Budget,
) -> Result<SolvePayload> {
    let precision = if exact {
        Precision::Exact
    } else {
        Precision::Rounded
    };
    let mut warnings = Vec::new();
    let result = match task {
        Task::Extensions | Task::Labellings => {
            let family = crate::semantics::enumerate_within(af, semantics, budget)?;
            family_warnings(af, semantics, &family, &mut warnings);
            if task == Task::Extensions {
                SolveResult::Extensions {
                    count: family.len(),
                    extensions: family.iter().map(|e| names(af, e)).collect(),
                }
            } else {
                let labellings = family
                    .iter()
                    .map(|e| {
                        let l = labelling_from_inset(af, e)?;
                        Ok(LabellingRow {
                            in_set: names(af, l.in_set),
                            out: names(af, l.out_set),
                            undec: names(af, l.undec_set),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                SolveResult::Labellings {
                    count: labellings.len(),
                    labellings,
                }
            }
        }
        Task::Rank => {
            let index = index.ok_or_else(|| Error::InvalidRequest("task rank requires an index".into()))?;
            let eval = Evaluation::within(af, semantics, index, precision, budget)?;
            family_warnings(af, semantics, &eval.extensions, &mut warnings);
            warnings.extend(degenerate_index_warning(semantics, index));
            SolveResult::Rank {
                scores: score_rows(&eval.scores, exact),
                ranking: eval
                    .ranking
                    .classes()
                    .iter()
                    .map(|c| c.iter().map(|a| a.to_string()).collect())
                    .collect(),
                rendered: eval.ranking.render(),
                shades: eval
                    .ranking
                    .greyscale()
                    .into_iter()
                    .map(|(a, g)| Shade {
                        argument: a.to_string(),
                        shade: Fixed5::from_f64(g).to_string(),
                    })
                    .collect(),
            }
        }
        Task::Properties => {
            let index = index.unwrap_or(PowerIndex::Shapley);
            let eval = Evaluation::within(af, semantics, index, precision, budget)?;
            family_warnings(af, semantics, &eval.extensions, &mut warnings);
            warnings.extend(degenerate_index_warning(semantics, index));
            let options = CheckOptions {
                precision,
                ..CheckOptions::default()
            };
            let reports = PropertyId::ALL
                .into_iter()
                .map(|p| {
                    budget.check("properties")?;
                    check_evaluated(&eval, p, &options)
                })
                .collect::<Result<Vec<_>>>()?;
            SolveResult::Properties { reports }
        }
    };
    Ok(SolvePayload {
        task,
        semantics,
        index,
        result,
        warnings,
    })
}
