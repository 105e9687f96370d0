//! Instance and solution file formats.
//!
//! Instances are JSON (`{"P": [[x, y], …], "S": [[x, y], …]}` plus optional
//! metadata) or a terse text form: a header line `n m`, then `n` terminal
//! lines and `m` candidate lines, each `x y`. Blank lines and lines starting
//! with `#` are ignored in the text form.
//!
//! Solutions are canonical JSON: keys sorted, edges in ascending index
//! order, the bottleneck as a plain length (square root of the internal
//! squared value) written in shortest round-trip form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::emst::WeightedEdge;
use crate::geometry::{squared_distance, Instance, Point};
use crate::solver::{bottleneck, Attachment, FullSteinerTree, SolveReport};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error(transparent)]
    Invalid(#[from] crate::Error),
}

/// Field order is the canonical (sorted) key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    #[serde(rename = "P")]
    pub terminals: Vec<[f64; 2]>,
    #[serde(rename = "S")]
    pub steiner: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_bottleneck: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceDocument {
    pub fn from_instance(instance: &Instance<f64>) -> Self {
        let pairs = |pts: &[Point<f64>]| pts.iter().map(|p| [p.x, p.y]).collect();
        InstanceDocument {
            terminals: pairs(instance.terminals()),
            steiner: pairs(instance.steiner()),
            expected_bottleneck: None,
            name: None,
            seed: None,
        }
    }

    pub fn to_instance(&self) -> Result<Instance<f64>, ParseError> {
        let points = |pairs: &[[f64; 2]]| pairs.iter().map(|&[x, y]| Point::new(x, y)).collect();
        Ok(Instance::new(points(&self.terminals), points(&self.steiner))?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Parses either format, choosing JSON when the text starts with `{`.
pub fn parse_instance(text: &str) -> Result<Instance<f64>, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json_instance(text)
    } else {
        parse_text_instance(text)
    }
}

pub fn parse_instance_document(text: &str) -> Result<InstanceDocument, ParseError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_json_instance(text: &str) -> Result<Instance<f64>, ParseError> {
    parse_instance_document(text)?.to_instance()
}

pub fn parse_text_instance(text: &str) -> Result<Instance<f64>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError::Syntax {
        line: 1,
        message: "missing header `n m`".into(),
    })?;
    let counts: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| ParseError::Syntax {
            line: header_line,
            message: format!("bad header: {e}"),
        })?;
    let [n, m] = counts[..] else {
        return Err(ParseError::Syntax {
            line: header_line,
            message: "header must be `n m`".into(),
        });
    };

    let mut read = |count: usize, set: &str| -> Result<Vec<Point<f64>>, ParseError> {
        let mut out = Vec::with_capacity(count);
        for index in 0..count {
            let (line, content) = lines.next().ok_or_else(|| ParseError::Syntax {
                line: header_line,
                message: format!("expected {count} points for {set}, found {index}"),
            })?;
            let coords: Vec<f64> = content
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| ParseError::Syntax {
                    line,
                    message: format!("bad coordinate for {set}[{index}]: {e}"),
                })?;
            let [x, y] = coords[..] else {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("{set}[{index}] needs exactly two coordinates"),
                });
            };
            if !x.is_finite() || !y.is_finite() {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("non-finite coordinate for {set}[{index}]"),
                });
            }
            out.push(Point::new(x, y));
        }
        Ok(out)
    };
    let terminals = read(n, "P")?;
    let steiner = read(m, "S")?;
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::Syntax {
            line,
            message: "unexpected trailing content".into(),
        });
    }
    Ok(Instance::new(terminals, steiner)?)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingsDocument {
    pub assemble_ns: u64,
    pub preprocess_ns: u64,
    pub search_ns: u64,
}

/// Field order is the canonical (sorted) key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    /// Bottleneck length (not squared).
    pub bottleneck: f64,
    pub candidate_count: usize,
    pub component: usize,
    /// `[P index, S index]`, ascending by `P` index.
    pub external_edges: Vec<[usize; 2]>,
    /// `[S index, S index]` with the smaller index first, ascending.
    pub skeleton_edges: Vec<[usize; 2]>,
    pub steiner_points: Vec<usize>,
    pub threshold_index: usize,
    pub timings: TimingsDocument,
}

impl SolutionDocument {
    pub fn from_report(report: &SolveReport<f64>) -> Self {
        let tree = &report.tree;
        let skeleton_edges = tree.skeleton_edges.iter().map(|e| [e.u, e.v]).collect();
        SolutionDocument {
            bottleneck: report.lambda_star.length(),
            candidate_count: report.candidate_count,
            component: report.component,
            external_edges: tree
                .external_edges
                .iter()
                .enumerate()
                .map(|(t, a)| [t, a.steiner])
                .collect(),
            skeleton_edges,
            steiner_points: tree.steiner_points.clone(),
            threshold_index: report.threshold_index,
            timings: TimingsDocument {
                assemble_ns: report.timings.assemble_ns,
                preprocess_ns: report.timings.preprocess_ns,
                search_ns: report.timings.search_ns,
            },
        }
    }

    /// Rebuilds the tree against the instance and checks its invariants.
    pub fn to_tree(&self, instance: &Instance<f64>) -> Result<FullSteinerTree<f64>, String> {
        let (terminals, steiner) = (instance.terminals(), instance.steiner());
        let in_range = |s: usize| {
            if s < steiner.len() {
                Ok(s)
            } else {
                Err(format!("S index {s} out of range"))
            }
        };
        let skeleton_edges = self
            .skeleton_edges
            .iter()
            .map(|&[u, v]| {
                let (u, v) = (in_range(u)?, in_range(v)?);
                if u == v {
                    return Err(format!("self-loop on S[{u}]"));
                }
                Ok(WeightedEdge::new(u, v, squared_distance(steiner[u], steiner[v])))
            })
            .collect::<Result<Vec<_>, String>>()?;
        if self.external_edges.len() != terminals.len() {
            return Err(format!(
                "{} external edges for {} terminals",
                self.external_edges.len(),
                terminals.len()
            ));
        }
        let external_edges = self
            .external_edges
            .iter()
            .enumerate()
            .map(|(t, &[p, s])| {
                if p != t {
                    return Err(format!("external edge {t} names terminal {p}"));
                }
                let s = in_range(s)?;
                Ok(Attachment {
                    steiner: s,
                    w: squared_distance(terminals[t], steiner[s]),
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        let mut tree = FullSteinerTree {
            steiner_points: self.steiner_points.clone(),
            skeleton_edges,
            external_edges,
            bottleneck: crate::geometry::SquaredLength::zero(),
        };
        tree.bottleneck = bottleneck(&tree);
        tree.validate(terminals, steiner)?;
        Ok(tree)
    }
}

pub fn emit_solution(report: &SolveReport<f64>) -> String {
    serde_json::to_string(&SolutionDocument::from_report(report)).expect("plain data serializes")
}

pub fn parse_solution(text: &str) -> Result<SolutionDocument, ParseError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;

    #[test]
    fn json_and_text_forms_agree() {
        let a = parse_instance(r#"{"P":[[1,0]],"S":[[0,0]]}"#).unwrap();
        let b = parse_instance("1 1\n1 0\n0 0").unwrap();
        assert_eq!(a, b);
        assert_eq!((a.n(), a.m()), (1, 1));
    }

    #[test]
    fn text_form_tolerates_comments() {
        let inst = parse_text_instance("# two terminals\n2 1\n\n-1 0\n1 0\n# steiner\n0 0.5\n").unwrap();
        assert_eq!(inst.steiner(), &[Point::new(0.0, 0.5)]);
    }

    #[test]
    fn validation_errors_name_the_culprit() {
        let err = parse_instance(r#"{"P":[[0,0]],"S":[[0,0]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("P and S must be disjoint"), "{err}");
        let err = parse_instance(r#"{"P":[],"S":[[0,0]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "P must be non-empty");
        let err = parse_instance(r#"{"P":[[0,0]],"S":[[1,1e999]]}"#).unwrap_err();
        assert!(matches!(err, ParseError::Json(_)), "{err}");
        let err = parse_instance(r#"{"P":[[0,0]],"S":[[1]]}"#).unwrap_err();
        assert!(matches!(err, ParseError::Json(_)));
        let err = parse_instance("1 1\n1 NaN\n0 0").unwrap_err();
        assert_eq!(err.to_string(), "line 2: non-finite coordinate for P[0]");
        let err = parse_instance("1 1\n1 inf\n0 0").unwrap_err();
        assert!(err.to_string().starts_with("line 2:"));
        let err = parse_instance("1 1\n1 0 3\n0 0").unwrap_err();
        assert_eq!(err.to_string(), "line 2: P[0] needs exactly two coordinates");
        let err = parse_instance("1 2\n1 0\n0 0").unwrap_err();
        assert!(err.to_string().contains("expected 2 points for S"));
        let err = parse_instance("1 1\n1 0\n0 0\n5 5").unwrap_err();
        assert_eq!(err.to_string(), "line 4: unexpected trailing content");
        let err = parse_instance("1\n1 0").unwrap_err();
        assert_eq!(err.to_string(), "line 1: header must be `n m`");
        let err = parse_instance("0 1\n0 0").unwrap_err();
        assert_eq!(err.to_string(), "P must be non-empty");
    }

    #[test]
    fn single_edge_solution_bytes() {
        let inst = parse_instance(r#"{"P":[[1,0]],"S":[[0,0]]}"#).unwrap();
        let (p, s) = inst.into_parts();
        let mut report = solve(p, s).unwrap();
        report.timings = Default::default();
        assert_eq!(
            emit_solution(&report),
            concat!(
                r#"{"bottleneck":1.0,"candidate_count":1,"component":0,"external_edges":[[0,0]],"#,
                r#""skeleton_edges":[],"steiner_points":[0],"threshold_index":1,"#,
                r#""timings":{"assemble_ns":0,"preprocess_ns":0,"search_ns":0}}"#
            )
        );
    }

    #[test]
    fn collinear_solution_round_trips() {
        let inst = parse_instance("2 3\n-1 0\n3 0\n0 0\n1 0\n2 0").unwrap();
        let (p, s) = inst.clone().into_parts();
        let report = solve(p, s).unwrap();
        let text = emit_solution(&report);
        let doc = parse_solution(&text).unwrap();
        assert_eq!(doc.bottleneck, 1.0);
        assert_eq!(doc.skeleton_edges, vec![[0, 1], [1, 2]]);
        assert_eq!(doc, SolutionDocument::from_report(&report));
        assert_eq!(doc.to_tree(&inst).unwrap(), report.tree);
    }

    #[test]
    fn instance_document_keeps_metadata() {
        let text = r#"{"P":[[1.5,0.0]],"S":[[0.0,0.0]],"expected_bottleneck":1.5,"name":"demo","seed":3}"#;
        let doc = parse_instance_document(text).unwrap();
        assert_eq!(doc.name.as_deref(), Some("demo"));
        assert_eq!(doc.to_json(), text);
    }
}
