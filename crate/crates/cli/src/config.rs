//! Run configuration: a line-oriented text format.
//!
//! ```text
//! # comment
//! frame L M H
//! variant coupled            # or `printed`; optional, defaults to coupled
//! prop L : 101 150
//! prop L,M : 135 165
//! bins 100 150 200 250       # optional, enables the `dtmc` baseline
//! binlabels L M H            # optional, defaults to the frame labels
//! ```

use std::fmt::Write as _;

use belief_markov::{Anchor, AnchoredStateSpace, BinSpec, DistanceVariant, Frame, Interval};

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub space: AnchoredStateSpace<f64>,
    pub bins: Option<BinSpec<f64>>,
}

impl RunConfig {
    pub fn frame(&self) -> &Frame {
        self.space.frame()
    }

    pub fn variant(&self) -> DistanceVariant {
        self.space.variant()
    }

    pub fn with_variant(mut self, variant: DistanceVariant) -> Self {
        self.space = self.space.with_variant(variant);
        self
    }

    /// Canonical text: no comments, fixed directive order, single spaces.
    pub fn emit(&self) -> String {
        let frame = self.frame();
        let mut out = String::new();
        let _ = writeln!(out, "frame {}", frame.labels().join(" "));
        let _ = writeln!(out, "variant {}", self.variant());
        for anchor in self.space.anchors() {
            let _ = writeln!(
                out,
                "prop {} : {} {}",
                frame.members(anchor.proposition).join(","),
                anchor.interval.lo(),
                anchor.interval.hi()
            );
        }
        if let Some(bins) = &self.bins {
            let edges: Vec<String> = bins.edges().iter().map(f64::to_string).collect();
            let _ = writeln!(out, "bins {}", edges.join(" "));
            let _ = writeln!(out, "binlabels {}", bins.frame().labels().join(" "));
        }
        out
    }
}

fn parse_real(token: &str, line: usize) -> Result<f64, ParseError> {
    let value: f64 = token
        .parse()
        .map_err(|_| ParseError::new(line, format!("`{token}` is not a number")))?;
    if !value.is_finite() {
        return Err(ParseError::new(line, format!("`{token}` is not finite")));
    }
    Ok(value)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ParseError> {
    let mut frame: Option<(Frame, usize)> = None;
    let mut variant: Option<DistanceVariant> = None;
    let mut anchors: Vec<Anchor<f64>> = Vec::new();
    let mut bins: Option<(Vec<f64>, usize)> = None;
    let mut bin_labels: Option<(Vec<String>, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (directive, rest) = content
            .split_once(char::is_whitespace)
            .map_or((content, ""), |(d, r)| (d, r.trim()));
        let fail = |msg: String| ParseError::new(line, msg);
        match directive {
            "frame" => {
                if frame.is_some() {
                    return Err(fail("`frame` given more than once".into()));
                }
                let parsed =
                    Frame::new(rest.split_whitespace()).map_err(|e| fail(e.to_string()))?;
                frame = Some((parsed, line));
            }
            "variant" => {
                if variant.is_some() {
                    return Err(fail("`variant` given more than once".into()));
                }
                variant = Some(rest.parse().map_err(fail)?);
            }
            "prop" => {
                let (frame, _) = frame
                    .as_ref()
                    .ok_or_else(|| fail("`prop` before `frame`".into()))?;
                let (members, bounds) = rest
                    .split_once(':')
                    .ok_or_else(|| fail("expected `prop <members> : <lo> <hi>`".into()))?;
                let proposition = frame
                    .parse_proposition(members.trim())
                    .map_err(|e| fail(e.to_string()))?;
                let bounds: Vec<&str> = bounds.split_whitespace().collect();
                let [lo, hi] = bounds.as_slice() else {
                    return Err(fail("expected exactly two bounds".into()));
                };
                let interval = Interval::new(parse_real(lo, line)?, parse_real(hi, line)?)
                    .map_err(|e| fail(e.to_string()))?;
                if anchors.iter().any(|a| a.proposition == proposition) {
                    return Err(fail(format!(
                        "duplicate proposition {}",
                        frame.display(proposition)
                    )));
                }
                anchors.push(Anchor {
                    proposition,
                    interval,
                });
            }
            "bins" => {
                if bins.is_some() {
                    return Err(fail("`bins` given more than once".into()));
                }
                let edges = rest
                    .split_whitespace()
                    .map(|t| parse_real(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                bins = Some((edges, line));
            }
            "binlabels" => {
                if bin_labels.is_some() {
                    return Err(fail("`binlabels` given more than once".into()));
                }
                bin_labels = Some((rest.split_whitespace().map(String::from).collect(), line));
            }
            other => return Err(fail(format!("unknown directive `{other}`"))),
        }
    }

    let last_line = text.lines().count().max(1);
    let (frame, frame_line) =
        frame.ok_or_else(|| ParseError::new(last_line, "missing `frame` directive"))?;
    let space = AnchoredStateSpace::new(frame.clone(), anchors, variant.unwrap_or_default())
        .map_err(|e| ParseError::new(frame_line, e.to_string()))?;

    let bins = match (bins, bin_labels) {
        (None, None) => None,
        (None, Some((_, line))) => {
            return Err(ParseError::new(line, "`binlabels` without `bins`"));
        }
        (Some((edges, line)), labels) => {
            let (bin_frame, line) = match labels {
                Some((labels, label_line)) => (
                    Frame::new(labels).map_err(|e| ParseError::new(label_line, e.to_string()))?,
                    label_line,
                ),
                None => (frame, line),
            };
            Some(BinSpec::new(edges, bin_frame).map_err(|e| ParseError::new(line, e.to_string()))?)
        }
    };

    Ok(RunConfig { space, bins })
}
