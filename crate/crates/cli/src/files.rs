//! On-disk formats: state files, star records, and sweep trajectories.

use serde::{Deserialize, Serialize};
use stellar_core::dynamics::TrajectoryRecord;
use stellar_core::{Complex64, FullRepresentation, MixedSpinState, SetLabel, Star};

use crate::Failure;

/// File-level norm tolerance. Anything further off is renormalized with a
/// warning.
pub const FILE_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub two_s: u32,
    pub d_down: Vec<[f64; 2]>,
    pub d_up: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("malformed state file: {e}")))
    }

    pub fn from_state(state: &MixedSpinState) -> Self {
        let pairs = |v: &[Complex64]| v.iter().map(|c| [c.re, c.im]).collect();
        StateFile {
            two_s: state.twice_s(),
            d_down: pairs(state.d_down()),
            d_up: pairs(state.d_up()),
        }
    }

    /// Checks shape and norm. Returns the state and, if it had to be
    /// renormalized, the original squared norm.
    pub fn into_state(self) -> Result<(MixedSpinState, Option<f64>), Failure> {
        if self.two_s == 0 {
            return Err(Failure::usage("two_s must be at least 1".to_string()));
        }
        let len = self.two_s as usize + 1;
        for (name, v) in [("d_down", &self.d_down), ("d_up", &self.d_up)] {
            if v.len() != len {
                return Err(Failure::usage(format!(
                    "{name} has {} entries, expected two_s + 1 = {len}",
                    v.len()
                )));
            }
        }
        let complex = |v: &[[f64; 2]]| {
            v.iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect::<Vec<_>>()
        };
        let (down, up) = (complex(&self.d_down), complex(&self.d_up));
        let norm_sqr: f64 = down.iter().chain(&up).map(|c| c.norm_sqr()).sum();
        if !norm_sqr.is_finite() {
            return Err(Failure::invalid_state(
                "amplitudes are not finite".to_string(),
            ));
        }
        if norm_sqr == 0.0 {
            return Err(Failure::invalid_state("zero state".to_string()));
        }
        let state = MixedSpinState::new_normalized(self.two_s, down, up)
            .map_err(|e| Failure::invalid_state(e.to_string()))?;
        let drift = (norm_sqr.sqrt() - 1.0).abs();
        Ok((state, (drift > FILE_NORM_TOL).then_some(norm_sqr)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarMetadata {
    pub two_s: u32,
    pub t: Option<f64>,
    pub varphi: Option<f64>,
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarEntry {
    pub set: String,
    pub theta: f64,
    pub phi: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarRecordFile {
    pub metadata: StarMetadata,
    pub stars: Vec<StarEntry>,
}

impl StarRecordFile {
    /// Upper stars, then lower, then the pseudo star.
    pub fn from_representation(rep: &FullRepresentation, metadata: StarMetadata) -> Self {
        let entry = |set: SetLabel, s: &Star| StarEntry {
            set: set.as_str().to_string(),
            theta: s.theta,
            phi: s.phi,
            multiplicity: s.multiplicity,
        };
        let mut stars = Vec::new();
        for (set, group) in [
            (SetLabel::Upper, &rep.upper_stars),
            (SetLabel::Lower, &rep.lower_stars),
        ] {
            if let Some(group) = group {
                stars.extend(group.stars().iter().map(|s| entry(set, s)));
            }
        }
        stars.push(entry(SetLabel::Pseudo, &rep.pseudo_star));
        StarRecordFile { metadata, stars }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRow {
    pub t: f64,
    pub varphi: f64,
    pub delta: f64,
    pub set: String,
    pub star_index: usize,
    pub theta: f64,
    pub phi: f64,
}

impl From<&TrajectoryRecord> for SweepRow {
    fn from(r: &TrajectoryRecord) -> Self {
        SweepRow {
            t: r.t,
            varphi: r.varphi,
            delta: r.delta,
            set: r.set.as_str().to_string(),
            star_index: r.star_index,
            theta: r.theta,
            phi: r.phi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepMetadata {
    pub family: String,
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub endpoints: String,
    pub delta: f64,
    pub varphi: Option<f64>,
    pub t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub metadata: SweepMetadata,
    pub records: Vec<SweepRow>,
}

impl SweepFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(["t", "varphi", "delta", "set", "star_index", "theta", "phi"])
            .expect("in-memory write");
    }
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn sweep_from_csv(text: &str) -> Result<Vec<SweepRow>, Failure> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("malformed sweep csv: {e}")))
}

/// A marker to plot: `(set, theta, phi, multiplicity)`.
pub type PlotPoint = (SetLabel, f64, f64, u32);

/// Reads a star record file, a JSON sweep, or a CSV sweep.
pub fn plot_points(text: &str) -> Result<Vec<PlotPoint>, Failure> {
    let set = |s: &str| s.parse::<SetLabel>().map_err(Failure::usage);
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Failure::usage(format!("malformed JSON: {e}")))?;
        if value.get("stars").is_some() {
            let file: StarRecordFile = serde_json::from_value(value)
                .map_err(|e| Failure::usage(format!("malformed star file: {e}")))?;
            return file
                .stars
                .iter()
                .map(|s| Ok((set(&s.set)?, s.theta, s.phi, s.multiplicity)))
                .collect();
        }
        let file: SweepFile = serde_json::from_value(value)
            .map_err(|e| Failure::usage(format!("malformed sweep file: {e}")))?;
        return file
            .records
            .iter()
            .map(|r| Ok((set(&r.set)?, r.theta, r.phi, 1)))
            .collect();
    }
    sweep_from_csv(text)?
        .iter()
        .map(|r| Ok((set(&r.set)?, r.theta, r.phi, 1)))
        .collect()
}
