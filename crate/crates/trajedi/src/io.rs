//! Trajectory CSV files.
//!
//! Format: header `traj_id,seq,x,y[,ts]`, one row per point, rows sorted by
//! `(traj_id, seq)`, `seq` 0-based and consecutive within a trajectory,
//! UTF-8 with LF line endings. The optional `ts` column is parsed and
//! ignored. Saving then loading reproduces ids, point order, and
//! coordinates exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Dataset, Point, Trajectory};

/// Loads a dataset from a trajectory CSV file.
pub fn load_csv(path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    parse_csv(&text, path)
}

/// Parses trajectory CSV text. `origin` is used in error messages only.
pub fn parse_csv(text: &str, origin: &Path) -> Result<Dataset> {
    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        None => return Ok(Dataset::empty()),
        Some((_, h)) => h.trim_end_matches('\r'),
    };
    if header != "traj_id,seq,x,y" && header != "traj_id,seq,x,y,ts" {
        return Err(Error::parse(
            origin,
            1,
            format!("expected header 'traj_id,seq,x,y[,ts]', got '{header}'"),
        ));
    }

    let mut trajectories: Vec<(String, Vec<Point>)> = Vec::new();
    let mut prev: Option<(String, u64)> = None;
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 && fields.len() != 5 {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected 4 or 5 fields, got {}", fields.len()),
            ));
        }
        let id = fields[0];
        if id.is_empty() {
            return Err(Error::parse(origin, line_no, "empty traj_id"));
        }
        let seq: u64 = fields[1].parse().map_err(|_| {
            Error::parse(origin, line_no, format!("invalid seq '{}'", fields[1]))
        })?;
        let x: f64 = fields[2].parse().map_err(|_| {
            Error::parse(origin, line_no, format!("non-numeric x '{}'", fields[2]))
        })?;
        let y: f64 = fields[3].parse().map_err(|_| {
            Error::parse(origin, line_no, format!("non-numeric y '{}'", fields[3]))
        })?;
        let point = Point::new(x, y)
            .map_err(|_| Error::parse(origin, line_no, format!("non-finite point ({x}, {y})")))?;

        match &prev {
            Some((prev_id, prev_seq)) if prev_id == id => {
                if seq == *prev_seq {
                    return Err(Error::parse(
                        origin,
                        line_no,
                        format!("duplicate (traj_id, seq) pair ('{id}', {seq})"),
                    ));
                }
                if seq != prev_seq + 1 {
                    return Err(Error::parse(
                        origin,
                        line_no,
                        format!("seq {seq} for '{id}' does not follow {prev_seq} (rows must be sorted and consecutive)"),
                    ));
                }
                trajectories.last_mut().unwrap().1.push(point);
            }
            _ => {
                if let Some((prev_id, _)) = &prev {
                    if id <= prev_id.as_str() {
                        return Err(Error::parse(
                            origin,
                            line_no,
                            format!("rows not sorted by traj_id: '{id}' after '{prev_id}'"),
                        ));
                    }
                }
                if seq != 0 {
                    return Err(Error::parse(
                        origin,
                        line_no,
                        format!("first seq for '{id}' must be 0, got {seq}"),
                    ));
                }
                trajectories.push((id.to_string(), vec![point]));
            }
        }
        prev = Some((id.to_string(), seq));
    }

    let trajectories = trajectories
        .into_iter()
        .map(|(id, points)| Trajectory::new(id, points))
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(trajectories)
}

/// Writes a dataset as trajectory CSV.
pub fn save_csv(dataset: &Dataset, path: &Path) -> Result<()> {
    fs::write(path, render_csv(dataset))?;
    Ok(())
}

/// Renders a dataset to trajectory CSV text.
pub fn render_csv(dataset: &Dataset) -> String {
    let mut out = String::from("traj_id,seq,x,y\n");
    for t in dataset.trajectories() {
        for (seq, p) in t.points().iter().enumerate() {
            // `{}` on f64 is the shortest representation that parses back to
            // the same bits, so round-trips are exact.
            writeln!(out, "{},{},{},{}", t.id(), seq, p.x, p.y).unwrap();
        }
    }
    out
}
