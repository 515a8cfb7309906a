//! CSV tables. Reals are written with `{}` formatting, the shortest
//! decimal string that parses back to the same `f64`.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::analysis::classify::ClassLabel;
use crate::analysis::cycles::CycleCandidate;
use crate::grids::{BasinGrid, BifurcationGrid};
use crate::io::IoError;
use crate::map::{State, Trajectory};
use crate::stochastic::{Regime, StochasticRun};

/// Basin cells attracted to the mirror image of the reference attractor.
pub const MIRROR_WQA: &str = "WQA-";

fn real(v: f64) -> String {
    format!("{v}")
}

fn writer(path: &Path) -> Result<csv::Writer<File>, IoError> {
    Ok(csv::Writer::from_writer(File::create(path).map_err(|e| IoError::at(path, e))?))
}

fn finish(mut w: csv::Writer<File>, path: &Path) -> Result<(), IoError> {
    w.flush().map_err(|e| IoError::at(path, e))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> IoError + '_ {
    move |e| IoError::Csv { path: path.display().to_string(), source: e }
}

/// `t,x,y,branch`; `branch` is empty for `F` and `C`.
pub fn write_trajectory(path: &Path, traj: &Trajectory) -> Result<(), IoError> {
    let mut w = writer(path)?;
    let e = csv_err(path);
    w.write_record(["t", "x", "y", "branch"]).map_err(&e)?;
    for (t, (s, br)) in traj.states.iter().zip(&traj.branches).enumerate() {
        let br = br.map(|b| b.as_char().to_string()).unwrap_or_default();
        w.write_record([t.to_string(), real(s.x), real(s.y), br]).map_err(&e)?;
    }
    finish(w, path)
}

/// Label text of a basin cell as written to CSV.
pub fn basin_label_text(label: ClassLabel, mirrored: bool) -> &'static str {
    if mirrored && label == ClassLabel::Wqa {
        MIRROR_WQA
    } else {
        label.name()
    }
}

/// `i,j,x0,y0,label,limit_u`, rows in cell order (`j` outer).
pub fn write_basin(path: &Path, grid: &BasinGrid) -> Result<(), IoError> {
    let mirror = grid.mirror_flags();
    let mut w = writer(path)?;
    let e = csv_err(path);
    w.write_record(["i", "j", "x0", "y0", "label", "limit_u"]).map_err(&e)?;
    for j in 0..grid.spec.ny {
        for i in 0..grid.spec.nx {
            let k = j * grid.spec.nx + i;
            let label = grid.cells[k];
            let s = grid.spec.point(i, j);
            let limit = label.limit().map(real).unwrap_or_default();
            w.write_record([i.to_string(), j.to_string(), real(s.x), real(s.y), basin_label_text(label, mirror[k]).into(), limit])
                .map_err(&e)?;
        }
    }
    finish(w, path)
}

/// One parsed row of a basin table.
#[derive(Debug, Clone, PartialEq)]
pub struct BasinRow {
    pub i: usize,
    pub j: usize,
    pub x0: f64,
    pub y0: f64,
    pub label: String,
    pub limit_u: Option<f64>,
}

pub fn read_basin(path: &Path) -> Result<Vec<BasinRow>, IoError> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err(path))?;
        let bad = |what: &str| IoError::Parse { path: path.display().to_string(), line: line + 2, what: what.to_string() };
        let field = |k: usize| rec.get(k).ok_or_else(|| bad("missing column"));
        let limit = field(5)?;
        rows.push(BasinRow {
            i: field(0)?.parse().map_err(|_| bad("i"))?,
            j: field(1)?.parse().map_err(|_| bad("j"))?,
            x0: field(2)?.parse().map_err(|_| bad("x0"))?,
            y0: field(3)?.parse().map_err(|_| bad("y0"))?,
            label: field(4)?.to_string(),
            limit_u: if limit.is_empty() { None } else { Some(limit.parse().map_err(|_| bad("limit_u"))?) },
        });
    }
    Ok(rows)
}

/// `x,y` point list (attractor overlays).
pub fn write_points(path: &Path, points: &[State]) -> Result<(), IoError> {
    let mut w = writer(path)?;
    let e = csv_err(path);
    w.write_record(["x", "y"]).map_err(&e)?;
    for s in points {
        w.write_record([real(s.x), real(s.y)]).map_err(&e)?;
    }
    finish(w, path)
}

pub fn read_points(path: &Path) -> Result<Vec<State>, IoError> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err(path))?;
        let parse = |k: usize| -> Result<f64, IoError> {
            rec.get(k).and_then(|v| v.parse().ok()).ok_or_else(|| IoError::Parse {
                path: path.display().to_string(),
                line: line + 2,
                what: "x,y".into(),
            })
        };
        out.push(State::new(parse(0)?, parse(1)?));
    }
    Ok(out)
}

/// `i,j,b,c,label,region`.
pub fn write_bifurcation(path: &Path, grid: &BifurcationGrid) -> Result<(), IoError> {
    let mut w = writer(path)?;
    let e = csv_err(path);
    w.write_record(["i", "j", "b", "c", "label", "region"]).map_err(&e)?;
    for j in 0..grid.spec.nc {
        for i in 0..grid.spec.nb {
            w.write_record([
                i.to_string(),
                j.to_string(),
                real(grid.spec.b(i)),
                real(grid.spec.c(j)),
                grid.cell(i, j).name().to_string(),
                grid.region(i, j).to_string(),
            ])
            .map_err(&e)?;
        }
    }
    finish(w, path)
}

/// `sequence,k,eig1_re,eig1_im,eig2_re,eig2_im,unit_eig,admissible`.
pub fn write_cycles(path: &Path, cycles: &[CycleCandidate]) -> Result<(), IoError> {
    let mut w = writer(path)?;
    let e = csv_err(path);
    w.write_record(["sequence", "k", "eig1_re", "eig1_im", "eig2_re", "eig2_im", "unit_eig", "admissible"]).map_err(&e)?;
    for c in cycles {
        let [(r1, i1), (r2, i2)] = c.eigen.parts();
        w.write_record([
            c.sequence.clone(),
            c.k.to_string(),
            real(r1),
            real(i1),
            real(r2),
            real(i2),
            c.unit_eigenvalue.to_string(),
            c.admissible.to_string(),
        ])
        .map_err(&e)?;
    }
    finish(w, path)
}

/// `t,delta,d,F,P,x,regime`; `regime` is empty when no labels are given.
pub fn write_stochastic(path: &Path, run: &StochasticRun, regimes: Option<&[Regime]>) -> Result<(), IoError> {
    let mut w = writer(path)?;
    let e = csv_err(path);
    w.write_record(["t", "delta", "d", "F", "P", "x", "regime"]).map_err(&e)?;
    for (k, r) in run.records.iter().enumerate() {
        let regime = regimes.and_then(|l| l.get(k)).map(|g| g.name()).unwrap_or("");
        w.write_record([
            r.t.to_string(),
            real(r.delta),
            real(r.d),
            real(r.fundamental),
            real(r.price),
            real(r.x),
            regime.to_string(),
        ])
        .map_err(&e)?;
    }
    finish(w, path)
}

/// Pretty JSON document, newline-terminated.
pub fn write_json<T: serde::Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut f = File::create(path).map_err(|e| IoError::at(path, e))?;
    let text = serde_json::to_string_pretty(value).map_err(|e| IoError::Json(e.to_string()))?;
    writeln!(f, "{text}").map_err(|e| IoError::at(path, e))
}
