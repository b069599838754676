use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibered::generator::FiberedGenerator;
use crate::fibered::invariance::InvarianceReport;

#[derive(Serialize, Deserialize)]
struct TileDoc {
    k: Vec<i64>,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    d: usize,
    grid: Vec<usize>,
    tiles: Vec<TileDoc>,
}

/// Parses a generator document: `{"d", "grid", "tiles": [{"k", "re", "im"}]}`
/// with cell arrays row-major in `W`-coordinates.
pub fn generator_from_json(text: &str) -> Result<FiberedGenerator> {
    let doc: GeneratorDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("generator document: {e}")))?;
    let mut tiles = BTreeMap::new();
    for tile in doc.tiles {
        if tile.re.len() != tile.im.len() {
            return Err(Error::Parse(format!(
                "tile {:?}: re has {} entries but im has {}",
                tile.k,
                tile.re.len(),
                tile.im.len()
            )));
        }
        let values: Vec<Complex64> =
            tile.re.iter().zip(&tile.im).map(|(&re, &im)| Complex64::new(re, im)).collect();
        if tiles.insert(tile.k.clone(), values).is_some() {
            return Err(Error::Parse(format!("duplicate tile {:?}", tile.k)));
        }
    }
    FiberedGenerator::new(doc.d, doc.grid, tiles)
}

/// Serializes a generator; tiles are emitted in lexicographic key order so
/// output bytes are deterministic.
pub fn generator_to_json(g: &FiberedGenerator) -> Result<String> {
    let tiles: Vec<TileDoc> = g
        .tiles()
        .iter()
        .map(|(k, values)| TileDoc {
            k: k.clone(),
            re: values.iter().map(|v| v.re).collect(),
            im: values.iter().map(|v| v.im).collect(),
        })
        .collect();
    let doc = GeneratorDoc { d: g.d(), grid: g.grid().to_vec(), tiles };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
struct CellDoc {
    index: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ranks_by_class: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
}

#[derive(Serialize)]
struct ReportDoc {
    method: String,
    verdict: bool,
    tol: f64,
    classes: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_residual: Option<f64>,
    cells: Vec<CellDoc>,
}

/// Serializes an invariance report.
pub fn report_to_json(report: &InvarianceReport) -> Result<String> {
    let doc = ReportDoc {
        method: report.method.as_str().to_string(),
        verdict: report.verdict,
        tol: report.tol_rel,
        classes: report.classes.clone(),
        worst_residual: report.worst_residual,
        cells: report
            .cells
            .iter()
            .map(|c| CellDoc {
                index: c.index.clone(),
                rank_total: c.rank_total,
                ranks_by_class: c.ranks_by_class.clone(),
                defect: c.defect,
                residual: c.residual,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
}
