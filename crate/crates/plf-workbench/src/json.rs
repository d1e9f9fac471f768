//! JSON file formats: frames as cover lists, homs as maps between frame
//! files, relation tables as adjacency lists, and attachment elements.

use anyhow::{anyhow, bail, Context, Result};
use plf_core::attach::LwElement;
use plf_core::frame::{Elem, FiniteFrame, FrameHom, PosetSpec};
use plf_core::order::RelationTable;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

#[derive(Serialize, Deserialize)]
pub struct FrameFile {
    pub size: usize,
    pub covers: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

pub fn load_frame(path: &Path) -> Result<Arc<FiniteFrame>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading frame file {}", path.display()))?;
    let file: FrameFile = serde_json::from_str(&text)?;
    let spec = PosetSpec::new(file.size, file.covers);
    let mut frame = FiniteFrame::build(&spec).map_err(|e| anyhow!("invalid frame: {e}"))?;
    if let Some(labels) = file.labels {
        let mut v = vec![String::new(); frame.size()];
        for (k, label) in labels {
            let idx: usize = k.parse().context("label keys are element indices")?;
            if idx >= frame.size() {
                bail!("label index {idx} out of range");
            }
            v[idx] = label;
        }
        frame.set_labels(v);
    }
    Ok(Arc::new(frame))
}

pub fn frame_to_json(f: &FiniteFrame) -> FrameFile {
    FrameFile {
        size: f.size(),
        covers: f.covers().to_vec(),
        labels: None,
    }
}

#[derive(Serialize, Deserialize)]
pub struct HomFile {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

pub fn load_hom(path: &Path) -> Result<FrameHom> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading hom file {}", path.display()))?;
    let file: HomFile = serde_json::from_str(&text)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let source = load_frame(&base.join(&file.source))?;
    let target = load_frame(&base.join(&file.target))?;
    FrameHom::new(source, target, file.map.into_iter().map(Elem).collect())
        .map_err(|e| anyhow!("invalid hom: {e}"))
}

#[derive(Serialize)]
pub struct RelationFile {
    pub kind: String,
    /// Adjacency list: for each element, the related partners.
    pub adjacency: Vec<Vec<usize>>,
}

pub fn relation_to_json(t: &RelationTable) -> RelationFile {
    let mut adjacency = vec![Vec::new(); t.size()];
    for (a, b) in t.pairs() {
        adjacency[a.0].push(b.0);
    }
    RelationFile { kind: format!("{:?}", t.kind), adjacency }
}

#[derive(Serialize, Deserialize)]
pub struct LwElementFile {
    pub flags: Vec<usize>,
    pub body: String,
}

pub fn lw_element_to_json(e: &LwElement) -> LwElementFile {
    LwElementFile {
        flags: e.flags.iter().copied().collect(),
        body: format!("{}", e.body),
    }
}
