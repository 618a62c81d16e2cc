use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown export format {other:?} (expected dot or json)")),
        }
    }
}

#[derive(Serialize)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

pub(super) fn render(g: &Graph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => {
            let mut s = String::from("graph G {\n");
            if let Some(labels) = g.labels() {
                for (v, l) in labels.iter().enumerate() {
                    let _ = writeln!(s, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
                }
            } else {
                for v in 0..g.vertex_count() {
                    let _ = writeln!(s, "  {v};");
                }
            }
            for (u, v) in g.edges() {
                let _ = writeln!(s, "  {u} -- {v};");
            }
            s.push_str("}\n");
            s
        }
        ExportFormat::Json => {
            let doc = JsonGraph {
                vertices: (0..g.vertex_count()).map(|v| g.label(v)).collect(),
                edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            };
            serde_json::to_string(&doc).expect("serializable")
        }
    }
}
