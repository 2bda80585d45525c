//! Classification report for `syncgames classify`.

use std::fs;
use std::path::{Path, PathBuf};

use syncgames::category::classify as class_label;
use syncgames::morphology::{
    epi_witness, in_category, is_bimorphism, is_epimorphism, is_isomorphism, is_monomorphism, is_retraction,
    is_section, mono_witness, CategoryTag,
};
use syncgames::{Correlation, Error, Result};

pub struct Properties {
    pub section: bool,
    pub retraction: bool,
    pub monomorphism: bool,
    pub epimorphism: bool,
    pub bimorphism: bool,
    pub isomorphism: bool,
}

pub struct Report {
    pub synchronous: bool,
    pub nonsignaling: bool,
    pub symmetric: bool,
    pub deterministic: bool,
    pub classical: bool,
    /// `None` where `p` is not a morphism of the category.
    pub categories: Vec<(CategoryTag, Option<Properties>)>,
    pub witnesses: Vec<(CategoryTag, &'static str, PathBuf)>,
}

fn properties(p: &Correlation, cat: CategoryTag) -> Result<Properties> {
    Ok(Properties {
        section: is_section(p, cat)?,
        retraction: is_retraction(p, cat)?,
        monomorphism: is_monomorphism(p, cat)?,
        epimorphism: is_epimorphism(p, cat)?,
        bimorphism: is_bimorphism(p, cat)?,
        isomorphism: is_isomorphism(p, cat)?,
    })
}

pub fn classify(p: &Correlation, witness_dir: Option<&Path>) -> Result<Report> {
    let label = class_label(p);
    let mut categories = Vec::new();
    let mut witnesses = Vec::new();
    for cat in CategoryTag::ALL {
        if !in_category(p, cat) {
            categories.push((cat, None));
            continue;
        }
        categories.push((cat, Some(properties(p, cat)?)));
        if let Some(dir) = witness_dir {
            fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
            for (side, witness) in [("mono", mono_witness(p, cat)?), ("epi", epi_witness(p, cat)?)] {
                if let Some(w) = witness {
                    let path = dir.join(format!("{cat}-{side}.json"));
                    fs::write(&path, w.to_json() + "\n").map_err(|e| io_error(&path, e))?;
                    witnesses.push((cat, side, path));
                }
            }
        }
    }
    Ok(Report {
        synchronous: label.synchronous,
        nonsignaling: label.nonsignaling,
        symmetric: label.symmetric,
        deterministic: label.is_deterministic(),
        classical: label.is_classical(),
        categories,
        witnesses,
    })
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    }
}

impl Properties {
    fn fields(&self) -> [(&'static str, bool); 6] {
        [
            ("section", self.section),
            ("retraction", self.retraction),
            ("monomorphism", self.monomorphism),
            ("epimorphism", self.epimorphism),
            ("bimorphism", self.bimorphism),
            ("isomorphism", self.isomorphism),
        ]
    }
}

impl Report {
    fn flags(&self) -> [(&'static str, bool); 5] {
        [
            ("synchronous", self.synchronous),
            ("nonsignaling", self.nonsignaling),
            ("symmetric", self.symmetric),
            ("deterministic", self.deterministic),
            ("classical", self.classical),
        ]
    }

    pub fn to_json(&self) -> String {
        let mut root = serde_json::Map::new();
        for (name, value) in self.flags() {
            root.insert(name.into(), value.into());
        }
        let mut morphology = serde_json::Map::new();
        for (cat, props) in &self.categories {
            let value = match props {
                Some(props) => {
                    let map: serde_json::Map<String, serde_json::Value> =
                        props.fields().into_iter().map(|(k, v)| (k.to_string(), v.into())).collect();
                    serde_json::Value::Object(map)
                }
                None => serde_json::Value::Null,
            };
            morphology.insert(cat.to_string(), value);
        }
        root.insert("morphology".into(), morphology.into());
        if !self.witnesses.is_empty() {
            let mut files = serde_json::Map::new();
            for (cat, side, path) in &self.witnesses {
                let entry = files
                    .entry(cat.to_string())
                    .or_insert_with(|| serde_json::Value::Object(serde_json::Map::new()));
                entry[*side] = path.display().to_string().into();
            }
            root.insert("witnesses".into(), files.into());
        }
        serde_json::to_string_pretty(&serde_json::Value::Object(root)).expect("json serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (name, value) in self.flags() {
            out += &format!("{name:<14}{value}\n");
        }
        out += &format!("\n{:<14}", "");
        for (cat, _) in &self.categories {
            out += &format!("{:<7}", cat.to_string());
        }
        out.push('\n');
        for (i, name) in ["section", "retraction", "monomorphism", "epimorphism", "bimorphism", "isomorphism"]
            .iter()
            .enumerate()
        {
            out += &format!("{name:<14}");
            for (_, props) in &self.categories {
                let cell = match props {
                    Some(props) => props.fields()[i].1.to_string(),
                    None => "-".into(),
                };
                out += &format!("{cell:<7}");
            }
            out = out.trim_end().to_string();
            out.push('\n');
        }
        for (cat, side, path) in &self.witnesses {
            out += &format!("witness {cat} {side}: {}\n", path.display());
        }
        out
    }
}
