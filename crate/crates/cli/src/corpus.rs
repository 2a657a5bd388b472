//! Group files on disk and the curated corpus.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use gds_core::{builtin, PermutationGroup};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// JSON group description with 1-based permutation images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default)]
    pub tags: Vec<String>,
}

impl GroupFile {
    pub fn from_group(g: &PermutationGroup, tags: &[&str]) -> Self {
        GroupFile {
            name: g.name().to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.one_based()).collect(),
            tags: tags.iter().map(|t| t.to_string()).collect(),
        }
    }

    /// Parses and validates a JSON document; errors name the offending field.
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).context("not valid JSON")?;
        let obj = v.as_object().ok_or_else(|| anyhow!("top level must be an object"))?;
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .filter(|s| !s.trim().is_empty())
            .ok_or_else(|| anyhow!("field `name`: expected a non-empty string"))?
            .to_string();
        let degree = obj
            .get("degree")
            .and_then(Value::as_u64)
            .filter(|&d| (1..=u16::MAX as u64).contains(&d))
            .ok_or_else(|| anyhow!("field `degree`: expected a positive integer below 65536"))?
            as usize;
        let gens = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("field `generators`: expected an array of image arrays"))?;
        let mut generators = Vec::with_capacity(gens.len());
        for (i, gen) in gens.iter().enumerate() {
            let images = gen
                .as_array()
                .and_then(|a| a.iter().map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok())).collect::<Option<Vec<u32>>>())
                .ok_or_else(|| anyhow!("field `generators[{}]`: expected an array of integers", i))?;
            if images.len() != degree || !is_bijection(&images) {
                bail!("field `generators[{}]`: {:?} is not a bijection of 1..{}", i, images, degree);
            }
            generators.push(images);
        }
        let tags = match obj.get("tags") {
            None | Some(Value::Null) => Vec::new(),
            Some(t) => t
                .as_array()
                .and_then(|a| a.iter().map(|x| x.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
                .ok_or_else(|| anyhow!("field `tags`: expected an array of strings"))?,
        };
        Ok(GroupFile { name, degree, generators, tags })
    }

    pub fn to_group(&self) -> Result<PermutationGroup> {
        let g = gds_core::group::group_from_generators(self.degree, &self.generators)
            .with_context(|| format!("group {}", self.name))?;
        Ok(g.with_name(self.name.clone()))
    }

    /// Canonical serialisation used for hashing and export.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group files serialise")
    }
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&x| {
        (1..=images.len() as u32).contains(&x) && !std::mem::replace(&mut seen[x as usize - 1], true)
    })
}

pub fn load_group_file(path: &Path) -> Result<GroupFile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    GroupFile::parse(&text).with_context(|| format!("in {}", path.display()))
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub path: PathBuf,
    pub file: GroupFile,
    pub group: PermutationGroup,
}

/// Loads every `*.json` file in `dir`, sorted by group name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mut by_name: BTreeMap<String, CorpusEntry> = BTreeMap::new();
    let listing = fs::read_dir(dir).with_context(|| format!("cannot list corpus directory {}", dir.display()))?;
    let mut paths: Vec<PathBuf> = listing
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<PathBuf>>>()?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    for path in paths {
        let file = load_group_file(&path)?;
        let group = file.to_group().with_context(|| format!("in {}", path.display()))?;
        if let Some(prev) = by_name.get(&file.name) {
            bail!("duplicate group name {:?} in {} and {}", file.name, prev.path.display(), path.display());
        }
        by_name.insert(file.name.clone(), CorpusEntry { path, file, group });
    }
    Ok(by_name.into_values().collect())
}

/// `builtin:<spec>` or a path to a group file.
pub fn resolve_group_ref(reference: &str) -> Result<(GroupFile, PermutationGroup)> {
    if let Some(spec) = reference.strip_prefix("builtin:") {
        let g = builtin::from_spec(spec).with_context(|| format!("builtin group {:?}", spec))?;
        Ok((GroupFile::from_group(&g, &[]), g))
    } else {
        let file = load_group_file(Path::new(reference))?;
        let g = file.to_group()?;
        Ok((file, g))
    }
}

/// Builtin specs of the curated corpus with their tags.
pub const CURATED: &[(&str, &[&str])] = &[
    ("cyclic:1", &["abelian"]),
    ("cyclic:2", &["abelian"]),
    ("cyclic:3", &["abelian"]),
    ("cyclic:4", &["abelian"]),
    ("cyclic:5", &["abelian"]),
    ("cyclic:6", &["abelian"]),
    ("cyclic:7", &["abelian"]),
    ("cyclic:8", &["abelian"]),
    ("cyclic:9", &["abelian"]),
    ("cyclic:12", &["abelian"]),
    ("product:cyclic:2,cyclic:2", &["abelian"]),
    ("product:cyclic:2,cyclic:4", &["abelian"]),
    ("product:cyclic:2,cyclic:2,cyclic:2", &["abelian"]),
    ("product:cyclic:3,cyclic:3", &["abelian"]),
    ("product:cyclic:4,cyclic:4", &["abelian"]),
    ("product:cyclic:2,cyclic:6", &["abelian"]),
    ("dihedral:4", &["extremal", "p-group"]),
    ("dihedral:5", &["extremal"]),
    ("dihedral:6", &[]),
    ("dihedral:7", &[]),
    ("dihedral:8", &["p-group"]),
    ("dihedral:9", &[]),
    ("dihedral:10", &[]),
    ("quaternion:8", &["extremal", "p-group"]),
    ("dicyclic:3", &[]),
    ("dicyclic:4", &["p-group"]),
    ("dicyclic:5", &[]),
    ("symmetric:3", &["extremal"]),
    ("symmetric:4", &[]),
    ("symmetric:5", &[]),
    ("symmetric:6", &[]),
    ("alternating:4", &["extremal"]),
    ("alternating:5", &["simple", "extremal"]),
    ("alternating:6", &["simple"]),
    ("sl2:3", &[]),
    ("sl2:5", &["extremal"]),
    ("sl2:7", &[]),
    ("psl2:7", &["simple"]),
    ("psl2:8", &["simple"]),
    ("psl2:11", &["simple"]),
    ("psl2:13", &["simple"]),
    ("pgl2:7", &[]),
    ("psl3:3", &["simple"]),
    ("extraspecial:27:3", &["extremal", "p-group"]),
    ("extraspecial:27:9", &["extremal", "p-group"]),
    ("affine:5", &[]),
    ("affine:7", &[]),
    ("frobenius:7:3", &[]),
    ("frobenius:11:5", &[]),
    ("product:alternating:5,cyclic:2", &["extremal"]),
    ("product:alternating:5,cyclic:3", &[]),
    ("product:symmetric:3,cyclic:2", &[]),
    ("product:symmetric:3,cyclic:3", &[]),
    ("product:symmetric:3,symmetric:3", &[]),
    ("product:quaternion:8,cyclic:2", &["p-group"]),
    ("product:dihedral:4,cyclic:2", &["p-group"]),
    ("product:alternating:4,cyclic:2", &[]),
    ("product:symmetric:4,cyclic:2", &[]),
    ("product:dihedral:5,cyclic:2", &[]),
    ("product:symmetric:3,cyclic:2,cyclic:2", &[]),
    ("product:alternating:4,cyclic:3", &[]),
    ("product:sl2:3,cyclic:2", &[]),
    ("product:quaternion:8,cyclic:3", &[]),
    ("product:dihedral:4,symmetric:3", &[]),
    ("product:quaternion:8,symmetric:3", &[]),
    ("product:dihedral:4,quaternion:8", &["p-group"]),
    ("product:sl2:5,cyclic:2", &[]),
    ("product:alternating:5,alternating:5", &[]),
];

/// Groups that must be present in a complete corpus.
pub const REQUIRED: &[&str] = &["S3", "A4", "A5", "S5", "SL(2,5)", "PSL(2,7)", "D10", "A5xC2", "Q8", "D8", "ES27_exp3", "ES27_exp9"];

pub fn curated_groups() -> Result<Vec<GroupFile>> {
    CURATED
        .iter()
        .map(|(spec, tags)| {
            let g = builtin::from_spec(spec).with_context(|| format!("builtin group {:?}", spec))?;
            Ok(GroupFile::from_group(&g, tags))
        })
        .collect()
}

pub fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect::<String>()
        .trim_matches('_')
        .to_string()
}

/// Writes the curated corpus into `dir`, one file per group; returns the count.
pub fn export_corpus(dir: &Path) -> Result<usize> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let groups = curated_groups()?;
    for file in &groups {
        let path = dir.join(format!("{}.json", file_stem(&file.name)));
        fs::write(&path, file.to_json() + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(groups.len())
}
