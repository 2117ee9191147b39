//! Meshes, text output formats and job configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Full-precision float formatting shared by every text output.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Triangle mesh with 0-based vertex indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    vertices: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn new(vertices: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> Result<Self> {
        for (k, f) in faces.iter().enumerate() {
            if f.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::InvalidParameters(format!(
                    "face {k} has an index out of range"
                )));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::InvalidParameters(format!(
                    "face {k} repeats a vertex"
                )));
            }
        }
        Ok(Self { vertices, faces })
    }

    /// Triangulates an `nu × nv` parameter grid. `vertex(i, j)` returns the
    /// point for node `(i, j)` or `None` to drop it; a cell contributes the two
    /// triangles `(00, 10, 11)` and `(00, 11, 01)` when all four corners are
    /// present. Vertices are numbered in row-major order of the kept nodes.
    pub fn from_grid(
        nu: usize,
        nv: usize,
        vertex: impl Fn(usize, usize) -> Option<[f64; 3]>,
    ) -> Result<Self> {
        let mut index = vec![None; nu * nv];
        let mut vertices = Vec::new();
        for j in 0..nv {
            for i in 0..nu {
                if let Some(v) = vertex(i, j) {
                    index[j * nu + i] = Some(vertices.len());
                    vertices.push(v);
                }
            }
        }
        let mut faces = Vec::new();
        for j in 0..nv.saturating_sub(1) {
            for i in 0..nu.saturating_sub(1) {
                let c = [
                    index[j * nu + i],
                    index[j * nu + i + 1],
                    index[(j + 1) * nu + i + 1],
                    index[(j + 1) * nu + i],
                ];
                if let [Some(a), Some(b), Some(c), Some(d)] = c {
                    faces.push([a, b, c]);
                    faces.push([a, c, d]);
                }
            }
        }
        // drop vertices no face uses
        let mut used = vec![false; vertices.len()];
        faces.iter().flatten().for_each(|&i| used[i] = true);
        let mut remap = vec![usize::MAX; vertices.len()];
        let mut kept = Vec::new();
        for (i, v) in vertices.into_iter().enumerate() {
            if used[i] {
                remap[i] = kept.len();
                kept.push(v);
            }
        }
        let faces = faces.into_iter().map(|f| f.map(|i| remap[i])).collect();
        Self::new(kept, faces)
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn to_obj(&self) -> String {
        let mut s = String::with_capacity(64 * self.vertices.len());
        for v in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]));
        }
        for f in &self.faces {
            let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        s
    }
}

/// Writes `contents` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Builds CSV text from a header and rows of already formatted cells.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key = value, got {raw:?}", n + 1))
        })?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", n + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Validated key-value settings of one command. Later sources override
/// earlier ones; keys outside the allowed set are rejected up front.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JobConfig {
    entries: BTreeMap<String, String>,
}

impl JobConfig {
    pub fn build<'a>(
        allowed: &[&str],
        sources: impl IntoIterator<Item = &'a [(String, String)]>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for src in sources {
            for (k, v) in src {
                if !allowed.contains(&k.as_str()) {
                    return Err(Error::Config(format!(
                        "unknown key {k:?}; allowed: {}",
                        allowed.join(", ")
                    )));
                }
                entries.insert(k.clone(), v.clone());
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Config(format!("missing required key {key:?}")))
    }

    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| Error::Config(format!("{key} = {v:?}: {e}")))
            })
            .transpose()
    }

    pub fn parsed_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    /// Comma-separated floats, with optional surrounding brackets.
    pub fn float_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key)
            .map(|v| {
                v.trim_matches(|c| c == '[' || c == ']')
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|e| Error::Config(format!("{key}: {s:?}: {e}")))
                    })
                    .collect()
            })
            .transpose()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_grid_gives_two_triangles() {
        let m = Mesh::from_grid(2, 2, |i, j| Some([i as f64, j as f64, 0.0])).unwrap();
        assert_eq!(m.vertices().len(), 4);
        assert_eq!(m.faces(), &[[0, 1, 3], [0, 3, 2]]);
        assert_eq!(
            m.to_obj(),
            "v 0.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0\n\
             v 1.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0\n\
             v 0.0000000000000000e0 1.0000000000000000e0 0.0000000000000000e0\n\
             v 1.0000000000000000e0 1.0000000000000000e0 0.0000000000000000e0\n\
             f 1 2 4\nf 1 4 3\n"
        );
    }

    #[test]
    fn masked_nodes_drop_cells_and_orphans() {
        // hole in the middle of a 3×3 grid removes all four cells
        let m = Mesh::from_grid(3, 3, |i, j| {
            ((i, j) != (1, 1)).then_some([i as f64, j as f64, 0.0])
        })
        .unwrap();
        assert!(m.faces().is_empty());
        assert!(m.vertices().is_empty());
        // a missing corner removes one cell and its orphaned vertex
        let m = Mesh::from_grid(3, 3, |i, j| {
            ((i, j) != (0, 0)).then_some([i as f64, j as f64, 0.0])
        })
        .unwrap();
        assert_eq!(m.faces().len(), 6);
        assert_eq!(m.vertices().len(), 8);
    }

    #[test]
    fn invalid_faces_rejected() {
        assert!(Mesh::new(vec![[0.0; 3]; 2], vec![[0, 1, 2]]).is_err());
        assert!(Mesh::new(vec![[0.0; 3]; 3], vec![[0, 1, 1]]).is_err());
    }

    #[test]
    fn config_merging_and_validation() {
        let file =
            parse_kv("# job\nfamily = Funnel\na = 1 # slope\n\nregion=[1,2]x[1,2]\n").unwrap();
        let flags = vec![("a".to_string(), "2".to_string())];
        let cfg = JobConfig::build(
            &["family", "a", "region"],
            [file.as_slice(), flags.as_slice()],
        )
        .unwrap();
        assert_eq!(cfg.get("family"), Some("Funnel"));
        assert_eq!(cfg.parsed::<f64>("a").unwrap(), Some(2.0));
        assert_eq!(cfg.get("region"), Some("[1,2]x[1,2]"));
        assert!(JobConfig::build(&["a"], [file.as_slice()]).is_err());
        assert!(parse_kv("novalue").is_err());
        assert!(cfg.parsed::<f64>("family").is_err());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub").join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
