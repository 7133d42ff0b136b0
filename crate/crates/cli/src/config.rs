//! Flat `key=value` run configuration. Keys mirror the long flag names;
//! command-line flags override file values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use manifold_teach::complex::FiltrationKind;
use manifold_teach::experiments::ExperimentConfig;
use manifold_teach::shapes::Barbell;
use manifold_teach::Shape;

pub const KNOWN_KEYS: &[&str] = &[
    "shape",
    "n",
    "seed",
    "trials",
    "sizes",
    "max-radius",
    "max-dim",
    "min-bar-length",
    "out",
    "jobs",
    "epsilon",
    "kind",
    "radius",
    "tube-radius",
    "core-radius",
    "lobe-offset",
    "lobe-outer-radius",
    "lobe-hole-radius",
    "outer-neck-halfwidth",
    "hole-neck-halfwidth",
];

#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    /// Parse a config file; `out` is resolved against the file's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{}: line {}: expected key=value", path.display(), idx + 1))?;
            let key = k.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("{}: line {}: unknown key {:?}", path.display(), idx + 1, k.trim());
            }
            let mut value = v.trim().to_string();
            if key == "out" && Path::new(&value).is_relative() {
                value = base.join(&value).to_string_lossy().into_owned();
            }
            values.insert(key, value);
        }
        Ok(Settings { values })
    }

    pub fn set(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    pub fn set_default(&mut self, key: &str, value: impl Into<String>) {
        self.values.entry(key.to_string()).or_insert_with(|| value.into());
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|s| s.parse::<T>().map_err(|e| anyhow!("bad value for {key}: {s:?} ({e})")))
            .transpose()
    }

    pub fn get_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn out_dir(&self) -> Option<PathBuf> {
        self.raw("out").map(PathBuf::from)
    }

    pub fn sizes(&self) -> Result<Option<Vec<usize>>> {
        let Some(s) = self.raw("sizes") else {
            return Ok(None);
        };
        s.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| anyhow!("bad size {x:?} in sizes ({e})")))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn shape(&self) -> Result<Shape> {
        let name = self.raw("shape").unwrap_or("barbell");
        let shape = match name {
            "circle" => Shape::circle(self.get_or("radius", 1.0)?)?,
            "torus" => Shape::torus(self.get_or("tube-radius", 1.0)?, self.get_or("core-radius", 2.5)?)?,
            "barbell" => {
                let d = Barbell::default();
                Shape::barbell(Barbell {
                    lobe_offset: self.get_or("lobe-offset", d.lobe_offset)?,
                    lobe_outer_radius: self.get_or("lobe-outer-radius", d.lobe_outer_radius)?,
                    lobe_hole_radius: self.get_or("lobe-hole-radius", d.lobe_hole_radius)?,
                    outer_neck_halfwidth: self.get_or("outer-neck-halfwidth", d.outer_neck_halfwidth)?,
                    hole_neck_halfwidth: self.get_or("hole-neck-halfwidth", d.hole_neck_halfwidth)?,
                })?
            }
            other => bail!("unknown shape {other:?} (expected circle, torus or barbell)"),
        };
        Ok(shape)
    }

    pub fn kind(&self) -> Result<FiltrationKind> {
        self.raw("kind")
            .map_or(Ok(FiltrationKind::Cech), |s| s.parse().map_err(|e| anyhow!("{e}")))
    }

    pub fn experiment(&self) -> Result<ExperimentConfig> {
        let d = ExperimentConfig::default();
        Ok(ExperimentConfig {
            shape: self.shape()?,
            sizes: self.sizes()?.unwrap_or(d.sizes),
            trials: self.get_or("trials", d.trials)?,
            seed: self.get_or("seed", d.seed)?,
            max_radius: self.get_or("max-radius", d.max_radius)?,
            min_bar_length: self.get_or("min-bar-length", d.min_bar_length)?,
            max_dim: self.get_or("max-dim", d.max_dim)?,
            kind: self.kind()?,
        })
    }

    /// Record every resolved shape parameter alongside the explicit values.
    pub fn resolve_shape(&mut self) -> Result<()> {
        let shape = self.shape()?;
        let fields: Vec<(&str, f64)> = match shape {
            Shape::Circle { radius, .. } => vec![("radius", radius)],
            Shape::Torus {
                tube_radius,
                core_radius,
                ..
            } => vec![("tube-radius", tube_radius), ("core-radius", core_radius)],
            Shape::BarbellAnnulus(b) => vec![
                ("lobe-offset", b.lobe_offset),
                ("lobe-outer-radius", b.lobe_outer_radius),
                ("lobe-hole-radius", b.lobe_hole_radius),
                ("outer-neck-halfwidth", b.outer_neck_halfwidth),
                ("hole-neck-halfwidth", b.hole_neck_halfwidth),
            ],
        };
        self.set_default("shape", shape.name());
        for (k, v) in fields {
            self.set_default(k, v.to_string());
        }
        Ok(())
    }

    pub fn to_text(&self, command: &str) -> String {
        let mut out = format!("# mteach {command}\n");
        for (k, v) in &self.values {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_and_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "# comment\nshape = circle\nradius=2\nout=results\nmin_bar_length=0.1\n").unwrap();
        let mut s = Settings::from_file(&path).unwrap();
        assert_eq!(s.out_dir().unwrap(), dir.path().join("results"));
        s.set("radius", Some("3".into()));
        s.set("seed", None);
        assert_eq!(s.shape().unwrap(), Shape::circle(3.0).unwrap());
        assert_eq!(s.get_or("min-bar-length", 0.05).unwrap(), 0.1);
        assert!(s.raw("seed").is_none());
    }

    #[test]
    fn bad_files_name_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cfg");
        std::fs::write(&path, "shape=circle\nnonsense\n").unwrap();
        let err = Settings::from_file(&path).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        std::fs::write(&path, "colour=blue\n").unwrap();
        assert!(Settings::from_file(&path).unwrap_err().to_string().contains("unknown key"));
    }
}
