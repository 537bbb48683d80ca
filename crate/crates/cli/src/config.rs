use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

/// Settings read from a `key=value` file.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub retries: Option<u32>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = FileConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key=value", n + 1);
            };
            let value = value.trim();
            match key.trim() {
                "seed" => cfg.seed = Some(value.parse().with_context(|| format!("line {}: bad seed", n + 1))?),
                "retries" => cfg.retries = Some(value.parse().with_context(|| format!("line {}: bad retries", n + 1))?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                other => bail!("line {}: unknown key {other:?}", n + 1),
            }
        }
        Ok(cfg)
    }
}

/// Flag, then `FORGE_SEED`, then the config file.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>, file: &FileConfig) -> Result<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    if let Some(v) = env {
        return Ok(Some(v.trim().parse().with_context(|| format!("FORGE_SEED={v:?} is not an integer"))?));
    }
    Ok(file.seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_orders_sources() {
        let cfg = FileConfig::parse("# c\nseed = 4\nretries=7\nout=cert.json\n").unwrap();
        assert_eq!(cfg.seed, Some(4));
        assert_eq!(cfg.retries, Some(7));
        assert_eq!(cfg.out.as_deref(), Some(Path::new("cert.json")));
        assert_eq!(resolve_seed(Some(1), Some("2"), &cfg).unwrap(), Some(1));
        assert_eq!(resolve_seed(None, Some("2"), &cfg).unwrap(), Some(2));
        assert_eq!(resolve_seed(None, None, &cfg).unwrap(), Some(4));
        assert!(resolve_seed(None, Some("x"), &cfg).is_err());
        assert!(FileConfig::parse("colour=red").is_err());
        assert!(FileConfig::parse("seed").is_err());
    }
}
