use std::path::Path;

use crate::cli::{Common, Format};

/// Settings after merging flags over the config file over defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Settings {
    pub format: Option<Format>,
    pub tol: Option<f64>,
    pub guard: Option<f64>,
    pub warn_band: Option<f64>,
    pub threshold_guard: Option<f64>,
    pub skip_resonances: bool,
}

fn number(key: &str, value: &str, line: usize) -> Result<f64, String> {
    let v: f64 = value
        .parse()
        .map_err(|_| format!("line {line}: '{key}' expects a number, got '{value}'"))?;
    positive(key, v)?;
    Ok(v)
}

pub fn positive(key: &str, v: f64) -> Result<(), String> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(format!("'{key}' must be a finite positive number, got {v}"))
    }
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse(text: &str) -> Result<Settings, String> {
    let mut s = Settings::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| format!("line {line}: expected key=value, got '{content}'"))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "tol" => s.tol = Some(number(&key, value, line)?),
            "guard" => s.guard = Some(number(&key, value, line)?),
            "warn_band" => s.warn_band = Some(number(&key, value, line)?),
            "threshold_guard" => s.threshold_guard = Some(number(&key, value, line)?),
            "format" => {
                s.format = Some(match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(format!("line {line}: format must be csv or json, got '{value}'")),
                })
            }
            "skip_resonances" => {
                s.skip_resonances = value
                    .parse()
                    .map_err(|_| format!("line {line}: skip_resonances expects true or false"))?
            }
            _ => return Err(format!("line {line}: unknown key '{key}'")),
        }
    }
    Ok(s)
}

pub fn resolve(common: &Common) -> Result<Settings, String> {
    let file = match &common.config {
        Some(path) => load(path)?,
        None => Settings::default(),
    };
    let merged = Settings {
        format: common.format.or(file.format),
        tol: common.tol.or(file.tol),
        guard: common.guard.or(file.guard),
        warn_band: common.warn_band.or(file.warn_band),
        threshold_guard: common.threshold_guard.or(file.threshold_guard),
        skip_resonances: common.skip_resonances || file.skip_resonances,
    };
    for (key, v) in [
        ("tol", merged.tol),
        ("guard", merged.guard),
        ("warn-band", merged.warn_band),
        ("threshold-guard", merged.threshold_guard),
    ] {
        if let Some(v) = v {
            positive(key, v)?;
        }
    }
    Ok(merged)
}

fn load(path: &Path) -> Result<Settings, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let s = parse("# defaults\ntol = 1e-13\nwarn-band=1e-3  # wider\nformat = json\nskip_resonances = true\n").unwrap();
        assert_eq!(s.tol, Some(1e-13));
        assert_eq!(s.warn_band, Some(1e-3));
        assert_eq!(s.format, Some(Format::Json));
        assert!(s.skip_resonances);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse("tol 1e-3").is_err());
        assert!(parse("tol = fast").is_err());
        assert!(parse("tol = -1").is_err());
        assert!(parse("colour = red").is_err());
        assert!(parse("format = xml").is_err());
    }
}
