//! Flat `key = value` configuration files. Command-line flags take precedence.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const KEYS: [&str; 16] = [
    "group",
    "q",
    "tau",
    "words",
    "decoder",
    "constellation",
    "r",
    "snr",
    "snr_start",
    "snr_stop",
    "snr_step",
    "trials",
    "partition",
    "seed",
    "sizes",
    "kappa0",
];

#[derive(Clone, Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn parse(text: &str) -> Result<Settings> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let k = k.trim().replace('-', "_");
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::Config(format!("line {}: unknown key {k:?}", n + 1)));
            }
            values.insert(k, v.trim().to_string());
        }
        Ok(Settings { values })
    }

    pub fn load(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Settings::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag if given, else the parsed config value.
    pub fn pick<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("bad value for {key}: {v:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_precedence() {
        let s = Settings::parse("# sweep\ngroup = 6\nq=16  # size\nsnr-start = 0\n").unwrap();
        assert_eq!(s.pick::<u32>("group", None).unwrap(), Some(6));
        assert_eq!(s.pick::<u32>("group", Some(10)).unwrap(), Some(10));
        assert_eq!(s.pick::<usize>("q", None).unwrap(), Some(16));
        assert_eq!(s.raw("snr_start"), Some("0"));
        assert_eq!(s.pick::<u64>("trials", None).unwrap(), None);
        assert!(s.pick::<u32>("snr_start", None).is_ok());
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(Settings::parse("colour = red").is_err());
        assert!(Settings::parse("group 6").is_err());
        let s = Settings::parse("group = six").unwrap();
        assert!(s.pick::<u32>("group", None).is_err());
    }
}
