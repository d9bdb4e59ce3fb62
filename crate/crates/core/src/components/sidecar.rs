//! Plain `key = value` metadata that accompanies an RLE file. Keys may
//! repeat; order is kept. Lines starting with `#` are comments.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct SidecarError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    entries: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Record {
        Record::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    /// First value under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, String> {
        self.get(key).ok_or_else(|| format!("missing `{key}`"))
    }

    /// Parses the value under `key` with `FromStr`.
    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<T, String> {
        let v = self.require(key)?;
        v.parse().map_err(|_| format!("bad `{key}` value `{v}`"))
    }

    pub fn parse(text: &str) -> Result<Record, SidecarError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(SidecarError {
                    line: i + 1,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let k = k.trim();
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(SidecarError {
                    line: i + 1,
                    message: format!("bad key `{k}`"),
                });
            }
            entries.push((k.to_string(), v.trim().to_string()));
        }
        Ok(Record { entries })
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_order_and_repeats() {
        let mut r = Record::new();
        r.push("kind", "AND");
        r.push("component", "a b");
        r.push("component", "c = d");
        let back = Record::parse(&r.to_string()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.all("component").collect::<Vec<_>>(), ["a b", "c = d"]);
        assert_eq!(back.get("missing"), None);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = Record::parse("# header\nkind = AND\nnonsense\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(Record::parse("two words = 1").unwrap_err().line, 1);
    }
}
