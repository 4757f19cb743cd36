//! Plain-text record of an adjudication outcome.
//!
//! ```text
//! # structure=faithful k=3 mode=sift
//! # result=diverges m_max=8
//! I 1
//! I 2
//! P
//! ```
//!
//! A certified absence has `result=none` and no op lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::script::{Op, OpScript};
use crate::error::{HeapError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub structure: String,
    pub arity: usize,
    pub mode: String,
    /// Extra `key=value` metadata from the second header line onwards.
    pub meta: BTreeMap<String, String>,
    pub script: Option<OpScript<i64>>,
}

impl Fixture {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# structure={} k={} mode={}", self.structure, self.arity, self.mode).unwrap();
        let mut meta = self.meta.clone();
        meta.insert("result".into(), if self.script.is_some() { "diverges" } else { "none" }.into());
        let line: Vec<String> = meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "# {}", line.join(" ")).unwrap();
        if let Some(s) = &self.script {
            for op in &s.ops {
                match op {
                    Op::Insert(k) => writeln!(out, "I {k}").unwrap(),
                    Op::Pop => writeln!(out, "P").unwrap(),
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Fixture> {
        let bad = |line: usize, why: &str| HeapError::Config(format!("fixture line {}: {why}", line + 1));
        let mut header: BTreeMap<String, String> = BTreeMap::new();
        let mut ops = Vec::new();
        let mut saw_header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                for pair in rest.split_whitespace() {
                    let (k, v) = pair.split_once('=').ok_or_else(|| bad(i, "expected key=value"))?;
                    header.insert(k.to_string(), v.to_string());
                }
                saw_header = true;
                continue;
            }
            let mut parts = line.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some("P"), None, None) => ops.push(Op::Pop),
                (Some("I"), Some(k), None) => ops.push(Op::Insert(k.parse().map_err(|_| bad(i, "bad key"))?)),
                _ => return Err(bad(i, "expected `I <key>` or `P`")),
            }
        }
        if !saw_header {
            return Err(HeapError::Config("fixture has no header".into()));
        }
        let mut take =
            |key: &str| header.remove(key).ok_or_else(|| HeapError::Config(format!("fixture header lacks {key}")));
        let structure = take("structure")?;
        let arity = take("k")?.parse().map_err(|_| HeapError::Config("fixture k is not a number".into()))?;
        let mode = take("mode")?;
        let result = header.remove("result");
        let script = match result.as_deref() {
            Some("none") if ops.is_empty() => None,
            Some("none") => return Err(HeapError::Config("result=none fixture lists ops".into())),
            _ => Some(OpScript::new(ops, "fixture")),
        };
        Ok(Fixture { structure, arity, mode, meta: header, script })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let f = Fixture {
            structure: "faithful".into(),
            arity: 3,
            mode: "sift".into(),
            meta: BTreeMap::from([("m_max".to_string(), "8".to_string())]),
            script: Some(OpScript::new(vec![Op::Insert(1), Op::Insert(-2), Op::Pop], "fixture")),
        };
        let text = f.to_text();
        assert!(text.starts_with("# structure=faithful k=3 mode=sift\n"));
        assert!(text.contains("I -2\nP\n"));
        assert_eq!(Fixture::parse(&text).unwrap(), f);

        let none = Fixture { script: None, ..f };
        let text = none.to_text();
        assert!(text.contains("result=none"));
        assert_eq!(Fixture::parse(&text).unwrap(), none);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Fixture::parse("I 1\n").is_err());
        assert!(Fixture::parse("# structure=x k=2 mode=a\nX\n").is_err());
        assert!(Fixture::parse("# structure=x k=two mode=a\n").is_err());
        assert!(Fixture::parse("# structure=x k=2\n").is_err());
        assert!(Fixture::parse("# structure=x k=2 mode=a result=none\nP\n").is_err());
    }
}
