//! OEIS b-file interchange: one `index value` record per line, comments
//! prefixed with `#`, indices consecutive and increasing.

use num_bigint::BigInt;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// A parsed b-file: a starting offset and the run of consecutive values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub offset: i64,
    pub values: Vec<BigInt>,
}

impl BFile {
    pub fn parse(path: &str, text: &str) -> Result<BFile> {
        let mut offset = 0i64;
        let mut next_index: Option<i64> = None;
        let mut values = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |reason: &str| Error::MalformedBFile {
                path: path.to_string(),
                line: lineno + 1,
                reason: reason.to_string(),
            };
            let mut fields = line.split_whitespace();
            let index: i64 = fields
                .next()
                .ok_or_else(|| malformed("missing index"))?
                .parse()
                .map_err(|_| malformed("index is not an integer"))?;
            let value: BigInt = fields
                .next()
                .ok_or_else(|| malformed("missing value"))?
                .parse()
                .map_err(|_| malformed("value is not an integer"))?;
            if fields.next().is_some() {
                return Err(malformed("trailing fields after value"));
            }
            match next_index {
                None => offset = index,
                Some(expected) if index != expected => {
                    return Err(malformed(&format!(
                        "index {index} breaks the consecutive run (expected {expected})"
                    )));
                }
                Some(_) => {}
            }
            next_index = Some(index + 1);
            values.push(value);
        }
        Ok(BFile { offset, values })
    }

    pub fn read(path: &Path) -> Result<BFile> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        BFile::parse(&path.display().to_string(), &text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{} {}", self.offset + i as i64, v).expect("string write");
        }
        out
    }
}

/// Result of lining a b-file up against generated terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareOutcome {
    /// Every overlapping record matched; `compared` records were checked.
    Match { compared: usize },
    /// First divergence, reported at the b-file's index.
    Divergence {
        index: i64,
        file_value: BigInt,
        generated: BigInt,
    },
}

/// Compares file record at index `i` against `generated[i - offset + shift]`.
/// Records that fall outside the generated range are skipped.
pub fn compare(file: &BFile, generated: &[BigInt], shift: i64) -> CompareOutcome {
    let mut compared = 0;
    for (i, file_value) in file.values.iter().enumerate() {
        let file_index = file.offset + i as i64;
        let gen_index = file_index - file.offset + shift;
        if gen_index < 0 || gen_index as usize >= generated.len() {
            continue;
        }
        let generated_value = &generated[gen_index as usize];
        if file_value != generated_value {
            return CompareOutcome::Divergence {
                index: file_index,
                file_value: file_value.clone(),
                generated: generated_value.clone(),
            };
        }
        compared += 1;
    }
    CompareOutcome::Match { compared }
}
