//! OEIS b-file parsing.
//!
//! A b-file lists one term per line as `n a(n)`; lines starting with `#`
//! and blank lines are ignored.  Indices must be strictly increasing.

use std::fmt;

use num_bigint::BigInt;

/// A parsed b-file: a strictly increasing list of `(index, value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    entries: Vec<(i64, BigInt)>,
}

/// A parse failure, pointing at the offending line (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFileError {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for BFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

impl std::error::Error for BFileError {}

impl BFile {
    pub fn parse(text: &str) -> Result<Self, BFileError> {
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |reason: String| BFileError { line, reason };
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let mut fields = content.split_whitespace();
            let (Some(a), Some(b)) = (fields.next(), fields.next()) else {
                return Err(err("expected two fields: index and value".into()));
            };
            if let Some(extra) = fields.next() {
                return Err(err(format!("unexpected trailing field '{extra}'")));
            }
            let idx: i64 = a
                .parse()
                .map_err(|_| err(format!("invalid index '{a}'")))?;
            let val: BigInt = b
                .parse()
                .map_err(|_| err(format!("invalid value '{b}'")))?;
            if let Some(&(prev, _)) = entries.last() {
                if idx <= prev {
                    return Err(err(format!(
                        "indices must be strictly increasing ({prev} is followed by {idx})"
                    )));
                }
            }
            entries.push((idx, val));
        }
        Ok(BFile { entries })
    }

    pub fn entries(&self) -> &[(i64, BigInt)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_index(&self) -> Option<i64> {
        self.entries.first().map(|&(n, _)| n)
    }

    pub fn max_index(&self) -> Option<i64> {
        self.entries.last().map(|&(n, _)| n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_entries() {
        let bf = BFile::parse("0 1\n1 1\n2 0\n3 0\n4 2\n").unwrap();
        assert_eq!(bf.entries().len(), 5);
        assert_eq!(bf.min_index(), Some(0));
        assert_eq!(bf.max_index(), Some(4));
        assert_eq!(bf.entries()[4], (4, BigInt::from(2)));
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let bf = BFile::parse("# A002464\n\n  # another comment\n1 1\n2 0\n").unwrap();
        assert_eq!(bf.entries().len(), 2);
    }

    #[test]
    fn accepts_values_beyond_machine_integers() {
        let bf = BFile::parse("1 123456789012345678901234567890\n").unwrap();
        assert_eq!(
            bf.entries()[0].1,
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn rejects_missing_value() {
        let e = BFile::parse("1 1\n2\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.reason.contains("two fields"));
    }

    #[test]
    fn rejects_trailing_field() {
        let e = BFile::parse("1 1 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.reason.contains("trailing"));
    }

    #[test]
    fn rejects_non_monotone_indices() {
        let e = BFile::parse("1 1\n3 9\n3 9\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.reason.contains("strictly increasing"));
    }

    #[test]
    fn rejects_bad_numbers() {
        assert_eq!(BFile::parse("x 1\n").unwrap_err().line, 1);
        assert_eq!(BFile::parse("1 x\n").unwrap_err().line, 1);
    }

    #[test]
    fn negative_indices_are_allowed() {
        let bf = BFile::parse("-2 5\n-1 7\n0 9\n").unwrap();
        assert_eq!(bf.min_index(), Some(-2));
    }
}
