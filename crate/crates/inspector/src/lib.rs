//! Schema-driven inspection of wirepack wire bytes.
//!
//! The format is positional and tag-free, so raw bytes are unreadable
//! without knowing their shape. Given a schema expression like
//! `seq<u32>` or `record{n:u32,from:set<u32>,to:set<u32>}`, this crate
//! decodes a message into a tree of values annotated with the byte range
//! each one came from — the same job as annotating a hex dump by hand.

pub mod decode;
pub mod render;
pub mod schema;

pub use decode::{inspect, DecodedValue, InspectError, Node};
pub use render::{render_json, render_tree};
pub use schema::{parse_schema, SchemaError, SchemaExpr, MAX_DEPTH};

/// Error from [`parse_hex`]: the byte offset of the offending character in
/// the original text, or an odd digit count.
#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum HexError {
    #[error("invalid hex digit at offset {offset}")]
    InvalidDigit { offset: usize },
    #[error("odd number of hex digits")]
    OddLength,
}

/// Parses hex text into bytes. Digits pair up most-significant first;
/// case and whitespace (anywhere) are ignored.
pub fn parse_hex(text: &str) -> Result<Vec<u8>, HexError> {
    let mut out = Vec::with_capacity(text.len() / 2);
    let mut pending: Option<u8> = None;
    for (offset, ch) in text.char_indices() {
        if ch.is_whitespace() {
            continue;
        }
        let digit = ch
            .to_digit(16)
            .ok_or(HexError::InvalidDigit { offset })? as u8;
        match pending.take() {
            Some(high) => out.push(high << 4 | digit),
            None => pending = Some(digit),
        }
    }
    if pending.is_some() {
        return Err(HexError::OddLength);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_is_case_and_whitespace_insensitive() {
        let spaced = parse_hex("02 16 cd 02").unwrap();
        let packed = parse_hex("0216CD02").unwrap();
        assert_eq!(spaced, packed);
        assert_eq!(spaced, vec![0x02, 0x16, 0xCD, 0x02]);
        assert_eq!(parse_hex("  0a\n0B\t").unwrap(), vec![0x0A, 0x0B]);
        assert_eq!(parse_hex("").unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn hex_errors() {
        assert_eq!(parse_hex("0g"), Err(HexError::InvalidDigit { offset: 1 }));
        assert_eq!(parse_hex("abc"), Err(HexError::OddLength));
    }
}
