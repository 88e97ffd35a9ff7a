//! Type expressions describing what a byte stream encodes.
//!
//! The wire format stores no type tags, so an external schema is the only
//! way to interpret raw bytes. Grammar:
//!
//! ```text
//! type   := scalar | "seq<" type ">" | "set<" type ">"
//!         | "map<" type "," type ">" | "pair<" type "," type ">"
//!         | "record{" [name ":" type ("," name ":" type)*] "}"
//! scalar := u8|u16|u32|u64|i8|i16|i32|i64|f32|f64|bool|str
//! ```
//!
//! Whitespace between tokens is ignored. Nesting is limited to
//! [`MAX_DEPTH`] levels.

use std::fmt;

/// Deepest allowed type nesting; one level per container constructor.
pub const MAX_DEPTH: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaExpr {
    U8,
    U16,
    U32,
    U64,
    I8,
    I16,
    I32,
    I64,
    F32,
    F64,
    Bool,
    Str,
    Seq(Box<SchemaExpr>),
    Set(Box<SchemaExpr>),
    Map(Box<SchemaExpr>, Box<SchemaExpr>),
    Pair(Box<SchemaExpr>, Box<SchemaExpr>),
    Record(Vec<(String, SchemaExpr)>),
}

impl SchemaExpr {
    /// Smallest possible wire size of one value of this shape, mirroring
    /// the serializer's container sanity bound.
    pub fn min_wire_size(&self) -> usize {
        match self {
            SchemaExpr::F32 => 4,
            SchemaExpr::F64 => 8,
            SchemaExpr::Pair(a, b) => a.min_wire_size().saturating_add(b.min_wire_size()),
            SchemaExpr::Record(fields) => fields
                .iter()
                .fold(0usize, |acc, (_, f)| acc.saturating_add(f.min_wire_size())),
            _ => 1,
        }
    }

    /// Constructor word for container nodes, scalar name for leaves.
    pub fn kind_name(&self) -> &'static str {
        match self {
            SchemaExpr::U8 => "u8",
            SchemaExpr::U16 => "u16",
            SchemaExpr::U32 => "u32",
            SchemaExpr::U64 => "u64",
            SchemaExpr::I8 => "i8",
            SchemaExpr::I16 => "i16",
            SchemaExpr::I32 => "i32",
            SchemaExpr::I64 => "i64",
            SchemaExpr::F32 => "f32",
            SchemaExpr::F64 => "f64",
            SchemaExpr::Bool => "bool",
            SchemaExpr::Str => "str",
            SchemaExpr::Seq(_) => "seq",
            SchemaExpr::Set(_) => "set",
            SchemaExpr::Map(..) => "map",
            SchemaExpr::Pair(..) => "pair",
            SchemaExpr::Record(_) => "record",
        }
    }
}

/// Prints the canonical text form, which re-parses to an equal tree.
impl fmt::Display for SchemaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaExpr::Seq(elem) => write!(f, "seq<{elem}>"),
            SchemaExpr::Set(elem) => write!(f, "set<{elem}>"),
            SchemaExpr::Map(k, v) => write!(f, "map<{k},{v}>"),
            SchemaExpr::Pair(a, b) => write!(f, "pair<{a},{b}>"),
            SchemaExpr::Record(fields) => {
                write!(f, "record{{")?;
                for (i, (name, field)) in fields.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{name}:{field}")?;
                }
                write!(f, "}}")
            }
            scalar => f.write_str(scalar.kind_name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("nesting deeper than {MAX_DEPTH} levels at offset {offset}")]
    DepthExceeded { offset: usize },
}

/// Parses a schema expression, rejecting anything but a single complete
/// type.
pub fn parse_schema(text: &str) -> Result<SchemaExpr, SchemaError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expr = parser.parse_type(1)?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.syntax("unexpected trailing characters"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> SchemaError {
        SchemaError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn expect(&mut self, ch: u8) -> Result<(), SchemaError> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", ch as char)))
        }
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap()
    }

    fn parse_type(&mut self, depth: usize) -> Result<SchemaExpr, SchemaError> {
        self.skip_ws();
        if depth > MAX_DEPTH {
            return Err(SchemaError::DepthExceeded { offset: self.pos });
        }
        let word_start = self.pos;
        let word = self.word();
        if word.is_empty() {
            return Err(self.syntax("expected a type name"));
        }
        match word {
            "u8" => Ok(SchemaExpr::U8),
            "u16" => Ok(SchemaExpr::U16),
            "u32" => Ok(SchemaExpr::U32),
            "u64" => Ok(SchemaExpr::U64),
            "i8" => Ok(SchemaExpr::I8),
            "i16" => Ok(SchemaExpr::I16),
            "i32" => Ok(SchemaExpr::I32),
            "i64" => Ok(SchemaExpr::I64),
            "f32" => Ok(SchemaExpr::F32),
            "f64" => Ok(SchemaExpr::F64),
            "bool" => Ok(SchemaExpr::Bool),
            "str" => Ok(SchemaExpr::Str),
            "seq" | "set" => {
                self.expect(b'<')?;
                let elem = Box::new(self.parse_type(depth + 1)?);
                self.expect(b'>')?;
                Ok(if word == "seq" {
                    SchemaExpr::Seq(elem)
                } else {
                    SchemaExpr::Set(elem)
                })
            }
            "map" | "pair" => {
                self.expect(b'<')?;
                let first = Box::new(self.parse_type(depth + 1)?);
                self.expect(b',')?;
                let second = Box::new(self.parse_type(depth + 1)?);
                self.expect(b'>')?;
                Ok(if word == "map" {
                    SchemaExpr::Map(first, second)
                } else {
                    SchemaExpr::Pair(first, second)
                })
            }
            "record" => {
                self.expect(b'{')?;
                let mut fields: Vec<(String, SchemaExpr)> = Vec::new();
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&b'}') {
                    self.pos += 1;
                    return Ok(SchemaExpr::Record(fields));
                }
                loop {
                    self.skip_ws();
                    let name_start = self.pos;
                    let name = self.word().to_string();
                    if name.is_empty() {
                        return Err(self.syntax("expected a field name"));
                    }
                    if fields.iter().any(|(n, _)| *n == name) {
                        return Err(SchemaError::Syntax {
                            offset: name_start,
                            message: format!("duplicate field name '{name}'"),
                        });
                    }
                    self.expect(b':')?;
                    let field = self.parse_type(depth + 1)?;
                    fields.push((name, field));
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(SchemaExpr::Record(fields));
                        }
                        _ => return Err(self.syntax("expected ',' or '}'")),
                    }
                }
            }
            _ => Err(SchemaError::Syntax {
                offset: word_start,
                message: format!("unknown type name '{word}'"),
            }),
        }
    }
}
