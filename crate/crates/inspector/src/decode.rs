//! Schema-driven decoding of wire bytes into an annotated value tree.
//!
//! The byte-level rules come straight from the `wirepack` codec — the same
//! varint, ZigZag, float, and count primitives the serializer uses — so the
//! inspector cannot drift from the library. What this module adds is the
//! interpretive walk over a runtime schema, byte ranges on every node, and
//! error annotation with the offset and schema path of the failure.

use std::ops::Range;

use wirepack::codec::{decode_f32, decode_f64, decode_varint, zigzag_decode};
use wirepack::ser::read_count;
use wirepack::{Error, InputBuffer, ReadBuffer};

use crate::schema::SchemaExpr;

/// One decoded node: a scalar leaf or a container, with the half-open byte
/// range it occupies. Sibling ranges tile their parent without gaps; a
/// container's range additionally covers its count prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedValue {
    pub range: Range<usize>,
    pub node: Node,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Unsigned(u64),
    Signed(i64),
    F32(f32),
    F64(f64),
    Bool(bool),
    Str(String),
    Seq {
        count_range: Range<usize>,
        children: Vec<DecodedValue>,
    },
    Set {
        count_range: Range<usize>,
        children: Vec<DecodedValue>,
    },
    Map {
        count_range: Range<usize>,
        entries: Vec<(DecodedValue, DecodedValue)>,
    },
    Pair(Box<DecodedValue>, Box<DecodedValue>),
    Record(Vec<(String, DecodedValue)>),
}

impl DecodedValue {
    /// Number of direct children for containers, `None` for leaves.
    pub fn count(&self) -> Option<usize> {
        match &self.node {
            Node::Seq { children, .. } | Node::Set { children, .. } => Some(children.len()),
            Node::Map { entries, .. } => Some(entries.len()),
            Node::Pair(..) => Some(2),
            Node::Record(fields) => Some(fields.len()),
            _ => None,
        }
    }
}

/// A decode failure annotated with where it happened: the byte offset at
/// which the failing value started and the schema path down to it.
#[derive(Debug, thiserror::Error)]
#[error("decode error at byte {offset}, path {path}: {source}")]
pub struct InspectError {
    pub offset: u64,
    pub path: String,
    #[source]
    pub source: Error,
}

#[derive(Clone, Copy)]
enum PathSeg {
    Index(usize),
    MapKey(usize),
    MapValue(usize),
    PairFirst,
    PairSecond,
    Field(usize),
}

/// Decodes one complete message against `schema`, attaching byte offsets to
/// every node. Trailing bytes after the message are an error, like the
/// library's byte-string parse.
pub fn inspect(schema: &SchemaExpr, bytes: &[u8]) -> Result<DecodedValue, InspectError> {
    let mut walker = Walker {
        input: InputBuffer::new(bytes),
        path: Vec::new(),
        failure_offset: None,
    };
    match walker.decode(schema) {
        Ok(value) => {
            let remaining = bytes.len() as u64 - walker.input.position();
            if remaining > 0 {
                return Err(InspectError {
                    offset: walker.input.position(),
                    path: "$".to_string(),
                    source: Error::TrailingBytes { remaining },
                });
            }
            Ok(value)
        }
        Err(source) => Err(InspectError {
            offset: walker.failure_offset.unwrap_or(0),
            path: render_path(schema, &walker.path),
            source,
        }),
    }
}

struct Walker<'a> {
    input: InputBuffer<'a>,
    path: Vec<PathSeg>,
    failure_offset: Option<u64>,
}

impl Walker<'_> {
    fn pos(&self) -> usize {
        self.input.position() as usize
    }

    /// Pins the failure to the value that started at `start`; only the
    /// innermost failing value wins.
    fn pin<T>(&mut self, start: usize, result: Result<T, Error>) -> Result<T, Error> {
        if result.is_err() && self.failure_offset.is_none() {
            self.failure_offset = Some(start as u64);
        }
        result
    }

    fn decode(&mut self, schema: &SchemaExpr) -> Result<DecodedValue, Error> {
        let start = self.pos();
        let node = match schema {
            SchemaExpr::U8 => Node::Unsigned(self.unsigned(start, 8, "u8")?),
            SchemaExpr::U16 => Node::Unsigned(self.unsigned(start, 16, "u16")?),
            SchemaExpr::U32 => Node::Unsigned(self.unsigned(start, 32, "u32")?),
            SchemaExpr::U64 => Node::Unsigned(self.unsigned(start, 64, "u64")?),
            SchemaExpr::I8 => Node::Signed(self.signed(start, 8, "i8")?),
            SchemaExpr::I16 => Node::Signed(self.signed(start, 16, "i16")?),
            SchemaExpr::I32 => Node::Signed(self.signed(start, 32, "i32")?),
            SchemaExpr::I64 => Node::Signed(self.signed(start, 64, "i64")?),
            SchemaExpr::F32 => {
                let raw = decode_f32(&mut self.input);
                Node::F32(self.pin(start, raw)?)
            }
            SchemaExpr::F64 => {
                let raw = decode_f64(&mut self.input);
                Node::F64(self.pin(start, raw)?)
            }
            SchemaExpr::Bool => {
                let byte = self.input.read_byte();
                let byte = self.pin(start, byte)?;
                let value = match byte {
                    0 => false,
                    1 => true,
                    byte => return self.pin(start, Err(Error::MalformedBool { byte })),
                };
                Node::Bool(value)
            }
            SchemaExpr::Str => {
                let len = self.count(start, 1)?;
                let bytes = self.input.read_vec(len);
                let bytes = self.pin(start, bytes)?;
                let text = String::from_utf8(bytes).map_err(|_| Error::InvalidUtf8);
                Node::Str(self.pin(start, text)?)
            }
            SchemaExpr::Seq(elem) if **elem == SchemaExpr::U8 => {
                // Byte sequences are a single block after the count, so
                // each child is one raw byte.
                let count = self.count(start, 1)?;
                let count_range = start..self.pos();
                let block = self.input.read_vec(count);
                let block = self.pin(start, block)?;
                let block_start = self.pos() - count;
                let children = block
                    .iter()
                    .enumerate()
                    .map(|(i, byte)| DecodedValue {
                        range: block_start + i..block_start + i + 1,
                        node: Node::Unsigned(*byte as u64),
                    })
                    .collect();
                Node::Seq {
                    count_range,
                    children,
                }
            }
            SchemaExpr::Seq(elem) | SchemaExpr::Set(elem) => {
                let count = self.count(start, elem.min_wire_size())?;
                let count_range = start..self.pos();
                let mut children = Vec::with_capacity(prealloc_nodes(count, &self.input));
                for i in 0..count {
                    self.path.push(PathSeg::Index(i));
                    children.push(self.decode(elem)?);
                    self.path.pop();
                }
                match schema {
                    SchemaExpr::Seq(_) => Node::Seq {
                        count_range,
                        children,
                    },
                    _ => Node::Set {
                        count_range,
                        children,
                    },
                }
            }
            SchemaExpr::Map(key, value) => {
                let entry_min = key.min_wire_size().saturating_add(value.min_wire_size());
                let count = self.count(start, entry_min)?;
                let count_range = start..self.pos();
                let mut entries = Vec::with_capacity(prealloc_nodes(count, &self.input));
                for i in 0..count {
                    self.path.push(PathSeg::MapKey(i));
                    let k = self.decode(key)?;
                    self.path.pop();
                    self.path.push(PathSeg::MapValue(i));
                    let v = self.decode(value)?;
                    self.path.pop();
                    entries.push((k, v));
                }
                Node::Map {
                    count_range,
                    entries,
                }
            }
            SchemaExpr::Pair(first, second) => {
                self.path.push(PathSeg::PairFirst);
                let a = self.decode(first)?;
                self.path.pop();
                self.path.push(PathSeg::PairSecond);
                let b = self.decode(second)?;
                self.path.pop();
                Node::Pair(Box::new(a), Box::new(b))
            }
            SchemaExpr::Record(schema_fields) => {
                let mut fields = Vec::with_capacity(schema_fields.len());
                for (i, (name, field)) in schema_fields.iter().enumerate() {
                    self.path.push(PathSeg::Field(i));
                    let value = self.decode(field)?;
                    self.path.pop();
                    fields.push((name.clone(), value));
                }
                Node::Record(fields)
            }
        };
        Ok(DecodedValue {
            range: start..self.pos(),
            node,
        })
    }

    fn unsigned(&mut self, start: usize, bits: u32, ty: &'static str) -> Result<u64, Error> {
        let raw = decode_varint(&mut self.input);
        let raw = self.pin(start, raw)?;
        if bits < 64 && raw >> bits != 0 {
            return self.pin(start, Err(Error::Overflow { ty }));
        }
        Ok(raw)
    }

    fn signed(&mut self, start: usize, bits: u32, ty: &'static str) -> Result<i64, Error> {
        let raw = decode_varint(&mut self.input);
        let signed = zigzag_decode(self.pin(start, raw)?);
        if bits < 64 {
            let min = -(1i64 << (bits - 1));
            let max = (1i64 << (bits - 1)) - 1;
            if signed < min || signed > max {
                return self.pin(start, Err(Error::Overflow { ty }));
            }
        }
        Ok(signed)
    }

    /// Reads a container count with the serializer's sanity bound, plus a
    /// node-count guard for zero-wire-size elements, whose counts the byte
    /// bound alone cannot limit.
    fn count(&mut self, start: usize, min_elem_size: usize) -> Result<usize, Error> {
        let count = read_count(&mut self.input, min_elem_size);
        let count = self.pin(start, count)?;
        if min_elem_size == 0 {
            let remaining = self.input.remaining().unwrap_or(0);
            if count as u64 > remaining {
                return self.pin(
                    start,
                    Err(Error::SizeSanity {
                        count: count as u64,
                        min_elem_size,
                        remaining,
                    }),
                );
            }
        }
        Ok(count)
    }
}

/// Caps speculative node preallocation by the bytes actually left.
fn prealloc_nodes(count: usize, input: &InputBuffer<'_>) -> usize {
    let remaining = input.remaining().unwrap_or(0);
    count.min(usize::try_from(remaining).unwrap_or(usize::MAX))
}

/// Renders a failure path like `$.rows[3].value`, resolving record field
/// names by walking the schema alongside the segments.
fn render_path(root: &SchemaExpr, segs: &[PathSeg]) -> String {
    let mut out = String::from("$");
    let mut schema = root;
    for seg in segs {
        match (seg, schema) {
            (PathSeg::Index(i), SchemaExpr::Seq(elem) | SchemaExpr::Set(elem)) => {
                out.push_str(&format!("[{i}]"));
                schema = elem;
            }
            (PathSeg::MapKey(i), SchemaExpr::Map(key, _)) => {
                out.push_str(&format!("[{i}].key"));
                schema = key;
            }
            (PathSeg::MapValue(i), SchemaExpr::Map(_, value)) => {
                out.push_str(&format!("[{i}].value"));
                schema = value;
            }
            (PathSeg::PairFirst, SchemaExpr::Pair(first, _)) => {
                out.push_str(".0");
                schema = first;
            }
            (PathSeg::PairSecond, SchemaExpr::Pair(_, second)) => {
                out.push_str(".1");
                schema = second;
            }
            (PathSeg::Field(i), SchemaExpr::Record(fields)) => {
                out.push('.');
                out.push_str(&fields[*i].0);
                schema = &fields[*i].1;
            }
            _ => break,
        }
    }
    out
}
