//! One-call serialization to byte strings or streams and back.

use std::io::{Read, Write};
use std::ops::Deref;

use crate::buffer::{InputBuffer, OutputBuffer, ReadBuffer, StreamReader, StreamWriter};
use crate::error::{Error, Result};
use crate::ser::Serializable;

/// An immutable byte sequence holding one complete serialized message.
///
/// Only produced by finished serialization, never a partial write. Derefs to
/// `[u8]` so it drops into anything expecting plain bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireBytes(Vec<u8>);

impl WireBytes {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }
}

impl Deref for WireBytes {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl AsRef<[u8]> for WireBytes {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl From<WireBytes> for Vec<u8> {
    fn from(wire: WireBytes) -> Vec<u8> {
        wire.0
    }
}

/// Serializes `value` into its canonical wire encoding.
pub fn to_bytes<T: Serializable>(value: &T) -> Result<WireBytes> {
    let mut out = OutputBuffer::new();
    value.serialize(&mut out)?;
    Ok(WireBytes(out.into_vec()))
}

/// Parses exactly one value out of `bytes`. A byte string is one message by
/// convention, so unconsumed bytes are an error.
pub fn from_bytes<T: Serializable>(bytes: &[u8]) -> Result<T> {
    let mut input = InputBuffer::new(bytes);
    let value = T::parse(&mut input)?;
    match input.remaining() {
        Some(0) | None => Ok(value),
        Some(remaining) => Err(Error::TrailingBytes { remaining }),
    }
}

/// Serializes `value` onto a writable stream and flushes when the message is
/// complete. Produces byte-identical output to [`to_bytes`].
pub fn to_stream<T: Serializable, W: Write>(value: &T, stream: W) -> Result<()> {
    let mut writer = StreamWriter::new(stream);
    value.serialize(&mut writer)?;
    writer.finish()
}

/// Parses one value from a readable stream, leaving the stream positioned
/// immediately after the message. No trailing-bytes check: a stream is a
/// message channel, so back-to-back messages parse with repeated calls.
///
/// Reads are exact, so pass a `std::io::BufReader` when the underlying
/// source is a raw file or socket.
pub fn from_stream<T: Serializable, R: Read>(stream: R) -> Result<T> {
    let mut reader = StreamReader::new(stream);
    T::parse(&mut reader)
}
