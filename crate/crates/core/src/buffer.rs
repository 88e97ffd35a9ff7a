//! Byte sinks and sources decoupling the serializer from storage.
//!
//! Two in-memory types ([`OutputBuffer`], [`InputBuffer`]) and two stream
//! adapters ([`StreamWriter`], [`StreamReader`]). A buffer instance is
//! single-owner; distinct buffers are fully independent, so concurrency is
//! one buffer per thread.

use std::io::{self, Read, Write};

use crate::error::{Error, Result};

/// Internal chunk for stream-backed sinks, so serializing many small values
/// never turns into many small syscalls.
pub const STREAM_CHUNK: usize = 64 * 1024;

/// Byte sink with append semantics.
pub trait WriteBuffer {
    /// Appends `bytes` verbatim, in order.
    fn write(&mut self, bytes: &[u8]) -> Result<()>;
}

/// Byte source with a monotonically advancing read cursor.
///
/// A failed read poisons the source: the cursor stops at the end (or the
/// failure point, for streams) and every later read reports the same error,
/// so no partial value can ever be observed.
pub trait ReadBuffer {
    /// Fills `dst` exactly, or fails with `Truncated`/`Io` without yielding
    /// partial data.
    fn read_exact(&mut self, dst: &mut [u8]) -> Result<()>;

    /// Reads a single byte.
    fn read_byte(&mut self) -> Result<u8> {
        let mut b = [0u8];
        self.read_exact(&mut b)?;
        Ok(b[0])
    }

    /// Reads exactly `n` bytes into a fresh vector. Allocation grows in
    /// bounded chunks so a hostile length cannot force a huge up-front
    /// reservation when the source size is unknown.
    fn read_vec(&mut self, n: usize) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(n.min(STREAM_CHUNK));
        let mut left = n;
        while left > 0 {
            let take = left.min(STREAM_CHUNK);
            let start = out.len();
            out.resize(start + take, 0);
            self.read_exact(&mut out[start..])?;
            left -= take;
        }
        Ok(out)
    }

    /// Bytes consumed so far.
    fn position(&self) -> u64;

    /// Bytes left to read, when the source length is knowable. Streams
    /// return `None`.
    fn remaining(&self) -> Option<u64>;
}

impl WriteBuffer for Vec<u8> {
    fn write(&mut self, bytes: &[u8]) -> Result<()> {
        self.extend_from_slice(bytes);
        Ok(())
    }
}

/// Growable in-memory byte sink. The bytes are retrievable in write order as
/// one contiguous message.
#[derive(Debug, Default, Clone)]
pub struct OutputBuffer {
    storage: Vec<u8>,
}

impl OutputBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            storage: Vec::with_capacity(capacity),
        }
    }

    /// Total bytes written since creation or the last reset.
    pub fn len(&self) -> usize {
        self.storage.len()
    }

    pub fn is_empty(&self) -> bool {
        self.storage.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.storage
    }

    /// Clears the buffer for reuse, keeping its allocation.
    pub fn reset(&mut self) {
        self.storage.clear();
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.storage
    }
}

impl WriteBuffer for OutputBuffer {
    fn write(&mut self, bytes: &[u8]) -> Result<()> {
        self.storage.extend_from_slice(bytes);
        Ok(())
    }
}

/// Read cursor over a byte slice.
#[derive(Debug)]
pub struct InputBuffer<'a> {
    source: &'a [u8],
    cursor: usize,
}

impl<'a> InputBuffer<'a> {
    pub fn new(source: &'a [u8]) -> Self {
        Self { source, cursor: 0 }
    }

    /// The unread tail of the source.
    pub fn rest(&self) -> &'a [u8] {
        &self.source[self.cursor..]
    }
}

impl ReadBuffer for InputBuffer<'_> {
    fn read_exact(&mut self, dst: &mut [u8]) -> Result<()> {
        match self.source.len() - self.cursor {
            left if left >= dst.len() => {
                dst.copy_from_slice(&self.source[self.cursor..self.cursor + dst.len()]);
                self.cursor += dst.len();
                Ok(())
            }
            _ => {
                // Over-read: park the cursor at the end so every later read
                // keeps failing instead of yielding misaligned bytes.
                self.cursor = self.source.len();
                Err(Error::Truncated)
            }
        }
    }

    fn read_byte(&mut self) -> Result<u8> {
        if self.cursor < self.source.len() {
            let b = self.source[self.cursor];
            self.cursor += 1;
            Ok(b)
        } else {
            Err(Error::Truncated)
        }
    }

    fn read_vec(&mut self, n: usize) -> Result<Vec<u8>> {
        if self.source.len() - self.cursor >= n {
            let out = self.source[self.cursor..self.cursor + n].to_vec();
            self.cursor += n;
            Ok(out)
        } else {
            self.cursor = self.source.len();
            Err(Error::Truncated)
        }
    }

    fn position(&self) -> u64 {
        self.cursor as u64
    }

    fn remaining(&self) -> Option<u64> {
        Some((self.source.len() - self.cursor) as u64)
    }
}

/// Sink that proxies to a writable stream through a 64 KiB chunk.
///
/// Call [`finish`](StreamWriter::finish) when the message is complete; the
/// internal buffer also flushes on drop as a backstop.
pub struct StreamWriter<W: Write> {
    inner: io::BufWriter<W>,
    written: u64,
}

impl<W: Write> StreamWriter<W> {
    pub fn new(stream: W) -> Self {
        Self {
            inner: io::BufWriter::with_capacity(STREAM_CHUNK, stream),
            written: 0,
        }
    }

    /// Bytes accepted so far.
    pub fn position(&self) -> u64 {
        self.written
    }

    /// Flushes buffered bytes to the underlying stream.
    pub fn finish(&mut self) -> Result<()> {
        self.inner.flush().map_err(|source| Error::Io {
            offset: self.written,
            source,
        })
    }
}

impl<W: Write> WriteBuffer for StreamWriter<W> {
    fn write(&mut self, bytes: &[u8]) -> Result<()> {
        self.inner.write_all(bytes).map_err(|source| Error::Io {
            offset: self.written,
            source,
        })?;
        self.written += bytes.len() as u64;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
enum Poison {
    Truncated,
    Io(io::ErrorKind),
}

/// Source that pulls from a readable stream.
///
/// Reads are exact: the adapter never consumes bytes beyond the value being
/// parsed, so a stream can carry several back-to-back messages. Wrap slow
/// raw streams (files, sockets) in `std::io::BufReader`; buffering must live
/// with the caller-owned reader to keep multi-message positioning correct.
pub struct StreamReader<R: Read> {
    inner: R,
    consumed: u64,
    poison: Option<Poison>,
}

impl<R: Read> StreamReader<R> {
    pub fn new(stream: R) -> Self {
        Self {
            inner: stream,
            consumed: 0,
            poison: None,
        }
    }

    pub fn into_inner(self) -> R {
        self.inner
    }

    fn poisoned_error(&self, poison: Poison) -> Error {
        match poison {
            Poison::Truncated => Error::Truncated,
            Poison::Io(kind) => Error::Io {
                offset: self.consumed,
                source: io::Error::from(kind),
            },
        }
    }
}

impl<R: Read> ReadBuffer for StreamReader<R> {
    fn read_exact(&mut self, dst: &mut [u8]) -> Result<()> {
        if let Some(p) = self.poison {
            return Err(self.poisoned_error(p));
        }
        match self.inner.read_exact(dst) {
            Ok(()) => {
                self.consumed += dst.len() as u64;
                Ok(())
            }
            Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => {
                self.poison = Some(Poison::Truncated);
                Err(Error::Truncated)
            }
            Err(source) => {
                self.poison = Some(Poison::Io(source.kind()));
                Err(Error::Io {
                    offset: self.consumed,
                    source,
                })
            }
        }
    }

    fn position(&self) -> u64 {
        self.consumed
    }

    fn remaining(&self) -> Option<u64> {
        None
    }
}
