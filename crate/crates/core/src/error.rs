//! Error type shared by the codec, the buffers, and the serializer.

/// Everything that can go wrong while encoding or decoding.
///
/// Decode-side problems are ordinary return values, never panics: the wire
/// data may come from an untrusted peer, so a corrupted message must surface
/// as a matchable error with enough context to point at the damage.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The input ended before the value did.
    #[error("unexpected end of input")]
    Truncated,

    /// A varint ran past ten bytes, or its value does not fit the
    /// destination type (`ty` names what it was being decoded into).
    #[error("varint value out of range for {ty}")]
    Overflow { ty: &'static str },

    /// A boolean byte other than 0x00 or 0x01.
    #[error("invalid boolean byte {byte:#04x}")]
    MalformedBool { byte: u8 },

    /// A container declared more elements than the remaining bytes could
    /// possibly hold, given the minimum wire size of one element.
    #[error(
        "declared count {count} needs at least {} bytes but only {remaining} remain",
        count.saturating_mul(*min_elem_size as u64)
    )]
    SizeSanity {
        count: u64,
        min_elem_size: usize,
        remaining: u64,
    },

    /// String bytes that are not valid UTF-8.
    #[error("string bytes are not valid UTF-8")]
    InvalidUtf8,

    /// A complete value was parsed but input bytes were left over.
    #[error("{remaining} trailing bytes after message")]
    TrailingBytes { remaining: u64 },

    /// An underlying stream failed, at the given byte offset.
    #[error("i/o error at byte {offset}: {source}")]
    Io {
        offset: u64,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for the decode-side errors that indicate corrupted or hostile
    /// input rather than an environment failure.
    pub fn is_malformed_input(&self) -> bool {
        !matches!(self, Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
