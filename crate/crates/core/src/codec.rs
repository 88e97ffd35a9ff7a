//! Byte-level primitives: base-128 varints, the ZigZag transform, and
//! fixed-width little-endian float copies.
//!
//! Everything here is a pure function over caller-owned buffers. All integral
//! widths funnel through the 64-bit codec; callers narrow the result and
//! report overflow themselves.

use crate::buffer::{ReadBuffer, WriteBuffer};
use crate::error::{Error, Result};

/// Longest possible encoding of a 64-bit varint.
pub const MAX_VARINT_LEN: usize = 10;

const CONTINUATION: u8 = 0x80;
const PAYLOAD_MASK: u8 = 0x7F;

/// Appends `value` as a base-128 varint: 7 bits per byte, least-significant
/// group first, high bit set on every byte but the last.
pub fn encode_varint<W: WriteBuffer + ?Sized>(mut value: u64, out: &mut W) -> Result<()> {
    let mut scratch = [0u8; MAX_VARINT_LEN];
    let mut n = 0;
    while value >= CONTINUATION as u64 {
        scratch[n] = (value as u8) | CONTINUATION;
        value >>= 7;
        n += 1;
    }
    scratch[n] = value as u8;
    out.write(&scratch[..n + 1])
}

/// Reads one varint, consuming exactly its bytes.
///
/// Non-canonical (padded) encodings are accepted. An eleventh continuation
/// byte, or bits beyond 2^64 in the tenth byte, is an overflow; running out
/// of input before a terminating byte is a truncation.
pub fn decode_varint<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<u64> {
    let mut value = 0u64;
    for i in 0..MAX_VARINT_LEN {
        let byte = input.read_byte()?;
        let payload = byte & PAYLOAD_MASK;
        if i == MAX_VARINT_LEN - 1 {
            // Bits 63.. live in the tenth byte; only its lowest payload bit
            // may be set, and it must terminate.
            if payload > 1 || byte & CONTINUATION != 0 {
                return Err(Error::Overflow { ty: "u64" });
            }
        }
        value |= (payload as u64) << (7 * i);
        if byte & CONTINUATION == 0 {
            return Ok(value);
        }
    }
    unreachable!("loop always returns by the tenth byte")
}

/// Number of bytes `encode_varint` emits for `value`.
#[inline]
pub fn varint_len(value: u64) -> usize {
    let bits = 64 - value.leading_zeros() as usize;
    bits.max(1).div_ceil(7)
}

/// Maps a signed value onto an unsigned one so small magnitudes of either
/// sign stay small: 0 → 0, -1 → 1, 1 → 2, -2 → 3, ...
#[inline]
pub fn zigzag_encode(value: i64) -> u64 {
    ((value << 1) ^ (value >> 63)) as u64
}

/// Exact inverse of [`zigzag_encode`].
#[inline]
pub fn zigzag_decode(mapped: u64) -> i64 {
    ((mapped >> 1) as i64) ^ -((mapped & 1) as i64)
}

/// Appends the 8 little-endian bytes of `value`, bit-exact.
pub fn encode_f64<W: WriteBuffer + ?Sized>(value: f64, out: &mut W) -> Result<()> {
    out.write(&value.to_le_bytes())
}

/// Reads 8 little-endian bytes back into an `f64`, bit-exact.
pub fn decode_f64<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<f64> {
    let mut raw = [0u8; 8];
    input.read_exact(&mut raw)?;
    Ok(f64::from_le_bytes(raw))
}

/// Appends the 4 little-endian bytes of `value`, bit-exact.
pub fn encode_f32<W: WriteBuffer + ?Sized>(value: f32, out: &mut W) -> Result<()> {
    out.write(&value.to_le_bytes())
}

/// Reads 4 little-endian bytes back into an `f32`, bit-exact.
pub fn decode_f32<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<f32> {
    let mut raw = [0u8; 4];
    input.read_exact(&mut raw)?;
    Ok(f32::from_le_bytes(raw))
}
