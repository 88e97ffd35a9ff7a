//! Compact tag-free binary serialization.
//!
//! The wire format carries only data and the minimal structure needed to
//! recover it: unsigned integrals become base-128 varints, signed integrals
//! go through ZigZag first so small negative numbers stay small, floats are
//! raw little-endian copies, and strings and containers are a varint count
//! followed by their elements. There are no type tags and no field numbers,
//! which is where the size and speed come from — and why decoding a message
//! requires knowing its shape.
//!
//! ```
//! let data: Vec<u32> = vec![22, 333];
//! let wire = wirepack::to_bytes(&data)?;
//! assert_eq!(wire.as_bytes(), &[0x02, 0x16, 0xCD, 0x02]);
//!
//! let parsed: Vec<u32> = wirepack::from_bytes(&wire)?;
//! assert_eq!(parsed, data);
//! # wirepack::Result::Ok(())
//! ```
//!
//! Custom record types join by implementing [`Serializable`]: write the
//! fields in a fixed order, read them back in the same order. See the trait
//! docs for a worked example. Values also go straight to and from streams
//! with [`to_stream`] / [`from_stream`]; streams may carry several messages
//! back to back since every message is self-delimiting.

pub mod buffer;
pub mod codec;
pub mod error;
pub mod ser;

mod api;

pub use api::{from_bytes, from_stream, to_bytes, to_stream, WireBytes};
pub use buffer::{InputBuffer, OutputBuffer, ReadBuffer, StreamReader, StreamWriter, WriteBuffer};
pub use error::{Error, Result};
pub use ser::Serializable;
