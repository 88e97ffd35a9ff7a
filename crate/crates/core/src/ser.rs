//! Type-directed encode/decode rules for every supported shape.
//!
//! The wire format is positional and tag-free: no type tags, no field
//! numbers. Unsigned integrals are varints, signed integrals are ZigZag
//! varints, booleans are one byte, floats are raw little-endian copies,
//! strings and containers carry a varint count followed by their elements,
//! tuples are their fields back to back, and user records write their fields
//! in a fixed order through their own [`Serializable`] impl.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use crate::buffer::{ReadBuffer, WriteBuffer, STREAM_CHUNK};
use crate::codec::{
    decode_f32, decode_f64, decode_varint, encode_f32, encode_f64, encode_varint, zigzag_decode,
    zigzag_encode,
};
use crate::error::{Error, Result};

/// A value with exactly one encode rule and one decode rule.
///
/// Implementing this for your own type is the extension point: write the
/// fields in a fixed order in `serialize`, read them back in the same order
/// in `parse`, and the type participates in container recursion like any
/// built-in shape. The trait has both hooks on purpose; a type cannot join
/// with only half the contract.
///
/// ```
/// use wirepack::{ReadBuffer, Result, Serializable, WriteBuffer};
///
/// #[derive(PartialEq, Debug)]
/// struct Sample {
///     id: u32,
///     values: Vec<f64>,
/// }
///
/// impl Serializable for Sample {
///     fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
///         self.id.serialize(out)?;
///         self.values.serialize(out)
///     }
///
///     fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
///         Ok(Sample {
///             id: u32::parse(input)?,
///             values: Vec::parse(input)?,
///         })
///     }
/// }
///
/// let sample = Sample { id: 7, values: vec![1.5, -2.0] };
/// let bytes = wirepack::to_bytes(&sample)?;
/// assert_eq!(wirepack::from_bytes::<Sample>(&bytes)?, sample);
/// # wirepack::Result::Ok(())
/// ```
pub trait Serializable: Sized {
    /// Smallest possible wire size of one value of this shape, used to
    /// reject container counts that cannot fit the remaining input. The
    /// default of zero disables the check, which is always safe; built-in
    /// shapes override it with their exact minimum.
    const MIN_WIRE_SIZE: usize = 0;

    /// Appends this value's canonical wire bytes.
    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()>;

    /// Reads exactly one value, consuming exactly its bytes.
    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self>;

    /// Serializes a run of elements. The default loops; byte-like and
    /// float shapes override it with a single block write.
    #[doc(hidden)]
    fn write_slice<W: WriteBuffer + ?Sized>(elems: &[Self], out: &mut W) -> Result<()> {
        for elem in elems {
            elem.serialize(out)?;
        }
        Ok(())
    }

    /// Parses `count` elements into a vector. The default loops with a
    /// capped preallocation; block shapes override it.
    #[doc(hidden)]
    fn read_vec_elems<R: ReadBuffer + ?Sized>(input: &mut R, count: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(prealloc_limit::<Self>(count, input.remaining()));
        for _ in 0..count {
            out.push(Self::parse(input)?);
        }
        Ok(out)
    }
}

/// Appends a container count as a varint.
pub fn write_count<W: WriteBuffer + ?Sized>(count: usize, out: &mut W) -> Result<()> {
    encode_varint(count as u64, out)
}

/// Elements that occupy zero wire bytes (zero-field records) escape the
/// remaining-bytes bound, so their counts get a fixed ceiling instead to
/// keep a tiny hostile message from demanding unbounded decode work.
pub const ZERO_SIZE_COUNT_CAP: u64 = 1 << 24;

/// Reads a container count and sanity-checks it against the remaining
/// input: a declared count whose elements cannot possibly fit in the bytes
/// left is rejected before anything is allocated for it.
pub fn read_count<R: ReadBuffer + ?Sized>(input: &mut R, min_elem_size: usize) -> Result<usize> {
    let raw = decode_varint(input)?;
    let count = usize::try_from(raw).map_err(|_| Error::Overflow { ty: "count" })?;
    if min_elem_size > 0 {
        if let Some(remaining) = input.remaining() {
            if raw as u128 * min_elem_size as u128 > remaining as u128 {
                return Err(Error::SizeSanity {
                    count: raw,
                    min_elem_size,
                    remaining,
                });
            }
        }
    } else if raw > ZERO_SIZE_COUNT_CAP {
        return Err(Error::SizeSanity {
            count: raw,
            min_elem_size,
            remaining: input.remaining().unwrap_or(0),
        });
    }
    Ok(count)
}

/// Caps the speculative capacity reserved for a declared count. When the
/// source length is known the reservation stays within a small multiple of
/// it; unknown-length streams get a fixed chunk and grow with actual data.
fn prealloc_limit<T>(count: usize, remaining: Option<u64>) -> usize {
    let elem = std::mem::size_of::<T>().max(1);
    let budget = match remaining {
        Some(rem) => rem.saturating_mul(16),
        None => STREAM_CHUNK as u64,
    };
    count.min(usize::try_from(budget / elem as u64).unwrap_or(usize::MAX))
}

macro_rules! impl_unsigned {
    ($($ty:ty),+) => {$(
        impl Serializable for $ty {
            const MIN_WIRE_SIZE: usize = 1;

            fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
                encode_varint(*self as u64, out)
            }

            fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
                let raw = decode_varint(input)?;
                <$ty>::try_from(raw).map_err(|_| Error::Overflow { ty: stringify!($ty) })
            }
        }
    )+};
}

impl_unsigned!(u16, u32, u64);

// u8 gets the byte fast path: runs of bytes move as one block after the
// count, which is also what makes the string rule a bulk copy.
impl Serializable for u8 {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        encode_varint(*self as u64, out)
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        let raw = decode_varint(input)?;
        u8::try_from(raw).map_err(|_| Error::Overflow { ty: "u8" })
    }

    fn write_slice<W: WriteBuffer + ?Sized>(elems: &[Self], out: &mut W) -> Result<()> {
        out.write(elems)
    }

    fn read_vec_elems<R: ReadBuffer + ?Sized>(input: &mut R, count: usize) -> Result<Vec<Self>> {
        input.read_vec(count)
    }
}

macro_rules! impl_signed {
    ($($ty:ty),+) => {$(
        impl Serializable for $ty {
            const MIN_WIRE_SIZE: usize = 1;

            fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
                encode_varint(zigzag_encode(*self as i64), out)
            }

            fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
                let signed = zigzag_decode(decode_varint(input)?);
                <$ty>::try_from(signed).map_err(|_| Error::Overflow { ty: stringify!($ty) })
            }
        }
    )+};
}

impl_signed!(i8, i16, i32, i64);

impl Serializable for bool {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        out.write(&[*self as u8])
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        match input.read_byte()? {
            0 => Ok(false),
            1 => Ok(true),
            byte => Err(Error::MalformedBool { byte }),
        }
    }
}

macro_rules! impl_float {
    ($ty:ty, $width:expr, $enc:ident, $dec:ident) => {
        impl Serializable for $ty {
            const MIN_WIRE_SIZE: usize = $width;

            fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
                $enc(*self, out)
            }

            fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
                $dec(input)
            }

            fn write_slice<W: WriteBuffer + ?Sized>(elems: &[Self], out: &mut W) -> Result<()> {
                #[cfg(target_endian = "little")]
                {
                    // In-memory layout equals wire layout here, so the whole
                    // run is one block copy straight from the slice.
                    let bytes = unsafe {
                        std::slice::from_raw_parts(
                            elems.as_ptr().cast::<u8>(),
                            std::mem::size_of_val(elems),
                        )
                    };
                    out.write(bytes)
                }
                #[cfg(not(target_endian = "little"))]
                {
                    for elem in elems {
                        elem.serialize(out)?;
                    }
                    Ok(())
                }
            }

            fn read_vec_elems<R: ReadBuffer + ?Sized>(
                input: &mut R,
                count: usize,
            ) -> Result<Vec<Self>> {
                let total = count
                    .checked_mul($width)
                    .ok_or(Error::Overflow { ty: "count" })?;
                let raw = input.read_vec(total)?;
                Ok(raw
                    .chunks_exact($width)
                    .map(|chunk| <$ty>::from_le_bytes(chunk.try_into().unwrap()))
                    .collect())
            }
        }
    };
}

impl_float!(f32, 4, encode_f32, decode_f32);
impl_float!(f64, 8, encode_f64, decode_f64);

impl Serializable for String {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        write_count(self.len(), out)?;
        out.write(self.as_bytes())
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        let len = read_count(input, 1)?;
        let bytes = input.read_vec(len)?;
        String::from_utf8(bytes).map_err(|_| Error::InvalidUtf8)
    }
}

impl<T: Serializable> Serializable for Vec<T> {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        write_count(self.len(), out)?;
        T::write_slice(self, out)
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        let count = read_count(input, T::MIN_WIRE_SIZE)?;
        T::read_vec_elems(input, count)
    }
}

impl<T: Serializable + Eq + Hash> Serializable for HashSet<T> {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        write_count(self.len(), out)?;
        for elem in self {
            elem.serialize(out)?;
        }
        Ok(())
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        let count = read_count(input, T::MIN_WIRE_SIZE)?;
        let mut out = HashSet::with_capacity(prealloc_limit::<T>(count, input.remaining()));
        for _ in 0..count {
            out.insert(T::parse(input)?);
        }
        Ok(out)
    }
}

impl<T: Serializable + Ord> Serializable for BTreeSet<T> {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        write_count(self.len(), out)?;
        for elem in self {
            elem.serialize(out)?;
        }
        Ok(())
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        let count = read_count(input, T::MIN_WIRE_SIZE)?;
        let mut out = BTreeSet::new();
        for _ in 0..count {
            out.insert(T::parse(input)?);
        }
        Ok(out)
    }
}

impl<K: Serializable + Eq + Hash, V: Serializable> Serializable for HashMap<K, V> {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        write_count(self.len(), out)?;
        for (key, value) in self {
            key.serialize(out)?;
            value.serialize(out)?;
        }
        Ok(())
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        let entry_min = K::MIN_WIRE_SIZE.saturating_add(V::MIN_WIRE_SIZE);
        let count = read_count(input, entry_min)?;
        let mut out = HashMap::with_capacity(prealloc_limit::<(K, V)>(count, input.remaining()));
        for _ in 0..count {
            let key = K::parse(input)?;
            let value = V::parse(input)?;
            out.insert(key, value);
        }
        Ok(out)
    }
}

impl<K: Serializable + Ord, V: Serializable> Serializable for BTreeMap<K, V> {
    const MIN_WIRE_SIZE: usize = 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        write_count(self.len(), out)?;
        for (key, value) in self {
            key.serialize(out)?;
            value.serialize(out)?;
        }
        Ok(())
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        let entry_min = K::MIN_WIRE_SIZE.saturating_add(V::MIN_WIRE_SIZE);
        let count = read_count(input, entry_min)?;
        let mut out = BTreeMap::new();
        for _ in 0..count {
            let key = K::parse(input)?;
            let value = V::parse(input)?;
            out.insert(key, value);
        }
        Ok(out)
    }
}

impl Serializable for () {
    const MIN_WIRE_SIZE: usize = 0;

    fn serialize<W: WriteBuffer + ?Sized>(&self, _out: &mut W) -> Result<()> {
        Ok(())
    }

    fn parse<R: ReadBuffer + ?Sized>(_input: &mut R) -> Result<Self> {
        Ok(())
    }
}

macro_rules! impl_tuple {
    ($($name:ident . $idx:tt),+) => {
        impl<$($name: Serializable),+> Serializable for ($($name,)+) {
            const MIN_WIRE_SIZE: usize = 0 $(+ $name::MIN_WIRE_SIZE)+;

            fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
                $(self.$idx.serialize(out)?;)+
                Ok(())
            }

            fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
                Ok(($($name::parse(input)?,)+))
            }
        }
    };
}

impl_tuple!(A.0);
impl_tuple!(A.0, B.1);
impl_tuple!(A.0, B.1, C.2);
impl_tuple!(A.0, B.1, C.2, D.3);
impl_tuple!(A.0, B.1, C.2, D.3, E.4);
impl_tuple!(A.0, B.1, C.2, D.3, E.4, F.5);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buffer::InputBuffer;

    fn bytes_of<T: Serializable>(value: &T) -> Vec<u8> {
        let mut out = Vec::new();
        value.serialize(&mut out).unwrap();
        out
    }

    fn parse_all<T: Serializable>(bytes: &[u8]) -> Result<T> {
        let mut input = InputBuffer::new(bytes);
        let value = T::parse(&mut input)?;
        assert_eq!(input.remaining(), Some(0), "parse must consume exactly");
        Ok(value)
    }

    #[test]
    fn unsigned_sequence_golden() {
        let data: Vec<u32> = vec![22, 333];
        assert_eq!(bytes_of(&data), vec![0x02, 0x16, 0xCD, 0x02]);
        assert_eq!(parse_all::<Vec<u32>>(&[0x02, 0x16, 0xCD, 0x02]).unwrap(), data);
    }

    #[test]
    fn empty_containers_are_count_only() {
        assert_eq!(bytes_of(&Vec::<f64>::new()), vec![0x00]);
        assert_eq!(bytes_of(&String::new()), vec![0x00]);
        assert_eq!(bytes_of(&HashMap::<String, f64>::new()), vec![0x00]);
        assert_eq!(
            parse_all::<HashMap<String, f64>>(&[0x00]).unwrap(),
            HashMap::new()
        );
    }

    #[test]
    fn signed_small_magnitudes_are_one_byte() {
        assert_eq!(bytes_of(&-33i64), vec![0x41]);
        assert_eq!(bytes_of(&-33i32), vec![0x41]);
        assert_eq!(bytes_of(&-33i8), vec![0x41]);
        assert_eq!(parse_all::<i64>(&[0x41]).unwrap(), -33);
    }

    #[test]
    fn bool_rule() {
        assert_eq!(bytes_of(&true), vec![0x01]);
        assert_eq!(bytes_of(&false), vec![0x00]);
        assert!(matches!(
            parse_all::<bool>(&[0x02]),
            Err(Error::MalformedBool { byte: 0x02 })
        ));
    }

    #[test]
    fn narrowing_overflows_are_detected() {
        let wide = bytes_of(&300u64);
        assert!(matches!(
            parse_all::<u8>(&wide),
            Err(Error::Overflow { ty: "u8" })
        ));
        assert_eq!(parse_all::<u16>(&wide).unwrap(), 300);

        let negative_wide = bytes_of(&-200i64);
        assert!(matches!(
            parse_all::<i8>(&negative_wide),
            Err(Error::Overflow { ty: "i8" })
        ));
        assert_eq!(parse_all::<i16>(&negative_wide).unwrap(), -200);
    }

    #[test]
    fn byte_sequences_are_block_copied() {
        // Bytes >= 0x80 stay raw inside a byte sequence; as standalone
        // integrals they would be two-byte varints.
        let data: Vec<u8> = vec![0x00, 0x7F, 0x80, 0xFF];
        assert_eq!(bytes_of(&data), vec![0x04, 0x00, 0x7F, 0x80, 0xFF]);
        assert_eq!(parse_all::<Vec<u8>>(&[0x04, 0x00, 0x7F, 0x80, 0xFF]).unwrap(), data);
        assert_eq!(bytes_of(&0xFFu8), vec![0xFF, 0x01]);
    }

    #[test]
    fn string_rule() {
        assert_eq!(bytes_of(&"hi".to_string()), vec![0x02, b'h', b'i']);
        assert_eq!(parse_all::<String>(&[0x02, b'h', b'i']).unwrap(), "hi");
        assert!(matches!(
            parse_all::<String>(&[0x02, 0xFF, 0xFE]),
            Err(Error::InvalidUtf8)
        ));
    }

    #[test]
    fn truncated_container_declares_more_than_present() {
        // Count 3 with one element present: the sanity bound catches it
        // before any element parse runs.
        assert!(matches!(
            parse_all::<Vec<u32>>(&[0x03, 0x16]),
            Err(Error::SizeSanity { count: 3, .. })
        ));
    }

    #[test]
    fn size_sanity_rejects_huge_counts() {
        // Five bytes claiming ~268M doubles must fail before allocation.
        let hostile = [0xFF, 0xFF, 0xFF, 0x7F, 0x00];
        let err = parse_all::<Vec<f64>>(&hostile).unwrap_err();
        assert!(matches!(err, Error::SizeSanity { min_elem_size: 8, .. }));
    }

    #[test]
    fn truncated_element_inside_container() {
        // Count 2, one complete element, second one cut off mid-varint.
        assert!(matches!(
            parse_all::<Vec<u32>>(&[0x02, 0x16, 0x80]),
            Err(Error::Truncated)
        ));
    }

    #[test]
    fn pair_bytes_concatenate() {
        let pair = (22u32, -33i64);
        let mut expected = bytes_of(&22u32);
        expected.extend(bytes_of(&-33i64));
        assert_eq!(bytes_of(&pair), expected);
        assert_eq!(parse_all::<(u32, i64)>(&expected).unwrap(), pair);
    }

    #[test]
    fn map_rule_alternates_key_value() {
        let mut map = BTreeMap::new();
        map.insert(1u32, "a".to_string());
        map.insert(2u32, "b".to_string());
        assert_eq!(
            bytes_of(&map),
            vec![0x02, 0x01, 0x01, b'a', 0x02, 0x01, b'b']
        );
        assert_eq!(parse_all::<BTreeMap<u32, String>>(&bytes_of(&map)).unwrap(), map);
    }

    #[test]
    fn exact_consumption_allows_concatenation() {
        let mut stream = bytes_of(&vec![22u32, 333]);
        stream.extend(bytes_of(&"xy".to_string()));
        let mut input = InputBuffer::new(&stream);
        assert_eq!(Vec::<u32>::parse(&mut input).unwrap(), vec![22, 333]);
        assert_eq!(String::parse(&mut input).unwrap(), "xy");
        assert_eq!(input.remaining(), Some(0));
    }

    #[test]
    fn float_block_and_loop_paths_agree() {
        let values = vec![1.0f64, -0.0, f64::from_bits(0x7FF8_0000_0000_1234), 1e300];
        let block = bytes_of(&values);
        let mut looped = Vec::new();
        write_count(values.len(), &mut looped).unwrap();
        for v in &values {
            v.serialize(&mut looped).unwrap();
        }
        assert_eq!(block, looped);
        let back = parse_all::<Vec<f64>>(&block).unwrap();
        let bits: Vec<u64> = back.iter().map(|v| v.to_bits()).collect();
        let expected: Vec<u64> = values.iter().map(|v| v.to_bits()).collect();
        assert_eq!(bits, expected);
    }

    #[test]
    fn nested_containers_round_trip() {
        let value: Vec<Vec<(String, Vec<i16>)>> = vec![
            vec![("a".into(), vec![-1, 2]), ("b".into(), vec![])],
            vec![],
            vec![("c".into(), vec![300, -300])],
        ];
        assert_eq!(parse_all::<Vec<Vec<(String, Vec<i16>)>>>(&bytes_of(&value)).unwrap(), value);
    }

    #[test]
    fn zero_size_element_counts_are_capped() {
        // A sequence of zero-wire-size values round-trips at sane counts...
        let empties = vec![(); 5];
        assert_eq!(bytes_of(&empties), vec![0x05]);
        assert_eq!(parse_all::<Vec<()>>(&[0x05]).unwrap().len(), 5);
        // ...but a hostile count cannot demand unbounded decode work.
        let mut huge = Vec::new();
        encode_varint(u64::MAX, &mut huge).unwrap();
        assert!(matches!(
            parse_all::<Vec<()>>(&huge),
            Err(Error::SizeSanity { .. })
        ));
    }

    #[test]
    fn sets_round_trip_unordered() {
        let set: HashSet<u32> = [11, 22, 7, 500].into_iter().collect();
        let back = parse_all::<HashSet<u32>>(&bytes_of(&set)).unwrap();
        assert_eq!(back, set);

        let bset: BTreeSet<i64> = [-5, 0, 5].into_iter().collect();
        assert_eq!(bytes_of(&bset), vec![0x03, 0x09, 0x00, 0x0A]);
    }
}
