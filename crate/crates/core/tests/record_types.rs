//! The custom-record contract: user types with serialize/parse hooks
//! participate in container recursion like built-in shapes.

use std::collections::{BTreeSet, HashSet};

use wirepack::{from_bytes, to_bytes, ReadBuffer, Result, Serializable, WriteBuffer};

/// A record with one scalar and two small unsigned sets, the classic
/// "one count byte plus three bytes per set" layout.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Transfer {
    electrons: u32,
    sources: BTreeSet<u32>,
    targets: BTreeSet<u32>,
}

impl Serializable for Transfer {
    const MIN_WIRE_SIZE: usize = 3;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        self.electrons.serialize(out)?;
        self.sources.serialize(out)?;
        self.targets.serialize(out)
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        Ok(Transfer {
            electrons: u32::parse(input)?,
            sources: BTreeSet::parse(input)?,
            targets: BTreeSet::parse(input)?,
        })
    }
}

/// Same shape but with hash sets, whose iteration order is arbitrary.
#[derive(Debug, Clone, PartialEq, Eq)]
struct HashedTransfer {
    electrons: u32,
    sources: HashSet<u32>,
    targets: HashSet<u32>,
}

impl Serializable for HashedTransfer {
    const MIN_WIRE_SIZE: usize = 3;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        self.electrons.serialize(out)?;
        self.sources.serialize(out)?;
        self.targets.serialize(out)
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        Ok(HashedTransfer {
            electrons: u32::parse(input)?,
            sources: HashSet::parse(input)?,
            targets: HashSet::parse(input)?,
        })
    }
}

fn sample_transfer() -> Transfer {
    Transfer {
        electrons: 33,
        sources: [11, 22].into_iter().collect(),
        targets: [44, 66].into_iter().collect(),
    }
}

#[test]
fn record_golden_bytes() {
    let wire = to_bytes(&sample_transfer()).unwrap();
    assert_eq!(
        wire.as_bytes(),
        &[0x21, 0x02, 0x0B, 0x16, 0x02, 0x2C, 0x42]
    );
    assert_eq!(wire.len(), 7);
}

#[test]
fn record_with_hash_sets_is_seven_bytes() {
    let value = HashedTransfer {
        electrons: 33,
        sources: [11, 22].into_iter().collect(),
        targets: [44, 66].into_iter().collect(),
    };
    let wire = to_bytes(&value).unwrap();
    assert_eq!(wire.len(), 7);
    assert_eq!(wire[0], 0x21);
    // One count byte then two elements per set, in whatever order the set
    // iterates.
    assert_eq!(wire[1], 0x02);
    let first: HashSet<u8> = [wire[2], wire[3]].into_iter().collect();
    assert_eq!(first, [0x0B, 0x16].into_iter().collect());
    assert_eq!(wire[4], 0x02);
    let second: HashSet<u8> = [wire[5], wire[6]].into_iter().collect();
    assert_eq!(second, [0x2C, 0x42].into_iter().collect());

    let back: HashedTransfer = from_bytes(&wire).unwrap();
    assert_eq!(back, value);
}

#[test]
fn record_round_trips() {
    let value = sample_transfer();
    let back: Transfer = from_bytes(&to_bytes(&value).unwrap()).unwrap();
    assert_eq!(back, value);
}

#[test]
fn records_nest_inside_sequences() {
    let pair = vec![sample_transfer(), sample_transfer()];
    let wire = to_bytes(&pair).unwrap();
    // Varint count then two seven-byte records.
    assert_eq!(wire.len(), 1 + 7 + 7);
    assert_eq!(wire[0], 0x02);
    let single = to_bytes(&sample_transfer()).unwrap();
    assert_eq!(&wire[1..8], single.as_bytes());
    assert_eq!(&wire[8..15], single.as_bytes());
    let back: Vec<Transfer> = from_bytes(&wire).unwrap();
    assert_eq!(back, pair);
}

#[derive(Debug, PartialEq)]
struct Nothing;

impl Serializable for Nothing {
    fn serialize<W: WriteBuffer + ?Sized>(&self, _out: &mut W) -> Result<()> {
        Ok(())
    }

    fn parse<R: ReadBuffer + ?Sized>(_input: &mut R) -> Result<Self> {
        Ok(Nothing)
    }
}

#[test]
fn zero_field_record_writes_nothing() {
    let wire = to_bytes(&Nothing).unwrap();
    assert!(wire.is_empty());
    let back: Nothing = from_bytes(&wire).unwrap();
    assert_eq!(back, Nothing);
}

#[derive(Debug, PartialEq)]
struct Outer {
    label: String,
    inner: Transfer,
    flag: bool,
}

impl Serializable for Outer {
    const MIN_WIRE_SIZE: usize = 1 + Transfer::MIN_WIRE_SIZE + 1;

    fn serialize<W: WriteBuffer + ?Sized>(&self, out: &mut W) -> Result<()> {
        self.label.serialize(out)?;
        self.inner.serialize(out)?;
        self.flag.serialize(out)
    }

    fn parse<R: ReadBuffer + ?Sized>(input: &mut R) -> Result<Self> {
        Ok(Outer {
            label: String::parse(input)?,
            inner: Transfer::parse(input)?,
            flag: bool::parse(input)?,
        })
    }
}

#[test]
fn nested_record_bytes_concatenate_depth_first() {
    let value = Outer {
        label: "qs".to_string(),
        inner: sample_transfer(),
        flag: true,
    };
    let wire = to_bytes(&value).unwrap();

    let mut expected = to_bytes(&"qs".to_string()).unwrap().into_vec();
    expected.extend(to_bytes(&sample_transfer()).unwrap().as_bytes());
    expected.extend(to_bytes(&true).unwrap().as_bytes());
    assert_eq!(wire.as_bytes(), expected.as_slice());

    let back: Outer = from_bytes(&wire).unwrap();
    assert_eq!(back, value);
}
