//! Serialized index format, little-endian fixed-width integers.
//!
//! Layout: magic "FMB1", version u8, variant u8 (1 = superlinear,
//! 2 = linear), scheme u8 (0 = pow2, 1 = fibonacci, 255 = n/a), q u8,
//! p u8, max_len u8, n u64, text payload bytes, key count u64, then per
//! key: text_pos u32, len u8, count_base u32, list length u32, positions
//! as a u32 array. The hash table and QA lists are rebuilt on load.

use std::io::{self, Read, Write};

use crate::linear::{minimizer_positions, LinearIndex, MinimizerParams};
use crate::store::{OccList, QGramKey, QGramStore, StoreConfig};
use crate::superlinear::{Scheme, SchemeKind, SuperlinearIndex};
use crate::text::Text;
use crate::{Error, Index, Result};

pub const MAGIC: [u8; 4] = *b"FMB1";
pub const VERSION: u8 = 1;

const VARIANT_SUPERLINEAR: u8 = 1;
const VARIANT_LINEAR: u8 = 2;
const SCHEME_POW2: u8 = 0;
const SCHEME_FIBONACCI: u8 = 1;
const SCHEME_NONE: u8 = 255;

pub fn serialize(index: &Index, w: &mut impl Write) -> Result<()> {
    let (variant, scheme, q, p, max_len) = match index {
        Index::Superlinear(idx) => {
            let scheme = match idx.scheme.kind {
                SchemeKind::Pow2 => SCHEME_POW2,
                SchemeKind::Fibonacci => SCHEME_FIBONACCI,
            };
            (VARIANT_SUPERLINEAR, scheme, 0, 0, idx.scheme.max_len)
        }
        Index::Linear(idx) => (VARIANT_LINEAR, SCHEME_NONE, idx.params.q, idx.params.p, 0),
    };
    let text = index.text();
    let store = index.store();

    w.write_all(&MAGIC)?;
    w.write_all(&[VERSION, variant, scheme, q, p, max_len])?;
    w.write_all(&(text.len() as u64).to_le_bytes())?;
    w.write_all(text.payload())?;
    w.write_all(&(store.len() as u64).to_le_bytes())?;
    for (key, list) in store.iter() {
        w.write_all(&key.text_pos.to_le_bytes())?;
        w.write_all(&[key.len])?;
        w.write_all(&list.count_base.to_le_bytes())?;
        w.write_all(&(list.positions.len() as u32).to_le_bytes())?;
        for &v in &list.positions {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn deserialize(r: &mut impl Read, config: StoreConfig) -> Result<Index> {
    config.validate()?;
    let mut magic = [0u8; 4];
    read_exact(r, &mut magic)?;
    if magic != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut head = [0u8; 6];
    read_exact(r, &mut head)?;
    let [version, variant, scheme, q, p, max_len] = head;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }

    let n = read_u64(r)? as usize;
    if n == 0 || n + 1 >= u32::MAX as usize {
        return Err(Error::Corrupt("implausible text length".into()));
    }
    let mut payload = vec![0u8; n];
    read_exact(r, &mut payload)?;
    let text = Text::from_bytes(payload)
        .map_err(|_| Error::Corrupt("text payload contains a zero byte".into()))?;

    let key_count = read_u64(r)?;
    let mut store = QGramStore::new(config);
    for _ in 0..key_count {
        let text_pos = read_u32(r)?;
        let mut len_byte = [0u8; 1];
        read_exact(r, &mut len_byte)?;
        let len = len_byte[0];
        let count_base = read_u32(r)?;
        let list_len = read_u32(r)? as usize;
        if len == 0 || text_pos == 0 || text_pos as usize + len as usize - 1 > n {
            return Err(Error::Corrupt("key out of text bounds".into()));
        }
        let mut positions = Vec::with_capacity(list_len);
        for _ in 0..list_len {
            positions.push(read_u32(r)?);
        }
        if !positions.windows(2).all(|w| w[0] < w[1])
            || positions.iter().any(|&v| v == 0 || v as usize > n + 1)
        {
            return Err(Error::Corrupt("occurrence list not ascending in range".into()));
        }
        let key = QGramKey { text_pos, len };
        store
            .insert(&text, key, OccList::new(count_base, positions))
            .map_err(|_| Error::Corrupt("duplicate key record".into()))?;
    }

    match variant {
        VARIANT_SUPERLINEAR => {
            let kind = match scheme {
                SCHEME_POW2 => SchemeKind::Pow2,
                SCHEME_FIBONACCI => SchemeKind::Fibonacci,
                other => return Err(Error::Corrupt(format!("unknown scheme byte {other}"))),
            };
            let scheme = Scheme::new(kind, max_len as u16)
                .map_err(|_| Error::Corrupt("invalid max_len for scheme".into()))?;
            Ok(Index::Superlinear(SuperlinearIndex { text, store, scheme }))
        }
        VARIANT_LINEAR => {
            let params = MinimizerParams::new(q as u16, p as u16)
                .map_err(|_| Error::Corrupt("invalid minimizer parameters".into()))?;
            let text_minimizers = minimizer_positions(text.payload(), params);
            Ok(Index::Linear(LinearIndex {
                text,
                store,
                params,
                text_minimizers,
            }))
        }
        other => Err(Error::Corrupt(format!("unknown variant byte {other}"))),
    }
}

/// Serialized size in bytes, without materializing the stream.
pub fn serialized_size(index: &Index) -> u64 {
    let mut sink = CountingSink(0);
    serialize(index, &mut sink).expect("counting sink cannot fail");
    sink.0
}

struct CountingSink(u64);

impl Write for CountingSink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0 += buf.len() as u64;
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

fn read_exact(r: &mut impl Read, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            Error::Truncated
        } else {
            Error::Io(e)
        }
    })
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    read_exact(r, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    read_exact(r, &mut b)?;
    Ok(u64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::build_linear;
    use crate::superlinear::build_superlinear;
    use crate::text::{naive_count, Pattern};
    use rand::{Rng, SeedableRng};

    fn roundtrip(index: &Index) -> Index {
        let mut buf = Vec::new();
        serialize(index, &mut buf).unwrap();
        assert_eq!(buf.len() as u64, serialized_size(index));
        deserialize(&mut &buf[..], StoreConfig::default()).unwrap()
    }

    fn random_patterns(text: &Text, count: usize, seed: u64) -> Vec<Pattern> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                if rng.gen_bool(0.8) {
                    let len = rng.gen_range(1..=12.min(text.len()));
                    let start = rng.gen_range(0..=text.len() - len);
                    Pattern::new(text.payload()[start..start + len].to_vec()).unwrap()
                } else {
                    let len = rng.gen_range(1..=8);
                    Pattern::new((0..len).map(|_| rng.gen_range(1u8..=255)).collect::<Vec<_>>())
                        .unwrap()
                }
            })
            .collect()
    }

    #[test]
    fn roundtrip_preserves_answers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let payload: Vec<u8> = (0..1500).map(|_| rng.gen_range(b'a'..=b'f')).collect();
        let text = Text::from_bytes(payload).unwrap();
        let cfg = StoreConfig::default();

        let indexes = vec![
            Index::Superlinear(
                build_superlinear(text.clone(), Scheme::pow2(128).unwrap(), cfg).unwrap(),
            ),
            Index::Superlinear(
                build_superlinear(text.clone(), Scheme::fibonacci(233).unwrap(), cfg).unwrap(),
            ),
            Index::Linear(
                build_linear(text.clone(), MinimizerParams::new(4, 2).unwrap(), cfg).unwrap(),
            ),
        ];
        for (i, index) in indexes.iter().enumerate() {
            let restored = roundtrip(index);
            for p in random_patterns(&text, 100, 17 + i as u64) {
                let before = index.count(&p);
                let after = restored.count(&p);
                assert_eq!(before, after);
                assert_eq!(before.count, naive_count(&text, &p));
            }
        }
    }

    #[test]
    fn corrupted_magic_is_a_format_error() {
        let text = Text::from_bytes(b"banana".to_vec()).unwrap();
        let idx = Index::Superlinear(
            build_superlinear(text, Scheme::pow2(4).unwrap(), StoreConfig::default()).unwrap(),
        );
        let mut buf = Vec::new();
        serialize(&idx, &mut buf).unwrap();
        buf[0] = b'X';
        assert!(matches!(
            deserialize(&mut &buf[..], StoreConfig::default()),
            Err(Error::BadMagic)
        ));
    }

    #[test]
    fn truncated_stream_and_bad_version_are_distinct() {
        let text = Text::from_bytes(b"banana".to_vec()).unwrap();
        let idx = Index::Superlinear(
            build_superlinear(text, Scheme::pow2(4).unwrap(), StoreConfig::default()).unwrap(),
        );
        let mut buf = Vec::new();
        serialize(&idx, &mut buf).unwrap();

        let cut = &buf[..buf.len() - 3];
        assert!(matches!(
            deserialize(&mut &cut[..], StoreConfig::default()),
            Err(Error::Truncated)
        ));

        let mut versioned = buf.clone();
        versioned[4] = 9;
        assert!(matches!(
            deserialize(&mut &versioned[..], StoreConfig::default()),
            Err(Error::UnsupportedVersion(9))
        ));
    }

    #[test]
    fn empty_store_roundtrip() {
        // Hand-built stream with zero keys.
        let mut buf = Vec::new();
        buf.extend_from_slice(&MAGIC);
        buf.extend_from_slice(&[VERSION, VARIANT_SUPERLINEAR, SCHEME_POW2, 0, 0, 8]);
        buf.extend_from_slice(&2u64.to_le_bytes());
        buf.extend_from_slice(b"ab");
        buf.extend_from_slice(&0u64.to_le_bytes());
        let index = deserialize(&mut &buf[..], StoreConfig::default()).unwrap();
        assert!(index.store().is_empty());
        let p = Pattern::new(b"ab".to_vec()).unwrap();
        assert_eq!(index.count(&p).count, 0);
    }
}
