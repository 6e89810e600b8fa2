//! On-disk format for pourability tables.
//!
//! One file per `(n, k)` slice, named `pourtbl-k{k}-n{n}.bin`. All integers
//! are fixed-width little-endian, so files are byte-reproducible across runs
//! and platforms:
//!
//! ```text
//! offset  size  field
//! 0       8     magic "POURTBL1"
//! 8       4     format version (u32, currently 1)
//! 12      8     slice total n (u64)
//! 20      4     vessel count k (u32)
//! 24      8     state count (u64)
//! 32      …     records, one per canonical state in lexicographic order:
//!               k × u64 vessel values (ascending), then u32 distance,
//!               with 0xFFFF_FFFF meaning "not pourable"
//! ```
//!
//! Readers treat any mismatch — wrong magic, version, header fields, record
//! shape, or trailing bytes — as a cache miss and rebuild.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use super::{PourabilityTable, Pourability};
use crate::state::State;

const MAGIC: &[u8; 8] = b"POURTBL1";
const VERSION: u32 = 1;
const NOT_POURABLE: u32 = u32::MAX;

pub(super) fn path_for(dir: &Path, n: u64, k: usize) -> PathBuf {
    dir.join(format!("pourtbl-k{k}-n{n}.bin"))
}

pub(super) fn save(dir: &Path, table: &PourabilityTable) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let n = table.total();
    let k = table.vessels();
    let mut buf: Vec<u8> =
        Vec::with_capacity(32 + table.state_count() as usize * (8 * k + 4));
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&n.to_le_bytes());
    buf.extend_from_slice(&(k as u32).to_le_bytes());
    buf.extend_from_slice(&table.state_count().to_le_bytes());
    for (state, pourability) in table.iter_all() {
        for &v in state.values() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let d = match pourability {
            Pourability::Exactly(d) => {
                debug_assert_ne!(d, NOT_POURABLE);
                d
            }
            Pourability::NotPourable => NOT_POURABLE,
        };
        buf.extend_from_slice(&d.to_le_bytes());
    }
    // Write to a sibling temp file first so readers never observe a partial
    // table under the final name.
    let final_path = path_for(dir, n, k);
    let tmp_path = final_path.with_extension("bin.tmp");
    {
        let mut f = fs::File::create(&tmp_path)?;
        f.write_all(&buf)?;
        f.sync_all()?;
    }
    fs::rename(&tmp_path, &final_path)
}

pub(super) fn load(dir: &Path, n: u64, k: usize) -> Option<PourabilityTable> {
    let bytes = fs::read(path_for(dir, n, k)).ok()?;
    parse(&bytes, n, k)
}

fn parse(bytes: &[u8], n: u64, k: usize) -> Option<PourabilityTable> {
    let mut r = Reader { bytes, at: 0 };
    if r.take(8)? != MAGIC {
        return None;
    }
    if r.u32()? != VERSION {
        return None;
    }
    if r.u64()? != n || r.u32()? as usize != k {
        return None;
    }
    let state_count = r.u64()?;
    let mut distances: HashMap<State, u32> =
        HashMap::with_capacity(state_count as usize);
    let mut max_distance = 0u32;
    let mut vals = vec![0u64; k];
    let mut prev: Option<State> = None;
    for _ in 0..state_count {
        let mut total: u64 = 0;
        for slot in vals.iter_mut() {
            *slot = r.u64()?;
            total = total.checked_add(*slot)?;
        }
        if total != n || !vals.windows(2).all(|w| w[0] <= w[1]) {
            return None;
        }
        let state = State::new(&vals).ok()?;
        // Records must be strictly increasing, matching the enumeration.
        if let Some(p) = &prev {
            if *p >= state {
                return None;
            }
        }
        let d = r.u32()?;
        if d != NOT_POURABLE {
            max_distance = max_distance.max(d);
            distances.insert(state.clone(), d);
        } else if k >= 3 {
            // Unsolvable states exist only with two vessels.
            return None;
        }
        prev = Some(state);
    }
    if r.at != bytes.len() {
        return None;
    }
    Some(PourabilityTable {
        n,
        k,
        distances,
        state_count,
        max_distance,
    })
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Option<&'a [u8]> {
        let out = self.bytes.get(self.at..self.at + len)?;
        self.at += len;
        Some(out)
    }

    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        Some(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_are_byte_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let table = PourabilityTable::build(11, 3);
        save(dir.path(), &table).unwrap();
        let first = fs::read(path_for(dir.path(), 11, 3)).unwrap();
        save(dir.path(), &table).unwrap();
        let second = fs::read(path_for(dir.path(), 11, 3)).unwrap();
        assert_eq!(first, second);

        // Header spot checks: magic, version, n, k, state count.
        assert_eq!(&first[0..8], MAGIC);
        assert_eq!(u32::from_le_bytes(first[8..12].try_into().unwrap()), 1);
        assert_eq!(u64::from_le_bytes(first[12..20].try_into().unwrap()), 11);
        assert_eq!(u32::from_le_bytes(first[20..24].try_into().unwrap()), 3);
        assert_eq!(u64::from_le_bytes(first[24..32].try_into().unwrap()), 16);
        assert_eq!(first.len(), 32 + 16 * (3 * 8 + 4));
    }

    #[test]
    fn truncated_or_tampered_files_are_rejected() {
        let table = PourabilityTable::build(7, 3);
        let dir = tempfile::tempdir().unwrap();
        save(dir.path(), &table).unwrap();
        let bytes = fs::read(path_for(dir.path(), 7, 3)).unwrap();

        assert!(parse(&bytes, 7, 3).is_some());
        assert!(parse(&bytes[..bytes.len() - 1], 7, 3).is_none());
        assert!(parse(&bytes, 8, 3).is_none());
        assert!(parse(&bytes, 7, 4).is_none());

        let mut longer = bytes.clone();
        longer.push(0);
        assert!(parse(&longer, 7, 3).is_none());

        let mut wrong_magic = bytes.clone();
        wrong_magic[0] ^= 0xFF;
        assert!(parse(&wrong_magic, 7, 3).is_none());

        // Corrupt a state value so a record's total is off.
        let mut bad_total = bytes;
        bad_total[32] ^= 0x01;
        assert!(parse(&bad_total, 7, 3).is_none());
    }
}
