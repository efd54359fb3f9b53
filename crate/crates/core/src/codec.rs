//! Compact on-disk tree format and its analytic size model.
//!
//! A plain node record would always reserve `m - 1` key slots and `m`
//! child links. The compact format stores per node only what its type
//! needs, at the cost of a one-byte-class descriptor on every node and a
//! presence bitmap on internal nodes with empty slots:
//!
//! * type `t` in `1..m-1` (key-full, `t` empty slots): descriptor +
//!   bitmap + `m - 1` keys + `m - t` links, links in left-to-right
//!   present order;
//! * type `m` (full leaf): descriptor + `m - 1` keys;
//! * type `m + j` (leaf with `j` keys): descriptor + `j` keys;
//! * type `2m - 1` (full node): descriptor + `m - 1` keys + `m` links.
//!
//! The measured payload of [`encode`] equals [`compact_size_formula`]
//! on the tree's profile exactly, byte for byte, and
//! [`relative_limit_exact`] gives the almost-sure limit of the ratio to
//! the plain layout.
//!
//! ```
//! use marytree::{codec, MaryTree};
//!
//! let tree = MaryTree::from_permutation(4, &[2, 1, 3, 4, 5]).unwrap();
//! let params = codec::size_params(4, 4, 4, 8).unwrap();
//! let image = codec::encode(&tree, &params).unwrap();
//!
//! assert!(codec::lookup(&image, 3).unwrap());
//! assert!(!codec::lookup(&image, 9).unwrap());
//! assert_eq!(codec::decode(&image).unwrap(), tree);
//! ```
//!
//! # File layout
//!
//! All integers little-endian. Header: magic `"CMST"` (4 bytes),
//! version byte = 1, `m` as u16, `k` and `p` as u8 (bytes per key and
//! per link), 3 reserved zero bytes, `n` as u64, root offset in `p`
//! bytes. Node records follow in preorder; child links are absolute
//! byte offsets from the start of the file, so offset 0 (inside the
//! header) is never a valid target. The descriptor is stored in enough
//! bytes for all `2m - 1` type values; the analytic model sizes it for
//! `2m - 2`, and the two widths agree for every `m <= 128`, which is
//! why [`encode`] stops there.
//!
//! The bitmap is the integer `sum over present slots j of 2^(m-j)`
//! (slot 1 is the most significant of the m bits), stored in
//! `ceil(m/8)` bytes. A reader descending to child slot `j` counts the
//! set bits left of `j` to find which stored link to follow, which is
//! how [`lookup`] walks the file without materializing the tree.

use thiserror::Error;

use crate::spectra::harmonic;
use crate::tree::{GapProfile, MaryTree, NodeId, Rank};

const MAGIC: [u8; 4] = *b"CMST";
const VERSION: u8 = 1;
/// Fixed header bytes before the root offset.
const HEADER_FIXED: usize = 20;
/// Largest branching factor the codec accepts; keeps the codec
/// descriptor width equal to the analytic one and the bitmap in a u128.
pub const M_MAX_CODEC: usize = 128;

/// Codec failures, parse errors kept distinct by variant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodecError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("cannot encode an empty tree")]
    EmptyTree,

    #[error("key {key} does not fit in {width} bytes")]
    KeyOverflow { key: u64, width: u32 },

    #[error("offset {offset} does not fit in {width} bytes")]
    OffsetOverflow { offset: u64, width: u32 },

    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),

    #[error("bad magic {0:02x?}")]
    BadMagic([u8; 4]),

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),

    #[error("invalid header: {0}")]
    InvalidHeader(String),

    #[error("truncated image: need {needed} bytes at offset {offset}, have {len}")]
    Truncated { offset: u64, needed: u64, len: u64 },

    #[error("dangling offset {0}")]
    DanglingOffset(u64),

    #[error("descriptor value {value} outside 1..={max}")]
    InvalidDescriptor { value: u64, max: u64 },

    #[error("corrupt image: {0}")]
    Corrupt(String),
}

/// Byte widths of the size model: `k` per key, `p` per link, `b` bits
/// per byte (always 8), plus the derived descriptor and bitmap widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeParams {
    m: usize,
    key_bytes: u32,
    link_bytes: u32,
    bits_per_byte: u32,
    descriptor_bytes: u32,
    bitmap_bytes: u32,
}

/// Smallest byte count d >= 1 with `value_count <= 2^(d*b)`.
fn descriptor_width(value_count: u64, bits_per_byte: u32) -> u32 {
    let mut d = 1u32;
    while (d * bits_per_byte) < 63 && (1u64 << (d * bits_per_byte)) < value_count {
        d += 1;
    }
    d
}

/// Build the size model: `m >= 2`, `k, p >= 1`, `b = 8`.
pub fn size_params(m: usize, k: u32, p: u32, b: u32) -> Result<SizeParams, CodecError> {
    if m < 2 {
        return Err(CodecError::InvalidParams(format!(
            "branching factor must be at least 2, got {m}"
        )));
    }
    if k < 1 || p < 1 {
        return Err(CodecError::InvalidParams(
            "key and link widths must be at least 1 byte".to_string(),
        ));
    }
    if b != 8 {
        return Err(CodecError::InvalidParams(format!(
            "only 8-bit bytes are supported, got {b}"
        )));
    }
    Ok(SizeParams {
        m,
        key_bytes: k,
        link_bytes: p,
        bits_per_byte: b,
        descriptor_bytes: descriptor_width(2 * m as u64 - 2, b),
        bitmap_bytes: (m as u32).div_ceil(b),
    })
}

impl SizeParams {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn key_bytes(&self) -> u32 {
        self.key_bytes
    }

    pub fn link_bytes(&self) -> u32 {
        self.link_bytes
    }

    pub fn bits_per_byte(&self) -> u32 {
        self.bits_per_byte
    }

    /// Descriptor bytes of the analytic model: sized for the 2m - 2 gap
    /// colors, `ceil(log2(2m-2) / b)`.
    pub fn descriptor_bytes(&self) -> u32 {
        self.descriptor_bytes
    }

    /// Descriptor bytes the codec writes: sized for all 2m - 1 node
    /// types. Identical to [`Self::descriptor_bytes`] for `m <= 128`.
    pub fn descriptor_bytes_codec(&self) -> u32 {
        descriptor_width(2 * self.m as u64 - 1, self.bits_per_byte)
    }

    /// Bitmap bytes, `ceil(m / b)`.
    pub fn bitmap_bytes(&self) -> u32 {
        self.bitmap_bytes
    }
}

/// Bytes used by a plain layout of `s_n` nodes: `(m p + (m-1) k) * S_n`.
pub fn plain_size(s_n: u64, params: &SizeParams) -> u64 {
    let m = params.m as u64;
    (m * params.link_bytes as u64 + (m - 1) * params.key_bytes as u64) * s_n
}

/// Compact size by node class, in bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBreakdown {
    pub full_nodes_bytes: u64,
    pub internal_bytes: u64,
    pub full_leaf_bytes: u64,
    pub partial_leaf_bytes: u64,
    pub total: u64,
}

/// Evaluate the compact size formula on exact profile counts: `x` is the
/// gap profile and `full_nodes` the number of type-(2m-1) nodes.
pub fn compact_size_formula(
    x: &GapProfile,
    full_nodes: u64,
    params: &SizeParams,
) -> Result<SizeBreakdown, CodecError> {
    let m = params.m;
    if x.m() != m {
        return Err(CodecError::InvalidParams(format!(
            "profile is for m={}, params for m={m}",
            x.m()
        )));
    }
    let (k, p) = (params.key_bytes as u64, params.link_bytes as u64);
    let delta = params.descriptor_bytes as u64;
    let bitmap = params.bitmap_bytes as u64;
    let keys_full = (m as u64 - 1) * k;

    let full_nodes_bytes = (delta + keys_full + m as u64 * p) * full_nodes;

    let mut internal_bytes = 0u64;
    for i in 1..m {
        let gaps = x.color(i);
        if !gaps.is_multiple_of(i as u64) {
            return Err(CodecError::InconsistentProfile(format!(
                "color {i} count {gaps} not divisible by {i}"
            )));
        }
        internal_bytes += (delta + bitmap + keys_full + (m - i) as u64 * p) * (gaps / i as u64);
    }

    let full_leaf_gaps = x.color(m);
    if !full_leaf_gaps.is_multiple_of(m as u64) {
        return Err(CodecError::InconsistentProfile(format!(
            "color {m} count {full_leaf_gaps} not divisible by {m}"
        )));
    }
    let full_leaf_bytes = (delta + keys_full) * (full_leaf_gaps / m as u64);

    let mut partial_leaf_bytes = 0u64;
    for j in 1..=m.saturating_sub(2) {
        let gaps = x.color(m + j);
        let per_leaf = j as u64 + 1;
        if !gaps.is_multiple_of(per_leaf) {
            return Err(CodecError::InconsistentProfile(format!(
                "color {} count {gaps} not divisible by {per_leaf}",
                m + j
            )));
        }
        partial_leaf_bytes += (delta + j as u64 * k) * (gaps / per_leaf);
    }

    Ok(SizeBreakdown {
        full_nodes_bytes,
        internal_bytes,
        full_leaf_bytes,
        partial_leaf_bytes,
        total: full_nodes_bytes + internal_bytes + full_leaf_bytes + partial_leaf_bytes,
    })
}

/// An encoded tree: header plus preorder node records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactImage {
    bytes: Vec<u8>,
}

impl CompactImage {
    /// Wrap raw bytes; nothing is validated until the image is used.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CompactImage { bytes }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    /// Bytes after the header; the part the size model accounts for.
    pub fn payload_len(&self) -> Result<u64, CodecError> {
        let header = Header::parse(&self.bytes)?;
        Ok(self.bytes.len() as u64 - header.header_len as u64)
    }
}

/// Header fields of an image, for inspection tools.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageInfo {
    pub m: usize,
    pub key_bytes: u32,
    pub link_bytes: u32,
    pub n: u64,
    pub payload_len: u64,
}

/// Parse and validate just the header.
pub fn image_info(image: &CompactImage) -> Result<ImageInfo, CodecError> {
    let header = Header::parse(image.as_bytes())?;
    Ok(ImageInfo {
        m: header.m,
        key_bytes: header.key_bytes,
        link_bytes: header.link_bytes,
        n: header.n,
        payload_len: image.as_bytes().len() as u64 - header.header_len as u64,
    })
}

struct Header {
    m: usize,
    key_bytes: u32,
    link_bytes: u32,
    n: u64,
    root_offset: u64,
    header_len: usize,
}

fn read_le(bytes: &[u8]) -> Result<u64, CodecError> {
    let mut value = 0u64;
    for (i, &byte) in bytes.iter().enumerate() {
        if i >= 8 {
            if byte != 0 {
                return Err(CodecError::Corrupt(
                    "field wider than 8 bytes has nonzero high bytes".to_string(),
                ));
            }
            continue;
        }
        value |= (byte as u64) << (8 * i);
    }
    Ok(value)
}

fn read_le_u128(bytes: &[u8]) -> Result<u128, CodecError> {
    let mut value = 0u128;
    for (i, &byte) in bytes.iter().enumerate() {
        if i >= 16 {
            if byte != 0 {
                return Err(CodecError::Corrupt(
                    "field wider than 16 bytes has nonzero high bytes".to_string(),
                ));
            }
            continue;
        }
        value |= (byte as u128) << (8 * i);
    }
    Ok(value)
}

fn write_le(buf: &mut Vec<u8>, value: u128, width: u32) {
    for i in 0..width {
        buf.push(if i < 16 { (value >> (8 * i)) as u8 } else { 0 });
    }
}

impl Header {
    fn parse(bytes: &[u8]) -> Result<Header, CodecError> {
        if bytes.len() < HEADER_FIXED {
            return Err(CodecError::Truncated {
                offset: 0,
                needed: HEADER_FIXED as u64,
                len: bytes.len() as u64,
            });
        }
        let magic: [u8; 4] = bytes[0..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(CodecError::BadMagic(magic));
        }
        if bytes[4] != VERSION {
            return Err(CodecError::UnsupportedVersion(bytes[4]));
        }
        let m = u16::from_le_bytes([bytes[5], bytes[6]]) as usize;
        if !(2..=M_MAX_CODEC).contains(&m) {
            return Err(CodecError::InvalidHeader(format!(
                "branching factor {m} outside 2..={M_MAX_CODEC}"
            )));
        }
        let key_bytes = bytes[7] as u32;
        let link_bytes = bytes[8] as u32;
        if key_bytes == 0 || link_bytes == 0 {
            return Err(CodecError::InvalidHeader(
                "key/link widths must be at least 1".to_string(),
            ));
        }
        if bytes[9..12] != [0, 0, 0] {
            return Err(CodecError::InvalidHeader(
                "reserved bytes must be zero".to_string(),
            ));
        }
        let n = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
        if n == 0 {
            return Err(CodecError::InvalidHeader(
                "key count must be at least 1".to_string(),
            ));
        }
        let header_len = HEADER_FIXED + link_bytes as usize;
        if bytes.len() < header_len {
            return Err(CodecError::Truncated {
                offset: HEADER_FIXED as u64,
                needed: header_len as u64,
                len: bytes.len() as u64,
            });
        }
        let root_offset = read_le(&bytes[HEADER_FIXED..header_len])?;
        if root_offset < header_len as u64 || root_offset >= bytes.len() as u64 {
            return Err(CodecError::DanglingOffset(root_offset));
        }
        Ok(Header {
            m,
            key_bytes,
            link_bytes,
            n,
            root_offset,
            header_len,
        })
    }
}

/// Record shape implied by a descriptor value.
struct RecordShape {
    key_count: usize,
    has_bitmap: bool,
    link_count: usize,
}

fn record_shape(t: usize, m: usize) -> RecordShape {
    if t < m {
        RecordShape {
            key_count: m - 1,
            has_bitmap: true,
            link_count: m - t,
        }
    } else if t == m {
        RecordShape {
            key_count: m - 1,
            has_bitmap: false,
            link_count: 0,
        }
    } else if t < 2 * m - 1 {
        RecordShape {
            key_count: t - m,
            has_bitmap: false,
            link_count: 0,
        }
    } else {
        RecordShape {
            key_count: m - 1,
            has_bitmap: false,
            link_count: m,
        }
    }
}

fn record_size(t: usize, params: &SizeParams) -> u64 {
    let shape = record_shape(t, params.m);
    params.descriptor_bytes_codec() as u64
        + if shape.has_bitmap {
            params.bitmap_bytes as u64
        } else {
            0
        }
        + shape.key_count as u64 * params.key_bytes as u64
        + shape.link_count as u64 * params.link_bytes as u64
}

/// Encode a nonempty tree. The payload length always equals
/// [`compact_size_formula`] on the tree's profile.
pub fn encode(tree: &MaryTree, params: &SizeParams) -> Result<CompactImage, CodecError> {
    if tree.is_empty() {
        return Err(CodecError::EmptyTree);
    }
    let m = params.m;
    if tree.m() != m {
        return Err(CodecError::InvalidParams(format!(
            "tree has m={}, params m={m}",
            tree.m()
        )));
    }
    if m > M_MAX_CODEC {
        return Err(CodecError::InvalidParams(format!(
            "codec supports m up to {M_MAX_CODEC}, got {m}"
        )));
    }
    if params.key_bytes > 255 || params.link_bytes > 255 {
        return Err(CodecError::InvalidParams(
            "header stores key/link widths in one byte each".to_string(),
        ));
    }
    let k = params.key_bytes;
    if k < 8 {
        let limit = 1u64 << (8 * k);
        for id in tree.node_ids() {
            for &key in tree.keys_of(id) {
                if key >= limit {
                    return Err(CodecError::KeyOverflow { key, width: k });
                }
            }
        }
    }

    // preorder placement
    let mut order = Vec::with_capacity(tree.node_count() as usize);
    let mut stack = vec![tree.root().expect("nonempty tree has a root")];
    while let Some(id) = stack.pop() {
        order.push(id);
        for slot in (0..m).rev() {
            if let Some(child) = tree.child(id, slot) {
                stack.push(child);
            }
        }
    }

    let header_len = (HEADER_FIXED as u32 + params.link_bytes) as u64;
    let mut offsets = std::collections::HashMap::with_capacity(order.len());
    let mut cursor = header_len;
    for &id in &order {
        offsets.insert(id, cursor);
        cursor += record_size(tree.node_type(id).code(), params);
    }
    let p = params.link_bytes;
    if p < 8 {
        let limit = 1u64 << (8 * p);
        if cursor > limit {
            return Err(CodecError::OffsetOverflow {
                offset: cursor,
                width: p,
            });
        }
    }

    let mut bytes = Vec::with_capacity(cursor as usize);
    bytes.extend_from_slice(&MAGIC);
    bytes.push(VERSION);
    bytes.extend_from_slice(&(m as u16).to_le_bytes());
    bytes.push(k as u8);
    bytes.push(p as u8);
    bytes.extend_from_slice(&[0, 0, 0]);
    bytes.extend_from_slice(&tree.len().to_le_bytes());
    write_le(&mut bytes, header_len as u128, p);

    for &id in &order {
        let t = tree.node_type(id).code();
        let shape = record_shape(t, m);
        write_le(&mut bytes, t as u128, params.descriptor_bytes_codec());
        if shape.has_bitmap {
            let mut bitmap = 0u128;
            for slot in 0..m {
                if tree.child(id, slot).is_some() {
                    bitmap |= 1 << (m - 1 - slot);
                }
            }
            write_le(&mut bytes, bitmap, params.bitmap_bytes);
        }
        let keys = tree.keys_of(id);
        debug_assert_eq!(keys.len(), shape.key_count);
        for &key in keys {
            write_le(&mut bytes, key as u128, k);
        }
        if shape.link_count > 0 {
            for slot in 0..m {
                if let Some(child) = tree.child(id, slot) {
                    write_le(&mut bytes, offsets[&child] as u128, p);
                }
            }
        }
    }
    debug_assert_eq!(bytes.len() as u64, cursor);
    Ok(CompactImage { bytes })
}

/// One parsed record, before the tree is reassembled.
struct RawRecord {
    keys: Vec<Rank>,
    /// (slot, absolute offset) of each present child, ascending slots.
    children: Vec<(usize, u64)>,
}

fn parse_record(
    bytes: &[u8],
    offset: u64,
    header: &Header,
    descriptor_bytes: u32,
    bitmap_bytes: u32,
) -> Result<RawRecord, CodecError> {
    let m = header.m;
    let len = bytes.len() as u64;
    let mut cursor = offset;
    let mut take = |width: u64| -> Result<&[u8], CodecError> {
        if cursor + width > len {
            return Err(CodecError::Truncated {
                offset: cursor,
                needed: width,
                len,
            });
        }
        let slice = &bytes[cursor as usize..(cursor + width) as usize];
        cursor += width;
        Ok(slice)
    };

    let t = read_le(take(descriptor_bytes as u64)?)? as usize;
    if t == 0 || t > 2 * m - 1 {
        return Err(CodecError::InvalidDescriptor {
            value: t as u64,
            max: 2 * m as u64 - 1,
        });
    }
    let shape = record_shape(t, m);

    let mut present_slots = Vec::new();
    if shape.has_bitmap {
        let bitmap = read_le_u128(take(bitmap_bytes as u64)?)?;
        if bitmap >> m != 0 {
            return Err(CodecError::Corrupt(format!(
                "bitmap has bits beyond the {m} child slots"
            )));
        }
        for slot in 0..m {
            if bitmap >> (m - 1 - slot) & 1 == 1 {
                present_slots.push(slot);
            }
        }
        if present_slots.len() != shape.link_count {
            return Err(CodecError::Corrupt(format!(
                "descriptor {t} promises {} children but bitmap has {}",
                shape.link_count,
                present_slots.len()
            )));
        }
    } else if shape.link_count > 0 {
        present_slots = (0..m).collect();
    }

    let mut keys = Vec::with_capacity(shape.key_count);
    for _ in 0..shape.key_count {
        let key = read_le(take(header.key_bytes as u64)?)?;
        if key == 0 {
            return Err(CodecError::Corrupt("zero key rank".to_string()));
        }
        if let Some(&prev) = keys.last() {
            if key <= prev {
                return Err(CodecError::Corrupt(
                    "keys within a node must be strictly ascending".to_string(),
                ));
            }
        }
        keys.push(key);
    }

    let mut children = Vec::with_capacity(shape.link_count);
    for slot in present_slots {
        let target = read_le(take(header.link_bytes as u64)?)?;
        if target < header.header_len as u64 || target >= len {
            return Err(CodecError::DanglingOffset(target));
        }
        children.push((slot, target));
    }
    Ok(RawRecord { keys, children })
}

/// Decode an image back into a tree; exact inverse of [`encode`].
pub fn decode(image: &CompactImage) -> Result<MaryTree, CodecError> {
    let bytes = image.as_bytes();
    let header = Header::parse(bytes)?;
    let params = size_params(header.m, header.key_bytes, header.link_bytes, 8)?;
    let descriptor_bytes = params.descriptor_bytes_codec();
    let bitmap_bytes = params.bitmap_bytes();

    let mut tree = MaryTree::raw_new(header.m);
    // (offset, parent slot) worklist; cycles cannot outrun the node
    // budget because every node carries at least one key
    let mut stack: Vec<(u64, Option<(NodeId, usize)>)> = vec![(header.root_offset, None)];
    let mut nodes = 0u64;
    while let Some((offset, parent)) = stack.pop() {
        nodes += 1;
        if nodes > header.n {
            return Err(CodecError::Corrupt(format!(
                "more than {} nodes for {} keys",
                header.n, header.n
            )));
        }
        let record = parse_record(bytes, offset, &header, descriptor_bytes, bitmap_bytes)?;
        let id = tree.raw_add_node(record.keys);
        match parent {
            None => tree.raw_set_root(id),
            Some((parent_id, slot)) => tree.raw_set_child(parent_id, slot, id),
        }
        for (slot, child_offset) in record.children {
            stack.push((child_offset, Some((id, slot))));
        }
    }

    if tree.len() != header.n {
        return Err(CodecError::Corrupt(format!(
            "header promises {} keys, records hold {}",
            header.n,
            tree.len()
        )));
    }
    let keys = tree.in_order_keys();
    if keys.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CodecError::Corrupt(
            "keys are not in search order".to_string(),
        ));
    }
    Ok(tree)
}

/// Membership test straight off the image, descending by bitmap rank;
/// the tree is never materialized.
pub fn lookup(image: &CompactImage, rank: Rank) -> Result<bool, CodecError> {
    let bytes = image.as_bytes();
    let header = Header::parse(bytes)?;
    let params = size_params(header.m, header.key_bytes, header.link_bytes, 8)?;
    let descriptor_bytes = params.descriptor_bytes_codec();
    let bitmap_bytes = params.bitmap_bytes();

    let mut offset = header.root_offset;
    let mut depth = 0u64;
    loop {
        depth += 1;
        if depth > header.n {
            return Err(CodecError::Corrupt(
                "descent deeper than the key count; link cycle".to_string(),
            ));
        }
        let record = parse_record(bytes, offset, &header, descriptor_bytes, bitmap_bytes)?;
        let slot = match record.keys.binary_search(&rank) {
            Ok(_) => return Ok(true),
            Err(pos) => pos,
        };
        match record.children.iter().find(|(s, _)| *s == slot) {
            Some(&(_, child_offset)) => offset = child_offset,
            None => return Ok(false),
        }
    }
}

/// Exact limit of compact bytes over plain bytes:
/// `(2m^2 k H + m^2 d - 2m^2 k + m^2 p + 2mk H + m d + 2m D + m p - 2mk - 2D)
///  / (m (m+1) (m p + (m-1) k))`
/// with `d`, `D` the descriptor and bitmap widths and `H` the m-th
/// harmonic number.
pub fn relative_limit_exact(m: usize, k: u32, p: u32, b: u32) -> Result<f64, CodecError> {
    let params = size_params(m, k, p, b)?;
    let mf = m as f64;
    let kf = k as f64;
    let pf = p as f64;
    let d = params.descriptor_bytes() as f64;
    let dd = params.bitmap_bytes() as f64;
    let h = harmonic(m);
    let numerator = 2.0 * mf * mf * kf * h + mf * mf * d - 2.0 * mf * mf * kf
        + mf * mf * pf
        + 2.0 * mf * kf * h
        + mf * d
        + 2.0 * mf * dd
        + mf * pf
        - 2.0 * mf * kf
        - 2.0 * dd;
    let denominator = mf * (mf + 1.0) * (mf * pf + (mf - 1.0) * kf);
    Ok(numerator / denominator)
}

/// Large-m approximation of the relative size: `(2k + b) ln m / ((k+p) m)`.
pub fn relative_limit_asymptotic(m: usize, k: u32, p: u32, b: u32) -> Result<f64, CodecError> {
    if m < 2 {
        return Err(CodecError::InvalidParams(format!(
            "branching factor must be at least 2, got {m}"
        )));
    }
    if k < 1 || p < 1 || b < 1 {
        return Err(CodecError::InvalidParams(
            "k, p, b must be at least 1".to_string(),
        ));
    }
    let (kf, pf, bf) = (k as f64, p as f64, b as f64);
    Ok((2.0 * kf + bf) * (m as f64).ln() / ((kf + pf) * m as f64))
}
