//! Demapping of byte-level BPE surfaces back to bytes.
//!
//! Byte-level vocabularies spell every byte with a printable stand-in
//! character. The table lives in `data/byte_level_map.tsv`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::vocab::Surface;

const BYTE_MAP: &str = include_str!("../data/byte_level_map.tsv");

struct ByteTable {
    to_byte: HashMap<char, u8>,
    to_char: [char; 256],
}

fn parse_table(src: &str) -> Result<ByteTable> {
    let mut to_byte = HashMap::with_capacity(256);
    let mut to_char = ['\0'; 256];
    let mut seen = [false; 256];
    for (n, line) in src.lines().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Format(format!("byte map line {}: `{line}`", n + 1));
        let (b, c) = line.split_once('\t').ok_or_else(bad)?;
        let b = u8::from_str_radix(b, 16).map_err(|_| bad())?;
        let c = u32::from_str_radix(c, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(bad)?;
        if seen[b as usize] || to_byte.insert(c, b).is_some() {
            return Err(Error::Format(format!("byte map line {}: duplicate entry", n + 1)));
        }
        seen[b as usize] = true;
        to_char[b as usize] = c;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Format("byte map does not cover all 256 bytes".into()));
    }
    Ok(ByteTable { to_byte, to_char })
}

fn table() -> &'static ByteTable {
    static TABLE: OnceLock<ByteTable> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(BYTE_MAP).expect("bundled byte map is well formed"))
}

/// Raw bytes spelled by a byte-level surface.
pub fn surface_to_bytes(surface: &str) -> Result<Vec<u8>> {
    let table = table();
    surface
        .chars()
        .map(|c| {
            table.to_byte.get(&c).copied().ok_or_else(|| {
                Error::Format(format!("character {c:?} (U+{:04X}) is not in the byte alphabet", c as u32))
            })
        })
        .collect()
}

/// Inverse of [`surface_to_bytes`].
pub fn bytes_to_surface(bytes: &[u8]) -> String {
    let table = table();
    bytes.iter().map(|&b| table.to_char[b as usize]).collect()
}

/// Decodes a byte-level surface. Incomplete or invalid UTF-8 comes back as
/// [`Surface::Bytes`].
pub fn demap_byte_level(raw: &str) -> Result<Surface> {
    let bytes = surface_to_bytes(raw)?;
    Ok(match String::from_utf8(bytes) {
        Ok(text) => Surface::Text(text),
        Err(e) => Surface::Bytes(e.into_bytes()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Stand-in alphabet rebuilt from its published construction: printable
    /// Latin-1 bytes map to themselves, the rest are shifted past U+0100 in
    /// byte order.
    fn oracle_alphabet() -> Vec<char> {
        let printable = |b: u32| (0x21..=0x7E).contains(&b) || (0xA1..=0xAC).contains(&b) || (0xAE..=0xFF).contains(&b);
        let mut next = 256u32;
        (0u32..256)
            .map(|b| {
                if printable(b) {
                    char::from_u32(b).unwrap()
                } else {
                    let c = char::from_u32(next).unwrap();
                    next += 1;
                    c
                }
            })
            .collect()
    }

    fn oracle_encode(text: &[u8]) -> String {
        let alphabet = oracle_alphabet();
        text.iter().map(|&b| alphabet[b as usize]).collect()
    }

    #[test]
    fn table_matches_oracle() {
        let alphabet = oracle_alphabet();
        for b in 0..=255u8 {
            assert_eq!(bytes_to_surface(&[b]).chars().next(), Some(alphabet[b as usize]));
        }
    }

    #[test]
    fn ascii_maps_to_itself() {
        assert_eq!(demap_byte_level("the").unwrap(), Surface::Text("the".into()));
        assert_eq!(demap_byte_level("Ġthe").unwrap(), Surface::Text(" the".into()));
    }

    #[test]
    fn partial_multibyte_is_marked() {
        let bytes = "是".as_bytes();
        let first = oracle_encode(&bytes[..1]);
        assert_eq!(demap_byte_level(&first).unwrap(), Surface::Bytes(vec![bytes[0]]));
        let two = oracle_encode(&bytes[..2]);
        assert!(matches!(demap_byte_level(&two).unwrap(), Surface::Bytes(_)));
    }

    #[test]
    fn han_round_trip_through_oracle() {
        let surface = oracle_encode("是".as_bytes());
        assert_eq!(surface, "æĺ¯");
        assert_eq!(demap_byte_level(&surface).unwrap(), Surface::Text("是".into()));
    }

    #[test]
    fn unknown_character_is_format_error() {
        assert!(matches!(demap_byte_level("中"), Err(Error::Format(_))));
        assert!(matches!(demap_byte_level("a b"), Err(Error::Format(_))));
    }

    #[test]
    fn table_validation() {
        assert!(parse_table("00\t0100\n").is_err());
        assert!(parse_table("zz\t0100\n").is_err());
    }
}
