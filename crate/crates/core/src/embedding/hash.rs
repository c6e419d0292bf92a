use super::vector::Vector;

pub const HASH_PROVIDER_ID: &str = "hash-v1";

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// Deterministic signed feature-hashing embedding over byte trigrams.
///
/// The text is lowercased and split into overlapping 3-byte windows (or a
/// single feature for texts shorter than three bytes). Each feature adds ±1
/// at `fnv1a64(feature) % dim`, the sign taken from the hash's top bit. The
/// accumulator is L2-normalized; empty text yields the zero vector.
///
/// # Panics
///
/// Panics if `dim` is zero.
pub fn hash_embed(text: &str, dim: usize) -> Vector {
    assert!(dim >= 1, "hash_embed requires dim >= 1");
    let lowered = text.to_lowercase();
    let bytes = lowered.as_bytes();
    let mut acc = vec![0.0f64; dim];

    let mut add = |feature: &[u8]| {
        let h = fnv1a64(feature);
        let sign = if h >> 63 == 0 { 1.0 } else { -1.0 };
        acc[(h % dim as u64) as usize] += sign;
    };
    match bytes.len() {
        0 => {}
        1 | 2 => add(bytes),
        _ => bytes.windows(3).for_each(&mut add),
    }

    let norm = acc.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Vector::zeros(dim);
    }
    Vector::from_raw(acc.into_iter().map(|a| (a / norm) as f32).collect())
}
