//! Unaligned bit-range helpers over `u64` words (bit `i` is bit `i % 64` of
//! word `i / 64`).

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i & 63);
    if value {
        words[i >> 6] |= mask;
    } else {
        words[i >> 6] &= !mask;
    }
}

/// Reads `len <= 64` bits starting at `start`, returned in the low bits.
#[inline]
pub(crate) fn read(words: &[u64], start: usize, len: usize) -> u64 {
    debug_assert!(len <= 64);
    if len == 0 {
        return 0;
    }
    let w = start >> 6;
    let off = start & 63;
    let mut v = words[w] >> off;
    if off != 0 && off + len > 64 {
        v |= words[w + 1] << (64 - off);
    }
    if len < 64 {
        v &= (1u64 << len) - 1;
    }
    v
}

/// ORs `len <= 64` low bits of `value` into `words` at `start`.
#[inline]
fn or_into(words: &mut [u64], start: usize, len: usize, value: u64) {
    if len == 0 {
        return;
    }
    let w = start >> 6;
    let off = start & 63;
    words[w] |= value << off;
    if off != 0 && off + len > 64 {
        words[w + 1] |= value >> (64 - off);
    }
}

/// ORs `len` bits of `src` starting at `src_start` into `dst` at `dst_start`.
/// Callers copy into zeroed storage, so OR is a copy.
pub(crate) fn copy_range(src: &[u64], src_start: usize, dst: &mut [u64], dst_start: usize, len: usize) {
    let mut done = 0;
    while done < len {
        let chunk = (len - done).min(64);
        let v = read(src, src_start + done, chunk);
        or_into(dst, dst_start + done, chunk, v);
        done += chunk;
    }
}

pub(crate) fn count_range(words: &[u64], start: usize, len: usize) -> u32 {
    let mut total = 0;
    let mut done = 0;
    while done < len {
        let chunk = (len - done).min(64);
        total += read(words, start + done, chunk).count_ones();
        done += chunk;
    }
    total
}

/// Calls `f(offset)` for every set bit in the range, offsets relative to `start`.
pub(crate) fn for_each_set(words: &[u64], start: usize, len: usize, mut f: impl FnMut(usize)) {
    let mut done = 0;
    while done < len {
        let chunk = (len - done).min(64);
        let mut v = read(words, start + done, chunk);
        while v != 0 {
            let b = v.trailing_zeros() as usize;
            f(done + b);
            v &= v - 1;
        }
        done += chunk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_copy(src: &[u64], s: usize, dst: &mut [u64], d: usize, len: usize) {
        for i in 0..len {
            if get(src, s + i) {
                set(dst, d + i, true);
            }
        }
    }

    #[test]
    fn copy_matches_bitwise_copy() {
        let mut rng = crate::rng::seeded(5);
        use rand::Rng;
        let src: Vec<u64> = (0..8).map(|_| rng.gen()).collect();
        for &(s, d, len) in &[(0, 0, 512), (3, 70, 200), (63, 1, 130), (64, 64, 64), (17, 5, 0), (100, 3, 300)] {
            let mut a = vec![0u64; 12];
            let mut b = vec![0u64; 12];
            copy_range(&src, s, &mut a, d, len.min(512 - s));
            naive_copy(&src, s, &mut b, d, len.min(512 - s));
            assert_eq!(a, b, "s={s} d={d} len={len}");
        }
    }

    #[test]
    fn count_and_iterate_agree() {
        let words = [0xF0F0_0000_0000_00FFu64, 0x8000_0000_0000_0001];
        assert_eq!(count_range(&words, 0, 128), 8 + 8 + 2);
        let mut seen = vec![];
        for_each_set(&words, 60, 10, |i| seen.push(i));
        assert_eq!(seen, vec![0, 1, 2, 3, 4]);
    }
}
