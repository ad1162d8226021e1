//! Per-bit reference implementations. Deliberately naive: each result bit is
//! computed on its own from the definition, never with shifts of whole words.
#![allow(dead_code)]

fn bit(v: u64, i: u32) -> u64 {
    (v >> i) & 1
}

/// Sign-extend the low `w` bits (1..=64).
pub fn exts(v: u64, w: u32) -> u64 {
    let mut r = 0;
    for i in 0..64 {
        let b = if i < w { bit(v, i) } else { bit(v, w - 1) };
        r |= b << i;
    }
    r
}

/// Zero-extend the low `w` bits (1..=64).
pub fn extz(v: u64, w: u32) -> u64 {
    let mut r = 0;
    for i in 0..w {
        r |= bit(v, i) << i;
    }
    r
}

/// MSB0 bits `hi..=lo` of a `w`-bit value: position p is LSB index w-1-p.
pub fn bit_slice(v: u64, hi: u32, lo: u32, w: u32) -> u64 {
    let mut r = 0;
    for p in hi..=lo {
        r = (r << 1) | bit(v, w - 1 - p);
    }
    r
}

/// Replace MSB0 bits `hi..=lo` of a `w`-bit value with the low bits of `field`.
pub fn slice_insert(v: u64, hi: u32, lo: u32, w: u32, field: u64) -> u64 {
    let mut r = v;
    let n = lo - hi + 1;
    for k in 0..n {
        // k-th bit of the field counting from its MSB lands at position hi + k
        let src = bit(field, n - 1 - k);
        let dst = w - 1 - (hi + k);
        r = (r & !(1 << dst)) | (src << dst);
    }
    r
}

/// `l` (lw bits) followed by `r` (rw bits), lw + rw <= 64.
pub fn concat(l: u64, lw: u32, r: u64, rw: u32) -> u64 {
    let mut bits = Vec::new();
    for i in (0..lw).rev() {
        bits.push(bit(l, i));
    }
    for i in (0..rw).rev() {
        bits.push(bit(r, i));
    }
    bits.into_iter().fold(0, |acc, b| (acc << 1) | b)
}

pub fn rotl(v: u64, n: u64) -> u64 {
    let mut r = 0;
    for i in 0..64u64 {
        r |= bit(v, i as u32) << ((i + n) % 64);
    }
    r
}

/// Ones at MSB0 positions start..=stop, wrapping when start > stop.
pub fn mask(start: u32, stop: u32) -> u64 {
    let mut r = 0;
    for p in 0..64u32 {
        let set = if start <= stop {
            start <= p && p <= stop
        } else {
            p >= start || p <= stop
        };
        if set {
            r |= 1 << (63 - p);
        }
    }
    r
}

/// Big-endian byte image of the low `n` bytes of `v`.
pub fn be_bytes(v: u64, n: u32) -> Vec<u8> {
    (0..n).map(|i| ((v >> (8 * (n - 1 - i))) & 0xFF) as u8).collect()
}
