//! Bit-level primitives shared by the interpreter builtins.
//!
//! Bit indices follow the MSB0 convention: in a `width`-bit value, bit 0 is
//! the most significant bit and bit `width - 1` the least significant.

use thiserror::Error;

use crate::diagnostics::ErrorCode;

/// A run-time fault raised while evaluating RTL.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{code}: {message}")]
pub struct Fault {
    pub code: ErrorCode,
    pub message: String,
}

impl Fault {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Fault {
            code,
            message: message.into(),
        }
    }
}

/// All-ones in the low `width` bits. `width` may be 0..=64.
pub fn low_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn check_width(width: u64) -> Result<u32, Fault> {
    if (1..=64).contains(&width) {
        Ok(width as u32)
    } else {
        Err(Fault::new(
            ErrorCode::WidthRange,
            format!("width {width} outside 1..64"),
        ))
    }
}

/// Sign-extend the low `src_width` bits of `value` to 64 bits.
pub fn exts(value: u64, src_width: u64) -> Result<u64, Fault> {
    let w = check_width(src_width)?;
    let shift = 64 - w;
    Ok((((value << shift) as i64) >> shift) as u64)
}

/// Zero-extend the low `src_width` bits of `value` to 64 bits.
pub fn extz(value: u64, src_width: u64) -> Result<u64, Fault> {
    let w = check_width(src_width)?;
    Ok(value & low_mask(w))
}

fn check_slice(hi: u64, lo: u64, width: u64) -> Result<(), Fault> {
    if hi <= lo && lo < width && width <= 64 {
        Ok(())
    } else {
        Err(Fault::new(
            ErrorCode::SliceOutOfRange,
            format!("bit slice [{hi}:{lo}] outside a {width}-bit value"),
        ))
    }
}

/// Bits `hi..=lo` (MSB0) of a `width`-bit value, right-aligned.
pub fn bit_slice(value: u64, hi: u64, lo: u64, width: u64) -> Result<u64, Fault> {
    check_slice(hi, lo, width)?;
    let shift = (width - 1 - lo) as u32;
    let len = (lo - hi + 1) as u32;
    Ok((value >> shift) & low_mask(len))
}

/// Replace bits `hi..=lo` (MSB0) of a `width`-bit `value` with the low bits of `field`.
pub fn slice_insert(value: u64, hi: u64, lo: u64, width: u64, field: u64) -> Result<u64, Fault> {
    check_slice(hi, lo, width)?;
    let shift = (width - 1 - lo) as u32;
    let len = (lo - hi + 1) as u32;
    let mask = low_mask(len) << shift;
    Ok((value & !mask) | ((field << shift) & mask))
}

/// `lhs || rhs`: `lhs` lands in the high-order bits. Both operands are masked
/// to their widths; the combined width must not exceed 64.
pub fn concat(lhs: u64, lhs_width: u32, rhs: u64, rhs_width: u32) -> u64 {
    debug_assert!(lhs_width + rhs_width <= 64);
    let rhs = rhs & low_mask(rhs_width);
    let lhs = lhs & low_mask(lhs_width);
    lhs.checked_shl(rhs_width).unwrap_or(0) | rhs
}

/// Rotate left by `n` modulo 64.
pub fn rotl(value: u64, n: u64) -> u64 {
    value.rotate_left((n % 64) as u32)
}

/// Power-style mask: ones from MSB0 bit `start` through `stop`, wrapping
/// around when `start > stop`.
pub fn mask(start: u64, stop: u64) -> Result<u64, Fault> {
    if start > 63 || stop > 63 {
        return Err(Fault::new(
            ErrorCode::SliceOutOfRange,
            format!("mask bounds {start}..{stop} outside 0..63"),
        ));
    }
    let from_start = u64::MAX >> start;
    let to_stop = u64::MAX << (63 - stop);
    Ok(if start <= stop {
        from_start & to_stop
    } else {
        from_start | to_stop
    })
}

/// Complement within `width` bits.
pub fn not(value: u64, width: u32) -> u64 {
    !value & low_mask(width)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exts_examples() {
        assert_eq!(exts(0x8000, 16), Ok(0xFFFF_FFFF_FFFF_8000));
        assert_eq!(exts(0x7FFF, 16), Ok(0x0000_0000_0000_7FFF));
        assert_eq!(exts(0xFFFC, 16), Ok(0xFFFF_FFFF_FFFF_FFFC));
        assert_eq!(exts(1, 1), Ok(u64::MAX));
        for v in [0, 1, u64::MAX, 0x8000_0000_0000_0000] {
            assert_eq!(exts(v, 64), Ok(v));
        }
        assert_eq!(exts(1, 0).unwrap_err().code, ErrorCode::WidthRange);
        assert_eq!(exts(1, 65).unwrap_err().code, ErrorCode::WidthRange);
    }

    #[test]
    fn extz_examples() {
        assert_eq!(extz(0x8000, 16), Ok(0x8000));
        assert_eq!(extz(0b1010, 4), Ok(10));
        assert_eq!(extz(u64::MAX, 64), Ok(u64::MAX));
        assert_eq!(extz(0, 0).unwrap_err().code, ErrorCode::WidthRange);
    }

    #[test]
    fn bit_slice_examples() {
        let x = 0x0123_4567_89AB_CDEF;
        assert_eq!(bit_slice(x, 0, 63, 64), Ok(x));
        assert_eq!(bit_slice(0x8000_0000_0000_0000, 0, 0, 64), Ok(1));
        assert_eq!(bit_slice(0x00FF, 48, 55, 64), Ok(0));
        assert_eq!(bit_slice(0x00FF, 56, 63, 64), Ok(0xFF));
        assert_eq!(bit_slice(x, 32, 63, 64), Ok(0x89AB_CDEF));
        assert_eq!(bit_slice(0b1000, 0, 0, 4), Ok(1));
        assert_eq!(bit_slice(x, 5, 4, 64).unwrap_err().code, ErrorCode::SliceOutOfRange);
        assert_eq!(bit_slice(x, 0, 64, 64).unwrap_err().code, ErrorCode::SliceOutOfRange);
        assert_eq!(bit_slice(x, 0, 16, 16).unwrap_err().code, ErrorCode::SliceOutOfRange);
    }

    #[test]
    fn slice_insert_examples() {
        assert_eq!(slice_insert(0, 0, 7, 64, 0xAB), Ok(0xAB00_0000_0000_0000));
        assert_eq!(slice_insert(u64::MAX, 56, 63, 64, 0), Ok(0xFFFF_FFFF_FFFF_FF00));
        assert_eq!(slice_insert(0, 0, 63, 64, 7), Ok(7));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(0b1010, 4, 0b0001, 4), 0xA1);
        assert_eq!(concat(0xFFFF, 16, 0, 48), 0xFFFF_0000_0000_0000);
        assert_eq!(concat(0x1F, 4, 0, 0), 0xF);
    }

    #[test]
    fn mask_examples() {
        assert_eq!(mask(0, 63), Ok(u64::MAX));
        assert_eq!(mask(32, 63), Ok(0xFFFF_FFFF));
        assert_eq!(mask(0, 0), Ok(0x8000_0000_0000_0000));
        assert_eq!(mask(63, 0), Ok(0x8000_0000_0000_0001));
        assert_eq!(mask(64, 0).unwrap_err().code, ErrorCode::SliceOutOfRange);
    }

    #[test]
    fn rotl_and_not() {
        assert_eq!(rotl(0x8000_0000_0000_0001, 1), 3);
        assert_eq!(rotl(5, 64), 5);
        assert_eq!(not(0, 1), 1);
        assert_eq!(not(1, 1), 0);
        assert_eq!(not(0, 64), u64::MAX);
    }
}
