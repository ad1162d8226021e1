//! Architectural state the interpreter executes against.

use std::collections::BTreeMap;

use indexmap::IndexMap;

use crate::ast::InstructionDef;
use crate::bits::{low_mask, Fault};
use crate::diagnostics::{Diagnostic, ErrorCode};

pub const GPR_COUNT: usize = 32;

/// 32 general registers, sparse big-endian byte memory and scratch locals.
///
/// Memory holds only bytes that were written (or loaded from a snapshot);
/// everything else reads as zero. Addresses wrap modulo 2^64.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MachineState {
    pub gpr: [u64; GPR_COUNT],
    pub mem: BTreeMap<u64, u8>,
    pub locals: BTreeMap<String, u64>,
}

fn check_size(n: u64) -> Result<u32, Fault> {
    match n {
        1 | 2 | 4 | 8 => Ok(n as u32),
        _ => Err(Fault::new(
            ErrorCode::BadAccessSize,
            format!("memory access size {n} is not 1, 2, 4 or 8"),
        )),
    }
}

impl MachineState {
    pub fn new() -> Self {
        Self::default()
    }

    /// GPR indexed by the low five bits of `index`.
    pub fn gpr_read(&self, index: u64) -> u64 {
        self.gpr[(index & 31) as usize]
    }

    pub fn gpr_write(&mut self, index: u64, value: u64) {
        self.gpr[(index & 31) as usize] = value;
    }

    pub fn mem_read(&self, ea: u64, n: u64) -> Result<u64, Fault> {
        let n = check_size(n)?;
        Ok((0..n).fold(0u64, |acc, i| {
            let byte = self.mem.get(&ea.wrapping_add(i as u64)).copied().unwrap_or(0);
            (acc << 8) | byte as u64
        }))
    }

    pub fn mem_write(&mut self, ea: u64, n: u64, value: u64) -> Result<(), Fault> {
        let n = check_size(n)?;
        for i in 0..n {
            let byte = (value >> (8 * (n - 1 - i))) as u8;
            self.mem.insert(ea.wrapping_add(i as u64), byte);
        }
        Ok(())
    }
}

/// Load `n` bytes at `ea`, big-endian.
pub fn mem_read(state: &MachineState, ea: u64, n: u64) -> Result<u64, Fault> {
    state.mem_read(ea, n)
}

/// Store the low `8n` bits of `value` at `ea`, big-endian, returning the new state.
pub fn mem_write(state: &MachineState, ea: u64, n: u64, value: u64) -> Result<MachineState, Fault> {
    let mut next = state.clone();
    next.mem_write(ea, n, value)?;
    Ok(next)
}

/// Values for every operand field of one definition, masked to their widths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldBinding {
    values: IndexMap<String, u64>,
}

impl FieldBinding {
    /// Bind `values` to the fields of `def`. Every field must be bound exactly once and no
    /// other names may appear; values are masked to the declared width.
    pub fn new<I, S>(def: &InstructionDef, values: I) -> Result<Self, Diagnostic>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut given: IndexMap<String, u64> = IndexMap::new();
        for (name, value) in values {
            let name = name.into();
            let Some(field) = def.field(&name) else {
                return Err(Diagnostic::error(
                    ErrorCode::BadBinding,
                    def.span.clone(),
                    format!("`{}` has no operand field `{name}`", def.mnemonic),
                ));
            };
            let masked = value & low_mask(field.width as u32);
            if given.insert(name, masked).is_some() {
                return Err(Diagnostic::error(
                    ErrorCode::BadBinding,
                    def.span.clone(),
                    format!("operand field `{}` is bound twice", field.name),
                ));
            }
        }
        let mut ordered = IndexMap::new();
        for field in &def.fields {
            match given.get(&field.name) {
                Some(v) => {
                    ordered.insert(field.name.clone(), *v);
                }
                None => {
                    return Err(Diagnostic::error(
                        ErrorCode::BadBinding,
                        def.span.clone(),
                        format!("operand field `{}` is not bound", field.name),
                    ))
                }
            }
        }
        Ok(FieldBinding { values: ordered })
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.values.get(name).copied()
    }

    /// Bound values in header order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;

    /// Byte-at-a-time big-endian reference, independent of `mem_read`.
    fn be_bytes(value: u64, n: usize) -> Vec<u8> {
        let bytes = value.to_be_bytes();
        bytes[8 - n..].to_vec()
    }

    #[test]
    fn big_endian_round_trip() {
        let mut s = MachineState::new();
        s.mem_write(0x100, 4, 0x1122_3344).unwrap();
        assert_eq!(s.mem_read(0x100, 4), Ok(0x1122_3344));
        assert_eq!(s.mem_read(0x100, 1), Ok(0x11));
        assert_eq!(s.mem_read(0x103, 1), Ok(0x44));
        let stored: Vec<u8> = (0..4).map(|i| s.mem[&(0x100 + i)]).collect();
        assert_eq!(stored, be_bytes(0x1122_3344, 4));
        assert_eq!(s.mem_read(0x200, 8), Ok(0));
    }

    #[test]
    fn write_masks_to_size() {
        let s = mem_write(&MachineState::new(), 0x10, 2, 0xAABB_CCDD).unwrap();
        assert_eq!(mem_read(&s, 0x10, 2), Ok(0xCCDD));
        assert_eq!(s.mem.len(), 2);
    }

    #[test]
    fn addresses_wrap() {
        let mut s = MachineState::new();
        s.mem_write(u64::MAX - 1, 4, 0xDEAD_BEEF).unwrap();
        assert_eq!(s.mem.get(&0), Some(&0xBE));
        assert_eq!(s.mem_read(u64::MAX - 1, 4), Ok(0xDEAD_BEEF));
    }

    #[test]
    fn bad_access_size() {
        let s = MachineState::new();
        assert_eq!(s.mem_read(0, 3).unwrap_err().code, ErrorCode::BadAccessSize);
        assert_eq!(
            mem_write(&s, 0, 16, 0).unwrap_err().code,
            ErrorCode::BadAccessSize
        );
    }

    #[test]
    fn gpr_round_trip() {
        let mut s = MachineState::new();
        for i in 0..32u64 {
            let v = 0x0123_4567_89AB_CDEFu64.rotate_left(i as u32) ^ i;
            s.gpr_write(i, v);
            assert_eq!(s.gpr_read(i), v);
        }
    }

    #[test]
    fn binding_rules() {
        let def = parse_source("<t>", "instruction t(RA:5, D:16 signed):\n    b <- 0\n")
            .unwrap()
            .remove(0);
        let b = FieldBinding::new(&def, [("D", 0x1_FFFC), ("RA", 0xFF)]).unwrap();
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![("RA", 31), ("D", 0xFFFC)]);
        let missing = FieldBinding::new(&def, [("RA", 1)]).unwrap_err();
        assert_eq!(missing.code, ErrorCode::BadBinding);
        let extra = FieldBinding::new(&def, [("RA", 1), ("D", 1), ("Q", 1)]).unwrap_err();
        assert_eq!(extra.code, ErrorCode::BadBinding);
    }
}
