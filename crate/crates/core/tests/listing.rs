//! The `stw_ea` effective-address listing, end to end: parse, analyze,
//! interpret and emit.

use rtl2c_core::codegen::emit_function;
use rtl2c_core::interpreter::Interpreter;
use rtl2c_core::machine::{FieldBinding, MachineState};

const LISTING: &str = "\
instruction stw_ea(RS:5, RA:5, D:16 signed):
    if RA = 0 then
        b <-0
    else
        b <- (RA)
    EA <- b + EXTS(D)
";

fn ea(ra: u64, d: u64, gprs: &[(u64, u64)]) -> u64 {
    let defs = rtl2c_core::compile_source("listing.rtl", LISTING).unwrap();
    let mut state = MachineState::new();
    for &(i, v) in gprs {
        state.gpr_write(i, v);
    }
    let binding = FieldBinding::new(&defs[0].def, [("RS", 0), ("RA", ra), ("D", d)]).unwrap();
    let exec = Interpreter::default().execute(&defs[0], &state, &binding).unwrap();
    assert_eq!(exec.state, state, "the listing writes no architected state");
    exec.locals["EA"]
}

#[test]
fn zero_base_sign_extends_displacement() {
    assert_eq!(ea(0, 0xFFFC, &[(0, 0x1234)]), 0xFFFF_FFFF_FFFF_FFFC);
}

#[test]
fn register_base_adds_displacement() {
    assert_eq!(ea(3, 0x10, &[(3, 0x1000)]), 0x1010);
}

#[test]
fn negative_displacement_wraps() {
    assert_eq!(ea(3, 0x8000, &[(3, 0x1_0000)]), 0x8000);
    assert_eq!(ea(31, 0xFFFF, &[(31, 0)]), u64::MAX);
}

#[test]
fn emitted_function_mirrors_listing() {
    let defs = rtl2c_core::compile_source("listing.rtl", LISTING).unwrap();
    let expected = "\
/* stw_ea(RS:5, RA:5, D:16 signed) */
void rtl_stw_ea(rtl_state *st, uint64_t RS, uint64_t RA, uint64_t D)
{
    uint64_t b = 0;
    uint64_t EA = 0;
    (void)RS;
    (void)EA;

    if (RA == UINT64_C(0)) {
        b = UINT64_C(0);
    } else {
        b = rtl_gpr_read(st, RA);
    }
    EA = b + rtl_exts(D, 16);
}
";
    assert_eq!(emit_function(&defs[0]), expected);
}
