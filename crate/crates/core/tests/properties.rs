mod common;

use common::{gen, oracles};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rtl2c_core::bits;
use rtl2c_core::interpreter::{exec_instruction, FieldBinding, MachineState};
use rtl2c_core::lexer::{tokenize, TokenKind};
use rtl2c_core::parser::parse_expression;
use rtl2c_core::pretty::{print_expr, print_expr_full};

fn reparse(src: &str) -> rtl2c_core::ast::Expr {
    let tokens = tokenize(src).unwrap_or_else(|d| panic!("{src}: {d:?}"));
    let (expr, used) = parse_expression(&tokens, 0).unwrap_or_else(|d| panic!("{src}: {d}"));
    assert_eq!(tokens[used].kind, TokenKind::Newline, "trailing input in {src}");
    expr
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printed_expressions_reparse_to_the_same_tree(seed in any::<u64>()) {
        let e = gen::expr(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let minimal = print_expr(&e);
        prop_assert_eq!(&reparse(&minimal), &e, "{}", minimal);
        let full = print_expr_full(&e);
        prop_assert_eq!(&reparse(&full), &e, "{}", full);
        // printing is a fixed point
        prop_assert_eq!(print_expr(&reparse(&minimal)), minimal);
    }

    #[test]
    fn exts_matches_oracle(v in any::<u64>(), w in 1u32..=64) {
        prop_assert_eq!(bits::exts(v, w as u64).unwrap(), oracles::exts(v, w));
    }

    #[test]
    fn extz_matches_oracle(v in any::<u64>(), w in 1u32..=64) {
        prop_assert_eq!(bits::extz(v, w as u64).unwrap(), oracles::extz(v, w));
    }

    #[test]
    fn exts_properties(v in any::<u64>(), w in 1u32..=64) {
        let x = bits::exts(v, w as u64).unwrap();
        // low bits preserved, idempotent, and agrees with extz on non-negative values
        prop_assert_eq!(x & bits::low_mask(w), v & bits::low_mask(w));
        prop_assert_eq!(bits::exts(x, w as u64).unwrap(), x);
        if (v >> (w - 1)) & 1 == 0 {
            prop_assert_eq!(x, bits::extz(v, w as u64).unwrap());
        }
    }

    #[test]
    fn bit_slice_matches_oracle(v in any::<u64>(), w in 1u32..=64, a in 0u32..64, b in 0u32..64) {
        let (hi, lo) = (a.min(b) % w, a.max(b) % w);
        let (hi, lo) = (hi.min(lo), hi.max(lo));
        prop_assert_eq!(
            bits::bit_slice(v, hi as u64, lo as u64, w as u64).unwrap(),
            oracles::bit_slice(v, hi, lo, w)
        );
    }

    #[test]
    fn slice_insert_matches_oracle(
        v in any::<u64>(), f in any::<u64>(), a in 0u32..64, b in 0u32..64
    ) {
        let (hi, lo) = (a.min(b), a.max(b));
        prop_assert_eq!(
            bits::slice_insert(v, hi as u64, lo as u64, 64, f).unwrap(),
            oracles::slice_insert(v, hi, lo, 64, f)
        );
        // inserting then extracting returns the field
        let inserted = bits::slice_insert(v, hi as u64, lo as u64, 64, f).unwrap();
        prop_assert_eq!(
            bits::bit_slice(inserted, hi as u64, lo as u64, 64).unwrap(),
            f & bits::low_mask(lo - hi + 1)
        );
    }

    #[test]
    fn concat_matches_oracle(l in any::<u64>(), r in any::<u64>(), lw in 1u32..=63, rw in 1u32..=63) {
        prop_assume!(lw + rw <= 64);
        prop_assert_eq!(bits::concat(l, lw, r, rw), oracles::concat(l, lw, r, rw));
    }

    #[test]
    fn rotl_and_mask_match_oracles(v in any::<u64>(), n in any::<u64>(), s in 0u32..64, t in 0u32..64) {
        prop_assert_eq!(bits::rotl(v, n), oracles::rotl(v, n));
        prop_assert_eq!(bits::mask(s as u64, t as u64).unwrap(), oracles::mask(s, t));
    }

    #[test]
    fn memory_round_trips_big_endian(ea in any::<u64>(), v in any::<u64>(), k in 0usize..4) {
        let n = [1u64, 2, 4, 8][k];
        let mut state = MachineState::new();
        state.mem_write(ea, n, v).unwrap();
        prop_assert_eq!(state.mem_read(ea, n).unwrap(), v & bits::low_mask(8 * n as u32));
        for (i, byte) in oracles::be_bytes(v, n as u32).into_iter().enumerate() {
            prop_assert_eq!(state.mem_read(ea.wrapping_add(i as u64), 1).unwrap(), byte as u64);
        }
        // untouched neighbours still read as zero
        prop_assert_eq!(state.mem_read(ea.wrapping_add(n), 1).unwrap(), 0);
    }

    #[test]
    fn gpr_round_trips(i in 0u64..32, v in any::<u64>()) {
        let mut state = MachineState::new();
        state.gpr_write(i, v);
        prop_assert_eq!(state.gpr_read(i), v);
        prop_assert_eq!(state.gpr_read(i + 32), v);
    }

    /// Tokens of a line depend only on that line: tokenizing a block of
    /// assignments gives each line's tokens, in order, on that line.
    #[test]
    fn lexing_is_line_local(seeds in prop::collection::vec(any::<u64>(), 1..8)) {
        let lines: Vec<String> = seeds
            .iter()
            .map(|&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                format!("{} <- {}", gen::identifier(&mut rng), print_expr(&gen::expr(&mut rng, 3)))
            })
            .collect();
        let whole = tokenize(&(lines.join("\n") + "\n")).unwrap();
        let mut expected = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            for t in tokenize(&format!("{line}\n")).unwrap() {
                if matches!(t.kind, TokenKind::Eof) || t.kind.is_synthetic() {
                    continue;
                }
                expected.push((t.kind, t.lexeme.clone(), i as u32 + 1, t.span.column));
            }
        }
        let got: Vec<_> = whole
            .iter()
            .filter(|t| !t.kind.is_synthetic())
            .map(|t| (t.kind, t.lexeme.clone(), t.span.line, t.span.column))
            .collect();
        prop_assert_eq!(got, expected);
    }

    /// EA = (RA|0) + EXTS(D) for every register, register value and displacement.
    #[test]
    fn listing_one_effective_address(ra in 0u64..32, d in 0u64..0x10000, g in any::<u64>()) {
        let def = listing();
        let mut state = MachineState::new();
        state.gpr_write(ra, g);
        let binding = FieldBinding::new(&def.def, [("RS", 0), ("RA", ra), ("D", d)]).unwrap();
        let exec = rtl2c_core::interpreter::Interpreter::default()
            .execute(&def, &state, &binding)
            .unwrap();
        let base = if ra == 0 { 0 } else { g };
        prop_assert_eq!(exec.locals["EA"], base.wrapping_add(oracles::exts(d, 16)));
        // EA is a local: architected state is untouched
        prop_assert_eq!(exec_instruction(&def, &state, &binding).unwrap(), state);
    }
}

fn listing() -> rtl2c_core::semantics::AnnotatedDef {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/stw_ea.rtl"))
        .unwrap();
    rtl2c_core::compile_source("stw_ea.rtl", &src).unwrap().remove(0)
}
