//! Reference executor. Its behaviour defines what emitted code must do.

use std::collections::BTreeMap;

use crate::ast::{BinOp, Expr, ExprKind, Stmt, StmtKind, Target, TargetKind, UnOp};
use crate::bits::{self, Fault};
use crate::diagnostics::{Diagnostic, ErrorCode};
use crate::lexer::SourceSpan;
use crate::semantics::AnnotatedDef;

pub use crate::bits::{bit_slice, exts, extz};
pub use crate::machine::{mem_read, mem_write, FieldBinding, MachineState};

pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

/// Result of one execution: the architectural post-state plus the final
/// values of the definition's locals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub state: MachineState,
    pub locals: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct Interpreter {
    /// Maximum statement executions before `STEP_LIMIT_EXCEEDED`.
    pub step_limit: u64,
}

impl Default for Interpreter {
    fn default() -> Self {
        Interpreter {
            step_limit: DEFAULT_STEP_LIMIT,
        }
    }
}

enum Flow {
    Normal,
    Leave,
}

struct Frame<'a> {
    def: &'a AnnotatedDef,
    binding: &'a FieldBinding,
    state: MachineState,
    steps: u64,
    limit: u64,
}

type ExecResult<T> = Result<T, Diagnostic>;

fn at(span: &SourceSpan) -> impl Fn(Fault) -> Diagnostic + '_ {
    move |f| Diagnostic::error(f.code, span.clone(), f.message)
}

impl Interpreter {
    pub fn with_step_limit(step_limit: u64) -> Self {
        Interpreter { step_limit }
    }

    /// Run `def` against a copy of `state`. The input state is never modified.
    pub fn execute(
        &self,
        def: &AnnotatedDef,
        state: &MachineState,
        binding: &FieldBinding,
    ) -> ExecResult<Execution> {
        let mut start = state.clone();
        start.locals.clear();
        for local in def.symbols.locals() {
            start.locals.insert(local.name.clone(), 0);
        }
        let mut frame = Frame {
            def,
            binding,
            state: start,
            steps: 0,
            limit: self.step_limit,
        };
        frame.block(&def.def.body)?;
        let mut state = frame.state;
        let locals = std::mem::take(&mut state.locals);
        Ok(Execution { state, locals })
    }
}

/// Execute with the default step limit and return the post-state, locals discarded.
pub fn exec_instruction(
    def: &AnnotatedDef,
    state: &MachineState,
    binding: &FieldBinding,
) -> ExecResult<MachineState> {
    Interpreter::default()
        .execute(def, state, binding)
        .map(|e| e.state)
}

/// Evaluate one analyzed expression against `state`, whose `locals` supply
/// local variable values.
pub fn eval_expr(
    def: &AnnotatedDef,
    expr: &Expr,
    state: &MachineState,
    binding: &FieldBinding,
) -> ExecResult<u64> {
    let frame = Frame {
        def,
        binding,
        state: state.clone(),
        steps: 0,
        limit: DEFAULT_STEP_LIMIT,
    };
    frame.eval(expr)
}

impl Frame<'_> {
    fn tick(&mut self, span: &SourceSpan) -> ExecResult<()> {
        self.steps += 1;
        if self.steps > self.limit {
            return Err(Diagnostic::error(
                ErrorCode::StepLimitExceeded,
                span.clone(),
                format!("step limit of {} statement executions exceeded", self.limit),
            ));
        }
        Ok(())
    }

    fn block(&mut self, block: &[Stmt]) -> ExecResult<Flow> {
        for stmt in block {
            if let Flow::Leave = self.stmt(stmt)? {
                return Ok(Flow::Leave);
            }
        }
        Ok(Flow::Normal)
    }

    fn stmt(&mut self, stmt: &Stmt) -> ExecResult<Flow> {
        self.tick(&stmt.span)?;
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                let v = self.eval(value)?;
                self.assign(target, v)?;
                Ok(Flow::Normal)
            }
            StmtKind::If {
                cond,
                then_block,
                else_block,
            } => {
                if self.eval(cond)? != 0 {
                    self.block(then_block)
                } else {
                    self.block(else_block)
                }
            }
            StmtKind::Switch {
                scrutinee,
                cases,
                default,
            } => {
                let v = self.eval(scrutinee)?;
                match cases.iter().find(|c| c.value.value == v) {
                    Some(case) => self.block(&case.body),
                    None => self.block(default),
                }
            }
            StmtKind::DoWhile { cond, body } => {
                while self.eval(cond)? != 0 {
                    if let Flow::Leave = self.block(body)? {
                        break;
                    }
                }
                Ok(Flow::Normal)
            }
            StmtKind::Leave => Ok(Flow::Leave),
        }
    }

    fn assign(&mut self, target: &Target, value: u64) -> ExecResult<()> {
        let ty = target.ty.expect("analyzed target");
        match &target.kind {
            TargetKind::Var(name) => {
                let masked = value & bits::low_mask(ty.width as u32);
                self.state.locals.insert(name.clone(), masked);
            }
            TargetKind::RegWrite(field) => {
                let index = self.field(field);
                self.state.gpr_write(index, value);
            }
            TargetKind::Slice { name, hi, lo } => {
                let hi = self.eval(hi)?;
                let lo = self.eval(lo)?;
                let base_width = ty.operand_width.unwrap_or(64) as u64;
                let old = self.state.locals.get(name).copied().unwrap_or(0);
                let new = bits::slice_insert(old, hi, lo, base_width, value)
                    .map_err(at(&target.span))?;
                self.state.locals.insert(name.clone(), new);
            }
            TargetKind::Call { callee, args } => {
                let values = args
                    .iter()
                    .map(|a| self.eval(a))
                    .collect::<ExecResult<Vec<_>>>()?;
                let builtin = self
                    .def
                    .symbols
                    .registry()
                    .get(callee)
                    .expect("analyzed builtin");
                builtin
                    .store(&mut self.state, &values, ty, value)
                    .map_err(at(&target.span))?;
            }
        }
        Ok(())
    }

    fn field(&self, name: &str) -> u64 {
        self.binding.get(name).expect("binding covers every field")
    }

    fn eval(&self, expr: &Expr) -> ExecResult<u64> {
        match &expr.kind {
            ExprKind::IntLit(lit) => Ok(lit.value),
            ExprKind::Var(name) => Ok(self.state.locals.get(name).copied().unwrap_or(0)),
            ExprKind::FieldRef(name) => Ok(self.field(name)),
            ExprKind::RegRead(name) => Ok(self.state.gpr_read(self.field(name))),
            ExprKind::ParenVar(_) => unreachable!("analysis rewrites ParenVar"),
            ExprKind::Call { callee, args } => {
                let values = args
                    .iter()
                    .map(|a| self.eval(a))
                    .collect::<ExecResult<Vec<_>>>()?;
                let builtin = self
                    .def
                    .symbols
                    .registry()
                    .get(callee)
                    .expect("analyzed builtin");
                builtin
                    .eval(&self.state, &values, expr.ty.expect("analyzed call"))
                    .map_err(at(&expr.span))
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let a = self.eval(lhs)?;
                let b = self.eval(rhs)?;
                binary(*op, a, lhs.width(), b, rhs.width()).map_err(at(&expr.span))
            }
            ExprKind::Unary { op, operand } => {
                let v = self.eval(operand)?;
                Ok(match op {
                    UnOp::Neg => v.wrapping_neg(),
                    UnOp::Not => bits::not(v, operand.width() as u32),
                })
            }
            ExprKind::BitSlice { base, hi, lo } => {
                let v = self.eval(base)?;
                let h = self.eval(hi)?;
                let l = self.eval(lo)?;
                bits::bit_slice(v, h, l, base.width() as u64).map_err(at(&expr.span))
            }
        }
    }
}

/// Binary operators on 64-bit carriers; arithmetic wraps, division is unsigned.
pub fn binary(op: BinOp, a: u64, a_width: u8, b: u64, b_width: u8) -> Result<u64, Fault> {
    let div_zero = || Fault::new(ErrorCode::DivByZero, "division by zero");
    Ok(match op {
        BinOp::Add => a.wrapping_add(b),
        BinOp::Sub => a.wrapping_sub(b),
        BinOp::Mul => a.wrapping_mul(b),
        BinOp::Div => a.checked_div(b).ok_or_else(div_zero)?,
        BinOp::Mod => a.checked_rem(b).ok_or_else(div_zero)?,
        BinOp::And => a & b,
        BinOp::Or => a | b,
        BinOp::Xor => a ^ b,
        BinOp::Concat => bits::concat(a, a_width as u32, b, b_width as u32),
        BinOp::Eq => (a == b) as u64,
        BinOp::Neq => (a != b) as u64,
        BinOp::Lt => (a < b) as u64,
        BinOp::Gt => (a > b) as u64,
        BinOp::Le => (a <= b) as u64,
        BinOp::Ge => (a >= b) as u64,
    })
}
