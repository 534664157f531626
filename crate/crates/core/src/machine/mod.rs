//! A register machine for Kleene's T-predicate.
//!
//! Three instructions act on registers holding natural numbers:
//!
//! * `INC r` adds one to register `r`;
//! * `DECJZ r l` jumps to instruction `l` when register `r` is zero and
//!   otherwise decrements it and falls through;
//! * `HALT` stops.
//!
//! The input is placed in register 0 with every other register zero and the
//! output is register 0 of the halting configuration. Programs must end in
//! `HALT`, so a run stops only on a `HALT` instruction.
//!
//! Codes: `INC r = j(0, r)`, `DECJZ r l = j(1, j(r, l))`, `HALT = j(2, 0)`;
//! a program is the sequence code of its instruction codes, a configuration
//! is `j(pc, ⟨registers⟩)` with trailing zero registers dropped, and a trace
//! is the sequence code of its configurations.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::coding::{self, decode_seq, pair_u64, try_encode_seq};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("invalid program code: {0}")]
    InvalidCode(String),
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("code of {0} is too large to build")]
    TooLarge(String),
    #[error("register {0} overflowed")]
    Overflow(usize),
    #[error("input {0} does not fit in a register")]
    InputTooLarge(BigUint),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instruction {
    Inc(usize),
    DecJz(usize, usize),
    Halt,
}

impl Instruction {
    /// The instruction's number, if it fits in 64 bits.
    pub fn code(&self) -> Option<u64> {
        match *self {
            Instruction::Inc(r) => pair_u64(0, r as u64),
            Instruction::DecJz(r, l) => pair_u64(1, pair_u64(r as u64, l as u64)?),
            Instruction::Halt => pair_u64(2, 0),
        }
    }

    pub fn from_code(n: u64) -> Option<Instruction> {
        let (tag, arg) = unpair_u64(n);
        match tag {
            0 => Some(Instruction::Inc(arg.try_into().ok()?)),
            1 => {
                let (r, l) = unpair_u64(arg);
                Some(Instruction::DecJz(r.try_into().ok()?, l.try_into().ok()?))
            }
            2 if arg == 0 => Some(Instruction::Halt),
            _ => None,
        }
    }
}

impl coding::Godel for Instruction {
    /// # Panics
    ///
    /// If the register or jump target is so large that the code needs more
    /// than 64 bits.
    fn godel_number(&self) -> BigUint {
        BigUint::from(self.code().expect("instruction code fits in 64 bits"))
    }
}

fn unpair_u64(n: u64) -> (u64, u64) {
    match n.checked_add(1) {
        Some(m) => {
            let x = m.trailing_zeros() as u64;
            (x, (m >> x) >> 1)
        }
        None => (0, n >> 1),
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Inc(r) => write!(f, "INC {r}"),
            Instruction::DecJz(r, l) => write!(f, "DECJZ {r} {l}"),
            Instruction::Halt => f.write_str("HALT"),
        }
    }
}

/// A validated instruction list: non-empty, jump targets in range, last
/// instruction `HALT`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Program {
    instructions: Vec<Instruction>,
    registers: usize,
}

impl Program {
    pub fn new(instructions: Vec<Instruction>) -> Result<Program, MachineError> {
        let bad = |m: String| Err(MachineError::InvalidProgram(m));
        let len = instructions.len();
        if instructions.last() != Some(&Instruction::Halt) {
            return bad("the last instruction must be HALT".into());
        }
        let mut registers = 1;
        for (i, ins) in instructions.iter().enumerate() {
            match *ins {
                Instruction::DecJz(_, l) if l >= len => {
                    return bad(format!("instruction {i} jumps to {l}, past the end"))
                }
                Instruction::Inc(r) | Instruction::DecJz(r, _) => registers = registers.max(r + 1),
                Instruction::Halt => {}
            }
        }
        Ok(Program {
            instructions,
            registers,
        })
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of registers the program mentions, at least 1.
    pub fn registers(&self) -> usize {
        self.registers
    }

    /// One step from `c`, or `None` when `c` sits on `HALT`.
    pub fn step(&self, c: &Configuration) -> Result<Option<Configuration>, MachineError> {
        let mut regs = c.registers.clone();
        let get = |regs: &Vec<u64>, r: usize| regs.get(r).copied().unwrap_or(0);
        let pc = match self.instructions.get(c.pc) {
            None | Some(Instruction::Halt) => return Ok(None),
            Some(&Instruction::Inc(r)) => {
                let v = get(&regs, r)
                    .checked_add(1)
                    .ok_or(MachineError::Overflow(r))?;
                if regs.len() <= r {
                    regs.resize(r + 1, 0);
                }
                regs[r] = v;
                c.pc + 1
            }
            Some(&Instruction::DecJz(r, l)) => match get(&regs, r) {
                0 => l,
                v => {
                    regs[r] = v - 1;
                    c.pc + 1
                }
            },
        };
        Ok(Some(Configuration::new(pc, regs)))
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

impl FromStr for Program {
    type Err = MachineError;

    /// One instruction per line; `#` starts a comment.
    fn from_str(text: &str) -> Result<Program, MachineError> {
        let mut out = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| MachineError::Syntax {
                line: i + 1,
                message,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            let num = |w: &str| {
                w.parse::<usize>()
                    .map_err(|_| err(format!("expected a number, found `{w}`")))
            };
            let ins = match words.as_slice() {
                [op, r] if op.eq_ignore_ascii_case("INC") => Instruction::Inc(num(r)?),
                [op, r, l] if op.eq_ignore_ascii_case("DECJZ") => {
                    Instruction::DecJz(num(r)?, num(l)?)
                }
                [op] if op.eq_ignore_ascii_case("HALT") => Instruction::Halt,
                _ => return Err(err(format!("cannot read `{line}`"))),
            };
            out.push(ins);
        }
        Program::new(out)
    }
}

/// Program counter and registers, with trailing zero registers dropped so
/// that equal states have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub pc: usize,
    pub registers: Vec<u64>,
}

impl Configuration {
    pub fn new(pc: usize, mut registers: Vec<u64>) -> Self {
        while registers.last() == Some(&0) {
            registers.pop();
        }
        Configuration { pc, registers }
    }

    pub fn initial(x: u64) -> Self {
        Configuration::new(0, vec![x])
    }

    pub fn register(&self, r: usize) -> u64 {
        self.registers.get(r).copied().unwrap_or(0)
    }

    /// `j(pc, ⟨registers⟩)`, if it fits in 64 bits.
    pub fn code(&self) -> Option<u64> {
        let regs = try_encode_seq(&self.registers)?.to_u64()?;
        pair_u64(self.pc as u64, regs)
    }

    pub fn from_code(n: u64) -> Option<Configuration> {
        let (pc, regs) = unpair_u64(n);
        let registers = decode_seq(&BigUint::from(regs))?;
        let c = Configuration::new(pc.try_into().ok()?, registers.clone());
        (c.registers == registers).then_some(c)
    }
}

/// The configurations of a run, initial one first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trace {
    pub configs: Vec<Configuration>,
}

impl Trace {
    pub fn output(&self) -> u64 {
        self.configs.last().map_or(0, |c| c.register(0))
    }

    pub fn steps(&self) -> usize {
        self.configs.len().saturating_sub(1)
    }

    /// The sequence code of the configuration codes, when it can be built.
    pub fn code(&self) -> Option<BigUint> {
        let codes = self
            .configs
            .iter()
            .map(Configuration::code)
            .collect::<Option<Vec<_>>>()?;
        try_encode_seq(&codes)
    }

    pub fn decode(u: &BigUint) -> Option<Trace> {
        let configs = decode_seq(u)?
            .into_iter()
            .map(Configuration::from_code)
            .collect::<Option<Vec<_>>>()?;
        (!configs.is_empty()).then_some(Trace { configs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Halted(Trace),
    OutOfFuel,
}

pub fn assemble(p: &Program) -> Result<BigUint, MachineError> {
    let codes = p
        .instructions
        .iter()
        .map(|i| {
            i.code()
                .ok_or_else(|| MachineError::TooLarge(i.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    try_encode_seq(&codes).ok_or_else(|| MachineError::TooLarge("program".into()))
}

pub fn disassemble(e: &BigUint) -> Result<Program, MachineError> {
    let codes = decode_seq(e)
        .ok_or_else(|| MachineError::InvalidCode(format!("{e} is not a sequence code")))?;
    let instructions = codes
        .iter()
        .map(|&c| {
            Instruction::from_code(c)
                .ok_or_else(|| MachineError::InvalidCode(format!("{c} is not an instruction")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Program::new(instructions).map_err(|e| MachineError::InvalidCode(e.to_string()))
}

fn input(x: &BigUint) -> Result<u64, MachineError> {
    x.to_u64()
        .ok_or_else(|| MachineError::InputTooLarge(x.clone()))
}

/// Run `p` on `x` for at most `fuel` steps, recording every configuration.
pub fn run_program(p: &Program, x: u64, fuel: u64) -> Result<Outcome, MachineError> {
    let mut configs = vec![Configuration::initial(x)];
    for _ in 0..=fuel {
        match p.step(configs.last().unwrap())? {
            None => return Ok(Outcome::Halted(Trace { configs })),
            Some(next) => configs.push(next),
        }
    }
    Ok(Outcome::OutOfFuel)
}

/// Run the program coded by `e` on `x` for at most `fuel` steps.
pub fn run(e: &BigUint, x: &BigUint, fuel: u64) -> Result<Outcome, MachineError> {
    run_program(&disassemble(e)?, input(x)?, fuel)
}

/// A halting run kept by its result only.
///
/// Trace codes of all but tiny runs are too large to write down; this is the
/// value a realizability check binds to the witness of `∃u T(e, x, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computation {
    pub program: BigUint,
    pub input: BigUint,
    pub output: u64,
    pub steps: u64,
}

impl Computation {
    /// The trace code, when it fits in memory.
    pub fn trace_code(&self) -> Option<BigUint> {
        match run(&self.program, &self.input, self.steps).ok()? {
            Outcome::Halted(t) => t.code(),
            Outcome::OutOfFuel => None,
        }
    }
}

/// Result of [`execute`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Execution {
    Halted(Arc<Computation>),
    OutOfFuel,
}

/// Run without recording the trace.
pub fn execute_program(
    p: &Program,
    code: &BigUint,
    x: &BigUint,
    fuel: u64,
) -> Result<Execution, MachineError> {
    let mut regs = vec![0u64; p.registers()];
    regs[0] = input(x)?;
    let mut pc = 0;
    let ins = p.instructions();
    for steps in 0..=fuel {
        match ins[pc] {
            Instruction::Halt => {
                return Ok(Execution::Halted(Arc::new(Computation {
                    program: code.clone(),
                    input: x.clone(),
                    output: regs[0],
                    steps,
                })))
            }
            Instruction::Inc(r) => {
                regs[r] = regs[r].checked_add(1).ok_or(MachineError::Overflow(r))?;
                pc += 1;
            }
            Instruction::DecJz(r, l) => {
                if regs[r] == 0 {
                    pc = l;
                } else {
                    regs[r] -= 1;
                    pc += 1;
                }
            }
        }
    }
    Ok(Execution::OutOfFuel)
}

pub fn execute(e: &BigUint, x: &BigUint, fuel: u64) -> Result<Execution, MachineError> {
    execute_program(&disassemble(e)?, e, x, fuel)
}

/// Whether `t` is a halting run of `p` on input `x`.
pub fn verify_trace(p: &Program, x: u64, t: &Trace) -> bool {
    let Some(first) = t.configs.first() else {
        return false;
    };
    if *first != Configuration::initial(x) {
        return false;
    }
    for w in t.configs.windows(2) {
        match p.step(&w[0]) {
            Ok(Some(next)) if next == w[1] => {}
            _ => return false,
        }
    }
    matches!(p.step(t.configs.last().unwrap()), Ok(None)) && t.configs.last().unwrap().pc < p.len()
}

/// Kleene's T-predicate: `u` codes a halting run of the program coded by
/// `e` on input `x`. Total; anything that is not such a code gives false.
pub fn t_predicate(e: &BigUint, x: &BigUint, u: &BigUint) -> bool {
    let (Ok(p), Some(x)) = (disassemble(e), x.to_u64()) else {
        return false;
    };
    Trace::decode(u).is_some_and(|t| verify_trace(&p, x, &t))
}

/// Register 0 of the last configuration coded by `u`, and 0 when `u` is not
/// a trace code.
pub fn u_extract(u: &BigUint) -> BigUint {
    BigUint::from(Trace::decode(u).map_or(0, |t| t.output()))
}
