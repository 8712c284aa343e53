//! Producers of listing prefixes.
//!
//! Closed-form enumerators (`even`, `nminus:k`, `asc:…`) emit one value per
//! call and never exhaust a budget. Halting enumerators dovetail a
//! [`HaltingModel`]: in round `r`, codes `1..=r` each receive one simulation
//! step in ascending order, and a code is emitted in the round where its
//! machine halts. A code that halts on its `d`-th step is therefore emitted
//! in round `code + d - 1`; ties inside a round go to the smaller code.
//!
//! Spec grammar:
//!
//! ```text
//! even | nminus:<nat> | asc:<nat>(,<nat>)* | halt:<model-name>
//! ```

use std::collections::VecDeque;
use std::sync::Arc;

use crate::prefix::PrefixListing;
use crate::{Error, Result};

/// Result of asking an enumerator for its next value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emission {
    Value(u64),
    /// No further value within the given budget (or at all, for finite
    /// enumerators).
    Exhausted(u64),
}

pub trait Enumerator {
    /// The next value, running at most up to `budget` scheduling rounds in
    /// total. Closed-form enumerators ignore the budget.
    fn next_within(&mut self, budget: u64) -> Emission;

    /// The spec string this enumerator was built from.
    fn spec(&self) -> String;
}

/// `h(i) = 2i`.
#[derive(Debug, Clone, Default)]
pub struct Even {
    i: u64,
}

impl Enumerator for Even {
    fn next_within(&mut self, _budget: u64) -> Emission {
        self.i += 1;
        Emission::Value(2 * self.i)
    }

    fn spec(&self) -> String {
        "even".into()
    }
}

/// The naturals without `k`, ascending.
#[derive(Debug, Clone)]
pub struct NMinus {
    k: u64,
    i: u64,
}

impl NMinus {
    pub fn new(k: u64) -> Self {
        Self { k, i: 0 }
    }
}

impl Enumerator for NMinus {
    fn next_within(&mut self, _budget: u64) -> Emission {
        self.i += 1;
        Emission::Value(if self.i < self.k { self.i } else { self.i + 1 })
    }

    fn spec(&self) -> String {
        format!("nminus:{}", self.k)
    }
}

/// A finite set, ascending.
#[derive(Debug, Clone)]
pub struct Ascending {
    values: Vec<u64>,
    next: usize,
}

impl Ascending {
    pub fn new(mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        values.dedup();
        Self { values, next: 0 }
    }
}

impl Enumerator for Ascending {
    fn next_within(&mut self, budget: u64) -> Emission {
        match self.values.get(self.next) {
            Some(&v) => {
                self.next += 1;
                Emission::Value(v)
            }
            None => Emission::Exhausted(budget),
        }
    }

    fn spec(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
        format!("asc:{}", parts.join(","))
    }
}

/// One machine run under simulation.
pub trait Machine: Send {
    /// Executes one step. Returns `true` if halting is observed on this step.
    fn step(&mut self) -> bool;
}

/// Outcome of running a code for a bounded number of steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltTime {
    /// Halting observed on this step (1-based).
    Halts(u64),
    /// No halt observed within the step limit.
    Diverges,
}

/// A deterministic family of machines indexed by code `1, 2, …`.
pub trait HaltingModel: Send + Sync {
    fn name(&self) -> &str;

    fn boot(&self, code: u64) -> Box<dyn Machine>;

    /// Steps until halting is observed, if that happens within `limit`.
    fn steps(&self, code: u64, limit: u64) -> HaltTime {
        let mut machine = self.boot(code);
        for d in 1..=limit {
            if machine.step() {
                return HaltTime::Halts(d);
            }
        }
        HaltTime::Diverges
    }
}

/// Iterates the Collatz map from the code; halting is observed on the step
/// that finds the value 1. So `steps(1) = 1` and `steps(3) = 8`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Collatz;

struct CollatzRun {
    x: u64,
}

impl Machine for CollatzRun {
    fn step(&mut self) -> bool {
        if self.x == 1 {
            return true;
        }
        self.x = if self.x.is_multiple_of(2) {
            self.x / 2
        } else {
            // Trajectories that leave u64 are treated as running forever.
            self.x
                .checked_mul(3)
                .and_then(|y| y.checked_add(1))
                .unwrap_or(self.x)
        };
        false
    }
}

impl HaltingModel for Collatz {
    fn name(&self) -> &str {
        "collatz"
    }

    fn boot(&self, code: u64) -> Box<dyn Machine> {
        Box::new(CollatzRun { x: code })
    }
}

/// Instructions of the two-register machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instr {
    Inc(usize),
    /// If the register is zero jump to the target, else decrement and fall
    /// through.
    DecJz(usize, usize),
    Halt,
}

/// Two-register machines decoded from their code, run on input
/// `(R0, R1) = (code, 0)`.
///
/// Decoding: write `code` in bijective base 8 (digits `1..=8`), least
/// significant digit first. Digit `d` at index `k` becomes instruction `k`:
///
/// | digit | instruction            |
/// |-------|------------------------|
/// | 1     | `inc R0`               |
/// | 2     | `inc R1`               |
/// | 3     | `decjz R0 -> 0`        |
/// | 4     | `decjz R1 -> 0`        |
/// | 5     | `decjz R0 -> k + 2`    |
/// | 6     | `decjz R1 -> k + 2`    |
/// | 7     | `halt`                 |
/// | 8     | `decjz R0 -> k`        |
///
/// Each executed instruction is one step. Executing `halt`, or stepping with
/// the program counter past the last instruction, observes halting.
#[derive(Debug, Clone, Copy, Default)]
pub struct RegisterMachine;

impl RegisterMachine {
    pub fn decode(code: u64) -> Vec<Instr> {
        let mut program = Vec::new();
        let mut n = code;
        while n > 0 {
            let digit = (n - 1) % 8 + 1;
            n = (n - 1) / 8;
            let k = program.len();
            program.push(match digit {
                1 => Instr::Inc(0),
                2 => Instr::Inc(1),
                3 => Instr::DecJz(0, 0),
                4 => Instr::DecJz(1, 0),
                5 => Instr::DecJz(0, k + 2),
                6 => Instr::DecJz(1, k + 2),
                7 => Instr::Halt,
                _ => Instr::DecJz(0, k),
            });
        }
        program
    }
}

struct RegisterRun {
    program: Vec<Instr>,
    pc: usize,
    regs: [u64; 2],
}

impl Machine for RegisterRun {
    fn step(&mut self) -> bool {
        match self.program.get(self.pc) {
            None | Some(Instr::Halt) => true,
            Some(&Instr::Inc(r)) => {
                self.regs[r] = self.regs[r].saturating_add(1);
                self.pc += 1;
                false
            }
            Some(&Instr::DecJz(r, target)) => {
                if self.regs[r] == 0 {
                    self.pc = target;
                } else {
                    self.regs[r] -= 1;
                    self.pc += 1;
                }
                false
            }
        }
    }
}

impl HaltingModel for RegisterMachine {
    fn name(&self) -> &str {
        "rm"
    }

    fn boot(&self, code: u64) -> Box<dyn Machine> {
        Box::new(RegisterRun {
            program: Self::decode(code),
            pc: 0,
            regs: [code, 0],
        })
    }
}

pub fn builtin_models() -> Vec<Arc<dyn HaltingModel>> {
    vec![Arc::new(Collatz), Arc::new(RegisterMachine)]
}

pub fn model_by_name(name: &str) -> Option<Arc<dyn HaltingModel>> {
    builtin_models().into_iter().find(|m| m.name() == name)
}

/// Round-robin simulation of every code of a halting model.
pub struct Dovetail {
    model: Arc<dyn HaltingModel>,
    round_limit: u64,
    round: u64,
    /// Running machines, ascending by code.
    active: Vec<(u64, Box<dyn Machine>)>,
    ready: VecDeque<u64>,
}

impl Dovetail {
    pub fn rounds_run(&self) -> u64 {
        self.round
    }

    fn run_round(&mut self) {
        self.round += 1;
        let code = self.round;
        self.active.push((code, self.model.boot(code)));
        let ready = &mut self.ready;
        self.active.retain_mut(|(code, machine)| {
            let halted = machine.step();
            if halted {
                ready.push_back(*code);
            }
            !halted
        });
    }
}

impl Enumerator for Dovetail {
    fn next_within(&mut self, budget: u64) -> Emission {
        let limit = budget.min(self.round_limit);
        loop {
            if let Some(code) = self.ready.pop_front() {
                return Emission::Value(code);
            }
            if self.round >= limit {
                return Emission::Exhausted(limit);
            }
            self.run_round();
        }
    }

    fn spec(&self) -> String {
        format!("halt:{}", self.model.name())
    }
}

/// Enumerates the halting codes of `model` in dovetail order, running at
/// most `budget` rounds.
pub fn dovetail_halting(model: Arc<dyn HaltingModel>, budget: u64) -> Dovetail {
    Dovetail {
        model,
        round_limit: budget,
        round: 0,
        active: Vec::new(),
        ready: VecDeque::new(),
    }
}

/// The first `n` values `e` emits within `budget`, or fewer if the budget
/// runs out first.
pub fn take_prefix(e: &mut dyn Enumerator, n: usize, budget: u64) -> PrefixListing {
    let mut values = Vec::with_capacity(n.min(1 << 16));
    while values.len() < n {
        match e.next_within(budget) {
            Emission::Value(v) => values.push(v),
            Emission::Exhausted(_) => break,
        }
    }
    PrefixListing::from_distinct(values)
}

fn spec_error(position: usize, expected: &str) -> Error {
    Error::SpecParse {
        position,
        expected: expected.into(),
    }
}

/// Parses a positive natural occupying all of `text`, which starts at byte
/// `offset` of the whole spec.
fn parse_nat(text: &str, offset: usize) -> Result<u64> {
    if let Some(bad) = text.find(|c: char| !c.is_ascii_digit()) {
        return Err(spec_error(offset + bad, "a digit"));
    }
    if text.is_empty() {
        return Err(spec_error(offset, "a natural number"));
    }
    match text.parse::<u64>() {
        Ok(0) => Err(spec_error(offset, "a natural number ≥ 1")),
        Ok(v) => Ok(v),
        Err(_) => Err(spec_error(offset, "a natural number that fits in 64 bits")),
    }
}

/// Parses an enumerator spec. Halting enumerators are unbounded here; pass a
/// budget to [`take_prefix`].
pub fn parse_spec(text: &str) -> Result<Box<dyn Enumerator>> {
    if text == "even" {
        return Ok(Box::new(Even::default()));
    }
    let Some(colon) = text.find(':') else {
        return Err(spec_error(
            0,
            "one of \"even\", \"nminus:\", \"asc:\", \"halt:\"",
        ));
    };
    let (head, rest) = (&text[..colon], &text[colon + 1..]);
    let offset = colon + 1;
    match head {
        "nminus" => Ok(Box::new(NMinus::new(parse_nat(rest, offset)?))),
        "asc" => {
            let mut values = Vec::new();
            let mut start = offset;
            for part in rest.split(',') {
                values.push(parse_nat(part, start)?);
                start += part.len() + 1;
            }
            Ok(Box::new(Ascending::new(values)))
        }
        "halt" => match model_by_name(rest) {
            Some(model) => Ok(Box::new(dovetail_halting(model, u64::MAX))),
            None => Err(spec_error(offset, "a model name (\"collatz\" or \"rm\")")),
        },
        _ => Err(spec_error(
            0,
            "one of \"even\", \"nminus:\", \"asc:\", \"halt:\"",
        )),
    }
}
