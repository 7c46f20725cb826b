//! Programs and their evaluation.
//!
//! Programs are untyped call-by-value lambda terms over naturals, with
//! de Bruijn indices. Evaluation runs an environment machine with an explicit
//! continuation stack; every machine transition costs one step of budget.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use super::numbering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimOp {
    Add,
    /// Truncated subtraction.
    Sub,
    Mul,
    /// Division, with `n / 0 = 0`.
    Div,
    /// Remainder, with `n mod 0 = n`.
    Mod,
    /// `Run(e, n)` is Kleene application of the program coded by `e` to `n`.
    Run,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Program {
    Var(usize),
    Lit(BigUint),
    Lam(Rc<Program>),
    App(Rc<Program>, Rc<Program>),
    Succ(Rc<Program>),
    Pred(Rc<Program>),
    /// `IfZero(c, t, e)` evaluates `t` when `c` is zero and `e` otherwise.
    IfZero(Rc<Program>, Rc<Program>, Rc<Program>),
    /// `Fix(f)` with `f` evaluating to `λself. body` unrolls to `body[self := Fix(f)]`.
    Fix(Rc<Program>),
    Prim(PrimOp, Rc<Program>, Rc<Program>),
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Var(i) => write!(f, "#{i}"),
            Program::Lit(n) => write!(f, "{n}"),
            Program::Lam(b) => write!(f, "(\\ {b})"),
            Program::App(a, b) => write!(f, "({a} {b})"),
            Program::Succ(a) => write!(f, "succ({a})"),
            Program::Pred(a) => write!(f, "pred({a})"),
            Program::IfZero(c, t, e) => write!(f, "ifz({c}, {t}, {e})"),
            Program::Fix(a) => write!(f, "fix({a})"),
            Program::Prim(op, a, b) => write!(f, "{op:?}({a}, {b})"),
        }
    }
}

/// A Gödel number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code(pub BigUint);

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl Code {
    pub fn of(p: &Program) -> Code {
        Code(numbering::encode(p))
    }

    pub fn program(&self) -> Program {
        numbering::decode(&self.0)
    }
}

impl From<u64> for Code {
    fn from(n: u64) -> Self {
        Code(BigUint::from(n))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Step limit for one Kleene application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget(pub u64);

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ApplyError {
    #[error("no result within {0} steps")]
    BudgetExhausted(u64),
    /// The program tried to apply a number or do arithmetic on a function.
    #[error("evaluation is stuck: {0}")]
    Stuck(String),
}

impl ApplyError {
    pub fn is_budget(&self) -> bool {
        matches!(self, ApplyError::BudgetExhausted(_))
    }
}

#[derive(Clone, Debug)]
enum Value {
    Nat(BigUint),
    Closure(Rc<Program>, Env),
}

#[derive(Clone, Debug)]
enum Slot {
    Val(Value),
    /// The recursive binding introduced by `fix`; looking it up re-enters the body.
    Rec(Rc<Program>, Env),
}

type Env = Option<Rc<EnvNode>>;

#[derive(Debug)]
struct EnvNode {
    slot: Slot,
    next: Env,
}

fn push(env: &Env, slot: Slot) -> Env {
    Some(Rc::new(EnvNode {
        slot,
        next: env.clone(),
    }))
}

fn lookup(env: &Env, mut i: usize) -> Option<&Slot> {
    let mut node = env.as_ref()?;
    while i > 0 {
        node = node.next.as_ref()?;
        i -= 1;
    }
    Some(&node.slot)
}

enum Frame {
    Arg(Rc<Program>, Env),
    Call(Value),
    ApplyTo(Value),
    Succ,
    Pred,
    Branch(Rc<Program>, Rc<Program>, Env),
    Fix,
    PrimRight(PrimOp, Rc<Program>, Env),
    PrimDone(PrimOp, BigUint),
}

enum Control {
    Eval(Rc<Program>, Env),
    Return(Value),
}

/// Runs programs, caching decoded codes met by `Run`.
#[derive(Default)]
pub struct Machine {
    decoded: HashMap<BigUint, Rc<Program>>,
}

fn nat(v: Value, what: &str) -> Result<BigUint, ApplyError> {
    match v {
        Value::Nat(n) => Ok(n),
        Value::Closure(..) => Err(ApplyError::Stuck(format!("{what} expects a number, got a function"))),
    }
}

impl Machine {
    pub fn new() -> Self {
        Machine::default()
    }

    fn decode(&mut self, code: &BigUint) -> Rc<Program> {
        if let Some(p) = self.decoded.get(code) {
            return p.clone();
        }
        let p = Rc::new(numbering::decode(code));
        if self.decoded.len() < 4096 {
            self.decoded.insert(code.clone(), p.clone());
        }
        p
    }

    /// Kleene application `e·n`. A function result is returned as its code.
    pub fn apply(&mut self, e: &Code, n: &BigUint, budget: Budget) -> Result<BigUint, ApplyError> {
        let prog = self.decode(&e.0);
        self.run_applied(prog, Value::Nat(n.clone()), budget)
    }

    /// Evaluates a closed program to a number (or the code of a function).
    pub fn eval(&mut self, p: &Program, budget: Budget) -> Result<BigUint, ApplyError> {
        let v = self.run(Control::Eval(Rc::new(p.clone()), None), Vec::new(), budget)?;
        Ok(reify(&v))
    }

    fn run_applied(&mut self, f: Rc<Program>, arg: Value, budget: Budget) -> Result<BigUint, ApplyError> {
        let v = self.run(Control::Eval(f, None), vec![Frame::ApplyTo(arg)], budget)?;
        Ok(reify(&v))
    }

    fn run(&mut self, mut control: Control, mut stack: Vec<Frame>, budget: Budget) -> Result<Value, ApplyError> {
        let mut steps = 0u64;
        loop {
            steps += 1;
            if steps > budget.0 {
                return Err(ApplyError::BudgetExhausted(budget.0));
            }
            control = match control {
                Control::Eval(p, env) => match &*p {
                    Program::Var(i) => match lookup(&env, *i) {
                        Some(Slot::Val(v)) => Control::Return(v.clone()),
                        Some(Slot::Rec(body, renv)) => {
                            let again = push(renv, Slot::Rec(body.clone(), renv.clone()));
                            Control::Eval(body.clone(), again)
                        }
                        None => return Err(ApplyError::Stuck(format!("unbound variable #{i}"))),
                    },
                    Program::Lit(n) => Control::Return(Value::Nat(n.clone())),
                    Program::Lam(b) => Control::Return(Value::Closure(b.clone(), env)),
                    Program::App(f, a) => {
                        stack.push(Frame::Arg(a.clone(), env.clone()));
                        Control::Eval(f.clone(), env)
                    }
                    Program::Succ(a) => {
                        stack.push(Frame::Succ);
                        Control::Eval(a.clone(), env)
                    }
                    Program::Pred(a) => {
                        stack.push(Frame::Pred);
                        Control::Eval(a.clone(), env)
                    }
                    Program::IfZero(c, t, e) => {
                        stack.push(Frame::Branch(t.clone(), e.clone(), env.clone()));
                        Control::Eval(c.clone(), env)
                    }
                    Program::Fix(a) => {
                        stack.push(Frame::Fix);
                        Control::Eval(a.clone(), env)
                    }
                    Program::Prim(op, a, b) => {
                        stack.push(Frame::PrimRight(*op, b.clone(), env.clone()));
                        Control::Eval(a.clone(), env)
                    }
                },
                Control::Return(v) => match stack.pop() {
                    None => return Ok(v),
                    Some(Frame::Arg(a, env)) => {
                        stack.push(Frame::Call(v));
                        Control::Eval(a, env)
                    }
                    Some(Frame::Call(f)) => self.enter(f, v)?,
                    Some(Frame::ApplyTo(arg)) => self.enter(v, arg)?,
                    Some(Frame::Succ) => Control::Return(Value::Nat(nat(v, "succ")? + 1u32)),
                    Some(Frame::Pred) => {
                        let n = nat(v, "pred")?;
                        Control::Return(Value::Nat(if n.is_zero() { n } else { n - 1u32 }))
                    }
                    Some(Frame::Branch(t, e, env)) => {
                        if nat(v, "ifz")?.is_zero() {
                            Control::Eval(t, env)
                        } else {
                            Control::Eval(e, env)
                        }
                    }
                    Some(Frame::Fix) => match v {
                        Value::Closure(body, env) => {
                            let env = push(&env, Slot::Rec(body.clone(), env.clone()));
                            Control::Eval(body, env)
                        }
                        Value::Nat(_) => return Err(ApplyError::Stuck("fix expects a function".into())),
                    },
                    Some(Frame::PrimRight(op, b, env)) => {
                        let left = nat(v, "arithmetic")?;
                        stack.push(Frame::PrimDone(op, left));
                        Control::Eval(b, env)
                    }
                    Some(Frame::PrimDone(op, left)) => {
                        let right = nat(v, "arithmetic")?;
                        match op {
                            PrimOp::Run => {
                                let prog = self.decode(&left);
                                stack.push(Frame::ApplyTo(Value::Nat(right)));
                                Control::Eval(prog, None)
                            }
                            _ => Control::Return(Value::Nat(arith(op, left, right))),
                        }
                    }
                },
            };
        }
    }

    fn enter(&mut self, f: Value, arg: Value) -> Result<Control, ApplyError> {
        match f {
            Value::Closure(body, env) => Ok(Control::Eval(body, push(&env, Slot::Val(arg)))),
            Value::Nat(n) => Err(ApplyError::Stuck(format!("cannot apply the number {n}"))),
        }
    }
}

fn arith(op: PrimOp, a: BigUint, b: BigUint) -> BigUint {
    match op {
        PrimOp::Add => a + b,
        PrimOp::Sub => {
            if a > b {
                a - b
            } else {
                BigUint::zero()
            }
        }
        PrimOp::Mul => a * b,
        PrimOp::Div => {
            if b.is_zero() {
                b
            } else {
                a / b
            }
        }
        PrimOp::Mod => {
            if b.is_zero() {
                a
            } else {
                a.mod_floor(&b)
            }
        }
        PrimOp::Run => unreachable!("handled by the machine"),
    }
}

/// Numbers stay numbers; closures are read back to closed programs and coded.
fn reify(v: &Value) -> BigUint {
    match v {
        Value::Nat(n) => n.clone(),
        Value::Closure(..) => numbering::encode(&readback(v)),
    }
}

fn readback(v: &Value) -> Program {
    match v {
        Value::Nat(n) => Program::Lit(n.clone()),
        Value::Closure(body, env) => Program::Lam(Rc::new(close(body, env, 1))),
    }
}

/// Replaces variables at or above `depth` by the values they denote.
fn close(p: &Program, env: &Env, depth: usize) -> Program {
    let c = |q: &Rc<Program>, d: usize| Rc::new(close(q, env, d));
    match p {
        Program::Var(i) if *i < depth => Program::Var(*i),
        Program::Var(i) => match lookup(env, i - depth) {
            Some(Slot::Val(v)) => readback(v),
            Some(Slot::Rec(body, renv)) => Program::Fix(Rc::new(Program::Lam(Rc::new(close(body, renv, 1))))),
            None => Program::Var(*i),
        },
        Program::Lit(n) => Program::Lit(n.clone()),
        Program::Lam(b) => Program::Lam(c(b, depth + 1)),
        Program::App(a, b) => Program::App(c(a, depth), c(b, depth)),
        Program::Succ(a) => Program::Succ(c(a, depth)),
        Program::Pred(a) => Program::Pred(c(a, depth)),
        Program::IfZero(x, t, e) => Program::IfZero(c(x, depth), c(t, depth), c(e, depth)),
        Program::Fix(a) => Program::Fix(c(a, depth)),
        Program::Prim(op, a, b) => Program::Prim(*op, c(a, depth), c(b, depth)),
    }
}

/// `e·n` with a fresh machine.
pub fn apply(e: &Code, n: u64, budget: Budget) -> Result<BigUint, ApplyError> {
    Machine::new().apply(e, &BigUint::from(n), budget)
}

/// Builds programs with named binders, converted to de Bruijn indices.
pub mod build {
    use super::*;

    #[derive(Clone, Debug)]
    pub enum Named {
        V(&'static str),
        N(u64),
        Lam(&'static str, Box<Named>),
        App(Box<Named>, Box<Named>),
        Succ(Box<Named>),
        Pred(Box<Named>),
        Ifz(Box<Named>, Box<Named>, Box<Named>),
        /// `Fix(self, body)` binds `self` recursively in `body`.
        Fix(&'static str, Box<Named>),
        Prim(PrimOp, Box<Named>, Box<Named>),
    }

    pub fn v(x: &'static str) -> Named {
        Named::V(x)
    }
    pub fn n(k: u64) -> Named {
        Named::N(k)
    }
    pub fn lam(x: &'static str, b: Named) -> Named {
        Named::Lam(x, Box::new(b))
    }
    pub fn app(f: Named, a: Named) -> Named {
        Named::App(Box::new(f), Box::new(a))
    }
    pub fn app2(f: Named, a: Named, b: Named) -> Named {
        app(app(f, a), b)
    }
    pub fn succ(a: Named) -> Named {
        Named::Succ(Box::new(a))
    }
    pub fn pred(a: Named) -> Named {
        Named::Pred(Box::new(a))
    }
    pub fn ifz(c: Named, t: Named, e: Named) -> Named {
        Named::Ifz(Box::new(c), Box::new(t), Box::new(e))
    }
    pub fn fix(x: &'static str, b: Named) -> Named {
        Named::Fix(x, Box::new(b))
    }
    pub fn prim(op: PrimOp, a: Named, b: Named) -> Named {
        Named::Prim(op, Box::new(a), Box::new(b))
    }

    pub fn compile(t: &Named) -> Program {
        go(t, &mut Vec::new())
    }

    fn go(t: &Named, scope: &mut Vec<&'static str>) -> Program {
        let sub = |t: &Named, scope: &mut Vec<&'static str>| Rc::new(go(t, scope));
        match t {
            Named::V(x) => {
                let pos = scope.iter().rev().position(|y| y == x);
                Program::Var(pos.unwrap_or_else(|| panic!("unbound name {x}")))
            }
            Named::N(k) => Program::Lit(BigUint::from(*k)),
            Named::Lam(x, b) => {
                scope.push(x);
                let body = sub(b, scope);
                scope.pop();
                Program::Lam(body)
            }
            Named::Fix(x, b) => {
                scope.push(x);
                let body = sub(b, scope);
                scope.pop();
                Program::Fix(Rc::new(Program::Lam(body)))
            }
            Named::App(a, b) => Program::App(sub(a, scope), sub(b, scope)),
            Named::Succ(a) => Program::Succ(sub(a, scope)),
            Named::Pred(a) => Program::Pred(sub(a, scope)),
            Named::Ifz(c, x, e) => Program::IfZero(sub(c, scope), sub(x, scope), sub(e, scope)),
            Named::Prim(op, a, b) => Program::Prim(*op, sub(a, scope), sub(b, scope)),
        }
    }
}
