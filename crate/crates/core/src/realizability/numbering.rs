//! A bijective Gödel numbering between naturals and closed programs.
//!
//! Pairs are numbered by total bit length first, so the code of a pair needs
//! only logarithmically more bits than its components together. That keeps
//! codes linear in program size instead of doubling with nesting depth.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::rc::Rc;

use super::machine::{PrimOp, Program};

/// Bijective-binary length and remainder: `a = 2^len - 1 + rem`, `rem < 2^len`.
fn split(a: &BigUint) -> (u64, BigUint) {
    let succ = a + 1u32;
    let len = succ.bits() - 1;
    let rem = succ - (BigUint::one() << len);
    (len, rem)
}

fn join(len: u64, rem: BigUint) -> BigUint {
    (BigUint::one() << len) - 1u32 + rem
}

/// Number of pairs whose bit lengths sum to less than `total`.
fn level_base(total: u64) -> BigUint {
    if total == 0 {
        BigUint::zero()
    } else {
        (BigUint::from(total - 1) << total) + 1u32
    }
}

pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let (la, ra) = split(a);
    let (lb, rb) = split(b);
    let total = la + lb;
    level_base(total) + (BigUint::from(la) << total) + (ra << lb) + rb
}

pub fn unpair(n: &BigUint) -> (BigUint, BigUint) {
    let bits = n.bits();
    let mut total = bits.saturating_sub(64 - bits.leading_zeros() as u64 + 1);
    while level_base(total + 1) <= *n {
        total += 1;
    }
    while level_base(total) > *n {
        total -= 1;
    }
    let rem = n - level_base(total);
    let la = (&rem >> total).to_u64().expect("length fits in u64");
    let rest = rem & ((BigUint::one() << total) - 1u32);
    let lb = total - la;
    let ra = &rest >> lb;
    let rb = rest & ((BigUint::one() << lb) - 1u32);
    (join(la, ra), join(lb, rb))
}

const CONSTRUCTORS: u32 = 13;

fn op_tag(op: PrimOp) -> u32 {
    match op {
        PrimOp::Add => 7,
        PrimOp::Sub => 8,
        PrimOp::Mul => 9,
        PrimOp::Div => 10,
        PrimOp::Mod => 11,
        PrimOp::Run => 12,
    }
}

fn tag_op(tag: u32) -> PrimOp {
    match tag {
        7 => PrimOp::Add,
        8 => PrimOp::Sub,
        9 => PrimOp::Mul,
        10 => PrimOp::Div,
        11 => PrimOp::Mod,
        _ => PrimOp::Run,
    }
}

/// Code of a program whose free de Bruijn indices are all below `depth`.
pub fn encode_at(p: &Program, depth: usize) -> BigUint {
    let k = BigUint::from(depth);
    let body = |tag: u32, payload: BigUint| -> BigUint { &k + payload * CONSTRUCTORS + tag };
    match p {
        Program::Var(i) => {
            assert!(*i < depth, "program is not closed");
            BigUint::from(*i)
        }
        Program::Lit(n) => body(0, n.clone()),
        Program::Lam(b) => body(1, encode_at(b, depth + 1)),
        Program::App(f, a) => body(2, pair(&encode_at(f, depth), &encode_at(a, depth))),
        Program::Succ(a) => body(3, encode_at(a, depth)),
        Program::Pred(a) => body(4, encode_at(a, depth)),
        Program::IfZero(c, t, e) => body(
            5,
            pair(
                &encode_at(c, depth),
                &pair(&encode_at(t, depth), &encode_at(e, depth)),
            ),
        ),
        Program::Fix(a) => body(6, encode_at(a, depth)),
        Program::Prim(op, a, b) => body(op_tag(*op), pair(&encode_at(a, depth), &encode_at(b, depth))),
    }
}

pub fn decode_at(n: &BigUint, depth: usize) -> Program {
    let k = BigUint::from(depth);
    if *n < k {
        return Program::Var(n.to_usize().expect("index below depth"));
    }
    let m = n - k;
    let tag = (&m % CONSTRUCTORS).to_u32().expect("small remainder");
    let q = m / CONSTRUCTORS;
    let sub = |x: &BigUint, d: usize| Rc::new(decode_at(x, d));
    match tag {
        0 => Program::Lit(q),
        1 => Program::Lam(sub(&q, depth + 1)),
        2 => {
            let (a, b) = unpair(&q);
            Program::App(sub(&a, depth), sub(&b, depth))
        }
        3 => Program::Succ(sub(&q, depth)),
        4 => Program::Pred(sub(&q, depth)),
        5 => {
            let (c, rest) = unpair(&q);
            let (t, e) = unpair(&rest);
            Program::IfZero(sub(&c, depth), sub(&t, depth), sub(&e, depth))
        }
        6 => Program::Fix(sub(&q, depth)),
        t => {
            let (a, b) = unpair(&q);
            Program::Prim(tag_op(t), sub(&a, depth), sub(&b, depth))
        }
    }
}

pub fn encode(p: &Program) -> BigUint {
    encode_at(p, 0)
}

pub fn decode(n: &BigUint) -> Program {
    decode_at(n, 0)
}
