//! The same formulas unfolded into the forcing clauses of three toposes.

use topos_lens::cli::load::translate_formula;
use topos_lens::translate::{translate, Target, TranslationStyle};

fn main() {
    let cases = [
        (Target::Effective, "forall n:N. exists p:N. n < p /\\ Prime(p)"),
        (Target::Effective, "forall f:N^N. ~~(exists n:N. f(n) = 0) -> exists n:N. f(n) = 0"),
        (Target::Sheaf, "P \\/ ~P"),
        (Target::Sheaf, "forall b:R. ~~(b < 0 \\/ b = 0 \\/ b > 0)"),
        (Target::Zariski, "forall x:R. (~(x = 0) -> exists y:R. x*y = 1)"),
        (Target::Zariski, "forall d:R. d*d = 0 -> d = 0"),
    ];
    for (target, text) in cases {
        let f = translate_formula(text, target).unwrap();
        println!("[{target}] {text}");
        print!("{}", translate(&f, &TranslationStyle::new(target)).unwrap());
        println!();
    }
}
