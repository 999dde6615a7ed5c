//! Small automata used throughout the tests, the CLI examples and the demo.

use crate::automata::{Nra, Rsa};
use crate::format::{parse_nra, parse_rsa};

pub const EXISTS_REP_NRA: &str = "nra exists_rep {
  alphabet a;
  registers r;
  states q s t;
  init q;
  final t;
  q -a-> q;
  q -a-> s [| r := in];
  s -a-> s [neq r];
  s -a-> t [eq r];
  t -a-> t;
}
";

pub const EXISTS_REP_DRSA: &str = "rsa exists_rep {
  alphabet a;
  registers r;
  states q s;
  init q;
  final s;
  q -a-> q [notin r | r := r + in];
  q -a-> s [in r];
  s -a-> s;
}
";

pub const NO_REP_DRSA: &str = "rsa no_rep {
  alphabet a;
  registers r;
  states q;
  init q;
  final q;
  q -a-> q [notin r | r := r + in];
}
";

pub const NOT_ALL_REP_RSA: &str = "rsa not_all_rep {
  alphabet a;
  registers r;
  states q s;
  init q;
  final s;
  q -a-> q [| r := r + in];
  q -a-> s [notin r | r := in];
  s -a-> s [notin r];
}
";

/// Disequality on a register that may collect several candidates.
pub const DISEQ_NRA: &str = "nra diseq {
  alphabet a;
  registers r;
  states q s t;
  init q;
  final t;
  q -a-> q [| r := bot];
  q -a-> s [| r := in];
  s -a-> s [neq r];
  s -a-> t [eq r | r := bot];
  t -a-> t [| r := bot];
}
";

/// `u v w v z` with `|v| = 2`.
pub const CARTESIAN_NRA: &str = "nra repeat_pair {
  alphabet a;
  registers r1 r2 r3 r4;
  states q s t u f;
  init q;
  final f;
  q -a-> q [| r1 := bot, r2 := bot, r3 := bot, r4 := bot];
  q -a-> s [| r1 := in, r2 := bot, r3 := bot, r4 := bot];
  s -a-> t [| r1 := bot, r2 := r1, r3 := in, r4 := bot];
  t -a-> t [| r1 := bot, r4 := bot];
  t -a-> u [eq r2 | r1 := bot, r2 := bot, r3 := bot, r4 := r3];
  u -a-> f [eq r4 | r1 := bot, r2 := bot, r3 := bot, r4 := bot];
  f -a-> f [| r1 := bot, r2 := bot, r3 := bot, r4 := bot];
}
";

/// A guessed value that must be matched twice.
pub const COLLAPSE_NRA: &str = "nra collapse {
  alphabet a b;
  registers rq rs;
  states q s f;
  init q;
  final f;
  q -a-> q [| rq := in, rs := bot];
  q -a-> q [| rs := bot];
  q -b-> s [eq rq | rq := bot, rs := rq];
  s -b-> f [eq rs | rq := bot, rs := bot];
}
";

/// A repeat among the `a`s, then one `b`, then any `a`s.
pub const REP_THEN_B_NRA: &str = "nra rep_then_b {
  alphabet a b;
  registers r;
  states q s t u;
  init q;
  final u;
  q -a-> q;
  q -a-> s [| r := in];
  s -a-> s;
  s -a-> t [eq r];
  t -a-> t;
  t -b-> u;
  u -a-> u;
}
";

/// Not of the shape `a* b a*`, or a repeat among the `a`s after the `b`.
/// Its complement is `a* b` followed by pairwise distinct `a`s.
pub const NOT_B_DISTINCT_NRA: &str = "nra not_b_distinct {
  alphabet a b;
  registers r;
  states p0 p1 p2 m f;
  init p0;
  final p0 p2 f;
  p0 -a-> p0;
  p0 -b-> p1;
  p1 -a-> p1;
  p1 -b-> p2;
  p2 -a-> p2;
  p2 -b-> p2;
  p1 -a-> m [| r := in];
  m -a-> m;
  m -a-> f [eq r];
  f -a-> f;
}
";

fn nra(src: &str) -> Nra {
    parse_nra(src).expect("fixture parses")
}

fn rsa(src: &str) -> Rsa {
    parse_rsa(src).expect("fixture parses")
}

/// Some datum occurs twice.
pub fn exists_rep_nra() -> Nra {
    nra(EXISTS_REP_NRA)
}

/// The same automaton read universally, with `q` and `s` final.
pub fn exists_rep_ura() -> Nra {
    let mut a = exists_rep_nra();
    a.name = "no_rep".into();
    a.finals = [0, 1].into();
    a
}

/// Example 2 without the redundant disequality on the `s` loop.
pub fn exists_rep_nra_eq() -> Nra {
    let mut a = exists_rep_nra();
    for t in &mut a.transitions {
        t.neq = Default::default();
    }
    a
}

pub fn rep_then_b_nra() -> Nra {
    nra(REP_THEN_B_NRA)
}

pub fn not_b_distinct_nra() -> Nra {
    nra(NOT_B_DISTINCT_NRA)
}

pub fn exists_rep_drsa() -> Rsa {
    rsa(EXISTS_REP_DRSA)
}

pub fn no_rep_drsa() -> Rsa {
    rsa(NO_REP_DRSA)
}

pub fn not_all_rep_rsa() -> Rsa {
    rsa(NOT_ALL_REP_RSA)
}

pub fn diseq_nra() -> Nra {
    nra(DISEQ_NRA)
}

pub fn cartesian_nra() -> Nra {
    nra(CARTESIAN_NRA)
}

pub fn collapse_nra() -> Nra {
    nra(COLLAPSE_NRA)
}

/// `(.).*;.*(.).*;.*(.).*\3\2\1`
pub const FLAGSHIP_REGEX: &str = r"(.).*;.*(.).*;.*(.).*\3\2\1";

/// The 42-character text the backtracking matcher struggles with.
pub const FLAGSHIP_TEXT: &str = "ah;jk2367ash;la5akv45lwkjb9f.dj5fqkbxsfyrf";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Validate;

    #[test]
    fn all_parse_and_validate() {
        for a in [exists_rep_nra(), exists_rep_ura(), exists_rep_nra_eq(), diseq_nra(), cartesian_nra(), collapse_nra()] {
            assert!(a.validate().is_empty(), "{}", a.name);
        }
        for a in [exists_rep_drsa(), no_rep_drsa(), not_all_rep_rsa()] {
            assert!(a.validate().is_empty(), "{}", a.name);
        }
        assert_eq!(FLAGSHIP_TEXT.chars().count(), 42);
    }
}
