//! Affine expressions with integer coefficients over the identity variables
//! `a, b, c, mu, nu, d, e`, e.g. `"c+mu-1"` or `"2-c-mu"`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const VAR_NAMES: [&str; 7] = ["a", "b", "c", "mu", "nu", "d", "e"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A = 0,
    B,
    C,
    Mu,
    Nu,
    D,
    E,
}

impl Var {
    pub const ALL: [Var; 7] = [Var::A, Var::B, Var::C, Var::Mu, Var::Nu, Var::D, Var::E];

    pub fn name(self) -> &'static str {
        VAR_NAMES[self as usize]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Values of the seven variables in `VAR_NAMES` order.
pub type Env = [f64; 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    pub coef: [i32; 7],
    pub constant: i32,
}

impl Affine {
    pub const ZERO: Affine = Affine { coef: [0; 7], constant: 0 };

    pub fn constant(k: i32) -> Self {
        Affine { coef: [0; 7], constant: k }
    }

    pub fn var(v: Var) -> Self {
        let mut coef = [0; 7];
        coef[v as usize] = 1;
        Affine { coef, constant: 0 }
    }

    /// Parse an expression; panics on malformed input. Meant for catalog
    /// literals, which are covered by tests.
    pub fn p(s: &str) -> Self {
        s.parse().unwrap_or_else(|e| panic!("bad expression {s:?}: {e}"))
    }

    pub fn eval(&self, env: &Env) -> f64 {
        let mut v = self.constant as f64;
        for (k, x) in self.coef.iter().zip(env) {
            if *k != 0 {
                v += *k as f64 * x;
            }
        }
        v
    }

    pub fn uses(&self, v: Var) -> bool {
        self.coef[v as usize] != 0
    }

    pub fn add(&self, o: &Affine) -> Affine {
        let mut coef = self.coef;
        for (c, d) in coef.iter_mut().zip(o.coef) {
            *c += d;
        }
        Affine { coef, constant: self.constant + o.constant }
    }

    pub fn scale(&self, k: i32) -> Affine {
        let mut coef = self.coef;
        for c in coef.iter_mut() {
            *c *= k;
        }
        Affine { coef, constant: self.constant * k }
    }

    pub fn neg(&self) -> Affine {
        self.scale(-1)
    }

    /// Replace each variable by an affine expression.
    pub fn substitute(&self, map: &[Affine; 7]) -> Affine {
        let mut out = Affine::constant(self.constant);
        for (k, m) in self.coef.iter().zip(map) {
            if *k != 0 {
                out = out.add(&m.scale(*k));
            }
        }
        out
    }

    /// `[a, b, c, mu, nu, d, e, constant]`.
    pub fn to_tuple(&self) -> [i32; 8] {
        let mut t = [0; 8];
        t[..7].copy_from_slice(&self.coef);
        t[7] = self.constant;
        t
    }
}

impl FromStr for Affine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err());
        }
        let mut out = Affine::ZERO;
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(err());
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let number: Option<i32> = if i > start {
                Some(chars[start..i].iter().collect::<String>().parse().map_err(|_| err())?)
            } else {
                None
            };
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            let vstart = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[vstart..i].iter().collect();
            if name.is_empty() {
                out.constant += sign * number.ok_or_else(err)?;
            } else {
                let idx = VAR_NAMES.iter().position(|n| *n == name).ok_or_else(err)?;
                out.coef[idx] += sign * number.unwrap_or(1);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, name) in self.coef.iter().zip(VAR_NAMES) {
            if *k == 0 {
                continue;
            }
            let sign = if *k < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = k.abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        if self.constant != 0 || first {
            if first {
                write!(f, "{}", self.constant)?;
            } else if self.constant > 0 {
                write!(f, "+{}", self.constant)?;
            } else {
                write!(f, "{}", self.constant)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_tuple().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["c+mu-1", "2-c-mu", "-a", "a+b-c+1", "0", "mu", "b-a+1", "2a-3", "d+e-b-c"] {
            let e: Affine = s.parse().unwrap();
            assert_eq!(e.to_string().parse::<Affine>().unwrap(), e);
        }
        assert_eq!(Affine::p("c+mu-1").to_string(), "c+mu-1");
        assert_eq!(Affine::p("1-a+c").to_string(), "-a+c+1");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x", "a++", "c*", "3a4"] {
            assert!(s.parse::<Affine>().is_err(), "{s}");
        }
    }

    #[test]
    fn evaluates() {
        let env = [0.5, 0.25, 1.5, 0.7, 0.0, 0.0, 0.0];
        assert!((Affine::p("c+mu-1").eval(&env) - 1.2).abs() < 1e-15);
        assert_eq!(Affine::p("2a-b").eval(&env), 0.75);
    }

    #[test]
    fn substitution() {
        let mut map = Var::ALL.map(Affine::var);
        map[Var::C as usize] = Affine::p("c+mu");
        assert_eq!(Affine::p("2-c").substitute(&map).to_string(), "-c-mu+2");
    }
}
