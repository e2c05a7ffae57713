//! Permutation expressions.
//!
//! ```text
//! atom := "id" | "cycles(" cycle+ ")" | "shiftz" | "swap-pairs" | "replete"
//!       | "qshift(" rational ")" | "qscale(" rational ")"
//! expr := atom | "inv(" expr ")" | "comp(" expr "," expr ")"
//!       | "conj(" expr "," expr ")" | "comm(" expr "," expr ")"
//! cycle := "(" point (" " point)* ")"
//! rational := integer ["/" integer]
//! ```
//!
//! `qshift` and `qscale` act on ℚ and are read through the rational codec.

use std::fmt;
use std::sync::Arc;

use crate::countable::Rational;
use crate::error::{Error, Result};
use crate::monotone::{qscale, qshift};
use crate::orbits::{
    structured, ConjugateOracle, FiniteSupportOracle, IdentityOracle, OrbitOracle, ShiftZOracle,
    StructuredPerm, SwapPairsOracle,
};
use crate::perm::{commutator, compose, conjugate, cycles, identity, shiftz, swap_pairs, Perm, Point};
use crate::replete::canonical_replete;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermExpr {
    Id,
    Cycles(Vec<Vec<Point>>),
    ShiftZ,
    SwapPairs,
    Replete,
    QShift(Rational),
    QScale(Rational),
    Inv(Box<PermExpr>),
    Comp(Box<PermExpr>, Box<PermExpr>),
    Conj(Box<PermExpr>, Box<PermExpr>),
    Comm(Box<PermExpr>, Box<PermExpr>),
}

impl fmt::Display for PermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermExpr::Id => write!(f, "id"),
            PermExpr::Cycles(cs) => {
                write!(f, "cycles(")?;
                for c in cs {
                    let pts: Vec<String> = c.iter().map(Point::to_string).collect();
                    write!(f, "({})", pts.join(" "))?;
                }
                write!(f, ")")
            }
            PermExpr::ShiftZ => write!(f, "shiftz"),
            PermExpr::SwapPairs => write!(f, "swap-pairs"),
            PermExpr::Replete => write!(f, "replete"),
            PermExpr::QShift(r) => write!(f, "qshift({r})"),
            PermExpr::QScale(r) => write!(f, "qscale({r})"),
            PermExpr::Inv(a) => write!(f, "inv({a})"),
            PermExpr::Comp(a, b) => write!(f, "comp({a},{b})"),
            PermExpr::Conj(a, b) => write!(f, "conj({a},{b})"),
            PermExpr::Comm(a, b) => write!(f, "comm({a},{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {s:?}")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '-')).unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+'))))
            .map_or(r.len(), |(i, _)| i);
        let v = r[..len].parse().map_err(|_| self.err("expected an integer"))?;
        self.pos += len;
        Ok(v)
    }

    fn rational(&mut self) -> Result<Rational> {
        let p = self.integer()?;
        let q = if self.eat("/") { self.integer()? } else { 1 };
        if q == 0 {
            return Err(self.err("zero denominator"));
        }
        Ok(Rational::new(p, q))
    }

    fn cycle_list(&mut self) -> Result<Vec<Vec<Point>>> {
        let mut out = Vec::new();
        while self.eat("(") {
            let mut c = Vec::new();
            while !self.eat(")") {
                let v = self.integer()?;
                c.push(Point::try_from(v).map_err(|_| self.err("negative point"))?);
            }
            out.push(c);
        }
        Ok(out)
    }

    fn binary(&mut self) -> Result<(Box<PermExpr>, Box<PermExpr>)> {
        self.expect("(")?;
        let a = self.expr()?;
        self.expect(",")?;
        let b = self.expr()?;
        self.expect(")")?;
        Ok((Box::new(a), Box::new(b)))
    }

    fn expr(&mut self) -> Result<PermExpr> {
        let start = self.pos;
        let e = match self.word() {
            "id" => PermExpr::Id,
            "shiftz" => PermExpr::ShiftZ,
            "swap-pairs" => PermExpr::SwapPairs,
            "replete" => PermExpr::Replete,
            "cycles" => {
                self.expect("(")?;
                let cs = self.cycle_list()?;
                self.expect(")")?;
                PermExpr::Cycles(cs)
            }
            w @ ("qshift" | "qscale") => {
                self.expect("(")?;
                let r = self.rational()?;
                self.expect(")")?;
                if w == "qshift" {
                    PermExpr::QShift(r)
                } else {
                    PermExpr::QScale(r)
                }
            }
            "inv" => {
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(")")?;
                PermExpr::Inv(Box::new(a))
            }
            "comp" => {
                let (a, b) = self.binary()?;
                PermExpr::Comp(a, b)
            }
            "conj" => {
                let (a, b) = self.binary()?;
                PermExpr::Conj(a, b)
            }
            "comm" => {
                let (a, b) = self.binary()?;
                PermExpr::Comm(a, b)
            }
            _ => {
                self.pos = start;
                return Err(self.err("unknown expression"));
            }
        };
        Ok(e)
    }
}

pub fn parse(src: &str) -> Result<PermExpr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if !p.rest().is_empty() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl PermExpr {
    /// Evaluates to a permutation with the exact orbit oracle where one is
    /// known, and a tracing oracle bounded by `trace_bound` otherwise.
    pub fn eval(&self, trace_bound: u64) -> Result<StructuredPerm> {
        let known = |p: Perm, o: Arc<dyn OrbitOracle>| Ok(StructuredPerm::new(p, o));
        let traced = |p: Perm| Ok(structured(&p, None, trace_bound));
        match self {
            PermExpr::Id => known(identity(), Arc::new(IdentityOracle)),
            PermExpr::Cycles(cs) => {
                let p = cycles(cs)?;
                let support: Vec<Point> = cs.iter().flatten().copied().collect();
                known(p.clone(), Arc::new(FiniteSupportOracle::new(&p, &support)?))
            }
            PermExpr::ShiftZ => known(shiftz(), Arc::new(ShiftZOracle)),
            PermExpr::SwapPairs => known(swap_pairs(), Arc::new(SwapPairsOracle)),
            PermExpr::Replete => Ok(canonical_replete()),
            PermExpr::QShift(r) => traced(qshift(*r).perm),
            PermExpr::QScale(r) => traced(qscale(*r)?.perm),
            PermExpr::Inv(a) => Ok(a.eval(trace_bound)?.inverse()),
            PermExpr::Comp(a, b) => traced(compose(&a.eval(trace_bound)?.perm, &b.eval(trace_bound)?.perm)),
            PermExpr::Conj(a, b) => {
                let (g, h) = (a.eval(trace_bound)?, b.eval(trace_bound)?);
                let oracle = ConjugateOracle { base: g.oracle, by: h.perm.clone() };
                known(conjugate(&g.perm, &h.perm), Arc::new(oracle))
            }
            PermExpr::Comm(a, b) => traced(commutator(&a.eval(trace_bound)?.perm, &b.eval(trace_bound)?.perm)),
        }
    }
}

/// Parses and evaluates in one step.
pub fn perm(src: &str, trace_bound: u64) -> Result<StructuredPerm> {
    parse(src)?.eval(trace_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::OrbitSize;
    use crate::perm::agree_on_prefix;

    #[test]
    fn round_trips_through_display() {
        for s in [
            "id",
            "cycles((0 1)(2 3 4))",
            "comm(cycles((0 1)),shiftz)",
            "conj(swap-pairs,inv(replete))",
            "comp(qshift(1/2),qscale(-3))",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(parse(" comp( id , shiftz ) ").unwrap().to_string(), "comp(id,shiftz)");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "foo", "cycles((0 1)", "comp(id)", "id id", "qshift(1/0)", "cycles((0 -1))"] {
            assert!(matches!(parse(s), Err(Error::Parse(_))), "{s}");
        }
        assert!(matches!(perm("cycles((0 1)(1 2))", 100), Err(Error::Reject(_))));
    }

    #[test]
    fn evaluation_matches_direct_construction() {
        let b = 1 << 12;
        let c = perm("comm(cycles((0 1)),shiftz)", b).unwrap();
        let direct = commutator(&cycles(&[vec![0, 1]]).unwrap(), &shiftz());
        assert!(agree_on_prefix(&c.perm, &direct, 1_000).unwrap());
        let i = perm("inv(shiftz)", b).unwrap();
        assert!(agree_on_prefix(&i.perm, &shiftz().inverse(), 1_000).unwrap());
    }

    #[test]
    fn atoms_carry_exact_oracles() {
        let c = perm("conj(cycles((0 1 2)),shiftz)", 1 << 12).unwrap();
        for x in 0..50 {
            let info = c.orbit(x).unwrap();
            let walked = crate::orbits::trace_orbit(&c.perm, x, 100).unwrap();
            assert_eq!(crate::orbits::OrbitSizeTag::from(info.size), walked);
        }
        assert_eq!(perm("shiftz", 10).unwrap().orbit(5).unwrap().size, OrbitSize::Infinite);
    }
}
