//! Generator symbols and free monoid words over `R_i`, `E_i`, `δ^{±1}`.
//!
//! Text syntax: symbols such as `R3`, `e0`, `d` (δ) and `d^-1`, separated by
//! optional whitespace, with parentheses and integer powers, e.g.
//! `(r1 r0)^6` or `E1E2E4 R3 E1E2E4`. Case of `r`/`e` is not significant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    R,
    E,
    Delta,
    DeltaInv,
}

/// A generator; `node` is the diagram label (absent for `δ^{±1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenSymbol {
    pub kind: GenKind,
    pub node: Option<usize>,
}

impl GenSymbol {
    pub fn r(node: usize) -> Self {
        GenSymbol {
            kind: GenKind::R,
            node: Some(node),
        }
    }

    pub fn e(node: usize) -> Self {
        GenSymbol {
            kind: GenKind::E,
            node: Some(node),
        }
    }

    pub fn delta(inverse: bool) -> Self {
        GenSymbol {
            kind: if inverse {
                GenKind::DeltaInv
            } else {
                GenKind::Delta
            },
            node: None,
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self.kind, GenKind::Delta | GenKind::DeltaInv)
    }

    fn render(&self, lower: bool) -> String {
        match (self.kind, self.node) {
            (GenKind::R, Some(n)) => format!("{}{n}", if lower { 'r' } else { 'R' }),
            (GenKind::E, Some(n)) => format!("{}{n}", if lower { 'e' } else { 'E' }),
            (GenKind::DeltaInv, _) => "d^-1".into(),
            _ => "d".into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonoidWord {
    pub symbols: Vec<GenSymbol>,
}

impl MonoidWord {
    pub fn new(symbols: Vec<GenSymbol>) -> Self {
        MonoidWord { symbols }
    }

    pub fn empty() -> Self {
        MonoidWord::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        MonoidWord { symbols }
    }

    /// The word read backwards, i.e. its image under the anti-involution.
    pub fn reversed(&self) -> MonoidWord {
        MonoidWord {
            symbols: self.symbols.iter().rev().copied().collect(),
        }
    }

    /// Splits off the δ symbols: returns the δ exponent and the δ-free word.
    pub fn split_delta(&self) -> (i64, MonoidWord) {
        let mut exp = 0;
        let mut symbols = Vec::new();
        for s in &self.symbols {
            match s.kind {
                GenKind::Delta => exp += 1,
                GenKind::DeltaInv => exp -= 1,
                _ => symbols.push(*s),
            }
        }
        (exp, MonoidWord { symbols })
    }

    /// Nodes used by the non-δ symbols.
    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.symbols.iter().filter_map(|s| s.node)
    }

    /// Space-free rendering with lowercase letters, e.g. `r0r1e0`.
    pub fn to_lower_string(&self) -> String {
        self.render(true)
    }

    fn render(&self, lower: bool) -> String {
        if self.symbols.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self.symbols.iter().map(|s| s.render(lower)).collect();
        parts.join(" ")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let w = parse_seq(&chars, &mut pos, text)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(Error::Parse(format!(
                "unexpected `{}` in `{text}`",
                chars[pos]
            )));
        }
        Ok(w)
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl FromStr for MonoidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MonoidWord::parse(s)
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len()
        && (chars[*pos].is_whitespace() || chars[*pos] == '·' || chars[*pos] == '*')
    {
        *pos += 1;
    }
}

fn parse_int(chars: &[char], pos: &mut usize) -> Option<i64> {
    let start = *pos;
    if *pos < chars.len() && chars[*pos] == '-' {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse().ok()
}

fn parse_seq(chars: &[char], pos: &mut usize, text: &str) -> Result<MonoidWord> {
    let mut out = Vec::new();
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() || chars[*pos] == ')' {
            return Ok(MonoidWord { symbols: out });
        }
        let item = parse_item(chars, pos, text)?;
        skip_ws(chars, pos);
        let power = if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            parse_int(chars, pos).ok_or_else(|| Error::Parse(format!("bad power in `{text}`")))?
        } else {
            1
        };
        if power < 0 {
            // only δ has an inverse symbol
            if item.symbols.iter().all(|s| s.is_delta()) {
                let inv: Vec<GenSymbol> = item
                    .symbols
                    .iter()
                    .map(|s| GenSymbol::delta(s.kind == GenKind::Delta))
                    .collect();
                for _ in 0..-power {
                    out.extend_from_slice(&inv);
                }
                continue;
            }
            return Err(Error::Parse(format!(
                "negative power of a non-δ word in `{text}`"
            )));
        }
        for _ in 0..power {
            out.extend_from_slice(&item.symbols);
        }
    }
}

fn parse_item(chars: &[char], pos: &mut usize, text: &str) -> Result<MonoidWord> {
    let c = chars[*pos];
    if c == '(' {
        *pos += 1;
        let inner = parse_seq(chars, pos, text)?;
        if *pos >= chars.len() || chars[*pos] != ')' {
            return Err(Error::Parse(format!("unbalanced parentheses in `{text}`")));
        }
        *pos += 1;
        return Ok(inner);
    }
    if c == '1' {
        *pos += 1;
        return Ok(MonoidWord::empty());
    }
    if c == 'δ' || c == 'd' || c == 'D' {
        *pos += 1;
        for tail in ["elta", "ELTA"] {
            let t: Vec<char> = tail.chars().collect();
            if chars[*pos..].starts_with(&t) {
                *pos += t.len();
            }
        }
        return Ok(MonoidWord::new(vec![GenSymbol::delta(false)]));
    }
    let kind = match c {
        'r' | 'R' => GenKind::R,
        'e' | 'E' => GenKind::E,
        _ => return Err(Error::Parse(format!("unknown symbol `{c}` in `{text}`"))),
    };
    *pos += 1;
    // one digit per node label, so `e1e2` and `E1E2E4` read unambiguously
    if *pos >= chars.len() || !chars[*pos].is_ascii_digit() {
        return Err(Error::Parse(format!(
            "missing node after `{c}` in `{text}`"
        )));
    }
    let node = chars[*pos].to_digit(10).unwrap() as usize;
    *pos += 1;
    Ok(MonoidWord::new(vec![GenSymbol {
        kind,
        node: Some(node),
    }]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        let w = MonoidWord::parse("E1E2E4 R3 e1e2e4").unwrap();
        assert_eq!(w.len(), 7);
        assert_eq!(w.to_string(), "E1 E2 E4 R3 E1 E2 E4");
        let w = MonoidWord::parse("(r1 r0)^6").unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(w.symbols[0], GenSymbol::r(1));
        let w = MonoidWord::parse("d^2 e0 d^-1").unwrap();
        let (exp, free) = w.split_delta();
        assert_eq!(exp, 1);
        assert_eq!(free.to_lower_string(), "e0");
        assert_eq!(MonoidWord::parse("1").unwrap(), MonoidWord::empty());
        assert_eq!(MonoidWord::parse("").unwrap(), MonoidWord::empty());
        assert!(MonoidWord::parse("x1").is_err());
        assert!(MonoidWord::parse("(r1").is_err());
        assert!(MonoidWord::parse("(r1r0)^-1").is_err());
        assert_eq!(
            MonoidWord::parse("r0r1e0")
                .unwrap()
                .reversed()
                .to_lower_string(),
            "e0 r1 r0"
        );
    }

    fn arb_word() -> impl Strategy<Value = MonoidWord> {
        prop::collection::vec(
            prop_oneof![
                (0usize..5).prop_map(GenSymbol::r),
                (0usize..5).prop_map(GenSymbol::e),
                Just(GenSymbol::delta(false)),
                Just(GenSymbol::delta(true)),
            ],
            0..12,
        )
        .prop_map(MonoidWord::new)
    }

    proptest! {
        #[test]
        fn display_round_trips(w in arb_word()) {
            prop_assert_eq!(MonoidWord::parse(&w.to_string()).unwrap(), w.clone());
            prop_assert_eq!(w.reversed().reversed(), w);
        }
    }
}
