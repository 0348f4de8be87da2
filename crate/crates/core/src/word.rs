//! Generator words: parsing, evaluation and canonical formatting.
//!
//! Grammar: whitespace-separated tokens `s<i>`, `r<i>`, `t<k>`, `l[i,j]`,
//! `a[i,j]`, `d[i,j]`, each optionally followed by `^<signed integer>`.
//! `σ` and `ρ` are accepted as input aliases for `s` and `r`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::crystal::{CrystalGroup, Element, PointElement};
use crate::error::{Error, Result};
use crate::families::{generator_image, Family};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    Sigma(usize),
    Rho(usize),
    Lambda(usize, usize),
    Alpha(usize, usize),
    Tau(usize),
    Delta(usize, usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::Rho(i) => write!(f, "r{i}"),
            Generator::Tau(k) => write!(f, "t{k}"),
            Generator::Lambda(i, j) => write!(f, "l[{i},{j}]"),
            Generator::Alpha(i, j) => write!(f, "a[{i},{j}]"),
            Generator::Delta(i, j) => write!(f, "d[{i},{j}]"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GeneratorSymbol {
    pub generator: Generator,
    pub exponent: i64,
}

impl GeneratorSymbol {
    pub fn new(generator: Generator, exponent: i64) -> Self {
        GeneratorSymbol {
            generator,
            exponent,
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}^{}", self.generator, self.exponent)
        }
    }
}

/// A word in family generators; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GenWord {
    pub symbols: Vec<GeneratorSymbol>,
}

impl GenWord {
    pub fn new(symbols: Vec<GeneratorSymbol>) -> Self {
        GenWord { symbols }
    }

    pub fn empty() -> Self {
        GenWord::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn then(mut self, generator: Generator, exponent: i64) -> Self {
        self.symbols.push(GeneratorSymbol::new(generator, exponent));
        self
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        GenWord { symbols }
    }

    /// The formal inverse: reversed order, negated exponents.
    pub fn inverse(&self) -> GenWord {
        GenWord {
            symbols: self
                .symbols
                .iter()
                .rev()
                .map(|s| GeneratorSymbol::new(s.generator, -s.exponent))
                .collect(),
        }
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.symbols.iter().map(ToString::to_string).collect();
        write!(f, "{}", tokens.join(" "))
    }
}

impl FromStr for GenWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        Ok(&self.text[start..self.pos])
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("index {d} is too large"),
        })
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        self.expect('[')?;
        let i = self.index()?;
        self.expect(',')?;
        let j = self.index()?;
        self.expect(']')?;
        Ok((i, j))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        let start = self.pos;
        let negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let d = self.digits()?;
        let text = if negative {
            format!("-{d}")
        } else {
            d.to_string()
        };
        text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("exponent {text} does not fit in 64 bits"),
        })
    }
}

/// Parses a word; errors carry the byte offset of the offending character.
pub fn parse(text: &str) -> Result<GenWord> {
    let mut cur = Cursor { text, pos: 0 };
    let mut symbols = Vec::new();
    loop {
        while cur.peek().is_some_and(char::is_whitespace) {
            cur.bump();
        }
        let Some(head) = cur.peek() else { break };
        cur.bump();
        let generator = match head {
            's' | 'σ' => Generator::Sigma(cur.index()?),
            'r' | 'ρ' => Generator::Rho(cur.index()?),
            't' => Generator::Tau(cur.index()?),
            'l' => {
                let (i, j) = cur.pair()?;
                Generator::Lambda(i, j)
            }
            'a' => {
                let (i, j) = cur.pair()?;
                Generator::Alpha(i, j)
            }
            'd' => {
                let (i, j) = cur.pair()?;
                Generator::Delta(i, j)
            }
            other => {
                cur.pos -= other.len_utf8();
                return cur.error(format!("unknown generator '{other}'"));
            }
        };
        let exponent = cur.exponent()?;
        if let Some(c) = cur.peek().filter(|c| !c.is_whitespace()) {
            return cur.error(format!("unexpected '{c}' after token"));
        }
        symbols.push(GeneratorSymbol::new(generator, exponent));
    }
    Ok(GenWord { symbols })
}

/// Evaluates a word homomorphically in the quotient.
pub fn evaluate(word: &GenWord, group: &CrystalGroup) -> Result<Element> {
    let mut acc = group.identity();
    for s in &word.symbols {
        let image = generator_image(group, &s.generator)?;
        let power = group.pow(&image, s.exponent)?;
        acc = group.mul(&acc, &power)?;
    }
    Ok(acc)
}

fn translation_letter(family: Family) -> fn(usize, usize) -> Generator {
    match family {
        Family::Vb | Family::Vt => Generator::Lambda,
        Family::PlbExt => Generator::Alpha,
        Family::Kb3 => Generator::Delta,
    }
}

/// Canonical text `l[i,j]^a ... | perm=(cycles)`.
///
/// Translation factors follow basis order with zero exponents omitted. Sign
/// tuples print as `| tau={k,...}`.
pub fn format_element(group: &CrystalGroup, e: &Element) -> String {
    let letter = translation_letter(group.family());
    let factors: Vec<String> = group
        .labels()
        .iter()
        .zip(&e.v)
        .filter(|(_, a)| !a.is_zero())
        .map(|(&(i, j), a)| {
            let g = letter(i, j);
            if a.is_one() {
                g.to_string()
            } else {
                format!("{g}^{a}")
            }
        })
        .collect();
    let body = if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(" ")
    };
    match &e.w {
        PointElement::Perm(p) => format!("{body} | perm={p}"),
        PointElement::Signs(_) => format!("{body} | tau={}", e.w),
    }
}

/// A word evaluating to `e`: translation factors, then point-group letters.
pub fn element_to_word(group: &CrystalGroup, e: &Element) -> Result<GenWord> {
    group.check(e)?;
    let letter = translation_letter(group.family());
    let mut word = GenWord::empty();
    for (&(i, j), a) in group.labels().iter().zip(&e.v) {
        if !a.is_zero() {
            let exponent = i64::try_from(a).map_err(|_| {
                Error::Internal(format!("coefficient {a} does not fit a word exponent"))
            })?;
            word = word.then(letter(i, j), exponent);
        }
    }
    match &e.w {
        PointElement::Perm(p) => {
            for i in p.adjacent_word() {
                word = word.then(Generator::Rho(i), 1);
            }
        }
        PointElement::Signs(_) => {
            for k in e.w.sign_support().unwrap_or_default() {
                word = word.then(Generator::Tau(k), 1);
            }
        }
    }
    Ok(word)
}
