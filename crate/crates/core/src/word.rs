//! Words in a free group and finite presentations.
//!
//! Text syntax: generators `x1 x2 ..`, uppercase for inverses (`X1`),
//! commutators `[u,v] = u v u^-1 v^-1`, parentheses, and integer powers
//! `u^k` (negative allowed). Whitespace between tokens is optional.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A letter: 1-based generator index and exponent `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Builds a word from `(generator, exponent)` pairs, reducing freely.
    pub fn new(letters: &[(usize, i32)]) -> Result<Word> {
        let mut out = Word::identity();
        for &(g, e) in letters {
            if g == 0 {
                return Err(Error::Parse("generator indices start at 1".into()));
            }
            let l = Letter {
                generator: g,
                inverse: e < 0,
            };
            for _ in 0..e.unsigned_abs() {
                out.push(l);
            }
        }
        Ok(out)
    }

    pub fn identity() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn generator(g: usize) -> Word {
        Word {
            letters: vec![Letter {
                generator: g,
                inverse: false,
            }],
        }
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring, or 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// Sorted distinct generator indices.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters.iter().map(|l| l.generator).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator == g).count()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Splits at the positions where the letters before and after use
    /// disjoint sets of generators, giving maximal consecutive blocks.
    pub fn disjoint_blocks(&self) -> Vec<Word> {
        let n = self.letters.len();
        let mut blocks = Vec::new();
        let mut start = 0;
        for cut in 1..=n {
            if cut == n {
                blocks.push(Word {
                    letters: self.letters[start..].to_vec(),
                });
                break;
            }
            let (left, right) = (&self.letters[start..cut], &self.letters[cut..]);
            if left
                .iter()
                .all(|a| right.iter().all(|b| a.generator != b.generator))
            {
                blocks.push(Word {
                    letters: left.to_vec(),
                });
                start = cut;
            }
        }
        blocks
    }

    pub fn parse(s: &str) -> Result<Word> {
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if l.inverse { 'X' } else { 'x' }, l.generator)?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in word", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if c == ',' || c == ']' || c == ')' {
                break;
            }
            let f = self.factor()?;
            w = w.concat(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.error("expected an integer exponent"))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                if self.peek() != Some(',') {
                    return Err(self.error("expected ','"));
                }
                self.pos += 1;
                let b = self.word()?;
                if self.peek() != Some(']') {
                    return Err(self.error("expected ']'"));
                }
                self.pos += 1;
                Ok(Word::commutator(&a, &b))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.word()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(a)
            }
            Some(c @ ('x' | 'X')) => {
                self.pos += 1;
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let g: usize = text
                    .parse()
                    .map_err(|_| self.error("expected a generator index"))?;
                if g == 0 {
                    return Err(self.error("generator indices start at 1"));
                }
                let w = Word::generator(g);
                Ok(if c == 'X' { w.inverse() } else { w })
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            _ => Err(self.error("expected a generator")),
        }
    }
}

/// `<x_1, .., x_d : R_1, .., R_r>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    d: usize,
    relators: Vec<Word>,
}

/// Presentation families with closed-form counting formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "shape", content = "param")]
pub enum Shape {
    Free(usize),
    Surface(usize),
    Squares(usize),
    Other,
}

impl Presentation {
    pub fn new(d: usize, relators: Vec<Word>) -> Result<Presentation> {
        for r in &relators {
            if r.max_generator() > d {
                return Err(Error::InvalidArgument(format!(
                    "relator {r} uses a generator beyond x{d}"
                )));
            }
        }
        Ok(Presentation { d, relators })
    }

    pub fn free(d: usize) -> Presentation {
        Presentation {
            d,
            relators: Vec::new(),
        }
    }

    /// Fundamental group of the closed orientable surface of genus `g`.
    pub fn surface(g: usize) -> Presentation {
        let mut r = Word::identity();
        for i in 0..g {
            r = r.concat(&Word::commutator(
                &Word::generator(2 * i + 1),
                &Word::generator(2 * i + 2),
            ));
        }
        Presentation {
            d: 2 * g,
            relators: vec![r],
        }
    }

    /// `<x_1, .., x_m : x_1^2 .. x_m^2>`.
    pub fn squares(m: usize) -> Presentation {
        let mut r = Word::identity();
        for i in 1..=m {
            r = r.concat(&Word::generator(i).pow(2));
        }
        Presentation {
            d: m,
            relators: vec![r],
        }
    }

    /// Parses relators separated by `;`. With `d = None` the generator
    /// count is the largest index used.
    pub fn parse(d: Option<usize>, relators: &str) -> Result<Presentation> {
        let words = relators
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(Word::parse)
            .collect::<Result<Vec<_>>>()?;
        let used = words.iter().map(|w| w.max_generator()).max().unwrap_or(0);
        Presentation::new(d.unwrap_or(used), words)
    }

    pub fn generators(&self) -> usize {
        self.d
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn shape(&self) -> Shape {
        if self.relators.iter().all(|r| r.is_empty()) {
            return Shape::Free(self.d);
        }
        if self.relators.len() == 1 {
            if self.d.is_multiple_of(2) && *self == Presentation::surface(self.d / 2) {
                return Shape::Surface(self.d / 2);
            }
            if *self == Presentation::squares(self.d) {
                return Shape::Squares(self.d);
            }
        }
        Shape::Other
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.d).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "<{} : {}>", gens.join(", "), rels.join(", "))
    }
}
