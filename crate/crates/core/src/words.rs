//! Free-group words over named alphabets.
//!
//! The text syntax follows the usual typography for Coxeter-type presentations:
//! juxtaposition is product, `'` and `°` belong to the label they follow,
//! `x^{w}` is the conjugate `w⁻¹ x w`, `x^n` is a power and `[x,y]` is `x⁻¹y⁻¹xy`.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("malformed word at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent with nothing to apply it to at byte {0}")]
    DanglingExponent(usize),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
}

/// One letter of a word: a generator index and whether it is inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen: gen as u32, inv }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
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

    /// Generator indices in order, ignoring signs.
    pub fn gens(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.iter().map(|l| l.gen as usize)
    }
}

/// Ordered generator labels. When `involutive` is set every generator is its own inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    involutive: bool,
    index: HashMap<String, usize>,
}

fn is_label_tail(c: char) -> bool {
    c == '\'' || c == '°' || c.is_ascii_digit()
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S], involutive: bool) -> Result<Self, WordError> {
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if index.insert(n.clone(), i).is_some() {
                return Err(WordError::DuplicateLabel(n));
            }
            out.push(n);
        }
        Ok(Alphabet { names: out, involutive, index })
    }

    pub fn involutive<S: AsRef<str>>(names: &[S]) -> Result<Self, WordError> {
        Self::new(names, true)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn letter(&self, label: &str) -> Result<Word, WordError> {
        let g = self
            .position(label)
            .ok_or_else(|| WordError::UnknownLabel(label.to_string()))?;
        Ok(Word::from_letters(vec![Letter::new(g, false)]))
    }

    fn norm(&self, l: Letter) -> Letter {
        if self.involutive {
            Letter { gen: l.gen, inv: false }
        } else {
            l
        }
    }

    fn cancels(&self, a: Letter, b: Letter) -> bool {
        a.gen == b.gen && (self.involutive || a.inv != b.inv)
    }

    pub fn free_reduce(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in &w.letters {
            let l = self.norm(l);
            match out.last() {
                Some(&top) if self.cancels(top, l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn inverse(&self, w: &Word) -> Word {
        let letters = w
            .letters
            .iter()
            .rev()
            .map(|&l| self.norm(Letter { gen: l.gen, inv: !l.inv }))
            .collect();
        Word { letters }
    }

    pub fn product(&self, u: &Word, v: &Word) -> Word {
        let mut letters = u.letters.clone();
        letters.extend_from_slice(&v.letters);
        self.free_reduce(&Word { letters })
    }

    pub fn concat<'a, I: IntoIterator<Item = &'a Word>>(&self, ws: I) -> Word {
        let mut letters = Vec::new();
        for w in ws {
            letters.extend_from_slice(&w.letters);
        }
        self.free_reduce(&Word { letters })
    }

    /// `w⁻¹ x w`.
    pub fn conjugate(&self, x: &Word, w: &Word) -> Word {
        self.concat([&self.inverse(w), x, w])
    }

    /// Negative `n` gives a power of the inverse.
    pub fn power(&self, w: &Word, n: i64) -> Word {
        let base = if n < 0 { self.inverse(w) } else { w.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        self.free_reduce(&Word { letters })
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: &Word, y: &Word) -> Word {
        self.concat([&self.inverse(x), &self.inverse(y), x, y])
    }

    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        self.parse_with(text, &Macros::new())
    }

    /// Parse with named subwords available as `$name`.
    pub fn parse_with(&self, text: &str, macros: &Macros) -> Result<Word, WordError> {
        let mut p = Parser {
            alpha: self,
            macros,
            src: text,
            chars: text.char_indices().collect(),
            pos: 0,
        };
        let w = p.sequence()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(self.free_reduce(&w))
    }

    /// Print a word so that `parse(format(w)) == w`.
    pub fn format(&self, w: &Word) -> String {
        let mut s = String::new();
        for l in &w.letters {
            s.push_str(&self.names[l.gen as usize]);
            if l.inv && !self.involutive {
                s.push_str("^-1");
            }
        }
        s
    }
}

/// Named words usable inside [`Alphabet::parse_with`].
pub type Macros = HashMap<String, Word>;

fn is_macro_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || is_label_tail(c)
}

struct Parser<'a> {
    alpha: &'a Alphabet,
    macros: &'a Macros,
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn byte(&self) -> usize {
        self.chars.get(self.pos).map(|&(b, _)| b).unwrap_or(self.src.len())
    }

    fn err(&self, msg: &str) -> WordError {
        WordError::Syntax { pos: self.byte(), msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '.' || c == '*') {
            self.pos += 1;
        }
    }

    fn sequence(&mut self) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(']') | Some('}') | Some(',') => break,
                Some('^') => return Err(WordError::DanglingExponent(self.byte())),
                _ => {
                    let f = self.factor()?;
                    letters.extend(f.letters);
                }
            }
        }
        Ok(Word { letters })
    }

    fn expect(&mut self, c: char) -> Result<(), WordError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn atom(&mut self) -> Result<Word, WordError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.sequence()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let x = self.sequence()?;
                self.expect(',')?;
                let y = self.sequence()?;
                self.expect(']')?;
                Ok(self.alpha.commutator(&x, &y))
            }
            Some('$') => {
                self.pos += 1;
                let mut name = String::new();
                while let Some(c) = self.peek().filter(|&c| is_macro_char(c)) {
                    name.push(c);
                    self.pos += 1;
                }
                self.macros
                    .get(&name)
                    .cloned()
                    .ok_or(WordError::UnknownLabel(format!("${name}")))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(c) if c.is_alphabetic() => {
                let label = self.label();
                self.alpha.letter(&label)
            }
            _ => Err(self.err("expected a label, `(` or `[`")),
        }
    }

    fn label(&mut self) -> String {
        let mut s = String::new();
        if let Some(c) = self.peek() {
            s.push(c);
            self.pos += 1;
        }
        while let Some(c) = self.peek() {
            if is_label_tail(c) {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn integer(&mut self) -> Option<i64> {
        let start = self.pos;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let mut v: i64 = 0;
        let mut any = false;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            v = v.saturating_mul(10).saturating_add(d as i64);
            self.pos += 1;
            any = true;
        }
        if !any {
            self.pos = start;
            return None;
        }
        Some(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let mut w = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            match self.peek() {
                Some('{') => {
                    self.pos += 1;
                    self.skip_ws();
                    let save = self.pos;
                    if let Some(n) = self.integer() {
                        self.skip_ws();
                        if self.peek() == Some('}') {
                            self.pos += 1;
                            w = self.alpha.power(&w, n);
                            continue;
                        }
                        self.pos = save;
                    }
                    let c = self.sequence()?;
                    self.expect('}')?;
                    w = self.alpha.conjugate(&w, &c);
                }
                Some(c) if c == '-' || c.is_ascii_digit() => {
                    let n = self.integer().ok_or_else(|| self.err("expected exponent"))?;
                    w = self.alpha.power(&w, n);
                }
                Some(c) if c.is_alphabetic() => {
                    let label = self.label();
                    let c = self.alpha.letter(&label)?;
                    w = self.alpha.conjugate(&w, &c);
                }
                _ => return Err(self.err("expected exponent or conjugator after `^`")),
            }
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Alphabet {
        Alphabet::involutive(&["a", "b", "c", "d", "e", "f", "a'", "c'"]).unwrap()
    }

    #[test]
    fn conjugate_by_word_expands_and_reverses() {
        let a = alpha();
        let w = a.parse("c^{c'dbc}").unwrap();
        assert_eq!(a.format(&w), "cbdc'cc'dbc");
        assert_eq!(w.len(), 9);
    }

    #[test]
    fn powers_and_commutators() {
        let a = alpha();
        assert_eq!(a.parse("(adbecf)^4").unwrap().len(), 24);
        assert_eq!(a.format(&a.parse("[a,b]").unwrap()), "abab");
        assert!(a.parse("(ab)^0").unwrap().is_empty());
        assert_eq!(a.parse("(ab)^{-1}").unwrap(), a.parse("ba").unwrap());
    }

    #[test]
    fn involutive_reduction() {
        let a = alpha();
        assert!(a.parse("abba").unwrap().is_empty());
        assert_eq!(a.format(&a.parse("a^{a'bfa}").unwrap()), "afba'aa'bfa");
    }

    #[test]
    fn nested_conjugation_composes() {
        let a = alpha();
        let lhs = a.parse("(a^b)^c").unwrap();
        assert_eq!(lhs, a.parse("a^{bc}").unwrap());
        assert_eq!(a.format(&lhs), "cbabc");
    }

    #[test]
    fn signed_words_outside_involutive_mode() {
        let a = Alphabet::new(&["a", "b"], false).unwrap();
        let w = a.parse("a b^-1").unwrap();
        assert_eq!(a.format(&a.inverse(&w)), "ba^-1");
        assert!(a.parse("a a^-1").unwrap().is_empty());
        assert_eq!(a.parse("aa").unwrap().len(), 2);
        assert_eq!(a.format(&a.parse("[a,b]").unwrap()), "a^-1b^-1ab");
    }

    #[test]
    fn errors() {
        let a = alpha();
        assert_eq!(a.parse("ax"), Err(WordError::UnknownLabel("x".into())));
        assert!(matches!(a.parse("^2"), Err(WordError::DanglingExponent(_))));
        assert!(matches!(a.parse("(ab"), Err(WordError::Syntax { .. })));
        assert!(matches!(a.parse("[a b]"), Err(WordError::Syntax { .. })));
    }

    #[test]
    fn macros_expand() {
        let a = alpha();
        let mut m = Macros::new();
        m.insert("C".into(), a.parse("c^{c'bdc}").unwrap());
        let w = a.parse_with("$C^{ab}", &m).unwrap();
        assert_eq!(w, a.parse("c^{c'bdcab}").unwrap());
        assert!(matches!(a.parse_with("$D", &m), Err(WordError::UnknownLabel(_))));
    }

    #[test]
    fn primes_and_digits_are_part_of_labels() {
        let a = Alphabet::involutive(&["x0", "x1", "x10", "e", "e°", "e'"]).unwrap();
        let w = a.parse("x1x10e°e'e").unwrap();
        assert_eq!(w.gens().collect::<Vec<_>>(), vec![1, 2, 4, 5, 3]);
    }
}
