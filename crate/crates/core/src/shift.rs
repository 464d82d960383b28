//! Transition matrices, allowed words and follower vectors.
//!
//! A [`TransitionMatrix`] over an [`Alphabet`] of at most 64 symbols is the
//! only external input of the crate. Every nonzero D-class of the inverse
//! hull is indexed by a [`FollowerVector`]: the set of letters a word must
//! start with to lie in the domain of the idempotent.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest supported alphabet; follower vectors are packed into a `u64`.
pub const MAX_LETTERS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("missing header line with the alphabet symbols")]
    MissingHeader,
    #[error("duplicate symbol `{0}` in header")]
    DuplicateSymbol(String),
    #[error("alphabet has {0} symbols, at most {MAX_LETTERS} are supported")]
    AlphabetTooLarge(usize),
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row} contains `{ch}`, only '0' and '1' are allowed")]
    BadEntry { row: usize, ch: char },
    #[error("row of symbol `{0}` has no nonzero entry")]
    ZeroRow(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(usize),
}

/// Index of a symbol in its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u8);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered list of distinct symbols. The order fixes bit positions and the
/// order in which letters are printed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, ShiftError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(ShiftError::MissingHeader);
        }
        if symbols.len() > MAX_LETTERS {
            return Err(ShiftError::AlphabetTooLarge(symbols.len()));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(ShiftError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols })
    }

    /// `a`, `b`, `c`, ... for small sizes, `s26`, `s27`, ... beyond that.
    pub fn standard(len: usize) -> Result<Self, ShiftError> {
        Self::new((0..len).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("s{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(|i| Letter(i as u8))
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter, ShiftError> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| Letter(i as u8))
            .ok_or_else(|| ShiftError::UnknownLetter(symbol.to_string()))
    }
}

/// Set of letters, stored as a bit mask over an alphabet of `len` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FollowerVector {
    bits: u64,
    len: u8,
}

#[allow(clippy::len_without_is_empty)]
impl FollowerVector {
    pub fn empty(len: usize) -> Self {
        assert!(len <= MAX_LETTERS);
        Self {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut v = Self::empty(len);
        v.bits = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        v
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        let mut v = Self::full(len);
        v.bits &= bits;
        v
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I, len: usize) -> Self {
        let mut v = Self::empty(len);
        for l in letters {
            v.insert(l);
        }
        v
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// No letter set.
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn count(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.len() && self.bits >> letter.index() & 1 == 1
    }

    pub fn insert(&mut self, letter: Letter) {
        assert!(letter.index() < self.len(), "letter outside alphabet");
        self.bits |= 1 << letter.index();
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len)
            .filter(|&i| self.bits >> i & 1 == 1)
            .map(Letter)
    }

    /// Bitwise AND. `None` stands for the zero vector.
    pub fn meet(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.len, other.len);
        let bits = self.bits & other.bits;
        (bits != 0).then_some(Self {
            bits,
            len: self.len,
        })
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }
}

impl Ord for FollowerVector {
    /// Lexicographic on the increasing list of member letters.
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters()
            .cmp(other.letters())
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for FollowerVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite, possibly empty, sequence of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// A 0-1 matrix with a nonzero entry in every row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionMatrix {
    alphabet: Alphabet,
    rows: Vec<FollowerVector>,
}

impl TransitionMatrix {
    /// `rows[a]` is the set of letters allowed to follow `a`.
    pub fn new(alphabet: Alphabet, rows: Vec<FollowerVector>) -> Result<Self, ShiftError> {
        let n = alphabet.len();
        if rows.len() != n {
            return Err(ShiftError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ShiftError::RowLength {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            if row.is_zero() {
                return Err(ShiftError::ZeroRow(alphabet.symbols[i].clone()));
            }
        }
        Ok(Self { alphabet, rows })
    }

    /// Builds a matrix over the standard alphabet from 0/1 rows.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self, ShiftError> {
        let n = rows.len();
        let alphabet = Alphabet::standard(n)?;
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if r.len() != n {
                    return Err(ShiftError::RowLength {
                        row: i + 1,
                        expected: n,
                        found: r.len(),
                    });
                }
                Ok(FollowerVector::from_letters(
                    r.iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(j, _)| Letter(j as u8)),
                    n,
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, rows)
    }

    /// Parses the text format: a header line of whitespace-separated symbols
    /// followed by one row of `0`/`1` characters per symbol. Whitespace inside
    /// rows and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, ShiftError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(ShiftError::MissingHeader)?;
        let alphabet = Alphabet::new(header.split_whitespace())?;
        let n = alphabet.len();
        let body: Vec<&str> = lines.collect();
        if body.len() != n {
            return Err(ShiftError::RowCount {
                expected: n,
                found: body.len(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for (i, line) in body.iter().enumerate() {
            let mut row = FollowerVector::empty(n);
            let mut found = 0;
            for ch in line.chars().filter(|c| !c.is_whitespace()) {
                match ch {
                    '0' => {}
                    '1' if found < n => row.insert(Letter(found as u8)),
                    '1' => {}
                    _ => return Err(ShiftError::BadEntry { row: i + 1, ch }),
                }
                found += 1;
            }
            if found != n {
                return Err(ShiftError::RowLength {
                    row: i + 1,
                    expected: n,
                    found,
                });
            }
            rows.push(row);
        }
        Self::new(alphabet, rows)
    }

    /// Same matrix with every symbol renamed through `perm`: symbol `i` of
    /// `self` becomes symbol `perm[i]` of the result.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.size();
        assert_eq!(perm.len(), n);
        let mut symbols = vec![String::new(); n];
        let mut rows = vec![FollowerVector::empty(n); n];
        for a in 0..n {
            symbols[perm[a]] = self.alphabet.symbols[a].clone();
            for b in self.rows[a].letters() {
                rows[perm[a]].insert(Letter(perm[b.index()] as u8));
            }
        }
        Self {
            alphabet: Alphabet { symbols },
            rows,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn rows(&self) -> &[FollowerVector] {
        &self.rows
    }

    pub fn allows(&self, from: Letter, to: Letter) -> bool {
        self.rows[from.index()].contains(to)
    }

    pub fn check_letter(&self, letter: Letter) -> Result<(), ShiftError> {
        if letter.index() < self.size() {
            Ok(())
        } else {
            Err(ShiftError::LetterOutOfRange(letter.index()))
        }
    }

    /// The row of `letter`.
    pub fn follower_of(&self, letter: Letter) -> Result<FollowerVector, ShiftError> {
        self.check_letter(letter)?;
        Ok(self.rows[letter.index()])
    }

    /// Empty words are allowed; otherwise every consecutive pair must be.
    pub fn word_allowed(&self, word: &Word) -> Result<bool, ShiftError> {
        for &l in word.letters() {
            self.check_letter(l)?;
        }
        Ok(word
            .letters()
            .windows(2)
            .all(|pair| self.allows(pair[0], pair[1])))
    }

    /// Parses a word either as whitespace-separated symbols or, when every
    /// symbol is one character long, as a run of characters.
    pub fn parse_word(&self, text: &str) -> Result<Word, ShiftError> {
        let text = text.trim();
        if text.contains(char::is_whitespace)
            || !self.alphabet.symbols.iter().all(|s| s.chars().count() == 1)
        {
            return text
                .split_whitespace()
                .map(|s| self.alphabet.letter(s))
                .collect::<Result<Vec<_>, _>>()
                .map(Word);
        }
        text.chars()
            .map(|c| self.alphabet.letter(c.encode_utf8(&mut [0; 4])))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// All nonzero ANDs of nonempty sets of rows, sorted.
    pub fn f_classes(&self) -> Vec<FollowerVector> {
        let mut classes: BTreeSet<FollowerVector> = self.rows.iter().copied().collect();
        let mut frontier: Vec<FollowerVector> = classes.iter().copied().collect();
        while let Some(v) = frontier.pop() {
            for row in &self.rows {
                if let Some(m) = v.meet(row) {
                    if classes.insert(m) {
                        frontier.push(m);
                    }
                }
            }
        }
        classes.into_iter().collect()
    }

    /// `{a,b}` style rendering in alphabet order.
    pub fn format_vector(&self, v: &FollowerVector) -> String {
        let parts: Vec<&str> = v.letters().map(|l| self.alphabet.symbol(l)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn format_word(&self, w: &Word) -> String {
        let sep = if self.alphabet.symbols.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            " "
        };
        w.letters()
            .iter()
            .map(|&l| self.alphabet.symbol(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Text in the format accepted by [`TransitionMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut out = self.alphabet.symbols.join(" ");
        out.push('\n');
        for row in &self.rows {
            for b in self.alphabet.letters() {
                out.push(if row.contains(b) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Subset order on follower vectors; it realizes the natural partial order
/// of the idempotents they index.
pub fn natural_leq(v1: &FollowerVector, v2: &FollowerVector) -> bool {
    v1.is_subset(v2)
}
