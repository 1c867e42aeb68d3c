//! Connected tiling semigroups of one-dimensional tilings.
//!
//! In one dimension a connected patch is an interval of tiles, so a patch up
//! to translation is just a word over the tile alphabet, and the whole
//! combinatorics reduces to the factor language of a bi-infinite word.  The
//! oracle here materializes a finite window of that word, long enough that
//! every factor question up to `max_len` is answered by a substring search,
//! and certifies the window by checking that doubling it changes no answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub mod pipeline;

pub use pipeline::{patch_scan, tiling_ktheory, PatchScan};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TilingError {
    #[error("{0}")]
    Invalid(String),
    #[error("patch of length {len} exceeds the certified factor window (max {max_len})")]
    OracleWindowExceeded { len: usize, max_len: usize },
    #[error("window budget of {cap} letters exceeded while growing the factor window")]
    WindowBudget { cap: usize },
}

/// Where the bi-infinite word comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingSource {
    /// `…www…` — the word repeated both ways.
    Periodic { word: String },
    /// The fixed point of iterating `rules` from `seed` (the seed must be a
    /// prefix of its own expansion, so iteration converges letter by letter).
    Substitution { rules: BTreeMap<char, String>, seed: char },
}

impl TilingSource {
    pub fn describe(&self) -> String {
        match self {
            TilingSource::Periodic { word } => format!("the periodic word ({})^∞", word),
            TilingSource::Substitution { rules, seed } => {
                let rules: Vec<String> =
                    rules.iter().map(|(from, to)| format!("{} → {}", from, to)).collect();
                format!("the substitution {} from seed {}", rules.join(", "), seed)
            }
        }
    }
}

const WINDOW_CAP: usize = 1 << 22;

/// A one-dimensional tiling with a certified factor oracle.
#[derive(Debug, Clone)]
pub struct Tiling1D {
    source: TilingSource,
    window: String,
    max_len: usize,
}

impl Tiling1D {
    /// Builds the factor window for queries up to length `max_len` and
    /// certifies it stable: the window keeps growing until doubling it
    /// changes no factor answer within the bound.
    pub fn build(source: TilingSource, max_len: usize) -> Result<Tiling1D, TilingError> {
        match &source {
            TilingSource::Periodic { word } => {
                if word.is_empty() {
                    return Err(TilingError::Invalid("periodic word is empty".into()));
                }
                if let Some(c) = word.chars().find(|c| !c.is_ascii_alphanumeric()) {
                    return Err(TilingError::Invalid(format!(
                        "tile letters must be ASCII alphanumeric, found {:?}",
                        c
                    )));
                }
            }
            TilingSource::Substitution { rules, seed } => {
                for (from, to) in rules {
                    if !from.is_ascii_alphanumeric()
                        || to.chars().any(|c| !c.is_ascii_alphanumeric())
                    {
                        return Err(TilingError::Invalid(
                            "tile letters must be ASCII alphanumeric".into(),
                        ));
                    }
                    if to.is_empty() {
                        return Err(TilingError::Invalid(format!(
                            "rule for {:?} has an empty expansion",
                            from
                        )));
                    }
                    if let Some(c) = to.chars().find(|c| !rules.contains_key(c)) {
                        return Err(TilingError::Invalid(format!(
                            "letter {:?} (in the rule for {:?}) has no rule",
                            c, from
                        )));
                    }
                }
                let expansion = rules.get(seed).ok_or_else(|| {
                    TilingError::Invalid(format!("seed {:?} has no rule", seed))
                })?;
                if !expansion.starts_with(*seed) {
                    return Err(TilingError::Invalid(format!(
                        "seed {:?} is not a prefix of its own expansion {:?}; \
                         iteration has no fixed point",
                        seed, expansion
                    )));
                }
                if expansion.len() == 1 && rules.len() == 1 {
                    return Err(TilingError::Invalid(
                        "substitution does not grow; use a periodic source instead".into(),
                    ));
                }
            }
        }

        let grow = |w: &str| -> String {
            match &source {
                TilingSource::Periodic { word } => format!("{}{}", w, word),
                TilingSource::Substitution { rules, .. } => {
                    w.chars().map(|c| rules[&c].as_str()).collect()
                }
            }
        };
        let longest_step = match &source {
            TilingSource::Periodic { word } => word.len(),
            TilingSource::Substitution { rules, .. } => {
                rules.values().map(|r| r.len()).max().unwrap()
            }
        };
        let grow_to = |mut w: String, at_least: usize| -> Result<String, TilingError> {
            while w.len() < at_least {
                let next = grow(&w);
                if next.len() <= w.len() {
                    return Err(TilingError::Invalid(
                        "substitution does not grow from the seed".into(),
                    ));
                }
                if next.len() > WINDOW_CAP {
                    return Err(TilingError::WindowBudget { cap: WINDOW_CAP });
                }
                w = next;
            }
            Ok(w)
        };

        let start = match &source {
            TilingSource::Periodic { word } => word.clone(),
            TilingSource::Substitution { seed, .. } => seed.to_string(),
        };
        let target = 2 * max_len + longest_step + 1;
        let mut window = grow_to(start, target)?;
        for _ in 0..16 {
            let doubled = grow_to(window.clone(), 2 * window.len())?;
            if factor_set(&window, max_len) == factor_set(&doubled, max_len) {
                return Ok(Tiling1D { source, window, max_len });
            }
            window = doubled;
        }
        Err(TilingError::WindowBudget { cap: WINDOW_CAP })
    }

    pub fn source(&self) -> &TilingSource {
        &self.source
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn window_len(&self) -> usize {
        self.window.len()
    }

    /// Whether `u` occurs in the tiling.  Only certified up to `max_len`.
    pub fn is_factor(&self, u: &str) -> Result<bool, TilingError> {
        if u.len() > self.max_len {
            return Err(TilingError::OracleWindowExceeded {
                len: u.len(),
                max_len: self.max_len,
            });
        }
        Ok(self.window.contains(u))
    }

    /// All distinct factors of length `1..=n`, sorted.  Each is one
    /// congruence class of connected patches: in one dimension a connected
    /// patch is an interval, and translation forgets its position.
    pub fn factors(&self, n: usize) -> Result<Vec<String>, TilingError> {
        if n > self.max_len {
            return Err(TilingError::OracleWindowExceeded { len: n, max_len: self.max_len });
        }
        Ok(factor_set(&self.window, n).into_iter().map(|f| f.to_string()).collect())
    }

    /// Every patch with every choice of two marked tiles, for all patch
    /// words up to length `n`.
    pub fn pointed_patches(&self, n: usize) -> Result<Vec<PointedPatch>, TilingError> {
        let mut out = Vec::new();
        for word in self.factors(n)? {
            for first in 0..word.len() {
                for second in 0..word.len() {
                    out.push(PointedPatch { word: word.clone(), first, second });
                }
            }
        }
        Ok(out)
    }

    /// The semigroup product.  Aligns `a`'s second mark with `b`'s first:
    /// the two patches always share that tile, so the union is connected;
    /// the product is zero when the overlap disagrees or the merged word
    /// does not occur in the tiling.
    pub fn multiply(
        &self,
        a: &PointedPatch,
        b: &PointedPatch,
    ) -> Result<Option<PointedPatch>, TilingError> {
        let off = a.second as i64 - b.first as i64;
        let (aw, bw) = (a.word.as_bytes(), b.word.as_bytes());
        let lo = 0.max(off) as usize;
        let hi = (aw.len() as i64).min(off + bw.len() as i64) as usize;
        debug_assert!(lo < hi, "the shared marked tile makes the overlap nonempty");
        for k in lo..hi {
            if aw[k] != bw[(k as i64 - off) as usize] {
                return Ok(None);
            }
        }
        let start = 0.min(off);
        let end = (aw.len() as i64).max(off + bw.len() as i64);
        let merged: String = (start..end)
            .map(|p| {
                if (0..aw.len() as i64).contains(&p) {
                    aw[p as usize] as char
                } else {
                    bw[(p - off) as usize] as char
                }
            })
            .collect();
        if merged.len() > self.max_len {
            return Err(TilingError::OracleWindowExceeded {
                len: merged.len(),
                max_len: self.max_len,
            });
        }
        if !self.window.contains(&merged) {
            return Ok(None);
        }
        Ok(Some(PointedPatch {
            word: merged,
            first: (a.first as i64 - start) as usize,
            second: (off + b.second as i64 - start) as usize,
        }))
    }
}

fn factor_set(window: &str, max_len: usize) -> BTreeSet<&str> {
    let mut out = BTreeSet::new();
    for len in 1..=max_len {
        for start in 0..window.len().saturating_sub(len - 1) {
            out.insert(&window[start..start + len]);
        }
    }
    out
}

/// A connected patch with two marked tiles, up to translation: the word of
/// the interval and the positions of the marks within it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedPatch {
    word: String,
    first: usize,
    second: usize,
}

impl PointedPatch {
    pub fn new(
        tiling: &Tiling1D,
        word: &str,
        first: usize,
        second: usize,
    ) -> Result<PointedPatch, TilingError> {
        if first >= word.len() || second >= word.len() {
            return Err(TilingError::Invalid(format!(
                "marks {}, {} outside the patch {:?}",
                first, second, word
            )));
        }
        if !tiling.is_factor(word)? {
            return Err(TilingError::Invalid(format!(
                "{:?} does not occur in the tiling",
                word
            )));
        }
        Ok(PointedPatch { word: word.to_string(), first, second })
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn second(&self) -> usize {
        self.second
    }

    pub fn star(&self) -> PointedPatch {
        PointedPatch { word: self.word.clone(), first: self.second, second: self.first }
    }

    pub fn is_idempotent(&self) -> bool {
        self.first == self.second
    }
}

impl fmt::Display for PointedPatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = |i: usize| self.word.as_bytes()[i] as char;
        write!(
            f,
            "[{}@{}|{}|{}@{}]",
            letter(self.first),
            self.first,
            self.word,
            letter(self.second),
            self.second
        )
    }
}

/// `tiling v1` text format: either a single `periodic <word>` line, or a
/// `substitution` line followed by `rule <letter> -> <word>` lines and a
/// `seed <letter>` line.  Comments (`#`) and blank lines are skipped.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TilingParseError {
    #[error("line {line}: expected `periodic <word>`, `substitution`, `rule <letter> -> <word>` or `seed <letter>`, found {text:?}")]
    BadDirective { line: usize, text: String },
    #[error("line {line}: periodic takes exactly one word")]
    PeriodicArity { line: usize },
    #[error("line {line}: rule syntax is `rule <letter> -> <word>`")]
    RuleSyntax { line: usize },
    #[error("line {line}: seed takes exactly one letter")]
    SeedArity { line: usize },
    #[error("line {line}: rule for {letter:?} already given")]
    DuplicateRule { line: usize, letter: char },
    #[error("line {line}: {found} lines belong to a substitution source")]
    SubstitutionOnly { line: usize, found: String },
    #[error("line {line}: a source was already declared")]
    SecondSource { line: usize },
    #[error("substitution block is missing its `seed` line")]
    MissingSeed,
    #[error("no tiling source declared")]
    Empty,
}

pub fn parse_tiling(input: &str) -> Result<TilingSource, TilingParseError> {
    let mut periodic: Option<String> = None;
    let mut in_substitution = false;
    let mut rules: BTreeMap<char, String> = BTreeMap::new();
    let mut seed: Option<char> = None;
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields[0] {
            "periodic" => {
                if periodic.is_some() || in_substitution {
                    return Err(TilingParseError::SecondSource { line });
                }
                if fields.len() != 2 {
                    return Err(TilingParseError::PeriodicArity { line });
                }
                periodic = Some(fields[1].to_string());
            }
            "substitution" => {
                if periodic.is_some() || in_substitution {
                    return Err(TilingParseError::SecondSource { line });
                }
                in_substitution = true;
            }
            "rule" => {
                if !in_substitution {
                    return Err(TilingParseError::SubstitutionOnly {
                        line,
                        found: "rule".into(),
                    });
                }
                let (from, to) = match fields.as_slice() {
                    [_, from, "->", to] => (*from, *to),
                    _ => return Err(TilingParseError::RuleSyntax { line }),
                };
                let mut from_chars = from.chars();
                let letter = match (from_chars.next(), from_chars.next()) {
                    (Some(c), None) => c,
                    _ => return Err(TilingParseError::RuleSyntax { line }),
                };
                if rules.insert(letter, to.to_string()).is_some() {
                    return Err(TilingParseError::DuplicateRule { line, letter });
                }
            }
            "seed" => {
                if !in_substitution {
                    return Err(TilingParseError::SubstitutionOnly {
                        line,
                        found: "seed".into(),
                    });
                }
                let mut chars = fields.get(1).copied().unwrap_or("").chars();
                match (fields.len(), chars.next(), chars.next()) {
                    (2, Some(c), None) => seed = Some(c),
                    _ => return Err(TilingParseError::SeedArity { line }),
                }
            }
            _ => return Err(TilingParseError::BadDirective { line, text: text.to_string() }),
        }
    }
    if let Some(word) = periodic {
        return Ok(TilingSource::Periodic { word });
    }
    if in_substitution {
        let seed = seed.ok_or(TilingParseError::MissingSeed)?;
        return Ok(TilingSource::Substitution { rules, seed });
    }
    Err(TilingParseError::Empty)
}
