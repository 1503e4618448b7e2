//! Quandle presentations and the universal relations derived from them.
//!
//! Text format, one statement per line, `#` starts a comment:
//!
//! ```text
//! gens a b
//! n 2
//! rel a : b a b a = b
//! ```

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{self, cyclic_reduce, invert, normalize_mod_n, GeneratorId, Letter, Word};

/// `base^exponent = target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimaryRelation {
    pub base: GeneratorId,
    pub exponent: Word,
    pub target: GeneratorId,
}

impl PrimaryRelation {
    pub fn new(base: usize, exponent: Word, target: usize) -> PrimaryRelation {
        PrimaryRelation {
            base: GeneratorId(base),
            exponent,
            target: GeneratorId(target),
        }
    }

    fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        [self.base, self.target]
            .into_iter()
            .chain(self.exponent.letters().iter().map(|l| l.gen))
    }
}

/// A relation `y^word = y` holding for every element `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniversalRelation {
    word: Word,
}

impl UniversalRelation {
    /// `None` for the empty word, which imposes nothing.
    pub fn new(word: Word) -> Option<UniversalRelation> {
        if word.is_empty() {
            None
        } else {
            Some(UniversalRelation { word })
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Key identifying the relation up to cyclic rotation and inversion.
    fn canonical_key(&self) -> Vec<Letter> {
        let forward = self.word.letters().to_vec();
        let backward = invert(&self.word).letters().to_vec();
        let mut best: Option<Vec<Letter>> = None;
        for seq in [forward, backward] {
            for k in 0..seq.len() {
                let rotated: Vec<Letter> = seq[k..].iter().chain(&seq[..k]).copied().collect();
                if best.as_ref().is_none_or(|b| rotated < *b) {
                    best = Some(rotated);
                }
            }
        }
        best.unwrap_or_default()
    }
}

/// Universal relation `y^(~w x_j w ~x_k) = y` implied by `x_j^w = x_k`,
/// cyclically reduced. `None` when it is trivially satisfied.
pub fn secondary_relation(r: &PrimaryRelation) -> Option<UniversalRelation> {
    let w = &r.exponent;
    let word = invert(w)
        .push(Letter {
            gen: r.base,
            sign: words::Sign::Pos,
        })
        .concat(w)
        .push(Letter {
            gen: r.target,
            sign: words::Sign::Neg,
        });
    UniversalRelation::new(cyclic_reduce(&word))
}

/// `y^(x_j^n) = y` for every generator `x_j`.
pub fn n_relations(p: &QuandlePresentation) -> Result<Vec<UniversalRelation>> {
    let n = p.exponent.ok_or(Error::NoExponent)?;
    Ok((0..p.generators.len())
        .filter_map(|g| UniversalRelation::new(Word::letter(Letter::pos(g)).pow(n as usize)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diagnostic {
    NoGenerators,
    BadName(String),
    DuplicateName(String),
    /// Relation `relation` (0-based) mentions generator index `generator`,
    /// which is not declared.
    UnknownGenerator { relation: usize, generator: usize },
    ExponentTooSmall(u32),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoGenerators => write!(f, "no generators declared"),
            Diagnostic::BadName(name) => write!(f, "generator name `{name}` is not an identifier"),
            Diagnostic::DuplicateName(name) => write!(f, "generator `{name}` declared twice"),
            Diagnostic::UnknownGenerator {
                relation,
                generator,
            } => write!(
                f,
                "relation {} references undeclared generator #{generator}",
                relation + 1
            ),
            Diagnostic::ExponentTooSmall(n) => write!(f, "quandle exponent {n} is below 2"),
        }
    }
}

/// Generators, primary relations and an optional quandle exponent `n`.
/// Without `n` this presents the fundamental quandle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandlePresentation {
    pub generators: Vec<String>,
    pub relations: Vec<PrimaryRelation>,
    pub exponent: Option<u32>,
}

impl QuandlePresentation {
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        exponent: Option<u32>,
    ) -> QuandlePresentation {
        QuandlePresentation {
            generators: generators.into_iter().map(Into::into).collect(),
            relations: Vec::new(),
            exponent,
        }
    }

    pub fn with_relation(mut self, base: usize, exponent: Word, target: usize) -> Self {
        self.relations.push(PrimaryRelation::new(base, exponent, target));
        self
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_by_name(&self, name: &str) -> Option<GeneratorId> {
        self.generators.iter().position(|g| g == name).map(GeneratorId)
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        if self.generators.is_empty() {
            diags.push(Diagnostic::NoGenerators);
        }
        let mut seen = HashSet::new();
        for name in &self.generators {
            if !words::is_identifier(name) {
                diags.push(Diagnostic::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                diags.push(Diagnostic::DuplicateName(name.clone()));
            }
        }
        for (i, rel) in self.relations.iter().enumerate() {
            let mut reported = HashSet::new();
            for g in rel.generators() {
                if g.0 >= self.generators.len() && reported.insert(g) {
                    diags.push(Diagnostic::UnknownGenerator {
                        relation: i,
                        generator: g.0,
                    });
                }
            }
        }
        if let Some(n) = self.exponent {
            if n < 2 {
                diags.push(Diagnostic::ExponentTooSmall(n));
            }
        }
        diags
    }

    pub fn check(&self) -> Result<()> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidPresentation(diags))
        }
    }

    /// Secondary relations in relation order, without trivial ones. For
    /// `n = 2` the words are also sign-normalized.
    pub fn secondary_relations(&self) -> Vec<UniversalRelation> {
        self.relations
            .iter()
            .filter_map(secondary_relation)
            .filter_map(|r| match self.exponent {
                Some(n) => UniversalRelation::new(normalize_mod_n(r.word(), n)),
                None => Some(r),
            })
            .collect()
    }

    /// Everything traced at each vertex during enumeration: the n-quandle
    /// relations, then the secondary relations, deduplicated up to rotation
    /// and inversion (first occurrence kept).
    pub fn universal_relations(&self) -> Vec<UniversalRelation> {
        let mut all = n_relations(self).unwrap_or_default();
        all.extend(self.secondary_relations());
        let mut seen = HashSet::new();
        all.retain(|r| seen.insert(r.canonical_key()));
        all
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.generators.join(" "))?;
        if let Some(n) = self.exponent {
            writeln!(f, "n {n}")?;
        }
        let name = |g: GeneratorId| {
            self.generators
                .get(g.0)
                .cloned()
                .unwrap_or_else(|| format!("x{}", g.0))
        };
        for rel in &self.relations {
            let word = rel.exponent.display(&self.generators).to_string();
            if word.is_empty() {
                writeln!(f, "rel {} : = {}", name(rel.base), name(rel.target))?;
            } else {
                writeln!(f, "rel {} : {} = {}", name(rel.base), word, name(rel.target))?;
            }
        }
        Ok(())
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the line-oriented presentation format.
pub fn parse_presentation(text: &str) -> Result<QuandlePresentation> {
    let mut pres: Option<QuandlePresentation> = None;
    let mut saw_n = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let Some((kw_off, keyword)) = words::tokens(line).next() else {
            continue;
        };
        let col = |offset: usize| offset + 1;
        let rest_off = kw_off + keyword.len();
        let rest = &line[rest_off..];
        match keyword {
            "gens" => {
                if pres.is_some() {
                    return Err(parse_error(line_no, col(kw_off), "duplicate `gens` line"));
                }
                let mut names: Vec<String> = Vec::new();
                for (off, name) in words::tokens(rest) {
                    if !words::is_identifier(name) {
                        return Err(parse_error(
                            line_no,
                            col(rest_off + off),
                            format!("`{name}` is not a generator name"),
                        ));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(parse_error(
                            line_no,
                            col(rest_off + off),
                            format!("generator `{name}` declared twice"),
                        ));
                    }
                    names.push(name.to_string());
                }
                if names.is_empty() {
                    return Err(parse_error(line_no, col(kw_off), "`gens` needs at least one name"));
                }
                pres = Some(QuandlePresentation::new(names, None));
            }
            "n" => {
                let Some(p) = pres.as_mut() else {
                    return Err(parse_error(line_no, col(kw_off), "`n` before `gens`"));
                };
                if saw_n {
                    return Err(parse_error(line_no, col(kw_off), "duplicate `n` line"));
                }
                let toks: Vec<_> = words::tokens(rest).collect();
                let [(off, value)] = toks.as_slice() else {
                    return Err(parse_error(line_no, col(kw_off), "`n` takes one integer"));
                };
                let n: u32 = value.parse().map_err(|_| {
                    parse_error(line_no, col(rest_off + off), format!("`{value}` is not an integer"))
                })?;
                if n < 2 {
                    return Err(parse_error(
                        line_no,
                        col(rest_off + off),
                        format!("quandle exponent must be at least 2, got {n}"),
                    ));
                }
                p.exponent = Some(n);
                saw_n = true;
            }
            "rel" => {
                let rel = parse_relation(rest, rest_off, line_no, pres.as_ref())?;
                // parse_relation only succeeds once generators are declared
                if let Some(p) = pres.as_mut() {
                    p.relations.push(rel);
                }
            }
            other => {
                return Err(parse_error(
                    line_no,
                    col(kw_off),
                    format!("unknown statement `{other}`"),
                ))
            }
        }
    }
    pres.ok_or_else(|| parse_error(1, 1, "missing `gens` line"))
}

fn parse_relation(
    text: &str,
    base_off: usize,
    line_no: usize,
    pres: Option<&QuandlePresentation>,
) -> Result<PrimaryRelation> {
    let col = |offset: usize| base_off + offset + 1;
    let colon = text
        .find(':')
        .ok_or_else(|| parse_error(line_no, col(0), "expected `rel <gen> : <word> = <gen>`"))?;
    let equals = text[colon..]
        .find('=')
        .map(|i| i + colon)
        .ok_or_else(|| parse_error(line_no, col(colon), "missing `=` in relation"))?;

    let lookup = |segment: &str, seg_off: usize| -> Result<GeneratorId> {
        let toks: Vec<_> = words::tokens(segment).collect();
        let [(off, name)] = toks.as_slice() else {
            return Err(parse_error(line_no, col(seg_off), "expected exactly one generator"));
        };
        resolve(pres, name).ok_or_else(|| {
            parse_error(
                line_no,
                col(seg_off + off),
                format!("undeclared generator `{name}`"),
            )
        })
    };

    let base = lookup(&text[..colon], 0)?;
    let word_text = &text[colon + 1..equals];
    let exponent = Word::parse(word_text, |name| resolve(pres, name))
        .map_err(|(off, msg)| parse_error(line_no, col(colon + 1 + off), msg))?;
    let target = lookup(&text[equals + 1..], equals + 1)?;
    Ok(PrimaryRelation {
        base,
        exponent,
        target,
    })
}

fn resolve(pres: Option<&QuandlePresentation>, name: &str) -> Option<GeneratorId> {
    pres.and_then(|p| p.generator_by_name(name))
}

impl FromStr for QuandlePresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}
