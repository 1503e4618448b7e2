//! Presentation builders for two-bridge links, closed braids (torus links in
//! particular) and closed braids together with their braid axis.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, QuandlePresentation};
use crate::words::{reassociate, GeneratorId, Letter, Sign, Word};

/// Name of the `i`-th generator: `a`, `b`, ..., `y`, then `x25`, ...
pub fn generator_name(i: usize) -> String {
    // `z` is kept for the axis
    if i < 25 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Presentation of `Q_n(L_{p/q})` read off the Schubert normal form, with
/// generators `a`, `b` for the two bridges.
///
/// For `n = 2` orientation is irrelevant and the relations are the unsigned
/// ones, which depend on `q` alone: `a^((ba)^t) = b` for `q = 2t+1`, and
/// `a^((ba)^(t-1) b) = a`, `b^((ab)^(t-1) a) = b` for `q = 2t`. For `n > 2`
/// (and the fundamental quandle) the letters carry the Schubert signs
/// `(-1)^floor(i p / q)`.
pub fn two_bridge(p: u64, q: u64, n: Option<u32>) -> Result<QuandlePresentation> {
    if !(0 < p && p < q) || gcd(p, q) != 1 {
        return Err(Error::InvalidLink(format!(
            "two-bridge link needs 0 < p < q with gcd(p, q) = 1, got {p}/{q}"
        )));
    }
    let signed = n != Some(2);
    // i-th letter (1-based) of the word read along one bridge
    let letter = |i: u64, gen: usize| -> Letter {
        if signed && (i * p / q) % 2 == 1 {
            Letter::neg(gen)
        } else {
            Letter::pos(gen)
        }
    };
    // alternate starting with `first`, q - 1 letters
    let bridge_word = |first: usize| -> Word {
        (1..q)
            .map(|i| {
                let gen = if i % 2 == 1 { first } else { 1 - first };
                letter(i, gen)
            })
            .collect()
    };
    let pres = QuandlePresentation::new(["a", "b"], n);
    if q % 2 == 1 {
        Ok(pres.with_relation(0, bridge_word(1), 1))
    } else {
        Ok(pres
            .with_relation(0, bridge_word(1), 0)
            .with_relation(1, bridge_word(0), 1))
    }
}

/// A braid on `strands` strands; letters are `(i, sign)` for `σ_i^{±1}`,
/// `1 <= i < strands`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, Sign)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, Sign)>) -> Result<BraidWord> {
        if strands < 1 {
            return Err(Error::InvalidLink("a braid needs at least one strand".into()));
        }
        if let Some(&(i, _)) = letters.iter().find(|(i, _)| *i < 1 || *i >= strands) {
            return Err(Error::InvalidLink(format!(
                "braid generator σ{i} out of range for {strands} strands"
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `1 1 -2` style letter lists (commas also separate).
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: i64 = t
                    .parse()
                    .map_err(|_| Error::InvalidLink(format!("bad braid letter `{t}`")))?;
                if v == 0 {
                    return Err(Error::InvalidLink("braid letter 0 is not a generator".into()));
                }
                Ok((v.unsigned_abs() as usize, Sign::from_i32(v.signum() as i32)))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }

    /// `(σ_1 σ_2 ⋯ σ_{p-1})^q`, whose closure is the torus link `T_{p,q}`.
    pub fn torus(p: usize, q: usize) -> Result<BraidWord> {
        if p < 2 {
            return Err(Error::InvalidLink(format!("torus link needs p >= 2, got {p}")));
        }
        let period: Vec<_> = (1..p).map(|i| (i, Sign::Pos)).collect();
        BraidWord::new(p, period.repeat(q))
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, Sign)] {
        &self.letters
    }

    /// Mirror image through a vertical plane: `σ_i ↦ σ_{p-i}^{-1}`.
    pub fn reflect(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|&(i, s)| (self.strands - i, s.flip()))
                .collect(),
        }
    }

    /// Top position each strand returns to after one pass through the braid.
    fn permutation(&self) -> Vec<usize> {
        // occupant[pos] = starting position of the strand now at pos
        let mut occupant: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.letters {
            occupant.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in occupant.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Component index of every top position; components are numbered by
    /// their smallest position.
    pub fn components(&self) -> Vec<usize> {
        let perm = self.permutation();
        let mut comp = vec![usize::MAX; self.strands];
        let mut next = 0;
        for start in 0..self.strands {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut pos = start;
            while comp[pos] == usize::MAX {
                comp[pos] = next;
                pos = perm[pos];
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, s)| (i as i64 * s.as_i32() as i64).to_string())
            .collect();
        write!(f, "{}:{}", self.strands, letters.join(" "))
    }
}

/// Direction of each link component relative to the braid (downwards).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation(Vec<bool>);

impl Orientation {
    pub fn forward(components: usize) -> Orientation {
        Orientation(vec![true; components])
    }

    pub fn reversed(components: usize) -> Orientation {
        Orientation(vec![false; components])
    }

    pub fn from_flags(flags: Vec<bool>) -> Orientation {
        Orientation(flags)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_forward(&self, component: usize) -> bool {
        self.0[component]
    }
}

impl FromStr for Orientation {
    type Err = Error;

    /// `++`, `+-`, ...
    fn from_str(s: &str) -> Result<Orientation> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' => Ok(false),
                other => Err(Error::InvalidLink(format!("bad orientation flag `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Orientation)
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &fwd in &self.0 {
            f.write_str(if fwd { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Quandle element `base^exponent` carried by an arc.
#[derive(Clone, Debug)]
struct Label {
    base: GeneratorId,
    exponent: Word,
}

impl Label {
    fn generator(i: usize) -> Label {
        Label {
            base: GeneratorId(i),
            exponent: Word::empty(),
        }
    }

    /// `self ▷ over` or `self ▷⁻¹ over`.
    fn act(&self, over: &Label, sign: Sign) -> Label {
        let exponent = reassociate(&self.exponent, over.base, &over.exponent, sign);
        Label {
            base: self.base,
            exponent: strip_own_letters(self.base, exponent),
        }
    }
}

/// `a^(a^{±1} w) = a^w`.
fn strip_own_letters(base: GeneratorId, w: Word) -> Word {
    let skip = w.letters().iter().take_while(|l| l.gen == base).count();
    if skip == 0 {
        w
    } else {
        w.letters()[skip..].iter().copied().collect()
    }
}

/// Labels at the bottom of the braid when the top arcs carry the generators.
///
/// At `σ_i` the strand at position `i` passes over the strand at `i + 1`;
/// for `σ_i^{-1}` the strand at `i + 1` is on top. The under label `u`
/// becomes `u ▷ v` or `u ▷⁻¹ v`, where `v` is the over label: the exponent
/// sign is the crossing sign times the direction of the over component. The
/// under component's direction plays no role.
fn bottom_labels(braid: &BraidWord, orient: &Orientation) -> Vec<Label> {
    let comps = braid.components();
    let mut labels: Vec<(Label, usize)> = (0..braid.strands)
        .map(|pos| (Label::generator(pos), comps[pos]))
        .collect();
    for &(i, sign) in &braid.letters {
        let (left, right) = (i - 1, i);
        let (over, under) = match sign {
            Sign::Pos => (left, right),
            Sign::Neg => (right, left),
        };
        let (over_label, over_comp) = labels[over].clone();
        let direction = if orient.is_forward(over_comp) {
            Sign::Pos
        } else {
            Sign::Neg
        };
        let acted = labels[under].0.act(&over_label, sign.times(direction));
        labels[under].0 = acted;
        labels.swap(left, right);
    }
    labels.into_iter().map(|(l, _)| l).collect()
}

fn check_orientation(braid: &BraidWord, orient: &Orientation) -> Result<()> {
    let expected = braid.component_count();
    if orient.len() != expected {
        return Err(Error::OrientationMismatch {
            expected,
            got: orient.len(),
        });
    }
    Ok(())
}

/// Presentation of the closure of `braid`: one generator per top arc, one
/// relation per strand equating its bottom label with the top generator.
pub fn braid_closure(
    braid: &BraidWord,
    orient: &Orientation,
    n: Option<u32>,
) -> Result<QuandlePresentation> {
    check_orientation(braid, orient)?;
    let names: Vec<String> = (0..braid.strands).map(generator_name).collect();
    let mut pres = QuandlePresentation::new(names, n);
    for (pos, label) in bottom_labels(braid, orient).into_iter().enumerate() {
        if label.base.0 == pos && label.exponent.is_empty() {
            continue;
        }
        pres = pres.with_relation(label.base.0, label.exponent, pos);
    }
    Ok(pres)
}

/// Torus link `T_{p,q}` as the closure of `(σ_1 ⋯ σ_{p-1})^q`.
pub fn torus(p: usize, q: usize, orient: &Orientation, n: Option<u32>) -> Result<QuandlePresentation> {
    braid_closure(&BraidWord::torus(p, q)?, orient, n)
}

/// `Q_2(T_{2,q} ∪ A)`, with `c` the meridian of the axis:
/// odd `q = 2t+1`: `c^(ab) = c, a^((ba)^t b c) = b, b^((ab)^t c) = a`;
/// even `q = 2t`: `c^(ab) = c, a^((ba)^(t-1) b c) = a, b^((ab)^t c) = b`.
pub fn torus_with_axis(q: usize) -> Result<QuandlePresentation> {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    if q < 2 {
        return Err(Error::InvalidLink(format!("torus link with axis needs q >= 2, got {q}")));
    }
    let t = q / 2;
    let ab = Word::positive(&[A, B]);
    let ba = Word::positive(&[B, A]);
    let pres = QuandlePresentation::new(["a", "b", "c"], Some(2)).with_relation(C, ab.clone(), C);
    let pres = if q % 2 == 1 {
        pres.with_relation(A, ba.pow(t).concat(&Word::positive(&[B, C])), B)
            .with_relation(B, ab.pow(t).concat(&Word::positive(&[C])), A)
    } else {
        pres.with_relation(A, ba.pow(t - 1).concat(&Word::positive(&[B, C])), A)
            .with_relation(B, ab.pow(t).concat(&Word::positive(&[C])), B)
    };
    Ok(pres)
}

/// Closure of `braid` together with its axis, an unknotted circle around all
/// strands whose meridian is the extra generator `z`. The axis passes under
/// every strand at the closure line, giving `z^(a b ⋯) = z`, and every strand
/// passes under the axis once, appending `z` to its closure relation.
pub fn braid_closure_with_axis(braid: &BraidWord, n: Option<u32>) -> Result<QuandlePresentation> {
    let strands = braid.strands;
    let orient = Orientation::forward(braid.component_count());
    let axis = strands;
    let mut names: Vec<String> = (0..strands).map(generator_name).collect();
    names.push("z".into());
    let all_strands: Vec<usize> = (0..strands).collect();
    let mut pres =
        QuandlePresentation::new(names, n).with_relation(axis, Word::positive(&all_strands), axis);
    for (pos, label) in bottom_labels(braid, &orient).into_iter().enumerate() {
        let exponent = label.exponent.push(Letter::pos(axis));
        pres = pres.with_relation(label.base.0, exponent, pos);
    }
    Ok(pres)
}

/// Canonical presentations for a few named links.
pub fn named(tag: &str, n: Option<u32>) -> Result<QuandlePresentation> {
    match tag {
        "unknot" => Ok(QuandlePresentation::new(["a"], n)),
        "hopf" => braid_closure(&BraidWord::torus(2, 2)?, &Orientation::forward(2), n),
        "trefoil" => torus(2, 3, &Orientation::forward(1), n),
        "figure-eight" => two_bridge(3, 5, n),
        "trefoil-axis-a" => torus_with_axis(3),
        "trefoil-axis-b" => braid_closure_with_axis(&BraidWord::torus(3, 2)?, n),
        other => Err(Error::InvalidLink(format!("unknown link `{other}`"))),
    }
}

/// A link description as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkSpec {
    TwoBridge { p: u64, q: u64 },
    Torus { p: usize, q: usize, orientation: Option<Orientation> },
    TorusAxis { q: usize },
    Braid(BraidWord),
    BraidAxis(BraidWord),
    Named(String),
    File(String),
}

impl FromStr for LinkSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<LinkSpec> {
        let bad = |msg: &str| Error::InvalidLink(format!("{msg}: `{s}`"));
        let int = |t: &str| -> Result<u64> {
            t.trim().parse().map_err(|_| bad("expected an integer"))
        };
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, Some(r)),
            None => (s, None),
        };
        match (kind, rest) {
            ("two-bridge", Some(r)) => {
                let (p, q) = r.split_once('/').ok_or_else(|| bad("expected two-bridge:p/q"))?;
                Ok(LinkSpec::TwoBridge { p: int(p)?, q: int(q)? })
            }
            ("torus", Some(r)) => {
                let (pq, orient) = match r.split_once(':') {
                    Some((pq, o)) => (pq, Some(o.parse()?)),
                    None => (r, None),
                };
                let (p, q) = pq.split_once(',').ok_or_else(|| bad("expected torus:p,q"))?;
                Ok(LinkSpec::Torus {
                    p: int(p)? as usize,
                    q: int(q)? as usize,
                    orientation: orient,
                })
            }
            ("torus-axis", Some(r)) => Ok(LinkSpec::TorusAxis { q: int(r)? as usize }),
            ("braid", Some(r)) | ("braid-axis", Some(r)) => {
                let (p, letters) = r.split_once(':').ok_or_else(|| bad("expected braid:p:letters"))?;
                let braid = BraidWord::parse(int(p)? as usize, letters)?;
                Ok(if kind == "braid" {
                    LinkSpec::Braid(braid)
                } else {
                    LinkSpec::BraidAxis(braid)
                })
            }
            ("file", Some(path)) => Ok(LinkSpec::File(path.to_string())),
            (tag, None) => {
                named(tag, None)?;
                Ok(LinkSpec::Named(tag.to_string()))
            }
            _ => Err(bad("unrecognized link spec")),
        }
    }
}

impl LinkSpec {
    /// Builds the presentation. `n = None` asks for the fundamental quandle
    /// (a file's own `n` line is kept unless `n` is given).
    pub fn presentation(&self, n: Option<u32>) -> Result<QuandlePresentation> {
        match self {
            LinkSpec::TwoBridge { p, q } => two_bridge(*p, *q, n),
            LinkSpec::Torus { p, q, orientation } => {
                let braid = BraidWord::torus(*p, *q)?;
                let orient = orientation
                    .clone()
                    .unwrap_or_else(|| Orientation::forward(braid.component_count()));
                braid_closure(&braid, &orient, n)
            }
            LinkSpec::TorusAxis { q } => {
                if n.is_some_and(|n| n != 2) {
                    return Err(Error::InvalidLink(
                        "torus links with axis are only built for n = 2".into(),
                    ));
                }
                torus_with_axis(*q)
            }
            LinkSpec::Braid(b) => braid_closure(b, &Orientation::forward(b.component_count()), n),
            LinkSpec::BraidAxis(b) => braid_closure_with_axis(b, n),
            LinkSpec::Named(tag) => named(tag, n),
            LinkSpec::File(path) => {
                let mut pres = parse_presentation(&std::fs::read_to_string(path)?)?;
                if n.is_some() {
                    pres.exponent = n;
                }
                Ok(pres)
            }
        }
    }
}
