use crate::error::{Error, Result};
use crate::mdp::{significant_lines, Mdp};
use crate::vertex_set::VertexSet;

/// The six objective kinds. Reach/safety/Büchi/coBüchi are given by target
/// sets, Streett and Rabin by (L, U) pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Reach,
    Safety,
    Buchi,
    CoBuchi,
    Streett,
    Rabin,
}

impl Kind {
    pub fn uses_pairs(self) -> bool {
        matches!(self, Kind::Streett | Kind::Rabin)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Reach => "reach",
            Kind::Safety => "safety",
            Kind::Buchi => "buchi",
            Kind::CoBuchi => "cobuchi",
            Kind::Streett => "streett",
            Kind::Rabin => "rabin",
        }
    }
}

/// How multiple sets/pairs combine. An objective mode asks for one strategy
/// for the combined objective; a query mode combines the per-objective
/// winning sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Single,
    ConjObjective,
    DisjObjective,
    ConjQuery,
    DisjQuery,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Single => "single",
            Mode::ConjObjective => "conj-obj",
            Mode::DisjObjective => "disj-obj",
            Mode::ConjQuery => "conj-query",
            Mode::DisjQuery => "disj-query",
        }
    }
}

/// A Streett or Rabin pair (L, U).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub l: VertexSet,
    pub u: VertexSet,
}

/// A parsed objective: kind, combination mode, and either target sets or
/// pairs (never both).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveSpec {
    pub kind: Kind,
    pub mode: Mode,
    pub sets: Vec<VertexSet>,
    pub pairs: Vec<Pair>,
}

impl ObjectiveSpec {
    pub fn with_sets(kind: Kind, mode: Mode, sets: Vec<VertexSet>) -> Result<Self> {
        let spec = ObjectiveSpec {
            kind,
            mode,
            sets,
            pairs: Vec::new(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_pairs(kind: Kind, mode: Mode, pairs: Vec<Pair>) -> Result<Self> {
        let spec = ObjectiveSpec {
            kind,
            mode,
            sets: Vec::new(),
            pairs,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Number of sets or pairs.
    pub fn k(&self) -> usize {
        if self.kind.uses_pairs() {
            self.pairs.len()
        } else {
            self.sets.len()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.kind.uses_pairs() {
            if !self.sets.is_empty() {
                return Err(Error::Invalid(format!(
                    "{} objectives take pairs, not sets",
                    self.kind.as_str()
                )));
            }
            if self.pairs.is_empty() {
                return Err(Error::Invalid("at least one pair required".into()));
            }
        } else {
            if !self.pairs.is_empty() {
                return Err(Error::Invalid(format!(
                    "{} objectives take sets, not pairs",
                    self.kind.as_str()
                )));
            }
            if self.sets.is_empty() {
                return Err(Error::Invalid("at least one target set required".into()));
            }
        }
        if self.mode == Mode::Single && self.k() != 1 {
            return Err(Error::Invalid(format!(
                "mode single requires exactly one set/pair, got {}",
                self.k()
            )));
        }
        Ok(())
    }
}

fn parse_kind(tok: &str) -> Option<Kind> {
    Some(match tok {
        "reach" => Kind::Reach,
        "safety" => Kind::Safety,
        "buchi" => Kind::Buchi,
        "cobuchi" => Kind::CoBuchi,
        "streett" => Kind::Streett,
        "rabin" => Kind::Rabin,
        _ => return None,
    })
}

fn parse_mode(tok: &str) -> Option<Mode> {
    Some(match tok {
        "single" => Mode::Single,
        "conj-obj" => Mode::ConjObjective,
        "disj-obj" => Mode::DisjObjective,
        "conj-query" => Mode::ConjQuery,
        "disj-query" => Mode::DisjQuery,
        _ => return None,
    })
}

/// Parses the objective format against a concrete MDP:
///
/// ```text
/// objective <reach|safety|buchi|cobuchi|streett|rabin>
/// mode <single|conj-obj|disj-obj|conj-query|disj-query>
/// set <i> <v>*            (set kinds)
/// pair <i> L <v>* U <v>*  (pair kinds)
/// ```
///
/// Indices `i` must be contiguous starting from 0.
pub fn parse_objective(text: &str, mdp: &Mdp) -> Result<ObjectiveSpec> {
    let n = mdp.vertex_count();
    let mut lines = significant_lines(text);

    let (ln, kline) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty input, expected `objective <kind>`"))?;
    let mut toks = kline.split_whitespace();
    if toks.next() != Some("objective") {
        return Err(Error::parse(ln, "expected `objective <kind>`"));
    }
    let kind = toks
        .next()
        .and_then(parse_kind)
        .ok_or_else(|| Error::parse(ln, "unknown objective kind"))?;

    let (ln, mline) = lines
        .next()
        .ok_or_else(|| Error::parse(ln, "expected `mode <mode>`"))?;
    let mut toks = mline.split_whitespace();
    if toks.next() != Some("mode") {
        return Err(Error::parse(ln, "expected `mode <mode>`"));
    }
    let mode = toks
        .next()
        .and_then(parse_mode)
        .ok_or_else(|| Error::parse(ln, "unknown mode"))?;

    let mut sets: Vec<VertexSet> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for (ln, line) in lines {
        let mut toks = line.split_whitespace().peekable();
        match toks.next() {
            Some("set") => {
                if kind.uses_pairs() {
                    return Err(Error::parse(
                        ln,
                        format!("{} objectives use `pair` lines", kind.as_str()),
                    ));
                }
                let idx = parse_id(toks.next(), ln, "set index")?;
                if idx != sets.len() {
                    return Err(Error::parse(ln, format!("expected set index {}", sets.len())));
                }
                let mut set = VertexSet::empty(n);
                for t in toks {
                    let v = parse_vertex(t, n, ln)?;
                    set.insert(v);
                }
                sets.push(set);
            }
            Some("pair") => {
                if !kind.uses_pairs() {
                    return Err(Error::parse(
                        ln,
                        format!("{} objectives use `set` lines", kind.as_str()),
                    ));
                }
                let idx = parse_id(toks.next(), ln, "pair index")?;
                if idx != pairs.len() {
                    return Err(Error::parse(ln, format!("expected pair index {}", pairs.len())));
                }
                if toks.next() != Some("L") {
                    return Err(Error::parse(ln, "expected `L` after pair index"));
                }
                let mut l = VertexSet::empty(n);
                let mut saw_u = false;
                for t in toks.by_ref() {
                    if t == "U" {
                        saw_u = true;
                        break;
                    }
                    l.insert(parse_vertex(t, n, ln)?);
                }
                if !saw_u {
                    return Err(Error::parse(ln, "expected `U` separator in pair"));
                }
                let mut u = VertexSet::empty(n);
                for t in toks {
                    u.insert(parse_vertex(t, n, ln)?);
                }
                pairs.push(Pair { l, u });
            }
            Some(tok) => return Err(Error::parse(ln, format!("unknown directive `{tok}`"))),
            None => unreachable!(),
        }
    }

    if kind.uses_pairs() {
        ObjectiveSpec::with_pairs(kind, mode, pairs)
    } else {
        ObjectiveSpec::with_sets(kind, mode, sets)
    }
}

fn parse_id(tok: Option<&str>, ln: usize, what: &str) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(ln, format!("expected {what}")))
}

fn parse_vertex(tok: &str, n: usize, ln: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad vertex id `{tok}`")))?;
    if v >= n {
        return Err(Error::parse(ln, format!("vertex {v} out of range")));
    }
    Ok(v)
}

/// Canonical text form accepted back by [`parse_objective`].
pub fn serialize_objective(spec: &ObjectiveSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("objective {}\n", spec.kind.as_str()));
    out.push_str(&format!("mode {}\n", spec.mode.as_str()));
    for (i, set) in spec.sets.iter().enumerate() {
        out.push_str(&format!("set {i}"));
        for v in set {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for (i, pair) in spec.pairs.iter().enumerate() {
        out.push_str(&format!("pair {i} L"));
        for v in &pair.l {
            out.push_str(&format!(" {v}"));
        }
        out.push_str(" U");
        for v in &pair.u {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}
