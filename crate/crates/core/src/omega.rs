//! Finite sets Ω with six binary operations, and the diassociative, EDS and
//! ETS axiom systems on them.
//!
//! Elements of Ω are the indices `0..n`. The operations are written
//! `←` ([`OmegaOp::LeftArrow`]), `→` ([`OmegaOp::RightArrow`]),
//! `⊲` ([`OmegaOp::LTri`]), `⊳` ([`OmegaOp::RTri`]), `·` ([`OmegaOp::Dot`])
//! and `∗` ([`OmegaOp::Star`]).

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaOp {
    LeftArrow,
    RightArrow,
    LTri,
    RTri,
    Dot,
    Star,
}

impl OmegaOp {
    pub const ALL: [OmegaOp; 6] = [
        OmegaOp::LeftArrow,
        OmegaOp::RightArrow,
        OmegaOp::LTri,
        OmegaOp::RTri,
        OmegaOp::Dot,
        OmegaOp::Star,
    ];

    /// Key used in the JSON table format.
    pub fn json_key(self) -> &'static str {
        match self {
            OmegaOp::LeftArrow => "left_arrow",
            OmegaOp::RightArrow => "right_arrow",
            OmegaOp::LTri => "ltri",
            OmegaOp::RTri => "rtri",
            OmegaOp::Dot => "dot",
            OmegaOp::Star => "star",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OmegaOp::LeftArrow => "←",
            OmegaOp::RightArrow => "→",
            OmegaOp::LTri => "⊲",
            OmegaOp::RTri => "⊳",
            OmegaOp::Dot => "·",
            OmegaOp::Star => "∗",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Ω = {0, …, n−1} together with six operation tables.
///
/// Row index is the first operand: `op(a, b) = table[a][b]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OmegaTable {
    size: usize,
    tables: [Vec<usize>; 6],
}

/// The on-disk JSON form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaTableJson {
    pub size: usize,
    pub left_arrow: Vec<Vec<usize>>,
    pub right_arrow: Vec<Vec<usize>>,
    pub ltri: Vec<Vec<usize>>,
    pub rtri: Vec<Vec<usize>>,
    pub dot: Vec<Vec<usize>>,
    pub star: Vec<Vec<usize>>,
}

impl OmegaTable {
    /// Builds a table from six functions on `0..size`.
    pub fn from_fn(size: usize, mut f: impl FnMut(OmegaOp, usize, usize) -> usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::MalformedTable("size must be positive".into()));
        }
        let mut tables: [Vec<usize>; 6] = Default::default();
        for op in OmegaOp::ALL {
            let t = &mut tables[op.index()];
            for a in 0..size {
                for b in 0..size {
                    let v = f(op, a, b);
                    if v >= size {
                        return Err(Error::MalformedTable(format!(
                            "{}[{a}][{b}] = {v} is outside 0..{size}",
                            op.json_key()
                        )));
                    }
                    t.push(v);
                }
            }
        }
        Ok(Self { size, tables })
    }

    pub fn from_rows(size: usize, rows: [&[Vec<usize>]; 6]) -> Result<Self> {
        for (op, r) in OmegaOp::ALL.iter().zip(rows.iter()) {
            if r.len() != size || r.iter().any(|row| row.len() != size) {
                return Err(Error::MalformedTable(format!(
                    "table `{}` is not {size}×{size}",
                    op.json_key()
                )));
            }
        }
        Self::from_fn(size, |op, a, b| rows[op.index()][a][b])
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: OmegaTableJson = serde_json::from_str(s)?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> OmegaTableJson {
        let rows = |op: OmegaOp| -> Vec<Vec<usize>> {
            (0..self.size)
                .map(|a| (0..self.size).map(|b| self.apply(op, a, b)).collect())
                .collect()
        };
        OmegaTableJson {
            size: self.size,
            left_arrow: rows(OmegaOp::LeftArrow),
            right_arrow: rows(OmegaOp::RightArrow),
            ltri: rows(OmegaOp::LTri),
            rtri: rows(OmegaOp::RTri),
            dot: rows(OmegaOp::Dot),
            star: rows(OmegaOp::Star),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("table serializes")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn apply(&self, op: OmegaOp, a: usize, b: usize) -> usize {
        self.tables[op.index()][a * self.size + b]
    }

    #[inline]
    pub fn left(&self, a: usize, b: usize) -> usize {
        self.apply(OmegaOp::LeftArrow, a, b)
    }
    #[inline]
    pub fn right(&self, a: usize, b: usize) -> usize {
        self.apply(OmegaOp::RightArrow, a, b)
    }
    #[inline]
    pub fn ltri(&self, a: usize, b: usize) -> usize {
        self.apply(OmegaOp::LTri, a, b)
    }
    #[inline]
    pub fn rtri(&self, a: usize, b: usize) -> usize {
        self.apply(OmegaOp::RTri, a, b)
    }
    #[inline]
    pub fn dot(&self, a: usize, b: usize) -> usize {
        self.apply(OmegaOp::Dot, a, b)
    }
    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.apply(OmegaOp::Star, a, b)
    }

    pub fn check_element(&self, e: usize) -> Result<()> {
        if e < self.size {
            Ok(())
        } else {
            Err(Error::OmegaOutOfRange {
                elem: e,
                size: self.size,
            })
        }
    }

    /// The opposite structure: `←ᵒᵖ(a,b) = b → a`, `→ᵒᵖ(a,b) = b ← a`,
    /// `⊲ᵒᵖ(a,b) = b ⊳ a`, `⊳ᵒᵖ(a,b) = b ⊲ a`, and `·`, `∗` transposed.
    pub fn opposite(&self) -> OmegaTable {
        Self::from_fn(self.size, |op, a, b| match op {
            OmegaOp::LeftArrow => self.right(b, a),
            OmegaOp::RightArrow => self.left(b, a),
            OmegaOp::LTri => self.rtri(b, a),
            OmegaOp::RTri => self.ltri(b, a),
            OmegaOp::Dot => self.dot(b, a),
            OmegaOp::Star => self.star(b, a),
        })
        .expect("opposite of a valid table is valid")
    }

    pub fn is_commutative(&self) -> bool {
        *self == self.opposite()
    }

    /// Uniformly random table, used for fuzzing the axiom equivalences.
    pub fn random(size: usize, rng: &mut impl Rng) -> OmegaTable {
        Self::from_fn(size, |_, _, _| rng.gen_range(0..size)).expect("size is positive")
    }
}

impl TryFrom<OmegaTableJson> for OmegaTable {
    type Error = Error;
    fn try_from(raw: OmegaTableJson) -> Result<Self> {
        Self::from_rows(
            raw.size,
            [
                &raw.left_arrow,
                &raw.right_arrow,
                &raw.ltri,
                &raw.rtri,
                &raw.dot,
                &raw.star,
            ],
        )
    }
}

impl fmt::Debug for OmegaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OmegaTable({})", self.to_json_string())
    }
}

impl fmt::Display for OmegaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in OmegaOp::ALL {
            writeln!(f, "{} ({})", op.symbol(), op.json_key())?;
            for a in 0..self.size {
                let row: Vec<String> = (0..self.size)
                    .map(|b| self.apply(op, a, b).to_string())
                    .collect();
                writeln!(f, "  {}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

/// One identity in three variables over Ω.
pub struct OmegaAxiom {
    pub id: &'static str,
    pub text: &'static str,
    pub eval: fn(&OmegaTable, usize, usize, usize) -> (usize, usize),
}

macro_rules! axiom {
    ($id:literal, $text:literal, |$t:ident, $a:ident, $b:ident, $c:ident| $lhs:expr, $rhs:expr) => {
        OmegaAxiom {
            id: $id,
            text: $text,
            eval: |$t: &OmegaTable, $a: usize, $b: usize, $c: usize| ($lhs, $rhs),
        }
    };
}

/// The five diassociative identities.
pub static DIASSOCIATIVE: [OmegaAxiom; 5] = [
    axiom!(
        "D1",
        "(a ← b) ← c = a ← (b ← c)",
        |t, a, b, c| t.left(t.left(a, b), c),
        t.left(a, t.left(b, c))
    ),
    axiom!(
        "D2",
        "(a ← b) ← c = a ← (b → c)",
        |t, a, b, c| t.left(t.left(a, b), c),
        t.left(a, t.right(b, c))
    ),
    axiom!(
        "D3",
        "(a → b) ← c = a → (b ← c)",
        |t, a, b, c| t.left(t.right(a, b), c),
        t.right(a, t.left(b, c))
    ),
    axiom!(
        "D4",
        "(a → b) → c = a → (b → c)",
        |t, a, b, c| t.right(t.right(a, b), c),
        t.right(a, t.right(b, c))
    ),
    axiom!(
        "D5",
        "(a ← b) → c = a → (b → c)",
        |t, a, b, c| t.right(t.left(a, b), c),
        t.right(a, t.right(b, c))
    ),
];

/// The ten identities that extend a diassociative semigroup to an EDS.
pub static EDS: [OmegaAxiom; 10] = [
    axiom!(
        "E1",
        "a ⊳ (b ← c) = a ⊳ b",
        |t, a, b, c| t.rtri(a, t.left(b, c)),
        t.rtri(a, b)
    ),
    axiom!(
        "E2",
        "(a → b) ⊲ c = b ⊲ c",
        |t, a, b, c| t.ltri(t.right(a, b), c),
        t.ltri(b, c)
    ),
    axiom!(
        "E3",
        "(a ⊲ b) ← ((a ← b) ⊲ c) = a ⊲ (b ← c)",
        |t, a, b, c| t.left(t.ltri(a, b), t.ltri(t.left(a, b), c)),
        t.ltri(a, t.left(b, c))
    ),
    axiom!(
        "E4",
        "(a ⊲ b) ⊲ ((a ← b) ⊲ c) = b ⊲ c",
        |t, a, b, c| t.ltri(t.ltri(a, b), t.ltri(t.left(a, b), c)),
        t.ltri(b, c)
    ),
    axiom!(
        "E5",
        "(a ⊲ b) → ((a ← b) ⊲ c) = a ⊲ (b → c)",
        |t, a, b, c| t.right(t.ltri(a, b), t.ltri(t.left(a, b), c)),
        t.ltri(a, t.right(b, c))
    ),
    axiom!(
        "E6",
        "(a ⊲ b) ⊳ ((a ← b) ⊲ c) = b ⊳ c",
        |t, a, b, c| t.rtri(t.ltri(a, b), t.ltri(t.left(a, b), c)),
        t.rtri(b, c)
    ),
    axiom!(
        "E7",
        "(a ⊳ (b → c)) ← (b ⊳ c) = (a ← b) ⊳ c",
        |t, a, b, c| t.left(t.rtri(a, t.right(b, c)), t.rtri(b, c)),
        t.rtri(t.left(a, b), c)
    ),
    axiom!(
        "E8",
        "(a ⊳ (b → c)) ⊲ (b ⊳ c) = a ⊲ b",
        |t, a, b, c| t.ltri(t.rtri(a, t.right(b, c)), t.rtri(b, c)),
        t.ltri(a, b)
    ),
    axiom!(
        "E9",
        "(a ⊳ (b → c)) → (b ⊳ c) = (a → b) ⊳ c",
        |t, a, b, c| t.right(t.rtri(a, t.right(b, c)), t.rtri(b, c)),
        t.rtri(t.right(a, b), c)
    ),
    axiom!(
        "E10",
        "(a ⊳ (b → c)) ⊳ (b ⊳ c) = a ⊳ b",
        |t, a, b, c| t.rtri(t.rtri(a, t.right(b, c)), t.rtri(b, c)),
        t.rtri(a, b)
    ),
];

/// The eighteen identities involving `·` and `∗` that extend an EDS to an ETS.
pub static ETS: [OmegaAxiom; 18] = [
    axiom!(
        "T1",
        "(a → b) ∗ c = b ∗ c",
        |t, a, b, c| t.star(t.right(a, b), c),
        t.star(b, c)
    ),
    axiom!(
        "T2",
        "(a → b) · c = a → (b · c)",
        |t, a, b, c| t.dot(t.right(a, b), c),
        t.right(a, t.dot(b, c))
    ),
    axiom!(
        "T3",
        "a ⊳ b = a ⊳ (b · c)",
        |t, a, b, c| t.rtri(a, b),
        t.rtri(a, t.dot(b, c))
    ),
    axiom!(
        "T4",
        "(a ⊲ b) ∗ ((a ← b) ⊲ c) = b ∗ c",
        |t, a, b, c| t.star(t.ltri(a, b), t.ltri(t.left(a, b), c)),
        t.star(b, c)
    ),
    axiom!(
        "T5",
        "(a ⊲ b) · ((a ← b) ⊲ c) = a ⊲ (b · c)",
        |t, a, b, c| t.dot(t.ltri(a, b), t.ltri(t.left(a, b), c)),
        t.ltri(a, t.dot(b, c))
    ),
    axiom!(
        "T6",
        "(a ← b) ← c = a ← (b · c)",
        |t, a, b, c| t.left(t.left(a, b), c),
        t.left(a, t.dot(b, c))
    ),
    axiom!(
        "T7",
        "(a ⊳ (b → c)) ∗ (b ⊳ c) = a ∗ b",
        |t, a, b, c| t.star(t.rtri(a, t.right(b, c)), t.rtri(b, c)),
        t.star(a, b)
    ),
    axiom!(
        "T8",
        "a → (b → c) = (a · b) → c",
        |t, a, b, c| t.right(a, t.right(b, c)),
        t.right(t.dot(a, b), c)
    ),
    axiom!(
        "T9",
        "(a ⊳ (b → c)) · (b ⊳ c) = (a · b) ⊳ c",
        |t, a, b, c| t.dot(t.rtri(a, t.right(b, c)), t.rtri(b, c)),
        t.rtri(t.dot(a, b), c)
    ),
    axiom!(
        "T10",
        "(a ← b) ∗ c = a ∗ (b → c)",
        |t, a, b, c| t.star(t.left(a, b), c),
        t.star(a, t.right(b, c))
    ),
    axiom!(
        "T11",
        "(a ← b) · c = a · (b → c)",
        |t, a, b, c| t.dot(t.left(a, b), c),
        t.dot(a, t.right(b, c))
    ),
    axiom!(
        "T12",
        "a ⊲ b = b ⊳ c",
        |t, a, b, c| t.ltri(a, b),
        t.rtri(b, c)
    ),
    axiom!(
        "T13",
        "a ∗ b = a ∗ (b ← c)",
        |t, a, b, c| t.star(a, b),
        t.star(a, t.left(b, c))
    ),
    axiom!(
        "T14",
        "(a · b) ⊲ c = b ⊲ c",
        |t, a, b, c| t.ltri(t.dot(a, b), c),
        t.ltri(b, c)
    ),
    axiom!(
        "T15",
        "(a · b) ← c = a · (b ← c)",
        |t, a, b, c| t.left(t.dot(a, b), c),
        t.dot(a, t.left(b, c))
    ),
    axiom!(
        "T16",
        "a ∗ b = a ∗ (b · c)",
        |t, a, b, c| t.star(a, b),
        t.star(a, t.dot(b, c))
    ),
    axiom!(
        "T17",
        "(a · b) ∗ c = b ∗ c",
        |t, a, b, c| t.star(t.dot(a, b), c),
        t.star(b, c)
    ),
    axiom!(
        "T18",
        "(a · b) · c = a · (b · c)",
        |t, a, b, c| t.dot(t.dot(a, b), c),
        t.dot(a, t.dot(b, c))
    ),
];

fn scan(t: &OmegaTable, axioms: &[OmegaAxiom], report: &mut AxiomReport) {
    for ax in axioms {
        report.declare(ax.id);
    }
    for ax in axioms {
        for a in t.elements() {
            for b in t.elements() {
                for c in t.elements() {
                    let (lhs, rhs) = (ax.eval)(t, a, b, c);
                    report.record(lhs == rhs, || Violation {
                        axiom: ax.id.to_string(),
                        witness: format!("({a},{b},{c}) in {}", ax.text),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }
}

/// Exhaustively checks the diassociative identities.
pub fn check_diassociative(t: &OmegaTable) -> AxiomReport {
    let mut r = AxiomReport::new();
    scan(t, &DIASSOCIATIVE, &mut r);
    r
}

/// Diassociative identities plus E1–E10.
pub fn check_eds(t: &OmegaTable) -> AxiomReport {
    let mut r = check_diassociative(t);
    scan(t, &EDS, &mut r);
    r
}

/// EDS identities plus T1–T18.
pub fn check_ets(t: &OmegaTable) -> AxiomReport {
    let mut r = check_eds(t);
    scan(t, &ETS, &mut r);
    r
}

/// Fails with the full report unless `t` is an ETS.
pub fn require_ets(t: &OmegaTable) -> Result<()> {
    let r = check_ets(t);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::NotEts(Box::new(r)))
    }
}

/// Named constructions of ETS tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Every operation is constant with value 0.
    Trivial,
    /// `←, →, ⊳, ∗` left projection; `⊲, ·` right projection.
    /// Fails T1, T2, T8 and T11 once |Ω| ≥ 2.
    ProjectionsA,
    /// `←, →, ⊳, ·` left projection; `⊲, ∗` right projection.
    /// Fails T10 once |Ω| ≥ 2.
    ProjectionsB,
    /// `→ = ⊲ = ∗` right projection; `⊳ = ← = ·` left projection.
    Matching,
    /// `← = → = ·` a semigroup product, `⊳` left and `⊲` right projection,
    /// `∗` supplied by the caller.
    Family,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Trivial,
        Builtin::ProjectionsA,
        Builtin::ProjectionsB,
        Builtin::Matching,
        Builtin::Family,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Trivial => "trivial",
            Builtin::ProjectionsA => "projections_A",
            Builtin::ProjectionsB => "projections_B",
            Builtin::Matching => "matching",
            Builtin::Family => "family",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown builtin `{s}`")))
    }
}

fn left_proj(a: usize, _: usize) -> usize {
    a
}
fn right_proj(_: usize, b: usize) -> usize {
    b
}

/// Builds a named table and verifies it with [`check_ets`], refusing it
/// with the full report if it fails.
///
/// `aux` is the semigroup for [`Builtin::Family`]; `star` optionally
/// overrides its `∗` (default: constant 0).
pub fn builtin(
    name: Builtin,
    n: usize,
    aux: Option<&[Vec<usize>]>,
    star: Option<&[Vec<usize>]>,
) -> Result<OmegaTable> {
    let table = builtin_table(name, n, aux, star)?;
    require_ets(&table)?;
    Ok(table)
}

/// The named table exactly as defined, without the ETS check.
pub fn builtin_table(
    name: Builtin,
    n: usize,
    aux: Option<&[Vec<usize>]>,
    star: Option<&[Vec<usize>]>,
) -> Result<OmegaTable> {
    Ok(match name {
        Builtin::Trivial => OmegaTable::from_fn(n, |_, _, _| 0)?,
        Builtin::ProjectionsA | Builtin::ProjectionsB => {
            let star_left = name == Builtin::ProjectionsA;
            OmegaTable::from_fn(n, |op, a, b| match op {
                OmegaOp::LeftArrow | OmegaOp::RightArrow | OmegaOp::RTri => left_proj(a, b),
                OmegaOp::LTri => right_proj(a, b),
                OmegaOp::Star if star_left => a,
                OmegaOp::Star => b,
                OmegaOp::Dot if star_left => b,
                OmegaOp::Dot => a,
            })?
        }
        Builtin::Matching => OmegaTable::from_fn(n, |op, a, b| match op {
            OmegaOp::RightArrow | OmegaOp::LTri | OmegaOp::Star => b,
            OmegaOp::RTri | OmegaOp::LeftArrow | OmegaOp::Dot => a,
        })?,
        Builtin::Family => {
            let aux = aux.ok_or_else(|| {
                Error::MalformedTable("family builtin needs a semigroup table".into())
            })?;
            check_square(aux, n, "aux")?;
            if let Some(s) = star {
                check_square(s, n, "star")?;
            }
            check_semigroup(aux)?;
            OmegaTable::from_fn(n, |op, a, b| match op {
                OmegaOp::LeftArrow | OmegaOp::RightArrow | OmegaOp::Dot => aux[a][b],
                OmegaOp::RTri => a,
                OmegaOp::LTri => b,
                OmegaOp::Star => star.map_or(0, |s| s[a][b]),
            })?
        }
    })
}

fn check_square(rows: &[Vec<usize>], n: usize, what: &str) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedTable(format!(
            "{what} table is not {n}×{n}"
        )));
    }
    if let Some(v) = rows.iter().flatten().find(|&&v| v >= n) {
        return Err(Error::MalformedTable(format!(
            "{what} table entry {v} is outside 0..{n}"
        )));
    }
    Ok(())
}

/// Rejects non-associative tables, naming the first failing triple.
pub fn check_semigroup(rows: &[Vec<usize>]) -> Result<()> {
    let n = rows.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = rows[rows[a][b]][c];
                let rhs = rows[a][rows[b][c]];
                if lhs != rhs {
                    return Err(Error::MalformedTable(format!(
                        "aux table is not associative at ({a},{b},{c}): {lhs} != {rhs}"
                    )));
                }
            }
        }
    }
    Ok(())
}
