//! Weight-2 part of the free nonsymmetric operad on `≺_α, ≻_α, ∘_α`, the
//! quadratic relations of Ω-tridendriform algebras, their annihilator under
//! the quadratic pairing, and associativity of `m = Σ a_α ≺_α + b_α ∘_α + c_α ≻_α`.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axioms::{TriOp, Tridendriform};
use crate::coeff::{int, rat, LinComb, Rational};
use crate::free::{Combo, FreeTridend};
use crate::linalg::{nullspace, same_span, Echelon};
use crate::omega::OmegaTable;
use crate::report::{AxiomReport, Violation};
use crate::tensor::PhiKind;
use crate::tree::Tree;

/// `g ∘₁ h = g∘(h, I)` or `g ∘₂ h = g∘(I, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Slot {
    First,
    Second,
}

/// Generator `(op, α)`, indexed `op · |Ω| + α` with ops in ≺, ≻, ∘ order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Gen {
    pub op: TriOp,
    pub omega: usize,
}

fn op_index(op: TriOp) -> usize {
    match op {
        TriOp::Prec => 0,
        TriOp::Succ => 1,
        TriOp::Circ => 2,
    }
}

fn dual_symbol(op: TriOp) -> &'static str {
    match op {
        TriOp::Prec => "⊣",
        TriOp::Succ => "⊢",
        TriOp::Circ => "⊥",
    }
}

/// The ordered basis `{g ∘₁ h} ∪ {g ∘₂ h}` of dimension `18|Ω|²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weight2Basis {
    pub omega_size: usize,
}

impl Weight2Basis {
    pub fn generators(&self) -> usize {
        3 * self.omega_size
    }

    pub fn dim(&self) -> usize {
        2 * self.generators() * self.generators()
    }

    fn gen_index(&self, g: Gen) -> usize {
        op_index(g.op) * self.omega_size + g.omega
    }

    fn gen_at(&self, i: usize) -> Gen {
        Gen {
            op: TriOp::ALL[i / self.omega_size],
            omega: i % self.omega_size,
        }
    }

    pub fn index(&self, slot: Slot, outer: Gen, inner: Gen) -> usize {
        let g = self.generators();
        let s = if slot == Slot::First { 0 } else { 1 };
        (s * g + self.gen_index(outer)) * g + self.gen_index(inner)
    }

    pub fn decode(&self, i: usize) -> (Slot, Gen, Gen) {
        let g = self.generators();
        let slot = if i / (g * g) == 0 {
            Slot::First
        } else {
            Slot::Second
        };
        (slot, self.gen_at((i / g) % g), self.gen_at(i % g))
    }

    pub fn render_monomial(&self, i: usize, dual: bool) -> String {
        let (slot, g, h) = self.decode(i);
        let sym = |x: Gen| {
            let s = if dual {
                dual_symbol(x.op)
            } else {
                x.op.symbol()
            };
            format!("{s}_{}", x.omega)
        };
        match slot {
            Slot::First => format!("{}∘({},I)", sym(g), sym(h)),
            Slot::Second => format!("{}∘(I,{})", sym(g), sym(h)),
        }
    }

    pub fn render(&self, v: &LinComb<usize>, dual: bool) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| {
                format!(
                    "{}·{}",
                    crate::coeff::fmt_rational(c),
                    self.render_monomial(*i, dual)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A family of weight-2 vectors with its rank.
#[derive(Clone, Debug)]
pub struct RelationSpace {
    pub basis: Weight2Basis,
    pub dual: bool,
    pub labels: Vec<String>,
    pub rows: Vec<LinComb<usize>>,
    pub rank: usize,
}

impl RelationSpace {
    fn new(basis: Weight2Basis, dual: bool, labelled: Vec<(String, LinComb<usize>)>) -> Self {
        let (labels, rows): (Vec<_>, Vec<_>) = labelled.into_iter().unzip();
        let rank = crate::linalg::rank(&rows);
        Self {
            basis,
            dual,
            labels,
            rows,
            rank,
        }
    }

    pub fn same_span(&self, other: &RelationSpace) -> bool {
        self.basis == other.basis && same_span(&self.rows, &other.rows)
    }

    pub fn contains(&self, v: &LinComb<usize>) -> bool {
        let mut e = Echelon::new();
        for r in &self.rows {
            e.insert(r);
        }
        e.contains(v)
    }
}

impl fmt::Display for RelationSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, r) in self.labels.iter().zip(&self.rows) {
            writeln!(f, "{l}: {} = 0", self.basis.render(r, self.dual))?;
        }
        Ok(())
    }
}

fn mono(b: &Weight2Basis, slot: Slot, g: (TriOp, usize), h: (TriOp, usize)) -> LinComb<usize> {
    LinComb::basis(b.index(
        slot,
        Gen {
            op: g.0,
            omega: g.1,
        },
        Gen {
            op: h.0,
            omega: h.1,
        },
    ))
}

/// The seven families `LHS − RHS` for every `(α, β)`, family-major.
pub fn relation_space(t: &OmegaTable) -> RelationSpace {
    use Slot::{First as S1, Second as S2};
    use TriOp::{Circ as C, Prec as P, Succ as S};
    let b = Weight2Basis {
        omega_size: t.size(),
    };
    let mut out = Vec::new();
    for fam in 1..=7 {
        for al in t.elements() {
            for be in t.elements() {
                let m = |s, g, h| mono(&b, s, g, h);
                let (to, tri_r, le, tri_l, dot, st) = (
                    t.right(al, be),
                    t.rtri(al, be),
                    t.left(al, be),
                    t.ltri(al, be),
                    t.dot(al, be),
                    t.star(al, be),
                );
                let v = match fam {
                    1 => {
                        &m(S1, (P, be), (P, al))
                            - &(&(&m(S2, (P, to), (S, tri_r)) + &m(S2, (P, le), (P, tri_l)))
                                + &m(S2, (P, dot), (C, st)))
                    }
                    2 => &m(S1, (P, be), (S, al)) - &m(S2, (S, al), (P, be)),
                    3 => {
                        &m(S2, (S, al), (S, be))
                            - &(&(&m(S1, (S, to), (S, tri_r)) + &m(S1, (S, le), (P, tri_l)))
                                + &m(S1, (S, dot), (C, st)))
                    }
                    4 => &m(S1, (C, be), (S, al)) - &m(S2, (S, al), (C, be)),
                    5 => &m(S1, (C, be), (P, al)) - &m(S2, (C, be), (S, al)),
                    6 => &m(S1, (P, be), (C, al)) - &m(S2, (C, al), (P, be)),
                    _ => &m(S1, (C, be), (C, al)) - &m(S2, (C, al), (C, be)),
                };
                out.push((format!("R{fam}(α={al},β={be})"), v));
            }
        }
    }
    RelationSpace::new(b, false, out)
}

/// Sign of `⟨g∘₁h, g'∘₁h'⟩` and `⟨g∘₂h, g'∘₂h'⟩` on matching monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pairing {
    /// `+1` on `∘₁`, `−1` on `∘₂`.
    Signed,
    /// `+1` on both.
    Unsigned,
}

impl Pairing {
    fn sign(self, b: &Weight2Basis, i: usize) -> Rational {
        match (self, b.decode(i).0) {
            (Pairing::Signed, Slot::Second) => int(-1),
            _ => int(1),
        }
    }

    pub fn pair(self, b: &Weight2Basis, u: &LinComb<usize>, v: &LinComb<usize>) -> Rational {
        u.iter()
            .map(|(i, c)| c * v.coeff(i) * self.sign(b, *i))
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct KoszulDual {
    pub space: RelationSpace,
    pub pairing: Pairing,
    /// Whether the pairing reproduced the displayed dual presentation at |Ω| = 1.
    pub validated: bool,
}

fn annihilator(t: &OmegaTable, pairing: Pairing) -> RelationSpace {
    let r = relation_space(t);
    let b = r.basis;
    let twisted: Vec<LinComb<usize>> = r
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(i, c)| (*i, c * pairing.sign(&b, *i)))
                .collect()
        })
        .collect();
    let ker = nullspace(&twisted, b.dim());
    let labelled = ker
        .into_iter()
        .enumerate()
        .map(|(i, v)| (format!("K{i}"), v))
        .collect();
    RelationSpace::new(b, true, labelled)
}

/// The annihilator of [`relation_space`] over the dual generators ⊣, ⊢, ⊥.
pub fn koszul_dual(t: &OmegaTable) -> KoszulDual {
    let one = OmegaTable::from_fn(1, |_, _, _| 0).expect("one-element table");
    let reference = listed_dual_relations(&one, Reading::Printed);
    for pairing in [Pairing::Signed, Pairing::Unsigned] {
        if annihilator(&one, pairing).same_span(&reference) {
            return KoszulDual {
                space: annihilator(t, pairing),
                pairing,
                validated: true,
            };
        }
    }
    KoszulDual {
        space: annihilator(t, Pairing::Signed),
        pairing: Pairing::Signed,
        validated: false,
    }
}

/// How to read the index conditions of the three `⊢` sum families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// `⊢_β∘(⊢_α, I) = Σ_{γ→δ=α, γ⊳δ=β} ⊢_γ∘(I, ⊢_δ)` as displayed.
    Printed,
    /// Fiber over `(β, α)` instead: `γ→δ = β, γ⊳δ = α`.
    Corrected,
}

/// The eleven displayed families of dual relations.
pub fn listed_dual_relations(t: &OmegaTable, reading: Reading) -> RelationSpace {
    use Slot::{First as S1, Second as S2};
    use TriOp::{Circ as B, Prec as L, Succ as R};
    let b = Weight2Basis {
        omega_size: t.size(),
    };
    let fiber = |k: PhiKind, x: usize, y: usize| -> Vec<(usize, usize)> {
        t.elements()
            .flat_map(|g| t.elements().map(move |d| (g, d)))
            .filter(|&(g, d)| k.apply(t, g, d) == (x, y))
            .collect()
    };
    let kinds = [PhiKind::Left, PhiKind::Right, PhiKind::Star];
    let mut out = Vec::new();
    for fam in 1..=11 {
        for al in t.elements() {
            for be in t.elements() {
                let m = |s, g, h| mono(&b, s, g, h);
                let v = match fam {
                    // ⊣_α∘(I, X_β) = Σ ⊣_δ∘(⊣_γ, I) with X = ⊣, ⊢, ⊥ and φ = φ_←, φ_→, φ_∗
                    1..=3 => {
                        let x = [L, R, B][fam - 1];
                        let mut v = m(S2, (L, al), (x, be));
                        for (g, d) in fiber(kinds[fam - 1], al, be) {
                            v = &v - &m(S1, (L, d), (L, g));
                        }
                        v
                    }
                    // ⊢_β∘(X_α, I) = Σ ⊢_γ∘(I, ⊢_δ) with X = ⊢, ⊣, ⊥ and φ = φ_→, φ_←, φ_∗
                    4..=6 => {
                        let (x, k) =
                            [(R, PhiKind::Right), (L, PhiKind::Left), (B, PhiKind::Star)][fam - 4];
                        let mut v = m(S1, (R, be), (x, al));
                        let f = match reading {
                            Reading::Printed => fiber(k, al, be),
                            Reading::Corrected => fiber(k, be, al),
                        };
                        for (g, d) in f {
                            v = &v - &m(S2, (R, g), (R, d));
                        }
                        v
                    }
                    7 => &m(S1, (L, be), (R, al)) - &m(S2, (R, al), (L, be)),
                    8 => &m(S1, (B, be), (R, al)) - &m(S2, (R, al), (B, be)),
                    9 => &m(S1, (B, be), (L, al)) - &m(S2, (B, be), (R, al)),
                    10 => &m(S1, (L, be), (B, al)) - &m(S2, (B, al), (L, be)),
                    _ => &m(S1, (B, be), (B, al)) - &m(S2, (B, al), (B, be)),
                };
                out.push((format!("D{fam}(α={al},β={be})"), v));
            }
        }
    }
    RelationSpace::new(b, true, out)
}

/// Evaluates a weight-2 vector on `(x, y, z)` in a concrete algebra.
pub fn evaluate_weight2<A: Tridendriform + ?Sized>(
    alg: &A,
    b: &Weight2Basis,
    v: &LinComb<usize>,
    xyz: [&LinComb<A::Basis>; 3],
) -> LinComb<A::Basis> {
    let [x, y, z] = xyz;
    let mut out = LinComb::zero();
    for (i, c) in v {
        let (slot, g, h) = b.decode(*i);
        let val = match slot {
            Slot::First => alg.product(g.op, g.omega, &alg.product(h.op, h.omega, x, y), z),
            Slot::Second => alg.product(g.op, g.omega, x, &alg.product(h.op, h.omega, y, z)),
        };
        out.add_scaled(c, &val);
    }
    out
}

/// Labels and texts of the seven scalar families for `m ∘ (I, m) = m ∘ (m, I)`.
pub const ASSOC_CONDITIONS: [(&str, &str); 7] = [
    ("cond1", "a_α a_β = Σ_{φ_←(α',β')=(α,β)} a_α' a_β'"),
    ("cond2", "a_α b_β = Σ_{φ_∗(α',β')=(α,β)} a_α' a_β'"),
    ("cond3", "a_α c_β = Σ_{φ_→(α',β')=(α,β)} a_α' a_β'"),
    ("cond4", "b_α c_β = b_α a_β"),
    ("cond5", "c_α a_β = Σ_{φ_←(α',β')=(α,β)} c_α' c_β'"),
    ("cond6", "c_α b_β = Σ_{φ_∗(α',β')=(α,β)} c_α' c_β'"),
    ("cond7", "c_α c_β = Σ_{φ_→(α',β')=(α,β)} c_α' c_β'"),
];

/// `φ(u ⊗ v)` as an `|Ω| × |Ω|` coefficient matrix, row-major.
pub fn phi_tensor(k: PhiKind, t: &OmegaTable, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let n = t.size();
    let mut out = vec![Rational::zero(); n * n];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = k.apply(t, a, b);
            out[x * n + y] += &u[a] * &v[b];
        }
    }
    out
}

/// `u ⊗ v`, row-major.
pub fn tensor(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter()
        .flat_map(|x| v.iter().map(move |y| x * y))
        .collect()
}

fn check_combo(t: &OmegaTable, c: &Combo) {
    assert!(
        c.a.len() == t.size() && c.b.len() == t.size() && c.c.len() == t.size(),
        "coefficient vectors must have length |Ω|"
    );
}

pub fn assoc_conditions(t: &OmegaTable, co: &Combo) -> AxiomReport {
    check_combo(t, co);
    let mut r = AxiomReport::new();
    for (id, _) in ASSOC_CONDITIONS {
        r.declare(id);
    }
    let (a, b, c) = (&co.a, &co.b, &co.c);
    let fiber_sum = |k: PhiKind, x: usize, y: usize, v: &[Rational]| -> Rational {
        let mut s = Rational::zero();
        for p in t.elements() {
            for q in t.elements() {
                if k.apply(t, p, q) == (x, y) {
                    s += &v[p] * &v[q];
                }
            }
        }
        s
    };
    for (fam, (id, text)) in ASSOC_CONDITIONS.iter().enumerate() {
        for al in t.elements() {
            for be in t.elements() {
                let (lhs, rhs) = match fam {
                    0 => (&a[al] * &a[be], fiber_sum(PhiKind::Left, al, be, a)),
                    1 => (&a[al] * &b[be], fiber_sum(PhiKind::Star, al, be, a)),
                    2 => (&a[al] * &c[be], fiber_sum(PhiKind::Right, al, be, a)),
                    3 => (&b[al] * &c[be], &b[al] * &a[be]),
                    4 => (&c[al] * &a[be], fiber_sum(PhiKind::Left, al, be, c)),
                    5 => (&c[al] * &b[be], fiber_sum(PhiKind::Star, al, be, c)),
                    _ => (&c[al] * &c[be], fiber_sum(PhiKind::Right, al, be, c)),
                };
                r.record(lhs == rhs, || Violation {
                    axiom: (*id).into(),
                    witness: format!("(α,β)=({al},{be}) in {text}"),
                    lhs: crate::coeff::fmt_rational(&lhs),
                    rhs: crate::coeff::fmt_rational(&rhs),
                });
            }
        }
    }
    r
}

/// The two disjunctive tensor systems, evaluated literally.
pub fn assoc_tensor_systems(t: &OmegaTable, co: &Combo) -> bool {
    check_combo(t, co);
    let (a, b, c) = (&co.a[..], &co.b[..], &co.c[..]);
    let zero = vec![Rational::zero(); t.size() * t.size()];
    let phi = |k, u, v| phi_tensor(k, t, u, v);
    let b_zero = b.iter().all(Zero::is_zero);
    let first = b_zero
        && phi(PhiKind::Left, a, a) == tensor(a, a)
        && phi(PhiKind::Right, a, a) == tensor(a, c)
        && phi(PhiKind::Star, a, a) == zero
        && phi(PhiKind::Left, c, c) == tensor(c, a)
        && phi(PhiKind::Right, c, c) == tensor(c, c)
        && phi(PhiKind::Star, c, c) == zero;
    let second = c == a
        && phi(PhiKind::Left, a, a) == tensor(a, a)
        && phi(PhiKind::Right, a, a) == tensor(a, a)
        && phi(PhiKind::Star, a, a) == tensor(a, b);
    first || second
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AssocVerdicts {
    pub conditions: bool,
    pub tensor_systems: bool,
    /// `m∘(I,m) − m∘(m,I)` lies in the relation span.
    pub operadic: bool,
}

impl AssocVerdicts {
    pub fn agree(&self) -> bool {
        self.conditions == self.tensor_systems && self.tensor_systems == self.operadic
    }
}

/// `m∘(I,m) − m∘(m,I)` in the weight-2 basis.
pub fn assoc_defect(t: &OmegaTable, co: &Combo) -> LinComb<usize> {
    check_combo(t, co);
    let b = Weight2Basis {
        omega_size: t.size(),
    };
    let coeff = |g: Gen| match g.op {
        TriOp::Prec => co.a[g.omega].clone(),
        TriOp::Circ => co.b[g.omega].clone(),
        TriOp::Succ => co.c[g.omega].clone(),
    };
    let mut v = LinComb::zero();
    for i in 0..b.generators() {
        for j in 0..b.generators() {
            let (g, h) = (b.gen_at(i), b.gen_at(j));
            let w = coeff(g) * coeff(h);
            v.add_term(b.index(Slot::Second, g, h), w.clone());
            v.add_term(b.index(Slot::First, g, h), -w);
        }
    }
    v
}

pub fn assoc_verdicts(t: &OmegaTable, co: &Combo) -> AssocVerdicts {
    AssocVerdicts {
        conditions: assoc_conditions(t, co).passed(),
        tensor_systems: assoc_tensor_systems(t, co),
        operadic: relation_space(t).contains(&assoc_defect(t, co)),
    }
}

/// Whether `(x m x) m x = x m (x m x)` for the corolla `x` in the free algebra,
/// which is the only tree triple with at most six leaves.
pub fn assoc_on_trees(alg: &FreeTridend, co: &Combo) -> bool {
    let x = LinComb::basis(Tree::corolla("x"));
    let lhs = alg.combo_product(co, &alg.combo_product(co, &x, &x), &x);
    let rhs = alg.combo_product(co, &x, &alg.combo_product(co, &x, &x));
    lhs == rhs
}

/// Seeded coefficient triples biased towards the `b = 0` and `c = a` regimes.
pub fn sample_combos(omega_size: usize, n: usize, seed: u64) -> Vec<Combo> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = [int(0), int(0), int(1), int(1), int(-1), int(2), rat(1, 2)];
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..omega_size)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect()
    };
    (0..n)
        .map(|_| {
            let a = draw(&mut rng);
            let mut b = draw(&mut rng);
            let mut c = draw(&mut rng);
            match rng.gen_range(0..3) {
                0 => b = vec![Rational::zero(); omega_size],
                1 => c = a.clone(),
                _ => {}
            }
            Combo { a, b, c }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::{builtin, Builtin};

    fn one() -> OmegaTable {
        builtin(Builtin::Trivial, 1, None, None).unwrap()
    }

    fn matching2() -> OmegaTable {
        builtin(Builtin::Matching, 2, None, None).unwrap()
    }

    fn family2() -> OmegaTable {
        builtin(Builtin::Family, 2, Some(&[vec![0, 1], vec![1, 0]]), None).unwrap()
    }

    fn q(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn basis_indexing() {
        let b = Weight2Basis { omega_size: 2 };
        assert_eq!(b.dim(), 72);
        for i in 0..b.dim() {
            let (s, g, h) = b.decode(i);
            assert_eq!(b.index(s, g, h), i);
        }
        let i = b.index(
            Slot::First,
            Gen {
                op: TriOp::Prec,
                omega: 1,
            },
            Gen {
                op: TriOp::Circ,
                omega: 0,
            },
        );
        assert_eq!(b.render_monomial(i, false), "≺_1∘(∘_0,I)");
        assert_eq!(b.render_monomial(i, true), "⊣_1∘(⊥_0,I)");
    }

    #[test]
    fn relation_ranks() {
        for t in [
            one(),
            matching2(),
            family2(),
            builtin(Builtin::Trivial, 2, None, None).unwrap(),
        ] {
            let r = relation_space(&t);
            let n = t.size();
            assert_eq!(r.rows.len(), 7 * n * n);
            assert_eq!(r.rank, 7 * n * n);
        }
    }

    #[test]
    fn relations_vanish_in_free_algebra() {
        let t = matching2();
        let alg = FreeTridend::new(t.clone()).unwrap();
        let r = relation_space(&t);
        let (x, y, z) = (
            LinComb::basis(Tree::corolla("x")),
            LinComb::basis(Tree::corolla("y")),
            LinComb::basis(Tree::corolla("z")),
        );
        for row in &r.rows {
            assert!(evaluate_weight2(&alg, &r.basis, row, [&x, &y, &z]).is_zero());
        }
        // and nothing else does: the evaluation map has kernel exactly the relations
        let b = r.basis;
        let mut e = Echelon::new();
        for i in 0..b.dim() {
            e.insert(&evaluate_weight2(
                &alg,
                &b,
                &LinComb::basis(i),
                [&x, &y, &z],
            ));
        }
        assert_eq!(e.rank(), b.dim() - r.rank);
    }

    /// The triassociative relations written out directly.
    fn triassociative() -> Vec<LinComb<usize>> {
        use Slot::{First as S1, Second as S2};
        use TriOp::{Circ as B, Prec as L, Succ as R};
        let b = Weight2Basis { omega_size: 1 };
        let m = |s, g, h| mono(&b, s, (g, 0), (h, 0));
        // (x g h-in-first) vs x g (y h z)
        [
            ((L, L), (L, L)),
            ((L, L), (L, R)),
            ((L, R), (R, L)),
            ((R, L), (R, R)),
            ((R, R), (R, R)),
            ((L, L), (L, B)),
            ((L, B), (B, L)),
            ((B, L), (B, R)),
            ((B, R), (R, B)),
            ((R, B), (R, R)),
            ((B, B), (B, B)),
        ]
        .iter()
        .map(|&((g1, h1), (g2, h2))| &m(S1, g1, h1) - &m(S2, g2, h2))
        .collect()
    }

    #[test]
    fn one_element_presentation() {
        let p = listed_dual_relations(&one(), Reading::Printed);
        assert_eq!(p.rows.len(), 11);
        assert_eq!(p.rank, 11);
        assert!(same_span(&p.rows, &triassociative()));
        let k = koszul_dual(&one());
        assert!(k.validated);
        assert_eq!(k.pairing, Pairing::Signed);
        assert_eq!(k.space.rank, 11);
    }

    #[test]
    fn dual_dimensions_and_annihilation() {
        for t in [one(), matching2(), family2()] {
            let n = t.size();
            let k = koszul_dual(&t);
            assert_eq!(k.space.rank, 11 * n * n);
            let r = relation_space(&t);
            for s in &k.space.rows {
                for row in &r.rows {
                    assert!(k.pairing.pair(&r.basis, row, s).is_zero());
                }
            }
        }
    }

    #[test]
    fn printed_and_corrected_readings() {
        for t in [one(), builtin(Builtin::Trivial, 2, None, None).unwrap()] {
            assert!(listed_dual_relations(&t, Reading::Printed).same_span(&koszul_dual(&t).space));
        }
        for t in [matching2(), family2()] {
            let k = koszul_dual(&t).space;
            let printed = listed_dual_relations(&t, Reading::Printed);
            assert_eq!(printed.rank, 11 * t.size() * t.size());
            assert!(!printed.same_span(&k));
            let corrected = listed_dual_relations(&t, Reading::Corrected);
            assert!(corrected.same_span(&k));
            // only the ⊢ sum families leave the annihilator
            let bad: Vec<&str> = printed
                .labels
                .iter()
                .zip(&printed.rows)
                .filter(|(_, v)| !k.contains(v))
                .map(|(l, _)| l.as_str())
                .collect();
            assert!(
                bad.iter()
                    .all(|l| ["D4(", "D5(", "D6("].iter().any(|p| l.starts_with(p))),
                "{bad:?}"
            );
            assert!(!bad.is_empty());
        }
    }

    #[test]
    fn matching_fibers_are_singletons() {
        let t = matching2();
        for a in 0..2 {
            for b in 0..2 {
                let f: Vec<_> = (0..2)
                    .flat_map(|g| (0..2).map(move |d| (g, d)))
                    .filter(|&(g, d)| PhiKind::Left.apply(&t, g, d) == (a, b))
                    .collect();
                assert_eq!(f, vec![(a, b)]);
            }
        }
    }

    #[test]
    fn scalar_examples() {
        let t = one();
        let c = |a, b, cc| Combo {
            a: q(&[a]),
            b: q(&[b]),
            c: q(&[cc]),
        };
        assert!(assoc_conditions(&t, &c(1, 1, 1)).passed());
        let r = assoc_conditions(&t, &c(1, 0, 1));
        assert_eq!(r.failed_axioms(), vec!["cond2", "cond6"]);
        let v = r.first_violation("cond2").unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("0", "1"));
        assert!(assoc_conditions(&t, &c(0, 1, 0)).passed());
        let z = assoc_verdicts(&t, &c(0, 0, 0));
        assert!(z.conditions && z.tensor_systems && z.operadic);
    }

    #[test]
    fn verdicts_agree_on_samples() {
        for t in [one(), matching2(), family2()] {
            let alg = FreeTridend::new(t.clone()).unwrap();
            let mut passes = 0;
            for co in sample_combos(t.size(), 60, 11) {
                let v = assoc_verdicts(&t, &co);
                assert!(v.agree(), "{co:?} {v:?}");
                assert_eq!(assoc_on_trees(&alg, &co), v.operadic, "{co:?}");
                passes += usize::from(v.conditions);
            }
            assert!(passes > 0);
        }
    }
}
