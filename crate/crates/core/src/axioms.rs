//! The Ω-tridendriform interface and generic checkers for its seven axioms
//! and for commutativity.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::{lincomb_extend_bilinear, LinComb};
use crate::omega::{check_ets, OmegaTable};
use crate::report::{AxiomReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriOp {
    Prec,
    Succ,
    Circ,
}

impl TriOp {
    pub const ALL: [TriOp; 3] = [TriOp::Prec, TriOp::Succ, TriOp::Circ];

    pub fn name(self) -> &'static str {
        match self {
            TriOp::Prec => "prec",
            TriOp::Succ => "succ",
            TriOp::Circ => "circ",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TriOp::Prec => "≺",
            TriOp::Succ => "≻",
            TriOp::Circ => "∘",
        }
    }

    pub fn parse(s: &str) -> Option<TriOp> {
        TriOp::ALL
            .into_iter()
            .find(|o| o.name() == s || o.symbol() == s)
    }
}

impl fmt::Display for TriOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A k-module with a distinguished basis and three Ω-indexed bilinear
/// products, given on basis pairs.
pub trait Tridendriform {
    type Basis: Ord + Clone + fmt::Display;

    fn table(&self) -> &OmegaTable;

    fn basis_product(
        &self,
        op: TriOp,
        w: usize,
        a: &Self::Basis,
        b: &Self::Basis,
    ) -> LinComb<Self::Basis>;

    fn product(
        &self,
        op: TriOp,
        w: usize,
        a: &LinComb<Self::Basis>,
        b: &LinComb<Self::Basis>,
    ) -> LinComb<Self::Basis> {
        lincomb_extend_bilinear(|x, y| self.basis_product(op, w, x, y), a, b)
    }

    fn prec(
        &self,
        w: usize,
        a: &LinComb<Self::Basis>,
        b: &LinComb<Self::Basis>,
    ) -> LinComb<Self::Basis> {
        self.product(TriOp::Prec, w, a, b)
    }

    fn succ(
        &self,
        w: usize,
        a: &LinComb<Self::Basis>,
        b: &LinComb<Self::Basis>,
    ) -> LinComb<Self::Basis> {
        self.product(TriOp::Succ, w, a, b)
    }

    fn circ(
        &self,
        w: usize,
        a: &LinComb<Self::Basis>,
        b: &LinComb<Self::Basis>,
    ) -> LinComb<Self::Basis> {
        self.product(TriOp::Circ, w, a, b)
    }
}

pub type Triple<B> = [LinComb<B>; 3];

/// A reproducible list of element triples to test against.
#[derive(Clone, Debug)]
pub struct TripleSource<B: Ord> {
    pub triples: Vec<Triple<B>>,
}

impl<B: Ord + Clone> TripleSource<B> {
    pub fn explicit(triples: Vec<Triple<B>>) -> Self {
        Self { triples }
    }

    /// All basis triples `(a, b, c)` with `size(a) + size(b) + size(c) ≤ bound`.
    pub fn exhaustive(basis: &[B], size: impl Fn(&B) -> usize, bound: usize) -> Self {
        let mut triples = Vec::new();
        for a in basis {
            for b in basis {
                for c in basis {
                    if size(a) + size(b) + size(c) <= bound {
                        triples.push([
                            LinComb::basis(a.clone()),
                            LinComb::basis(b.clone()),
                            LinComb::basis(c.clone()),
                        ]);
                    }
                }
            }
        }
        Self { triples }
    }

    /// `n` basis triples drawn uniformly with replacement from `pool`.
    pub fn sampled(pool: &[B], n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || LinComb::basis(pool.choose(&mut rng).expect("nonempty pool").clone());
        let triples = (0..n).map(|_| [pick(), pick(), pick()]).collect();
        Self { triples }
    }

    /// `n` triples of random combinations of up to `terms` pool elements
    /// with nonzero integer coefficients in `-3..=3`.
    pub fn sampled_combos(pool: &[B], n: usize, terms: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || {
            let mut c = LinComb::zero();
            for _ in 0..rng.gen_range(1..=terms.max(1)) {
                let k = pool.choose(&mut rng).expect("nonempty pool").clone();
                let q = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
                c.add_term(k, crate::coeff::int(q));
            }
            c
        };
        let triples = (0..n).map(|_| [pick(), pick(), pick()]).collect();
        Self { triples }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Distinct ordered pairs `(a, b)` occurring as the first two entries.
    pub fn pairs(&self) -> Vec<[LinComb<B>; 2]> {
        let mut out: Vec<[LinComb<B>; 2]> = self
            .triples
            .iter()
            .map(|[a, b, _]| [a.clone(), b.clone()])
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

pub const AXIOM_IDS: [&str; 7] = ["tri1", "tri2", "tri3", "tri4", "tri5", "tri6", "tri7"];

/// Both sides of axiom `k` (0-based) at `(a, b, c)` and `(α, β)`.
pub fn axiom_sides<T: Tridendriform + ?Sized>(
    alg: &T,
    k: usize,
    [a, b, c]: &Triple<T::Basis>,
    al: usize,
    be: usize,
) -> (LinComb<T::Basis>, LinComb<T::Basis>) {
    let t = alg.table();
    match k {
        0 => {
            let lhs = alg.prec(be, &alg.prec(al, a, b), c);
            let mut rhs = alg.prec(t.right(al, be), a, &alg.succ(t.rtri(al, be), b, c));
            rhs += alg.prec(t.left(al, be), a, &alg.prec(t.ltri(al, be), b, c));
            rhs += alg.prec(t.dot(al, be), a, &alg.circ(t.star(al, be), b, c));
            (lhs, rhs)
        }
        1 => (
            alg.prec(be, &alg.succ(al, a, b), c),
            alg.succ(al, a, &alg.prec(be, b, c)),
        ),
        2 => {
            let lhs = alg.succ(al, a, &alg.succ(be, b, c));
            let mut rhs = alg.succ(t.right(al, be), &alg.succ(t.rtri(al, be), a, b), c);
            rhs += alg.succ(t.left(al, be), &alg.prec(t.ltri(al, be), a, b), c);
            rhs += alg.succ(t.dot(al, be), &alg.circ(t.star(al, be), a, b), c);
            (lhs, rhs)
        }
        3 => (
            alg.circ(be, &alg.succ(al, a, b), c),
            alg.succ(al, a, &alg.circ(be, b, c)),
        ),
        4 => (
            alg.circ(be, &alg.prec(al, a, b), c),
            alg.circ(be, a, &alg.succ(al, b, c)),
        ),
        5 => (
            alg.prec(be, &alg.circ(al, a, b), c),
            alg.circ(al, a, &alg.prec(be, b, c)),
        ),
        6 => (
            alg.circ(be, &alg.circ(al, a, b), c),
            alg.circ(al, a, &alg.circ(be, b, c)),
        ),
        _ => panic!("axiom index {k} out of range"),
    }
}

fn check_chunk<T: Tridendriform + ?Sized>(alg: &T, triples: &[Triple<T::Basis>]) -> AxiomReport {
    let mut r = AxiomReport::new();
    for id in AXIOM_IDS {
        r.declare(id);
    }
    let n = alg.table().size();
    for tr in triples {
        for al in 0..n {
            for be in 0..n {
                for (k, id) in AXIOM_IDS.iter().enumerate() {
                    let (lhs, rhs) = axiom_sides(alg, k, tr, al, be);
                    r.record(lhs == rhs, || Violation {
                        axiom: id.to_string(),
                        witness: format!("a={}, b={}, c={}, α={al}, β={be}", tr[0], tr[1], tr[2]),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }
    r
}

/// Evaluates (tri1)–(tri7) on every triple and every (α, β) ∈ Ω².
pub fn check_axioms<T: Tridendriform + ?Sized>(
    alg: &T,
    src: &TripleSource<T::Basis>,
) -> AxiomReport {
    let mut r = check_chunk(alg, &src.triples);
    r.sort();
    r
}

/// [`check_axioms`] with the triples split across `threads` workers.
pub fn check_axioms_par<T>(alg: &T, src: &TripleSource<T::Basis>, threads: usize) -> AxiomReport
where
    T: Tridendriform + Sync + ?Sized,
    T::Basis: Send + Sync,
{
    let threads = threads.max(1);
    if threads == 1 || src.triples.len() < 2 {
        return check_axioms(alg, src);
    }
    let chunk = src.triples.len().div_ceil(threads);
    let parts: Vec<AxiomReport> = std::thread::scope(|s| {
        let handles: Vec<_> = src
            .triples
            .chunks(chunk)
            .map(|c| s.spawn(move || check_chunk(alg, c)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut r = AxiomReport::new();
    for id in AXIOM_IDS {
        r.declare(id);
    }
    for p in parts {
        r.merge(p);
    }
    r.sort();
    r
}

/// Checks `a ≺_α b = b ≻_α a` and `a ∘_α b = b ∘_α a` on every pair and α.
pub fn check_commutative<T: Tridendriform + ?Sized>(
    alg: &T,
    pairs: &[[LinComb<T::Basis>; 2]],
) -> AxiomReport {
    let mut r = AxiomReport::new();
    r.declare("comm_prec_succ");
    r.declare("comm_circ");
    for [a, b] in pairs {
        for w in alg.table().elements() {
            let witness = || format!("a={a}, b={b}, α={w}");
            let (l, rr) = (alg.prec(w, a, b), alg.succ(w, b, a));
            r.record(l == rr, || Violation {
                axiom: "comm_prec_succ".into(),
                witness: witness(),
                lhs: l.to_string(),
                rhs: rr.to_string(),
            });
            let (l, rr) = (alg.circ(w, a, b), alg.circ(w, b, a));
            r.record(l == rr, || Violation {
                axiom: "comm_circ".into(),
                witness: witness(),
                lhs: l.to_string(),
                rhs: rr.to_string(),
            });
        }
    }
    r.sort();
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceProbe {
    pub ets_ok: bool,
    pub axioms_ok: bool,
}

/// Compares [`check_ets`] with the tree-axiom scan on triples of `{x}`-decorated
/// trees with at most `leaf_bound` leaves in total.
pub fn ets_equivalence_probe(t: &OmegaTable, leaf_bound: usize) -> EquivalenceProbe {
    let ets_ok = check_ets(t).passed();
    let alg = crate::free::FreeTridend::unchecked(t.clone());
    let axioms_ok = crate::free::tree_axiom_scan(&alg, &["x"], leaf_bound, 1).passed();
    EquivalenceProbe { ets_ok, axioms_ok }
}
