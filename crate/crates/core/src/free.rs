//! The products ≺_ω, ≻_ω, ∘_ω on the span of decorated Schröder trees, and
//! the morphism out of it determined by images of the generators.

use crate::axioms::{check_axioms_par, TriOp, Tridendriform, TripleSource};
use crate::coeff::{LinComb, Rational};
use crate::error::{Error, Result};
use crate::omega::{require_ets, OmegaTable};
use crate::report::AxiomReport;
use crate::tree::{enumerate, Child, Tree, Vertex};

pub type TreeComb = LinComb<Tree>;

/// k𝔗(X, Ω) with the recursive tree products.
#[derive(Clone, Debug)]
pub struct FreeTridend {
    table: OmegaTable,
}

impl FreeTridend {
    /// Refuses tables that are not ETS.
    pub fn new(table: OmegaTable) -> Result<Self> {
        require_ets(&table)?;
        Ok(Self { table })
    }

    /// Skips the ETS check, for probing non-ETS tables.
    pub fn unchecked(table: OmegaTable) -> Self {
        Self { table }
    }

    fn check_tree(&self, t: &Tree) -> Result<()> {
        match t.max_type() {
            Some(w) if w >= self.table.size() => Err(Error::OmegaOutOfRange {
                elem: w,
                size: self.table.size(),
            }),
            _ => Ok(()),
        }
    }

    /// Validated product of two combinations.
    pub fn tree_product(
        &self,
        op: TriOp,
        w: usize,
        l: &TreeComb,
        r: &TreeComb,
    ) -> Result<TreeComb> {
        self.table.check_element(w)?;
        for t in l.keys().chain(r.keys()) {
            self.check_tree(t)?;
        }
        Ok(self.product(op, w, l, r))
    }

    /// Product where either side may be the adjoined unit `|` (`None`).
    ///
    /// `| ≻ T = T ≺ | = T`, `| ≺ T = T ≻ | = 0`, `| ∘ T = T ∘ | = 0`.
    pub fn unit_product(
        &self,
        op: TriOp,
        w: usize,
        l: Option<&Tree>,
        r: Option<&Tree>,
    ) -> Result<TreeComb> {
        match (l, r) {
            (Some(t), Some(u)) => Ok(self.basis_product(op, w, t, u)),
            (None, Some(t)) => Ok(if op == TriOp::Succ {
                LinComb::basis(t.clone())
            } else {
                LinComb::zero()
            }),
            (Some(t), None) => Ok(if op == TriOp::Prec {
                LinComb::basis(t.clone())
            } else {
                LinComb::zero()
            }),
            (None, None) => Err(Error::InvalidTree(vec![
                "product of the unit with itself is undefined".into(),
            ])),
        }
    }

    fn prec_trees(&self, w: usize, t: &Tree, u: &Tree) -> TreeComb {
        let tv = t.vertex();
        let last = tv.children.len() - 1;
        match &tv.children[last] {
            Child::Leaf(_) => {
                let mut v = tv.clone();
                v.children[last] = Child::Node(Box::new(u.vertex().clone())).with_leftmost(Some(w));
                LinComb::basis(Tree::from_vertex(v))
            }
            Child::Node(s) => {
                let al = s
                    .leftmost_type()
                    .expect("non-extreme subtree has a leftmost type");
                let mut s = (**s).clone();
                s.set_leftmost(None);
                let s = Tree::from_vertex(s);
                let tb = &self.table;
                let mut out = LinComb::zero();
                for (op, inner, outer) in [
                    (TriOp::Succ, tb.rtri(al, w), tb.right(al, w)),
                    (TriOp::Prec, tb.ltri(al, w), tb.left(al, w)),
                    (TriOp::Circ, tb.star(al, w), tb.dot(al, w)),
                ] {
                    for (r, c) in self.basis_product(op, inner, &s, u) {
                        let mut v = tv.clone();
                        v.children[last] =
                            Child::Node(Box::new(r.into_vertex())).with_leftmost(Some(outer));
                        out.add_term(Tree::from_vertex(v), c);
                    }
                }
                out
            }
        }
    }

    fn succ_trees(&self, w: usize, t: &Tree, u: &Tree) -> TreeComb {
        let uv = u.vertex();
        match &uv.children[0] {
            Child::Leaf(_) => {
                let mut v = uv.clone();
                v.children[0] = Child::Node(Box::new(t.vertex().clone())).with_rightmost(Some(w));
                LinComb::basis(Tree::from_vertex(v))
            }
            Child::Node(s) => {
                let be = s
                    .rightmost_type()
                    .expect("non-extreme subtree has a rightmost type");
                let mut s = (**s).clone();
                s.set_rightmost(None);
                let s = Tree::from_vertex(s);
                let tb = &self.table;
                let mut out = LinComb::zero();
                for (op, inner, outer) in [
                    (TriOp::Succ, tb.rtri(w, be), tb.right(w, be)),
                    (TriOp::Prec, tb.ltri(w, be), tb.left(w, be)),
                    (TriOp::Circ, tb.star(w, be), tb.dot(w, be)),
                ] {
                    for (r, c) in self.basis_product(op, inner, t, &s) {
                        let mut v = uv.clone();
                        v.children[0] =
                            Child::Node(Box::new(r.into_vertex())).with_rightmost(Some(outer));
                        out.add_term(Tree::from_vertex(v), c);
                    }
                }
                out
            }
        }
    }

    /// x-corolla ∘_ω U: graft `^ωU₁, U₂, …` after a bare leaf.
    fn corolla_circ(x: &str, w: usize, u: &Tree) -> Tree {
        let uv = u.vertex();
        let mut children = Vec::with_capacity(uv.children.len() + 1);
        children.push(Child::leaf());
        children.push(uv.children[0].clone().with_leftmost(Some(w)));
        children.extend(uv.children[1..].iter().cloned());
        let mut angles = Vec::with_capacity(uv.angles.len() + 1);
        angles.push(x.to_string());
        angles.extend(uv.angles.iter().cloned());
        Tree::from_vertex(Vertex::new(children, angles))
    }

    fn circ_trees(&self, w: usize, t: &Tree, u: &Tree) -> TreeComb {
        let tv = t.vertex();
        match &tv.children[0] {
            Child::Leaf(_) if tv.children.len() == 2 => match &tv.children[1] {
                Child::Leaf(_) => LinComb::basis(Self::corolla_circ(&tv.angles[0], w, u)),
                Child::Node(t2) => {
                    let al = t2.leftmost_type().expect("typed");
                    let mut t2 = (**t2).clone();
                    t2.set_leftmost(None);
                    let inner = self.succ_trees(al, &Tree::from_vertex(t2), u);
                    inner.map_keys(|r| Self::corolla_circ(&tv.angles[0], w, &r))
                }
            },
            Child::Leaf(_) => {
                let al = match &tv.children[1] {
                    Child::Leaf(t) => t.expect("internal leaf is typed"),
                    Child::Node(s) => s.leftmost_type().expect("typed"),
                };
                let mut rest = Vertex::new(tv.children[1..].to_vec(), tv.angles[1..].to_vec());
                rest.set_leftmost(None);
                let inner = self.circ_trees(w, &Tree::from_vertex(rest), u);
                let x1 = &tv.angles[0];
                inner.map_keys(|r| Self::corolla_circ(x1, al, &r))
            }
            Child::Node(t1) => {
                let al = t1.rightmost_type().expect("typed");
                let mut t1 = (**t1).clone();
                t1.set_rightmost(None);
                let t1 = Tree::from_vertex(t1);
                let mut rest = tv.clone();
                rest.children[0] = Child::leaf();
                let inner = self.circ_trees(w, &Tree::from_vertex(rest), u);
                let mut out = LinComb::zero();
                for (r, c) in inner {
                    out.add_scaled(&c, &self.succ_trees(al, &t1, &r));
                }
                out
            }
        }
    }

    /// Σ_α a_α ≺_α + b_α ∘_α + c_α ≻_α.
    pub fn combo_product(&self, coeffs: &Combo, l: &TreeComb, r: &TreeComb) -> TreeComb {
        let mut out = LinComb::zero();
        for w in self.table.elements() {
            for (op, c) in [
                (TriOp::Prec, &coeffs.a[w]),
                (TriOp::Circ, &coeffs.b[w]),
                (TriOp::Succ, &coeffs.c[w]),
            ] {
                if !num_traits::Zero::is_zero(c) {
                    out.add_scaled(c, &self.product(op, w, l, r));
                }
            }
        }
        out
    }
}

impl Tridendriform for FreeTridend {
    type Basis = Tree;

    fn table(&self) -> &OmegaTable {
        &self.table
    }

    fn basis_product(&self, op: TriOp, w: usize, a: &Tree, b: &Tree) -> TreeComb {
        match op {
            TriOp::Prec => self.prec_trees(w, a, b),
            TriOp::Succ => self.succ_trees(w, a, b),
            TriOp::Circ => self.circ_trees(w, a, b),
        }
    }
}

/// Coefficient families `a, b, c : Ω → k` of a combined product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combo {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl Combo {
    pub fn size(&self) -> usize {
        self.a.len()
    }
}

/// The image of `t` under the morphism extending `f` on generators.
pub fn evaluate<A: Tridendriform + ?Sized>(
    t: &Tree,
    target: &A,
    f: &dyn Fn(&str) -> LinComb<A::Basis>,
) -> LinComb<A::Basis> {
    let v = t.vertex();
    match &v.children[0] {
        Child::Leaf(_) if v.is_corolla() => f(&v.angles[0]),
        Child::Leaf(_) if v.children.len() == 2 => {
            let Child::Node(t2) = &v.children[1] else {
                unreachable!("not a corolla")
            };
            let al = t2.leftmost_type().expect("typed");
            let mut t2 = (**t2).clone();
            t2.set_leftmost(None);
            target.prec(
                al,
                &f(&v.angles[0]),
                &evaluate(&Tree::from_vertex(t2), target, f),
            )
        }
        Child::Leaf(_) => {
            let al = match &v.children[1] {
                Child::Leaf(t) => t.expect("typed"),
                Child::Node(s) => s.leftmost_type().expect("typed"),
            };
            let mut rest = Vertex::new(v.children[1..].to_vec(), v.angles[1..].to_vec());
            rest.set_leftmost(None);
            target.circ(
                al,
                &f(&v.angles[0]),
                &evaluate(&Tree::from_vertex(rest), target, f),
            )
        }
        Child::Node(t1) => {
            let al = t1.rightmost_type().expect("typed");
            let mut t1 = (**t1).clone();
            t1.set_rightmost(None);
            let mut rest = v.clone();
            rest.children[0] = Child::leaf();
            target.succ(
                al,
                &evaluate(&Tree::from_vertex(t1), target, f),
                &evaluate(&Tree::from_vertex(rest), target, f),
            )
        }
    }
}

/// All trees over `xs` with between 2 and `max_leaves` leaves.
pub fn tree_basis(xs: &[&str], omega_size: usize, max_leaves: usize) -> Result<Vec<Tree>> {
    let mut out = Vec::new();
    for n in 1..max_leaves {
        out.extend(enumerate(n, xs, omega_size)?);
    }
    Ok(out)
}

/// Exhaustive (tri1)–(tri7) scan on tree triples with at most `leaf_bound`
/// leaves in total.
pub fn tree_axiom_scan(
    alg: &FreeTridend,
    xs: &[&str],
    leaf_bound: usize,
    threads: usize,
) -> AxiomReport {
    let basis = tree_basis(xs, alg.table().size(), leaf_bound.saturating_sub(4))
        .expect("within enumeration guard");
    let src = TripleSource::exhaustive(&basis, Tree::leaves, leaf_bound);
    check_axioms_par(alg, &src, threads)
}
