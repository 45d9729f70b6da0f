//! The maps φ_←, φ_→, φ_∗ on Ω², the classical tridendriform structure on
//! kΩ ⊗ A, and rank probes for generation and freeness by the elements
//! `ω ⊗ (x-corolla)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::axioms::{TriOp, Tridendriform};
use crate::coeff::LinComb;
use crate::error::{Error, Result};
use crate::free::{evaluate, FreeTridend};
use crate::linalg::Echelon;
use crate::omega::OmegaTable;
use crate::tree::{count, enumerate, schroeder, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiKind {
    Left,
    Right,
    Star,
}

impl PhiKind {
    pub const ALL: [PhiKind; 3] = [PhiKind::Left, PhiKind::Right, PhiKind::Star];

    pub fn symbol(self) -> &'static str {
        match self {
            PhiKind::Left => "φ_←",
            PhiKind::Right => "φ_→",
            PhiKind::Star => "φ_∗",
        }
    }

    pub fn apply(self, t: &OmegaTable, a: usize, b: usize) -> (usize, usize) {
        match self {
            PhiKind::Left => (t.left(a, b), t.ltri(a, b)),
            PhiKind::Right => (t.right(a, b), t.rtri(a, b)),
            PhiKind::Star => (t.dot(a, b), t.star(a, b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub which: PhiKind,
    pub surjective: bool,
    pub injective: bool,
    pub image_size: usize,
    /// Smallest pair outside the image.
    pub missing: Option<(usize, usize)>,
    /// Two distinct pairs with the same image.
    pub collision: Option<((usize, usize), (usize, usize))>,
}

pub fn phi_properties(t: &OmegaTable) -> [PhiReport; 3] {
    PhiKind::ALL.map(|which| {
        let mut fibers: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for a in t.elements() {
            for b in t.elements() {
                fibers.entry(which.apply(t, a, b)).or_default().push((a, b));
            }
        }
        let missing = t
            .elements()
            .flat_map(|a| t.elements().map(move |b| (a, b)))
            .find(|p| !fibers.contains_key(p));
        let collision = fibers.values().find(|f| f.len() > 1).map(|f| (f[0], f[1]));
        PhiReport {
            which,
            surjective: missing.is_none(),
            injective: collision.is_none(),
            image_size: fibers.len(),
            missing,
            collision,
        }
    })
}

/// A basis element `ω ⊗ x` of kΩ ⊗ A.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tagged<B> {
    pub omega: usize,
    pub elem: B,
}

impl<B: fmt::Display> fmt::Display for Tagged<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.omega, self.elem)
    }
}

/// kΩ ⊗ A with the collapsed products, seen as an algebra over the
/// one-element table so the classical axioms can be checked generically.
pub struct Collapsed<'a, A: Tridendriform + ?Sized> {
    inner: &'a A,
    classical: OmegaTable,
}

impl<'a, A: Tridendriform + ?Sized> Collapsed<'a, A> {
    pub fn new(inner: &'a A) -> Self {
        Self {
            inner,
            classical: OmegaTable::from_fn(1, |_, _, _| 0).expect("one-element table"),
        }
    }

    pub fn inner(&self) -> &A {
        self.inner
    }
}

impl<A: Tridendriform + ?Sized> Tridendriform for Collapsed<'_, A> {
    type Basis = Tagged<A::Basis>;

    fn table(&self) -> &OmegaTable {
        &self.classical
    }

    fn basis_product(
        &self,
        op: TriOp,
        _w: usize,
        x: &Self::Basis,
        y: &Self::Basis,
    ) -> LinComb<Self::Basis> {
        let t = self.inner.table();
        let (al, be) = (x.omega, y.omega);
        let (tag, w) = match op {
            TriOp::Prec => (t.left(al, be), t.ltri(al, be)),
            TriOp::Succ => (t.right(al, be), t.rtri(al, be)),
            TriOp::Circ => (t.dot(al, be), t.star(al, be)),
        };
        let prod = self.inner.basis_product(op, w, &x.elem, &y.elem);
        prod.map_keys(|elem| Tagged { omega: tag, elem })
    }
}

/// One of the three collapsed products, after checking `alg` is over `t`.
pub fn collapsed_product<A: Tridendriform + ?Sized>(
    op: TriOp,
    t: &OmegaTable,
    alg: &A,
    x: &LinComb<Tagged<A::Basis>>,
    y: &LinComb<Tagged<A::Basis>>,
) -> Result<LinComb<Tagged<A::Basis>>> {
    if alg.table() != t {
        return Err(Error::Dimension(
            "algebra is defined over a different table".into(),
        ));
    }
    if let Some(k) = x.keys().chain(y.keys()).find(|k| k.omega >= t.size()) {
        return Err(Error::OmegaOutOfRange {
            elem: k.omega,
            size: t.size(),
        });
    }
    Ok(Collapsed::new(alg).product(op, 0, x, y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub degree: usize,
    pub rank: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub holds: bool,
    pub n_max: usize,
    pub degrees: Vec<DegreeRank>,
    /// For generation: a basis vector `ω ⊗ T` outside the span at the first failing degree.
    pub missing: Option<String>,
    /// For freeness: a nonzero combination of free basis trees mapped to 0.
    pub dependency: Option<String>,
}

/// Cap on `|Ω| · |𝔗ₙ(X, Ω)|` per degree.
pub const PROBE_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    Generation,
    Freeness,
}

/// Images in kΩ ⊗ k𝔗ₙ(X, Ω) of the free classical tridendriform algebra on
/// the generators `ω ⊗ x`, degree by degree, compared with the full
/// dimension (generation) or the free dimension (freeness).
pub fn probe(mode: ProbeMode, t: &OmegaTable, xs: &[&str], n_max: usize) -> Result<ProbeReport> {
    if n_max < 2 {
        return Err(Error::Parse("n_max must be at least 2".into()));
    }
    let alg = FreeTridend::unchecked(t.clone());
    let coll = Collapsed::new(&alg);
    let gens: Vec<(String, usize, &str)> = t
        .elements()
        .flat_map(|w| {
            xs.iter()
                .enumerate()
                .map(move |(i, x)| (format!("g{w}x{i}"), w, *x))
        })
        .collect();
    let image = |name: &str| -> LinComb<Tagged<Tree>> {
        let (_, w, x) = gens.iter().find(|g| g.0 == name).expect("generator name");
        LinComb::basis(Tagged {
            omega: *w,
            elem: Tree::corolla(x),
        })
    };
    let gen_names: Vec<&str> = gens.iter().map(|g| g.0.as_str()).collect();
    let mut degrees = Vec::new();
    for n in 1..=n_max {
        let full = BigUint::from(t.size()) * count(n, xs.len(), t.size());
        let free = schroeder(n) * BigUint::from(gens.len()).pow(n as u32);
        let target = match mode {
            ProbeMode::Generation => full.clone(),
            ProbeMode::Freeness => free.clone(),
        };
        let guard = full.max(free);
        let target: usize = target.try_into().unwrap_or(usize::MAX);
        if guard > BigUint::from(PROBE_LIMIT) {
            return Err(Error::ResourceGuard {
                what: "probe dimension",
                value: guard.try_into().unwrap_or(usize::MAX),
                limit: PROBE_LIMIT,
            });
        }
        let free_basis = enumerate(n, &gen_names, 1)?;
        let mut ech = Echelon::new();
        let mut dependency = None;
        for tree in &free_basis {
            let v = evaluate(tree, &coll, &image);
            if let Some(dep) = ech.insert(&v) {
                dependency.get_or_insert(dep);
            }
        }
        degrees.push(DegreeRank {
            degree: n,
            rank: ech.rank(),
            target,
        });
        if ech.rank() != target {
            let mut report = ProbeReport {
                holds: false,
                n_max,
                degrees,
                missing: None,
                dependency: None,
            };
            match mode {
                ProbeMode::Generation => {
                    let missing = t.elements().find_map(|w| {
                        enumerate(n, xs, t.size()).ok()?.into_iter().find_map(|tr| {
                            let v = LinComb::basis(Tagged { omega: w, elem: tr });
                            (!ech.contains(&v)).then(|| v.to_string())
                        })
                    });
                    report.missing = missing;
                }
                ProbeMode::Freeness => {
                    report.dependency =
                        dependency.map(|d| d.map_keys(|i| free_basis[i].clone()).to_string());
                }
            }
            return Ok(report);
        }
    }
    Ok(ProbeReport {
        holds: true,
        n_max,
        degrees,
        missing: None,
        dependency: None,
    })
}

pub fn generation_probe(t: &OmegaTable, xs: &[&str], n_max: usize) -> Result<ProbeReport> {
    probe(ProbeMode::Generation, t, xs, n_max)
}

pub fn freeness_probe(t: &OmegaTable, xs: &[&str], n_max: usize) -> Result<ProbeReport> {
    probe(ProbeMode::Freeness, t, xs, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_axioms, TripleSource};
    use crate::omega::{builtin, builtin_table, Builtin};

    fn matching2() -> OmegaTable {
        builtin(Builtin::Matching, 2, None, None).unwrap()
    }

    fn tagged(w: usize, s: &str) -> LinComb<Tagged<Tree>> {
        LinComb::basis(Tagged {
            omega: w,
            elem: Tree::parse(s).unwrap(),
        })
    }

    #[test]
    fn phi_examples() {
        let m = phi_properties(&matching2());
        assert!(m.iter().all(|r| r.surjective && r.injective));
        let pa = builtin_table(Builtin::ProjectionsA, 2, None, None).unwrap();
        let r = phi_properties(&pa);
        assert!(r[0].surjective && r[0].injective);
        assert_eq!(r[1].image_size, 2);
        assert!(!r[1].surjective && !r[1].injective);
        assert_eq!(r[1].missing, Some((0, 1)));
        assert_eq!(r[1].collision, Some(((0, 0), (0, 1))));
        // a swap check by enumeration
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(PhiKind::Right.apply(&matching2(), a, b), (b, a));
            }
        }
    }

    #[test]
    fn collapsed_prec_example() {
        let t = matching2();
        let alg = FreeTridend::new(t.clone()).unwrap();
        for al in 0..2 {
            for be in 0..2 {
                let got = collapsed_product(
                    TriOp::Prec,
                    &t,
                    &alg,
                    &tagged(al, "(| x |)"),
                    &tagged(be, "(| y |)"),
                )
                .unwrap();
                let want = tagged(t.left(al, be), &format!("(| x (|:{} y |))", t.ltri(al, be)));
                assert_eq!(got, want);
            }
        }
        let zero = LinComb::zero();
        assert!(
            collapsed_product(TriOp::Prec, &t, &alg, &zero, &tagged(0, "(| y |)"))
                .unwrap()
                .is_zero()
        );
        let other = builtin(Builtin::Trivial, 2, None, None).unwrap();
        assert!(collapsed_product(TriOp::Prec, &other, &alg, &zero, &zero).is_err());
    }

    #[test]
    fn classical_axioms_on_collapsed_trees() {
        let t = matching2();
        let alg = FreeTridend::new(t.clone()).unwrap();
        let coll = Collapsed::new(&alg);
        let mut basis = Vec::new();
        for w in 0..2 {
            for tr in crate::free::tree_basis(&["x"], 2, 3).unwrap() {
                basis.push(Tagged { omega: w, elem: tr });
            }
        }
        let src = TripleSource::exhaustive(&basis, |b| b.elem.leaves(), 7);
        let r = check_axioms(&coll, &src);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn first_classical_instance_by_hand() {
        // (a≺b)≺c = a≺(b≺c + b≻c + b∘c) on generators
        let t = matching2();
        let alg = FreeTridend::new(t.clone()).unwrap();
        let c = Collapsed::new(&alg);
        for (a, b, cc) in [(0, 1, 0), (1, 1, 0), (0, 0, 1)] {
            let (x, y, z) = (
                tagged(a, "(| x |)"),
                tagged(b, "(| y |)"),
                tagged(cc, "(| z |)"),
            );
            let lhs = c.prec(0, &c.prec(0, &x, &y), &z);
            let inner = &(&c.prec(0, &y, &z) + &c.succ(0, &y, &z)) + &c.circ(0, &y, &z);
            assert_eq!(lhs, c.prec(0, &x, &inner));
        }
    }

    #[test]
    fn probes_on_builtins() {
        let m = matching2();
        let g = generation_probe(&m, &["x"], 3).unwrap();
        assert!(g.holds);
        assert_eq!(
            g.degrees.iter().map(|d| d.rank).collect::<Vec<_>>(),
            vec![2, 12, 88]
        );
        assert!(freeness_probe(&m, &["x"], 3).unwrap().holds);

        let one = builtin(Builtin::Trivial, 1, None, None).unwrap();
        let f = freeness_probe(&one, &["x"], 3).unwrap();
        assert!(f.holds);
        assert_eq!(
            f.degrees.iter().map(|d| d.rank).collect::<Vec<_>>(),
            vec![1, 3, 11]
        );

        let pa = builtin_table(Builtin::ProjectionsA, 2, None, None).unwrap();
        let g = generation_probe(&pa, &["x"], 3).unwrap();
        assert!(!g.holds);
        assert_eq!(g.degrees.last().unwrap().degree, 2);
        assert!(g.missing.is_some());
        let f = freeness_probe(&pa, &["x"], 3).unwrap();
        assert!(!f.holds);
        assert!(f.dependency.is_some());
    }

    #[test]
    fn missing_vector_is_a_succ_shape() {
        let pa = builtin_table(Builtin::ProjectionsA, 2, None, None).unwrap();
        let g = generation_probe(&pa, &["x"], 2).unwrap();
        // φ_→ = (α, α) misses (0, 1): 0 ⊗ ((| x |:1) x |) is unreachable
        assert_eq!(g.missing.as_deref(), Some("1*<0 ⊗ ((| x |:1) x |)>"));
    }
}
