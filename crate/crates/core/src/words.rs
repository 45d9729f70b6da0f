//! Matching associative algebras, Ω-typed words sh⁺(A) with their
//! quasi-shuffle-like products, and the morphism Φ out of sh⁺(A).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::axioms::{TriOp, Tridendriform};
use crate::coeff::{JsonRational, LinComb, Rational};
use crate::error::{Error, Result};
use crate::omega::OmegaTable;
use crate::report::{AxiomReport, Violation};

/// A finite-dimensional A with products ⋆_ω given on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingAlgebra {
    dim: usize,
    /// `star[ω][i][j] = e_i ⋆_ω e_j`.
    star: Vec<Vec<Vec<LinComb<usize>>>>,
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    dim: usize,
    star: BTreeMap<String, Vec<Vec<Vec<(JsonRational, usize)>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl MatchingAlgebra {
    pub fn new(dim: usize, star: Vec<Vec<Vec<LinComb<usize>>>>) -> Result<Self> {
        for (w, t) in star.iter().enumerate() {
            if t.len() != dim || t.iter().any(|r| r.len() != dim) {
                return Err(Error::Dimension(format!(
                    "⋆_{w} is not a {dim}×{dim} table"
                )));
            }
            if let Some(k) = t
                .iter()
                .flatten()
                .flat_map(|c| c.keys())
                .find(|&&k| k >= dim)
            {
                return Err(Error::Dimension(format!(
                    "⋆_{w} refers to basis element {k} outside 0..{dim}"
                )));
            }
        }
        Ok(Self {
            dim,
            star,
            names: None,
        })
    }

    pub fn from_fn(
        dim: usize,
        omega_size: usize,
        f: impl Fn(usize, usize, usize) -> LinComb<usize>,
    ) -> Result<Self> {
        let star = (0..omega_size)
            .map(|w| {
                (0..dim)
                    .map(|i| (0..dim).map(|j| f(w, i, j)).collect())
                    .collect()
            })
            .collect();
        Self::new(dim, star)
    }

    /// kᵈ with coordinatewise product scaled by `lambda[ω]`.
    pub fn pointwise(dim: usize, lambda: &[Rational]) -> Self {
        Self::from_fn(dim, lambda.len(), |w, i, j| {
            if i == j {
                LinComb::term(i, lambda[w].clone())
            } else {
                LinComb::zero()
            }
        })
        .expect("square tables")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::Dimension(format!(
                "{} names for dimension {}",
                names.len(),
                self.dim
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega_size(&self) -> usize {
        self.star.len()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn star(&self, w: usize, i: usize, j: usize) -> &LinComb<usize> {
        &self.star[w][i][j]
    }

    pub fn star_comb(&self, w: usize, a: &LinComb<usize>, b: &LinComb<usize>) -> LinComb<usize> {
        crate::coeff::lincomb_extend_bilinear(|i, j| self.star[w][*i][*j].clone(), a, b)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.omega_size()).all(|w| {
            (0..self.dim).all(|i| (0..self.dim).all(|j| self.star[w][i][j] == self.star[w][j][i]))
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: MatchingJson = serde_json::from_str(s)?;
        let mut keyed = Vec::new();
        for (key, table) in raw.star {
            let idx: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("Ω key `{key}` is not an index")))?;
            keyed.push((idx, table));
        }
        keyed.sort_by_key(|(i, _)| *i);
        let mut star = Vec::new();
        for (expect, (idx, table)) in keyed.into_iter().enumerate() {
            if idx != expect {
                return Err(Error::Parse(format!(
                    "Ω keys must be 0..n without gaps; missing {expect}"
                )));
            }
            let mut rows = Vec::new();
            for row in table {
                let mut out = Vec::new();
                for entry in row {
                    let mut c = LinComb::zero();
                    for (coeff, k) in entry {
                        c.add_term(k, coeff.0);
                    }
                    out.push(c);
                }
                rows.push(out);
            }
            star.push(rows);
        }
        let alg = Self::new(raw.dim, star)?;
        match raw.names {
            Some(n) => alg.with_names(n),
            None => Ok(alg),
        }
    }

    pub fn to_json_string(&self) -> String {
        let star = self
            .star
            .iter()
            .enumerate()
            .map(|(w, t)| {
                let rows = t
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|c| {
                                c.iter()
                                    .map(|(k, q)| (JsonRational(q.clone()), *k))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                (w.to_string(), rows)
            })
            .collect();
        serde_json::to_string(&MatchingJson {
            dim: self.dim,
            star,
            names: self.names.clone(),
        })
        .expect("serializes")
    }
}

/// Verifies `(a ⋆_α b) ⋆_β c = a ⋆_α (b ⋆_β c)` on all basis triples.
pub fn check_matching(alg: &MatchingAlgebra) -> AxiomReport {
    let mut r = AxiomReport::new();
    r.declare("matching_assoc");
    let d = alg.dim;
    for al in 0..alg.omega_size() {
        for be in 0..alg.omega_size() {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let ea = LinComb::basis(a);
                        let ec = LinComb::basis(c);
                        let lhs = alg.star_comb(be, alg.star(al, a, b), &ec);
                        let rhs = alg.star_comb(al, &ea, alg.star(be, b, c));
                        r.record(lhs == rhs, || Violation {
                            axiom: "matching_assoc".into(),
                            witness: format!("a=e{a}, b=e{b}, c=e{c}, α={al}, β={be}"),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
    }
    r
}

/// `v₀ ⊗_{ω₁} v₁ ⊗ … ⊗_{ωₙ} vₙ` with basis letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypedWord {
    letters: Vec<usize>,
    types: Vec<usize>,
}

impl TypedWord {
    pub fn new(letters: Vec<usize>, types: Vec<usize>) -> Result<Self> {
        if letters.is_empty() || types.len() + 1 != letters.len() {
            return Err(Error::InvalidWord(format!(
                "{} letters need {} types, got {}",
                letters.len(),
                letters.len().saturating_sub(1),
                types.len()
            )));
        }
        Ok(Self { letters, types })
    }

    pub fn letter(a: usize) -> Self {
        Self {
            letters: vec![a],
            types: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    /// ℓ(v).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(v₀, ω₁, v₁ ⊗ …)` for words of length at least 2.
    fn split_first(&self) -> Option<(usize, usize, TypedWord)> {
        if self.len() < 2 {
            return None;
        }
        Some((
            self.letters[0],
            self.types[0],
            TypedWord {
                letters: self.letters[1..].to_vec(),
                types: self.types[1..].to_vec(),
            },
        ))
    }

    fn prepend(&self, a: usize, w: usize) -> TypedWord {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(a);
        letters.extend_from_slice(&self.letters);
        let mut types = Vec::with_capacity(self.types.len() + 1);
        types.push(w);
        types.extend_from_slice(&self.types);
        TypedWord { letters, types }
    }

    /// Parses `a0 :w1 a1 :w2 a2`, resolving letter names if given.
    pub fn parse(s: &str, letter_names: Option<&[String]>) -> Result<Self> {
        let mut letters = Vec::new();
        let mut types = Vec::new();
        for (i, tok) in s.split_whitespace().enumerate() {
            if i % 2 == 1 {
                let t = tok
                    .strip_prefix(':')
                    .ok_or_else(|| Error::InvalidWord(format!("expected `:type`, got `{tok}`")))?;
                types.push(
                    t.parse()
                        .map_err(|_| Error::InvalidWord(format!("bad type `{t}`")))?,
                );
            } else {
                let idx = letter_names
                    .and_then(|n| n.iter().position(|x| x == tok))
                    .map(Ok)
                    .unwrap_or_else(|| {
                        tok.parse()
                            .map_err(|_| Error::InvalidWord(format!("unknown letter `{tok}`")))
                    })?;
                letters.push(idx);
            }
        }
        Self::new(letters, types)
    }

    pub fn render(&self, letter_names: Option<&[String]>) -> String {
        let name = |a: usize| {
            letter_names
                .and_then(|n| n.get(a))
                .cloned()
                .unwrap_or_else(|| a.to_string())
        };
        let mut s = name(self.letters[0]);
        for (t, a) in self.types.iter().zip(&self.letters[1..]) {
            s.push_str(&format!(" :{t} {}", name(*a)));
        }
        s
    }

    fn check(&self, dim: usize, omega_size: usize) -> Result<()> {
        if let Some(a) = self.letters.iter().find(|&&a| a >= dim) {
            return Err(Error::InvalidWord(format!("letter {a} outside 0..{dim}")));
        }
        if let Some(&w) = self.types.iter().find(|&&w| w >= omega_size) {
            return Err(Error::OmegaOutOfRange {
                elem: w,
                size: omega_size,
            });
        }
        Ok(())
    }
}

impl fmt::Display for TypedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

pub type WordComb = LinComb<TypedWord>;

/// sh⁺(A) over a table Ω.
#[derive(Clone, Debug)]
pub struct TypedWords {
    table: OmegaTable,
    alg: MatchingAlgebra,
}

impl TypedWords {
    /// Requires `alg` to pass [`check_matching`] and to be indexed by Ω.
    pub fn new(table: OmegaTable, alg: MatchingAlgebra) -> Result<Self> {
        if alg.omega_size() != table.size() {
            return Err(Error::Dimension(format!(
                "algebra has {} products, table has {} elements",
                alg.omega_size(),
                table.size()
            )));
        }
        let r = check_matching(&alg);
        if !r.passed() {
            return Err(Error::Unverified(Box::new(r)));
        }
        Ok(Self { table, alg })
    }

    pub fn algebra(&self) -> &MatchingAlgebra {
        &self.alg
    }

    /// Validated product of two combinations.
    pub fn word_product(
        &self,
        op: TriOp,
        w: usize,
        a: &WordComb,
        b: &WordComb,
    ) -> Result<WordComb> {
        self.table.check_element(w)?;
        for v in a.keys().chain(b.keys()) {
            v.check(self.alg.dim, self.table.size())?;
        }
        Ok(self.product(op, w, a, b))
    }

    /// `x ⊗_ω W` for a letter combination x.
    fn prefix(x: &LinComb<usize>, w: usize, rest: &WordComb) -> WordComb {
        let mut out = LinComb::zero();
        for (a, ca) in x {
            for (v, cv) in rest {
                out.add_term(v.prepend(*a, w), ca * cv);
            }
        }
        out
    }

    fn letters(x: &LinComb<usize>) -> WordComb {
        x.iter()
            .map(|(a, c)| (TypedWord::letter(*a), c.clone()))
            .collect()
    }

    /// The three-term tail `x ⊗_{α→β}(a ≻_{α⊳β} b) + x ⊗_{α←β}(a ≺_{α⊲β} b) + x ⊗_{α·β}(a ∘_{α∗β} b)`.
    fn tail(
        &self,
        x: &LinComb<usize>,
        al: usize,
        be: usize,
        a: &TypedWord,
        b: &TypedWord,
    ) -> WordComb {
        let t = &self.table;
        let mut out = Self::prefix(
            x,
            t.right(al, be),
            &self.basis_product(TriOp::Succ, t.rtri(al, be), a, b),
        );
        out += Self::prefix(
            x,
            t.left(al, be),
            &self.basis_product(TriOp::Prec, t.ltri(al, be), a, b),
        );
        out += Self::prefix(
            x,
            t.dot(al, be),
            &self.basis_product(TriOp::Circ, t.star(al, be), a, b),
        );
        out
    }

    /// Product where either side may be the empty word `1` (`None`).
    pub fn unit_product(
        &self,
        op: TriOp,
        w: usize,
        a: Option<&TypedWord>,
        b: Option<&TypedWord>,
    ) -> Result<WordComb> {
        match (a, b) {
            (Some(a), Some(b)) => Ok(self.basis_product(op, w, a, b)),
            (None, Some(b)) => Ok(if op == TriOp::Succ {
                LinComb::basis(b.clone())
            } else {
                LinComb::zero()
            }),
            (Some(a), None) => Ok(if op == TriOp::Prec {
                LinComb::basis(a.clone())
            } else {
                LinComb::zero()
            }),
            (None, None) => Err(Error::InvalidWord(
                "product of the empty word with itself is undefined".into(),
            )),
        }
    }
}

impl Tridendriform for TypedWords {
    type Basis = TypedWord;

    fn table(&self) -> &OmegaTable {
        &self.table
    }

    fn basis_product(&self, op: TriOp, w: usize, a: &TypedWord, b: &TypedWord) -> WordComb {
        match op {
            TriOp::Prec => match a.split_first() {
                None => LinComb::basis(b.prepend(a.letters[0], w)),
                Some((a1, al, rest)) => self.tail(&LinComb::basis(a1), al, w, &rest, b),
            },
            TriOp::Succ => match b.split_first() {
                None => LinComb::basis(a.prepend(b.letters[0], w)),
                Some((b1, be, rest)) => {
                    let t = &self.table;
                    let x = LinComb::basis(b1);
                    let mut out = Self::prefix(
                        &x,
                        t.right(w, be),
                        &self.basis_product(TriOp::Succ, t.rtri(w, be), a, &rest),
                    );
                    out += Self::prefix(
                        &x,
                        t.left(w, be),
                        &self.basis_product(TriOp::Prec, t.ltri(w, be), a, &rest),
                    );
                    out += Self::prefix(
                        &x,
                        t.dot(w, be),
                        &self.basis_product(TriOp::Circ, t.star(w, be), a, &rest),
                    );
                    out
                }
            },
            TriOp::Circ => {
                let head = self.alg.star(w, a.letters[0], b.letters[0]);
                match (a.split_first(), b.split_first()) {
                    (None, None) => Self::letters(head),
                    (None, Some((_, be, rest))) => Self::prefix(head, be, &LinComb::basis(rest)),
                    (Some((_, al, rest)), None) => Self::prefix(head, al, &LinComb::basis(rest)),
                    (Some((_, al, ra)), Some((_, be, rb))) => self.tail(head, al, be, &ra, &rb),
                }
            }
        }
    }
}

/// Delannoy numbers: `D(m, n) = D(m−1, n) + D(m, n−1) + D(m−1, n−1)`.
pub fn quasi_shuffle_term_count(m: usize, n: usize) -> BigUint {
    let mut d = vec![vec![BigUint::one(); n + 1]; m + 1];
    for i in 1..=m {
        for j in 1..=n {
            d[i][j] = &d[i - 1][j] + &d[i][j - 1] + &d[i - 1][j - 1];
        }
    }
    d[m][n].clone()
}

/// All words with letters in `0..dim`, types in `0..omega_size` and the given length.
pub fn words_of_length(dim: usize, omega_size: usize, len: usize) -> Vec<TypedWord> {
    let mut out = vec![TypedWord {
        letters: Vec::new(),
        types: Vec::new(),
    }];
    for i in 0..len {
        let mut next = Vec::new();
        for v in &out {
            for a in 0..dim {
                if i == 0 {
                    next.push(TypedWord {
                        letters: vec![a],
                        types: Vec::new(),
                    });
                } else {
                    for w in 0..omega_size {
                        let mut u = v.clone();
                        u.letters.push(a);
                        u.types.push(w);
                        next.push(u);
                    }
                }
            }
        }
        out = next;
    }
    out
}

/// The free matching algebra on `gens` generators truncated above length
/// `max_len`: basis = typed words, `u ⋆_ω v = u ⊗_ω v` or 0 if too long.
pub fn free_matching_truncated(
    gens: usize,
    omega_size: usize,
    max_len: usize,
) -> (MatchingAlgebra, Vec<TypedWord>) {
    let basis: Vec<TypedWord> = (1..=max_len)
        .flat_map(|l| words_of_length(gens, omega_size, l))
        .collect();
    let index: BTreeMap<&TypedWord, usize> =
        basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let alg = MatchingAlgebra::from_fn(basis.len(), omega_size, |w, i, j| {
        let (u, v) = (&basis[i], &basis[j]);
        if u.len() + v.len() > max_len {
            return LinComb::zero();
        }
        let mut letters = u.letters.clone();
        letters.extend_from_slice(&v.letters);
        let mut types = u.types.clone();
        types.push(w);
        types.extend_from_slice(&v.types);
        LinComb::basis(index[&TypedWord { letters, types }])
    })
    .expect("square tables");
    let names = basis
        .iter()
        .map(|w| {
            let mut s = format!("x{}", w.letters[0]);
            for (t, a) in w.types.iter().zip(&w.letters[1..]) {
                s.push_str(&format!("_{t}_x{a}"));
            }
            s
        })
        .collect();
    (
        alg.with_names(names).expect("one name per basis element"),
        basis,
    )
}

/// Φ: sh⁺(A) → B extending `phi`, with `Φ(a₁ ⊗_α a′) = Φ(a₁) ≺_α Φ(a′)`.
pub struct UniversalMorphism<'a, B: Tridendriform + ?Sized> {
    target: &'a B,
    phi: Vec<LinComb<B::Basis>>,
}

impl<'a, B: Tridendriform + ?Sized> UniversalMorphism<'a, B> {
    /// Checks `phi(e_i ⋆_ω e_j) = phi(e_i) ∘_ω phi(e_j)` on all basis pairs.
    pub fn new(alg: &MatchingAlgebra, phi: Vec<LinComb<B::Basis>>, target: &'a B) -> Result<Self> {
        if phi.len() != alg.dim() {
            return Err(Error::Dimension(format!(
                "phi has {} images for dimension {}",
                phi.len(),
                alg.dim()
            )));
        }
        let mut r = AxiomReport::new();
        r.declare("phi_morphism");
        for w in 0..alg.omega_size() {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let lhs = alg.star(w, i, j).map_linear(|k| phi[*k].clone());
                    let rhs = target.circ(w, &phi[i], &phi[j]);
                    r.record(lhs == rhs, || Violation {
                        axiom: "phi_morphism".into(),
                        witness: format!("e{i} ⋆_{w} e{j}"),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        if !r.passed() {
            return Err(Error::Unverified(Box::new(r)));
        }
        Ok(Self { target, phi })
    }

    pub fn apply_word(&self, v: &TypedWord) -> LinComb<B::Basis> {
        match v.split_first() {
            None => self.phi[v.letters[0]].clone(),
            Some((a1, al, rest)) => self.target.prec(al, &self.phi[a1], &self.apply_word(&rest)),
        }
    }

    pub fn apply(&self, w: &WordComb) -> LinComb<B::Basis> {
        w.map_linear(|v| self.apply_word(v))
    }
}

/// `universal_morphism(w, phi, target)` in one call.
pub fn universal_morphism<B: Tridendriform + ?Sized>(
    w: &WordComb,
    alg: &MatchingAlgebra,
    phi: Vec<LinComb<B::Basis>>,
    target: &B,
) -> Result<LinComb<B::Basis>> {
    Ok(UniversalMorphism::new(alg, phi, target)?.apply(w))
}
