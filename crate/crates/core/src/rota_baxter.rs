//! Finite-dimensional Ω-Rota-Baxter algebras and the tridendriform
//! structure they induce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::axioms::{TriOp, Tridendriform};
use crate::coeff::{lincomb_extend_bilinear, JsonRational, LinComb, Rational};
use crate::error::{Error, Result};
use crate::omega::{check_ets, OmegaTable};
use crate::report::{AxiomReport, Violation};

/// An associative algebra with operators `P_ω` and weights `μ_ω`.
///
/// `operators[ω][i][j]` is the coefficient of `e_i` in `P_ω(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaRbAlgebra {
    dim: usize,
    mult: Vec<Vec<LinComb<usize>>>,
    operators: Vec<Vec<Vec<Rational>>>,
    weights: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RbJson {
    dim: usize,
    mult: Vec<Vec<Vec<(JsonRational, usize)>>>,
    operators: BTreeMap<String, Vec<Vec<JsonRational>>>,
    weights: BTreeMap<String, JsonRational>,
}

fn omega_keyed<T>(map: BTreeMap<String, T>, what: &str) -> Result<Vec<T>> {
    let mut keyed = Vec::new();
    for (k, v) in map {
        let i: usize = k
            .parse()
            .map_err(|_| Error::Parse(format!("{what} key `{k}` is not an index")))?;
        keyed.push((i, v));
    }
    keyed.sort_by_key(|(i, _)| *i);
    keyed
        .into_iter()
        .enumerate()
        .map(|(want, (i, v))| {
            if i == want {
                Ok(v)
            } else {
                Err(Error::Parse(format!(
                    "{what} keys must be 0..n without gaps; missing {want}"
                )))
            }
        })
        .collect()
}

impl OmegaRbAlgebra {
    /// Rejects non-square data and a non-associative multiplication.
    pub fn new(
        dim: usize,
        mult: Vec<Vec<LinComb<usize>>>,
        operators: Vec<Vec<Vec<Rational>>>,
        weights: Vec<Rational>,
    ) -> Result<Self> {
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "multiplication is not a {dim}×{dim} table"
            )));
        }
        if let Some(k) = mult
            .iter()
            .flatten()
            .flat_map(|c| c.keys())
            .find(|&&k| k >= dim)
        {
            return Err(Error::Dimension(format!(
                "multiplication refers to basis element {k} outside 0..{dim}"
            )));
        }
        for (w, p) in operators.iter().enumerate() {
            if p.len() != dim || p.iter().any(|r| r.len() != dim) {
                return Err(Error::Dimension(format!(
                    "P_{w} is not a {dim}×{dim} matrix"
                )));
            }
        }
        if operators.len() != weights.len() {
            return Err(Error::Dimension(format!(
                "{} operators but {} weights",
                operators.len(),
                weights.len()
            )));
        }
        let alg = Self {
            dim,
            mult,
            operators,
            weights,
        };
        let r = alg.check_associative();
        if !r.passed() {
            return Err(Error::Unverified(Box::new(r)));
        }
        Ok(alg)
    }

    /// kᵈ with coordinatewise multiplication.
    pub fn pointwise(
        dim: usize,
        operators: Vec<Vec<Vec<Rational>>>,
        weights: Vec<Rational>,
    ) -> Result<Self> {
        let mult = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            LinComb::basis(i)
                        } else {
                            LinComb::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(dim, mult, operators, weights)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega_size(&self) -> usize {
        self.operators.len()
    }

    pub fn weight(&self, w: usize) -> &Rational {
        &self.weights[w]
    }

    /// `λ_{α,β} = μ_{α∗β}`.
    pub fn lambda(&self, t: &OmegaTable, al: usize, be: usize) -> &Rational {
        &self.weights[t.star(al, be)]
    }

    pub fn mul(&self, a: &LinComb<usize>, b: &LinComb<usize>) -> LinComb<usize> {
        lincomb_extend_bilinear(|i, j| self.mult[*i][*j].clone(), a, b)
    }

    pub fn apply_operator(&self, w: usize, a: &LinComb<usize>) -> LinComb<usize> {
        let p = &self.operators[w];
        let mut out = LinComb::zero();
        for (j, c) in a {
            for (i, row) in p.iter().enumerate() {
                out.add_term(i, &row[*j] * c);
            }
        }
        out
    }

    fn check_associative(&self) -> AxiomReport {
        let mut r = AxiomReport::new();
        r.declare("mult_assoc");
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    let lhs = self.mul(&self.mult[a][b], &LinComb::basis(c));
                    let rhs = self.mul(&LinComb::basis(a), &self.mult[b][c]);
                    r.record(lhs == rhs, || Violation {
                        axiom: "mult_assoc".into(),
                        witness: format!("(e{a}, e{b}, e{c})"),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        r
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RbJson = serde_json::from_str(s)?;
        let mult = raw
            .mult
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| e.into_iter().map(|(q, k)| (k, q.0)).collect())
                    .collect()
            })
            .collect();
        let operators = omega_keyed(raw.operators, "operators")?
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|r| r.into_iter().map(|q| q.0).collect())
                    .collect()
            })
            .collect();
        let weights = omega_keyed(raw.weights, "weights")?
            .into_iter()
            .map(|q| q.0)
            .collect();
        Self::new(raw.dim, mult, operators, weights)
    }

    pub fn to_json_string(&self) -> String {
        let raw = RbJson {
            dim: self.dim,
            mult: self
                .mult
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            e.iter()
                                .map(|(k, q)| (JsonRational(q.clone()), *k))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            operators: self
                .operators
                .iter()
                .enumerate()
                .map(|(w, m)| {
                    (
                        w.to_string(),
                        m.iter()
                            .map(|r| r.iter().map(|q| JsonRational(q.clone())).collect())
                            .collect(),
                    )
                })
                .collect(),
            weights: self
                .weights
                .iter()
                .enumerate()
                .map(|(w, q)| (w.to_string(), JsonRational(q.clone())))
                .collect(),
        };
        serde_json::to_string(&raw).expect("serializes")
    }
}

/// `P_α(b)P_β(c) = P_{α→β}(P_{α⊳β}(b)c) + P_{α←β}(bP_{α⊲β}(c)) + P_{α·β}(λ_{α,β} bc)`
/// on all basis pairs and all `(α, β)`.
pub fn check_rb(alg: &OmegaRbAlgebra, t: &OmegaTable) -> Result<AxiomReport> {
    if alg.omega_size() != t.size() {
        return Err(Error::Dimension(format!(
            "{} operators for a table of size {}",
            alg.omega_size(),
            t.size()
        )));
    }
    let mut r = AxiomReport::new();
    r.declare("rota_baxter");
    for al in t.elements() {
        for be in t.elements() {
            for b in 0..alg.dim {
                for c in 0..alg.dim {
                    let (eb, ec) = (LinComb::basis(b), LinComb::basis(c));
                    let lhs = alg.mul(&alg.apply_operator(al, &eb), &alg.apply_operator(be, &ec));
                    let mut rhs = alg.apply_operator(
                        t.right(al, be),
                        &alg.mul(&alg.apply_operator(t.rtri(al, be), &eb), &ec),
                    );
                    rhs += alg.apply_operator(
                        t.left(al, be),
                        &alg.mul(&eb, &alg.apply_operator(t.ltri(al, be), &ec)),
                    );
                    rhs += alg.apply_operator(
                        t.dot(al, be),
                        &alg.mul(&eb, &ec).scale(alg.lambda(t, al, be)),
                    );
                    r.record(lhs == rhs, || Violation {
                        axiom: "rota_baxter".into(),
                        witness: format!("α={al}, β={be}, b=e{b}, c=e{c}"),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }
    Ok(r)
}

/// `a ≺_ω b = aP_ω(b)`, `a ≻_ω b = P_ω(a)b`, `a ∘_ω b = μ_ω ab`.
#[derive(Clone, Debug)]
pub struct RbTridend {
    alg: OmegaRbAlgebra,
    table: OmegaTable,
}

impl RbTridend {
    pub fn algebra(&self) -> &OmegaRbAlgebra {
        &self.alg
    }
}

/// Requires `check_rb` to pass, and `check_ets` unless `relax_ets` is set.
pub fn induced_tridend(alg: &OmegaRbAlgebra, t: &OmegaTable, relax_ets: bool) -> Result<RbTridend> {
    let r = check_rb(alg, t)?;
    if !r.passed() {
        return Err(Error::Unverified(Box::new(r)));
    }
    if !relax_ets {
        let e = check_ets(t);
        if !e.passed() {
            return Err(Error::NotEts(Box::new(e)));
        }
    }
    Ok(RbTridend {
        alg: alg.clone(),
        table: t.clone(),
    })
}

impl Tridendriform for RbTridend {
    type Basis = usize;

    fn table(&self) -> &OmegaTable {
        &self.table
    }

    fn basis_product(&self, op: TriOp, w: usize, a: &usize, b: &usize) -> LinComb<usize> {
        let (ea, eb) = (LinComb::basis(*a), LinComb::basis(*b));
        match op {
            TriOp::Prec => self.alg.mul(&ea, &self.alg.apply_operator(w, &eb)),
            TriOp::Succ => self.alg.mul(&self.alg.apply_operator(w, &ea), &eb),
            TriOp::Circ => self.alg.mul(&ea, &eb).scale(&self.alg.weights[w]),
        }
    }
}
