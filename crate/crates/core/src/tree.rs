//! Angularly decorated, leaf-typed Schröder trees.
//!
//! Text form: `node := "(" item {" " item} ")"`, items alternating
//! child and angle label; `child := "|" | "|:" IDENT | node`.
//! The 3-leaf corolla with angles `x`, `y` and middle leaf typed `a`
//! is `(| x |:a y |)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A child edge: either a leaf, possibly typed by an element of Ω, or a
/// subtree. `Node` sorts before `Leaf` and an untyped leaf before a typed one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Child {
    Node(Box<Vertex>),
    Leaf(Option<usize>),
}

/// A vertex with its children left to right and the angle labels between
/// consecutive children. Used both for whole trees and for grafted subtrees,
/// whose extreme leaves may carry types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub children: Vec<Child>,
    pub angles: Vec<String>,
}

/// A validated element of 𝔗(X, Ω).
///
/// The derived order (children first, then angles) is the canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree(Vertex);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub leaves: usize,
    pub internal_leaves: usize,
    pub angles: usize,
}

impl Child {
    pub fn leaf() -> Child {
        Child::Leaf(None)
    }

    pub fn typed(w: usize) -> Child {
        Child::Leaf(Some(w))
    }

    pub fn is_bare_leaf(&self) -> bool {
        matches!(self, Child::Leaf(_))
    }

    fn leftmost_slot(&mut self) -> &mut Option<usize> {
        match self {
            Child::Leaf(t) => t,
            Child::Node(v) => v.children[0].leftmost_slot(),
        }
    }

    fn rightmost_slot(&mut self) -> &mut Option<usize> {
        match self {
            Child::Leaf(t) => t,
            Child::Node(v) => v
                .children
                .last_mut()
                .expect("vertex has children")
                .rightmost_slot(),
        }
    }

    fn leftmost(&self) -> Option<usize> {
        match self {
            Child::Leaf(t) => *t,
            Child::Node(v) => v.children[0].leftmost(),
        }
    }

    fn rightmost(&self) -> Option<usize> {
        match self {
            Child::Leaf(t) => *t,
            Child::Node(v) => v.children.last().expect("vertex has children").rightmost(),
        }
    }

    /// The subtree with its leftmost leaf type replaced. A bare leaf becomes
    /// a typed leaf.
    pub fn with_leftmost(mut self, w: Option<usize>) -> Child {
        *self.leftmost_slot() = w;
        self
    }

    pub fn with_rightmost(mut self, w: Option<usize>) -> Child {
        *self.rightmost_slot() = w;
        self
    }

    fn leaf_count(&self) -> usize {
        match self {
            Child::Leaf(_) => 1,
            Child::Node(v) => v.leaf_count(),
        }
    }
}

impl Vertex {
    pub fn new(children: Vec<Child>, angles: Vec<String>) -> Vertex {
        Vertex { children, angles }
    }

    pub fn corolla(x: &str) -> Vertex {
        Vertex {
            children: vec![Child::leaf(), Child::leaf()],
            angles: vec![x.to_string()],
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.children.iter().map(Child::leaf_count).sum()
    }

    pub fn leftmost_type(&self) -> Option<usize> {
        self.children[0].leftmost()
    }

    pub fn rightmost_type(&self) -> Option<usize> {
        self.children
            .last()
            .expect("vertex has children")
            .rightmost()
    }

    pub fn set_leftmost(&mut self, w: Option<usize>) {
        *self.children[0].leftmost_slot() = w;
    }

    pub fn set_rightmost(&mut self, w: Option<usize>) {
        *self
            .children
            .last_mut()
            .expect("vertex has children")
            .rightmost_slot() = w;
    }

    pub fn is_corolla(&self) -> bool {
        self.children.len() == 2 && self.children.iter().all(Child::is_bare_leaf)
    }

    fn leaf_types(&self, out: &mut Vec<Option<usize>>) {
        for c in &self.children {
            match c {
                Child::Leaf(t) => out.push(*t),
                Child::Node(v) => v.leaf_types(out),
            }
        }
    }

    fn structural_errors(&self, path: &mut Vec<usize>, errs: &mut Vec<String>) {
        let here = || {
            if path.is_empty() {
                "root".to_string()
            } else {
                format!("vertex {path:?}")
            }
        };
        if self.children.len() < 2 {
            errs.push(format!(
                "{} has {} child(ren), needs at least 2",
                here(),
                self.children.len()
            ));
        }
        if self.angles.len() + 1 != self.children.len() {
            errs.push(format!(
                "{} has {} angle label(s) for {} children",
                here(),
                self.angles.len(),
                self.children.len()
            ));
        }
        for a in &self.angles {
            if !is_ident(a) {
                errs.push(format!("{} has invalid angle label {a:?}", here()));
            }
        }
        for (i, c) in self.children.iter().enumerate() {
            if let Child::Node(v) = c {
                path.push(i);
                v.structural_errors(path, errs);
                path.pop();
            }
        }
    }

    /// Leaf-type errors for a subtree whose extreme leaves are allowed (but
    /// not required) to be typed, i.e. a child in a larger tree.
    fn as_subtree_errors(&self, omega_size: Option<usize>) -> Vec<String> {
        let mut errs = Vec::new();
        self.structural_errors(&mut Vec::new(), &mut errs);
        let mut types = Vec::new();
        self.leaf_types(&mut types);
        let k = types.len();
        for (i, t) in types.iter().enumerate() {
            let extreme = i == 0 || i + 1 == k;
            match t {
                None if !extreme => errs.push(format!("leaf {i} is internal but has no type")),
                Some(w) => {
                    if let Some(n) = omega_size {
                        if *w >= n {
                            errs.push(format!("leaf {i} has type {w} outside 0..{n}"));
                        }
                    }
                }
                None => {}
            }
        }
        errs
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s, None);
        s
    }

    pub fn render_named(&self, omega_names: &[String]) -> String {
        let mut s = String::new();
        self.render_into(&mut s, Some(omega_names));
        s
    }

    fn render_into(&self, s: &mut String, names: Option<&[String]>) {
        s.push('(');
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                s.push(' ');
                s.push_str(&self.angles[i - 1]);
                s.push(' ');
            }
            match c {
                Child::Leaf(None) => s.push('|'),
                Child::Leaf(Some(w)) => {
                    s.push_str("|:");
                    match names.and_then(|n| n.get(*w)) {
                        Some(name) => s.push_str(name),
                        None => s.push_str(&w.to_string()),
                    }
                }
                Child::Node(v) => v.render_into(s, names),
            }
        }
        s.push(')');
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Checks a candidate tree; returns every violation found.
pub fn validate(candidate: Vertex, omega_size: Option<usize>) -> Result<Tree> {
    let mut errs = candidate.as_subtree_errors(omega_size);
    if errs.is_empty() {
        if candidate.leftmost_type().is_some() {
            errs.push("leftmost leaf must not carry a type".into());
        }
        if candidate.rightmost_type().is_some() {
            errs.push("rightmost leaf must not carry a type".into());
        }
    }
    if errs.is_empty() {
        Ok(Tree(candidate))
    } else {
        Err(Error::InvalidTree(errs))
    }
}

impl Tree {
    /// The `x`-corolla: one vertex, two untyped leaves.
    pub fn corolla(x: &str) -> Tree {
        Tree(Vertex::corolla(x))
    }

    /// Wraps a vertex already known to satisfy the invariants.
    pub(crate) fn from_vertex(v: Vertex) -> Tree {
        debug_assert!(
            v.leftmost_type().is_none() && v.rightmost_type().is_none(),
            "{v}"
        );
        Tree(v)
    }

    pub fn vertex(&self) -> &Vertex {
        &self.0
    }

    pub fn into_vertex(self) -> Vertex {
        self.0
    }

    pub fn children(&self) -> &[Child] {
        &self.0.children
    }

    pub fn angles(&self) -> &[String] {
        &self.0.angles
    }

    pub fn leaves(&self) -> usize {
        self.0.leaf_count()
    }

    /// Degree n with this tree in 𝔗ₙ.
    pub fn degree(&self) -> usize {
        self.leaves() - 1
    }

    pub fn stats(&self) -> TreeStats {
        let leaves = self.leaves();
        TreeStats {
            leaves,
            internal_leaves: leaves - 2,
            angles: self.angle_count(),
        }
    }

    fn angle_count(&self) -> usize {
        fn go(v: &Vertex) -> usize {
            v.angles.len()
                + v.children
                    .iter()
                    .map(|c| match c {
                        Child::Node(w) => go(w),
                        Child::Leaf(_) => 0,
                    })
                    .sum::<usize>()
        }
        go(&self.0)
    }

    pub fn is_corolla(&self) -> bool {
        self.0.is_corolla()
    }

    /// Largest Ω index used by a leaf type, if any.
    pub fn max_type(&self) -> Option<usize> {
        let mut types = Vec::new();
        self.0.leaf_types(&mut types);
        types.into_iter().flatten().max()
    }

    pub fn render(&self) -> String {
        self.0.render()
    }

    pub fn render_named(&self, omega_names: &[String]) -> String {
        self.0.render_named(omega_names)
    }

    pub fn parse(text: &str) -> Result<Tree> {
        parse_tree(text, None)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.render())
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// ^ωT: `T` with its leftmost leaf edge typed by ω.
pub fn set_leftmost_type(t: &Tree, w: usize) -> Vertex {
    let mut v = t.0.clone();
    v.set_leftmost(Some(w));
    v
}

/// T^ω: `T` with its rightmost leaf edge typed by ω.
pub fn set_rightmost_type(t: &Tree, w: usize) -> Vertex {
    let mut v = t.0.clone();
    v.set_rightmost(Some(w));
    v
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: Option<&'a [String]>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, b: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", b as char))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an identifier");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn omega(&mut self) -> Result<usize> {
        let start = self.pos;
        let id = self.ident()?;
        if let Some(names) = self.names {
            if let Some(i) = names.iter().position(|n| n == id) {
                return Ok(i);
            }
        }
        id.parse().or_else(|_| {
            self.pos = start;
            self.err(format!("unknown Ω element `{id}`"))
        })
    }

    fn child(&mut self) -> Result<Child> {
        match self.src.get(self.pos) {
            Some(b'(') => Ok(Child::Node(Box::new(self.node()?))),
            Some(b'|') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b':') {
                    self.pos += 1;
                    Ok(Child::Leaf(Some(self.omega()?)))
                } else {
                    Ok(Child::Leaf(None))
                }
            }
            _ => self.err("expected `(` or `|`"),
        }
    }

    fn node(&mut self) -> Result<Vertex> {
        self.eat(b'(')?;
        let mut children = vec![self.child()?];
        let mut angles = Vec::new();
        while self.src.get(self.pos) == Some(&b' ') {
            self.pos += 1;
            angles.push(self.ident()?.to_string());
            self.eat(b' ')?;
            children.push(self.child()?);
        }
        self.eat(b')')?;
        Ok(Vertex { children, angles })
    }
}

/// Parses a tree, resolving Ω names against `omega_names` first and
/// falling back to decimal indices.
pub fn parse_tree(text: &str, omega_names: Option<&[String]>) -> Result<Tree> {
    parse_vertex(text, omega_names).and_then(|v| validate(v, None))
}

/// Parses without validation.
pub fn parse_vertex(text: &str, omega_names: Option<&[String]>) -> Result<Vertex> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names: omega_names,
    };
    let v = p.node()?;
    if p.pos != text.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Number of undecorated Schröder trees with `n + 1` leaves, by recursion
/// on the root arity.
pub fn schroeder(n: usize) -> BigUint {
    // t[l]: trees with l leaves; g[l]: nonempty sequences of trees with l leaves
    let leaves = n + 1;
    let mut t = vec![BigUint::zero(); leaves + 1];
    let mut g = vec![BigUint::zero(); leaves + 1];
    t[1] = BigUint::one();
    g[1] = BigUint::one();
    for l in 2..=leaves {
        let mut s = BigUint::zero();
        for j in 1..l {
            s += &t[j] * &g[l - j];
        }
        g[l] = &s + &s;
        t[l] = s;
    }
    t[leaves].clone()
}

/// |𝔗ₙ(X, Ω)| = Sₙ · |X|ⁿ · |Ω|ⁿ⁻¹.
pub fn count(n: usize, x_size: usize, omega_size: usize) -> BigUint {
    assert!(n >= 1, "degree must be positive");
    schroeder(n) * BigUint::from(x_size).pow(n as u32) * BigUint::from(omega_size).pow(n as u32 - 1)
}

/// Default cap on the number of trees [`enumerate`] will build.
pub const ENUMERATION_LIMIT: usize = 2_000_000;

/// All of 𝔗ₙ(X, Ω) in canonical order.
pub fn enumerate(n: usize, xs: &[&str], omega_size: usize) -> Result<Vec<Tree>> {
    enumerate_with_limit(n, xs, omega_size, ENUMERATION_LIMIT)
}

pub fn enumerate_with_limit(
    n: usize,
    xs: &[&str],
    omega_size: usize,
    limit: usize,
) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::Parse("degree must be positive".into()));
    }
    if xs.is_empty() || omega_size == 0 {
        return Ok(Vec::new());
    }
    let expected = count(n, xs.len(), omega_size);
    let expected: usize = expected.try_into().unwrap_or(usize::MAX);
    if expected > limit {
        return Err(Error::ResourceGuard {
            what: "tree enumeration size",
            value: expected,
            limit,
        });
    }
    let mut out = Vec::with_capacity(expected);
    for shape in shapes(n + 1) {
        decorate(&shape, n, xs, omega_size, &mut out);
    }
    out.sort();
    Ok(out)
}

/// Undecorated shapes with `leaves` leaves; angle labels left empty.
fn shapes(leaves: usize) -> Vec<Vertex> {
    // sequences of at least `min_len` children with `leaves` leaves in total
    fn seqs(leaves: usize, min_len: usize) -> Vec<Vec<Child>> {
        if leaves == 0 {
            return if min_len == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        for first in 1..=leaves.saturating_sub(min_len.saturating_sub(1)) {
            let heads: Vec<Child> = if first == 1 {
                vec![Child::leaf()]
            } else {
                shapes(first)
                    .into_iter()
                    .map(|v| Child::Node(Box::new(v)))
                    .collect()
            };
            let rests = seqs(leaves - first, min_len.saturating_sub(1));
            for h in &heads {
                for r in &rests {
                    let mut seq = Vec::with_capacity(r.len() + 1);
                    seq.push(h.clone());
                    seq.extend(r.iter().cloned());
                    out.push(seq);
                }
            }
        }
        out
    }
    if leaves < 2 {
        return Vec::new();
    }
    seqs(leaves, 2)
        .into_iter()
        .map(|children| Vertex {
            angles: vec![String::new(); children.len() - 1],
            children,
        })
        .collect()
}

fn decorate(shape: &Vertex, n: usize, xs: &[&str], omega_size: usize, out: &mut Vec<Tree>) {
    fn fill(
        v: &mut Vertex,
        types: &[usize],
        angles: &[usize],
        xs: &[&str],
        leaf_i: &mut usize,
        angle_i: &mut usize,
        total: usize,
    ) {
        for k in 0..v.children.len() {
            if k > 0 {
                v.angles[k - 1] = xs[angles[*angle_i]].to_string();
                *angle_i += 1;
            }
            match &mut v.children[k] {
                Child::Leaf(t) => {
                    *t = if *leaf_i == 0 || *leaf_i + 1 == total {
                        None
                    } else {
                        Some(types[*leaf_i - 1])
                    };
                    *leaf_i += 1;
                }
                Child::Node(w) => fill(w, types, angles, xs, leaf_i, angle_i, total),
            }
        }
    }
    let mut types = vec![0usize; n - 1];
    loop {
        let mut angles = vec![0usize; n];
        loop {
            let mut v = shape.clone();
            fill(&mut v, &types, &angles, xs, &mut 0, &mut 0, n + 1);
            out.push(Tree(v));
            if !odometer(&mut angles, xs.len()) {
                break;
            }
        }
        if !odometer(&mut types, omega_size) {
            break;
        }
    }
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
