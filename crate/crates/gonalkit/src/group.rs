//! Exact arithmetic for the group `G = D_p x D_p`.
//!
//! Elements are stored as exponent quadruples `(a, b, c, e)` for the normal
//! form `s1^a r1^b s2^c r2^e`, where `s1, r1` generate the first dihedral
//! factor and `s2, r2` the second. Multiplication is O(1) through the
//! dihedral twist rule, so no Cayley table is ever materialized and the
//! arithmetic is exact for every prime `p`.
//!
//! The derived ordering on [`GroupElement`] (lexicographic on the exponent
//! quadruple) is the canonical element order used everywhere deterministic
//! output matters: subgroup member lists, conjugacy witnesses, census rows.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::is_prime;

/// Errors from group construction and subgroup validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    /// The parameter of the dihedral factors must be a prime `>= 2`.
    #[error("p must be a prime >= 2, got {0}")]
    InvalidPrime(u64),
    /// A member list handed to [`Subgroup::from_members`] is not a subgroup.
    #[error("elements do not form a subgroup: {0}")]
    NotASubgroup(String),
}

/// An element of `D_p x D_p` in the normal form `s1^a r1^b s2^c r2^e`.
///
/// Invariants: `a, c <= 1` and `b, e < p`. The map from reduced quadruples
/// to elements is a bijection onto the `4p^2` elements of the group, so
/// equality and ordering of quadruples decide equality and canonical order
/// of elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    a: u64,
    b: u64,
    c: u64,
    e: u64,
}

impl GroupElement {
    /// The identity, `(0, 0, 0, 0)`.
    pub const IDENTITY: GroupElement = GroupElement { a: 0, b: 0, c: 0, e: 0 };

    /// The exponent quadruple `(a, b, c, e)`.
    pub fn exponents(&self) -> (u64, u64, u64, u64) {
        (self.a, self.b, self.c, self.e)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for GroupElement {
    /// Report form: zero-exponent factors are omitted, exponent one is
    /// written bare, and the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (symbol, exp) in [("s1", self.a), ("r1", self.b), ("s2", self.c), ("r2", self.e)] {
            if exp == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{symbol}")?;
            } else {
                write!(f, "{symbol}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The group `D_p x D_p` of order `4p^2` for a prime `p`.
///
/// Carries only the parameter; all arithmetic is computed on demand from
/// the normal form, so the value is `Copy` and freely shareable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    p: u64,
    order: u64,
}

// Per dihedral factor: (s^a r^b)(s^a' r^b') = s^(a+a') r^(b' + (-1)^(a') b).
fn factor_mul(p: u64, a1: u64, b1: u64, a2: u64, b2: u64) -> (u64, u64) {
    let a = (a1 + a2) % 2;
    let b = if a2 == 1 { (b2 + p - b1) % p } else { (b1 + b2) % p };
    (a, b)
}

impl FiniteGroup {
    /// Build `D_p x D_p` for a prime `p >= 2`.
    pub fn dihedral_product(p: u64) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::InvalidPrime(p));
        }
        Ok(FiniteGroup { p, order: 4 * p * p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn s1(&self) -> GroupElement {
        self.element(1, 0, 0, 0)
    }

    pub fn r1(&self) -> GroupElement {
        self.element(0, 1, 0, 0)
    }

    pub fn s2(&self) -> GroupElement {
        self.element(0, 0, 1, 0)
    }

    pub fn r2(&self) -> GroupElement {
        self.element(0, 0, 0, 1)
    }

    /// The element `s1^a r1^b s2^c r2^e`, with exponents reduced mod 2 and
    /// mod `p`.
    pub fn element(&self, a: u64, b: u64, c: u64, e: u64) -> GroupElement {
        GroupElement { a: a % 2, b: b % self.p, c: c % 2, e: e % self.p }
    }

    /// Whether `x` is a reduced normal form for this group.
    pub fn contains(&self, x: &GroupElement) -> bool {
        x.a < 2 && x.c < 2 && x.b < self.p && x.e < self.p
    }

    /// Product `xy` in normal form. The two dihedral factors commute, so
    /// the twist rule applies independently per factor.
    pub fn multiply(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        debug_assert!(self.contains(&x) && self.contains(&y));
        let (a, b) = factor_mul(self.p, x.a, x.b, y.a, y.b);
        let (c, e) = factor_mul(self.p, x.c, x.e, y.c, y.e);
        GroupElement { a, b, c, e }
    }

    /// Inverse in normal form: rotations negate, reflected factors are
    /// involutions.
    pub fn inverse(&self, x: GroupElement) -> GroupElement {
        let b = if x.a == 1 { x.b } else { (self.p - x.b) % self.p };
        let e = if x.c == 1 { x.e } else { (self.p - x.e) % self.p };
        GroupElement { a: x.a, b, c: x.c, e }
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: GroupElement, x: GroupElement) -> GroupElement {
        self.multiply(self.multiply(g, x), self.inverse(g))
    }

    /// `x^k` for any signed exponent.
    pub fn power(&self, x: GroupElement, k: i64) -> GroupElement {
        let ord = self.element_order(x) as i64;
        let mut n = k.rem_euclid(ord);
        let mut acc = GroupElement::IDENTITY;
        while n > 0 {
            acc = self.multiply(acc, x);
            n -= 1;
        }
        acc
    }

    /// Smallest `k >= 1` with `x^k = 1`; always divides `4p^2`.
    pub fn element_order(&self, x: GroupElement) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.multiply(acc, x);
            k += 1;
            debug_assert!(k <= self.order);
        }
        k
    }

    /// All `4p^2` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let p = self.p;
        (0..2).flat_map(move |a| {
            (0..p).flat_map(move |b| {
                (0..2).flat_map(move |c| (0..p).map(move |e| GroupElement { a, b, c, e }))
            })
        })
    }

    /// Smallest subgroup containing `gens`, computed by breadth-first
    /// closure. Empty `gens` give the trivial subgroup.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Subgroup {
        let mut members = BTreeSet::new();
        members.insert(GroupElement::IDENTITY);
        let mut frontier = vec![GroupElement::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.multiply(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { group: *self, members: members.into_iter().collect() }
    }

    /// Whether `gens` generate the whole group. Same closure as
    /// [`generated_subgroup`](Self::generated_subgroup) but exits as soon
    /// as the closure is full.
    pub fn generates(&self, gens: &[GroupElement]) -> bool {
        let mut members = BTreeSet::new();
        members.insert(GroupElement::IDENTITY);
        let mut frontier = vec![GroupElement::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.multiply(x, g);
                if members.insert(y) {
                    if members.len() as u64 == self.order {
                        return true;
                    }
                    frontier.push(y);
                }
            }
        }
        members.len() as u64 == self.order
    }

    /// The cyclic subgroup generated by `x`.
    pub fn cyclic_subgroup(&self, x: GroupElement) -> Subgroup {
        let mut members = vec![GroupElement::IDENTITY];
        let mut acc = x;
        while !acc.is_identity() {
            members.push(acc);
            acc = self.multiply(acc, x);
        }
        members.sort_unstable();
        Subgroup { group: *self, members }
    }

    /// All subgroups of prime order `q`, deduplicated by canonical member
    /// set and listed in canonical order. Empty when `q` does not divide
    /// `4p^2`.
    pub fn subgroups_of_prime_order(&self, q: u64) -> Vec<Subgroup> {
        assert!(is_prime(q), "subgroup order {q} must be prime");
        let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        for x in self.elements() {
            if self.element_order(x) == q {
                seen.insert(self.cyclic_subgroup(x).members);
            }
        }
        seen.into_iter().map(|members| Subgroup { group: *self, members }).collect()
    }

    /// A witness `g` with `g H1 g^-1 = H2`, if one exists. The witness is
    /// the first match in canonical element order, so it is stable across
    /// runs.
    pub fn are_conjugate(&self, h1: &Subgroup, h2: &Subgroup) -> Option<GroupElement> {
        if h1.order() != h2.order() {
            return None;
        }
        self.elements().find(|&g| h1.conjugated_by(g).members == h2.members)
    }
}

/// A subgroup of `D_p x D_p`, stored as its full member list in canonical
/// order. Two values are equal exactly when they are the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    group: FiniteGroup,
    members: Vec<GroupElement>,
}

impl Subgroup {
    /// The trivial subgroup.
    pub fn trivial(group: FiniteGroup) -> Self {
        Subgroup { group, members: vec![GroupElement::IDENTITY] }
    }

    /// The full group as a subgroup of itself.
    pub fn full(group: FiniteGroup) -> Self {
        Subgroup { group, members: group.elements().collect() }
    }

    /// Build a subgroup from an explicit member list, checking that the
    /// list really is one: identity present, closed under multiplication,
    /// every member a valid normal form.
    pub fn from_members(group: FiniteGroup, mut members: Vec<GroupElement>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if !members.contains(&GroupElement::IDENTITY) {
            return Err(GroupError::NotASubgroup("identity is missing".into()));
        }
        for x in &members {
            if !group.contains(x) {
                return Err(GroupError::NotASubgroup(format!("{x} is not reduced for p = {}", group.p())));
            }
        }
        for &x in &members {
            for &y in &members {
                let z = group.multiply(x, y);
                if members.binary_search(&z).is_err() {
                    return Err(GroupError::NotASubgroup(format!("{x} * {y} = {z} is not a member")));
                }
            }
        }
        // Closure of a finite set forces inverses and, by Lagrange, a
        // dividing order; both are rechecked only in debug builds.
        debug_assert_eq!(group.order() % members.len() as u64, 0);
        Ok(Subgroup { group, members })
    }

    pub fn group(&self) -> FiniteGroup {
        self.group
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// The first member in canonical order that generates the whole
    /// subgroup; `None` when the subgroup is not cyclic.
    pub fn canonical_generator(&self) -> Option<GroupElement> {
        let order = self.order();
        self.members.iter().copied().find(|&x| self.group.element_order(x) == order)
    }

    pub fn is_cyclic(&self) -> bool {
        self.canonical_generator().is_some()
    }

    /// The conjugate subgroup `g H g^-1`.
    pub fn conjugated_by(&self, g: GroupElement) -> Subgroup {
        let mut members: Vec<GroupElement> =
            self.members.iter().map(|&x| self.group.conjugate(g, x)).collect();
        members.sort_unstable();
        Subgroup { group: self.group, members }
    }

    /// Intersection with another subgroup of the same group.
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        debug_assert_eq!(self.group, other.group);
        let members: Vec<GroupElement> =
            self.members.iter().copied().filter(|x| other.contains(x)).collect();
        Subgroup { group: self.group, members }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.canonical_generator() {
            Some(g) => write!(f, "\u{27e8}{g}\u{27e9}"),
            None => {
                write!(f, "{{")?;
                for (i, m) in self.members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Subgroup", 3)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("generator", &self.canonical_generator().map(|g| g.to_string()))?;
        s.serialize_field("members", &self.members)?;
        s.end()
    }
}
