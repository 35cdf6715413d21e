//! Finite Boolean rings as subsets of an indexed universe.
//!
//! `+` is symmetric difference, `·` is intersection. Presented rings keep
//! their atoms as generator assignments so free rings and quotients stay
//! small and explicit.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of free generators.
pub const DEFAULT_FREE_BOUND: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("elements live over different universes")]
    UniverseMismatch,
    #[error("free ring on {got} generators exceeds the bound {bound}")]
    TooManyGenerators { got: usize, bound: usize },
    #[error("negation must be a fixed-point-free involution")]
    BadNegation,
    #[error("positives must meet every negation pair exactly once")]
    BadPositives,
}

/// Ordered, immutable list of distinct labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>, RingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(RingError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(Universe { labels, index }))
    }

    /// Universe `0..n` labelled by decimal strings.
    pub fn numbered(n: usize) -> Arc<Self> {
        Self::new((0..n).map(|i| i.to_string())).expect("numbers are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// A subset of a universe, read as a Boolean ring element.
#[derive(Clone)]
pub struct RingElem {
    universe: Arc<Universe>,
    bits: FixedBitSet,
}

impl RingElem {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        RingElem {
            universe: universe.clone(),
            bits: FixedBitSet::with_capacity(universe.len()),
        }
    }

    pub fn full(universe: &Arc<Universe>) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe.len());
        bits.insert_range(..);
        RingElem {
            universe: universe.clone(),
            bits,
        }
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(universe: &Arc<Universe>, pos: I) -> Self {
        let mut e = Self::zero(universe);
        for p in pos {
            e.bits.insert(p);
        }
        e
    }

    pub fn from_labels<'a, I>(universe: &Arc<Universe>, labels: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut e = Self::zero(universe);
        for l in labels {
            let p = universe
                .position(l)
                .ok_or_else(|| RingError::UnknownLabel(l.to_string()))?;
            e.bits.insert(p);
        }
        Ok(e)
    }

    pub fn from_bits(universe: &Arc<Universe>, bits: FixedBitSet) -> Self {
        assert_eq!(
            bits.len(),
            universe.len(),
            "indicator length must match the universe"
        );
        RingElem {
            universe: universe.clone(),
            bits,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.bits.contains(pos)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.bits.ones().map(|i| self.universe.label(i)).collect()
    }

    fn same_universe(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        if !self.same_universe(other) {
            return Err(RingError::UniverseMismatch);
        }
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(&other.bits);
        Ok(RingElem {
            universe: self.universe.clone(),
            bits,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        if !self.same_universe(other) {
            return Err(RingError::UniverseMismatch);
        }
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(RingElem {
            universe: self.universe.clone(),
            bits,
        })
    }

    /// Natural order of the ring: containment.
    pub fn le(&self, other: &Self) -> bool {
        self.same_universe(other) && self.bits.is_subset(&other.bits)
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        RingElem {
            universe: self.universe.clone(),
            bits,
        }
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_universe(other) && self.bits == other.bits
    }
}

impl Eq for RingElem {}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    /// Panics on mismatched universes; see [`RingElem::try_add`].
    fn add(self, rhs: &RingElem) -> RingElem {
        self.try_add(rhs).expect("ring elements over one universe")
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.try_mul(rhs).expect("ring elements over one universe")
    }
}

/// Wire form: `{"universe": [...], "members": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElemJson {
    pub universe: Vec<String>,
    pub members: Vec<String>,
}

impl From<&RingElem> for RingElemJson {
    fn from(e: &RingElem) -> Self {
        RingElemJson {
            universe: e.universe.labels.clone(),
            members: e.labels().into_iter().map(str::to_string).collect(),
        }
    }
}

impl RingElemJson {
    pub fn into_elem(self) -> Result<RingElem, RingError> {
        let u = Universe::new(self.universe)?;
        RingElem::from_labels(&u, self.members.iter().map(String::as_str))
    }
}

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RingElemJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        RingElemJson::deserialize(d)?
            .into_elem()
            .map_err(serde::de::Error::custom)
    }
}

/// Universe with a sign-reversing involution and a choice of positives.
#[derive(Debug, Clone)]
pub struct SignedUniverse {
    base: Arc<Universe>,
    negation: Vec<usize>,
    positives: FixedBitSet,
}

impl SignedUniverse {
    pub fn new(
        base: Arc<Universe>,
        negation: Vec<usize>,
        positives: FixedBitSet,
    ) -> Result<Self, RingError> {
        let n = base.len();
        if negation.len() != n || positives.len() != n {
            return Err(RingError::BadNegation);
        }
        for (i, &j) in negation.iter().enumerate() {
            if j >= n || j == i || negation[j] != i {
                return Err(RingError::BadNegation);
            }
            if positives.contains(i) == positives.contains(j) {
                return Err(RingError::BadPositives);
            }
        }
        Ok(SignedUniverse {
            base,
            negation,
            positives,
        })
    }

    pub fn base(&self) -> &Arc<Universe> {
        &self.base
    }

    pub fn negate(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positives.contains(i)
    }

    pub fn positives(&self) -> &FixedBitSet {
        &self.positives
    }

    /// Number of `±` pairs.
    pub fn pairs(&self) -> usize {
        self.base.len() / 2
    }
}

/// Subring of `℘(universe)` generated by a family, recorded by its atoms.
#[derive(Debug, Clone)]
pub struct Subring {
    universe: Arc<Universe>,
    atoms: Vec<FixedBitSet>,
}

/// Smallest subset of `℘(ambient)` containing `gens` and closed under `+` and `·`.
///
/// Positions are grouped by which generators contain them; the groups inside
/// the union of supports are the atoms.
pub fn subring_generated(ambient: &Arc<Universe>, gens: &[RingElem]) -> Subring {
    let mut classes: HashMap<Vec<bool>, FixedBitSet> = HashMap::new();
    let mut order: Vec<Vec<bool>> = Vec::new();
    for p in 0..ambient.len() {
        let sig: Vec<bool> = gens.iter().map(|g| g.contains(p)).collect();
        if !sig.iter().any(|&b| b) {
            continue;
        }
        let entry = classes.entry(sig.clone()).or_insert_with(|| {
            order.push(sig);
            FixedBitSet::with_capacity(ambient.len())
        });
        entry.insert(p);
    }
    let atoms = order
        .into_iter()
        .map(|s| classes.remove(&s).expect("class recorded"))
        .collect();
    Subring {
        universe: ambient.clone(),
        atoms,
    }
}

impl Subring {
    pub fn atoms(&self) -> &[FixedBitSet] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// `2^atoms`, saturating.
    pub fn size(&self) -> u128 {
        if self.atoms.len() >= 128 {
            u128::MAX
        } else {
            1u128 << self.atoms.len()
        }
    }

    pub fn contains(&self, e: &RingElem) -> bool {
        self.atoms.iter().all(|a| {
            let mut inter = a.clone();
            inter.intersect_with(e.bits());
            inter.is_clear() || inter == *a
        }) && {
            let mut covered = FixedBitSet::with_capacity(self.universe.len());
            for a in &self.atoms {
                covered.union_with(a);
            }
            e.bits().is_subset(&covered)
        }
    }

    /// Atom indices below `e`; `e` must lie in the subring.
    pub fn atoms_below(&self, e: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.atoms.len());
        for (i, a) in self.atoms.iter().enumerate() {
            if a.is_subset(e) {
                out.insert(i);
            }
        }
        out
    }

    /// Every element, for small subrings.
    pub fn elements(&self) -> Vec<RingElem> {
        assert!(self.atoms.len() <= 20, "subring too large to enumerate");
        (0u32..(1 << self.atoms.len()))
            .map(|mask| {
                let mut bits = FixedBitSet::with_capacity(self.universe.len());
                for (i, a) in self.atoms.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        bits.union_with(a);
                    }
                }
                RingElem::from_bits(&self.universe, bits)
            })
            .collect()
    }
}

/// Boolean ring given by generators, stored through its atoms.
///
/// Atom `e_Y` is the assignment making exactly the generators in `Y` true;
/// `Y` is a bitmask over the generator list.
#[derive(Debug, Clone)]
pub struct PresentedRing {
    generators: Vec<String>,
    atoms: Vec<u32>,
    universe: Arc<Universe>,
}

/// Non-unital free ring together with its unital completion.
#[derive(Debug, Clone)]
pub struct FreePair {
    pub free: PresentedRing,
    pub unital: PresentedRing,
}

fn atom_label(generators: &[String], mask: u32) -> String {
    let names: Vec<&str> = (0..generators.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| generators[i].as_str())
        .collect();
    format!("e{{{}}}", names.join(","))
}

impl PresentedRing {
    fn from_atoms(generators: Vec<String>, atoms: Vec<u32>) -> Self {
        let labels: Vec<String> = atoms.iter().map(|&m| atom_label(&generators, m)).collect();
        let universe = Universe::new(labels).expect("atom masks are distinct");
        PresentedRing {
            generators,
            atoms,
            universe,
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn atoms(&self) -> &[u32] {
        &self.atoms
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// `2^atoms`, saturating.
    pub fn cardinality(&self) -> u128 {
        if self.atoms.len() >= 128 {
            u128::MAX
        } else {
            1u128 << self.atoms.len()
        }
    }

    /// Image of generator `i`: the sum of atoms `e_Y` with `i ∈ Y`.
    pub fn generator(&self, i: usize) -> RingElem {
        RingElem::from_positions(
            &self.universe,
            self.atoms
                .iter()
                .enumerate()
                .filter(|(_, &m)| m >> i & 1 == 1)
                .map(|(k, _)| k),
        )
    }

    pub fn zero(&self) -> RingElem {
        RingElem::zero(&self.universe)
    }

    /// Sum of all atoms; the identity of the finite ring.
    pub fn one(&self) -> RingElem {
        RingElem::full(&self.universe)
    }

    /// Element whose atoms are exactly the assignments where `f` holds.
    pub fn element_where<F: Fn(u32) -> bool>(&self, f: F) -> RingElem {
        RingElem::from_positions(
            &self.universe,
            self.atoms
                .iter()
                .enumerate()
                .filter(|(_, &m)| f(m))
                .map(|(k, _)| k),
        )
    }

    /// `B / ⟨gens⟩`: in a finite Boolean ring the ideal is principal on the
    /// join of its generators, so the quotient keeps the atoms outside it.
    pub fn quotient(&self, ideal_gens: &[RingElem]) -> Result<Quotient, RingError> {
        let mut join = FixedBitSet::with_capacity(self.universe.len());
        for g in ideal_gens {
            if !Arc::ptr_eq(g.universe(), &self.universe) && **g.universe() != *self.universe {
                return Err(RingError::UniverseMismatch);
            }
            join.union_with(g.bits());
        }
        let kept: Vec<usize> = (0..self.atoms.len())
            .filter(|&k| !join.contains(k))
            .collect();
        let ring = PresentedRing::from_atoms(
            self.generators.clone(),
            kept.iter().map(|&k| self.atoms[k]).collect(),
        );
        Ok(Quotient { ring, kept })
    }
}

/// Quotient ring with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub ring: PresentedRing,
    kept: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, e: &RingElem) -> RingElem {
        RingElem::from_positions(
            self.ring.universe(),
            self.kept
                .iter()
                .enumerate()
                .filter(|(_, &k)| e.contains(k))
                .map(|(i, _)| i),
        )
    }
}

/// Free Boolean ring on `labels` and its unital completion.
pub fn free_boolean_ring(labels: &[&str], bound: usize) -> Result<FreePair, RingError> {
    let n = labels.len();
    if n > bound || n > 31 {
        return Err(RingError::TooManyGenerators { got: n, bound });
    }
    let gens: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    {
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if !seen.insert(g) {
                return Err(RingError::DuplicateLabel(g.clone()));
            }
        }
    }
    let all: Vec<u32> = (0..(1u32 << n)).collect();
    let free = PresentedRing::from_atoms(
        gens.clone(),
        all.iter().copied().filter(|&m| m != 0).collect(),
    );
    let unital = PresentedRing::from_atoms(gens, all);
    Ok(FreePair { free, unital })
}

/// `U(B) = B ⊕ F₂`, realised as `℘(atoms of B ⊔ {∗})`.
///
/// `(b, 0) ↦ b` and `(b, 1) ↦ 1 + b`.
#[derive(Debug, Clone)]
pub struct UnitalCompletion {
    base: Arc<Universe>,
    universe: Arc<Universe>,
}

pub const EXTRA_ATOM: &str = "*";

pub fn unital_completion(base: &Arc<Universe>) -> UnitalCompletion {
    let mut labels: Vec<String> = base.labels().to_vec();
    let mut extra = EXTRA_ATOM.to_string();
    while base.position(&extra).is_some() {
        extra.push('*');
    }
    labels.push(extra);
    UnitalCompletion {
        base: base.clone(),
        universe: Universe::new(labels).expect("fresh extra label"),
    }
}

impl UnitalCompletion {
    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn base(&self) -> &Arc<Universe> {
        &self.base
    }

    pub fn cardinality(&self) -> u128 {
        1u128 << self.universe.len()
    }

    pub fn embed(&self, b: &RingElem) -> RingElem {
        RingElem::from_positions(&self.universe, b.positions())
    }

    pub fn pair(&self, b: &RingElem, eps: bool) -> RingElem {
        let e = self.embed(b);
        if eps {
            e.complement()
        } else {
            e
        }
    }

    pub fn one(&self) -> RingElem {
        RingElem::full(&self.universe)
    }

    /// Inverse of [`UnitalCompletion::pair`].
    pub fn split(&self, u: &RingElem) -> (RingElem, bool) {
        let extra = self.universe.len() - 1;
        let eps = u.contains(extra);
        let v = if eps { u.complement() } else { u.clone() };
        (RingElem::from_positions(&self.base, v.positions()), eps)
    }

    /// Whether `u` lies in the image of `B`.
    pub fn in_base(&self, u: &RingElem) -> bool {
        !u.contains(self.universe.len() - 1)
    }
}
