//! Abstract simplicial complexes on a labelled ambient vertex set `[n]`.
//!
//! A complex is stored by its facets in canonical order (by size, then
//! lexicographically), so two equal complexes always have equal
//! representations and can be hashed or compared directly. Faces are bit
//! sets over the labels `1..=n` with `n <= 64`.
//!
//! Subcomplex constructions (`link`, `deletion`, `restriction`, ...) keep the
//! original labels and the original ambient `n`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex label in `1..=n`.
pub type Vertex = u32;

/// Largest supported ambient vertex count.
pub const MAX_VERTICES: usize = 64;

/// Default upper bound on `n` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 5;

/// A face: a finite set of vertex labels, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    /// Builds a face from labels; duplicate labels collapse.
    ///
    /// Panics on labels outside `1..=64`; use [`SimplicialComplex::new`] for
    /// validated construction.
    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut bits = 0u64;
        for v in vertices {
            assert!((1..=64).contains(&v), "vertex label {v} out of range");
            bits |= 1 << (v - 1);
        }
        Face(bits)
    }

    /// The full simplex `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        Face::from_vertices([v])
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|F| - 1`; the empty face has dimension −1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: Vertex) -> bool {
        (1..=64).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: Vertex) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: Vertex) -> Face {
        self.difference(Face::singleton(v))
    }

    pub fn max_vertex(self) -> Option<Vertex> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros())
        }
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    /// All subsets of this face, the empty face included.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Face(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }

    /// Applies a relabelling `v -> perm[v - 1]`.
    pub fn relabel(self, perm: &[Vertex]) -> Face {
        Face::from_vertices(self.vertices().map(|v| perm[v as usize - 1]))
    }
}

impl Ord for Face {
    /// Size first, then lexicographic order of the sorted vertex lists.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    Ordering::Equal
                } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<Vertex>::deserialize(deserializer)?;
        if let Some(&v) = labels.iter().find(|&&v| !(1..=64).contains(&v)) {
            return Err(serde::de::Error::custom(format!("vertex label {v} out of range")));
        }
        Ok(Face::from_vertices(labels))
    }
}

/// A simplicial complex on the ambient vertex set `[n]`, given by its facets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

/// Returns the inclusion-maximal faces of `faces`, canonically sorted.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort();
    faces.dedup();
    // Larger faces come last; a face survives if no later face contains it.
    let mut out: Vec<Face> = Vec::with_capacity(faces.len());
    for (i, &f) in faces.iter().enumerate() {
        if !faces[i + 1..].iter().any(|&g| g != f && f.is_subset(g)) {
            out.push(f);
        }
    }
    out
}

impl SimplicialComplex {
    /// Builds the complex generated by `generating_faces`.
    pub fn new<I>(n: usize, generating_faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let ambient = Face::full(n);
        let faces: Vec<Face> = generating_faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::VoidComplex);
        }
        for f in &faces {
            if !f.is_subset(ambient) {
                let label = f.difference(ambient).vertices().next().unwrap_or(0);
                return Err(Error::LabelOutOfRange { label, n });
            }
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal_faces(faces),
        })
    }

    /// Convenience constructor from label lists, e.g. `&[&[1, 2], &[2, 3]]`.
    pub fn from_lists(n: usize, faces: &[&[Vertex]]) -> Result<Self> {
        let mut out = Vec::with_capacity(faces.len());
        for f in faces {
            for &v in *f {
                if v == 0 || v as usize > n {
                    return Err(Error::LabelOutOfRange { label: v, n });
                }
            }
            out.push(Face::from_vertices(f.iter().copied()));
        }
        SimplicialComplex::new(n, out)
    }

    /// Internal constructor for facet lists already known to be valid.
    fn from_generators(n: usize, faces: Vec<Face>) -> Self {
        debug_assert!(!faces.is_empty());
        SimplicialComplex {
            n,
            facets: maximal_faces(faces),
        }
    }

    /// The trivial complex `{∅}`.
    pub fn trivial(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![Face::EMPTY],
        }
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![Face::full(n)],
        }
    }

    /// The boundary of the simplex on `[n]`: all faces of size `n - 1`.
    pub fn simplex_boundary(n: usize) -> Self {
        let full = Face::full(n);
        let facets = (1..=n as Vertex).map(|v| full.without(v)).collect();
        SimplicialComplex::from_generators(n, facets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Union of all facets: the vertices that actually occur.
    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, &f| acc.union(f))
    }

    /// Number of vertices that occur in some face (`f₀`).
    pub fn f0(&self) -> usize {
        self.vertex_set().len()
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| face.is_subset(f))
    }

    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.facets == [Face::EMPTY]
    }

    /// All faces, canonically sorted (the empty face first).
    pub fn all_faces(&self) -> Vec<Face> {
        let mut set = HashSet::new();
        for &f in &self.facets {
            set.extend(f.subsets());
        }
        let mut faces: Vec<Face> = set.into_iter().collect();
        faces.sort();
        faces
    }

    /// Faces of dimension exactly `k`, canonically sorted.
    pub fn faces(&self, k: isize) -> Vec<Face> {
        if k < -1 || k > self.dimension() {
            return Vec::new();
        }
        let size = (k + 1) as usize;
        let mut set = BTreeSet::new();
        for &f in &self.facets {
            if f.len() >= size {
                set.extend(f.subsets().filter(|s| s.len() == size));
            }
        }
        set.into_iter().collect()
    }

    /// Face counts `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0usize; (self.dimension() + 2) as usize];
        for f in self.all_faces() {
            counts[f.len()] += 1;
        }
        counts
    }

    /// `link_Δ(F) = {G ∈ Δ : G ∩ F = ∅, G ∪ F ∈ Δ}`.
    pub fn link(&self, face: Face) -> Result<Self> {
        let gens: Vec<Face> = self
            .facets
            .iter()
            .filter(|&&f| face.is_subset(f))
            .map(|&f| f.difference(face))
            .collect();
        if gens.is_empty() {
            return Err(Error::NotAFace(face.to_string()));
        }
        Ok(SimplicialComplex::from_generators(self.n, gens))
    }

    /// `Δ_{-v}`: all faces avoiding `v`.
    pub fn deletion(&self, v: Vertex) -> Self {
        let gens = self.facets.iter().map(|f| f.without(v)).collect();
        SimplicialComplex::from_generators(self.n, gens)
    }

    /// `Δ_{⟨-v⟩}`: the complex generated by the facets not containing `v`.
    pub fn facet_deletion(&self, v: Vertex) -> Result<Self> {
        let gens: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| !f.contains(v))
            .copied()
            .collect();
        if gens.is_empty() {
            return Err(Error::ConeApex(v));
        }
        Ok(SimplicialComplex::from_generators(self.n, gens))
    }

    /// `Δ|_σ`: faces contained in `sigma`, on the same ambient labels.
    pub fn restriction(&self, sigma: Face) -> Self {
        let gens = self.facets.iter().map(|f| f.intersection(sigma)).collect();
        SimplicialComplex::from_generators(self.n, gens)
    }

    /// Vertices contained in every facet.
    pub fn cone_apexes(&self) -> Face {
        self.facets
            .iter()
            .fold(Face::full(self.n), |acc, &f| acc.intersection(f))
    }

    /// The cone over this complex with a new apex `n + 1`.
    pub fn cone(&self) -> Result<Self> {
        let apex = self.n as Vertex + 1;
        if self.n + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(self.n + 1));
        }
        let gens = self.facets.iter().map(|f| f.with(apex)).collect();
        Ok(SimplicialComplex::from_generators(self.n + 1, gens))
    }

    /// Relabels vertices by `v -> perm[v - 1]`; `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[Vertex]) -> Self {
        assert_eq!(perm.len(), self.n);
        let gens = self.facets.iter().map(|f| f.relabel(perm)).collect();
        SimplicialComplex::from_generators(self.n, gens)
    }

    /// Removes an unused vertex `v` from the ambient set, shifting larger labels down.
    pub fn drop_vertex(&self, v: Vertex) -> Result<Self> {
        if v == 0 || v as usize > self.n {
            return Err(Error::LabelOutOfRange { label: v, n: self.n });
        }
        if self.vertex_set().contains(v) {
            return Err(Error::Invalid(format!("vertex {v} occurs in the complex")));
        }
        let low = (1u64 << (v - 1)) - 1;
        let gens = self
            .facets
            .iter()
            .map(|f| Face::from_bits((f.bits() & low) | ((f.bits() >> 1) & !low)))
            .collect();
        Ok(SimplicialComplex::from_generators(self.n - 1, gens))
    }

    /// Minimal non-faces: inclusion-minimal subsets of `[n]` not in the complex.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        // Subsets in increasing size, so minimality only needs checking
        // against smaller non-faces already found.
        let mut subsets: Vec<Face> = Face::full(self.n).subsets().collect();
        subsets.sort();
        for s in subsets {
            if !self.contains_face(s) && !out.iter().any(|&m: &Face| m.is_subset(s)) {
                out.push(s);
            }
        }
        out
    }

    /// Canonical representative of the isomorphism class: the least
    /// relabelled facet list over all `n!` relabellings.
    pub fn canonical_form(&self) -> Self {
        let mut best = self.clone();
        for_each_permutation(self.n, |perm| {
            let c = self.relabel(perm);
            if c.facets < best.facets {
                best = c;
            }
        });
        best
    }

    /// Number of distinct labelled complexes isomorphic to this one.
    pub fn orbit_size(&self) -> usize {
        let mut seen = HashSet::new();
        for_each_permutation(self.n, |perm| {
            seen.insert(self.relabel(perm).facets);
        });
        seen.len()
    }

    /// Vertex decomposability with a witness shedding order.
    ///
    /// On success returns the vertices deleted in turn: each is a shedding
    /// vertex of the complex left by deleting its predecessors, and the
    /// sequence ends at `{∅}`. Shedding vertices are chosen smallest-first.
    pub fn vertex_decomposition(&self) -> Option<Vec<Vertex>> {
        let mut memo = HashMap::new();
        if !vd_rec(self, &mut memo) {
            return None;
        }
        let mut order = Vec::new();
        let mut current = self.clone();
        while !current.is_trivial() {
            let v = current
                .vertex_set()
                .vertices()
                .find(|&v| is_shedding_vertex(&current, v, &mut memo))
                .expect("vertex decomposable complex has a shedding vertex");
            order.push(v);
            current = current.deletion(v);
        }
        Some(order)
    }

    pub fn is_vertex_decomposable(&self) -> bool {
        vd_rec(self, &mut HashMap::new())
    }

    /// Decomposability: a simplex, or a union of two decomposable complexes
    /// meeting in a single face. Returns a certificate on success.
    pub fn decomposition(&self) -> Option<DecompositionCertificate> {
        let all = if self.facets.len() >= 64 {
            return None;
        } else {
            (1u64 << self.facets.len()) - 1
        };
        let mut memo = HashMap::new();
        if !decomposable_rec(&self.facets, all, &mut memo) {
            return None;
        }
        Some(build_certificate(self.n, &self.facets, all, &mut memo))
    }

    pub fn is_decomposable(&self) -> bool {
        self.decomposition().is_some()
    }

    /// A split of the facets into two nonempty groups whose generated
    /// subcomplexes meet in a full simplex (possibly `{∅}`).
    pub fn find_reducible_split(&self) -> Option<ReducibleSplit> {
        if self.facets.len() < 2 || self.facets.len() >= 64 {
            return None;
        }
        let all = (1u64 << self.facets.len()) - 1;
        let (left, right, separator) = splits(&self.facets, all).into_iter().next()?;
        Some(ReducibleSplit {
            left: self.sub_by_mask(left),
            right: self.sub_by_mask(right),
            separator,
        })
    }

    /// Every split found by [`SimplicialComplex::find_reducible_split`], in
    /// the same order.
    pub fn reducible_splits(&self) -> Vec<ReducibleSplit> {
        if self.facets.len() < 2 || self.facets.len() >= 64 {
            return Vec::new();
        }
        let all = (1u64 << self.facets.len()) - 1;
        splits(&self.facets, all)
            .into_iter()
            .map(|(left, right, separator)| ReducibleSplit {
                left: self.sub_by_mask(left),
                right: self.sub_by_mask(right),
                separator,
            })
            .collect()
    }

    fn sub_by_mask(&self, mask: u64) -> Self {
        let gens = select(&self.facets, mask);
        SimplicialComplex::from_generators(self.n, gens)
    }

    /// Complex whose faces are the complements of non-faces.
    pub fn alexander_dual(&self) -> Result<Self> {
        let full = Face::full(self.n);
        let gens: Vec<Face> = self
            .minimal_nonfaces()
            .into_iter()
            .map(|m| full.difference(m))
            .collect();
        if gens.is_empty() {
            return Err(Error::FullSimplex);
        }
        Ok(SimplicialComplex::from_generators(self.n, gens))
    }

    /// Set union of two complexes on the same ambient set.
    pub fn union(&self, other: &Self) -> Self {
        let n = self.n.max(other.n);
        let gens = self.facets.iter().chain(&other.facets).copied().collect();
        SimplicialComplex::from_generators(n, gens)
    }

    /// Set intersection of two complexes on the same ambient set.
    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.n.max(other.n);
        let mut gens = Vec::new();
        for &f in &self.facets {
            for &g in &other.facets {
                gens.push(f.intersection(g));
            }
        }
        SimplicialComplex::from_generators(n, gens)
    }

    /// Text form, e.g. `n=4; 12 23 34 14` (requires `n <= 9`).
    pub fn to_text(&self) -> Option<String> {
        if self.n > 9 {
            return None;
        }
        let facets: Vec<String> = self
            .facets
            .iter()
            .map(|f| {
                if f.is_empty() {
                    "{}".to_string()
                } else {
                    f.vertices().map(|v| v.to_string()).collect()
                }
            })
            .collect();
        Some(format!("n={}; {}", self.n, facets.join(" ")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexJson::from(self)).expect("serializable")
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Some(t) => write!(f, "{t}"),
            None => write!(f, "{}", self.to_json()),
        }
    }
}

/// JSON form `{"n":4,"facets":[[1,2],[2,3]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<Vertex>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(c: &SimplicialComplex) -> Self {
        ComplexJson {
            n: c.n,
            facets: c.facets.iter().map(|f| f.to_vec()).collect(),
        }
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        let lists: Vec<&[Vertex]> = j.facets.iter().map(|f| f.as_slice()).collect();
        SimplicialComplex::from_lists(j.n, &lists)
    }
}

/// Parses the JSON form or the one-line text form `n=4; 12 23 34 14`.
pub fn parse_complex(input: &str) -> Result<SimplicialComplex> {
    let s = input.trim();
    if s.starts_with('{') && s.contains("\"n\"") {
        let j: ComplexJson = serde_json::from_str(s)?;
        return SimplicialComplex::try_from(j);
    }
    let (head, body) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected `n=<count>; <facets>`, got `{s}`")))?;
    let n: usize = head
        .trim()
        .strip_prefix("n=")
        .and_then(|x| x.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad vertex count `{}`", head.trim())))?;
    if n > 9 {
        return Err(Error::Parse(
            "text form uses single-digit labels; use JSON for n > 9".into(),
        ));
    }
    let mut faces = Vec::new();
    for token in body.split_whitespace() {
        if token == "{}" {
            faces.push(Face::EMPTY);
            continue;
        }
        let mut face = Face::EMPTY;
        for ch in token.chars() {
            let v = ch
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("bad face `{token}`")))?;
            if v == 0 || v as usize > n {
                return Err(Error::LabelOutOfRange { label: v, n });
            }
            face = face.with(v);
        }
        faces.push(face);
    }
    SimplicialComplex::new(n, faces)
}

/// A certificate that a complex is decomposable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionCertificate {
    Simplex,
    Split {
        separator: Face,
        left: SimplicialComplex,
        right: SimplicialComplex,
        left_certificate: Box<DecompositionCertificate>,
        right_certificate: Box<DecompositionCertificate>,
    },
}

impl DecompositionCertificate {
    /// Checks the certificate against `complex` recursively.
    pub fn verify(&self, complex: &SimplicialComplex) -> bool {
        match self {
            DecompositionCertificate::Simplex => complex.is_simplex(),
            DecompositionCertificate::Split {
                separator,
                left,
                right,
                left_certificate,
                right_certificate,
            } => {
                left.union(right) == *complex
                    && left.intersection(right).facets == [*separator]
                    && left_certificate.verify(left)
                    && right_certificate.verify(right)
            }
        }
    }
}

/// `Δ = left ∪ right` with `left ∩ right` the full simplex on `separator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibleSplit {
    pub left: SimplicialComplex,
    pub right: SimplicialComplex,
    pub separator: Face,
}

fn select(facets: &[Face], mask: u64) -> Vec<Face> {
    facets
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &f)| f)
        .collect()
}

/// Every split `(left mask, right mask, separator)` of the facets in `mask`
/// whose two sides meet in the full simplex on the separator. Left always
/// holds the lowest-indexed facet.
fn splits(facets: &[Face], mask: u64) -> Vec<(u64, u64, Face)> {
    let idx: Vec<usize> = (0..facets.len()).filter(|i| mask & (1 << i) != 0).collect();
    let mut separators = BTreeSet::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            separators.insert(facets[i].intersection(facets[j]));
        }
    }
    let mut out = Vec::new();
    for sep in separators {
        // Facets whose overlap is not inside the separator must stay together.
        let mut comp: Vec<usize> = (0..idx.len()).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                if !facets[idx[a]].intersection(facets[idx[b]]).is_subset(sep) {
                    let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                    comp[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: Vec<u64> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            let r = find(&mut comp, a);
            match roots.iter().position(|&x| x == r) {
                Some(p) => groups[p] |= 1 << i,
                None => {
                    roots.push(r);
                    groups.push(1 << i);
                }
            }
        }
        if groups.len() < 2 || groups.len() > 20 {
            continue;
        }
        // Group 0 stays on the left; enumerate assignments of the rest.
        let rest = groups.len() - 1;
        for assign in 0..(1u64 << rest) - 1 {
            let mut left = groups[0];
            let mut right = 0;
            for (g, &bits) in groups[1..].iter().enumerate() {
                if assign & (1 << g) != 0 {
                    left |= bits;
                } else {
                    right |= bits;
                }
            }
            let attained = select(facets, left).iter().any(|&f| {
                select(facets, right)
                    .iter()
                    .any(|&g| f.intersection(g) == sep)
            });
            if attained {
                out.push((left, right, sep));
            }
        }
    }
    out
}

fn decomposable_rec(facets: &[Face], mask: u64, memo: &mut HashMap<u64, Option<(u64, u64, Face)>>) -> bool {
    if mask.count_ones() == 1 {
        return true;
    }
    if let Some(r) = memo.get(&mask) {
        return r.is_some();
    }
    let mut found = None;
    for (l, r, sep) in splits(facets, mask) {
        if decomposable_rec(facets, l, memo) && decomposable_rec(facets, r, memo) {
            found = Some((l, r, sep));
            break;
        }
    }
    memo.insert(mask, found);
    found.is_some()
}

fn build_certificate(
    n: usize,
    facets: &[Face],
    mask: u64,
    memo: &mut HashMap<u64, Option<(u64, u64, Face)>>,
) -> DecompositionCertificate {
    if mask.count_ones() == 1 {
        return DecompositionCertificate::Simplex;
    }
    let (l, r, separator) = memo[&mask].expect("decomposable");
    DecompositionCertificate::Split {
        separator,
        left: SimplicialComplex::from_generators(n, select(facets, l)),
        right: SimplicialComplex::from_generators(n, select(facets, r)),
        left_certificate: Box::new(build_certificate(n, facets, l, memo)),
        right_certificate: Box::new(build_certificate(n, facets, r, memo)),
    }
}

fn is_shedding_vertex(c: &SimplicialComplex, v: Vertex, memo: &mut HashMap<SimplicialComplex, bool>) -> bool {
    let Ok(link) = c.link(Face::singleton(v)) else {
        return false;
    };
    vd_rec(&c.deletion(v), memo) && vd_rec(&link, memo)
}

fn vd_rec(c: &SimplicialComplex, memo: &mut HashMap<SimplicialComplex, bool>) -> bool {
    if !c.is_pure() {
        return false;
    }
    if c.is_trivial() {
        return true;
    }
    if let Some(&r) = memo.get(c) {
        return r;
    }
    let result = c
        .vertex_set()
        .vertices()
        .any(|v| is_shedding_vertex(c, v, memo));
    memo.insert(c.clone(), result);
    result
}

/// Calls `f` on every permutation of `1..=n` (as a relabelling table).
pub fn for_each_permutation<F: FnMut(&[Vertex])>(n: usize, mut f: F) {
    let mut perm: Vec<Vertex> = (1..=n as Vertex).collect();
    loop {
        f(&perm);
        // Next permutation in lexicographic order.
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// All complexes on `[n]` in which every vertex occurs.
///
/// With `up_to_iso`, one canonical representative per isomorphism class is
/// returned. The full simplex is included only when `include_simplex` is set.
pub fn enumerate_complexes(n: usize, up_to_iso: bool, include_simplex: bool) -> Result<Vec<SimplicialComplex>> {
    enumerate_complexes_with_limit(n, up_to_iso, include_simplex, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_complexes_with_limit(
    n: usize,
    up_to_iso: bool,
    include_simplex: bool,
    limit: usize,
) -> Result<Vec<SimplicialComplex>> {
    if n > limit || n > 6 {
        return Err(Error::EnumerationLimit { n, limit: limit.min(6) });
    }
    let full = Face::full(n);
    // Candidate facets: nonempty subsets, largest first so that antichains
    // are built by only adding incomparable smaller sets.
    let mut subsets: Vec<Face> = full.subsets().filter(|s| !s.is_empty()).collect();
    subsets.sort_by(|a, b| b.cmp(a));
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    antichains(&subsets, 0, &mut chosen, &mut |facets: &[Face]| {
        let union = facets.iter().fold(Face::EMPTY, |a, &f| a.union(f));
        if union != full || (!include_simplex && facets.len() == 1 && facets[0] == full) {
            return;
        }
        found.push(SimplicialComplex::from_generators(n, facets.to_vec()));
    });
    if n == 0 {
        found.clear();
        if include_simplex {
            found.push(SimplicialComplex::trivial(0));
        }
    }
    if up_to_iso {
        let classes: BTreeSet<SimplicialComplex> = found.iter().map(|c| c.canonical_form()).collect();
        found = classes.into_iter().collect();
    } else {
        found.sort();
    }
    Ok(found)
}

fn antichains<F: FnMut(&[Face])>(subsets: &[Face], start: usize, chosen: &mut Vec<Face>, emit: &mut F) {
    if !chosen.is_empty() {
        emit(chosen);
    }
    for i in start..subsets.len() {
        let s = subsets[i];
        // Later subsets are never larger, so only `s ⊆ chosen` can fail.
        if chosen.iter().any(|&c| s.is_subset(c)) {
            continue;
        }
        chosen.push(s);
        antichains(subsets, i + 1, chosen, emit);
        chosen.pop();
    }
}
