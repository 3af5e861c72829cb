//! Quivers, paths and monomial presentations `A = kQ/I`.
//!
//! Paths are stored in composition order: the arrow word `αn ⋯ α2 α1` is kept as
//! `[αn, …, α1]`, so `p.compose(q)` is plain vector concatenation. Everything a
//! person reads or writes (presentation files, reports, `Display`) uses traversal
//! order instead, first-traversed arrow first: the relation line `relation a b`
//! denotes the composite `b ∘ a`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver with named vertices and arrows, kept in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::DuplicateIdentifier {
                line: 0,
                id: name.to_string(),
            });
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: VertexId, target: VertexId) -> Result<ArrowId> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::DuplicateIdentifier {
                line: 0,
                id: name.to_string(),
            });
        }
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex {
                    line: 0,
                    id: v.to_string(),
                });
            }
        }
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }
}

/// A path of the quiver: either a trivial path `e_v` or a composable arrow word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    /// Composition order: `arrows[0]` is traversed last.
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(quiver: &Quiver, a: ArrowId) -> Self {
        let arrow = quiver.arrow(a);
        Path {
            source: arrow.source,
            target: arrow.target,
            arrows: vec![a],
        }
    }

    /// Builds a nontrivial path from arrows listed in composition order.
    pub fn from_composition(quiver: &Quiver, arrows: Vec<ArrowId>) -> Option<Self> {
        let first = *arrows.last()?;
        let last = arrows[0];
        for pair in arrows.windows(2) {
            // pair[1] is traversed right before pair[0]
            if quiver.arrow(pair[1]).target != quiver.arrow(pair[0]).source {
                return None;
            }
        }
        Some(Path {
            source: quiver.arrow(first).source,
            target: quiver.arrow(last).target,
            arrows,
        })
    }

    /// Builds a nontrivial path from arrows listed in traversal order.
    pub fn from_traversal(quiver: &Quiver, arrows: &[ArrowId]) -> Option<Self> {
        Self::from_composition(quiver, arrows.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    /// Arrows in composition order (last traversed first).
    pub fn composition(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// Arrows in traversal order (first traversed first).
    pub fn traversal(&self) -> impl DoubleEndedIterator<Item = ArrowId> + ExactSizeIterator + '_ {
        self.arrows.iter().rev().copied()
    }

    /// `self ∘ other`, defined when `s(self) = t(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    /// The factor `u` in `self = u ∘ w` with `l(u) = k`; it ends at `t(self)`.
    pub fn left_factor(&self, quiver: &Quiver, k: usize) -> Path {
        assert!(k <= self.len());
        if k == 0 {
            return Path::trivial(self.target);
        }
        let arrows = self.arrows[..k].to_vec();
        Path {
            source: quiver.arrow(arrows[k - 1]).source,
            target: self.target,
            arrows,
        }
    }

    /// The factor `w` in `self = u ∘ w` with `l(w) = k`; it starts at `s(self)`.
    pub fn right_factor(&self, quiver: &Quiver, k: usize) -> Path {
        assert!(k <= self.len());
        if k == 0 {
            return Path::trivial(self.source);
        }
        let arrows = self.arrows[self.len() - k..].to_vec();
        Path {
            source: self.source,
            target: quiver.arrow(arrows[0]).target,
            arrows,
        }
    }

    /// True when `self = prefix ∘ w` for some path `w`.
    pub fn has_left_factor(&self, prefix: &Path) -> bool {
        if prefix.is_trivial() {
            return prefix.source == self.target;
        }
        prefix.target == self.target && self.arrows.starts_with(&prefix.arrows)
    }

    /// True when `self = u ∘ suffix` for some path `u`.
    pub fn has_right_factor(&self, suffix: &Path) -> bool {
        if suffix.is_trivial() {
            return suffix.source == self.source;
        }
        suffix.source == self.source && self.arrows.ends_with(&suffix.arrows)
    }

    /// True when `w` occurs as a contiguous window of `self`. A trivial `w`
    /// only matches itself.
    pub fn contains(&self, w: &Path) -> bool {
        if w.is_trivial() {
            return self == w;
        }
        w.len() <= self.len() && self.arrows.windows(w.len()).any(|win| win == w.arrows)
    }
}

impl Ord for Path {
    /// Canonical order: by length, then trivial paths by vertex, then the
    /// traversal word lexicographically by arrow declaration index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            if self.is_trivial() {
                self.source.cmp(&other.source)
            } else {
                self.traversal().cmp(other.traversal())
            }
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// JSON echo of a presentation: relations are listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationEcho {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEcho>,
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEcho {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A monomial algebra `kQ/I` given by a quiver and path generators of `I`.
///
/// The generators are normalised to the minimal relations `F` at construction;
/// the original list is retained only for echoing the input back.
#[derive(Debug)]
pub struct MonomialPresentation {
    quiver: Quiver,
    generators: Vec<Path>,
    relations: Vec<Path>,
    forbidden: HashSet<Vec<ArrowId>>,
    max_relation_len: usize,
    basis: OnceLock<Result<PathBasis>>,
}

impl Clone for MonomialPresentation {
    fn clone(&self) -> Self {
        MonomialPresentation {
            quiver: self.quiver.clone(),
            generators: self.generators.clone(),
            relations: self.relations.clone(),
            forbidden: self.forbidden.clone(),
            max_relation_len: self.max_relation_len,
            basis: OnceLock::new(),
        }
    }
}

impl PartialEq for MonomialPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for MonomialPresentation {}

impl MonomialPresentation {
    pub fn new(quiver: Quiver, generators: Vec<Path>) -> Result<Self> {
        for g in &generators {
            if g.len() < 2 {
                return Err(Error::RelationTooShort {
                    line: 0,
                    length: g.len(),
                });
            }
            if Path::from_composition(&quiver, g.arrows.clone()).is_none() {
                return Err(Error::NonComposableRelation {
                    line: 0,
                    detail: format!("{:?}", g.arrows),
                });
            }
        }
        let relations = minimal_paths(&generators);
        let forbidden = relations.iter().map(|p| p.arrows.clone()).collect();
        let max_relation_len = relations.iter().map(Path::len).max().unwrap_or(0);
        Ok(MonomialPresentation {
            quiver,
            generators,
            relations,
            forbidden,
            max_relation_len,
            basis: OnceLock::new(),
        })
    }

    /// Parses the line-oriented presentation format:
    ///
    /// ```text
    /// vertex <id> [<id> ...]
    /// arrow <id> <source> <target>
    /// relation <arrow> <arrow> [...]   # traversal order
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut quiver = Quiver::new();
        let mut generators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = content.split_whitespace();
            let Some(keyword) = tokens.next() else {
                continue;
            };
            let args: Vec<&str> = tokens.collect();
            match keyword {
                "vertex" => {
                    if args.is_empty() {
                        return Err(Error::Syntax {
                            line,
                            message: "`vertex` needs at least one identifier".into(),
                        });
                    }
                    for id in args {
                        quiver.add_vertex(id).map_err(|e| at_line(e, line))?;
                    }
                }
                "arrow" => {
                    let [id, src, tgt] = args[..] else {
                        return Err(Error::Syntax {
                            line,
                            message: "expected `arrow <id> <source> <target>`".into(),
                        });
                    };
                    let lookup = |name: &str| {
                        quiver.vertex_id(name).ok_or_else(|| Error::UnknownVertex {
                            line,
                            id: name.to_string(),
                        })
                    };
                    let (s, t) = (lookup(src)?, lookup(tgt)?);
                    quiver.add_arrow(id, s, t).map_err(|e| at_line(e, line))?;
                }
                "relation" => {
                    let mut arrows = Vec::with_capacity(args.len());
                    for name in &args {
                        arrows.push(quiver.arrow_id(name).ok_or_else(|| Error::UnknownArrow {
                            line,
                            id: name.to_string(),
                        })?);
                    }
                    if arrows.len() < 2 {
                        return Err(Error::RelationTooShort {
                            line,
                            length: arrows.len(),
                        });
                    }
                    let path = Path::from_traversal(&quiver, &arrows).ok_or_else(|| Error::NonComposableRelation {
                        line,
                        detail: args.join(" "),
                    })?;
                    generators.push(path);
                }
                other => {
                    return Err(Error::Syntax {
                        line,
                        message: format!("unknown statement `{other}`"),
                    })
                }
            }
        }
        Self::new(quiver, generators)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Generators as given at construction.
    pub fn generators(&self) -> &[Path] {
        &self.generators
    }

    /// The minimal relations `F`: generators with no proper subpath among the
    /// generators, in canonical order.
    pub fn minimal_relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn max_relation_len(&self) -> usize {
        self.max_relation_len
    }

    pub fn is_relation(&self, p: &Path) -> bool {
        self.forbidden.contains(&p.arrows)
    }

    /// A path is nonzero iff none of its windows is a minimal relation.
    pub fn is_nonzero(&self, p: &Path) -> bool {
        if p.len() < 2 || self.relations.is_empty() {
            return true;
        }
        let top = self.max_relation_len.min(p.len());
        (2..=top).all(|w| p.arrows.windows(w).all(|win| !self.forbidden.contains(win)))
    }

    pub fn path(&self, traversal: &[&str]) -> Result<Path> {
        let mut arrows = Vec::with_capacity(traversal.len());
        for name in traversal {
            arrows.push(self.quiver.arrow_id(name).ok_or_else(|| Error::UnknownArrow {
                line: 0,
                id: name.to_string(),
            })?);
        }
        Path::from_traversal(&self.quiver, &arrows).ok_or_else(|| Error::NonComposableRelation {
            line: 0,
            detail: traversal.join(" "),
        })
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.quiver.vertex_id(name).ok_or_else(|| Error::UnknownVertex {
            line: 0,
            id: name.to_string(),
        })
    }

    /// Traversal order, `·`-separated; trivial paths print as `e_<vertex>`.
    pub fn display_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.quiver.vertex_name(p.source));
        }
        let names: Vec<&str> = p.traversal().map(|a| self.quiver.arrow(a).name.as_str()).collect();
        names.join("·")
    }

    /// Arrow names in traversal order (empty for trivial paths).
    pub fn path_names(&self, p: &Path) -> Vec<String> {
        p.traversal().map(|a| self.quiver.arrow(a).name.clone()).collect()
    }

    pub fn echo(&self) -> PresentationEcho {
        PresentationEcho {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowEcho {
                    id: a.name.clone(),
                    src: self.quiver.vertex_name(a.source).to_string(),
                    tgt: self.quiver.vertex_name(a.target).to_string(),
                })
                .collect(),
            relations: self.generators.iter().map(|g| self.path_names(g)).collect(),
        }
    }

    /// Serialises back to the text format; `parse(to_text())` reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.quiver.vertices.is_empty() {
            let _ = writeln!(out, "vertex {}", self.quiver.vertices.join(" "));
        }
        for a in &self.quiver.arrows {
            let _ = writeln!(
                out,
                "arrow {} {} {}",
                a.name,
                self.quiver.vertex_name(a.source),
                self.quiver.vertex_name(a.target)
            );
        }
        for g in &self.generators {
            let _ = writeln!(out, "relation {}", self.path_names(g).join(" "));
        }
        out
    }

    /// The presentation of the opposite algebra: arrows reversed, relation words reversed.
    pub fn opposite(&self) -> MonomialPresentation {
        let mut quiver = Quiver::new();
        for v in &self.quiver.vertices {
            quiver.add_vertex(v).expect("names already unique");
        }
        for a in &self.quiver.arrows {
            quiver
                .add_arrow(&a.name, a.target, a.source)
                .expect("names already unique");
        }
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let arrows: Vec<ArrowId> = g.arrows.iter().rev().copied().collect();
                Path::from_composition(&quiver, arrows).expect("reversed word composes")
            })
            .collect();
        MonomialPresentation::new(quiver, generators).expect("opposite of a valid presentation")
    }

    /// The forbidden-factor automaton over windows of width `r_max - 1`.
    pub fn automaton(&self) -> PathAutomaton {
        PathAutomaton::build(self)
    }

    /// All nonzero paths; fails when nonzero paths of unbounded length exist.
    pub fn enumerate_basis(&self) -> Result<&PathBasis> {
        self.basis
            .get_or_init(|| PathBasis::build(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.enumerate_basis().is_ok()
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.enumerate_basis()?.dimension())
    }

    /// Nonzero paths `q ∘ p`, `p` itself included, in canonical order.
    pub fn extensions(&self, p: &Path) -> Vec<Path> {
        let mut out = Vec::new();
        if !self.is_nonzero(p) {
            return out;
        }
        let mut stack = vec![p.clone()];
        while let Some(cur) = stack.pop() {
            for a in self.quiver.arrows_from(cur.target) {
                let ext = Path::arrow(&self.quiver, a).compose(&cur).expect("composable");
                if self.is_nonzero(&ext) {
                    stack.push(ext);
                }
            }
            out.push(cur);
        }
        out.sort();
        out
    }

    /// Basis of the left ideal `Ap`: all nonzero `q′ ∘ p`, counted by target vertex.
    pub fn cyclic_module_basis(&self, p: &Path) -> Result<CyclicBasis> {
        if !self.is_nonzero(p) {
            return Err(Error::ZeroPath(self.display_path(p)));
        }
        let paths = self.extensions(p);
        let mut dims = vec![0; self.quiver.vertex_count()];
        for q in &paths {
            dims[q.target] += 1;
        }
        Ok(CyclicBasis {
            generator: p.clone(),
            paths,
            dim_vector: dims,
        })
    }

    /// Labels a per-vertex count vector with vertex names, in declaration order.
    pub fn vertex_counts(&self, dims: &[usize]) -> VertexCounts {
        VertexCounts(
            dims.iter()
                .enumerate()
                .map(|(v, &d)| (self.quiver.vertex_name(v).to_string(), d))
                .collect(),
        )
    }
}

/// Vertex-name ↦ count, serialised as a JSON object in vertex declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCounts(pub Vec<(String, usize)>);

impl Serialize for VertexCounts {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for VertexCounts {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct Visit;
        impl<'de> serde::de::Visitor<'de> for Visit {
            type Value = VertexCounts;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from vertex names to counts")
            }
            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<VertexCounts, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = access.next_entry()? {
                    out.push(entry);
                }
                Ok(VertexCounts(out))
            }
        }
        deserializer.deserialize_map(Visit)
    }
}

impl std::fmt::Display for VertexCounts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(_, d)| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::DuplicateIdentifier { id, .. } => Error::DuplicateIdentifier { line, id },
        Error::UnknownVertex { id, .. } => Error::UnknownVertex { line, id },
        other => other,
    }
}

/// Removes every path having a proper subpath in the set; deduplicates; sorts.
fn minimal_paths(paths: &[Path]) -> Vec<Path> {
    let mut sorted: Vec<Path> = paths.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut kept: Vec<Path> = Vec::new();
    for p in sorted {
        // sorted by length, so any proper subpath already sits in `kept`
        if !kept.iter().any(|q| q.len() < p.len() && p.contains(q)) {
            kept.push(p);
        }
    }
    kept
}

/// Basis of a cyclic module `Ap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicBasis {
    pub generator: Path,
    pub paths: Vec<Path>,
    /// Indexed by vertex id.
    pub dim_vector: Vec<usize>,
}

impl CyclicBasis {
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }
}

/// The nonzero paths of a finite-dimensional monomial algebra.
#[derive(Clone, Debug)]
pub struct PathBasis {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
    max_length: usize,
}

impl PathBasis {
    fn build(pres: &MonomialPresentation) -> Result<PathBasis> {
        let automaton = pres.automaton();
        if let Some(cycle) = automaton.cycle_witness() {
            let witness = Path::from_traversal(&pres.quiver, cycle)
                .map(|p| pres.display_path(&p))
                .unwrap_or_default();
            return Err(Error::InfiniteDimensional { witness });
        }
        let n = pres.quiver.vertex_count();
        let mut paths = Vec::new();
        for v in 0..n {
            paths.extend(pres.extensions(&Path::trivial(v)));
        }
        paths.sort();
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut by_source = vec![Vec::new(); n];
        let mut by_target = vec![Vec::new(); n];
        for (i, p) in paths.iter().enumerate() {
            by_source[p.source].push(i);
            by_target[p.target].push(i);
        }
        let max_length = paths.iter().map(Path::len).max().unwrap_or(0);
        Ok(PathBasis {
            paths,
            index,
            by_source,
            by_target,
            max_length,
        })
    }

    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.index.contains_key(p)
    }

    pub fn from_vertex(&self, v: VertexId) -> impl Iterator<Item = &Path> + '_ {
        self.by_source[v].iter().map(|&i| &self.paths[i])
    }

    pub fn into_vertex(&self, v: VertexId) -> impl Iterator<Item = &Path> + '_ {
        self.by_target[v].iter().map(|&i| &self.paths[i])
    }

    pub fn between(&self, s: VertexId, t: VertexId) -> impl Iterator<Item = &Path> + '_ {
        self.by_source[s]
            .iter()
            .map(|&i| &self.paths[i])
            .filter(move |p| p.target == t)
    }

    pub fn of_length(&self, l: usize) -> impl Iterator<Item = &Path> + '_ {
        self.paths.iter().filter(move |p| p.len() == l)
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Path> + '_ {
        self.paths.iter().filter(|p| !p.is_trivial())
    }

    /// Length of the longest nonzero path.
    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Paths grouped by `(source, target)`, in canonical order within a group.
    pub fn grouped_by_endpoints(&self) -> BTreeMap<(VertexId, VertexId), Vec<&Path>> {
        let mut out: BTreeMap<(VertexId, VertexId), Vec<&Path>> = BTreeMap::new();
        for p in &self.paths {
            out.entry((p.source, p.target)).or_default().push(p);
        }
        out
    }
}

/// One state: the current vertex plus the last `r_max - 1` traversed arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutomatonState {
    pub vertex: VertexId,
    /// Traversal order.
    pub window: Vec<ArrowId>,
}

/// Reachable part of the de Bruijn style automaton recognising nonzero paths.
#[derive(Clone, Debug)]
pub struct PathAutomaton {
    states: Vec<AutomatonState>,
    transitions: Vec<Vec<(ArrowId, usize)>>,
    cycle: Option<Vec<ArrowId>>,
}

impl PathAutomaton {
    fn build(pres: &MonomialPresentation) -> PathAutomaton {
        let quiver = &pres.quiver;
        let width = pres.max_relation_len.saturating_sub(1);
        // forbidden words in traversal order
        let forbidden: HashSet<Vec<ArrowId>> = pres.relations.iter().map(|r| r.traversal().collect()).collect();
        let mut states: Vec<AutomatonState> = Vec::new();
        let mut ids: HashMap<AutomatonState, usize> = HashMap::new();
        let mut transitions: Vec<Vec<(ArrowId, usize)>> = Vec::new();
        let mut queue = Vec::new();
        for v in 0..quiver.vertex_count() {
            let st = AutomatonState {
                vertex: v,
                window: Vec::new(),
            };
            ids.insert(st.clone(), states.len());
            states.push(st);
            transitions.push(Vec::new());
            queue.push(v);
        }
        while let Some(sid) = queue.pop() {
            let state = states[sid].clone();
            for a in quiver.arrows_from(state.vertex) {
                let mut word = state.window.clone();
                word.push(a);
                let dies = (2..=word.len()).any(|w| forbidden.contains(&word[word.len() - w..]));
                if dies {
                    continue;
                }
                let keep = word.len().min(width);
                let next = AutomatonState {
                    vertex: quiver.arrow(a).target,
                    window: word[word.len() - keep..].to_vec(),
                };
                let nid = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        ids.insert(next.clone(), id);
                        states.push(next);
                        transitions.push(Vec::new());
                        queue.push(id);
                        id
                    }
                };
                transitions[sid].push((a, nid));
            }
        }
        for t in &mut transitions {
            t.sort();
        }
        let cycle = find_cycle(&transitions);
        PathAutomaton {
            states,
            transitions,
            cycle,
        }
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[AutomatonState] {
        &self.states
    }

    pub fn transitions(&self, state: usize) -> &[(ArrowId, usize)] {
        &self.transitions[state]
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycle.is_none()
    }

    /// Arrow labels (traversal order) of one reachable cycle, if any.
    pub fn cycle_witness(&self) -> Option<&[ArrowId]> {
        self.cycle.as_deref()
    }
}

/// Iterative three-colour DFS; returns the edge labels around the first cycle found.
fn find_cycle(transitions: &[Vec<(ArrowId, usize)>]) -> Option<Vec<ArrowId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        White,
        Grey,
        Black,
    }
    let n = transitions.len();
    let mut colour = vec![Colour::White; n];
    for root in 0..n {
        if colour[root] != Colour::White {
            continue;
        }
        // (node, next edge index, label of the edge used to enter node)
        let mut stack: Vec<(usize, usize, Option<ArrowId>)> = vec![(root, 0, None)];
        colour[root] = Colour::Grey;
        while let Some(&mut (node, ref mut next, _)) = stack.last_mut() {
            if *next < transitions[node].len() {
                let (label, succ) = transitions[node][*next];
                *next += 1;
                match colour[succ] {
                    Colour::White => {
                        colour[succ] = Colour::Grey;
                        stack.push((succ, 0, Some(label)));
                    }
                    Colour::Grey => {
                        let start = stack.iter().position(|f| f.0 == succ).expect("grey on stack");
                        let mut labels: Vec<ArrowId> = stack[start + 1..].iter().filter_map(|f| f.2).collect();
                        labels.push(label);
                        return Some(labels);
                    }
                    Colour::Black => {}
                }
            } else {
                colour[node] = Colour::Black;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> MonomialPresentation {
        MonomialPresentation::parse(crate::fixtures::text(name).unwrap()).unwrap()
    }

    #[test]
    fn parses_line_quiver() {
        let pres = MonomialPresentation::parse("vertex 1 2 3\narrow a 1 2\narrow b 2 3\nrelation a b\n").unwrap();
        assert_eq!(pres.minimal_relations().len(), 1);
        let r = &pres.minimal_relations()[0];
        // composition order b∘a
        let (a, b) = (
            pres.quiver().arrow_id("a").unwrap(),
            pres.quiver().arrow_id("b").unwrap(),
        );
        assert_eq!(r.composition(), &[b, a]);
        assert_eq!(pres.display_path(r), "a·b");
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = MonomialPresentation::parse("vertex 1 2\narrow a 1 2\nrelation a a\n").unwrap_err();
        assert!(matches!(err, Error::NonComposableRelation { line: 3, .. }));
        let err = MonomialPresentation::parse("vertex 1\nvertex 1\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateIdentifier { line: 2, .. }));
        let err = MonomialPresentation::parse("vertex 1\nrelation x y\n").unwrap_err();
        assert!(matches!(err, Error::UnknownArrow { line: 2, .. }));
        let err = MonomialPresentation::parse("vertex 1\narrow a 1 1\nrelation a\n").unwrap_err();
        assert!(matches!(err, Error::RelationTooShort { line: 3, length: 1 }));
        let err = MonomialPresentation::parse("vertex 1\narrow a 1 2\n").unwrap_err();
        assert!(matches!(err, Error::UnknownVertex { line: 2, .. }));
        let err = MonomialPresentation::parse("vertices 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn glu_fixture_parses_with_six_cubic_relations() {
        let glu = fixture("glu");
        assert_eq!(glu.quiver().vertex_count(), 5);
        assert_eq!(glu.minimal_relations().len(), 6);
        assert!(glu.minimal_relations().iter().all(|r| r.len() == 3));
    }

    #[test]
    fn minimal_relations_drop_superpaths() {
        let pres = MonomialPresentation::parse(
            "vertex 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a b\nrelation a b c\n",
        )
        .unwrap();
        assert_eq!(pres.generators().len(), 2);
        let f: Vec<String> = pres.minimal_relations().iter().map(|p| pres.display_path(p)).collect();
        assert_eq!(f, vec!["a·b"]);
    }

    #[test]
    fn z3r2_relations_are_pairwise_incomparable() {
        let pres = fixture("z3r2");
        assert_eq!(pres.minimal_relations().len(), 3);
    }

    #[test]
    fn nonzero_windows() {
        let pres = fixture("z2r3");
        assert!(pres.is_nonzero(&pres.path(&["b", "a"]).unwrap()));
        assert!(!pres.is_nonzero(&pres.path(&["a", "b", "a"]).unwrap()));
        assert!(pres.is_nonzero(&Path::trivial(0)));
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(fixture("z3r2").dimension().unwrap(), 6);
        let z2r3 = fixture("z2r3");
        let basis = z2r3.enumerate_basis().unwrap();
        let names: Vec<String> = basis.paths().iter().map(|p| z2r3.display_path(p)).collect();
        assert_eq!(names, vec!["e_1", "e_2", "a", "b", "a·b", "b·a"]);
        assert_eq!(basis.max_length(), 2);
    }

    #[test]
    fn cycle_without_relations_is_infinite() {
        let pres = MonomialPresentation::parse("vertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\n").unwrap();
        assert!(matches!(pres.enumerate_basis(), Err(Error::InfiniteDimensional { .. })));
    }

    #[test]
    fn cyclic_bases() {
        let z3r2 = fixture("z3r2");
        let b = z3r2.cyclic_module_basis(&z3r2.path(&["a1"]).unwrap()).unwrap();
        assert_eq!(b.paths.len(), 1);
        assert_eq!(b.dim_vector, vec![0, 1, 0]);

        let z2r3 = fixture("z2r3");
        let b = z2r3.cyclic_module_basis(&z2r3.path(&["a"]).unwrap()).unwrap();
        let names: Vec<String> = b.paths.iter().map(|p| z2r3.display_path(p)).collect();
        assert_eq!(names, vec!["a", "a·b"]);
        assert_eq!(b.dim_vector, vec![1, 1]);

        let zero = z2r3.path(&["a", "b", "a"]).unwrap();
        assert!(matches!(z2r3.cyclic_module_basis(&zero), Err(Error::ZeroPath(_))));

        // trivial generator gives the indecomposable projective
        let p1 = z2r3.cyclic_module_basis(&Path::trivial(0)).unwrap();
        assert_eq!(p1.dimension(), 3);
    }

    #[test]
    fn text_round_trip_keeps_generators() {
        let pres = MonomialPresentation::parse(
            "vertex 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a b\nrelation a b c\n",
        )
        .unwrap();
        let again = MonomialPresentation::parse(&pres.to_text()).unwrap();
        assert_eq!(again.echo(), pres.echo());
    }

    #[test]
    fn opposite_reverses_relations() {
        let lin = fixture("lin");
        let op = lin.opposite();
        assert_eq!(op.display_path(&op.minimal_relations()[0]), "b·a");
        assert_eq!(op.dimension().unwrap(), lin.dimension().unwrap());
    }

    #[test]
    fn path_factors() {
        let z2r3 = fixture("z2r3");
        let q = z2r3.quiver();
        let ab = z2r3.path(&["b", "a"]).unwrap(); // a∘b
        let a = z2r3.path(&["a"]).unwrap();
        let b = z2r3.path(&["b"]).unwrap();
        assert!(ab.has_left_factor(&a));
        assert!(ab.has_right_factor(&b));
        assert_eq!(ab.left_factor(q, 1), a);
        assert_eq!(ab.right_factor(q, 1), b);
        assert_eq!(a.compose(&b), Some(ab));
        assert_eq!(a.compose(&a), None);
    }
}
