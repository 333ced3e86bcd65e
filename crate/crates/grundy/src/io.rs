//! Instance ingestion and structured generators.
//!
//! Graphs are exchanged in the DIMACS `.col` text format (`c` comments,
//! `p edge n m` header, `e u v` edges, all 1-based). The companion C-set
//! format lists one 1-based vertex id per non-comment line. Random graphs
//! use ChaCha12 keyed by a 64-bit seed, so generation is reproducible
//! across runs and platforms.

use std::path::{Path, PathBuf};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::graph::{full_set, vset, Graph, Vertex, VertexSet};
use crate::instance::Instance;

#[derive(Clone, Debug)]
pub struct ParsedDimacs {
    pub graph: Graph,
    /// Duplicate `e` lines are collapsed and counted; benchmark files are
    /// messy enough that this is a warning, not an error.
    pub duplicate_edges: usize,
    pub skipped_lines: usize,
}

pub fn parse_dimacs(text: &str) -> Result<ParsedDimacs> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut duplicate_edges = 0usize;
    let mut skipped_lines = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if let Some(rest) = l.strip_prefix('p') {
            if n.is_some() {
                return Err(Error::MalformedHeader {
                    line,
                    msg: "second problem line".into(),
                });
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || !(toks[0] == "edge" || toks[0] == "edges" || toks[0] == "col") {
                return Err(Error::MalformedHeader {
                    line,
                    msg: format!("expected `p edge n m`, got `{l}`"),
                });
            }
            let nv: usize = toks[1].parse().map_err(|_| Error::MalformedHeader {
                line,
                msg: format!("bad vertex count `{}`", toks[1]),
            })?;
            n = Some(nv);
        } else if let Some(rest) = l.strip_prefix('e') {
            let Some(nv) = n else {
                return Err(Error::EdgeBeforeHeader { line });
            };
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::ParseError {
                    line,
                    msg: format!("expected `e u v`, got `{l}`"),
                });
            }
            let mut pair = [0i64; 2];
            for (slot, t) in pair.iter_mut().zip(&toks) {
                *slot = t.parse().map_err(|_| Error::ParseError {
                    line,
                    msg: format!("bad vertex id `{t}`"),
                })?;
            }
            for &v in &pair {
                if v < 1 || v as usize > nv {
                    return Err(Error::VertexOutOfRange { line, v, n: nv });
                }
            }
            let (u, v) = (pair[0] as Vertex - 1, pair[1] as Vertex - 1);
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                edges.push(key);
            } else {
                duplicate_edges += 1;
            }
        } else {
            // vertex-weight and other record kinds are irrelevant here
            skipped_lines += 1;
        }
    }
    let Some(nv) = n else {
        return Err(Error::MalformedHeader {
            line: 0,
            msg: "missing problem line".into(),
        });
    };
    Ok(ParsedDimacs {
        graph: Graph::from_edges(nv, &edges)?,
        duplicate_edges,
        skipped_lines,
    })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[derive(Clone, Debug)]
pub struct ParsedCset {
    pub set: VertexSet,
    pub duplicates: usize,
}

/// One 1-based vertex id per non-comment line.
pub fn parse_cset(text: &str, n: usize) -> Result<ParsedCset> {
    let mut set = vset(n);
    let mut duplicates = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') || l.starts_with('#') {
            continue;
        }
        let v: i64 = l.parse().map_err(|_| Error::ParseError {
            line,
            msg: format!("bad vertex id `{l}`"),
        })?;
        if v < 1 || v as usize > n {
            return Err(Error::VertexOutOfRange { line, v, n });
        }
        if set.put(v as usize - 1) {
            duplicates += 1;
        }
    }
    Ok(ParsedCset { set, duplicates })
}

pub fn write_cset(set: &VertexSet) -> String {
    set.ones().map(|v| format!("{}\n", v + 1)).collect()
}

/// Induced path `P_n` on vertices `0..n` in order.
pub fn gen_path(n: usize) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).expect("path is simple")
}

/// Web graph `W_n^k`: vertex `i` is adjacent to the `k` nearest vertices on
/// each side around the cycle. Requires `n ≥ 2(k+1)`; every degree is `2k`.
pub fn gen_web(n: usize, k: usize) -> Result<Graph> {
    if k < 1 || n < 2 * (k + 1) {
        return Err(Error::BadParameters(format!(
            "web requires k >= 1 and n >= 2(k+1), got n = {n}, k = {k}"
        )));
    }
    let mut edges = Vec::with_capacity(n * k);
    for i in 0..n {
        for d in 1..=k {
            let j = (i + d) % n;
            edges.push((i as Vertex, j as Vertex));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Kneser graph `K_{n,r}`: vertices are the `r`-subsets of `{1..n}` in
/// lexicographic order, adjacent iff disjoint. Requires `r ≥ 2` and
/// `n ≥ 2r+1`; the graph is regular of degree `C(n−r, r)`.
pub fn gen_kneser(n: usize, r: usize) -> Result<Graph> {
    if r < 2 || n < 2 * r + 1 {
        return Err(Error::BadParameters(format!(
            "kneser requires r >= 2 and n >= 2r+1, got n = {n}, r = {r}"
        )));
    }
    if n > 64 {
        return Err(Error::BadParameters(format!(
            "kneser ground set capped at 64, got {n}"
        )));
    }
    let masks: Vec<u64> = (0..n)
        .combinations(r)
        .map(|c| c.iter().fold(0u64, |m, &b| m | 1 << b))
        .collect();
    let nv = masks.len();
    if nv > 20_000 {
        return Err(Error::BadParameters(format!(
            "kneser graph would have {nv} vertices"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..nv {
        for j in (i + 1)..nv {
            if masks[i] & masks[j] == 0 {
                edges.push((i as Vertex, j as Vertex));
            }
        }
    }
    Graph::from_edges(nv, &edges)
}

/// G(n, p): each unordered pair becomes an edge independently with
/// probability `p`, drawn from ChaCha12 seeded with `seed`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameters(format!("p = {p} outside [0,1]")));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Where a graph comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    DimacsFile(PathBuf),
    Gnp { n: usize, p: f64, seed: Option<u64> },
    Path(usize),
    Web { n: usize, k: usize },
    Kneser { n: usize, r: usize },
    Complement(Box<GraphSource>),
}

/// How the closed set is chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum CsetChoice {
    All,
    None,
    File(PathBuf),
    /// 1-based ids, as typed on the command line.
    Explicit(Vec<Vertex>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub source: GraphSource,
    pub cset: CsetChoice,
}

impl GraphSource {
    /// Accepts `path(7)`, `web(8,3)`, `kneser(5,2)`, `gnp(30,0.5[,seed])`,
    /// `complement(<spec>)`, or a file path.
    pub fn parse(s: &str) -> Result<GraphSource> {
        let s = s.trim();
        let bad = |msg: &str| Error::BadParameters(format!("instance spec `{s}`: {msg}"));
        if let Some(inner) = s
            .strip_prefix("complement(")
            .and_then(|r| r.strip_suffix(')'))
        {
            return Ok(GraphSource::Complement(Box::new(GraphSource::parse(
                inner,
            )?)));
        }
        if let Some((head, args)) = s.split_once('(') {
            let args = args
                .strip_suffix(')')
                .ok_or_else(|| bad("missing closing parenthesis"))?;
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            let usize_at = |i: usize| -> Result<usize> {
                parts
                    .get(i)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("bad integer argument"))
            };
            return match head.trim() {
                "path" => Ok(GraphSource::Path(usize_at(0)?)),
                "web" => Ok(GraphSource::Web {
                    n: usize_at(0)?,
                    k: usize_at(1)?,
                }),
                "kneser" => Ok(GraphSource::Kneser {
                    n: usize_at(0)?,
                    r: usize_at(1)?,
                }),
                "gnp" => {
                    let p: f64 = parts
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| bad("bad probability"))?;
                    let seed = match parts.get(2) {
                        Some(t) => Some(t.parse().map_err(|_| bad("bad seed"))?),
                        None => None,
                    };
                    Ok(GraphSource::Gnp {
                        n: usize_at(0)?,
                        p,
                        seed,
                    })
                }
                _ => Err(bad("unknown generator")),
            };
        }
        Ok(GraphSource::DimacsFile(PathBuf::from(s)))
    }

    pub fn realize(&self, default_seed: u64) -> Result<Graph> {
        match self {
            GraphSource::DimacsFile(p) => {
                let text = std::fs::read_to_string(p)?;
                Ok(parse_dimacs(&text)?.graph)
            }
            GraphSource::Gnp { n, p, seed } => gen_gnp(*n, *p, seed.unwrap_or(default_seed)),
            GraphSource::Path(n) => Ok(gen_path(*n)),
            GraphSource::Web { n, k } => gen_web(*n, *k),
            GraphSource::Kneser { n, r } => gen_kneser(*n, *r),
            GraphSource::Complement(inner) => Ok(inner.realize(default_seed)?.complement()),
        }
    }

    pub fn id(&self) -> String {
        match self {
            GraphSource::DimacsFile(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string()),
            GraphSource::Gnp { n, p, seed } => match seed {
                Some(s) => format!("gnp({n},{p},{s})"),
                None => format!("gnp({n},{p})"),
            },
            GraphSource::Path(n) => format!("path({n})"),
            GraphSource::Web { n, k } => format!("web({n},{k})"),
            GraphSource::Kneser { n, r } => format!("kneser({n},{r})"),
            GraphSource::Complement(inner) => format!("complement({})", inner.id()),
        }
    }
}

impl CsetChoice {
    /// Accepts `all`, `none`, a comma list of 1-based ids, or a file path.
    pub fn parse(s: &str) -> CsetChoice {
        match s.trim() {
            "all" | "V" => CsetChoice::All,
            "none" | "empty" => CsetChoice::None,
            other => {
                let ids: Option<Vec<Vertex>> =
                    other.split(',').map(|t| t.trim().parse().ok()).collect();
                match ids {
                    Some(v) if !v.is_empty() && Path::new(other).extension().is_none() => {
                        CsetChoice::Explicit(v)
                    }
                    _ => CsetChoice::File(PathBuf::from(other)),
                }
            }
        }
    }

    pub fn realize(&self, n: usize) -> Result<VertexSet> {
        match self {
            CsetChoice::All => Ok(full_set(n)),
            CsetChoice::None => Ok(vset(n)),
            CsetChoice::File(p) => {
                let text = std::fs::read_to_string(p)?;
                Ok(parse_cset(&text, n)?.set)
            }
            CsetChoice::Explicit(ids) => {
                let mut set = vset(n);
                for &v in ids {
                    if v < 1 || v as usize > n {
                        return Err(Error::IndexOutOfRange { v, n });
                    }
                    set.insert(v as usize - 1);
                }
                Ok(set)
            }
        }
    }

    pub fn id(&self) -> String {
        match self {
            CsetChoice::All => "V".into(),
            CsetChoice::None => "empty".into(),
            CsetChoice::File(p) => p.display().to_string(),
            CsetChoice::Explicit(ids) => ids.iter().map(|v| v.to_string()).join("+"),
        }
    }
}

impl InstanceSpec {
    pub fn realize(&self, default_seed: u64) -> Result<Instance> {
        let graph = self.source.realize(default_seed)?;
        let cset = self.cset.realize(graph.n())?;
        Instance::new(graph, cset)
    }

    pub fn id(&self) -> String {
        format!("{};{}", self.source.id(), self.cset.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_small_col_file() {
        let d = parse_dimacs("c demo\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(d.graph.n(), 3);
        assert_eq!(d.graph.edge_count(), 2);
        assert_eq!(d.duplicate_edges, 0);
    }

    #[test]
    fn duplicate_edges_collapse_with_warning() {
        let d = parse_dimacs("p edge 2 2\ne 1 2\ne 1 2\n").unwrap();
        assert_eq!(d.graph.edge_count(), 1);
        assert_eq!(d.duplicate_edges, 1);
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 4 1\n"),
            Err(Error::VertexOutOfRange { v: 4, .. })
        ));
        assert!(matches!(
            parse_dimacs("e 1 2\n"),
            Err(Error::EdgeBeforeHeader { line: 1 })
        ));
        assert!(matches!(
            parse_dimacs("p graph 3 1\n"),
            Err(Error::MalformedHeader { .. })
        ));
    }

    #[test]
    fn dimacs_round_trip() {
        let g = gen_web(8, 3).unwrap();
        let d = parse_dimacs(&write_dimacs(&g)).unwrap();
        assert_eq!(d.graph, g);
    }

    #[test]
    fn webs_are_2k_regular() {
        let c8 = gen_web(8, 1).unwrap();
        assert!((0..8).all(|v| c8.degree(v) == 2));
        let w83 = gen_web(8, 3).unwrap();
        assert!((0..8).all(|v| w83.degree(v) == 6));
        let w62 = gen_web(6, 2).unwrap();
        assert!((0..6).all(|v| w62.degree(v) == 4));
        assert_eq!(w62.edge_count(), 12);
        assert!(gen_web(5, 2).is_err());
    }

    #[test]
    fn kneser_sizes_and_regularity() {
        let petersen = gen_kneser(5, 2).unwrap();
        assert_eq!(petersen.n(), 10);
        assert!((0..10).all(|v| petersen.degree(v) == 3));
        assert_eq!(gen_kneser(8, 3).unwrap().n(), 56);
        let k73 = gen_kneser(7, 3).unwrap();
        assert_eq!(k73.n(), 35);
        assert!((0..35).all(|v| k73.degree(v) == 4));
        assert!(gen_kneser(4, 2).is_err());
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        let complete = gen_gnp(6, 1.0, 9).unwrap();
        assert_eq!(complete.edge_count(), 15);
        let empty = gen_gnp(6, 0.0, 9).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let a = gen_gnp(30, 0.5, 777).unwrap();
        let b = gen_gnp(30, 0.5, 777).unwrap();
        assert_eq!(a, b);
        assert!(gen_gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn self_complementary_examples() {
        // complement of C5 is 2-regular and connected, hence another C5
        let c5 = gen_web(5, 1).unwrap();
        let cc = c5.complement();
        assert!((0..5).all(|v| cc.degree(v) == 2));
        // complement of P4 is again a path
        let p4c = gen_path(4).complement();
        let mut degs: Vec<usize> = (0..4).map(|v| p4c.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert_eq!(p4c.edge_count(), 3);
        assert_eq!(gen_path(1).n(), 1);
    }

    #[test]
    fn cset_parsing() {
        let c = parse_cset("1\n3\n", 3).unwrap();
        assert_eq!(c.set.ones().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(c.duplicates, 0);
        assert_eq!(parse_cset("2\n2\n", 3).unwrap().duplicates, 1);
        assert!(matches!(
            parse_cset("4\n", 3),
            Err(Error::VertexOutOfRange { v: 4, .. })
        ));
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            GraphSource::parse("web(8,3)").unwrap(),
            GraphSource::Web { n: 8, k: 3 }
        );
        assert_eq!(
            GraphSource::parse("complement(path(4))").unwrap(),
            GraphSource::Complement(Box::new(GraphSource::Path(4)))
        );
        assert!(matches!(
            GraphSource::parse("gnp(30,0.5)").unwrap(),
            GraphSource::Gnp { n: 30, seed: None, .. }
        ));
        assert_eq!(CsetChoice::parse("all"), CsetChoice::All);
        assert_eq!(
            CsetChoice::parse("1,3,5"),
            CsetChoice::Explicit(vec![1, 3, 5])
        );
    }

    #[test]
    fn gnp_density_sanity() {
        // empirical density within 3 sigma of p for n = 200
        let n = 200usize;
        let pairs = (n * (n - 1) / 2) as f64;
        let g = gen_gnp(n, 0.5, 4242).unwrap();
        let observed = g.edge_count() as f64;
        let sigma = (pairs * 0.25).sqrt();
        assert!((observed - 0.5 * pairs).abs() < 3.0 * sigma);
    }
}
