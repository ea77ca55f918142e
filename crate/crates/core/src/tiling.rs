//! The digraph of consecutive intervals of `{1..n}` and its geometric
//! realization as a rhombus tiling of a zonogon.
//!
//! Both objects have the same shape: interval-graph nodes are tiling
//! vertices (an interval I sits at Σ over x ∈ I of ξ_x), arcs are tile
//! edges, and the maximal source-to-sink paths (the snakes) read off
//! exactly the single-peaked orders.

use std::fmt::Write as _;
use std::ops::{Add, Sub};

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::LinearOrder;

/// Exact coordinate type for tiling geometry.
pub type Coord = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("not single-peaked: the prefix ending at preference position {position} is not an interval")]
    NotSinglePeaked { position: usize },
    #[error("order over {found} alternatives is not realizable in a tiling over {expected}")]
    NotRealizable { expected: usize, found: usize },
    #[error("need exactly {expected} generators, got {found}")]
    WrongGeneratorCount { expected: usize, found: usize },
    #[error("generator {index} has a non-positive vertical component")]
    NonPositiveVertical { index: usize },
    #[error("generators {left} and {right} are not in strictly increasing slope order")]
    DegenerateSlopes { left: usize, right: usize },
}

/// A consecutive interval `[lo, hi]` of `{1..n}`; the empty set is
/// represented as `None` at use sites (and as JSON `null`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u32,
    pub hi: u32,
}

impl Interval {
    pub fn new(lo: u32, hi: u32) -> Self {
        assert!(1 <= lo && lo <= hi, "intervals need 1 <= lo <= hi");
        Self { lo, hi }
    }

    /// Number of elements; never zero (the empty set is `None` at use sites).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }
}

/// Display label for an interval-graph node.
pub fn node_label(node: &Option<Interval>) -> String {
    match node {
        None => "∅".to_string(),
        Some(iv) => format!("[{},{}]", iv.lo, iv.hi),
    }
}

/// An arc adding one element to an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalArc {
    pub from: usize,
    pub to: usize,
    /// The element whose addition this arc represents.
    pub added: u32,
}

/// All consecutive intervals of `{1..n}` plus the empty set, with an arc
/// wherever one element extends an interval: n(n+1)/2 + 1 nodes, at most
/// two out-arcs per nonempty node, and exactly 2^(n−1) maximal paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalGraph {
    n: usize,
    nodes: Vec<Option<Interval>>,
    arcs: Vec<IntervalArc>,
}

/// Builds the interval digraph; nodes are ordered by interval length, then
/// left endpoint, with the empty set first.
pub fn build_interval_graph(n: usize) -> IntervalGraph {
    assert!(n >= 1, "interval graphs need at least one alternative");
    let mut nodes = vec![None];
    for len in 1..=n as u32 {
        for lo in 1..=(n as u32 - len + 1) {
            nodes.push(Some(Interval::new(lo, lo + len - 1)));
        }
    }

    // index of [lo, hi]: nodes of shorter lengths, then left endpoints
    let index_of = |lo: u32, hi: u32| -> usize {
        let len = (hi - lo + 1) as usize;
        let before: usize = (1..len).map(|l| n - l + 1).sum();
        1 + before + (lo as usize - 1)
    };

    let mut arcs = Vec::new();
    for x in 1..=n as u32 {
        arcs.push(IntervalArc {
            from: 0,
            to: index_of(x, x),
            added: x,
        });
    }
    for (idx, node) in nodes.iter().enumerate() {
        let Some(iv) = node else { continue };
        if iv.len() == n {
            continue;
        }
        if iv.lo > 1 {
            arcs.push(IntervalArc {
                from: idx,
                to: index_of(iv.lo - 1, iv.hi),
                added: iv.lo - 1,
            });
        }
        if (iv.hi as usize) < n {
            arcs.push(IntervalArc {
                from: idx,
                to: index_of(iv.lo, iv.hi + 1),
                added: iv.hi + 1,
            });
        }
    }
    arcs.sort_unstable_by_key(|arc| (arc.from, arc.to));
    IntervalGraph { n, nodes, arcs }
}

impl IntervalGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Option<Interval>] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[IntervalArc] {
        &self.arcs
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Every path from ∅ to `{1..n}`, read as the sequence of added elements.
    /// Each path is a single-peaked order and every single-peaked order
    /// appears; the result is sorted lexicographically.
    pub fn maximal_paths(&self) -> Vec<LinearOrder> {
        let mut successors = vec![Vec::new(); self.nodes.len()];
        for arc in &self.arcs {
            successors[arc.from].push((arc.to, arc.added));
        }
        let mut out = Vec::new();
        let mut labels = Vec::with_capacity(self.n);
        self.walk(0, &successors, &mut labels, &mut out);
        out.sort_unstable();
        out
    }

    fn walk(
        &self,
        node: usize,
        successors: &[Vec<(usize, u32)>],
        labels: &mut Vec<u32>,
        out: &mut Vec<LinearOrder>,
    ) {
        if labels.len() == self.n {
            out.push(
                LinearOrder::new(labels.clone())
                    .expect("a maximal path adds each element exactly once"),
            );
            return;
        }
        for &(next, added) in &successors[node] {
            labels.push(added);
            self.walk(next, successors, labels, out);
            labels.pop();
        }
    }

    /// DOT text, nodes labeled `∅` / `[lo,hi]` and grouped by interval
    /// length. Byte-deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph intervals {\n  rankdir=BT;\n");
        let mut start = 0;
        while start < self.nodes.len() {
            let len = self.nodes[start].map_or(0, |iv| iv.len());
            let mut end = start;
            while end < self.nodes.len() && self.nodes[end].map_or(0, |iv| iv.len()) == len {
                end += 1;
            }
            out.push_str("  { rank=same;");
            for node in &self.nodes[start..end] {
                let _ = write!(out, " \"{}\";", node_label(node));
            }
            out.push_str(" }\n");
            start = end;
        }
        for arc in &self.arcs {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                node_label(&self.nodes[arc.from]),
                node_label(&self.nodes[arc.to])
            );
        }
        out.push_str("}\n");
        out
    }
}

/// An exact point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self {
            x: Ratio::from_integer(0),
            y: Ratio::from_integer(0),
        }
    }

    pub fn to_f64(self) -> (f64, f64) {
        (
            self.x.to_f64().expect("coordinates fit in f64"),
            self.y.to_f64().expect("coordinates fit in f64"),
        )
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// A rhombus spanned by generators ξ_i and ξ_j, bottom corner at `anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tile {
    pub i: u32,
    pub j: u32,
    pub anchor: Point,
}

/// The geometric tiling whose snakes are exactly the single-peaked orders:
/// vertex positions realize the interval graph, one tile per generator
/// pair, source at the origin and sink at the sum of all generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingGeometry {
    n: usize,
    generators: Vec<Point>,
    /// Prefix sums of the generators; prefix[k] = ξ_1 + ... + ξ_k.
    prefix: Vec<Point>,
    tiles: Vec<Tile>,
    graph: IntervalGraph,
}

/// Builds the tiling with the default generators ξ_i = (i − (n+1)/2, 1):
/// distinct slopes, unit heights, symmetric zonogon.
pub fn build_tiling(n: usize) -> TilingGeometry {
    assert!(n >= 1, "tilings need at least one alternative");
    let generators = (1..=n as i64)
        .map(|i| Point::new(Ratio::new(2 * i - n as i64 - 1, 2), Ratio::from_integer(1)))
        .collect();
    build_tiling_with(n, generators).expect("default generators are valid")
}

/// Builds the tiling from caller-supplied generators, which must all point
/// into the upper half-plane and come sorted by strictly increasing slope
/// (x/y, the left-to-right fan order).
pub fn build_tiling_with(n: usize, generators: Vec<Point>) -> Result<TilingGeometry, TilingError> {
    assert!(n >= 1, "tilings need at least one alternative");
    if generators.len() != n {
        return Err(TilingError::WrongGeneratorCount {
            expected: n,
            found: generators.len(),
        });
    }
    let zero = Ratio::from_integer(0);
    for (idx, g) in generators.iter().enumerate() {
        if g.y <= zero {
            return Err(TilingError::NonPositiveVertical { index: idx + 1 });
        }
    }
    for (idx, pair) in generators.windows(2).enumerate() {
        // x1/y1 < x2/y2 with positive y is x1*y2 < x2*y1
        if pair[0].x * pair[1].y >= pair[1].x * pair[0].y {
            return Err(TilingError::DegenerateSlopes {
                left: idx + 1,
                right: idx + 2,
            });
        }
    }

    let mut prefix = vec![Point::origin()];
    for g in &generators {
        prefix.push(*prefix.last().unwrap() + *g);
    }

    // the ij-tile sits on the interval strictly between i and j
    let mut tiles = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            let anchor = prefix[j as usize - 1] - prefix[i as usize];
            tiles.push(Tile { i, j, anchor });
        }
    }

    Ok(TilingGeometry {
        n,
        generators,
        prefix,
        tiles,
        graph: build_interval_graph(n),
    })
}

/// A source-to-sink path through the tiling: n+1 vertices whose k-th arc is
/// the generator of the k-th ranked alternative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snake {
    pub labels: Vec<u32>,
    pub vertices: Vec<Point>,
}

impl TilingGeometry {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// Tiles sorted by generator pair.
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    /// The underlying interval digraph.
    pub fn interval_graph(&self) -> &IntervalGraph {
        &self.graph
    }

    /// Position of an interval-graph node; the empty set sits at the origin.
    pub fn vertex(&self, node: &Option<Interval>) -> Point {
        match node {
            None => Point::origin(),
            Some(iv) => {
                assert!(iv.hi as usize <= self.n, "interval outside the tiling");
                self.prefix[iv.hi as usize] - self.prefix[iv.lo as usize - 1]
            }
        }
    }

    /// Bottom vertex of the zonogon.
    pub fn source(&self) -> Point {
        Point::origin()
    }

    /// Top vertex of the zonogon, ξ_1 + ... + ξ_n.
    pub fn sink(&self) -> Point {
        self.prefix[self.n]
    }

    /// Corners of a tile in polygon order.
    pub fn tile_corners(&self, tile: &Tile) -> [Point; 4] {
        let gi = self.generators[tile.i as usize - 1];
        let gj = self.generators[tile.j as usize - 1];
        [
            tile.anchor,
            tile.anchor + gi,
            tile.anchor + gi + gj,
            tile.anchor + gj,
        ]
    }

    /// All snakes, i.e. the full single-peaked domain, sorted.
    pub fn snakes(&self) -> Vec<LinearOrder> {
        self.graph.maximal_paths()
    }

    /// The unique source-to-sink path whose arc labels, read from the source
    /// upward, spell the order's ranking in preference order.
    pub fn snake_of(&self, order: &LinearOrder) -> Result<Snake, TilingError> {
        if order.n() != self.n {
            return Err(TilingError::NotRealizable {
                expected: self.n,
                found: order.n(),
            });
        }
        if let Some(position) = order.single_peaked_violation() {
            return Err(TilingError::NotSinglePeaked { position });
        }
        let mut vertices = Vec::with_capacity(self.n + 1);
        vertices.push(Point::origin());
        let mut current = Point::origin();
        for &v in order.ranking() {
            current = current + self.generators[v as usize - 1];
            vertices.push(current);
        }
        Ok(Snake {
            labels: order.ranking().to_vec(),
            vertices,
        })
    }

    /// Standalone SVG: one polygon per tile, boundary arcs labeled with
    /// their alternatives, and an optionally highlighted snake. The viewBox
    /// fits the zonogon with a 5% margin; coordinates are rounded to three
    /// decimals only at emission.
    pub fn export_svg(&self, highlight: Option<&LinearOrder>) -> Result<String, TilingError> {
        let snake = highlight.map(|order| self.snake_of(order)).transpose()?;

        const SCALE: f64 = 60.0;
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for node in self.graph.nodes() {
            let (x, y) = self.vertex(node).to_f64();
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        // the source is the lowest vertex: all generators point upward
        let min_y = 0.0;

        let width = (max_x - min_x) * SCALE;
        let height = (max_y - min_y) * SCALE;
        let margin = 0.05 * width.max(height).max(1.0);
        let place = |p: Point| -> (f64, f64) {
            let (x, y) = p.to_f64();
            ((x - min_x) * SCALE + margin, (max_y - y) * SCALE + margin)
        };
        let fmt_pair = |(x, y): (f64, f64)| format!("{x:.3},{y:.3}");

        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {:.3} {:.3}\">",
            width + 2.0 * margin,
            height + 2.0 * margin
        );

        out.push_str("  <g fill=\"#eef0f7\" stroke=\"#555555\" stroke-width=\"1.5\">\n");
        for tile in &self.tiles {
            let corners = self.tile_corners(tile);
            let points: Vec<String> = corners.iter().map(|&p| fmt_pair(place(p))).collect();
            let _ = writeln!(
                out,
                "    <polygon points=\"{}\"><title>tile {},{}</title></polygon>",
                points.join(" "),
                tile.i,
                tile.j
            );
        }
        out.push_str("  </g>\n");

        out.push_str("  <g font-family=\"sans-serif\" font-size=\"14\" fill=\"#222222\">\n");
        for k in 1..=self.n {
            // left boundary arc k adds alternative k going up
            let a = place(self.prefix[k - 1]);
            let b = place(self.prefix[k]);
            let _ = writeln!(
                out,
                "    <text x=\"{:.3}\" y=\"{:.3}\">{}</text>",
                (a.0 + b.0) / 2.0 - 16.0,
                (a.1 + b.1) / 2.0,
                k
            );
            if self.n == 1 {
                break; // the zonogon is a segment; one label suffices
            }
            // right boundary arc k adds alternative n−k+1 going up
            let a = place(self.prefix[self.n] - self.prefix[self.n - k + 1]);
            let b = place(self.prefix[self.n] - self.prefix[self.n - k]);
            let _ = writeln!(
                out,
                "    <text x=\"{:.3}\" y=\"{:.3}\">{}</text>",
                (a.0 + b.0) / 2.0 + 8.0,
                (a.1 + b.1) / 2.0,
                self.n - k + 1
            );
        }
        out.push_str("  </g>\n");

        if let Some(snake) = snake {
            let points: Vec<String> = snake
                .vertices
                .iter()
                .map(|&p| fmt_pair(place(p)))
                .collect();
            let _ = writeln!(
                out,
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"#c42828\" stroke-width=\"4\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>",
                points.join(" ")
            );
        }

        out.push_str("</svg>\n");
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::enumerate_sp;

    fn order(s: &str) -> LinearOrder {
        s.parse().unwrap()
    }

    #[test]
    fn interval_graph_counts() {
        let g = build_interval_graph(4);
        assert_eq!(g.node_count(), 11);
        assert_eq!(g.arc_count(), 16);
        let g = build_interval_graph(1);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.arc_count(), 1);
        let g = build_interval_graph(2);
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.arc_count(), 4);
    }

    #[test]
    fn interval_graph_degrees() {
        let g = build_interval_graph(5);
        let mut out_degree = vec![0usize; g.node_count()];
        for arc in g.arcs() {
            out_degree[arc.from] += 1;
        }
        assert_eq!(out_degree[0], 5); // the empty set fans out to singletons
        for (idx, node) in g.nodes().iter().enumerate().skip(1) {
            let len = node.unwrap().len();
            assert!(out_degree[idx] <= 2);
            if len == 5 {
                assert_eq!(out_degree[idx], 0);
            }
        }
    }

    #[test]
    fn maximal_paths_are_single_peaked_domain() {
        for n in 1..=8 {
            let paths = build_interval_graph(n).maximal_paths();
            let sp = enumerate_sp(n).unwrap();
            assert_eq!(paths, sp.orders(), "n = {n}");
        }
    }

    #[test]
    fn dot_export_shape() {
        let g = build_interval_graph(2);
        let dot = g.to_dot();
        for label in ["\"∅\"", "\"[1,1]\"", "\"[2,2]\"", "\"[1,2]\""] {
            assert!(dot.contains(label), "missing {label}");
        }
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot, g.to_dot());
        let dot1 = build_interval_graph(1).to_dot();
        assert_eq!(dot1.matches(" -> ").count(), 1);
    }

    #[test]
    fn default_tiling_counts() {
        assert_eq!(build_tiling(4).tile_count(), 6);
        assert_eq!(build_tiling(2).tile_count(), 1);
        assert_eq!(build_tiling(3).tile_count(), 3);
        assert_eq!(build_tiling(5).tile_count(), 10);
        assert_eq!(build_tiling(1).tile_count(), 0);
    }

    #[test]
    fn snakes_match_enumeration() {
        assert_eq!(
            build_tiling(2).snakes(),
            vec![order("12"), order("21")]
        );
        assert_eq!(
            build_tiling(3).snakes(),
            vec![order("123"), order("213"), order("231"), order("321")]
        );
        let tiling = build_tiling(4);
        assert_eq!(tiling.snakes(), enumerate_sp(4).unwrap().orders());
    }

    #[test]
    fn snake_geometry() {
        let tiling = build_tiling(4);
        let snake = tiling.snake_of(&order("2314")).unwrap();
        assert_eq!(snake.labels, vec![2, 3, 1, 4]);
        assert_eq!(snake.vertices.len(), 5);
        assert_eq!(snake.vertices[0], tiling.source());
        assert_eq!(snake.vertices[4], tiling.sink());
        // every intermediate vertex is the position of the matching ideal
        assert_eq!(
            snake.vertices[1],
            tiling.vertex(&Some(Interval::new(2, 2)))
        );
        assert_eq!(
            snake.vertices[2],
            tiling.vertex(&Some(Interval::new(2, 3)))
        );
        assert_eq!(
            snake.vertices[3],
            tiling.vertex(&Some(Interval::new(1, 3)))
        );
    }

    #[test]
    fn boundary_snakes() {
        let tiling = build_tiling(4);
        let left = tiling.snake_of(&order("1234")).unwrap();
        for (k, vertex) in left.vertices.iter().enumerate() {
            assert_eq!(*vertex, tiling.prefix[k]);
        }
        let right = tiling.snake_of(&order("4321")).unwrap();
        for (k, vertex) in right.vertices.iter().enumerate() {
            assert_eq!(*vertex, tiling.prefix[4] - tiling.prefix[4 - k]);
        }
    }

    #[test]
    fn snake_of_rejections() {
        let tiling = build_tiling(4);
        assert_eq!(
            tiling.snake_of(&order("1324")),
            Err(TilingError::NotSinglePeaked { position: 2 })
        );
        assert_eq!(
            tiling.snake_of(&order("123")),
            Err(TilingError::NotRealizable {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn generator_validation() {
        let one = Ratio::from_integer(1);
        let gens = |xs: &[i64]| -> Vec<Point> {
            xs.iter()
                .map(|&x| Point::new(Ratio::from_integer(x), one))
                .collect()
        };
        assert!(build_tiling_with(3, gens(&[-1, 0, 1])).is_ok());
        assert_eq!(
            build_tiling_with(3, gens(&[-1, 0])),
            Err(TilingError::WrongGeneratorCount {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            build_tiling_with(3, gens(&[-1, 1, 1])),
            Err(TilingError::DegenerateSlopes { left: 2, right: 3 })
        );
        let mut bad = gens(&[-1, 0, 1]);
        bad[1] = Point::new(Ratio::from_integer(0), Ratio::from_integer(-1));
        assert_eq!(
            build_tiling_with(3, bad),
            Err(TilingError::NonPositiveVertical { index: 2 })
        );
    }

    #[test]
    fn tiles_partition_the_zonogon() {
        // exact area check: tile areas sum to the zonogon area Σ|ξ_i × ξ_j|
        let tiling = build_tiling(5);
        let cross = |a: Point, b: Point| a.x * b.y - a.y * b.x;
        let mut tile_area = Ratio::from_integer(0);
        for tile in tiling.tiles() {
            let gi = tiling.generators()[tile.i as usize - 1];
            let gj = tiling.generators()[tile.j as usize - 1];
            let c = cross(gi, gj);
            tile_area += if c < Ratio::from_integer(0) { -c } else { c };
        }
        let mut zonogon_area = Ratio::from_integer(0);
        for i in 0..5 {
            for j in i + 1..5 {
                let c = cross(tiling.generators()[i], tiling.generators()[j]);
                zonogon_area += if c < Ratio::from_integer(0) { -c } else { c };
            }
        }
        assert_eq!(tile_area, zonogon_area);
    }

    #[test]
    fn svg_export_shape() {
        let tiling = build_tiling(4);
        let svg = tiling.export_svg(Some(&order("2314"))).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert_eq!(svg.matches("<polygon").count(), 6);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg, tiling.export_svg(Some(&order("2314"))).unwrap());

        let plain = build_tiling(2).export_svg(None).unwrap();
        assert_eq!(plain.matches("<polygon").count(), 1);
        assert_eq!(plain.matches("<polyline").count(), 0);

        assert_eq!(
            tiling.export_svg(Some(&order("1324"))),
            Err(TilingError::NotSinglePeaked { position: 2 })
        );
    }
}
