//! The Bruhat-Tits tree for GL2(Q_p) and the segments cut out by norm-p
//! ideals.
//!
//! Vertices are homothety classes of rank-2 lattices in Q_p^2. Every class
//! has a unique upper-triangular representative [[p^a, r], [0, p^b]] with
//! 0 <= r < p^b and min(a, val(r), b) = 0; the triple (a, r, b) is the
//! canonical name used everywhere, with the standard lattice L0 at (0, 0, 0).
//!
//! Matrices act on the left of row bases: the vertex of g is the class of
//! the lattice with rows of g as basis, and `act(v, g)` right-multiplies the
//! representative. Distance comes from the elementary divisors of the
//! transition matrix between representatives.
//!
//! A norm-p left ideal of the level-p^n order corresponds to a length-n
//! segment: its endpoints are the vertices of g and gamma * g for a
//! generator g. The order itself corresponds to the segment from L0 to the
//! vertex of gamma, and the radical ideal (n = 1) retraces exactly that
//! segment.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::Error;
use crate::order::{EichlerOrder, IdealLabel, NormPIdeal};
use crate::padic::{Mat2, Modulus, Valuation};

/// Canonical name (a, r, b) of a tree vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex {
    a: u32,
    r: u64,
    b: u32,
}

impl TreeVertex {
    /// The class of the standard lattice Z_p^2.
    pub fn root() -> TreeVertex {
        TreeVertex { a: 0, r: 0, b: 0 }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// The representative [[p^a, r], [0, p^b]] at the given precision.
    pub fn representative(&self, m: Modulus) -> Result<Mat2, Error> {
        if self.a >= m.precision() || self.b >= m.precision() {
            return Err(Error::PrecisionExhausted);
        }
        Ok(Mat2::from_u64(
            m,
            [[m.p_pow(self.a), self.r], [0, m.p_pow(self.b)]],
        ))
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.r, self.b)
    }
}

/// Canonical vertex of the lattice spanned by the rows of g.
///
/// Row-reduces g over Z_p to column echelon form [[p^a, r], [0, p^b]] with
/// unit-normalized pivots and r reduced mod p^b, then divides out the
/// largest common power of p. Fails with `SingularInput` when the
/// determinant's valuation cannot be established from the residue.
pub fn canonical_vertex(g: &Mat2) -> Result<TreeVertex, Error> {
    let m = g.modulus();
    if g.det().is_zero() {
        return Err(Error::SingularInput);
    }

    let mut r0 = [g.entry(0, 0), g.entry(0, 1)];
    let mut r1 = [g.entry(1, 0), g.entry(1, 1)];

    // Pivot in column 0: the row of smaller valuation.
    if r1[0].val() < r0[0].val() {
        std::mem::swap(&mut r0, &mut r1);
    }
    let Valuation::Finite(a) = r0[0].val() else {
        // Both column-0 entries vanish, so the residue determinant would too.
        unreachable!("nonzero determinant with an identically zero column");
    };
    // Scale row 0 by the inverse of the pivot's unit part: pivot becomes
    // exactly p^a because the error term p^K * t is annihilated mod p^K.
    let u_inv = r0[0].unit_part().unit_inv().expect("unit part is a unit");
    r0 = [r0[0] * u_inv, r0[1] * u_inv];
    // Eliminate below: the quotient is an exact integer since val >= a.
    let q = r1[0].div_p_pow(a);
    r1 = [r1[0] - q.mul_p_pow(a), r1[1] - q * r0[1]];
    debug_assert!(r1[0].is_zero());

    let Valuation::Finite(b) = r1[1].val() else {
        // Then det(g) = unit * p^a * r1[1] = 0 in the residue, caught above.
        unreachable!("nonzero determinant with a zero second pivot");
    };
    // The second pivot normalizes to exactly p^b; only its exponent matters.
    // Reduce the corner entry mod p^b, then strip the common power of p.
    let r = r0[1].value() % m.p_pow(b);
    let val_r = if r == 0 {
        Valuation::Infinity
    } else {
        Valuation::Finite(r.trailing_p_zeros(m.p()))
    };
    let lift = match val_r.min(Valuation::Finite(a.min(b))) {
        Valuation::Finite(e) => e,
        Valuation::Infinity => unreachable!("min against a finite valuation"),
    };
    Ok(TreeVertex {
        a: a - lift,
        r: r / m.p_pow(lift),
        b: b - lift,
    })
}

trait TrailingPZeros {
    fn trailing_p_zeros(self, p: u64) -> u32;
}

impl TrailingPZeros for u64 {
    fn trailing_p_zeros(self, p: u64) -> u32 {
        debug_assert!(self != 0);
        let mut v = self;
        let mut e = 0;
        while v.is_multiple_of(p) {
            v /= p;
            e += 1;
        }
        e
    }
}

/// Image of a vertex under the right action of g on row bases.
pub fn act(v: &TreeVertex, g: &Mat2) -> Result<TreeVertex, Error> {
    canonical_vertex(&(v.representative(g.modulus())? * *g))
}

/// Tree distance between two vertices: with h the transition matrix between
/// representatives, the elementary divisors of h are p^e1, p^e2 and the
/// distance is |e2 - e1| = val(det h) - 2 * min val of an entry of h.
pub fn distance(m: Modulus, v: &TreeVertex, w: &TreeVertex) -> Result<u32, Error> {
    let h = w.representative(m)? * v.representative(m)?.adjugate();
    let Valuation::Finite(dv) = h.det().val() else {
        return Err(Error::PrecisionExhausted);
    };
    let mv = h
        .entries()
        .iter()
        .map(|s| s.val())
        .min()
        .expect("2x2 matrix has entries");
    let Valuation::Finite(mv) = mv else {
        return Err(Error::PrecisionExhausted);
    };
    Ok(dv - 2 * mv)
}

/// The p + 1 neighbors of a vertex: classes of the index-p sublattices,
/// spanned by m * rep(v) for m in {[[1, j], [0, p]] : 0 <= j < p} and
/// [[p, 0], [0, 1]].
pub fn neighbors(m: Modulus, v: &TreeVertex) -> Result<Vec<TreeVertex>, Error> {
    let rep = v.representative(m)?;
    let p = m.p();
    let mut out = Vec::with_capacity(p as usize + 1);
    for j in 0..p {
        let t = Mat2::from_u64(m, [[1, j], [0, p]]);
        out.push(canonical_vertex(&(t * rep))?);
    }
    let t = Mat2::from_u64(m, [[p, 0], [0, 1]]);
    out.push(canonical_vertex(&(t * rep))?);
    Ok(out)
}

/// A geodesic path in the tree, stored as its full vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    path: Vec<TreeVertex>,
}

impl Segment {
    pub fn start(&self) -> TreeVertex {
        *self.path.first().expect("segments are nonempty")
    }

    pub fn end(&self) -> TreeVertex {
        *self.path.last().expect("segments are nonempty")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.path
    }

    pub fn edges(&self) -> impl Iterator<Item = (TreeVertex, TreeVertex)> + '_ {
        self.path.windows(2).map(|w| (w[0], w[1]))
    }

    /// Whether two segments traverse the same vertices, in either direction.
    pub fn same_geodesic(&self, other: &Segment) -> bool {
        if self.path == other.path {
            return true;
        }
        self.path.len() == other.path.len() && self.path.iter().rev().eq(other.path.iter())
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.path {
            if !first {
                write!(f, " - ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The unique geodesic between two vertices, by greedy descent: from the
/// current vertex, step to the neighbor strictly closer to the target.
pub fn geodesic(m: Modulus, from: &TreeVertex, to: &TreeVertex) -> Result<Segment, Error> {
    let mut remaining = distance(m, from, to)?;
    let mut path = vec![*from];
    let mut cur = *from;
    while remaining > 0 {
        let next = neighbors(m, &cur)?
            .into_iter()
            .find_map(|w| match distance(m, &w, to) {
                Ok(d) if d == remaining - 1 => Some(Ok(w)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            })
            .expect("a tree geodesic always has a next step")?;
        path.push(next);
        cur = next;
        remaining -= 1;
    }
    Ok(Segment { path })
}

/// The segment in the tree corresponding to a norm-p ideal: the geodesic
/// from the vertex of its generator g to the vertex of gamma * g. Its length
/// is always the level exponent n.
pub fn segment_of_ideal(order: &EichlerOrder, ideal: &NormPIdeal) -> Result<Segment, Error> {
    let m = order.modulus();
    let g = ideal.generator;
    let e1 = canonical_vertex(&g)?;
    let e2 = canonical_vertex(&(order.gamma() * g))?;
    geodesic(m, &e1, &e2)
}

/// The segment fixed by the order's unit group: from the root to the vertex
/// of gamma, passing through the vertices of [[0, 1], [p^i, 0]].
pub fn order_segment(order: &EichlerOrder) -> Result<Segment, Error> {
    let m = order.modulus();
    let root = TreeVertex::root();
    let gv = canonical_vertex(&order.gamma())?;
    geodesic(m, &root, &gv)
}

/// All vertices within the given distance of any seed, in sorted order.
pub fn ball(m: Modulus, seeds: &[TreeVertex], radius: u32) -> Result<Vec<TreeVertex>, Error> {
    let mut seen: BTreeSet<TreeVertex> = seeds.iter().copied().collect();
    let mut frontier: VecDeque<(TreeVertex, u32)> = seen.iter().map(|v| (*v, 0)).collect();
    while let Some((v, d)) = frontier.pop_front() {
        if d == radius {
            continue;
        }
        for w in neighbors(m, &v)? {
            if seen.insert(w) {
                frontier.push_back((w, d + 1));
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Default, Clone, Copy)]
struct EdgeTags {
    order_seg: bool,
    s1: bool,
    s2: bool,
    rad: bool,
}

/// Renders the ball of the given radius around the order's segment as a DOT
/// graph, highlighting the segments of the requested census ideals: the
/// order segment is bold, radical segments dashed, S1 segments blue, S2
/// segments red (purple where both sides overlap). Output is deterministic.
pub fn export_dot(
    order: &EichlerOrder,
    radius: u32,
    highlight: &[IdealLabel],
) -> Result<String, Error> {
    let m = order.modulus();
    let oseg = order_segment(order)?;
    let mut vertices: BTreeSet<TreeVertex> =
        ball(m, oseg.vertices(), radius)?.into_iter().collect();

    let mut tags: BTreeMap<(TreeVertex, TreeVertex), EdgeTags> = BTreeMap::new();
    let ordered = |a: TreeVertex, b: TreeVertex| if a <= b { (a, b) } else { (b, a) };
    for (a, b) in oseg.edges() {
        tags.entry(ordered(a, b)).or_default().order_seg = true;
    }
    for &label in highlight {
        let ideal = NormPIdeal {
            label,
            generator: order.generator(label)?,
        };
        let seg = segment_of_ideal(order, &ideal)?;
        vertices.extend(seg.vertices());
        for (a, b) in seg.edges() {
            let t = tags.entry(ordered(a, b)).or_default();
            match label {
                IdealLabel::S1(_) => t.s1 = true,
                IdealLabel::S2(_) => t.s2 = true,
                IdealLabel::Rad => t.rad = true,
            }
        }
    }

    let mut edges: BTreeSet<(TreeVertex, TreeVertex)> = BTreeSet::new();
    for v in &vertices {
        for w in neighbors(m, v)? {
            if vertices.contains(&w) {
                edges.insert(ordered(*v, w));
            }
        }
    }

    let mut out = String::new();
    out.push_str("graph bruhat_tits {\n");
    out.push_str("  node [shape=circle, fontsize=10];\n");
    for v in &vertices {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for (a, b) in &edges {
        let t = tags.get(&(*a, *b)).copied().unwrap_or_default();
        let mut attrs: Vec<String> = Vec::new();
        let mut styles: Vec<&str> = Vec::new();
        if t.order_seg {
            styles.push("bold");
        }
        if t.rad {
            styles.push("dashed");
        }
        if !styles.is_empty() {
            attrs.push(format!("style=\"{}\"", styles.join(",")));
        }
        match (t.s1, t.s2) {
            (true, true) => attrs.push("color=\"purple\"".into()),
            (true, false) => attrs.push("color=\"blue\"".into()),
            (false, true) => attrs.push("color=\"red\"".into()),
            (false, false) => {}
        }
        if attrs.is_empty() {
            out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
        } else {
            out.push_str(&format!("  \"{a}\" -- \"{b}\" [{}];\n", attrs.join(", ")));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn modulus(p: u64, k: u32) -> Modulus {
        Modulus::new(p, k).unwrap()
    }

    fn vertex(m: Modulus, rows: [[i64; 2]; 2]) -> TreeVertex {
        canonical_vertex(&Mat2::from_i64(m, rows)).unwrap()
    }

    #[test]
    fn canonical_form_basics() {
        let m = modulus(3, 13);
        let root = TreeVertex::root();
        assert_eq!(vertex(m, [[1, 0], [0, 1]]), root);
        // unit row operations do not move the vertex
        assert_eq!(vertex(m, [[2, 1], [1, 1]]), root);
        // homothety does not move the vertex
        assert_eq!(vertex(m, [[3, 0], [0, 3]]), root);
        // gamma's vertex for n = 1 is (1, 0, 0)
        let gv = vertex(m, [[0, 1], [3, 0]]);
        assert_eq!((gv.a(), gv.r(), gv.b()), (1, 0, 0));
        // [[3, 0], [3, 1]] spans the same lattice as gamma
        assert_eq!(vertex(m, [[3, 0], [3, 1]]), gv);
        let singular = Mat2::from_i64(m, [[1, 1], [2, 2]]);
        assert_eq!(canonical_vertex(&singular), Err(Error::SingularInput));
    }

    #[test]
    fn canonical_form_reduces_the_corner() {
        let m = modulus(3, 13);
        // [[9, 5], [0, 27]]: already echelon, r = 5 < 27, min exponent 0 via val(5)
        let v = vertex(m, [[9, 5], [0, 27]]);
        assert_eq!((v.a(), v.r(), v.b()), (2, 5, 3));
        // corner gets reduced mod p^b
        let w = vertex(m, [[9, 5 + 27], [0, 27]]);
        assert_eq!(v, w);
        // common power of p gets stripped
        let u = vertex(m, [[27, 15], [0, 81]]);
        assert_eq!(u, v);
    }

    #[test]
    fn act_moves_the_root_to_the_matrix_vertex() {
        let m = modulus(3, 13);
        let root = TreeVertex::root();
        let g = Mat2::from_i64(m, [[0, 1], [3, 0]]);
        let moved = act(&root, &g).unwrap();
        assert_eq!(moved, canonical_vertex(&g).unwrap());
        assert_eq!((moved.a(), moved.r(), moved.b()), (1, 0, 0));
    }

    #[test]
    fn distances() {
        let m = modulus(3, 13);
        let root = TreeVertex::root();
        assert_eq!(distance(m, &root, &root).unwrap(), 0);
        let gv = vertex(m, [[0, 1], [3, 0]]);
        assert_eq!(distance(m, &root, &gv).unwrap(), 1);
        assert_eq!(distance(m, &gv, &root).unwrap(), 1);
        let far = vertex(m, [[1, 0], [0, 81]]);
        assert_eq!(distance(m, &root, &far).unwrap(), 4);
        let corner = vertex(m, [[3, 1], [0, 3]]);
        assert_eq!(distance(m, &root, &corner).unwrap(), 2);
        // (1,1,1) hangs off the gamma vertex, one step beyond it
        assert_eq!(distance(m, &gv, &corner).unwrap(), 1);
    }

    #[test]
    fn neighbor_structure_at_the_root() {
        let m = modulus(3, 13);
        let ns = neighbors(m, &TreeVertex::root()).unwrap();
        assert_eq!(ns.len(), 4);
        let as_triples: Vec<(u32, u64, u32)> = ns.iter().map(|v| (v.a(), v.r(), v.b())).collect();
        assert_eq!(as_triples, vec![(0, 0, 1), (0, 1, 1), (0, 2, 1), (1, 0, 0)]);
        // oracle: canonical vertices at distance exactly 1 from the root,
        // found by scanning a crowd of integral matrices rather than by the
        // sublattice construction
        let mut found = BTreeSet::new();
        for a in 0..9i64 {
            for b in 0..9i64 {
                for c in 0..9i64 {
                    for d in 0..9i64 {
                        let g = Mat2::from_i64(m, [[a, b], [c, d]]);
                        if g.det().is_zero() {
                            continue;
                        }
                        let v = canonical_vertex(&g).unwrap();
                        if distance(m, &TreeVertex::root(), &v).unwrap() == 1 {
                            found.insert(v);
                        }
                    }
                }
            }
        }
        let expected: BTreeSet<TreeVertex> = ns.iter().copied().collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn sphere_sizes() {
        let m = modulus(3, 13);
        let root = TreeVertex::root();
        assert_eq!(ball(m, &[root], 0).unwrap().len(), 1);
        assert_eq!(ball(m, &[root], 1).unwrap().len(), 5);
        // |sphere(r)| = (p + 1) p^(r-1); ball(2) = 1 + 4 + 12
        assert_eq!(ball(m, &[root], 2).unwrap().len(), 17);
    }

    #[test]
    fn geodesics_walk_straight() {
        let m = modulus(3, 13);
        let root = TreeVertex::root();
        let far = vertex(m, [[1, 0], [0, 81]]);
        let seg = geodesic(m, &root, &far).unwrap();
        assert_eq!(seg.len(), 4);
        assert_eq!(seg.start(), root);
        assert_eq!(seg.end(), far);
        // successive vertices at distance 1, and distances to the target
        // decrease by 1 along the path
        for (i, (a, b)) in seg.edges().enumerate() {
            assert_eq!(distance(m, &a, &b).unwrap(), 1);
            assert_eq!(distance(m, &a, &far).unwrap() as usize, seg.len() - i);
        }
        let back = geodesic(m, &far, &root).unwrap();
        assert!(seg.same_geodesic(&back));
    }

    #[test]
    fn order_segment_passes_through_the_gamma_ladder() {
        for (p, n) in [(2u64, 1u32), (3, 2), (5, 3)] {
            let o = EichlerOrder::new(p, n).unwrap();
            let seg = order_segment(&o).unwrap();
            assert_eq!(seg.len(), n as usize);
            let expected: Vec<TreeVertex> = (0..=n)
                .map(|i| canonical_vertex(&o.gamma_i(i)).unwrap())
                .collect();
            assert_eq!(seg.vertices(), &expected[..]);
        }
    }

    #[test]
    fn ideal_segments_have_length_n_and_start_next_to_the_root() {
        for (p, n) in [(2u64, 1u32), (3, 1), (3, 2), (5, 2)] {
            let o = EichlerOrder::new(p, n).unwrap();
            let m = o.modulus();
            let root = TreeVertex::root();
            for ideal in o.ideals() {
                let seg = segment_of_ideal(&o, &ideal).unwrap();
                assert_eq!(seg.len(), n as usize, "{} at p={p}, n={n}", ideal.label);
                assert_eq!(distance(m, &root, &seg.start()).unwrap(), 1);
            }
        }
    }

    #[test]
    fn radical_segment_retraces_the_order_segment() {
        let o = EichlerOrder::new(3, 1).unwrap();
        let rad = NormPIdeal {
            label: IdealLabel::Rad,
            generator: o.gamma(),
        };
        let seg = segment_of_ideal(&o, &rad).unwrap();
        assert!(seg.same_geodesic(&order_segment(&o).unwrap()));
    }

    #[test]
    fn dot_export_shape() {
        let o = EichlerOrder::new(3, 1).unwrap();
        let labels = o.labels();
        let dot = export_dot(&o, 1, &labels).unwrap();
        assert!(dot.starts_with("graph bruhat_tits {"));
        assert!(dot.contains("\"0,0,0\";"));
        assert_eq!(dot.matches("color=\"blue\"").count(), 3);
        assert_eq!(dot.matches("color=\"red\"").count(), 3);
        // the radical edge coincides with the bold order segment
        assert_eq!(dot.matches("style=\"bold,dashed\"").count(), 1);
        // deterministic output
        assert_eq!(dot, export_dot(&o, 1, &labels).unwrap());
        // radius 0 still draws the highlighted segments in full
        let tight = export_dot(&o, 0, &labels).unwrap();
        assert_eq!(tight.matches("color=\"blue\"").count(), 3);
    }

    fn vertex_strategy(p: u64) -> impl Strategy<Value = TreeVertex> {
        // random small matrix with nonzero determinant, canonicalized
        let m = modulus(p, 13);
        prop::array::uniform4(0i64..200).prop_filter_map("singular", move |es| {
            let g = Mat2::from_i64(m, [[es[0], es[1]], [es[2], es[3]]]);
            canonical_vertex(&g).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn canonicity_absorbs_units_and_homotheties(
            p in prop::sample::select(vec![2u64, 3, 5]),
            es in prop::array::uniform4(0i64..200),
            us in prop::array::uniform4(-50i64..50),
            e in 0u32..2,
        ) {
            let m = modulus(p, 13);
            let g = Mat2::from_i64(m, [[es[0], es[1]], [es[2], es[3]]]);
            prop_assume!(!g.det().is_zero());
            let u = Mat2::from_i64(m, [[us[0], us[1]], [us[2], us[3]]]);
            prop_assume!(u.is_invertible());
            let v = canonical_vertex(&g).unwrap();
            let scaled = (u * g).scale(m.scalar(p.pow(e) as i64));
            prop_assert_eq!(canonical_vertex(&scaled).unwrap(), v);
        }

        #[test]
        fn distance_is_a_metric_sample(
            v1 in vertex_strategy(3),
            v2 in vertex_strategy(3),
            v3 in vertex_strategy(3),
        ) {
            let m = modulus(3, 13);
            let d12 = distance(m, &v1, &v2).unwrap();
            let d21 = distance(m, &v2, &v1).unwrap();
            prop_assert_eq!(d12, d21);
            prop_assert_eq!(d12 == 0, v1 == v2);
            let d13 = distance(m, &v1, &v3).unwrap();
            let d23 = distance(m, &v2, &v3).unwrap();
            prop_assert!(d13 <= d12 + d23);
        }

        #[test]
        fn neighbors_are_exactly_distance_one(v in vertex_strategy(5)) {
            let m = modulus(5, 13);
            let ns = neighbors(m, &v).unwrap();
            prop_assert_eq!(ns.len(), 6);
            let distinct: BTreeSet<_> = ns.iter().copied().collect();
            prop_assert_eq!(distinct.len(), 6);
            for w in &ns {
                prop_assert_eq!(distance(m, &v, w).unwrap(), 1);
            }
        }

        #[test]
        fn unimodular_action_is_an_isometry(
            v1 in vertex_strategy(3),
            v2 in vertex_strategy(3),
            us in prop::array::uniform4(-100i64..100),
        ) {
            let m = modulus(3, 13);
            let u = Mat2::from_i64(m, [[us[0], us[1]], [us[2], us[3]]]);
            prop_assume!(u.is_invertible());
            let d = distance(m, &v1, &v2).unwrap();
            let w1 = act(&v1, &u).unwrap();
            let w2 = act(&v2, &u).unwrap();
            prop_assert_eq!(distance(m, &w1, &w2).unwrap(), d);
        }
    }
}
