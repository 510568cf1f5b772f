//! Exact-arithmetic geometric ground truth.
//!
//! Orientation predicates over integer coordinates (i128 determinants, no
//! floating point), convex-position tests, induced CNF assignments, and
//! small-n brute-force convex-k-gon search. This module is the oracle the
//! encoder is tested against; it never consults the clause generators for
//! its answers.

use rand::Rng;

use crate::assembly::{assign_variables, VarNumbering};
use crate::combinatorics::{binomial, Combinations, SubsetRanker};
use crate::fourset::{pattern_index, FourSet, PatternClass, PATTERN_COUNT};
use crate::orientation::{OrientationAssignment, Sign, SignedLiteral, Triple, VarId};
use crate::params::EncodingParams;
use crate::{Error, Result};

/// Coordinates are bounded so that 2x2 determinants of differences stay far
/// inside i128 range.
pub const COORD_LIMIT: i64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Point {
        Point { x, y }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the determinant of `(q - p, r - p)`; `+` is counterclockwise.
pub fn orient(p: Point, q: Point, r: Point) -> Result<Sign> {
    match orient_det(p, q, r) {
        0 => Err(Error::Collinear(format!("{p}, {q}, {r}"))),
        d if d > 0 => Ok(Sign::Plus),
        _ => Ok(Sign::Minus),
    }
}

fn orient_det(p: Point, q: Point, r: Point) -> i128 {
    let ux = (q.x - p.x) as i128;
    let uy = (q.y - p.y) as i128;
    let vx = (r.x - p.x) as i128;
    let vy = (r.y - p.y) as i128;
    ux * vy - uy * vx
}

/// An exact-coordinate point configuration in general position: distinct
/// points, no three collinear. Labels are list positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Validates coordinate bounds, distinctness, and general position
    /// (O(n^3) exact orientation tests; intended for oracle-scale n).
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(Error::PointSet(format!("coordinate out of range: {p}")));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::PointSet(format!(
                        "duplicate point {} at labels {i} and {j}",
                        points[i]
                    )));
                }
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                for k in j + 1..points.len() {
                    if orient_det(points[i], points[j], points[k]) == 0 {
                        return Err(Error::Collinear(format!("labels {i}, {j}, {k}")));
                    }
                }
            }
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn n(&self) -> u32 {
        self.points.len() as u32
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, label: u32) -> Point {
        self.points[label as usize]
    }

    /// Parse a plain-text point list: one `x y` pair per line, label = line
    /// number. Blank lines and `#` comment lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (x, y) = match (it.next(), it.next(), it.next()) {
                (Some(x), Some(y), None) => (x, y),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'x y', got {line:?}",
                        lineno + 1
                    )))
                }
            };
            let x: i64 = x
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad x {x:?}", lineno + 1)))?;
            let y: i64 = y
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad y {y:?}", lineno + 1)))?;
            points.push(Point::new(x, y));
        }
        Self::new(points)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }

    /// Orientation of the labeled triple `(a, b, c)`.
    pub fn chi(&self, a: u32, b: u32, c: u32) -> Result<Sign> {
        orient(self.point(a), self.point(b), self.point(c))
    }

    /// The orientation assignment this configuration induces on all sorted
    /// triples.
    pub fn induced_assignment(&self) -> OrientationAssignment {
        OrientationAssignment::from_fn(self.n(), |t| {
            orient(self.point(t.i()), self.point(t.j()), self.point(t.k()))
                .expect("general position validated at construction")
        })
    }

    /// Full variable assignment: triple variables from the induced
    /// orientations, and for each 4-set exactly the matching pattern's
    /// selector set true.
    pub fn induced_model(&self, numbering: &VarNumbering) -> Result<Model> {
        if numbering.n() != self.n() {
            return Err(Error::InvalidParams(format!(
                "numbering is for n={}, point set has n={}",
                numbering.n(),
                self.n()
            )));
        }
        let assignment = self.induced_assignment();
        let mut model = Model::new(numbering.total_vars());
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t = Triple::new(i, j, k)?;
                    let var = numbering.triple_var(t)?;
                    model.set(var, assignment.sign_of(t)?.is_plus());
                }
            }
        }
        let ranker = SubsetRanker::new(n);
        let mut quads = Combinations::new(n, 4);
        while let Some(q) = quads.current() {
            let fourset = FourSet::new(q[0], q[1], q[2], q[3], &ranker)?;
            let signs = fourset.sign_vector(&assignment)?;
            let matching = pattern_index(signs)?;
            for p in 0..PATTERN_COUNT {
                model.set(numbering.selector_var(fourset.rank(), p), p == matching);
            }
            quads.advance();
        }
        Ok(model)
    }

    /// Brute-force search for a convex k-subset. Returns witness labels of
    /// the first subset (in lexicographic order) found in convex position.
    ///
    /// Capacity-bounded: refuses when C(n, k) exceeds 10^7 subsets.
    pub fn has_convex_subset(&self, k: u32) -> Result<Option<Vec<u32>>> {
        if k < 3 {
            return Err(Error::InvalidParams(format!("k must be >= 3, got {k}")));
        }
        let n = self.n();
        if k > n {
            return Ok(None);
        }
        let subsets = binomial(n as u64, k as u64);
        if subsets > 10_000_000 {
            return Err(Error::Capacity(format!(
                "C({n}, {k}) = {subsets} subsets exceeds the brute-force bound"
            )));
        }
        let mut buf: Vec<Point> = Vec::with_capacity(k as usize);
        let mut combos = Combinations::new(n, k);
        while let Some(labels) = combos.current() {
            buf.clear();
            buf.extend(labels.iter().map(|&l| self.point(l)));
            let convex = convex_position(&buf);
            debug_assert_eq!(convex, all_4subsets_convex(&buf));
            if convex {
                return Ok(Some(labels.to_vec()));
            }
            combos.advance();
        }
        Ok(None)
    }
}

/// Indices of the convex hull vertices, counterclockwise. Assumes distinct
/// points; with general position every hull vertex is strict.
pub fn convex_hull_indices(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| points[i]);
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    // lower chain then upper chain
    for &i in order.iter() {
        while hull.len() >= 2
            && orient_det(
                points[hull[hull.len() - 2]],
                points[hull[hull.len() - 1]],
                points[i],
            ) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient_det(
                points[hull[hull.len() - 2]],
                points[hull[hull.len() - 1]],
                points[i],
            ) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// All points are vertices of their convex hull.
pub fn convex_position(points: &[Point]) -> bool {
    points.len() < 3 || convex_hull_indices(points).len() == points.len()
}

fn all_4subsets_convex(points: &[Point]) -> bool {
    if points.len() < 4 {
        return true;
    }
    let mut quads = Combinations::new(points.len() as u32, 4);
    while let Some(ix) = quads.current() {
        let quad = [
            points[ix[0] as usize],
            points[ix[1] as usize],
            points[ix[2] as usize],
            points[ix[3] as usize],
        ];
        if !convex_position(&quad) {
            return false;
        }
        quads.advance();
    }
    true
}

/// Rejection-sample an n-point general-position configuration on the integer
/// grid `[-bound, bound]^2`.
pub fn random_general_position(n: usize, bound: i64, rng: &mut impl Rng) -> PointSet {
    assert!(bound >= 1 && bound <= COORD_LIMIT);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    'outer: while points.len() < n {
        let cand = Point::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if points.contains(&cand) {
            continue;
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if orient_det(points[i], points[j], cand) == 0 {
                    continue 'outer;
                }
            }
        }
        points.push(cand);
    }
    PointSet { points }
}

/// A total Boolean assignment over an instance's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn new(num_vars: u64) -> Model {
        Model {
            values: vec![false; num_vars as usize],
        }
    }

    pub fn num_vars(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn value(&self, var: VarId) -> bool {
        self.values[(var.get() - 1) as usize]
    }

    pub fn set(&mut self, var: VarId, value: bool) {
        self.values[(var.get() - 1) as usize] = value;
    }

    pub fn satisfies_literal(&self, lit: SignedLiteral) -> bool {
        self.value(lit.var()) == lit.sign().is_plus()
    }

    pub fn satisfies_clause(&self, clause: &[SignedLiteral]) -> bool {
        clause.iter().any(|&l| self.satisfies_literal(l))
    }

    /// Parse a solver model: either SAT-competition output (`s`/`v` lines)
    /// or bare whitespace-separated DIMACS literals. Every variable
    /// `1..=num_vars` must be assigned.
    pub fn parse_solver_output(text: &str, num_vars: u64) -> Result<Model> {
        let mut assigned = vec![None::<bool>; num_vars as usize];
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
                continue;
            }
            let body = line.strip_prefix('v').map(str::trim).unwrap_or(line);
            for token in body.split_whitespace() {
                let lit: i64 = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad literal {token:?}")))?;
                if lit == 0 {
                    continue;
                }
                let var = lit.unsigned_abs();
                if var > num_vars {
                    return Err(Error::Parse(format!(
                        "literal {lit} exceeds variable count {num_vars}"
                    )));
                }
                assigned[(var - 1) as usize] = Some(lit > 0);
            }
        }
        let mut values = Vec::with_capacity(num_vars as usize);
        for (i, v) in assigned.into_iter().enumerate() {
            match v {
                Some(b) => values.push(b),
                None => {
                    return Err(Error::IncompleteModel(format!(
                        "variable {} is unassigned",
                        i + 1
                    )))
                }
            }
        }
        Ok(Model { values })
    }
}

/// Outcome of model verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// First violated constraint found while decoding a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A 4-set's sign vector is not among the 14 realizable patterns. The
    /// relaxed 5-point family admits non-geometric assignments in principle,
    /// but the selector reification rules this out for genuine solver
    /// models; seeing it means the model is corrupt or the encoding was
    /// altered.
    UnrealizableFourSet { labels: [u32; 4], signs: String },
    /// A selector variable disagrees with the pattern its 4-set realizes.
    SelectorMismatch {
        labels: [u32; 4],
        pattern: usize,
        expected: bool,
    },
    /// All 4-subsets of this k-set are convex, i.e. the model contains a
    /// convex k-gon.
    ConvexKSet { labels: Vec<u32> },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::UnrealizableFourSet { labels, signs } => write!(
                f,
                "4-set {labels:?} has unrealizable sign vector {signs} (encoding gap or corrupt model)"
            ),
            Violation::SelectorMismatch {
                labels,
                pattern,
                expected,
            } => write!(
                f,
                "4-set {labels:?}: selector for pattern {} should be {expected}",
                pattern + 1
            ),
            Violation::ConvexKSet { labels } => {
                write!(f, "k-set {labels:?} is in convex position")
            }
        }
    }
}

/// Decode a solver model and check it is a genuine witness: every 4-set
/// realizes one of the 14 patterns with exactly the matching selector true,
/// and no k-set has all 4-subsets convex.
pub fn decode_and_verify(model: &Model, params: &EncodingParams) -> Result<Verdict> {
    let numbering = assign_variables(params)?;
    if model.num_vars() != numbering.total_vars() {
        return Err(Error::IncompleteModel(format!(
            "model has {} variables, instance has {}",
            model.num_vars(),
            numbering.total_vars()
        )));
    }
    let n = params.n();
    let ranker = SubsetRanker::new(n);
    let fourset_total = binomial(n as u64, 4) as usize;
    let mut convex4 = vec![false; fourset_total];

    let mut quads = Combinations::new(n, 4);
    while let Some(q) = quads.current() {
        let fourset = FourSet::new(q[0], q[1], q[2], q[3], &ranker)?;
        let signs = fourset.cyclic_literals(n).map(|lit| {
            Sign::from_parity_even(model.satisfies_literal(lit))
        });
        let matching = match pattern_index(signs) {
            Ok(p) => p,
            Err(_) => {
                return Ok(Verdict::Fail(Violation::UnrealizableFourSet {
                    labels: fourset.labels(),
                    signs: signs.iter().map(|s| s.to_string()).collect(),
                }))
            }
        };
        for p in 0..PATTERN_COUNT {
            let value = model.value(numbering.selector_var(fourset.rank(), p));
            if value != (p == matching) {
                return Ok(Verdict::Fail(Violation::SelectorMismatch {
                    labels: fourset.labels(),
                    pattern: p,
                    expected: p == matching,
                }));
            }
        }
        convex4[fourset.rank() as usize] =
            crate::fourset::REALIZABLE_PATTERNS[matching].class == PatternClass::Convex;
        quads.advance();
    }

    let mut ksets = Combinations::new(n, params.k());
    while let Some(labels) = ksets.current() {
        let mut all_convex = true;
        let mut quads = Combinations::new(params.k(), 4);
        while let Some(ix) = quads.current() {
            let rank = ranker.rank4(
                labels[ix[0] as usize],
                labels[ix[1] as usize],
                labels[ix[2] as usize],
                labels[ix[3] as usize],
            );
            if !convex4[rank as usize] {
                all_convex = false;
                break;
            }
            quads.advance();
        }
        if all_convex {
            return Ok(Verdict::Fail(Violation::ConvexKSet {
                labels: labels.to_vec(),
            }));
        }
        ksets.advance();
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orient_examples() {
        let o = Point::new(0, 0);
        assert_eq!(orient(o, Point::new(1, 0), Point::new(0, 1)).unwrap(), Sign::Plus);
        assert_eq!(orient(o, Point::new(0, 1), Point::new(1, 0)).unwrap(), Sign::Minus);
        assert!(matches!(
            orient(o, Point::new(1, 1), Point::new(2, 2)),
            Err(Error::Collinear(_))
        ));
    }

    #[test]
    fn pointset_rejects_collinear_and_duplicates() {
        assert!(PointSet::new(vec![
            Point::new(0, 0),
            Point::new(1, 1),
            Point::new(2, 2)
        ])
        .is_err());
        assert!(PointSet::new(vec![Point::new(3, 4), Point::new(3, 4)]).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let ps = PointSet::parse("0 0\n10 1\n# comment\n3 7\n").unwrap();
        assert_eq!(ps.len(), 3);
        let again = PointSet::parse(&ps.to_text()).unwrap();
        assert_eq!(ps, again);
    }

    #[test]
    fn unit_triangle_assignment() {
        let ps = PointSet::new(vec![Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)]).unwrap();
        let a = ps.induced_assignment();
        assert_eq!(a.chi(0, 1, 2).unwrap(), Sign::Plus);
        assert_eq!(a.chi(1, 0, 2).unwrap(), Sign::Minus);
    }

    #[test]
    fn hull_of_square_plus_center() {
        let pts = [
            Point::new(0, 0),
            Point::new(100, 2),
            Point::new(98, 99),
            Point::new(-1, 101),
            Point::new(49, 50),
        ];
        let hull = convex_hull_indices(&pts);
        assert_eq!(hull.len(), 4);
        assert!(!hull.contains(&4));
        assert!(!convex_position(&pts));
    }

    #[test]
    fn triangle_plus_interior_has_no_convex_quad() {
        let ps = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(2, 3),
            Point::new(2, 1),
        ])
        .unwrap();
        assert_eq!(ps.has_convex_subset(4).unwrap(), None);
    }

    #[test]
    fn every_five_point_set_has_convex_quad() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let ps = random_general_position(5, 1000, &mut rng);
            assert!(ps.has_convex_subset(4).unwrap().is_some());
        }
    }

    #[test]
    fn capacity_bound_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ps = random_general_position(40, 1_000_000, &mut rng);
        assert!(matches!(ps.has_convex_subset(15), Err(Error::Capacity(_))));
    }

    #[test]
    fn model_parsing() {
        let m = Model::parse_solver_output("s SATISFIABLE\nv 1 -2 3 0\n", 3).unwrap();
        assert!(m.value(VarId::new(1)));
        assert!(!m.value(VarId::new(2)));
        assert!(m.value(VarId::new(3)));
        assert!(matches!(
            Model::parse_solver_output("v 1 -2 0\n", 3),
            Err(Error::IncompleteModel(_))
        ));
        assert!(Model::parse_solver_output("v 1 -2 4 0\n", 3).is_err());
    }

    #[test]
    fn verify_accepts_induced_model_and_rejects_corruption() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // find a 7-point set with no convex 5-gon
        let (ps, numbering, params) = loop {
            let ps = random_general_position(7, 500, &mut rng);
            if ps.has_convex_subset(5).unwrap().is_none() {
                let params = EncodingParams::new(7, 5).unwrap();
                let numbering = assign_variables(&params).unwrap();
                break (ps, numbering, params);
            }
        };
        let mut model = ps.induced_model(&numbering).unwrap();
        assert_eq!(decode_and_verify(&model, &params).unwrap(), Verdict::Pass);

        // flip one selector: pinpointed as a mismatch on that 4-set
        let victim = numbering.selector_var(0, 3);
        model.set(victim, !model.value(victim));
        match decode_and_verify(&model, &params).unwrap() {
            Verdict::Fail(Violation::SelectorMismatch { labels, .. }) => {
                assert_eq!(labels, [0, 1, 2, 3]);
            }
            other => panic!("expected selector mismatch, got {other:?}"),
        }
    }
}
