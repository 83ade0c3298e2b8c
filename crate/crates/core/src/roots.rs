//! Roots of a star polynomial, located on the Riemann sphere.
//!
//! Roots come from the eigenvalues of a balanced companion matrix. Each root
//! is then expressed in whichever chart keeps it inside the unit disc: `z`
//! near the north pole, `w = 1/z` near the south pole. Roots that sit on top
//! of each other are merged; a loose cluster is only merged when the
//! polynomial and its first `m - 1` derivatives vanish at the cluster mean,
//! which is how a multiple root shows up after rounding has split it.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Chordal distance below which roots are merged unconditionally.
pub(crate) const CLUSTER_TOL: f64 = 1e-8;
/// Chordal radius of candidate multiple-root clusters.
const LOOSE_CLUSTER_TOL: f64 = 1e-2;
/// Relative size of the Taylor coefficients accepted as "vanishing".
const MULTIPLICITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Chart {
    /// `z` itself.
    North,
    /// `w = 1/z`.
    South,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Root {
    pub chart: Chart,
    pub value: Complex64,
    pub multiplicity: u32,
}

impl Root {
    /// `(θ, φ)` with `z = tan(θ/2) e^{iφ}`.
    pub fn angles(&self) -> (f64, f64) {
        let r = self.value.norm();
        let arg = if r == 0.0 { 0.0 } else { self.value.arg() };
        match self.chart {
            Chart::North => (2.0 * r.atan(), arg),
            Chart::South => (std::f64::consts::PI - 2.0 * r.atan(), -arg),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Point {
    chart: Chart,
    value: Complex64,
    unit: [f64; 3],
}

impl Point {
    fn new(chart: Chart, value: Complex64) -> Self {
        // Keep every point inside the unit disc of its chart.
        let (chart, value) = if value.norm() > 1.0 {
            (chart.flip(), value.inv())
        } else {
            (chart, value)
        };
        let r2 = value.norm_sqr();
        let unit = match chart {
            Chart::North => [
                2.0 * value.re / (1.0 + r2),
                2.0 * value.im / (1.0 + r2),
                (1.0 - r2) / (1.0 + r2),
            ],
            Chart::South => [
                2.0 * value.re / (1.0 + r2),
                -2.0 * value.im / (1.0 + r2),
                (r2 - 1.0) / (1.0 + r2),
            ],
        };
        Self { chart, value, unit }
    }

    fn in_chart(&self, chart: Chart) -> Complex64 {
        if chart == self.chart {
            self.value
        } else {
            self.value.inv()
        }
    }

    fn chordal(&self, other: &Point) -> f64 {
        let d2: f64 = (0..3).map(|i| (self.unit[i] - other.unit[i]).powi(2)).sum();
        0.5 * d2.sqrt()
    }
}

impl Chart {
    fn flip(self) -> Self {
        match self {
            Chart::North => Chart::South,
            Chart::South => Chart::North,
        }
    }
}

/// All `coeffs.len() - 1` roots of `Σ coeffs[n] zⁿ`, counting roots at
/// infinity for vanishing leading coefficients.
pub(crate) fn find_roots(coeffs: &[Complex64]) -> Result<Vec<Root>> {
    if coeffs
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::ZeroState);
    }
    let coeffs: Vec<Complex64> = coeffs.iter().map(|c| c / scale).collect();
    let degree = coeffs.len() - 1;
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let infinities = coeffs.iter().rev().take_while(|c| c.norm() == 0.0).count();
    let core = &coeffs[zeros..=degree - infinities];

    let mut points: Vec<Point> = raw_roots(core)?;
    points.extend((0..zeros).map(|_| Point::new(Chart::North, Complex64::default())));
    points.extend((0..infinities).map(|_| Point::new(Chart::South, Complex64::default())));
    debug_assert_eq!(points.len(), degree);

    let poly = Polynomial { coeffs };
    let mut roots = Vec::with_capacity(points.len());
    for cluster in components(&points, LOOSE_CLUSTER_TOL) {
        resolve(&poly, cluster, &mut roots);
    }
    Ok(roots)
}

/// Eigenvalues of the companion matrix of `core`, whose end coefficients are
/// nonzero. The larger end coefficient is made monic.
fn raw_roots(core: &[Complex64]) -> Result<Vec<Point>> {
    let m = core.len() - 1;
    match m {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Point::new(Chart::North, -core[0] / core[1])]),
        _ => {}
    }
    let (chart, monic): (Chart, Vec<Complex64>) = if core[m].norm() >= core[0].norm() {
        (Chart::North, core.iter().map(|c| c / core[m]).collect())
    } else {
        (
            Chart::South,
            core.iter().rev().map(|c| c / core[0]).collect(),
        )
    };
    let mut companion = DMatrix::<Complex64>::zeros(m, m);
    for i in 1..m {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..m {
        companion[(i, m - 1)] = -monic[i];
    }
    balance(&mut companion);
    let schur =
        nalgebra::Schur::try_new(companion, f64::EPSILON, 10_000).ok_or(Error::NoConvergence)?;
    let (_, t) = schur.unpack();
    Ok((0..m).map(|i| Point::new(chart, t[(i, i)])).collect())
}

/// Diagonal similarity scaling by powers of two so that row and column norms
/// are comparable.
fn balance(a: &mut DMatrix<Complex64>) {
    let n = a.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let c: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| a[(j, i)].l1_norm())
                .sum();
            let r: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| a[(i, j)].l1_norm())
                .sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut c = c;
            let mut r = r;
            while c < r / radix {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while c >= r * radix {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if (c + r) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Connected components of the graph linking points closer than `tol`.
fn components(points: &[Point], tol: f64) -> Vec<Vec<Point>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i].chordal(&points[j]) < tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Point>)> = Vec::new();
    for (i, &point) in points.iter().enumerate() {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(point),
            None => groups.push((root, vec![point])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Splits a cluster into the two halves left after cutting the longest edge
/// of its minimum spanning tree, returning that edge length.
fn split_longest_edge(points: &[Point]) -> (f64, Vec<Point>, Vec<Point>) {
    let n = points.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    best[0] = 0.0;
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 0..n {
        let u = (0..n)
            .filter(|&i| !in_tree[i])
            .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            .expect("non-empty");
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            edges.push((best[u], parent[u], u));
        }
        for v in 0..n {
            let d = points[u].chordal(&points[v]);
            if !in_tree[v] && d < best[v] {
                best[v] = d;
                parent[v] = u;
            }
        }
    }
    let (longest, idx) =
        edges
            .iter()
            .enumerate()
            .map(|(k, e)| (e.0, k))
            .fold(
                (f64::NEG_INFINITY, 0),
                |acc, x| if x.0 > acc.0 { x } else { acc },
            );
    // Union everything except the cut edge.
    let mut side = vec![usize::MAX; n];
    side[0] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for (k, &(_, a, b)) in edges.iter().enumerate() {
            if k == idx {
                continue;
            }
            if side[a] != usize::MAX && side[b] == usize::MAX {
                side[b] = side[a];
                changed = true;
            } else if side[b] != usize::MAX && side[a] == usize::MAX {
                side[a] = side[b];
                changed = true;
            }
        }
    }
    let (left, right): (Vec<_>, Vec<_>) = (0..n).partition(|&i| side[i] == 0);
    (
        longest,
        left.into_iter().map(|i| points[i]).collect(),
        right.into_iter().map(|i| points[i]).collect(),
    )
}

fn resolve(poly: &Polynomial, cluster: Vec<Point>, out: &mut Vec<Root>) {
    if cluster.len() == 1 {
        let p = cluster[0];
        let value = poly.polish(p.chart, p.value, 0);
        out.push(Root {
            chart: p.chart,
            value,
            multiplicity: 1,
        });
        return;
    }
    let m = cluster.len();
    let chart = centroid_chart(&cluster);
    let centroid = cluster.iter().map(|p| p.in_chart(chart)).sum::<Complex64>() / m as f64;
    let (longest, left, right) = split_longest_edge(&cluster);
    if longest < 2.0 * CLUSTER_TOL || poly.has_multiple_root(chart, centroid, m) {
        let value = if longest < 2.0 * CLUSTER_TOL {
            centroid
        } else {
            poly.polish(chart, centroid, m - 1)
        };
        out.push(Root {
            chart,
            value,
            multiplicity: m as u32,
        });
        return;
    }
    resolve(poly, left, out);
    resolve(poly, right, out);
}

fn centroid_chart(cluster: &[Point]) -> Chart {
    let z: f64 = cluster.iter().map(|p| p.unit[2]).sum();
    if z >= 0.0 {
        Chart::North
    } else {
        Chart::South
    }
}

/// Coefficients normalized to unit max-modulus, `coeffs[n]` multiplies `zⁿ`.
struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    fn chart_coeffs(&self, chart: Chart) -> Vec<Complex64> {
        match chart {
            Chart::North => self.coeffs.clone(),
            Chart::South => self.coeffs.iter().rev().copied().collect(),
        }
    }

    /// `f^{(k)}(x)/k!` and the matching rounding scale
    /// `Σ_{n≥k} C(n,k) |x|^{n-k}` (coefficients have unit max-modulus).
    fn taylor(coeffs: &[Complex64], x: Complex64, k: usize) -> (Complex64, f64) {
        let mut value = Complex64::default();
        let mut scale = 0.0;
        let r = x.norm();
        for (n, c) in coeffs.iter().enumerate().skip(k) {
            let binom = binomial_f64(n, k);
            let e = (n - k) as i32;
            value += c * binom * x.powi(e);
            scale += binom * r.powi(e);
        }
        (value, scale)
    }

    fn has_multiple_root(&self, chart: Chart, x: Complex64, m: usize) -> bool {
        let coeffs = self.chart_coeffs(chart);
        (0..m).all(|k| {
            let (v, scale) = Self::taylor(&coeffs, x, k);
            v.norm() <= MULTIPLICITY_TOL * scale
        })
    }

    /// Newton iteration on the `k`-th derivative, kept only while the
    /// residual decreases.
    fn polish(&self, chart: Chart, x: Complex64, k: usize) -> Complex64 {
        let coeffs = self.chart_coeffs(chart);
        let eval = |x: Complex64| {
            let (f, _) = Self::taylor(&coeffs, x, k);
            let (df, _) = Self::taylor(&coeffs, x, k + 1);
            (f, df * (k + 1) as f64)
        };
        let mut x = x;
        let (mut f, mut df) = eval(x);
        for _ in 0..32 {
            if f.norm() == 0.0 || df.norm() == 0.0 {
                break;
            }
            let next = x - f / df;
            let (nf, ndf) = eval(next);
            if nf.norm() >= f.norm() {
                break;
            }
            x = next;
            f = nf;
            df = ndf;
        }
        x
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    crate::majorana::binomial(n as u32, k as u32) as f64
}
