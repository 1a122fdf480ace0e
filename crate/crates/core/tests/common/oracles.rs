//! Brute-force solvers used as references for the modal machinery.

use cloakwave::specfun::{cyl_bessel, sph_bessel, BesselEval, CylKind, SphKind};
use num_complex::Complex64;

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Gaussian elimination with partial pivoting.
pub fn solve_dense(mut m: Vec<Vec<C>>, mut rhs: Vec<C>) -> Vec<C> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm())).unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col];
        assert!(p.norm() > 0.0, "singular dense system");
        for row in col + 1..n {
            let f = m[row][col] / p;
            if f == c(0.0) {
                continue;
            }
            let (top, bottom) = m.split_at_mut(row);
            for (x, &v) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x -= f * v;
            }
            let v = rhs[col];
            rhs[row] -= f * v;
        }
    }
    let mut x = vec![c(0.0); n];
    for row in (0..n).rev() {
        let mut s = rhs[row];
        for k in row + 1..n {
            s -= m[row][k] * x[k];
        }
        x[row] = s / m[row][row];
    }
    x
}

enum Kind {
    Regular,
    Singular,
    Outgoing,
}

fn basis(d: u32, kind: Kind, n: usize, z: C) -> BesselEval {
    if d == 3 {
        let k = match kind {
            Kind::Regular => SphKind::J,
            Kind::Singular => SphKind::Y,
            Kind::Outgoing => SphKind::H1,
        };
        sph_bessel(k, n, z).unwrap()
    } else {
        let k = match kind {
            Kind::Regular => CylKind::J,
            Kind::Singular => CylKind::Y,
            Kind::Outgoing => CylKind::H1,
        };
        cyl_bessel(k, n, z).unwrap()
    }
}

/// One layer: outer radius, stiffness, density.
pub type LayerSpec = (f64, f64, C);

/// Assembles every interface condition of mode `n` into one dense system
/// and solves it. Returns `α_n` and the per-layer `(c_j, d_j)`.
pub fn dense_mode_solve(d: u32, layers: &[LayerSpec], k: f64, n: usize, b: C) -> (C, Vec<(C, C)>) {
    let l = layers.len();
    // unknowns: c_0, (c_j, d_j) for j ≥ 1, α
    let size = 2 * l;
    let col_c = |j: usize| if j == 0 { 0 } else { 2 * j - 1 };
    let col_d = |j: usize| 2 * j;
    let col_alpha = size - 1;
    let mut m = vec![vec![c(0.0); size]; size];
    let mut rhs = vec![c(0.0); size];
    let kappa = |j: usize| k * (layers[j].2 / layers[j].1).sqrt();
    for j in 0..l {
        let (r, a, _) = layers[j];
        let (ru, rf) = (2 * j, 2 * j + 1);
        let kin = kappa(j);
        let reg = basis(d, Kind::Regular, n, kin * r);
        m[ru][col_c(j)] += reg.value;
        m[rf][col_c(j)] += reg.derivative * kin * a;
        if j > 0 {
            let s = basis(d, Kind::Singular, n, kin * r);
            m[ru][col_d(j)] += s.value;
            m[rf][col_d(j)] += s.derivative * kin * a;
        }
        if j + 1 < l {
            let an = layers[j + 1].1;
            let kn = kappa(j + 1);
            let reg = basis(d, Kind::Regular, n, kn * r);
            let s = basis(d, Kind::Singular, n, kn * r);
            m[ru][col_c(j + 1)] -= reg.value;
            m[rf][col_c(j + 1)] -= reg.derivative * kn * an;
            m[ru][col_d(j + 1)] -= s.value;
            m[rf][col_d(j + 1)] -= s.derivative * kn * an;
        } else {
            let ke = c(k);
            let h = basis(d, Kind::Outgoing, n, ke * r);
            let e = basis(d, Kind::Regular, n, ke * r);
            m[ru][col_alpha] -= h.value;
            m[rf][col_alpha] -= h.derivative * ke;
            rhs[ru] += b * e.value;
            rhs[rf] += b * e.derivative * ke;
        }
    }
    let x = solve_dense(m, rhs);
    let coeffs = (0..l).map(|j| (x[col_c(j)], if j == 0 { c(0.0) } else { x[col_d(j)] })).collect();
    (x[col_alpha], coeffs)
}

/// Regular radial function used for sources, from elementary closed forms
/// (3D, `n ≤ 1`) or the power series (2D).
pub fn source_profile(d: u32, n: usize, x: f64) -> f64 {
    if d == 2 {
        return super::bessel_j_series(n as u32, x);
    }
    match n {
        0 if x == 0.0 => 1.0,
        0 => x.sin() / x,
        1 if x == 0.0 => 0.0,
        1 => x.sin() / (x * x) - x.cos() / x,
        _ => panic!("source profile only for n <= 1 in 3D"),
    }
}

/// Finite-volume solve of the radial mode equation
/// `r^{1−d} (r^{d−1} a u')' − a λ u / r² + k² σ u = f` on `[0, r_end]` with
/// the outgoing condition at `r_end` (exterior `a = σ = 1`). `f` is nonzero
/// only in the innermost layer. Every interface must be a grid node.
/// Returns the node radii and values.
pub fn fd_mode_solve(
    d: u32,
    n: usize,
    layers: &[LayerSpec],
    k: f64,
    source: impl Fn(f64) -> C,
    r_end: f64,
    cells: usize,
) -> (Vec<f64>, Vec<C>) {
    let h = r_end / cells as f64;
    let nf = n as f64;
    let lam = if d == 3 { nf * (nf + 1.0) } else { nf * nf };
    let p = d as i32 - 1;
    let coef = |r: f64| -> (f64, C, bool) {
        for (j, &(ro, a, s)) in layers.iter().enumerate() {
            if r < ro {
                return (a, s, j == 0);
            }
        }
        (1.0, c(1.0), false)
    };
    let vol = |lo: f64, hi: f64| (hi.powi(p + 1) - lo.powi(p + 1)) / (p + 1) as f64;
    let m = cells + 1;
    let mut lower = vec![c(0.0); m];
    let mut diag = vec![c(0.0); m];
    let mut upper = vec![c(0.0); m];
    let mut rhs = vec![c(0.0); m];
    for i in 0..m {
        let r = i as f64 * h;
        if i == 0 && n > 0 {
            diag[0] = c(1.0);
            continue;
        }
        // half cells on each side of the node
        let halves = [(r - h / 2.0).max(0.0), r, (r + h / 2.0).min(r_end)];
        for w in halves.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            let mid = 0.5 * (w[0] + w[1]);
            let (a, s, inner) = coef(mid);
            let v = vol(w[0], w[1]);
            diag[i] += (s * k * k - c(a * lam / (mid * mid))) * v;
            if inner {
                rhs[i] += source(mid) * v;
            }
        }
        if i + 1 < m {
            let face = r + h / 2.0;
            let (a, _, _) = coef(face);
            let t = a * face.powi(p) / h;
            diag[i] -= t;
            upper[i] += t;
        } else {
            let z = c(k * r_end);
            let hk = basis(d, Kind::Outgoing, n, z);
            let beta = hk.derivative * k / hk.value;
            diag[i] += beta * r_end.powi(p);
        }
        if i > 0 {
            let face = r - h / 2.0;
            let (a, _, _) = coef(face);
            let t = a * face.powi(p) / h;
            diag[i] -= t;
            lower[i] += t;
        }
    }
    // Thomas algorithm
    for i in 1..m {
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        let prev = rhs[i - 1];
        rhs[i] -= w * prev;
    }
    let mut u = vec![c(0.0); m];
    u[m - 1] = rhs[m - 1] / diag[m - 1];
    for i in (0..m - 1).rev() {
        u[i] = (rhs[i] - upper[i] * u[i + 1]) / diag[i];
    }
    ((0..m).map(|i| i as f64 * h).collect(), u)
}

/// `T_m(x), T_m'(x), T_m''(x)` for `m = 0..count`.
fn chebyshev(count: usize, x: f64) -> Vec<(f64, f64, f64)> {
    let mut out = vec![(1.0, 0.0, 0.0), (x, 1.0, 0.0)];
    for m in 1..count {
        let (t0, d0, s0) = out[m - 1];
        let (t1, d1, s1) = out[m];
        out.push((2.0 * x * t1 - t0, 2.0 * t1 + 2.0 * x * d1 - d0, 4.0 * d1 + 2.0 * x * s1 - s0));
    }
    out.truncate(count.max(1));
    out
}

/// Mode-0 limit of a 3D interior resonant at `κ*`, computed by Chebyshev
/// collocation of the coupled system: `v` and `w` solve
/// `a (v'' + 2v'/r) + a κ*² v = 0` in the unit ball, the exterior part is
/// `C/r`, `C − v(1) = −u(0)`, `−C = a w'(1)`, and `w` is `H¹`-orthogonal to
/// `j_0(κ* r)`. Returns `v` as a closure.
pub fn collocation_limit_mode0(a: f64, kappa: f64, u0: f64, terms: usize) -> impl Fn(f64) -> f64 {
    let even = move |x: f64| -> Vec<(f64, f64, f64)> {
        let t = chebyshev(2 * terms, x);
        (0..terms).map(|j| t[2 * j]).collect()
    };
    let size = 2 * terms + 1;
    let col_c = size - 1;
    let mut m = vec![vec![c(0.0); size]; size];
    let mut rhs = vec![c(0.0); size];
    let pts: Vec<f64> = (0..terms - 1)
        .map(|i| ((2 * i + 1) as f64 * std::f64::consts::PI / (4 * (terms - 1)) as f64).cos())
        .collect();
    let mut row = 0;
    for &r in &pts {
        let b = even(r);
        for (j, &(t, dt, st)) in b.iter().enumerate() {
            let op = a * (st + 2.0 * dt / r) + a * kappa * kappa * t;
            m[row][j] = c(op);
            m[row + 1][terms + j] = c(op);
        }
        row += 2;
    }
    let one = even(1.0);
    // C − v(1) = −u(0)
    for (j, &(t, _, _)) in one.iter().enumerate() {
        m[row][j] = c(-t);
    }
    m[row][col_c] = c(1.0);
    rhs[row] = c(-u0);
    row += 1;
    // −C = a w'(1)
    for (j, &(_, dt, _)) in one.iter().enumerate() {
        m[row][terms + j] = c(a * dt);
    }
    m[row][col_c] = c(1.0);
    row += 1;
    // ∫ (w' φ' + w φ) r² dr = 0 with φ = j_0(κ r), composite Simpson
    let steps = 4000;
    let hs = 1.0 / steps as f64;
    for i in 0..=steps {
        let r = i as f64 * hs;
        let wgt = hs / 3.0 * if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let x = kappa * r;
        let (phi, dphi) = if x == 0.0 { (1.0, 0.0) } else { (x.sin() / x, kappa * (x.cos() / x - x.sin() / (x * x))) };
        for (j, &(t, dt, _)) in even(r).iter().enumerate() {
            m[row][terms + j] += c(wgt * r * r * (dt * dphi + t * phi));
        }
    }
    row += 1;
    assert_eq!(row, size);
    let x = solve_dense(m, rhs);
    let p: Vec<f64> = x[..terms].iter().map(|z| z.re).collect();
    move |r: f64| even(r).iter().zip(&p).map(|(b, q)| b.0 * q).sum()
}

/// [`fd_mode_solve`] on `cells` and `cells/2` cells combined by Richardson
/// extrapolation at the coarse nodes, cancelling the `h²` error term.
pub fn fd_mode_solve_extrapolated(
    d: u32,
    n: usize,
    layers: &[LayerSpec],
    k: f64,
    source: impl Fn(f64) -> C,
    r_end: f64,
    cells: usize,
) -> (Vec<f64>, Vec<C>) {
    assert!(cells.is_multiple_of(2));
    let (_, fine) = fd_mode_solve(d, n, layers, k, &source, r_end, cells);
    let (rs, coarse) = fd_mode_solve(d, n, layers, k, &source, r_end, cells / 2);
    let u = coarse.iter().enumerate().map(|(i, &uc)| (fine[2 * i] * 4.0 - uc) / 3.0).collect();
    (rs, u)
}
