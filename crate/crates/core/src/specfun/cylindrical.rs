use super::{check_finite, miller_downward, miller_start};
use crate::error::Result;
use crate::scalar::{Cx, Real};

/// `J_0 ..= J_nmax` at `z`.
pub(super) fn bessel_j<T: Real>(nmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let mut j = bessel_j_all(nmax, z)?;
    j.truncate(nmax + 1);
    Ok(j)
}

/// Normalized Miller output; holds at least `nmax + 1` orders, often more.
fn bessel_j_all<T: Real>(nmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let zero = Cx::new(T::zero(), T::zero());
    if z == zero {
        let mut j = vec![zero; nmax + 1];
        j[0] = Cx::new(T::one(), T::zero());
        return Ok(j);
    }
    let start = miller_start(nmax, z.norm().as_f64(), |k| 2.0 * k as f64, T::digits());
    let mut f = miller_downward(z, start, |k| T::from_index(2 * k))?;

    // e^{-iz} = J_0 + 2 sum (-i)^n J_n, mirrored for the lower half plane
    let upper = z.im >= T::zero();
    let w = if upper { -Cx::<T>::i() } else { Cx::<T>::i() };
    let mut sum = zero;
    let mut p = Cx::new(T::one(), T::zero());
    for v in f.iter().skip(1) {
        p = p * w;
        sum = sum + p * *v;
    }
    sum = f[0] + sum * T::lit(2.0);
    let target = if upper { (-Cx::<T>::i() * z).exp() } else { (Cx::<T>::i() * z).exp() };
    let scale = target / sum;
    for v in &mut f {
        *v = *v * scale;
    }
    check_finite(&f, "cylindrical J recurrence")?;
    Ok(f)
}

/// `Y_0 ..= Y_nmax` at `z != 0`.
pub(super) fn bessel_y<T: Real>(nmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let (y0, y1) = if z.norm().as_f64() >= asymptotic_threshold::<T>() {
        hankel_y01(z)
    } else {
        neumann_y01(z)?
    };
    let mut y = Vec::with_capacity(nmax + 1);
    y.push(y0);
    y.push(y1);
    for n in 1..nmax {
        let next = y[n] * T::from_index(2 * n) / z - y[n - 1];
        y.push(next);
    }
    y.truncate(nmax + 1);
    check_finite(&y, "cylindrical Y recurrence")?;
    Ok(y)
}

/// Beyond this modulus the Hankel asymptotic series reaches full precision.
fn asymptotic_threshold<T: Real>() -> f64 {
    T::digits() * std::f64::consts::LN_10 / 2.0 + 6.0
}

/// Neumann expansions of `Y_0`, `Y_1` in even/odd `J_n`.
fn neumann_y01<T: Real>(z: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    let j = bessel_j_all(1, z)?;
    let two = T::lit(2.0);
    let pi = T::PI();
    let log_term = (z / two).ln() + T::euler_gamma();

    let zero = Cx::new(T::zero(), T::zero());
    let mut s0 = zero;
    let mut k = 1;
    while 2 * k < j.len() {
        let t = j[2 * k] / T::from_index(k);
        s0 = if k % 2 == 0 { s0 + t } else { s0 - t };
        k += 1;
    }
    let y0 = log_term * j[0] * (two / pi) - s0 * (T::lit(4.0) / pi);

    let mut s1 = zero;
    let mut m = 1;
    while 2 * m + 1 < j.len() {
        let c = T::from_index(2 * m + 1) / T::from_index(m * (m + 1));
        let t = j[2 * m + 1] * c;
        s1 = if m % 2 == 0 { s1 + t } else { s1 - t };
        m += 1;
    }
    let y1 = ((log_term - T::one()) * j[1] - j[0] / z - s1) * (two / pi);
    Ok((y0, y1))
}

/// `Y_0`, `Y_1` from the large-argument Hankel expansions.
fn hankel_y01<T: Real>(z: Cx<T>) -> (Cx<T>, Cx<T>) {
    let mut out = [Cx::new(T::zero(), T::zero()); 2];
    for (nu, slot) in out.iter_mut().enumerate() {
        let (p, q) = hankel_pq(nu, z);
        let phase = z - T::FRAC_PI_2() * T::from_index(nu) - T::FRAC_PI_4();
        let amp = (z * T::PI()).inv() * T::lit(2.0);
        // Y = sqrt(2/(pi z)) (P sin chi + Q cos chi)
        *slot = amp.sqrt() * (p * phase.sin() + q * phase.cos());
    }
    (out[0], out[1])
}

/// Asymptotic `P(nu, z)`, `Q(nu, z)` summed until the terms stop shrinking.
fn hankel_pq<T: Real>(nu: usize, z: Cx<T>) -> (Cx<T>, Cx<T>) {
    let mu = T::from_index(4 * nu * nu);
    let eps = T::epsilon();
    let mut p = Cx::new(T::one(), T::zero());
    let mut q = Cx::new(T::zero(), T::zero());
    let mut term = Cx::new(T::one(), T::zero());
    let mut last = T::infinity();
    for k in 1..200 {
        let odd = T::from_index(2 * k - 1);
        term = term * (mu - odd * odd) / (z * T::from_index(8 * k));
        let size = term.norm();
        if size > last {
            break;
        }
        last = size;
        // a_k / z^k enters with i^k: real part to P, imaginary to Q
        match k % 4 {
            1 => q = q + term,
            2 => p = p - term,
            3 => q = q - term,
            _ => p = p + term,
        }
        if size < eps * p.norm() {
            break;
        }
    }
    (p, q)
}
