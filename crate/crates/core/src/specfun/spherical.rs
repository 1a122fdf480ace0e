use super::{check_finite, miller_downward, miller_start};
use crate::error::Result;
use crate::scalar::{Cx, Real};

/// `j_0 ..= j_nmax` at `z`; order 0 is always `sin z / z` exactly.
pub(super) fn bessel_j<T: Real>(nmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let zero = Cx::new(T::zero(), T::zero());
    let one = Cx::new(T::one(), T::zero());
    if z == zero {
        let mut j = vec![zero; nmax + 1];
        j[0] = one;
        return Ok(j);
    }
    let j0 = z.sin() / z;
    let j1 = z.sin() / (z * z) - z.cos() / z;
    check_finite(&[j0, j1], "spherical j closed forms")?;

    let start = miller_start(nmax, z.norm().as_f64(), |k| 2.0 * k as f64 + 1.0, T::digits());
    let mut f = miller_downward(z, start, |k| T::from_index(2 * k + 1))?;
    // normalize on whichever of j_0, j_1 is larger to stay clear of zeros
    let scale = if j0.norm() >= j1.norm() { j0 / f[0] } else { j1 / f[1] };
    f.truncate(nmax + 1);
    for v in &mut f {
        *v = *v * scale;
    }
    f[0] = j0;
    check_finite(&f, "spherical j recurrence")?;
    Ok(f)
}

/// `y_0 ..= y_nmax` at `z != 0` by upward recurrence.
pub(super) fn bessel_y<T: Real>(nmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let y0 = -z.cos() / z;
    let y1 = -z.cos() / (z * z) - z.sin() / z;
    let mut y = Vec::with_capacity(nmax + 1);
    y.push(y0);
    y.push(y1);
    for n in 1..nmax {
        let next = y[n] * T::from_index(2 * n + 1) / z - y[n - 1];
        y.push(next);
    }
    y.truncate(nmax + 1);
    check_finite(&y, "spherical y recurrence")?;
    Ok(y)
}
