//! Eigenvalues of symmetric tridiagonal matrices by Sturm-count bisection.

/// A symmetric tridiagonal matrix stored by its diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

const PIVOT_GUARD: f64 = 1e-300;

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1), "off-diagonal length must be n - 1");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `sigma` (negative LDL^T pivots).
    pub fn sturm_count(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / guard(q)
            };
            q = d - sigma - coupling;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

/// The matrix `s * tridiag(-1, 2, -1) + diag(v)`: a three-point Laplacian
/// with uniform coupling `s` plus a potential.
///
/// Its Sturm count is evaluated on `t_i = q_i - s`, which never forms
/// `2s - sigma`. With `s ~ 1/h^2` much larger than the low eigenvalues this
/// keeps their absolute error near `eps * |v_i - sigma|` instead of
/// `eps * s`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianPlusDiagonal {
    pub coupling: f64,
    pub potential: Vec<f64>,
}

impl LaplacianPlusDiagonal {
    pub fn len(&self) -> usize {
        self.potential.len()
    }

    pub fn is_empty(&self) -> bool {
        self.potential.is_empty()
    }

    pub fn sturm_count(&self, sigma: f64) -> usize {
        let s = self.coupling;
        let mut count = 0;
        // a pivot floor scaled to the coupling keeps s t / (s + t) finite
        let floor = PIVOT_GUARD.max(f64::EPSILON * s.abs());
        let mut t = s;
        for (i, &v) in self.potential.iter().enumerate() {
            t = if i == 0 {
                s + (v - sigma)
            } else {
                (v - sigma) + s * t / guard_at(s + t, floor)
            };
            if s + t < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn gershgorin(&self) -> (f64, f64) {
        let s = self.coupling.abs();
        let vmin = self.potential.iter().copied().fold(f64::INFINITY, f64::min);
        let vmax = self.potential.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (
            2.0 * self.coupling + vmin - 2.0 * s,
            2.0 * self.coupling + vmax + 2.0 * s,
        )
    }

    pub fn to_tridiagonal(&self) -> SymTridiagonal {
        let n = self.len();
        SymTridiagonal::new(
            self.potential.iter().map(|v| 2.0 * self.coupling + v).collect(),
            vec![-self.coupling; n.saturating_sub(1)],
        )
    }
}

fn guard(q: f64) -> f64 {
    guard_at(q, PIVOT_GUARD)
}

fn guard_at(q: f64, floor: f64) -> f64 {
    if q.abs() < floor {
        if q < 0.0 {
            -floor
        } else {
            floor
        }
    } else {
        q
    }
}

/// Bisects for the `k`-th (0-based) eigenvalue using `count(sigma)` = number
/// of eigenvalues below `sigma`, starting from a bracket containing the
/// spectrum. Stops when the bracket is within `rel_tol` of its upper end or
/// can no longer be split; the iteration count depends only on the inputs.
pub fn bisect_eigenvalue<C>(count: C, k: usize, bounds: (f64, f64), rel_tol: f64, max_iter: usize) -> Option<f64>
where
    C: Fn(f64) -> usize,
{
    let (mut lo, mut hi) = bounds;
    if count(hi) <= k || count(lo) > k {
        return None;
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= rel_tol * hi.abs().max(lo.abs()) {
            return Some(0.5 * (lo + hi));
        }
        if count(mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}
