//! Minimal Nelder–Mead simplex minimiser for small fixed dimensions.

/// Minimises `f` from `x0` with an axis-aligned initial simplex of edge
/// `step`. Stops after `max_iter` iterations or when the spread of simplex
/// values drops below `ftol`.
pub(crate) fn minimize<const N: usize, F>(f: F, x0: [f64; N], step: f64, max_iter: usize, ftol: f64) -> ([f64; N], f64)
where
    F: Fn(&[f64; N]) -> f64,
{
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..N {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, f(&x)));
    }

    let combine = |a: &[f64; N], b: &[f64; N], t: f64| -> [f64; N] {
        // a + t (b - a)
        let mut out = *a;
        for k in 0..N {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
        out
    };

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if (simplex[N].1 - simplex[0].1).abs() <= ftol {
            break;
        }
        let mut centroid = [0.0; N];
        for (x, _) in simplex.iter().take(N) {
            for k in 0..N {
                centroid[k] += x[k] / N as f64;
            }
        }
        let worst = simplex[N];

        let xr = combine(&centroid, &worst.0, -1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = combine(&centroid, &worst.0, -2.0);
            let fe = f(&xe);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = combine(&centroid, &xr, 0.5);
                (xc, f(&xc))
            } else {
                let xc = combine(&centroid, &worst.0, 0.5);
                (xc, f(&xc))
            };
            if fc < worst.1.min(fr) {
                simplex[N] = (xc, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    v.0 = combine(&best, &v.0, 0.5);
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}
