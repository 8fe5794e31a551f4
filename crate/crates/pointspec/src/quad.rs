//! Adaptive Gauss–Kronrod quadrature for the line integrals of the
//! similarity criterion.

/// 15-point Kronrod abscissae on [-1, 1] (positive half; symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Embedded 7-point Gauss weights (for XGK indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss–Kronrod 15(7) panel: returns (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = WGK[7] * f(c);
    let mut gauss = WG[3] * f(c);
    for j in 0..7 {
        let x = h * XGK[j];
        let fv = f(c - x) + f(c + x);
        kronrod += WGK[j] * fv;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fv;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

/// Work-bounded adaptive integration of `f` over `[a, b]`: repeatedly bisect
/// the worst-error panel until the total error estimate meets `rel_tol` or
/// the panel budget runs out.
///
/// `breakpoints` seed extra panel boundaries at locations the caller knows
/// to be sharp (resolvent peaks).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, breakpoints: &[f64], rel_tol: f64) -> f64 {
    const MAX_PANELS: usize = 8192;
    let mut edges: Vec<f64> = vec![a, b];
    edges.extend(breakpoints.iter().copied().filter(|x| *x > a && *x < b));
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut panels: Vec<Panel> = edges
        .windows(2)
        .map(|w| {
            let (val, err) = gk15(f, w[0], w[1]);
            Panel { a: w[0], b: w[1], val, err }
        })
        .collect();

    let min_width = (b - a) * 1e-13;
    while panels.len() < MAX_PANELS {
        let total_val: f64 = panels.iter().map(|p| p.val).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        if total_err <= rel_tol * total_val.abs() + 1e-300 {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("at least one panel");
        let p = panels[worst];
        if p.err == 0.0 || (p.b - p.a) <= min_width {
            break;
        }
        let c = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(f, p.a, c);
        let (v2, e2) = gk15(f, c, p.b);
        panels[worst] = Panel { a: p.a, b: c, val: v1, err: e1 };
        panels.push(Panel { a: c, b: p.b, val: v2, err: e2 });
    }
    panels.iter().map(|p| p.val).sum()
}
