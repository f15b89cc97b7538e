//! Orientation test with an exact fallback for nearly collinear input.

pub type P2 = [f64; 2];

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let av = s - bv;
    (s, (a - av) + (b - bv))
}

fn grow(expansion: &mut Vec<f64>, b: f64) {
    let mut q = b;
    let mut out = Vec::with_capacity(expansion.len() + 1);
    for &h in expansion.iter() {
        let (s, e) = two_sum(q, h);
        if e != 0.0 {
            out.push(e);
        }
        q = s;
    }
    if q != 0.0 || out.is_empty() {
        out.push(q);
    }
    *expansion = out;
}

/// Twice the signed area of triangle `abc`; positive when counterclockwise.
/// The sign is exact.
pub fn orient2d(a: P2, b: P2, c: P2) -> f64 {
    let l = (a[0] - c[0]) * (b[1] - c[1]);
    let r = (a[1] - c[1]) * (b[0] - c[0]);
    let det = l - r;
    let bound = 3.3306690738754716e-16 * (l.abs() + r.abs());
    if det.abs() > bound {
        return det;
    }
    let terms = [
        two_product(a[0], b[1]),
        two_product(-a[0], c[1]),
        two_product(-c[0], b[1]),
        two_product(-a[1], b[0]),
        two_product(a[1], c[0]),
        two_product(c[1], b[0]),
    ];
    let mut e = Vec::with_capacity(12);
    for (p, err) in terms {
        grow(&mut e, err);
        grow(&mut e, p);
    }
    e.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sign_near_collinear() {
        let a = [0.5, 0.5];
        let b = [12.0, 12.0];
        let c = [24.0, 24.0];
        assert_eq!(orient2d(a, b, c), 0.0);
        let d = [24.0, 24.0 + 2f64.powi(-48)];
        assert!(orient2d(a, b, d) > 0.0);
        let eps = f64::EPSILON;
        assert!(orient2d([0.0, 0.0], [1.0, 1.0], [1.0 - eps, 1.0]) > 0.0);
        assert!(orient2d([0.0, 0.0], [1.0, 1.0], [1.0, 1.0 - eps]) < 0.0);
    }
}
