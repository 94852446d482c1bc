use super::span::Span;
use crate::error::Result;
use crate::semiring::EuclideanRing;

/// Hermite normal form of the module generated by a list of vectors over a
/// Euclidean ring, together with the unimodular transformation expressing
/// each basis row through the original generators.
pub(crate) struct Hermite<S: EuclideanRing> {
    s: S,
    generators: Vec<Vec<S::Elem>>,
    /// `(pivot column, basis row, transform)`, pivots strictly increasing.
    basis: Vec<(usize, Vec<S::Elem>, Vec<S::Elem>)>,
}

impl<S: EuclideanRing> Hermite<S> {
    pub(crate) fn new(s: S) -> Self {
        Hermite {
            s,
            generators: Vec::new(),
            basis: Vec::new(),
        }
    }

    /// Basis rows in Hermite normal form.
    #[cfg(test)]
    pub(crate) fn basis_rows(&self) -> Vec<Vec<S::Elem>> {
        self.basis.iter().map(|(_, r, _)| r.clone()).collect()
    }

    fn rebuild(&mut self) -> Result<()> {
        self.basis = hermite_form(&self.s, &self.generators)?;
        Ok(())
    }
}

/// `a·x + b·y` entrywise.
fn combine<S: EuclideanRing>(s: &S, a: &S::Elem, x: &[S::Elem], b: &S::Elem, y: &[S::Elem]) -> Result<Vec<S::Elem>> {
    x.iter()
        .zip(y)
        .map(|(p, q)| Ok(s.add(&s.mul(a, p)?, &s.mul(b, q)?)))
        .collect()
}

/// Extended Euclid: `(g, x, y)` with `g = x·a + y·b` a gcd of `a` and `b`.
fn xgcd<S: EuclideanRing>(s: &S, a: &S::Elem, b: &S::Elem) -> Result<(S::Elem, S::Elem, S::Elem)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (s.one(), s.zero());
    let (mut y0, mut y1) = (s.zero(), s.one());
    while !s.is_zero(&r1) {
        let (q, r) = s.div_rem(&r0, &r1);
        let x2 = s.sub(&x0, &s.mul(&q, &x1)?);
        let y2 = s.sub(&y0, &s.mul(&q, &y1)?);
        (r0, r1) = (r1, r);
        (x0, x1) = (x1, x2);
        (y0, y1) = (y1, y2);
    }
    Ok((r0, x0, y0))
}

type BasisRow<E> = (usize, Vec<E>, Vec<E>);

/// Row-style Hermite normal form of `gens`, computed on the augmented
/// matrix `[G | I]` so the right block records the transformation.
fn hermite_form<S: EuclideanRing>(s: &S, gens: &[Vec<S::Elem>]) -> Result<Vec<BasisRow<S::Elem>>> {
    let p = gens.len();
    if p == 0 {
        return Ok(Vec::new());
    }
    let width = gens[0].len();
    let mut rows: Vec<Vec<S::Elem>> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut r = g.clone();
            r.extend((0..p).map(|j| if i == j { s.one() } else { s.zero() }));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == p {
            break;
        }
        for i in r + 1..p {
            if s.is_zero(&rows[i][col]) {
                continue;
            }
            if s.is_zero(&rows[r][col]) {
                rows.swap(r, i);
                continue;
            }
            let a = rows[r][col].clone();
            let b = rows[i][col].clone();
            let (g, x, y) = xgcd(s, &a, &b)?;
            let a_g = s.div_rem(&a, &g).0;
            let b_g = s.div_rem(&b, &g).0;
            // [[x, y], [-b/g, a/g]] has determinant one.
            let top = combine(s, &x, &rows[r], &y, &rows[i])?;
            let bottom = combine(s, &s.neg(&b_g), &rows[r], &a_g, &rows[i])?;
            rows[r] = top;
            rows[i] = bottom;
        }
        if s.is_zero(&rows[r][col]) {
            continue;
        }
        let u = s.normalizing_unit(&rows[r][col]);
        rows[r] = rows[r].iter().map(|e| s.mul(&u, e)).collect::<Result<_, _>>()?;
        for k in 0..r {
            let (q, _) = s.div_rem(&rows[k][col], &rows[r][col]);
            if !s.is_zero(&q) {
                let minus_q = s.neg(&q);
                rows[k] = combine(s, &s.one(), &rows[k], &minus_q, &rows[r])?;
            }
        }
        pivots.push(col);
        r += 1;
    }
    Ok(rows
        .into_iter()
        .take(r)
        .zip(pivots)
        .map(|(mut row, pivot)| {
            let transform = row.split_off(width);
            (pivot, row, transform)
        })
        .collect())
}

impl<S: EuclideanRing> Span<S> for Hermite<S> {
    fn express(&self, v: &[S::Elem]) -> Result<Option<Vec<S::Elem>>> {
        let s = &self.s;
        let mut residual = v.to_vec();
        let mut coeffs = vec![s.zero(); self.generators.len()];
        for (pivot, row, transform) in &self.basis {
            let (q, _) = s.div_rem(&residual[*pivot], &row[*pivot]);
            if s.is_zero(&q) {
                continue;
            }
            let minus_q = s.neg(&q);
            residual = combine(s, &s.one(), &residual, &minus_q, row)?;
            coeffs = combine(s, &s.one(), &coeffs, &q, transform)?;
        }
        Ok(residual.iter().all(|e| s.is_zero(e)).then_some(coeffs))
    }

    fn insert(&mut self, v: Vec<S::Elem>) -> Result<()> {
        self.generators.push(v);
        self.rebuild()
    }
}
