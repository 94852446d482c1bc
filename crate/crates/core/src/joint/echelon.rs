use super::span::Span;
use crate::error::Result;
use crate::semiring::Field;

struct Row<E> {
    pivot: usize,
    /// Normalized so the pivot entry is one.
    entries: Vec<E>,
    /// `entries = Σ_j transform[j] · generator_j`.
    transform: Vec<E>,
}

/// Row echelon form of the generators over a field, with the combination
/// of generators behind every echelon row. Pivots are first nonzero
/// columns; no other pivoting strategy is needed in exact arithmetic.
pub(crate) struct Echelon<S: Field> {
    s: S,
    rows: Vec<Row<S::Elem>>,
    generators: usize,
}

impl<S: Field> Echelon<S> {
    pub(crate) fn new(s: S) -> Self {
        Echelon {
            s,
            rows: Vec::new(),
            generators: 0,
        }
    }

    /// `(residual, c)` with `v = residual + Σ c_j g_j`. Each stored row
    /// vanishes at the pivots of earlier rows, so one pass in insertion
    /// order clears every pivot column of the residual.
    fn reduce(&self, v: &[S::Elem]) -> Result<(Vec<S::Elem>, Vec<S::Elem>)> {
        let s = &self.s;
        let mut residual = v.to_vec();
        let mut coeffs = vec![s.zero(); self.generators];
        for row in &self.rows {
            let c = residual[row.pivot].clone();
            if s.is_zero(&c) {
                continue;
            }
            for (r, e) in residual.iter_mut().zip(&row.entries) {
                *r = s.sub(r, &s.mul(&c, e)?);
            }
            for (k, t) in coeffs.iter_mut().zip(&row.transform) {
                *k = s.add(k, &s.mul(&c, t)?);
            }
        }
        Ok((residual, coeffs))
    }
}

impl<S: Field> Span<S> for Echelon<S> {
    fn express(&self, v: &[S::Elem]) -> Result<Option<Vec<S::Elem>>> {
        let (residual, coeffs) = self.reduce(v)?;
        Ok(residual.iter().all(|e| self.s.is_zero(e)).then_some(coeffs))
    }

    fn insert(&mut self, v: Vec<S::Elem>) -> Result<()> {
        let (residual, coeffs) = self.reduce(&v)?;
        let s = &self.s;
        let pivot = residual
            .iter()
            .position(|e| !s.is_zero(e))
            .expect("inserted vector must lie outside the span");
        let inv = s.inv(&residual[pivot]).expect("pivot is nonzero");
        // residual = g_new - Σ c_j g_j
        let mut transform: Vec<S::Elem> = coeffs.iter().map(|c| s.neg(c)).collect();
        transform.push(s.one());
        let scale = |xs: Vec<S::Elem>| xs.iter().map(|x| s.mul(&inv, x)).collect::<Result<Vec<_>, _>>();
        let row = Row {
            pivot,
            entries: scale(residual)?,
            transform: scale(transform)?,
        };
        self.rows.push(row);
        self.generators += 1;
        for r in &mut self.rows {
            r.transform.resize(self.generators, s.zero());
        }
        Ok(())
    }
}
