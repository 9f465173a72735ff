//! Exact linear algebra: fraction-free elimination over a field and
//! determinants/minors of polynomial matrices.

use std::collections::{BTreeMap, HashMap};

use crate::field::FieldElement;
use crate::mpoly::{MPoly, Ring};
use crate::par;

/// Fraction-free (Bareiss) forward elimination in place. Returns the pivot
/// columns; rows `0..pivots.len()` form an echelon basis of the row space.
pub fn bareiss_echelon(a: &mut Vec<Vec<FieldElement>>, ncols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = FieldElement::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..nrows {
            let f = a[i][c].clone();
            for j in 0..ncols {
                let v = &(&piv * &a[i][j]) - &(&f * &a[r][j]);
                a[i][j] = &v / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    pivots
}

/// Rank of sparse rows given as `(column, value)` lists, by elimination
/// on the first nonzero column.
pub fn sparse_rank(rows: Vec<Vec<(usize, FieldElement)>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, FieldElement>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, FieldElement> =
            row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        while let Some((&c, v)) = r.iter().next() {
            let Some(p) = pivots.get(&c) else {
                let inv = v.inv();
                for x in r.values_mut() {
                    *x = &*x * &inv;
                }
                pivots.insert(c, r);
                break;
            };
            let f = v.clone();
            for (j, pv) in p {
                let e = r.entry(*j).or_insert_with(FieldElement::zero);
                *e = &*e - &(&f * pv);
                if e.is_zero() {
                    r.remove(j);
                }
            }
        }
    }
    pivots.len()
}

pub fn rank(rows: &[Vec<FieldElement>], ncols: usize) -> usize {
    let mut a = rows.to_vec();
    bareiss_echelon(&mut a, ncols).len()
}

/// Reduced row echelon form with unit pivots; zero rows dropped.
pub fn rref(rows: &[Vec<FieldElement>], ncols: usize) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let mut a = rows.to_vec();
    let pivots = bareiss_echelon(&mut a, ncols);
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = a[i][c].inv();
        for j in 0..ncols {
            a[i][j] = &a[i][j] * &inv;
        }
        for k in 0..i {
            let f = a[k][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let v = &a[k][j] - &(&f * &a[i][j]);
                a[k][j] = v;
            }
        }
    }
    (a, pivots)
}

/// Basis of `{v : rows * v = 0}`, one vector per non-pivot column.
pub fn nullspace(rows: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    let (a, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::zero(); ncols];
        v[free] = FieldElement::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[i][free];
        }
        out.push(v);
    }
    out
}

/// Matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub ring: Ring,
    pub rows: Vec<Vec<MPoly>>,
    pub ncols: usize,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, ncols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: Vec<MPoly>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn append(&mut self, other: PolyMatrix) {
        assert_eq!(other.ncols, self.ncols);
        self.rows.extend(other.rows);
    }

    /// Substitutes scalars for all ring variables.
    pub fn evaluate(&self, values: &[FieldElement]) -> Vec<Vec<FieldElement>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate(values)).collect())
            .collect()
    }
}

/// Column count up to which minors use memoized Laplace expansion.
pub const LAPLACE_MAX_COLS: usize = 8;

/// All `k x k` minors, in lexicographic order of (column subset, row subset).
/// Zero minors are kept so positions are meaningful. Returns an empty list
/// when `k` exceeds the row or column count; `k = 0` gives `[1]`.
pub fn maximal_minors(m: &PolyMatrix, k: usize) -> Vec<MPoly> {
    if k == 0 {
        return vec![MPoly::one(&m.ring)];
    }
    if k > m.nrows() || k > m.ncols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for cols in subsets(m.ncols, k) {
        let sub: Vec<Vec<MPoly>> = m
            .rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        if k <= LAPLACE_MAX_COLS {
            out.extend(row_minors_laplace(&m.ring, &sub, k));
        } else {
            let row_sets = subsets(sub.len(), k);
            out.extend(par::map(&row_sets, |rs| {
                let mat: Vec<Vec<MPoly>> = rs.iter().map(|&i| sub[i].clone()).collect();
                det_bareiss(&m.ring, mat)
            }));
        }
    }
    out
}

/// Determinants of all `k`-row subsets of an `n x k` matrix, built column
/// by column: the minor on rows `R` and columns `0..s` expands along column
/// `s-1` into minors on columns `0..s-1`, which are shared between subsets.
fn row_minors_laplace(ring: &Ring, a: &[Vec<MPoly>], k: usize) -> Vec<MPoly> {
    let n = a.len();
    let mut level: HashMap<Vec<usize>, MPoly> = HashMap::new();
    level.insert(Vec::new(), MPoly::one(ring));
    for s in 1..=k {
        let sets = subsets(n, s);
        let prev = &level;
        let vals = par::map(&sets, |rs| {
            let mut acc = MPoly::zero(ring);
            for (pos, &i) in rs.iter().enumerate() {
                let e = &a[i][s - 1];
                if e.is_zero() {
                    continue;
                }
                let mut rest = rs.clone();
                rest.remove(pos);
                let sub = &prev[&rest];
                if sub.is_zero() {
                    continue;
                }
                // row i sits at position `pos` of the s x s block, column s-1
                let t = e.mul(sub);
                if (pos + s - 1) % 2 == 0 {
                    acc = acc.add(&t);
                } else {
                    acc = acc.sub(&t);
                }
            }
            acc
        });
        level = sets.into_iter().zip(vals).collect();
    }
    subsets(n, k)
        .into_iter()
        .map(|rs| level.remove(&rs).unwrap())
        .collect()
}

/// Determinant by fraction-free elimination with exact polynomial division.
pub fn det_bareiss(ring: &Ring, mut a: Vec<Vec<MPoly>>) -> MPoly {
    let n = a.len();
    if n == 0 {
        return MPoly::one(ring);
    }
    let mut sign = false;
    let mut prev = MPoly::one(ring);
    for c in 0..n - 1 {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return MPoly::zero(ring);
        };
        if p != c {
            a.swap(p, c);
            sign = !sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = a[c][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[c][j]));
                a[i][j] = v.exact_divide(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = MPoly::zero(ring);
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::mpoly::{parse_poly, MonomialOrder, PolyRing};
    use proptest::prelude::*;

    fn q(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn nullspace_small() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = &(&rows[0][0] * &v[0]) + &(&(&rows[0][1] * &v[1]) + &(&rows[0][2] * &v[2]));
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&rows, 3), 1);
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn two_by_two_minor() {
        let r = PolyRing::new(
            FieldContext::Rationals,
            ["a", "b", "c", "d"],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let p = |s| parse_poly(&r, s).unwrap();
        let mut m = PolyMatrix::new(&r, 2);
        m.push_row(vec![p("a"), p("b")]);
        m.push_row(vec![p("c"), p("d")]);
        assert_eq!(maximal_minors(&m, 2), vec![p("a*d - b*c")]);
        assert_eq!(maximal_minors(&m, 3), Vec::<MPoly>::new());
        assert_eq!(det_bareiss(&r, m.rows.clone()), p("a*d - b*c"));
    }

    #[test]
    fn identity_minor_nonzero() {
        let r = PolyRing::new(FieldContext::Rationals, ["x"], MonomialOrder::Grevlex).unwrap();
        let mut m = PolyMatrix::new(&r, 3);
        for i in 0..3 {
            m.push_row(
                (0..3)
                    .map(|j| MPoly::from_int(&r, (i == j) as i64))
                    .collect(),
            );
        }
        assert_eq!(maximal_minors(&m, 3), vec![MPoly::one(&r)]);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3).len(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn laplace_matches_bareiss(entries in prop::collection::vec(-4i64..5, 30)) {
            let r = PolyRing::new(FieldContext::Rationals, ["x", "y"], MonomialOrder::Grevlex).unwrap();
            let x = MPoly::var(&r, 0);
            let y = MPoly::var(&r, 1);
            let n = 4;
            let rows: Vec<Vec<MPoly>> = (0..6).map(|i| (0..n).map(|j| {
                let e = entries[(i * n + j) % entries.len()];
                let f = entries[(i * 7 + j * 3) % entries.len()];
                x.scale(&q(e)).add(&y.scale(&q(f))).add(&MPoly::from_int(&r, e - f))
            }).collect()).collect();
            let m = PolyMatrix { ring: r.clone(), rows: rows.clone(), ncols: n };
            let lap = maximal_minors(&m, n);
            let sets = subsets(6, n);
            prop_assert_eq!(lap.len(), sets.len());
            for (rs, d) in sets.iter().zip(&lap) {
                let sub: Vec<Vec<MPoly>> = rs.iter().map(|&i| rows[i].clone()).collect();
                prop_assert_eq!(&det_bareiss(&r, sub), d);
            }
        }

        #[test]
        fn nullspace_is_annihilated(entries in prop::collection::vec(-3i64..4, 12)) {
            let rows: Vec<Vec<FieldElement>> = entries.chunks(4).map(|c| c.iter().map(|&v| q(v)).collect()).collect();
            let ns = nullspace(&rows, 4);
            prop_assert_eq!(ns.len() + rank(&rows, 4), 4);
            for v in &ns {
                for row in &rows {
                    let mut acc = FieldElement::zero();
                    for (a, b) in row.iter().zip(v) { acc = &acc + &(a * b); }
                    prop_assert!(acc.is_zero());
                }
            }
        }
    }
}
