//! Dense linear algebra over a finite field.

use crate::galois::{Elem, FieldCtx};

/// Dense matrix over a field, row-major.
pub type FMatrix = Vec<Vec<Elem>>;

pub fn determinant(mut m: FMatrix, f: &FieldCtx) -> Elem {
    let n = m.len();
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        let inv = f.inv(m[col][col]).unwrap();
        for r in col + 1..n {
            let factor = f.mul(m[r][col], inv);
            if factor == 0 {
                continue;
            }
            for k in col..n {
                let t = f.mul(factor, m[col][k]);
                m[r][k] = f.sub(m[r][k], t);
            }
        }
    }
    det
}

pub fn mat_mul(a: &FMatrix, b: &FMatrix, f: &FieldCtx) -> FMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| f.add(acc, f.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &FMatrix) -> FMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut FMatrix, f: &FieldCtx) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        let inv = f.inv(m[r][c]).unwrap();
        for v in m[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows {
            let factor = m[i][c];
            if i == r || factor == 0 {
                continue;
            }
            for k in c..cols {
                let t = f.mul(factor, m[r][k]);
                m[i][k] = f.sub(m[i][k], t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &FMatrix, f: &FieldCtx) -> usize {
    rref(&mut m.clone(), f).len()
}

pub fn identity(n: usize) -> FMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::field_of_order;

    #[test]
    fn small_determinants() {
        let f = field_of_order(7).unwrap();
        assert_eq!(determinant(identity(4), &f), 1);
        assert_eq!(determinant(vec![vec![1, 2], vec![3, 4]], &f), f.from_int(-2));
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]], &f), 6);
        assert_eq!(determinant(vec![vec![1, 2], vec![2, 4]], &f), 0);
    }

    #[test]
    fn echelon_form() {
        let f = field_of_order(5).unwrap();
        let mut m = vec![vec![0, 2, 4], vec![1, 1, 1], vec![1, 2, 3]];
        let piv = rref(&mut m, &f);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m, vec![vec![1, 0, 4], vec![0, 1, 2], vec![0, 0, 0]]);
        assert_eq!(rank(&identity(3), &f), 3);
    }
}
