//! Dense row operations over GF(p). Vectors are rows; matrices are lists of rows.

use super::Field;

pub type Row = Vec<u8>;

/// Reduced row-echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(f: Field, mut rows: Vec<Row>, ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col] == 0 {
                continue;
            }
            let factor = rows[i][col];
            for j in 0..ncols {
                let d = f.mul(factor, rows[r][j]);
                rows[i][j] = f.sub(rows[i][j], d);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(f: Field, rows: &[Row], ncols: usize) -> usize {
    rref(f, rows.to_vec(), ncols).0.len()
}

/// Basis of `{x : row . x = 0 for every row}`, one vector per free column.
pub fn null_space(f: Field, rows: &[Row], ncols: usize) -> Vec<Row> {
    let (red, pivots) = rref(f, rows.to_vec(), ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u8; ncols];
        v[free] = 1;
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

pub fn vec_mat(f: Field, v: &[u8], m: &[Row], ncols: usize) -> Row {
    debug_assert_eq!(v.len(), m.len());
    let mut out = vec![0u32; ncols];
    for (&c, row) in v.iter().zip(m) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o += c as u32 * x as u32;
        }
    }
    out.into_iter().map(|x| (x % f.p() as u32) as u8).collect()
}

pub fn mat_mul(f: Field, a: &[Row], b: &[Row], ncols: usize) -> Vec<Row> {
    a.iter().map(|row| vec_mat(f, row, b, ncols)).collect()
}

pub fn transpose(m: &[Row], ncols: usize) -> Vec<Row> {
    (0..ncols)
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
        .collect()
}

/// Coordinates `c` with `c . basis = v`, for linearly independent `basis`.
pub fn solve_coords(f: Field, basis: &[Row], v: &[u8]) -> Option<Row> {
    let k = basis.len();
    let n = v.len();
    // columns of the system are the basis vectors; last column is v
    let aug: Vec<Row> = (0..n)
        .map(|j| {
            let mut r: Row = basis.iter().map(|b| b[j]).collect();
            r.push(v[j]);
            r
        })
        .collect();
    let (red, pivots) = rref(f, aug, k + 1);
    if pivots.last() == Some(&k) || pivots.len() < k {
        return None;
    }
    let mut c = vec![0u8; k];
    for (row, &pc) in red.iter().zip(&pivots) {
        c[pc] = row[k];
    }
    Some(c)
}

pub fn inverse(f: Field, m: &[Row]) -> Option<Vec<Row>> {
    let n = m.len();
    let aug: Vec<Row> = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().copied().chain(e).collect())
        .collect();
    let (red, pivots) = rref(f, aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u8) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rref_by_hand() {
        let (rows, piv) = rref(gf(2), vec![vec![1, 1], vec![0, 1]], 2);
        assert_eq!(rows, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(piv, vec![0, 1]);
        let (rows, piv) = rref(gf(3), vec![vec![0, 2, 1], vec![0, 1, 2]], 3);
        assert_eq!(rows, vec![vec![0, 1, 2]]);
        assert_eq!(piv, vec![1]);
    }

    #[test]
    fn null_space_of_line() {
        assert_eq!(null_space(gf(2), &[vec![1, 1]], 2), vec![vec![1, 1]]);
        assert_eq!(
            null_space(gf(2), &[vec![1, 0, 0]], 3),
            vec![vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(5);
        let m = vec![vec![2, 1], vec![3, 3]];
        let inv = inverse(f, &m).unwrap();
        assert_eq!(mat_mul(f, &m, &inv, 2), identity(2));
        assert!(inverse(f, &[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn coords_in_non_echelon_basis() {
        let f = gf(3);
        let basis = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(solve_coords(f, &basis, &[1, 2, 1]), Some(vec![1, 1]));
        assert_eq!(solve_coords(f, &basis, &[0, 0, 1]), None);
    }
}
