//! Smith normal form of small integer matrices with both transforms.

/// `diag = U · A · V` with `diag[0] | diag[1] | …`, all non-negative.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub v_inv: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[dst] += k * row[src]`
fn add_row(m: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    let s = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(s) {
        *x = x
            .checked_add(k.checked_mul(y).expect("smith overflow"))
            .expect("smith overflow");
    }
}

/// `col[dst] += k * col[src]`
fn add_col(m: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] = row[dst]
            .checked_add(k.checked_mul(row[src]).expect("smith overflow"))
            .expect("smith overflow");
    }
}

pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Smith {
    let rows = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);
    let steps = rows.min(cols);
    let mut diag = vec![0; steps];

    // column op col_j += k col_t, mirrored on V and on V^{-1} (row_t -= k row_j)
    let col_op = |m: &mut Vec<Vec<i64>>,
                  v: &mut Vec<Vec<i64>>,
                  vi: &mut Vec<Vec<i64>>,
                  j: usize,
                  t: usize,
                  k: i64| {
        add_col(m, j, t, k);
        add_col(v, j, t, k);
        add_row(vi, t, j, -k);
    };

    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(diag, m, u, v, v_inv, t);
            };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);
            v_inv.swap(t, pj);

            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                add_row(&mut m, i, t, -q);
                add_row(&mut u, i, t, -q);
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                col_op(&mut m, &mut v, &mut v_inv, j, t, -q);
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            if let Some(i) = bad {
                add_row(&mut m, t, i, 1);
                add_row(&mut u, t, i, 1);
                continue;
            }
            break;
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag[t] = m[t][t];
    }
    Smith { diag, u, v, v_inv }
}

fn finish(
    mut diag: Vec<i64>,
    m: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
    v_inv: Vec<Vec<i64>>,
    from: usize,
) -> Smith {
    for (t, d) in diag.iter_mut().enumerate().skip(from) {
        *d = m[t][t];
    }
    Smith { diag, u, v, v_inv }
}
