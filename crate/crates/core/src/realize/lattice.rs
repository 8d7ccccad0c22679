//! Integer solutions of `A y = b`: a particular solution plus a kernel basis,
//! by unimodular column operations (column Hermite reduction).

use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSolution {
    pub particular: Vec<i128>,
    pub kernel: Vec<Vec<i128>>,
}

fn col_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Option<()> {
    for row in m.iter_mut() {
        row[dst] = row[dst].checked_sub(q.checked_mul(row[src])?)?;
    }
    Some(())
}

fn col_swap(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `None` when there is no integer solution (or an intermediate overflowed,
/// reported as `Err`).
pub fn solve_int(a: &[Vec<i128>], b: &[i128], n: usize) -> Result<Option<IntSolution>, ()> {
    let m = a.len();
    let mut l: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for r in 0..m {
        if rank == n {
            break;
        }
        for c in rank + 1..n {
            while l[r][c] != 0 {
                let q = Integer::div_floor(&l[r][rank], &l[r][c]);
                col_axpy(&mut l, rank, c, q).ok_or(())?;
                col_axpy(&mut u, rank, c, q).ok_or(())?;
                col_swap(&mut l, rank, c);
                col_swap(&mut u, rank, c);
            }
        }
        if l[r][rank] != 0 {
            pivots.push(r);
            rank += 1;
        }
    }
    let mut z = vec![0i128; n];
    for (k, &r) in pivots.iter().enumerate() {
        let mut rhs = b[r];
        for (c, zc) in z.iter().enumerate().take(k) {
            rhs = rhs
                .checked_sub(l[r][c].checked_mul(*zc).ok_or(())?)
                .ok_or(())?;
        }
        if rhs % l[r][k] != 0 {
            return Ok(None);
        }
        z[k] = rhs / l[r][k];
    }
    for r in 0..m {
        if pivots.contains(&r) {
            continue;
        }
        let mut s = 0i128;
        for c in 0..rank {
            s = s
                .checked_add(l[r][c].checked_mul(z[c]).ok_or(())?)
                .ok_or(())?;
        }
        if s != b[r] {
            return Ok(None);
        }
    }
    let mut y = vec![0i128; n];
    for (i, yi) in y.iter_mut().enumerate() {
        for (c, zc) in z.iter().enumerate().take(rank) {
            *yi = yi
                .checked_add(u[i][c].checked_mul(*zc).ok_or(())?)
                .ok_or(())?;
        }
    }
    let mut kernel: Vec<Vec<i128>> = (rank..n)
        .map(|c| (0..n).map(|i| u[i][c]).collect())
        .collect();
    reduce(&mut y, &mut kernel);
    Ok(Some(IntSolution {
        particular: y,
        kernel,
    }))
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.saturating_mul(*y))
        .fold(0, i128::saturating_add)
}

fn size_reduce(v: &mut [i128], k: &[i128]) -> bool {
    let kk = dot(k, k);
    if kk == 0 {
        return false;
    }
    let t = dot(v, k);
    // nearest integer to t / kk
    let q = Integer::div_floor(&(2 * t + kk), &(2 * kk));
    if q == 0 {
        return false;
    }
    for (x, y) in v.iter_mut().zip(k) {
        *x -= q * y;
    }
    true
}

/// Pairwise size reduction of the kernel basis and of the particular
/// solution against it; cheap and enough to bring solutions near the origin
/// at the sizes used here.
fn reduce(y: &mut [i128], kernel: &mut [Vec<i128>]) {
    for _ in 0..8 {
        let mut changed = false;
        for i in 0..kernel.len() {
            for j in 0..kernel.len() {
                if i != j {
                    let kj = kernel[j].clone();
                    changed |= size_reduce(&mut kernel[i], &kj);
                }
            }
        }
        if !changed {
            break;
        }
    }
    for _ in 0..8 {
        let mut changed = false;
        for k in kernel.iter() {
            changed |= size_reduce(y, k);
        }
        if !changed {
            break;
        }
    }
}
