//! Independent reference computations shared by the integration tests.
//! Nothing here goes through the library's LU or solvers.

#![allow(dead_code)]

use mdp_gpi::Mdp;

/// `P^π` and `r^π` for a deterministic action vector, by direct indexing.
pub fn policy_system(mdp: &Mdp<f64>, actions: &[usize]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let p = actions
        .iter()
        .enumerate()
        .map(|(s, &a)| mdp.transition_row(s, a).to_vec())
        .collect();
    let r = actions.iter().enumerate().map(|(s, &a)| mdp.reward(s, a)).collect();
    (p, r)
}

/// `P^π` and `r^π` for a stochastic policy given as rows of action weights,
/// by elementwise summation.
pub fn mixed_system(mdp: &Mdp<f64>, rows: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = mdp.n_states();
    let mut p = vec![vec![0.0; n]; n];
    let mut r = vec![0.0; n];
    for s in 0..n {
        for (a, &w) in rows[s].iter().enumerate() {
            r[s] += w * mdp.reward(s, a);
            for (t, &q) in mdp.transition_row(s, a).iter().enumerate() {
                p[s][t] += w * q;
            }
        }
    }
    (p, r)
}

pub fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// `Σ_k (γP)^k r`, truncated once the next term is negligible.
pub fn neumann_value(gamma: f64, p: &[Vec<f64>], r: &[f64]) -> Vec<f64> {
    let mut total = r.to_vec();
    let mut term = r.to_vec();
    let scale = 1.0 / (1.0 - gamma);
    loop {
        term = mat_vec(p, &term).into_iter().map(|x| gamma * x).collect();
        let size = term.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (t, x) in total.iter_mut().zip(&term) {
            *t += x;
        }
        if size * scale < 1e-14 {
            return total;
        }
    }
}

/// Elementwise maximum of the values of every deterministic policy.
pub fn brute_force_optimum(mdp: &Mdp<f64>) -> Vec<f64> {
    let (ns, na) = (mdp.n_states(), mdp.n_actions());
    let mut actions = vec![0usize; ns];
    let mut best = vec![f64::NEG_INFINITY; ns];
    loop {
        let (p, r) = policy_system(mdp, &actions);
        let v = neumann_value(mdp.gamma(), &p, &r);
        for (b, x) in best.iter_mut().zip(v) {
            *b = b.max(x);
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == ns {
                return best;
            }
            actions[k] += 1;
            if actions[k] < na {
                break;
            }
            actions[k] = 0;
            k += 1;
        }
    }
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn gauss_inverse(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap();
        m.swap(c, piv);
        let d = m[c][c];
        assert!(d.abs() > 1e-14, "singular oracle matrix");
        for x in m[c].iter_mut() {
            *x /= d;
        }
        for i in 0..n {
            if i != c {
                let f = m[i][c];
                if f != 0.0 {
                    for j in 0..2 * n {
                        m[i][j] -= f * m[c][j];
                    }
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// `(I - γP)⁻¹` via the oracle inverse.
pub fn resolvent(gamma: f64, p: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = p.len();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j)) - gamma * p[i][j]).collect())
        .collect();
    gauss_inverse(&a)
}

pub fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
