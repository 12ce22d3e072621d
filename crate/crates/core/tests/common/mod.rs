//! Reference computations built from plain arrays, sharing no code with the library.
#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type M2 = [[C; 2]; 2];
pub type M4 = [[C; 4]; 4];

pub fn u(theta: f64, phi: f64) -> M2 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    [
        [C::from_polar(c, phi), C::new(s, 0.0)],
        [C::new(-s, 0.0), C::from_polar(c, -phi)],
    ]
}

pub fn kron(a: &M2, b: &M2) -> M4 {
    let mut m = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[2 * i + j][2 * k + l] = a[i][k] * b[j][l];
                }
            }
        }
    }
    m
}

pub fn mul(a: &M4, b: &M4) -> M4 {
    let mut m = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    m
}

pub fn dagger(a: &M4) -> M4 {
    let mut m = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[j][i].conj();
        }
    }
    m
}

pub fn identity() -> M4 {
    let mut m = [[C::new(0.0, 0.0); 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }
    m
}

/// `exp(iγ D⊗D / 2)` summed to 20 terms of its power series.
pub fn series_entangler(gamma: f64) -> M4 {
    let d = u(std::f64::consts::PI, 0.0);
    let mut x = kron(&d, &d);
    for row in x.iter_mut() {
        for z in row.iter_mut() {
            *z *= C::new(0.0, gamma / 2.0);
        }
    }
    let mut sum = identity();
    let mut term = identity();
    for n in 1..20 {
        term = mul(&term, &x);
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z /= n as f64;
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                sum[i][j] += term[i][j];
            }
        }
    }
    sum
}

/// `J (U_A ⊗ U_B) J† |CC⟩`, the library's default board.
pub fn final_state(gamma: f64, a: (f64, f64), b: (f64, f64)) -> [C; 4] {
    let j = series_entangler(gamma);
    let m = mul(&j, &mul(&kron(&u(a.0, a.1), &u(b.0, b.1)), &dagger(&j)));
    [m[0][0], m[1][0], m[2][0], m[3][0]]
}

/// `J† (U_A ⊗ U_B) J |CC⟩`, the alternative board.
pub fn final_state_gate_source(gamma: f64, a: (f64, f64), b: (f64, f64)) -> [C; 4] {
    let j = series_entangler(gamma);
    let m = mul(&dagger(&j), &mul(&kron(&u(a.0, a.1), &u(b.0, b.1)), &j));
    [m[0][0], m[1][0], m[2][0], m[3][0]]
}

pub fn probabilities(psi: &[C; 4]) -> [f64; 4] {
    psi.map(|z| z.norm_sqr())
}

/// Alice's and Bob's payoffs under `(r, p, t, s) = (3, 1, 5, 0)`.
pub fn standard_payoffs(p: &[f64; 4]) -> (f64, f64) {
    (3.0 * p[0] + 5.0 * p[2] + p[3], 3.0 * p[0] + 5.0 * p[1] + p[3])
}

pub fn max_diff(a: &[[C; 4]; 4], b: &[[C; 4]; 4]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}
