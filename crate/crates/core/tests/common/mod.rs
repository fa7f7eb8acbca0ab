//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's representation, bias or circuit
//! code; permutations are plain 0-based image vectors.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;

use num_complex::Complex64;

pub type Dense = Vec<Vec<Complex64>>;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("corpus")
}

/// `(file name, contents)` of every corpus circuit, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "circ"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

/// Matrix with `M[p(i)][i] = 1`.
pub fn perm_matrix(p: &[usize]) -> Dense {
    let n = p.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, &pi) in p.iter().enumerate() {
        m[pi][i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn transpose(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

pub fn mat_vec(a: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn fourier(n: usize) -> Vec<Complex64> {
    let s = 1.0 / (n as f64).sqrt();
    (1..=n)
        .map(|j| Complex64::from_polar(s, 2.0 * PI * j as f64 / n as f64))
        .collect()
}

pub fn pm(n: usize) -> Vec<Complex64> {
    let s = 1.0 / 2f64.sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[0] = Complex64::new(s, 0.0);
    v[1] = Complex64::new(-s, 0.0);
    v
}

/// The `n` cyclic shifts `i ↦ i + k mod n`.
pub fn shifts(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|k| (0..n).map(|i| (i + k) % n).collect())
        .collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `|(1/|K|) Σ_s ⟨ψ| M(s) M(g) M(s)ᵀ |ψ⟩|` by dense matrix products.
pub fn dense_bias(conjugators: &[Vec<usize>], g: &[usize], psi: &[Complex64]) -> f64 {
    let mg = perm_matrix(g);
    let total: Complex64 = conjugators
        .iter()
        .map(|s| {
            let ms = perm_matrix(s);
            let m = mat_mul(&mat_mul(&ms, &mg), &transpose(&ms));
            dot(psi, &mat_vec(&m, psi))
        })
        .sum();
    (total / conjugators.len() as f64).norm()
}

/// Direct evaluation of the circuit language by memoised recursion.
pub fn eval_circuit_text(text: &str, bits: &[bool]) -> bool {
    let mut inputs = Vec::new();
    let mut defs: HashMap<String, Vec<String>> = HashMap::new();
    let mut out = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["in", name] => inputs.push(name.to_string()),
            ["out", name] => out = name.to_string(),
            [id, "=", rest @ ..] => {
                defs.insert(id.to_string(), rest.iter().map(|s| s.to_string()).collect());
            }
            _ => panic!("unexpected line {line}"),
        }
    }
    fn value(
        w: &str,
        inputs: &[String],
        bits: &[bool],
        defs: &HashMap<String, Vec<String>>,
        memo: &mut HashMap<String, bool>,
    ) -> bool {
        if let Some(i) = inputs.iter().position(|x| x == w) {
            return bits[i];
        }
        if let Some(&v) = memo.get(w) {
            return v;
        }
        let d = &defs[w];
        let v = match d[0].as_str() {
            "NOT" => !value(&d[1], inputs, bits, defs, memo),
            "AND" => {
                value(&d[1], inputs, bits, defs, memo) && value(&d[2], inputs, bits, defs, memo)
            }
            "OR" => {
                value(&d[1], inputs, bits, defs, memo) || value(&d[2], inputs, bits, defs, memo)
            }
            k => panic!("unknown gate {k}"),
        };
        memo.insert(w.to_string(), v);
        v
    }
    value(&out, &inputs, bits, &defs, &mut HashMap::new())
}

/// Composes `later ∘ earlier` on image vectors.
pub fn compose(later: &[usize], earlier: &[usize]) -> Vec<usize> {
    earlier.iter().map(|&i| later[i]).collect()
}

pub fn bits_of(v: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| v >> i & 1 == 1).collect()
}
