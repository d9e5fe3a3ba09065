//! Numerical certification of the two inequalities used to locate a good
//! spine:
//!
//! * dichotomy: for `x` in `[0, t]^k`,
//!   `(1/k) Σ (t - x_i)^k + Π x_i >= 2 (t/2)^k`;
//! * degree product: for `x` in `[0, 1]^l` and `k <= l`,
//!   `e_k(x) >= C(Σ x_i, k)`, where `C(c, k)` is read as the convex
//!   extension of the binomial: the falling-factorial polynomial for
//!   `c >= k - 1` and zero below. With the bare polynomial the inequality
//!   fails whenever `Σ x_i` lies in `(k - 3, k - 2)`, `(k - 5, k - 4)`, ...
//!
//! Margins are `lhs - rhs`; a sample violates only when its margin is below
//! `-tol * (1 + |rhs|)`.

use rand::Rng;
use rayon::prelude::*;

use crate::constructions::rng_from_seed;
use crate::error::{Error, Result};

/// `c (c - 1) ... (c - k + 1) / k!` for real `c`.
pub fn gen_binomial(c: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (c - i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// [`gen_binomial`] for `c >= k - 1`, zero below; the largest convex
/// function agreeing with `C(c, k)` on the integers.
pub fn convex_binomial(c: f64, k: u32) -> f64 {
    if k > 0 && c < (k - 1) as f64 {
        0.0
    } else {
        gen_binomial(c, k)
    }
}

pub fn dichotomy_value(x: &[f64], t: f64) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::Domain("dichotomy needs k >= 1 coordinates".into()));
    }
    if let Some(bad) = x.iter().find(|&&v| !(0.0..=t).contains(&v)) {
        return Err(Error::Domain(format!("coordinate {bad} outside [0, {t}]")));
    }
    Ok(dichotomy_unchecked(x, t))
}

fn dichotomy_unchecked(x: &[f64], t: f64) -> f64 {
    let k = x.len() as i32;
    let sum: f64 = x.iter().map(|&v| (t - v).powi(k)).sum();
    let prod: f64 = x.iter().product();
    sum / k as f64 + prod
}

/// The right-hand side `2 (t/2)^k`.
pub fn dichotomy_bound(k: usize, t: f64) -> f64 {
    2.0 * (t / 2.0).powi(k as i32)
}

/// `e_k(x)` by the one-pass recurrence `e_j <- e_j + x_i e_{j-1}`.
/// Zero when `k > x.len()`.
pub fn elementary_symmetric(x: &[f64], k: usize) -> f64 {
    if k > x.len() {
        return 0.0;
    }
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &xi in x {
        for j in (1..=k).rev() {
            e[j] += xi * e[j - 1];
        }
    }
    e[k]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaId {
    Dichotomy,
    DegProd,
}

impl LemmaId {
    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Dichotomy => "dichotomy",
            LemmaId::DegProd => "degprod",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub x: Vec<f64>,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub k: usize,
    /// `t` for the dichotomy, `l` (as a float) for the degree product.
    pub param: f64,
    pub tested: u64,
    pub violations: u64,
    /// Smallest scaled margin seen (the worst point, violating or not).
    pub worst: Option<Witness>,
    /// Minimisation result (dichotomy only).
    pub minimum: Option<Witness>,
    /// Largest `|e_k - (C(floor c, k) + {c} C(floor c, k-1))|` over the
    /// one-fractional extremal vectors (degree product only).
    pub extremal_gap: Option<f64>,
    pub tol: f64,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }

    pub fn to_tsv(&self) -> String {
        let fmt_x = |x: &[f64]| {
            x.iter()
                .map(|v| format!("{v:.9}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = String::from("lemma\tk\tparam\ttested\tviolations\tworst_margin\tworst_x\ttol\n");
        let (wm, wx) = match &self.worst {
            Some(w) => (format!("{:.3e}", w.margin), fmt_x(&w.x)),
            None => ("-".into(), "-".into()),
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:e}\n",
            self.lemma.name(),
            self.k,
            self.param,
            self.tested,
            self.violations,
            wm,
            wx,
            self.tol
        ));
        if let Some(m) = &self.minimum {
            out.push_str(&format!(
                "minimum\t{:.12}\tbound\t{:.12}\targmin\t{}\n",
                m.margin,
                dichotomy_bound(self.k, self.param),
                fmt_x(&m.x)
            ));
        }
        if let Some(g) = self.extremal_gap {
            out.push_str(&format!("extremal_gap\t{g:.3e}\n"));
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    tested: u64,
    violations: u64,
    worst: Option<Witness>,
}

impl Tally {
    fn record(&mut self, x: &[f64], lhs: f64, rhs: f64, tol: f64) {
        self.tested += 1;
        let scaled = (lhs - rhs) / (1.0 + rhs.abs());
        if scaled < -tol {
            self.violations += 1;
        }
        if self.worst.as_ref().is_none_or(|w| scaled < w.margin) {
            self.worst = Some(Witness {
                x: x.to_vec(),
                margin: scaled,
            });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.violations += other.violations;
        if let Some(w) = other.worst {
            if self.worst.as_ref().is_none_or(|s| w.margin < s.margin) {
                self.worst = Some(w);
            }
        }
        self
    }
}

const CHUNK: u64 = 4096;

/// Uniform samples in `[0, scale]^dim`, drawn in fixed chunks each with its
/// own derived seed so the result does not depend on thread scheduling.
fn sampled<F>(dim: usize, scale: f64, samples: u64, seed: u64, eval: F) -> Tally
where
    F: Fn(&[f64], &mut Tally) + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = rng_from_seed(seed ^ (ci.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            let mut tally = Tally::default();
            let mut x = vec![0.0; dim];
            let n = CHUNK.min(samples - ci * CHUNK);
            for _ in 0..n {
                for v in x.iter_mut() {
                    *v = rng.gen::<f64>() * scale;
                }
                eval(&x, &mut tally);
            }
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Param(format!("tolerance must be > 0, got {tol}")));
    }
    Ok(())
}

/// Samples the dichotomy inequality and minimises its left-hand side.
pub fn dichotomy_certify(k: usize, t: f64, samples: u64, seed: u64, tol: f64) -> Result<LemmaReport> {
    dichotomy_certify_against(k, t, samples, seed, tol, dichotomy_bound(k, t))
}

/// As [`dichotomy_certify`] but against an arbitrary right-hand side; used to
/// confirm the harness reports violations of a strengthened bound.
pub fn dichotomy_certify_against(
    k: usize,
    t: f64,
    samples: u64,
    seed: u64,
    tol: f64,
    rhs: f64,
) -> Result<LemmaReport> {
    if k == 0 || k > 16 {
        return Err(Error::Param(format!("k = {k} outside 1..=16")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Param(format!("t must be positive, got {t}")));
    }
    if samples == 0 {
        return Err(Error::Param("samples must be >= 1".into()));
    }
    check_tol(tol)?;

    let eval = |x: &[f64], tally: &mut Tally| tally.record(x, dichotomy_unchecked(x, t), rhs, tol);
    let mut tally = sampled(k, t, samples, seed, eval);

    // the 3^k lattice {0, t/2, t}^k
    let levels = [0.0, t / 2.0, t];
    let mut x = vec![0.0; k];
    for code in 0..3usize.pow(k as u32) {
        let mut r = code;
        for v in x.iter_mut() {
            *v = levels[r % 3];
            r /= 3;
        }
        eval(&x, &mut tally);
    }

    let minimum = minimise_dichotomy(k, t);
    eval(&minimum.x, &mut tally);

    Ok(LemmaReport {
        lemma: LemmaId::Dichotomy,
        k,
        param: t,
        tested: tally.tested,
        violations: tally.violations,
        worst: tally.worst,
        minimum: Some(minimum),
        extremal_gap: None,
        tol,
    })
}

const GRID: usize = 33;

/// Grid search over sorted tuples of a 33-point grid (the function is
/// symmetric), then cyclic coordinate descent by golden-section search.
/// Ties on the grid keep the first tuple in lexicographic order of the
/// nondecreasing index tuples. `margin` holds the minimum value.
fn minimise_dichotomy(k: usize, t: f64) -> Witness {
    let step = t / (GRID - 1) as f64;
    let mut idx = vec![0usize; k];
    let mut x = vec![0.0; k];
    let mut best_val = f64::INFINITY;
    let mut best_x = x.clone();
    loop {
        for (v, &i) in x.iter_mut().zip(&idx) {
            *v = i as f64 * step;
        }
        let val = dichotomy_unchecked(&x, t);
        if val < best_val {
            best_val = val;
            best_x.copy_from_slice(&x);
        }
        // next nondecreasing tuple
        let mut p = k;
        loop {
            if p == 0 {
                return descend(best_x, best_val, t, step);
            }
            p -= 1;
            if idx[p] < GRID - 1 {
                idx[p] += 1;
                let v = idx[p];
                for q in idx[p + 1..].iter_mut() {
                    *q = v;
                }
                break;
            }
        }
    }
}

fn descend(mut x: Vec<f64>, mut val: f64, t: f64, step: f64) -> Witness {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    for _round in 0..200 {
        let before = val;
        for i in 0..x.len() {
            let mut lo = (x[i] - step).max(0.0);
            let mut hi = (x[i] + step).min(t);
            let f = |v: f64, x: &mut [f64]| {
                let old = x[i];
                x[i] = v;
                let r = dichotomy_unchecked(x, t);
                x[i] = old;
                r
            };
            let mut a = hi - INV_PHI * (hi - lo);
            let mut b = lo + INV_PHI * (hi - lo);
            let mut fa = f(a, &mut x);
            let mut fb = f(b, &mut x);
            for _ in 0..80 {
                if fa < fb {
                    hi = b;
                    b = a;
                    fb = fa;
                    a = hi - INV_PHI * (hi - lo);
                    fa = f(a, &mut x);
                } else {
                    lo = a;
                    a = b;
                    fa = fb;
                    b = lo + INV_PHI * (hi - lo);
                    fb = f(b, &mut x);
                }
            }
            let (cand, fc) = if fa < fb { (a, fa) } else { (b, fb) };
            if fc < val {
                x[i] = cand;
                val = fc;
            }
        }
        if before - val <= 1e-15 * (1.0 + val.abs()) {
            break;
        }
    }
    Witness { x, margin: val }
}

/// Samples the degree-product inequality on `[0, 1]^l`, plus every 0/1
/// vector and every vector with one fractional coordinate.
pub fn degprod_certify(l: usize, k: usize, samples: u64, seed: u64, tol: f64) -> Result<LemmaReport> {
    if k > l {
        return Err(Error::Param(format!("k = {k} must be <= l = {l}")));
    }
    if l == 0 || l > 20 {
        return Err(Error::Param(format!("l = {l} outside 1..=20")));
    }
    if samples == 0 {
        return Err(Error::Param("samples must be >= 1".into()));
    }
    check_tol(tol)?;

    let eval = |x: &[f64], tally: &mut Tally| {
        let c: f64 = x.iter().sum();
        tally.record(x, elementary_symmetric(x, k), convex_binomial(c, k as u32), tol);
    };
    let mut tally = sampled(l, 1.0, samples, seed, eval);

    const FRACTIONS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
    let mut gap: f64 = 0.0;
    let mut x = vec![0.0; l];
    for mask in 0u32..(1 << l) {
        for (i, v) in x.iter_mut().enumerate() {
            *v = (mask >> i & 1) as f64;
        }
        eval(&x, &mut tally);
        // one fractional coordinate in place of a zero
        for i in (0..l).filter(|i| mask >> i & 1 == 0) {
            for &f in &FRACTIONS {
                x[i] = f;
                eval(&x, &mut tally);
                let ones = mask.count_ones() as u64;
                let closed = crate::combinatorics::binomial(ones, k as u64) as f64
                    + f * if k == 0 {
                        0.0
                    } else {
                        crate::combinatorics::binomial(ones, k as u64 - 1) as f64
                    };
                gap = gap.max((elementary_symmetric(&x, k) - closed).abs());
                x[i] = 0.0;
            }
        }
    }

    Ok(LemmaReport {
        lemma: LemmaId::DegProd,
        k,
        param: l as f64,
        tested: tally.tested,
        violations: tally.violations,
        worst: tally.worst,
        minimum: None,
        extremal_gap: Some(gap),
        tol,
    })
}
