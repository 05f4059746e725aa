use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use super::coefficients::{w_minus, w_plus};
use crate::error::{regime, usage, Error, Result};
use crate::faults::{perturb, Fault};
use crate::geometry::ModelParams;

/// Operators with a matrix representation in the energy basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorLabel {
    A,
    ADag,
    N,
    APlus,
    AMinus,
    WPlus,
    WMinus,
    KPlus,
    KMinus,
    K3,
    E2,
    /// `2k A₊A₋` for `ε > 0`; the normalized `A₊A₋` at `ε = 0`.
    KG,
}

impl OperatorLabel {
    pub const ALL: [OperatorLabel; 12] = [
        OperatorLabel::A,
        OperatorLabel::ADag,
        OperatorLabel::N,
        OperatorLabel::APlus,
        OperatorLabel::AMinus,
        OperatorLabel::WPlus,
        OperatorLabel::WMinus,
        OperatorLabel::KPlus,
        OperatorLabel::KMinus,
        OperatorLabel::K3,
        OperatorLabel::E2,
        OperatorLabel::KG,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorLabel::A => "a",
            OperatorLabel::ADag => "a_dag",
            OperatorLabel::N => "N",
            OperatorLabel::APlus => "A_plus",
            OperatorLabel::AMinus => "A_minus",
            OperatorLabel::WPlus => "w_plus",
            OperatorLabel::WMinus => "w_minus",
            OperatorLabel::KPlus => "K_plus",
            OperatorLabel::KMinus => "K_minus",
            OperatorLabel::K3 => "K3",
            OperatorLabel::E2 => "E2",
            OperatorLabel::KG => "KG",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|l| l.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| usage(format!("unknown operator label `{s}`; valid labels: {}", Self::valid_names())))
    }
}

/// Truncated matrix of an operator in the energy basis `U_0 ..= U_{dim-1}`.
///
/// Entry `(i, j)` is `(U_i, O U_j)`, so raising operators sit on the first
/// subdiagonal. `band = (lower, upper)` counts the occupied sub- and
/// superdiagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub label: String,
    pub dim: usize,
    pub entries: DMatrix<f64>,
    pub band: (usize, usize),
}

impl OperatorMatrix {
    pub fn new(label: impl Into<String>, entries: DMatrix<f64>) -> Self {
        let band = band_of(&entries);
        OperatorMatrix { label: label.into(), dim: entries.nrows(), entries, band }
    }

    pub fn diagonal(label: impl Into<String>, diag: impl Iterator<Item = f64>) -> Self {
        let d: Vec<f64> = diag.collect();
        Self::new(label, DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)))
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    pub fn product(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        check_dims(self, rhs)?;
        Ok(OperatorMatrix::new(format!("{}*{}", self.label, rhs.label), &self.entries * &rhs.entries))
    }

    pub fn scaled(&self, factor: f64) -> OperatorMatrix {
        OperatorMatrix::new(format!("{factor}*{}", self.label), &self.entries * factor)
    }

    pub fn transpose(&self) -> OperatorMatrix {
        OperatorMatrix::new(format!("{}^T", self.label), self.entries.transpose())
    }

    /// Largest `|self - other|` over rows and columns `0..=upto`.
    pub fn max_abs_diff_within(&self, other: &DMatrix<f64>, upto: usize) -> f64 {
        let m = (upto + 1).min(self.dim);
        let mut worst: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                worst = worst.max((self.entries[(i, j)] - other[(i, j)]).abs());
            }
        }
        worst
    }
}

fn band_of(m: &DMatrix<f64>) -> (usize, usize) {
    let (mut lower, mut upper) = (0, 0);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)] != 0.0 {
                if i > j {
                    lower = lower.max(i - j);
                } else {
                    upper = upper.max(j - i);
                }
            }
        }
    }
    (lower, upper)
}

fn check_dims(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(usage(format!("dimension mismatch: {} is {}, {} is {}", a.label, a.dim, b.label, b.dim)));
    }
    Ok(())
}

/// `AB - BA`. Only the block away from the truncation edge is meaningful.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_dims(a, b)?;
    Ok(OperatorMatrix::new(
        format!("[{},{}]", a.label, b.label),
        &a.entries * &b.entries - &b.entries * &a.entries,
    ))
}

fn subdiagonal(label: &str, dim: usize, f: impl Fn(usize) -> f64) -> OperatorMatrix {
    let mut m = DMatrix::zeros(dim, dim);
    for n in 0..dim.saturating_sub(1) {
        m[(n + 1, n)] = f(n);
    }
    OperatorMatrix::new(label, m)
}

fn superdiagonal(label: &str, dim: usize, f: impl Fn(usize) -> f64) -> OperatorMatrix {
    let mut m = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        m[(n - 1, n)] = f(n);
    }
    OperatorMatrix::new(label, m)
}

/// Matrix of `which` on `U_0 ..= U_{n_max}`.
pub fn build_matrix(p: &ModelParams, which: OperatorLabel, n_max: usize) -> Result<OperatorMatrix> {
    use OperatorLabel::*;
    let dim = n_max + 1;
    let name = which.name();
    let range = || (0..dim).map(|n| n as f64);
    let m = match (which, p.k) {
        (A, _) => superdiagonal(name, dim, |n| (n as f64).sqrt()),
        (ADag, _) => subdiagonal(name, dim, |n| (n as f64 + 1.0).sqrt()),
        (N, _) => OperatorMatrix::diagonal(name, range()),
        (WPlus | WMinus, None) => OperatorMatrix::diagonal(name, range().map(|_| 1.0)),
        (APlus, None) => build_matrix(p, ADag, n_max)?,
        (AMinus, None) => build_matrix(p, A, n_max)?,
        (E2, None) => {
            let (m, w) = (p.mass, p.omega);
            OperatorMatrix::diagonal(name, range().map(|n| perturb(Fault::EnergySquareMatrix, m * m + 2.0 * m * w * (n + 0.5))))
        }
        (KG, None) => build_matrix(p, APlus, n_max)?.product(&build_matrix(p, AMinus, n_max)?)?,
        (KPlus | KMinus | K3, None) => {
            return Err(regime(format!("{name} is undefined at epsilon = 0 (k diverges)")))
        }
        (WPlus, Some(_)) => {
            OperatorMatrix::diagonal(name, (0..dim).map(|n| w_plus(p, n)).collect::<Result<Vec<_>>>()?.into_iter())
        }
        (WMinus, Some(_)) => {
            OperatorMatrix::diagonal(name, (0..dim).map(|n| w_minus(p, n)).collect::<Result<Vec<_>>>()?.into_iter())
        }
        (APlus, Some(_)) => build_matrix(p, ADag, n_max)?.product(&build_matrix(p, WPlus, n_max)?)?,
        (AMinus, Some(_)) => build_matrix(p, WMinus, n_max)?.product(&build_matrix(p, A, n_max)?)?,
        (KPlus, Some(k)) => subdiagonal(name, dim, |n| {
            let nf = n as f64;
            perturb(Fault::UnitaryGenerators, ((nf + 1.0) * (nf + 2.0 * k)).sqrt())
        }),
        (KMinus, Some(k)) => superdiagonal(name, dim, |n| {
            let nf = n as f64;
            perturb(Fault::UnitaryGenerators, (nf * (nf - 1.0 + 2.0 * k)).sqrt())
        }),
        (K3, Some(k)) => OperatorMatrix::diagonal(name, range().map(|n| n + k)),
        (E2, Some(k)) => {
            let (w2, e2) = (p.omega_hat * p.omega_hat, p.epsilon * p.epsilon);
            OperatorMatrix::diagonal(
                name,
                range().map(|n| perturb(Fault::EnergySquareMatrix, w2 * ((n + k) * (n + k) + (e2 - 1.0) * k * (k - 1.0)))),
            )
        }
        (KG, Some(k)) => build_matrix(p, APlus, n_max)?
            .product(&build_matrix(p, AMinus, n_max)?)?
            .scaled(2.0 * k),
    };
    Ok(OperatorMatrix { label: name.to_string(), ..m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::shift_coefficients;

    fn cfg(e: f64) -> ModelParams {
        ModelParams::new(1.0, 1.0, e).unwrap()
    }

    #[test]
    fn labels_round_trip() {
        for l in OperatorLabel::ALL {
            assert_eq!(l.name().parse::<OperatorLabel>().unwrap(), l);
        }
        let err = "B".parse::<OperatorLabel>().unwrap_err().to_string();
        assert!(err.contains("A_plus") && err.contains("KG"));
    }

    #[test]
    fn band_metadata() {
        let a = cfg(1.0);
        let bands = |l| build_matrix(&a, l, 8).unwrap().band;
        assert_eq!(bands(OperatorLabel::ADag), (1, 0));
        assert_eq!(bands(OperatorLabel::APlus), (1, 0));
        assert_eq!(bands(OperatorLabel::KPlus), (1, 0));
        assert_eq!(bands(OperatorLabel::A), (0, 1));
        assert_eq!(bands(OperatorLabel::AMinus), (0, 1));
        assert_eq!(bands(OperatorLabel::KMinus), (0, 1));
        assert_eq!(bands(OperatorLabel::E2), (0, 0));
        assert_eq!(bands(OperatorLabel::KG), (0, 0));
    }

    #[test]
    fn examples() {
        let a = cfg(1.0);
        let k = a.k.unwrap();
        let ap = build_matrix(&a, OperatorLabel::APlus, 8).unwrap();
        assert!((ap.get(1, 0) - shift_coefficients(&a, 0).unwrap().0).abs() < 1e-15);
        let e2 = build_matrix(&a, OperatorLabel::E2, 8).unwrap();
        assert!((e2.get(0, 0) - k * k).abs() < 1e-14);
        assert!((e2.get(0, 0) - 2.618034).abs() < 1e-6);
        let kp = build_matrix(&a, OperatorLabel::KPlus, 8).unwrap();
        assert!((kp.get(1, 0) - (2.0 * k).sqrt()).abs() < 1e-15);
        assert!((kp.get(1, 0) - 1.798907).abs() < 1e-6);
        let n = build_matrix(&a, OperatorLabel::N, 4).unwrap();
        assert_eq!(n.entries.diagonal().as_slice(), &[0.0, 1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn commutator_examples() {
        let a = cfg(0.5);
        let n = build_matrix(&a, OperatorLabel::N, 10).unwrap();
        assert_eq!(commutator(&n, &n).unwrap().entries.max(), 0.0);
        let lower = build_matrix(&a, OperatorLabel::A, 10).unwrap();
        let raise = build_matrix(&a, OperatorLabel::ADag, 10).unwrap();
        let c = commutator(&lower, &raise).unwrap();
        assert!(c.max_abs_diff_within(&DMatrix::identity(11, 11), 8) < 1e-14);
        let k = a.k.unwrap();
        let am = build_matrix(&a, OperatorLabel::AMinus, 10).unwrap();
        let ap = build_matrix(&a, OperatorLabel::APlus, 10).unwrap();
        let c = commutator(&am, &ap).unwrap();
        let want = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(11, |n, _| 1.0 + n as f64 / k));
        assert!(c.max_abs_diff_within(&want, 8) < 1e-13);
        let small = build_matrix(&a, OperatorLabel::N, 3).unwrap();
        assert!(commutator(&small, &n).is_err());
    }

    #[test]
    fn limit_regime_matrices() {
        let c = cfg(0.0);
        assert_eq!(build_matrix(&c, OperatorLabel::APlus, 6).unwrap().entries, build_matrix(&c, OperatorLabel::ADag, 6).unwrap().entries);
        assert_eq!(build_matrix(&c, OperatorLabel::AMinus, 6).unwrap().entries, build_matrix(&c, OperatorLabel::A, 6).unwrap().entries);
        assert!(matches!(build_matrix(&c, OperatorLabel::K3, 6), Err(Error::Regime(_))));
        let kg = build_matrix(&c, OperatorLabel::KG, 6).unwrap();
        let n = build_matrix(&c, OperatorLabel::N, 6).unwrap();
        assert!(kg.max_abs_diff_within(&n.entries, 6) < 1e-14);
    }
}
