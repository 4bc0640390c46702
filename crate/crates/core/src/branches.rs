//! Indexed branches of the logarithm and of n-th roots.
//!
//! Every function here cuts the domain along the negative real axis. Range
//! partitions are half-open and closed on the counter-clockwise end, the same
//! convention as the principal phase `-π < ph z <= π`:
//!
//! * `ln_k z` has imaginary part in `((2k-1)π, (2k+1)π]`;
//! * the `k`-th n-th root has phase in `((2k-1)π/n, (2k+1)π/n]`.
//!
//! Boundaries are evaluated as `f64` values (`(2k+1) * PI`, `(2k+1) * PI / n`,
//! pinned to `±PI` at the ends of the phase circle), and every value these
//! functions return is confined to its own partition cell under those same
//! boundaries.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::RangeInclusive;

use crate::{ComplexValue, Error, Result};

/// The integer label `k` of a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BranchIndex(pub i64);

impl BranchIndex {
    pub const PRINCIPAL: BranchIndex = BranchIndex(0);

    pub fn get(self) -> i64 {
        self.0
    }
}

impl From<i64> for BranchIndex {
    fn from(k: i64) -> Self {
        BranchIndex(k)
    }
}

impl fmt::Display for BranchIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which multivalued inverse is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexedFunction {
    /// `ln_k z = ln z + 2kπi`, any integer `k`.
    Log,
    /// The n-th root `z^{1/n}`, `n >= 2`, with `n` branches.
    Root(u32),
}

impl IndexedFunction {
    pub fn root(n: u32) -> Result<Self> {
        IndexedFunction::Root(n).validate()
    }

    pub fn cube_root() -> Self {
        IndexedFunction::Root(3)
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            IndexedFunction::Root(n) if n < 2 => Err(Error::InvalidOrder(n)),
            f => Ok(f),
        }
    }

    /// Admissible branch indices, `None` meaning every integer.
    ///
    /// For odd `n` the set is `-(n-1)/2 ..= (n-1)/2`; for even `n` it is
    /// `-n/2+1 ..= n/2`. Both keep `k = 0` as the principal branch.
    pub fn index_range(self) -> Option<RangeInclusive<i64>> {
        match self {
            IndexedFunction::Log => None,
            IndexedFunction::Root(n) => {
                let n = i64::from(n);
                let lo = if n % 2 == 1 { -(n - 1) / 2 } else { -n / 2 + 1 };
                Some(lo..=lo + n - 1)
            }
        }
    }

    pub fn is_admissible(self, k: BranchIndex) -> bool {
        self.index_range().is_none_or(|r| r.contains(&k.0))
    }

    pub fn check_index(self, k: BranchIndex) -> Result<()> {
        self.validate()?;
        if self.is_admissible(k) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { k, function: self })
        }
    }

    /// The branch whose lower cut edge continues the upper cut edge of `k`.
    ///
    /// Walking counter-clockwise across the negative real axis, a range value
    /// leaves branch `k` through its upper boundary and enters `k + 1`
    /// (cyclically for roots).
    pub fn continuation(self, k: BranchIndex) -> BranchIndex {
        match self.index_range() {
            None => BranchIndex(k.0 + 1),
            Some(r) if k.0 + 1 > *r.end() => BranchIndex(*r.start()),
            Some(_) => BranchIndex(k.0 + 1),
        }
    }

    /// Half-open interval `(lower, upper]` that branch `k` occupies in the
    /// range: imaginary part for `Log`, phase for `Root`.
    ///
    /// For the wrap-around branch of an even root the interval extends past
    /// `π`; values are reported with their principal phase.
    pub fn branch_interval(self, k: BranchIndex) -> (f64, f64) {
        match self {
            IndexedFunction::Log => (log_upper(k.0 - 1), log_upper(k.0)),
            IndexedFunction::Root(n) => (root_upper(k.0 - 1, n), root_upper(k.0, n)),
        }
    }
}

impl fmt::Display for IndexedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexedFunction::Log => f.write_str("log"),
            IndexedFunction::Root(n) => write!(f, "root:{n}"),
        }
    }
}

/// A principal phase in `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Phase(f64);

impl Phase {
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<Phase> for f64 {
    fn from(p: Phase) -> f64 {
        p.0
    }
}

pub(crate) fn check_point(z: ComplexValue) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite { re: z.re, im: z.im });
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::BranchPoint);
    }
    Ok(())
}

/// `(2j+1)π`, the upper edge of log branch `j`.
fn log_upper(j: i64) -> f64 {
    (2 * j + 1) as f64 * PI
}

/// `(2j+1)π/n`, the upper edge of root sector `j`, pinned to `±PI` where the
/// sector edge is the cut itself.
fn root_upper(j: i64, n: u32) -> f64 {
    let m = 2 * j + 1;
    let n = i64::from(n);
    if m == n {
        PI
    } else if m == -n {
        -PI
    } else {
        m as f64 * PI / n as f64
    }
}

/// Clamp `x` into `(lower, upper]`. Only ever moves `x` by rounding noise.
fn confine(x: f64, lower: f64, upper: f64) -> f64 {
    if x > upper {
        upper
    } else if x <= lower {
        lower.next_up()
    } else {
        x
    }
}

/// Unique `j` with `upper(j-1) < x <= upper(j)`, starting from a closed-form
/// estimate that is off by at most one near boundaries.
fn locate(x: f64, guess: f64, upper: impl Fn(i64) -> f64) -> Option<i64> {
    // Beyond 2^52 consecutive integers stop being representable as f64.
    if !guess.is_finite() || guess.abs() > (1u64 << 52) as f64 {
        return None;
    }
    let mut j = guess as i64;
    while x > upper(j) {
        j += 1;
    }
    while x <= upper(j - 1) {
        j -= 1;
    }
    Some(j)
}

/// Principal phase `ph z` in `(-π, π]`.
///
/// A negative-zero imaginary part is treated as `+0`, so every negative real
/// input lands on the `θ = π` edge of the cut.
pub fn principal_phase(z: ComplexValue) -> Result<Phase> {
    check_point(z)?;
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let theta = im.atan2(z.re);
    // atan2 rounds points just below the cut onto -PI.
    Ok(Phase(if theta <= -PI { (-PI).next_up() } else { theta }))
}

/// `ln_k z = ln|z| + i ph z + 2kπi`.
pub fn log_branch(z: ComplexValue, k: BranchIndex) -> Result<ComplexValue> {
    let theta = principal_phase(z)?.radians();
    let im = confine(theta + k.0 as f64 * TAU, log_upper(k.0 - 1), log_upper(k.0));
    Ok(ComplexValue::new(z.norm().ln(), im))
}

/// Principal phase of the `k`-th n-th root of `z`, computed in the range:
/// `(ph z + 2πk) / n`, wrapped into `(-π, π]`.
pub fn root_branch_phase(z: ComplexValue, n: u32, k: BranchIndex) -> Result<Phase> {
    let f = IndexedFunction::root(n)?;
    f.check_index(k)?;
    let theta = principal_phase(z)?.radians();
    let raw = (theta + k.0 as f64 * TAU) / f64::from(n);
    // Only the wrap-around branch of an even root crosses π.
    let (phase, sector) = if raw > PI {
        (raw - TAU, k.0 - i64::from(n))
    } else {
        (raw, k.0)
    };
    let lower = root_upper(sector - 1, n).max(-PI);
    let upper = root_upper(sector, n).min(PI);
    Ok(Phase(confine(phase, lower, upper)))
}

/// The `k`-th n-th root, `|z|^{1/n} e^{i(θ + 2πk)/n}` with `θ = ph z`.
///
/// For `n = 3` this is `r^{1/3} e^{iθ/3}` times `1`, `ω` or `ω̄` for
/// `k = 0, 1, -1`, where `ω = e^{2πi/3}`.
pub fn root_branch(z: ComplexValue, n: u32, k: BranchIndex) -> Result<ComplexValue> {
    let phase = root_branch_phase(z, n, k)?.radians();
    let r = z.norm();
    let modulus = match n {
        2 => r.sqrt(),
        3 => r.cbrt(),
        _ => r.powf(1.0 / f64::from(n)),
    };
    Ok(ComplexValue::from_polar(modulus, phase))
}

/// Branch index of the range cell containing `w`.
pub fn branch_of(w: ComplexValue, f: IndexedFunction) -> Result<BranchIndex> {
    f.validate()?;
    check_point(w)?;
    let k = match f {
        IndexedFunction::Log => {
            let guess = ((w.im / PI - 1.0) / 2.0).ceil();
            locate(w.im, guess, log_upper)
        }
        IndexedFunction::Root(n) => {
            let ph = principal_phase(w)?.radians();
            let guess = ((ph / PI * f64::from(n) - 1.0) / 2.0).ceil();
            locate(ph, guess, |j| root_upper(j, n)).map(|j| {
                let range = f.index_range().expect("roots have a finite index set");
                if j < *range.start() {
                    j + i64::from(n)
                } else {
                    j
                }
            })
        }
    };
    k.map(BranchIndex).ok_or(Error::IndexOutOfRange {
        k: BranchIndex(i64::MAX),
        function: f,
    })
}

/// Whether `y` lies in the range of branch `k` of `f`, i.e. whether `f_k(x) = y`
/// is solvable.
///
/// For the logarithm a real target is reachable only from `k = 0`. A zero or
/// non-finite target is never in the range of a root branch.
pub fn in_branch_range(y: ComplexValue, f: IndexedFunction, k: BranchIndex) -> bool {
    if f.validate().is_err() || !f.is_admissible(k) {
        return false;
    }
    match f {
        IndexedFunction::Log => {
            if !y.re.is_finite() || !y.im.is_finite() {
                return false;
            }
            let (lower, upper) = f.branch_interval(k);
            lower < y.im && y.im <= upper
        }
        IndexedFunction::Root(_) => branch_of(y, f).is_ok_and(|j| j == k),
    }
}
