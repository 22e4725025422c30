//! J- and K-fractions, and the height-indexed weight schemes of the
//! permutation families.
//!
//! A scheme gives, for each height `h`, the weight `d_h` of a closing square
//! (a `D` step) and the split weights of the three kinds of `L` step: upper
//! bounce (`ℓ^a_h`), lower bounce (`ℓ^b_h`) and fixed point (`ℓ^c_h`).

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::path::Letter;
use crate::perm::SubsetId;
use crate::poly::{Marks, MultiPoly, Var};
use crate::series::{Ring, Series};

type WeightFn = Arc<dyn Fn(usize) -> MultiPoly + Send + Sync>;

pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone)]
pub struct WeightScheme {
    name: String,
    elevated: bool,
    close: WeightFn,
    upper: WeightFn,
    lower: WeightFn,
    fixed: WeightFn,
}

impl fmt::Debug for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightScheme")
            .field("name", &self.name)
            .field("elevated", &self.elevated)
            .finish_non_exhaustive()
    }
}

impl WeightScheme {
    pub fn new(
        name: impl Into<String>,
        elevated: bool,
        close: impl Fn(usize) -> MultiPoly + Send + Sync + 'static,
        upper: impl Fn(usize) -> MultiPoly + Send + Sync + 'static,
        lower: impl Fn(usize) -> MultiPoly + Send + Sync + 'static,
        fixed: impl Fn(usize) -> MultiPoly + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            elevated,
            close: Arc::new(close),
            upper: Arc::new(upper),
            lower: Arc::new(lower),
            fixed: Arc::new(fixed),
        }
    }

    /// Constant integer weights `d_h`, `ℓ_h`, all carried by fixed points.
    pub fn uncolored(
        name: impl Into<String>,
        elevated: bool,
        close: impl Fn(usize) -> i64 + Send + Sync + 'static,
        level: impl Fn(usize) -> i64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(
            name,
            elevated,
            move |h| MultiPoly::constant(close(h)),
            |_| MultiPoly::zero(),
            |_| MultiPoly::zero(),
            move |h| MultiPoly::constant(level(h)),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_elevated(&self) -> bool {
        self.elevated
    }

    /// `d_h`, for `h ≥ 1`.
    pub fn close(&self, h: usize) -> MultiPoly {
        (self.close)(h)
    }

    pub fn upper(&self, h: usize) -> MultiPoly {
        if h == 0 {
            MultiPoly::zero()
        } else {
            (self.upper)(h)
        }
    }

    pub fn lower(&self, h: usize) -> MultiPoly {
        if h == 0 {
            MultiPoly::zero()
        } else {
            (self.lower)(h)
        }
    }

    pub fn fixed(&self, h: usize) -> MultiPoly {
        (self.fixed)(h)
    }

    /// `ℓ_h = ℓ^a_h + ℓ^b_h + ℓ^c_h`.
    pub fn level(&self, h: usize) -> MultiPoly {
        self.upper(h) + self.lower(h) + self.fixed(h)
    }

    /// Replaces `d_h` by `f(h, d_h)`.
    pub fn map_close(self, f: impl Fn(usize, MultiPoly) -> MultiPoly + Send + Sync + 'static) -> Self {
        let close = self.close.clone();
        Self {
            close: Arc::new(move |h| f(h, close(h))),
            ..self
        }
    }

    /// Sets every unmarked variable to 1 in all weights.
    pub fn restrict(self, marks: Marks) -> Self {
        let wrap = |g: WeightFn| -> WeightFn { Arc::new(move |h| g(h).restrict(marks)) };
        Self {
            close: wrap(self.close),
            upper: wrap(self.upper),
            lower: wrap(self.lower),
            fixed: wrap(self.fixed),
            ..self
        }
    }

    /// Number of colors a step receives when every variable is 1.
    pub fn color_count(&self, letter: Letter, height: usize) -> usize {
        let w = match letter {
            Letter::U => return 1,
            Letter::D => self.close(height),
            Letter::L => self.level(height),
        };
        w.at_ones().to_usize().expect("weights are small nonnegative integers")
    }

    /// Evaluates the J- or K-fraction according to the scheme's kind.
    pub fn series(&self, order: usize) -> Series<MultiPoly> {
        let depth = default_depth(order);
        if self.elevated {
            kfraction_with(|h| self.level(h), |h| self.close(h), order, depth)
        } else {
            jfraction_with(|h| self.level(h), |h| self.close(h), order, depth)
        }
    }
}

/// `⌈N/2⌉` levels suffice: a path of length `N` stays at height `≤ ⌊N/2⌋`.
pub fn default_depth(order: usize) -> usize {
    order.div_ceil(2)
}

/// `1 / (1 - ℓ_0 z - d_1 z² / (1 - ℓ_1 z - ...))` modulo `z^{order+1}`,
/// evaluated bottom-up from a zero tail below level `depth`. Level `h` is
/// only needed to order `order - 2h`.
pub fn jfraction_with<R: Ring>(
    ell: impl Fn(usize) -> R,
    dee: impl Fn(usize) -> R,
    order: usize,
    depth: usize,
) -> Series<R> {
    let level_order = |h: usize| order.saturating_sub(2 * h);
    let mut tail: Option<Series<R>> = None;
    for h in (0..=depth).rev() {
        let n = level_order(h);
        let mut den = Series::one(n).sub(&Series::monomial(ell(h), 1, n)).unwrap();
        if let Some(t) = tail.take() {
            let d = dee(h + 1);
            if !d.is_zero() {
                let below = Series::new(t.into_coeffs(), n).shift_up(2).scale(&d);
                den = den.sub(&below).unwrap();
            }
        }
        tail = Some(den.reciprocal().expect("constant term is 1"));
    }
    tail.expect("at least one level")
}

/// `ℓ_0 z + d_1 z² / (1 - ℓ_1 z - d_2 z² / ...)` modulo `z^{order+1}`.
pub fn kfraction_with<R: Ring>(
    ell: impl Fn(usize) -> R,
    dee: impl Fn(usize) -> R,
    order: usize,
    depth: usize,
) -> Series<R> {
    let mut out = Series::monomial(ell(0), 1, order);
    if order >= 2 {
        let inner = jfraction_with(|h| ell(h + 1), |h| dee(h + 1), order - 2, depth);
        let tail = Series::new(inner.into_coeffs(), order).shift_up(2).scale(&dee(1));
        out = out.add(&tail).unwrap();
    }
    out
}

pub fn jfraction(scheme: &WeightScheme, order: usize) -> Result<Series<MultiPoly>> {
    if scheme.elevated {
        return Err(Error::Precondition(format!(
            "{} is elevated; use the K-fraction",
            scheme.name
        )));
    }
    Ok(scheme.series(order))
}

pub fn kfraction(scheme: &WeightScheme, order: usize) -> Result<Series<MultiPoly>> {
    if !scheme.elevated {
        return Err(Error::Precondition(format!(
            "{} is not elevated; use the J-fraction",
            scheme.name
        )));
    }
    Ok(scheme.series(order))
}

/// Mark sets each family's weights are known for. Any subset of one of them
/// is accepted, with the remaining variables set to 1.
pub fn supported_marks(subset: SubsetId) -> &'static [Marks] {
    use SubsetId::*;
    match subset {
        All => &[Marks::XVWT, Marks::XVWQ],
        Avoid321 | IncreasingExcAndDef => &[Marks::XVWQ],
        Noncrossing => &[Marks::XVW],
        UnimodalNoncrossingNoNestedFp | UnimodalNoncrossing | Involutions | Involutions321 => &[Marks::FULL],
        Cyclic
        | IncreasingExc
        | IncreasingWeakExc
        | CyclicIncreasingExc
        | UnimodalCycles
        | UnimodalCyclesIncreasingExc
        | NoDoubleExcOrDef => &[Marks::XVWT],
    }
}

pub fn scheme_for(subset: SubsetId, marks: Marks) -> Result<WeightScheme> {
    let base = supported_marks(subset)
        .iter()
        .copied()
        .find(|b| marks.is_subset(*b))
        .ok_or_else(|| Error::UnsupportedScheme {
            subset: subset.to_string(),
            marks: marks.to_string(),
        })?;
    let mut s = base_scheme(subset, base == Marks::XVWQ).restrict(marks);
    s.name = format!("{subset}[{marks}]");
    Ok(s)
}

fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}

fn v() -> MultiPoly {
    MultiPoly::var(Var::V)
}

fn vw() -> MultiPoly {
    v() * MultiPoly::var(Var::W)
}

fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

fn k(n: usize) -> MultiPoly {
    MultiPoly::constant(n as i64)
}

fn qp(e: usize) -> MultiPoly {
    MultiPoly::q_power(e as u32)
}

/// `[h]_{q^step}`.
fn qint(h: usize, step: u32) -> MultiPoly {
    MultiPoly::q_integer(h, step, 0)
}

fn ground(h: usize, p: MultiPoly) -> MultiPoly {
    if h == 0 {
        p
    } else {
        MultiPoly::zero()
    }
}

fn base_scheme(subset: SubsetId, with_q: bool) -> WeightScheme {
    use SubsetId::*;
    let name = subset.name();
    let zero = |_: usize| MultiPoly::zero();
    match (subset, with_q) {
        (All, false) => WeightScheme::new(
            name,
            false,
            |h| v() * k(h) * (k(h) - k(1) + t()),
            |h| k(h) * vw(),
            k,
            |_| x() * t(),
        ),
        (All, true) => WeightScheme::new(
            name,
            false,
            |h| v() * qp(2 * h - 1) * qint(h, 1).pow(2),
            |h| vw() * qp(h) * qint(h, 1),
            |h| qp(h) * qint(h, 1),
            |h| x() * qp(2 * h),
        ),
        (Cyclic, _) => WeightScheme::new(
            name,
            true,
            |h| if h == 1 { v() * t() } else { k(h * (h - 1)) * v() },
            |h| k(h) * vw(),
            k,
            |h| ground(h, x() * t()),
        ),
        (Avoid321, _) => WeightScheme::new(
            name,
            false,
            |h| v() * qp(2 * h - 1),
            |h| vw() * qp(h),
            qp,
            |h| ground(h, x()),
        ),
        (UnimodalNoncrossingNoNestedFp, _) => WeightScheme::new(
            name,
            false,
            |h| v() * t() * qp(4 * h - 3),
            |h| vw() * qp(2 * h - 1),
            |h| qp(2 * h - 1),
            |h| ground(h, x() * t()),
        ),
        (Noncrossing, _) => WeightScheme::new(name, false, |_| v(), zero, |_| k(1), |_| x()),
        (IncreasingExc, _) => WeightScheme::new(name, false, |h| v() * (k(h) - k(1) + t()), |_| vw(), k, |_| x() * t()),
        (IncreasingWeakExc, _) => WeightScheme::new(
            name,
            false,
            |h| v() * (k(h) - k(1) + t()),
            |_| vw(),
            k,
            |h| ground(h, x() * t()),
        ),
        (CyclicIncreasingExc, _) => WeightScheme::new(
            name,
            true,
            |h| if h == 1 { v() * t() } else { k(h - 1) * v() },
            |_| vw(),
            k,
            |h| ground(h, x() * t()),
        ),
        (UnimodalCycles, _) => WeightScheme::new(name, false, |h| k(h) * v() * t(), |h| k(h) * vw(), k, |_| x() * t()),
        (UnimodalCyclesIncreasingExc, _) => WeightScheme::new(name, false, |_| v() * t(), |_| vw(), k, |_| x() * t()),
        (IncreasingExcAndDef, _) => WeightScheme::new(
            name,
            false,
            |h| v() * qp(2 * h - 1),
            |h| vw() * qp(h),
            qp,
            |h| x() * qp(2 * h),
        ),
        (UnimodalNoncrossing, _) => WeightScheme::new(
            name,
            false,
            |h| v() * t() * qp(4 * h - 3),
            |h| vw() * qp(2 * h - 1),
            |h| qp(2 * h - 1),
            |h| x() * t() * qp(2 * h),
        ),
        (NoDoubleExcOrDef, _) => WeightScheme::new(
            name,
            false,
            |h| v() * k(h) * (k(h) - k(1) + t()),
            zero,
            zero,
            |_| x() * t(),
        ),
        (Involutions, _) => WeightScheme::new(
            name,
            false,
            |h| v() * t() * qp(2 * h - 1) * qint(h, 2),
            zero,
            zero,
            |h| x() * t() * qp(2 * h),
        ),
        (Involutions321, _) => WeightScheme::new(
            name,
            false,
            |h| v() * t() * qp(2 * h - 1),
            zero,
            zero,
            |h| ground(h, x() * t()),
        ),
    }
}
