//! Limit laws of the extreme moduli for the standard example entry laws,
//! their singularity constants and condition-number distributions.
//!
//! Continuous families are evaluated by iterated one-dimensional quadrature;
//! the Rademacher families by enumerating sign patterns through
//! [`crate::closedform`].

mod laws;
mod normal;
mod product_normal;
mod theorem;

use std::cell::{Cell, RefCell};

pub use laws::{
    kappa_cdf, kappa_cdf_marginal_product, kappa_cdf_with, rademacher_nonsym_conditional_atoms,
    singularity_constant, vmax_cdf, vmax_cdf_with, wmin_cdf, wmin_cdf_with, wmin_conditional_density,
    wmin_conditional_density_with, JointAtom, SingularityConstant, SingularityMethod,
};
pub use normal::{std_normal_cdf, std_normal_pdf};
pub use product_normal::{
    integrate_against_product_density, positive_product_cdf, product_normal_density, product_normal_density_estimate,
    product_normal_positive_mass, DEFAULT_DENSITY_TOL,
};
pub use theorem::{theorem_indicator, theorem_joint_cdf, theorem_joint_cdf_with_threads};

use crate::domain::{Assignment, EntryDistribution, EntryLaw};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureResult;

/// Example families with closed-form or quadrature limit laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitLaw {
    RademacherSym,
    CauchySym,
    GaussianSym,
    RademacherNonsym,
    GaussianNonsym,
}

impl LimitLaw {
    pub const ALL: [LimitLaw; 5] = [
        LimitLaw::RademacherSym,
        LimitLaw::CauchySym,
        LimitLaw::GaussianSym,
        LimitLaw::RademacherNonsym,
        LimitLaw::GaussianNonsym,
    ];

    /// The example family matching an entry distribution, if there is one.
    pub fn for_distribution(dist: &EntryDistribution) -> Option<Self> {
        match (dist.law, dist.assignment) {
            (EntryLaw::Rademacher, Assignment::SymmetricIid) => Some(LimitLaw::RademacherSym),
            (EntryLaw::StandardCauchy, Assignment::SymmetricIid) => Some(LimitLaw::CauchySym),
            (EntryLaw::StandardNormal, Assignment::SymmetricIid) => Some(LimitLaw::GaussianSym),
            (EntryLaw::Rademacher, Assignment::NonsymmetricIid) => Some(LimitLaw::RademacherNonsym),
            (EntryLaw::StandardNormal, Assignment::NonsymmetricIid) => Some(LimitLaw::GaussianNonsym),
            _ => None,
        }
    }

    pub fn distribution(self) -> EntryDistribution {
        match self {
            LimitLaw::RademacherSym => EntryDistribution::symmetric(EntryLaw::Rademacher),
            LimitLaw::CauchySym => EntryDistribution::symmetric(EntryLaw::StandardCauchy),
            LimitLaw::GaussianSym => EntryDistribution::symmetric(EntryLaw::StandardNormal),
            LimitLaw::RademacherNonsym => EntryDistribution::nonsymmetric(EntryLaw::Rademacher),
            LimitLaw::GaussianNonsym => EntryDistribution::nonsymmetric(EntryLaw::StandardNormal),
        }
    }

    pub fn is_discrete(self) -> bool {
        matches!(self, LimitLaw::RademacherSym | LimitLaw::RademacherNonsym)
    }

    pub fn name(self) -> &'static str {
        match self {
            LimitLaw::RademacherSym => "rademacher-sym",
            LimitLaw::CauchySym => "cauchy-sym",
            LimitLaw::GaussianSym => "gaussian-sym",
            LimitLaw::RademacherNonsym => "rademacher-nonsym",
            LimitLaw::GaussianNonsym => "gaussian-nonsym",
        }
    }
}

impl std::fmt::Display for LimitLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LimitLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LimitLaw::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown law '{s}'")))
    }
}

/// A computed value and a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, abs_error: 0.0 }
    }

    fn scaled(self, c: f64) -> Self {
        Self {
            value: c * self.value,
            abs_error: c.abs() * self.abs_error,
        }
    }

    /// Clamps a probability into `[0, 1]`.
    fn probability(self) -> Self {
        Self {
            value: self.value.clamp(0.0, 1.0),
            abs_error: self.abs_error,
        }
    }
}

/// Collects diagnostics of quadratures evaluated inside an outer integrand.
#[derive(Default)]
pub(crate) struct InnerLog {
    max_error: Cell<f64>,
    unconverged: Cell<bool>,
    error: RefCell<Option<Error>>,
}

impl InnerLog {
    pub(crate) fn take(&self, r: Result<QuadratureResult<f64>>) -> f64 {
        match r {
            Ok(q) => {
                if !q.converged {
                    self.unconverged.set(true);
                }
                self.max_error.set(self.max_error.get().max(q.abs_error_estimate));
                q.value
            }
            Err(e) => {
                self.error.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    pub(crate) fn take_estimate(&self, r: Result<Estimate>) -> f64 {
        self.take(r.map(|e| QuadratureResult {
            value: e.value,
            abs_error_estimate: e.abs_error,
            evaluations: 0,
            converged: true,
        }))
    }

    /// Combines the outer result with the worst inner error, weighted by the
    /// outer measure `weight`.
    pub(crate) fn finish(self, outer: QuadratureResult<f64>, weight: f64, context: &str) -> Result<Estimate> {
        if let Some(e) = self.error.into_inner() {
            return Err(e);
        }
        let outer = if self.unconverged.get() {
            QuadratureResult { converged: false, ..outer }
        } else {
            outer
        };
        let outer = outer.require_converged(context)?;
        Ok(Estimate {
            value: outer.value,
            abs_error: outer.abs_error_estimate + weight * self.max_error.get(),
        })
    }
}

/// Overall accuracy target split across nesting levels: the outermost
/// integral gets `target/10`, each deeper level another factor of ten.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub target: f64,
}

impl Accuracy {
    pub const CDF: Accuracy = Accuracy { target: 1e-6 };
    pub const KAPPA: Accuracy = Accuracy { target: 1e-3 };
    pub const CONSTANT: Accuracy = Accuracy { target: 1e-8 };

    pub fn new(target: f64) -> Result<Self> {
        if target > 0.0 && target.is_finite() {
            Ok(Self { target })
        } else {
            Err(Error::InvalidTolerance(target))
        }
    }

    pub fn level(&self, depth: i32) -> f64 {
        self.target * 10f64.powi(-(depth + 1))
    }
}
