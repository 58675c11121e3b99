use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::family::UnivariateFamily;
use crate::measures::gaussian::IsoGaussian;
use crate::mixture::MixtureSpec;
use crate::region::{Halfspace, SetMass};
use crate::scalar::Real;

/// Class-conditional law of one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ClassModel<T = f64> {
    Family { law: UnivariateFamily<T> },
    Gaussian { law: IsoGaussian<T> },
    Empirical { law: EmpiricalMeasure<T> },
    Mixture { law: MixtureSpec<T> },
}

impl<T: Real> From<UnivariateFamily<T>> for ClassModel<T> {
    fn from(law: UnivariateFamily<T>) -> Self {
        ClassModel::Family { law }
    }
}

impl<T: Real> From<IsoGaussian<T>> for ClassModel<T> {
    fn from(law: IsoGaussian<T>) -> Self {
        ClassModel::Gaussian { law }
    }
}

impl<T: Real> From<EmpiricalMeasure<T>> for ClassModel<T> {
    fn from(law: EmpiricalMeasure<T>) -> Self {
        ClassModel::Empirical { law }
    }
}

impl<T: Real> From<MixtureSpec<T>> for ClassModel<T> {
    fn from(law: MixtureSpec<T>) -> Self {
        ClassModel::Mixture { law }
    }
}

impl<T: Real> SetMass<T> for ClassModel<T> {
    fn dim(&self) -> usize {
        match self {
            ClassModel::Family { law } => law.dim(),
            ClassModel::Gaussian { law } => SetMass::dim(law),
            ClassModel::Empirical { law } => SetMass::dim(law),
            ClassModel::Mixture { law } => law.dim(),
        }
    }

    fn total_mass(&self) -> T {
        match self {
            ClassModel::Family { law } => law.total_mass(),
            ClassModel::Gaussian { law } => law.total_mass(),
            ClassModel::Empirical { law } => SetMass::total_mass(law),
            ClassModel::Mixture { law } => law.total_mass(),
        }
    }

    fn interval_mass(&self, set: &IntervalSet<T>) -> Result<T> {
        match self {
            ClassModel::Family { law } => law.interval_mass(set),
            ClassModel::Gaussian { law } => law.interval_mass(set),
            ClassModel::Empirical { law } => law.interval_mass(set),
            ClassModel::Mixture { law } => law.interval_mass(set),
        }
    }

    fn halfspace_mass(&self, h: &Halfspace<T>) -> Result<T> {
        match self {
            ClassModel::Family { law } => law.halfspace_mass(h),
            ClassModel::Gaussian { law } => law.halfspace_mass(h),
            ClassModel::Empirical { law } => law.halfspace_mass(h),
            ClassModel::Mixture { law } => law.halfspace_mass(h),
        }
    }
}

/// Balanced binary problem: each class drawn with probability ½.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryProblem<T = f64> {
    pub class0: ClassModel<T>,
    pub class1: ClassModel<T>,
}

impl<T: Real> BinaryProblem<T> {
    pub fn new(class0: impl Into<ClassModel<T>>, class1: impl Into<ClassModel<T>>) -> Result<Self> {
        let (class0, class1) = (class0.into(), class1.into());
        if class0.dim() != class1.dim() {
            return Err(Error::DimensionMismatch { expected: class0.dim(), got: class1.dim() });
        }
        Ok(Self { class0, class1 })
    }

    pub fn dim(&self) -> usize {
        self.class0.dim()
    }

    /// Same problem with the class labels exchanged.
    pub fn swapped(&self) -> Self {
        Self { class0: self.class1.clone(), class1: self.class0.clone() }
    }
}
