//! Audit of the near-equality regime of Jensen's inequality for power means.
//!
//! For weights p_i summing to 1, values a_i >= 0, a target A > 0 and a power
//! k >= 2, the audited statement is: whenever the weighted mean is at least
//! A(1 - eps) and the weighted k-th moment is at most A^k(1 + eps), the
//! weight of the indices with |a_i - A| >= delta*A cannot exceed delta once
//! delta^3 > 3*eps. (The k > 2 cases reduce to k = 2 because x^(2/k) is
//! concave, so the same constant applies.) All comparisons are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::value::{rational_to_f64, RationalJson};

/// One audit instance; weights must sum to exactly 1.
#[derive(Debug, Clone)]
pub struct JensenInstance {
    pub weights: Vec<BigRational>,
    pub values: Vec<BigRational>,
    pub target: BigRational,
    pub power: u32,
    pub delta: BigRational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JensenInstanceJson {
    pub weights: Vec<RationalJson>,
    pub values: Vec<RationalJson>,
    pub target: RationalJson,
    pub power: u32,
    pub delta: RationalJson,
}

impl JensenInstanceJson {
    pub fn to_instance(&self) -> Result<JensenInstance> {
        Ok(JensenInstance {
            weights: self
                .weights
                .iter()
                .map(|r| r.to_rational())
                .collect::<Result<_>>()?,
            values: self
                .values
                .iter()
                .map(|r| r.to_rational())
                .collect::<Result<_>>()?,
            target: self.target.to_rational()?,
            power: self.power,
            delta: self.delta.to_rational()?,
        })
    }
}

/// Audit outcome: the smallest eps making both hypotheses true, the exact
/// weight of the far-from-target indices, and whether the pair is consistent
/// with the bound (it always should be; an inconsistency is a finding).
#[derive(Debug, Clone)]
pub struct JensenAudit {
    pub epsilon: BigRational,
    pub bad_weight: BigRational,
    /// delta^3 > 3*epsilon: the regime where the bound bites.
    pub premise_active: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JensenAuditJson {
    pub epsilon: RationalJson,
    pub bad_weight: RationalJson,
    pub premise_active: bool,
    pub consistent: bool,
    pub verdict: String,
}

impl JensenAudit {
    pub fn to_json(&self) -> JensenAuditJson {
        JensenAuditJson {
            epsilon: RationalJson::from_rational(&self.epsilon),
            bad_weight: RationalJson::from_rational(&self.bad_weight),
            premise_active: self.premise_active,
            consistent: self.consistent,
            verdict: if self.consistent {
                "consistent".into()
            } else {
                "violation".into()
            },
        }
    }

    pub fn epsilon_f64(&self) -> f64 {
        rational_to_f64(&self.epsilon)
    }

    pub fn bad_weight_f64(&self) -> f64 {
        rational_to_f64(&self.bad_weight)
    }
}

pub fn jensen_audit(inst: &JensenInstance) -> Result<JensenAudit> {
    if inst.power < 2 {
        return Err(Error::InvalidParameter("power must be >= 2".into()));
    }
    if !inst.target.is_positive() {
        return Err(Error::InvalidParameter("target must be positive".into()));
    }
    if !inst.delta.is_positive() {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    if inst.weights.len() != inst.values.len() {
        return Err(Error::InvalidParameter(
            "weights and values must have equal length".into(),
        ));
    }
    let mut sum = BigRational::zero();
    for w in &inst.weights {
        if w.is_negative() {
            return Err(Error::InvalidParameter("weights must be non-negative".into()));
        }
        sum += w;
    }
    if !sum.is_one() {
        return Err(Error::InvalidParameter(
            "weights must sum to exactly 1".into(),
        ));
    }
    for a in &inst.values {
        if a.is_negative() {
            return Err(Error::InvalidParameter("values must be non-negative".into()));
        }
    }

    let a = &inst.target;
    let k = inst.power as i32;
    let mut mean = BigRational::zero();
    let mut moment = BigRational::zero();
    for (w, v) in inst.weights.iter().zip(&inst.values) {
        mean += w * v;
        moment += w * v.pow(k);
    }
    // smallest eps with  mean >= A(1 - eps)  and  moment <= A^k (1 + eps)
    let eps_mean = BigRational::one() - mean / a;
    let eps_moment = moment / a.pow(k) - BigRational::one();
    let mut epsilon = eps_mean.max(eps_moment);
    if epsilon.is_negative() {
        epsilon = BigRational::zero();
    }

    let threshold = &inst.delta * a;
    let mut bad_weight = BigRational::zero();
    for (w, v) in inst.weights.iter().zip(&inst.values) {
        if (v - a).abs() >= threshold {
            bad_weight += w;
        }
    }

    let premise_active = inst.delta.pow(3) > BigRational::from_integer(BigInt::from(3)) * &epsilon;
    let consistent = !premise_active || bad_weight <= inst.delta;
    Ok(JensenAudit {
        epsilon,
        bad_weight,
        premise_active,
        consistent,
    })
}
