use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constants::{validity, CaseParams, Family};
use crate::error::{Error, Result};

/// Every verified inequality, identity and quantitative improvement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum CaseId {
    HARDY_SUB,
    HARDY_QUANT_D,
    HARDY_QUANT_PI,
    CRIT_HARDY,
    CRIT_QUANT_D,
    CRIT_QUANT_PI,
    CRIT_N,
    ONETWO,
    ONETWO_QUANT,
    RELLICH_12,
    RELLICH_12_QUANT,
    RELLICH_2,
    RELLICH_2_QUANT,
    CRIT_RELLICH_2,
    CRIT_RELLICH_2_QUANT,
    RELLICH_EVEN,
    RELLICH_EVEN_QUANT,
    RELLICH_ODD,
    RELLICH_ODD_QUANT,
    CRIT_EVEN,
    CRIT_EVEN_QUANT,
    CRIT_ODD,
    CRIT_ODD_QUANT,
    HYP_HARDY,
    HYP_CRIT,
    KO_RELLICH,
    HYP_IMPROVE,
    AQ,
    HYP_IMPROVE_SAO,
    HYP_IMPROVED_R,
    HYP_HIGH_EVEN,
    HYP_HIGH_ODD,
}

use CaseId::*;

impl CaseId {
    /// Registry order, which is also report order.
    pub const ALL: [CaseId; 32] = [
        HARDY_SUB,
        HARDY_QUANT_D,
        HARDY_QUANT_PI,
        CRIT_HARDY,
        CRIT_QUANT_D,
        CRIT_QUANT_PI,
        CRIT_N,
        ONETWO,
        ONETWO_QUANT,
        RELLICH_12,
        RELLICH_12_QUANT,
        RELLICH_2,
        RELLICH_2_QUANT,
        CRIT_RELLICH_2,
        CRIT_RELLICH_2_QUANT,
        RELLICH_EVEN,
        RELLICH_EVEN_QUANT,
        RELLICH_ODD,
        RELLICH_ODD_QUANT,
        CRIT_EVEN,
        CRIT_EVEN_QUANT,
        CRIT_ODD,
        CRIT_ODD_QUANT,
        HYP_HARDY,
        HYP_CRIT,
        KO_RELLICH,
        HYP_IMPROVE,
        AQ,
        HYP_IMPROVE_SAO,
        HYP_IMPROVED_R,
        HYP_HIGH_EVEN,
        HYP_HIGH_ODD,
    ];

    /// Cases carrying an exact identity whose residual is checked.
    pub const IDENTITY: [CaseId; 3] = [HARDY_SUB, CRIT_HARDY, ONETWO];

    pub fn name(&self) -> String {
        format!("{self:?}")
    }

    pub fn parse(s: &str) -> Result<CaseId> {
        let up = s.trim().to_ascii_uppercase();
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == up)
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }

    /// Description of the display the case verifies.
    pub fn display(&self) -> &'static str {
        match self {
            HARDY_SUB => "weighted Hardy inequality for the radial derivative, with its remainder identity",
            HARDY_QUANT_D => "Hardy inequality improved by the curvature term D_b",
            HARDY_QUANT_PI => "Hardy inequality improved by 3b(n-1)/(pi^2 + b rho^2)",
            CRIT_HARDY => "critical Hardy inequality on the unit ball, with its remainder identity",
            CRIT_QUANT_D => "critical Hardy inequality improved by the curvature term D_b",
            CRIT_QUANT_PI => "critical Hardy inequality improved by 3b(n-1)/(pi^2 + b rho^2)",
            CRIT_N => "critical Hardy inequality at p = n",
            ONETWO => "first-order Rellich lemma, with its remainder identity",
            ONETWO_QUANT => "first-order Rellich lemma with curvature improvement",
            RELLICH_12 => "Rellich inequality between first and second radial derivatives",
            RELLICH_12_QUANT => "first-to-second order Rellich inequality with curvature improvement",
            RELLICH_2 => "weighted Rellich inequality",
            RELLICH_2_QUANT => "weighted Rellich inequality with curvature improvements",
            CRIT_RELLICH_2 => "critical Rellich inequality",
            CRIT_RELLICH_2_QUANT => "critical Rellich inequality with curvature improvements",
            RELLICH_EVEN => "higher-order Rellich inequality, order 2l",
            RELLICH_EVEN_QUANT => "higher-order Rellich inequality, order 2l, with curvature improvement",
            RELLICH_ODD => "higher-order Rellich inequality, order 2l+1",
            RELLICH_ODD_QUANT => "higher-order Rellich inequality, order 2l+1, with curvature improvement",
            CRIT_EVEN => "critical higher-order Rellich inequality, order 2l",
            CRIT_EVEN_QUANT => "critical higher-order Rellich inequality, order 2l, with improvement",
            CRIT_ODD => "critical higher-order Rellich inequality, order 2l+1",
            CRIT_ODD_QUANT => "critical higher-order Rellich inequality, order 2l+1, with improvement",
            HYP_HARDY => "hyperbolic Hardy inequality with Lebesgue-measure improvement",
            HYP_CRIT => "hyperbolic critical Hardy inequality with Lebesgue-measure improvement",
            KO_RELLICH => "weighted Rellich inequality in hyperbolic space (p = 2)",
            HYP_IMPROVE => "improved hyperbolic Rellich inequality, gradient and function terms",
            AQ => "weighted Hardy inequality with weight 1/(pi^2 + rho^2)",
            HYP_IMPROVE_SAO => "improved hyperbolic Rellich inequality, function term only",
            HYP_IMPROVED_R => "improved hyperbolic Rellich inequality against Lebesgue measure",
            HYP_HIGH_EVEN => "improved higher-order hyperbolic Rellich inequality, order 2l",
            HYP_HIGH_ODD => "improved higher-order hyperbolic Rellich inequality, order 2l+1",
        }
    }

    pub fn has_identity(&self) -> bool {
        CaseId::IDENTITY.contains(self)
    }

    /// Quantitative (curvature-improved) variant of a base case.
    pub fn is_quantitative(&self) -> bool {
        matches!(
            self,
            HARDY_QUANT_D
                | HARDY_QUANT_PI
                | CRIT_QUANT_D
                | CRIT_QUANT_PI
                | ONETWO_QUANT
                | RELLICH_12_QUANT
                | RELLICH_2_QUANT
                | CRIT_RELLICH_2_QUANT
                | RELLICH_EVEN_QUANT
                | RELLICH_ODD_QUANT
                | CRIT_EVEN_QUANT
                | CRIT_ODD_QUANT
        )
    }

    /// The unimproved case a quantitative case strengthens.
    pub fn base(&self) -> CaseId {
        match self {
            HARDY_QUANT_D | HARDY_QUANT_PI => HARDY_SUB,
            CRIT_QUANT_D | CRIT_QUANT_PI => CRIT_HARDY,
            ONETWO_QUANT => ONETWO,
            RELLICH_12_QUANT => RELLICH_12,
            RELLICH_2_QUANT => RELLICH_2,
            CRIT_RELLICH_2_QUANT => CRIT_RELLICH_2,
            RELLICH_EVEN_QUANT => RELLICH_EVEN,
            RELLICH_ODD_QUANT => RELLICH_ODD,
            CRIT_EVEN_QUANT => CRIT_EVEN,
            CRIT_ODD_QUANT => CRIT_ODD,
            other => *other,
        }
    }

    /// Logarithmic weights on the unit geodesic ball.
    pub fn is_critical(&self) -> bool {
        matches!(
            self,
            CRIT_HARDY
                | CRIT_QUANT_D
                | CRIT_QUANT_PI
                | CRIT_N
                | CRIT_RELLICH_2
                | CRIT_RELLICH_2_QUANT
                | CRIT_EVEN
                | CRIT_EVEN_QUANT
                | CRIT_ODD
                | CRIT_ODD_QUANT
                | HYP_CRIT
        )
    }

    /// Stated on hyperbolic space only (`b = 1`).
    pub fn is_hyperbolic(&self) -> bool {
        matches!(
            self,
            HYP_HARDY | HYP_CRIT | KO_RELLICH | HYP_IMPROVE | AQ | HYP_IMPROVE_SAO | HYP_IMPROVED_R | HYP_HIGH_EVEN | HYP_HIGH_ODD
        )
    }

    /// Stated for `p = 2` only.
    pub fn requires_p2(&self) -> bool {
        matches!(self, KO_RELLICH | HYP_IMPROVE | AQ | HYP_IMPROVE_SAO | HYP_IMPROVED_R | HYP_HIGH_EVEN | HYP_HIGH_ODD)
    }

    /// Whether the Laplacian power `l` enters the case.
    pub fn uses_l(&self) -> bool {
        matches!(
            self,
            RELLICH_EVEN
                | RELLICH_EVEN_QUANT
                | RELLICH_ODD
                | RELLICH_ODD_QUANT
                | CRIT_EVEN
                | CRIT_EVEN_QUANT
                | CRIT_ODD
                | CRIT_ODD_QUANT
                | HYP_HIGH_EVEN
                | HYP_HIGH_ODD
        )
    }

    /// Highest radial derivative order applied to `f`.
    pub fn derivative_order(&self, l: usize) -> usize {
        match self {
            HARDY_SUB | HARDY_QUANT_D | HARDY_QUANT_PI | CRIT_HARDY | CRIT_QUANT_D | CRIT_QUANT_PI | CRIT_N
            | ONETWO | ONETWO_QUANT | HYP_HARDY | HYP_CRIT | AQ => 1,
            RELLICH_12 | RELLICH_12_QUANT | RELLICH_2 | RELLICH_2_QUANT | CRIT_RELLICH_2
            | CRIT_RELLICH_2_QUANT | KO_RELLICH | HYP_IMPROVE | HYP_IMPROVE_SAO | HYP_IMPROVED_R => 2,
            RELLICH_EVEN | RELLICH_EVEN_QUANT | CRIT_EVEN | CRIT_EVEN_QUANT | HYP_HIGH_EVEN => 2 * l,
            RELLICH_ODD | RELLICH_ODD_QUANT | CRIT_ODD | CRIT_ODD_QUANT | HYP_HIGH_ODD => 2 * l + 1,
        }
    }

    /// Normalize grid parameters: cases independent of `l` carry `l = 0`.
    pub fn normalize(&self, mut c: CaseParams) -> CaseParams {
        if !self.uses_l() {
            c.l = 0;
        }
        c
    }

    /// Parameter-range check: the constants family plus the case's own
    /// restrictions (`p = n`, `p = 2`, `b = 1`).
    pub fn check(&self, c: &CaseParams) -> Result<()> {
        let family = |f: Family| validity(f, c);
        if self.is_hyperbolic() && c.b != 1.0 {
            return Err(Error::validity("hyperbolic", format!("b = 1 required (b = {})", c.b)));
        }
        if self.requires_p2() && c.p != 2.0 {
            return Err(Error::validity("hyperbolic", format!("p = 2 required (p = {})", c.p)));
        }
        match self {
            HARDY_SUB | HARDY_QUANT_D | HARDY_QUANT_PI | HYP_HARDY => family(Family::Hardy),
            CRIT_HARDY | CRIT_QUANT_D | CRIT_QUANT_PI | HYP_CRIT => family(Family::CriticalHardy),
            CRIT_N => {
                family(Family::CriticalHardy)?;
                if c.p != c.nf() {
                    return Err(Error::validity("critical_hardy", format!("p = n required (p = {}, n = {})", c.p, c.n)));
                }
                Ok(())
            }
            ONETWO | ONETWO_QUANT | RELLICH_12 | RELLICH_12_QUANT => family(Family::OneTwo),
            RELLICH_2 | RELLICH_2_QUANT => family(Family::Rellich2),
            CRIT_RELLICH_2 | CRIT_RELLICH_2_QUANT => family(Family::CriticalRellich2),
            RELLICH_EVEN | RELLICH_EVEN_QUANT => family(Family::RellichEven),
            RELLICH_ODD | RELLICH_ODD_QUANT => family(Family::RellichOdd),
            CRIT_EVEN | CRIT_EVEN_QUANT => family(Family::CriticalEven),
            CRIT_ODD | CRIT_ODD_QUANT => family(Family::CriticalOdd),
            KO_RELLICH | HYP_IMPROVE | AQ | HYP_IMPROVE_SAO | HYP_IMPROVED_R => {
                family(Family::HyperbolicRellich)
            }
            HYP_HIGH_EVEN => validity(Family::HyperbolicHigher, &CaseParams { l: 2 * c.l, ..*c }),
            HYP_HIGH_ODD => validity(Family::HyperbolicHigher, &CaseParams { l: 2 * c.l + 1, ..*c }),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A registry case at fixed parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InequalityCase {
    pub id: CaseId,
    pub params: CaseParams,
}

impl InequalityCase {
    /// Validates the parameters; `l` is dropped for cases that ignore it.
    pub fn new(id: CaseId, params: CaseParams) -> Result<Self> {
        let params = id.normalize(params);
        id.check(&params)?;
        Ok(InequalityCase { id, params })
    }
}
