//! Standard versus non-standard matrix-factorization pairs via syzygies.

use super::HelixError;
use crate::modules::{is_isomorphic, GradedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Standardness {
    /// `ΩX(1) ≅ Y` and `ΩY(1) ≅ X`.
    Standard,
    /// `ΩX(1) ≅ X` and `ΩY(1) ≅ Y`.
    NonStandard,
    Inconclusive,
}

impl Standardness {
    pub fn label(self) -> &'static str {
        match self {
            Standardness::Standard => "standard",
            Standardness::NonStandard => "non-standard",
            Standardness::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardnessVerdict {
    pub classification: Standardness,
    pub omega_x_is_y: bool,
    pub omega_x_is_x: bool,
    pub omega_y_is_x: bool,
    pub omega_y_is_y: bool,
    /// All isomorphism tests were decided below the window top.
    pub certified: bool,
}

/// Classifies the pair `(X, Y)` by comparing `ΩX(1)` with `Y` and with `X`,
/// cross-checked through `ΩY(1)`.
pub fn classify_standard(x: &GradedModule, y: &GradedModule) -> Result<StandardnessVerdict, HelixError> {
    if is_isomorphic(x, y)?.isomorphic {
        return Err(HelixError::IsomorphicInputs);
    }
    let ox = x.syzygy().shift(1);
    let oy = y.syzygy().shift(1);
    let checks = [is_isomorphic(&ox, y)?, is_isomorphic(&ox, x)?, is_isomorphic(&oy, x)?, is_isomorphic(&oy, y)?];
    let certified = checks.iter().all(|c| c.certified);
    let [xy, xx, yx, yy] = [0, 1, 2, 3].map(|i| checks[i].isomorphic);
    let classification = match (xy && yx, xx && yy) {
        (true, false) => Standardness::Standard,
        (false, true) => Standardness::NonStandard,
        _ => Standardness::Inconclusive,
    };
    Ok(StandardnessVerdict {
        classification,
        omega_x_is_y: xy,
        omega_x_is_x: xx,
        omega_y_is_x: yx,
        omega_y_is_y: yy,
        certified,
    })
}
