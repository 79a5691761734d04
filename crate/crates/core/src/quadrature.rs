//! Composite Gauss-Legendre quadrature and the tangent-angle integral
//! `I(beta, t) = int_0^t exp(i beta(s)) ds`.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::geometry::{lagrange_basis, Point2, QuadraticAngle};

/// Nodes and weights on `[-1, 1]` for 2 to 10 points.
#[allow(clippy::excessive_precision)]
const GAUSS_LEGENDRE: [&[(f64, f64)]; 9] = [
    &[
        (-0.5773502691896257645091487805019575, 1.0),
        (0.5773502691896257645091487805019575, 1.0),
    ],
    &[
        (
            -0.7745966692414833770358530799564799,
            0.5555555555555555555555555555555556,
        ),
        (0.0, 0.8888888888888888888888888888888889),
        (
            0.7745966692414833770358530799564799,
            0.5555555555555555555555555555555556,
        ),
    ],
    &[
        (
            -0.8611363115940525752239464888928095,
            0.3478548451374538573730639492219994,
        ),
        (
            -0.3399810435848562648026657591032447,
            0.6521451548625461426269360507780006,
        ),
        (
            0.3399810435848562648026657591032447,
            0.6521451548625461426269360507780006,
        ),
        (
            0.8611363115940525752239464888928095,
            0.3478548451374538573730639492219994,
        ),
    ],
    &[
        (
            -0.906179845938663992797626878299393,
            0.2369268850561890875142640407199174,
        ),
        (
            -0.5384693101056830910363144207002088,
            0.4786286704993664680412915148356382,
        ),
        (0.0, 0.5688888888888888888888888888888889),
        (
            0.5384693101056830910363144207002088,
            0.4786286704993664680412915148356382,
        ),
        (
            0.906179845938663992797626878299393,
            0.2369268850561890875142640407199174,
        ),
    ],
    &[
        (
            -0.9324695142031520278123015544939946,
            0.1713244923791703450402961421727329,
        ),
        (
            -0.6612093864662645136613995950199053,
            0.3607615730481386075698335138377161,
        ),
        (
            -0.2386191860831969086305017216807119,
            0.467913934572691047389870343989551,
        ),
        (
            0.2386191860831969086305017216807119,
            0.467913934572691047389870343989551,
        ),
        (
            0.6612093864662645136613995950199053,
            0.3607615730481386075698335138377161,
        ),
        (
            0.9324695142031520278123015544939946,
            0.1713244923791703450402961421727329,
        ),
    ],
    &[
        (
            -0.9491079123427585245261896840478513,
            0.129484966168869693270611432679082,
        ),
        (
            -0.7415311855993944398638647732807884,
            0.2797053914892766679014677714237796,
        ),
        (
            -0.4058451513773971669066064120769615,
            0.3818300505051189449503697754889751,
        ),
        (0.0, 0.4179591836734693877551020408163265),
        (
            0.4058451513773971669066064120769615,
            0.3818300505051189449503697754889751,
        ),
        (
            0.7415311855993944398638647732807884,
            0.2797053914892766679014677714237796,
        ),
        (
            0.9491079123427585245261896840478513,
            0.129484966168869693270611432679082,
        ),
    ],
    &[
        (
            -0.960289856497536231683560868569473,
            0.1012285362903762591525313543099622,
        ),
        (
            -0.7966664774136267395915539364758304,
            0.2223810344533744705443559944262409,
        ),
        (
            -0.5255324099163289858177390491892463,
            0.3137066458778872873379622019866013,
        ),
        (
            -0.183434642495649804939476142360184,
            0.3626837833783619829651504492771956,
        ),
        (
            0.183434642495649804939476142360184,
            0.3626837833783619829651504492771956,
        ),
        (
            0.5255324099163289858177390491892463,
            0.3137066458778872873379622019866013,
        ),
        (
            0.7966664774136267395915539364758304,
            0.2223810344533744705443559944262409,
        ),
        (
            0.960289856497536231683560868569473,
            0.1012285362903762591525313543099622,
        ),
    ],
    &[
        (
            -0.9681602395076260898355762029036729,
            0.08127438836157441197189215811052365,
        ),
        (
            -0.8360311073266357942994297880697349,
            0.1806481606948574040584720312429128,
        ),
        (
            -0.6133714327005903973087020393414742,
            0.2606106964029354623187428694186328,
        ),
        (
            -0.3242534234038089290385380146433366,
            0.3123470770400028400686304065844437,
        ),
        (0.0, 0.330239355001259763164525069286974),
        (
            0.3242534234038089290385380146433366,
            0.3123470770400028400686304065844437,
        ),
        (
            0.6133714327005903973087020393414742,
            0.2606106964029354623187428694186328,
        ),
        (
            0.8360311073266357942994297880697349,
            0.1806481606948574040584720312429128,
        ),
        (
            0.9681602395076260898355762029036729,
            0.08127438836157441197189215811052365,
        ),
    ],
    &[
        (
            -0.9739065285171717200779640120844521,
            0.06667134430868813759356880989333179,
        ),
        (
            -0.865063366688984510732096688423493,
            0.1494513491505805931457763396576973,
        ),
        (
            -0.6794095682990244062343273651148736,
            0.2190863625159820439955349342281632,
        ),
        (
            -0.4333953941292471907992659431657842,
            0.2692667193099963550912269215694694,
        ),
        (
            -0.14887433898163121088482600112972,
            0.2955242247147528701738929946513383,
        ),
        (
            0.14887433898163121088482600112972,
            0.2955242247147528701738929946513383,
        ),
        (
            0.4333953941292471907992659431657842,
            0.2692667193099963550912269215694694,
        ),
        (
            0.6794095682990244062343273651148736,
            0.2190863625159820439955349342281632,
        ),
        (
            0.865063366688984510732096688423493,
            0.1494513491505805931457763396576973,
        ),
        (
            0.9739065285171717200779640120844521,
            0.06667134430868813759356880989333179,
        ),
    ],
];

/// Gauss-Legendre rule `(node, weight)` pairs on `[-1, 1]`.
pub fn gauss_legendre_rule(nodes: usize) -> Option<&'static [(f64, f64)]> {
    GAUSS_LEGENDRE.get(nodes.checked_sub(2)?).copied()
}

/// Composite Gauss-Legendre rule: `subintervals` equal panels with
/// `nodes_per_interval` nodes each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawQuadrature")]
pub struct QuadratureConfig {
    nodes_per_interval: usize,
    subintervals: usize,
}

#[derive(Deserialize)]
struct RawQuadrature {
    nodes_per_interval: usize,
    subintervals: usize,
}

impl TryFrom<RawQuadrature> for QuadratureConfig {
    type Error = ConfigError;
    fn try_from(raw: RawQuadrature) -> Result<Self, ConfigError> {
        QuadratureConfig::new(raw.nodes_per_interval, raw.subintervals)
    }
}

impl Default for QuadratureConfig {
    /// One panel with three nodes.
    fn default() -> Self {
        QuadratureConfig {
            nodes_per_interval: 3,
            subintervals: 1,
        }
    }
}

impl QuadratureConfig {
    /// 16 panels with 5 nodes each; used for reference fits and sweeps.
    pub const ACCURATE: QuadratureConfig = QuadratureConfig {
        nodes_per_interval: 5,
        subintervals: 16,
    };

    pub fn new(nodes_per_interval: usize, subintervals: usize) -> Result<Self, ConfigError> {
        if !(2..=10).contains(&nodes_per_interval) {
            return Err(ConfigError::QuadratureNodes(nodes_per_interval));
        }
        if subintervals == 0 {
            return Err(ConfigError::QuadraturePanels(subintervals));
        }
        Ok(QuadratureConfig {
            nodes_per_interval,
            subintervals,
        })
    }

    pub fn nodes_per_interval(&self) -> usize {
        self.nodes_per_interval
    }

    pub fn subintervals(&self) -> usize {
        self.subintervals
    }

    /// Integrate a complex-valued `f` over the oriented interval `[0, t]`.
    ///
    /// For `t < 0` the panel width is negative, which yields minus the
    /// integral over `[t, 0]`.
    pub fn integrate<F>(&self, t: f64, mut f: F) -> Point2
    where
        F: FnMut(f64) -> Point2,
    {
        let rule = GAUSS_LEGENDRE[self.nodes_per_interval - 2];
        let h = t / self.subintervals as f64;
        let half = 0.5 * h;
        let mut acc = Point2::ZERO;
        for k in 0..self.subintervals {
            let mid = (k as f64 + 0.5) * h;
            let mut panel = Point2::ZERO;
            for &(x, w) in rule {
                panel += f(mid + half * x) * w;
            }
            acc += panel;
        }
        acc * half
    }
}

/// `I(beta, t) = int_0^t exp(i beta(s)) ds`.
pub fn angle_integral(beta: &QuadraticAngle, t: f64, quad: QuadratureConfig) -> Point2 {
    quad.integrate(t, |s| Point2::cis(beta.eval(s)))
}

/// `int_0^1 l_{1/2}(s) exp(i beta(s)) ds`, the derivative of `I(beta)`
/// with respect to the midpoint value divided by `i`.
pub fn midpoint_weighted_integral(beta: &QuadraticAngle, quad: QuadratureConfig) -> Point2 {
    quad.integrate(1.0, |s| Point2::cis(beta.eval(s)) * lagrange_basis(s).1)
}
