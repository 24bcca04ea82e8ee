//! Pentagon and hexagon residuals, computed by brute-force contraction.

use super::{CategorySpec, FSymbolTable, FusionRules};
use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct PentagonReport {
    pub max_residual: f64,
    /// Outer labels (a,b,c,d; e) of the worst instance.
    pub worst_instance: Option<[usize; 5]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HexagonReport {
    pub max_residual: f64,
    pub worst_instance: Option<[usize; 4]>,
}

pub fn validate_pentagon(spec: &CategorySpec) -> PentagonReport {
    pentagon_residual(&spec.rules, &spec.f)
}

/// Compare the two re-association paths from (((ab)c)d) to (a(b(cd))).
pub(crate) fn pentagon_residual(r: &FusionRules, f: &FSymbolTable) -> PentagonReport {
    let rank = r.rank();
    let mut report = PentagonReport { max_residual: 0.0, worst_instance: None };
    let labels = 0..rank;
    for a in labels.clone() {
        for b in labels.clone() {
            for c in labels.clone() {
                for d in labels.clone() {
                    for e in labels.clone() {
                        let res = pentagon_instance(r, f, [a, b, c, d, e]);
                        if res > report.max_residual || report.worst_instance.is_none() && res > 0.0 {
                            report.max_residual = res;
                            report.worst_instance = Some([a, b, c, d, e]);
                        }
                    }
                }
            }
        }
    }
    report
}

fn pentagon_instance(r: &FusionRules, f: &FSymbolTable, [a, b, c, d, e]: [usize; 5]) -> f64 {
    let rank = r.rank();
    let mut worst = 0.0f64;
    // source tree: (((a b)_f c)_g d)_e with vertices α, β, γ
    for fl in 0..rank {
        for al in 0..r.n(a, b, fl) {
            for g in 0..rank {
                for be in 0..r.n(fl, c, g) {
                    for ga in 0..r.n(g, d, e) {
                        // target tree: (a (b (c d)_l)_k)_e with vertices δ, ζ, η
                        for l in 0..rank {
                            for de in 0..r.n(c, d, l) {
                                for k in 0..rank {
                                    for ze in 0..r.n(b, l, k) {
                                        for et in 0..r.n(a, k, e) {
                                            let mut lhs = ZERO;
                                            for ep in 0..r.n(fl, l, e) {
                                                lhs += f.entry([fl, c, d, e], (g, be, ga), (l, de, ep))
                                                    * f.entry([a, b, l, e], (fl, al, ep), (k, ze, et));
                                            }
                                            let mut rhs = ZERO;
                                            for h in 0..rank {
                                                for ka in 0..r.n(b, c, h) {
                                                    for la in 0..r.n(a, h, g) {
                                                        for mu in 0..r.n(h, d, k) {
                                                            rhs += f.entry([a, b, c, g], (fl, al, be), (h, ka, la))
                                                                * f.entry([a, h, d, e], (g, la, ga), (k, mu, et))
                                                                * f.entry([b, c, d, k], (h, ka, mu), (l, de, ze));
                                                        }
                                                    }
                                                }
                                            }
                                            worst = worst.max((lhs - rhs).norm());
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Both hexagons: once with R and once with the reversed braiding R'^{ab}_c = (R^{ba}_c)^{-1}.
pub fn validate_hexagon(spec: &CategorySpec) -> Result<HexagonReport> {
    let rt = spec.r.as_ref().ok_or(Error::NotBraided)?;
    let rank = spec.rank();
    let mut report = HexagonReport { max_residual: 0.0, worst_instance: None };
    let fwd = |a: usize, b: usize, c: usize, m: usize, n: usize| -> C64 {
        rt.get(a, b, c).map_or(ZERO, |r| r[(m, n)])
    };
    let rev = |a: usize, b: usize, c: usize, m: usize, n: usize| -> C64 {
        rt.inv(b, a, c).map_or(ZERO, |r| r[(m, n)])
    };
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                for d in 0..rank {
                    let res = hexagon_instance(&spec.rules, &spec.f, &fwd, [a, b, c, d])
                        .max(hexagon_instance(&spec.rules, &spec.f, &rev, [a, b, c, d]));
                    if res > report.max_residual {
                        report.max_residual = res;
                        report.worst_instance = Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    Ok(report)
}

type RFn<'a> = dyn Fn(usize, usize, usize, usize, usize) -> C64 + 'a;

/// σ_{a,bc} computed as one braiding after re-association versus two braidings.
fn hexagon_instance(r: &FusionRules, f: &FSymbolTable, rr: &RFn<'_>, [a, b, c, d]: [usize; 4]) -> f64 {
    let rank = r.rank();
    let mut worst = 0.0f64;
    for e in 0..rank {
        for al in 0..r.n(a, b, e) {
            for be in 0..r.n(e, c, d) {
                // target ((b c)_h a)_d with κ, λ
                for h in 0..rank {
                    for ka in 0..r.n(b, c, h) {
                        for la in 0..r.n(h, a, d) {
                            let mut lhs = ZERO;
                            for nu in 0..r.n(a, h, d) {
                                lhs += f.entry([a, b, c, d], (e, al, be), (h, ka, nu)) * rr(a, h, d, nu, la);
                            }
                            let mut rhs = ZERO;
                            for al2 in 0..r.n(b, a, e) {
                                let r1 = rr(a, b, e, al, al2);
                                if r1 == ZERO {
                                    continue;
                                }
                                for g in 0..rank {
                                    for ga in 0..r.n(a, c, g) {
                                        for de in 0..r.n(b, g, d) {
                                            let f1 = f.entry([b, a, c, d], (e, al2, be), (g, ga, de));
                                            for ga2 in 0..r.n(c, a, g) {
                                                rhs += r1
                                                    * f1
                                                    * rr(a, c, g, ga, ga2)
                                                    * f.inv_entry([b, c, a, d], (g, ga2, de), (h, ka, la));
                                            }
                                        }
                                    }
                                }
                            }
                            worst = worst.max((lhs - rhs).norm());
                        }
                    }
                }
            }
        }
    }
    worst
}
