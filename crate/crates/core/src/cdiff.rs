//! Exact c-differential counting for power maps `F(x) = x^d`.
//!
//! For a power map, the count of solutions to `F(x+a) - c*F(x) = b` at a
//! nonzero `a` is a relabeling of the count at `a = 1`, and for `a = 0` and
//! `c != 1` the count per hit output is `gcd(d, p^m - 1)`. Uniformity is
//! therefore computed from a single pass at `a = 1` plus the gcd term
//! (`c != 1`), or from the `a = 1` pass alone (`c = 1`, where `a = 0` is
//! excluded by definition). The general all-`a` path is also provided; the
//! invariant suite uses it to cross-check the reduction.

use crate::gf::{gcd, FieldElement, FieldSpec};
use serde::Serialize;
use std::fmt;

/// The map `x -> x^d` over a fixed field, with its reduced exponent and gcd
/// data. `x^d` and `x^(d mod p^m-1)` act identically on nonzero elements, so
/// two labels with the same reduction behave the same everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerMap {
    d: u64,
    d_reduced: u64,
    gcd_d: u64,
}

impl PowerMap {
    /// Binds an exponent `d >= 1` to a field.
    pub fn new(f: &FieldSpec, d: u64) -> PowerMap {
        assert!(d >= 1, "power map exponent must be positive");
        let n = f.order() - 1;
        let r = if n == 0 { 1 } else { d % n };
        let d_reduced = if r == 0 { n.max(1) } else { r };
        PowerMap {
            d,
            d_reduced,
            gcd_d: gcd(d_reduced, n).max(1),
        }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Canonical representative of `d mod (p^m - 1)` in `[1, p^m - 1]`.
    pub fn d_reduced(&self) -> u64 {
        self.d_reduced
    }

    /// `gcd(d, p^m - 1)`.
    pub fn gcd_d(&self) -> u64 {
        self.gcd_d
    }
}

/// Output-difference multiplicities at `a = 1`: `omega[i]` counts the `b`
/// with exactly `i` solutions. Always satisfies `sum omega_i = p^m` and
/// `sum i*omega_i = p^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub omega: Vec<u64>,
}

impl Spectrum {
    pub fn max_multiplicity(&self) -> u64 {
        (self.omega.len() - 1) as u64
    }

    pub fn total(&self) -> u64 {
        self.omega.iter().sum()
    }

    pub fn weighted_total(&self) -> u64 {
        self.omega
            .iter()
            .enumerate()
            .map(|(i, &w)| i as u64 * w)
            .sum()
    }

    /// Both spectrum identities against the field order.
    pub fn identities_hold(&self, order: u64) -> bool {
        self.total() == order && self.weighted_total() == order
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "PcN")]
    PcN,
    #[serde(rename = "APcN")]
    APcN,
    #[serde(rename = "higher")]
    Higher,
}

impl Classification {
    pub fn from_uniformity(u: u64) -> Classification {
        match u {
            1 => Classification::PcN,
            2 => Classification::APcN,
            _ => Classification::Higher,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::PcN => write!(f, "PcN"),
            Classification::APcN => write!(f, "APcN"),
            Classification::Higher => write!(f, "higher"),
        }
    }
}

/// Exact c-differential uniformity of a power map, with the witnessing
/// output difference at `a = 1` (absent when only the `a = 0` gcd term
/// attains the maximum) and the branch that applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    pub uniformity: u64,
    /// Smallest `b` code attaining the maximal count at `a = 1`.
    pub witness_b: Option<u64>,
    /// `gcd(d, p^m - 1)`; enters the maximum only when `c != 1`.
    pub gcd_term: u64,
    pub classification: Classification,
    /// True when `c = 1` (usual differential uniformity, `a = 0` excluded).
    pub c_is_one: bool,
}

/// Number of `x` with `F(x+a) - c*F(x) = b`, by full enumeration.
pub fn c_delta(
    f: &FieldSpec,
    p: &PowerMap,
    c: FieldElement,
    a: FieldElement,
    b: FieldElement,
) -> u64 {
    let d = p.d_reduced();
    let mut count = 0;
    for x in 0..f.order() {
        let lhs = f.sub_code(
            f.pow_code(f.add_code(x, a.code()), d),
            f.mul_code(c.code(), f.pow_code(x, d)),
        );
        if lhs == b.code() {
            count += 1;
        }
    }
    count
}

/// One pass over `x` at `a = 1`, accumulating counts per output difference.
pub(crate) fn counts_at_a1(f: &FieldSpec, d_reduced: u64, c_code: u64) -> Vec<u32> {
    let q = f.order() as usize;
    let mut counts = vec![0u32; q];
    for x in 0..f.order() {
        let v = f.sub_code(
            f.pow_code(f.succ_code(x), d_reduced),
            f.mul_code(c_code, f.pow_code(x, d_reduced)),
        );
        counts[v as usize] += 1;
    }
    counts
}

/// Exact c-differential uniformity via the `a = 1` pass plus the gcd term.
pub fn c_uniformity(f: &FieldSpec, p: &PowerMap, c: FieldElement) -> UniformityReport {
    let counts = counts_at_a1(f, p.d_reduced(), c.code());
    let mut max_count = 0u64;
    let mut witness = 0u64;
    for (b, &n) in counts.iter().enumerate() {
        if n as u64 > max_count {
            max_count = n as u64;
            witness = b as u64;
        }
    }
    let c_is_one = c.code() == 1;
    let (uniformity, witness_b) = if c_is_one {
        (max_count, Some(witness))
    } else if p.gcd_d() > max_count {
        (p.gcd_d(), None)
    } else {
        (max_count, Some(witness))
    };
    UniformityReport {
        uniformity,
        witness_b,
        gcd_term: p.gcd_d(),
        classification: Classification::from_uniformity(uniformity),
        c_is_one,
    }
}

/// Reference path: maximum count over every admissible `(a, b)` pair, by
/// per-`a` counting passes. `a = 0` is skipped when `c = 1`.
pub fn c_uniformity_all_a(f: &FieldSpec, p: &PowerMap, c: FieldElement) -> u64 {
    let q = f.order();
    let d = p.d_reduced();
    let mut max = 0u64;
    for a in 0..q {
        if a == 0 && c.code() == 1 {
            continue;
        }
        let mut counts = vec![0u32; q as usize];
        for x in 0..q {
            let v = f.sub_code(
                f.pow_code(f.add_code(x, a), d),
                f.mul_code(c.code(), f.pow_code(x, d)),
            );
            counts[v as usize] += 1;
        }
        max = max.max(*counts.iter().max().unwrap() as u64);
    }
    max
}

/// c-differential spectrum at `a = 1`.
pub fn c_spectrum(f: &FieldSpec, p: &PowerMap, c: FieldElement) -> Spectrum {
    let counts = counts_at_a1(f, p.d_reduced(), c.code());
    let max = *counts.iter().max().unwrap() as usize;
    let mut omega = vec![0u64; max + 1];
    for &n in &counts {
        omega[n as usize] += 1;
    }
    let s = Spectrum { omega };
    debug_assert!(s.identities_hold(f.order()));
    s
}

/// PcN iff uniformity 1, APcN iff 2.
pub fn classify(f: &FieldSpec, p: &PowerMap, c: FieldElement) -> Classification {
    c_uniformity(f, p, c).classification
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn power_map_reduction() {
        let f = build_field(5, 5).unwrap();
        let pm = PowerMap::new(&f, 3645);
        assert_eq!(pm.d(), 3645);
        assert_eq!(pm.d_reduced(), 521);
        assert_eq!(pm.gcd_d(), 1);
        // d a multiple of p^m - 1 reduces to the top representative.
        let f9 = build_field(3, 2).unwrap();
        assert_eq!(PowerMap::new(&f9, 8).d_reduced(), 8);
        assert_eq!(PowerMap::new(&f9, 16).d_reduced(), 8);
        for x in f9.elements() {
            assert_eq!(f9.pow(x, 16), f9.pow(x, 8));
        }
    }

    #[test]
    fn c_delta_hand_enumeration_gf3() {
        // (x+1)^4 - 2x^4 = 1 holds exactly for x in {0, 2}.
        let f = build_field(3, 1).unwrap();
        let pm = PowerMap::new(&f, 4);
        let c = f.element(2).unwrap();
        let one = f.one();
        assert_eq!(c_delta(&f, &pm, c, one, one), 2);
    }

    #[test]
    fn c_delta_bijection_at_c0() {
        let f = build_field(2, 3).unwrap();
        let pm = PowerMap::new(&f, 3); // gcd(3, 7) = 1
        for b in f.elements() {
            assert_eq!(c_delta(&f, &pm, f.zero(), f.one(), b), 1);
        }
    }

    #[test]
    fn c_delta_a0_reduces_to_gcd_on_residues() {
        // a = 0, c = -1: (1-c) x^2 = b has gcd(2, 8) = 2 solutions whenever
        // b/(1-c) is a nonzero square.
        let f = build_field(3, 2).unwrap();
        let pm = PowerMap::new(&f, 2);
        let c = f.minus_one();
        let two = f.scalar(2);
        for s in f.elements() {
            if s.code() == 0 || f.quadratic_character(s).unwrap() != 1 {
                continue;
            }
            let b = f.mul(two, s);
            assert_eq!(c_delta(&f, &pm, c, f.zero(), b), 2);
        }
    }

    #[test]
    fn uniformity_examples() {
        // x^61 over GF(3^5) at c = -1 is PcN.
        let f = build_field(3, 5).unwrap();
        let pm = PowerMap::new(&f, 61);
        let rep = c_uniformity(&f, &pm, f.minus_one());
        assert_eq!(rep.uniformity, 1);
        assert_eq!(rep.classification, Classification::PcN);

        // d = 1 is linear: uniformity 1 for any c != 1.
        let f9 = build_field(3, 2).unwrap();
        let lin = PowerMap::new(&f9, 1);
        for c in f9.elements() {
            if c.code() == 1 {
                continue;
            }
            assert_eq!(c_uniformity(&f9, &lin, c).uniformity, 1);
        }

        // x^2 over GF(3^4) at c = -1: uniformity exactly 2.
        let f81 = build_field(3, 4).unwrap();
        let sq = PowerMap::new(&f81, 2);
        assert_eq!(c_uniformity(&f81, &sq, f81.minus_one()).uniformity, 2);
    }

    #[test]
    fn classify_pcn_examples() {
        for (p, m, d) in [(7u64, 3u32, 43u64), (11, 3, 111), (13, 3, 157)] {
            let f = build_field(p, m).unwrap();
            let pm = PowerMap::new(&f, d);
            assert_eq!(
                classify(&f, &pm, f.minus_one()),
                Classification::PcN,
                "x^{d} over GF({p}^{m})"
            );
        }
    }

    #[test]
    fn spectrum_hand_cases() {
        let f3 = build_field(3, 1).unwrap();
        let pm = PowerMap::new(&f3, 4);
        let s = c_spectrum(&f3, &pm, f3.element(2).unwrap());
        assert_eq!(s.omega, vec![1, 1, 1]);

        // The theorem pair for p = 3, m = 2: k = 1 gives d = 4 and, for c
        // outside GF(3), spectrum (3, 3, 3).
        let f9 = build_field(3, 2).unwrap();
        let quartic = PowerMap::new(&f9, 4);
        for c in f9.elements() {
            if c.code() == 1 || f9.in_subfield(c, 1) {
                continue;
            }
            let s = c_spectrum(&f9, &quartic, c);
            assert_eq!(s.omega, vec![3, 3, 3], "c = {}", c.code());
        }

        // d = 10 reduces to x^2, whose spectrum is (4, 1, 4) for any c != 1.
        let square_like = PowerMap::new(&f9, 10);
        assert_eq!(square_like.d_reduced(), 2);
        for c in f9.elements() {
            if c.code() == 1 {
                continue;
            }
            let s = c_spectrum(&f9, &square_like, c);
            assert_eq!(s.omega, vec![4, 1, 4], "c = {}", c.code());
        }

        // Bijective map at c = 0: omega_1 = p^m.
        let f8 = build_field(2, 3).unwrap();
        let bij = PowerMap::new(&f8, 3);
        let s = c_spectrum(&f8, &bij, f8.zero());
        assert_eq!(s.omega, vec![0, 8]);
    }

    #[test]
    fn spectrum_identities_across_fields() {
        for (p, m) in [(2u64, 4u32), (3, 2), (5, 2), (7, 1), (3, 3)] {
            let f = build_field(p, m).unwrap();
            for d in 1..f.order() {
                let pm = PowerMap::new(&f, d);
                for c_code in [0, f.p() - 1, f.generator().code()] {
                    let c = f.element(c_code).unwrap();
                    let s = c_spectrum(&f, &pm, c);
                    assert!(s.identities_hold(f.order()), "({p},{m},{d},{c_code})");
                }
            }
        }
    }

    #[test]
    fn row_sums_match_field_order() {
        // For every fixed (c, a): sum_b c_delta = p^m, exhaustively on
        // every field of order up to 5^3. One counting pass per (c, a)
        // yields all b totals at once.
        for p in 2u64..=125 {
            if !crate::gf::is_prime(p) {
                continue;
            }
            let mut m = 1u32;
            while (p as u128).pow(m) <= 125 {
                let f = build_field(p, m).unwrap();
                let q = f.order();
                for d in [2u64, q - 2] {
                    if d == 0 {
                        continue;
                    }
                    let pm = PowerMap::new(&f, d);
                    for c in 0..q {
                        for a in 0..q {
                            let mut total = 0u64;
                            let mut max_b_hits = vec![0u32; q as usize];
                            for x in 0..q {
                                let v = f.sub_code(
                                    f.pow_code(f.add_code(x, a), pm.d_reduced()),
                                    f.mul_code(c, f.pow_code(x, pm.d_reduced())),
                                );
                                max_b_hits[v as usize] += 1;
                            }
                            for n in max_b_hits {
                                total += n as u64;
                            }
                            assert_eq!(total, q, "GF({p}^{m}) d={d} c={c} a={a}");
                        }
                    }
                }
                m += 1;
            }
        }
    }

    #[test]
    fn c1_branch_squares_are_pn() {
        // Classical planarity of x^2 for odd p exercises the c = 1 branch.
        for (p, m) in [(3u64, 2u32), (5, 1), (7, 1), (3, 3)] {
            let f = build_field(p, m).unwrap();
            let pm = PowerMap::new(&f, 2);
            let rep = c_uniformity(&f, &pm, f.one());
            assert!(rep.c_is_one);
            assert_eq!(rep.uniformity, 1, "x^2 over GF({p}^{m}) at c = 1");
        }
    }

    #[test]
    fn all_a_reduction_spot_checks() {
        for (p, m) in [(3u64, 2u32), (2, 3), (5, 1)] {
            let f = build_field(p, m).unwrap();
            for d in 1..f.order() {
                let pm = PowerMap::new(&f, d);
                for c in f.elements() {
                    let fast = c_uniformity(&f, &pm, c).uniformity;
                    let brute = c_uniformity_all_a(&f, &pm, c);
                    assert_eq!(fast, brute, "({p},{m}) d={d} c={}", c.code());
                }
            }
        }
    }
}
