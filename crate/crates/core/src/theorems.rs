//! Every known PcN/APcN criterion encoded as an applicability-checked
//! predictor, plus the congruence solvers that generate the exponent
//! families.
//!
//! Predictors never guess outside their stated hypotheses: when a criterion
//! does not apply they return a not-applicable record with the reason.
//! Criteria quoted from external sources are claims-to-verify, not trusted
//! facts — [`crate::oracle::verify_prediction`] arbitrates every claim
//! against exhaustive measurement, and a refuted claim is a reported finding
//! rather than an internal error.

use crate::cdiff::PowerMap;
use crate::gf::{gcd, mod_inverse, mod_pow, FieldElement, FieldSpec};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub const GOLD_GF2: &str = "gold-gf2";
pub const COROLLARY_GF2: &str = "corollary-gf2";
pub const HALF_GOLD: &str = "half-gold";
pub const THM_3MOD4: &str = "thm-3mod4";
pub const THM_1MOD4: &str = "thm-1mod4";
pub const APCN_SPECTRUM: &str = "apcn-spectrum";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremError {
    RequiresBinaryField,
    RequiresOddCharacteristic,
    CMustNotBeOne,
    ExponentNotInvertible { d: u64, modulus: u64 },
}

impl fmt::Display for TheoremError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremError::RequiresBinaryField => write!(f, "criterion requires p = 2"),
            TheoremError::RequiresOddCharacteristic => write!(f, "criterion requires odd p"),
            TheoremError::CMustNotBeOne => write!(f, "c = 1 is excluded"),
            TheoremError::ExponentNotInvertible { d, modulus } => {
                write!(f, "exponent {} is not invertible mod {}", d, modulus)
            }
        }
    }
}

impl std::error::Error for TheoremError {}

/// What a criterion asserts about a power map at a given `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    Pcn,
    /// Negative direction of an if-and-only-if criterion.
    NotPcn,
    Apcn,
    Uniformity { value: u64 },
    ApcnSpectrum { omega0: u64, omega1: u64, omega2: u64 },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Pcn => write!(f, "PcN"),
            Claim::NotPcn => write!(f, "not PcN"),
            Claim::Apcn => write!(f, "APcN"),
            Claim::Uniformity { value } => write!(f, "uniformity {}", value),
            Claim::ApcnSpectrum {
                omega0,
                omega1,
                omega2,
            } => write!(f, "APcN with spectrum ({omega0}, {omega1}, {omega2})"),
        }
    }
}

/// A criterion-backed claim with provenance and applicability status. A
/// claim is present exactly when `applicable` is true.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub theorem_id: &'static str,
    pub applicable: bool,
    pub reason: String,
    pub claim: Option<Claim>,
    pub citation: &'static str,
}

impl Prediction {
    fn yes(id: &'static str, citation: &'static str, reason: String, claim: Claim) -> Prediction {
        Prediction {
            theorem_id: id,
            applicable: true,
            reason,
            claim: Some(claim),
            citation,
        }
    }

    fn no(id: &'static str, citation: &'static str, reason: String) -> Prediction {
        Prediction {
            theorem_id: id,
            applicable: false,
            reason,
            claim: None,
            citation,
        }
    }
}

fn v2u(n: u64) -> u32 {
    debug_assert!(n != 0);
    n.trailing_zeros()
}

/// Canonical exponent representative in `[1, n]`.
fn reduce_exponent(x: u64, n: u64) -> u64 {
    if n == 0 {
        return x;
    }
    let r = x % n;
    if r == 0 {
        n
    } else {
        r
    }
}

/// `(p^k + 1) mod n`, overflow-free.
fn gold_exponent_mod(p: u64, k: u32, n: u64) -> u64 {
    (mod_pow(p, k as u64, n) + 1) % n
}

/// `((p^k + 1)/2) mod n` for odd `p`, overflow-free: a residue of `p^k`
/// mod `2n` pins the residue of the half mod `n`.
fn half_gold_exponent_mod(p: u64, k: u32, n: u64) -> u64 {
    let h = mod_pow(p, k as u64, 2 * n);
    ((h + 1) / 2) % n
}

const GOLD_GF2_CITATION: &str =
    "x^(2^k+1) over GF(2^m) is PcN iff v2(m) <= v2(k) and c lies in GF(2^gcd(k,m)) \\ {1}";

/// If-and-only-if PcN criterion for the Gold map `x^(2^k+1)` over `GF(2^m)`.
/// Subfield membership is decided by the Frobenius fixed-point test
/// `c^(2^gcd(k,m)) = c`. `c = 1` is rejected: no map is PcN at `c = 1` in
/// even characteristic.
pub fn predict_gold_gf2(
    f: &FieldSpec,
    k: u32,
    c: FieldElement,
) -> Result<Prediction, TheoremError> {
    if f.p() != 2 {
        return Err(TheoremError::RequiresBinaryField);
    }
    if c == f.one() {
        return Err(TheoremError::CMustNotBeOne);
    }
    assert!(k >= 1, "gold exponent requires k >= 1");
    let m = f.m();
    let g = gcd(k as u64, m as u64) as u32;
    let v_ok = v2u(m as u64) <= v2u(k as u64);
    let c_ok = f.in_subfield(c, g);
    let claim = if v_ok && c_ok { Claim::Pcn } else { Claim::NotPcn };
    let reason = format!(
        "v2(m)={} vs v2(k)={}; c^(2^{g}) {} c",
        v2u(m as u64),
        v2u(k as u64),
        if c_ok { "=" } else { "!=" },
    );
    Ok(Prediction::yes(GOLD_GF2, GOLD_GF2_CITATION, reason, claim))
}

/// One exponent of the predicted PcN family over `GF(2^m)`, with the
/// subfield degrees `g` for which every `c` in `GF(2^g) \ {1}` is admissible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryEntry {
    pub d: u64,
    pub subfield_degrees: Vec<u32>,
}

/// The full predicted PcN exponent set over `GF(2^m)`: powers of two (any
/// `c != 1`), the shifted Gold exponents `2^j (2^k+1)` with
/// `v2(m) <= v2(k)`, and their multiplicative inverses mod `2^m - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollarySet {
    pub m: u32,
    pub entries: Vec<CorollaryEntry>,
}

impl CorollarySet {
    pub fn exponents(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.d).collect()
    }

    pub fn entry(&self, d_reduced: u64) -> Option<&CorollaryEntry> {
        self.entries.iter().find(|e| e.d == d_reduced)
    }

    /// Is `(d, c)` predicted PcN? (`c = 1` never is.)
    pub fn admits(&self, f: &FieldSpec, d_reduced: u64, c: FieldElement) -> bool {
        if c == f.one() {
            return false;
        }
        self.entry(d_reduced)
            .map(|e| e.subfield_degrees.iter().any(|&g| f.in_subfield(c, g)))
            .unwrap_or(false)
    }

    /// Expands to explicit `(d, c_code)` pairs. `c = 1` is always excluded;
    /// `c = 0` only included on request.
    pub fn pairs(&self, f: &FieldSpec, include_c_zero: bool) -> BTreeSet<(u64, u64)> {
        let mut out = BTreeSet::new();
        for e in &self.entries {
            for c in f.elements() {
                if c.code() == 1 || (c.code() == 0 && !include_c_zero) {
                    continue;
                }
                if e.subfield_degrees.iter().any(|&g| f.in_subfield(c, g)) {
                    out.insert((e.d, c.code()));
                }
            }
        }
        out
    }
}

/// Builds the predicted PcN family over `GF(2^m)`, `m >= 2`. Exponents are
/// reduced to `[1, 2^m - 1]` and deduplicated; when several routes predict
/// the same exponent their admissible subfields are merged.
///
/// Gold residues only depend on `k mod m` while `gcd(k, m)` is stable under
/// `k -> k + m`, so scanning `k` in `[1, m]` (with `k = m` standing for the
/// multiples of `m`, which collapse to the powers of two) covers every
/// positive `k` with `v2(m) <= v2(k)`.
pub fn corollary_pcn_set_gf2(m: u32) -> CorollarySet {
    assert!(m >= 2, "corollary set requires m >= 2");
    let n = (1u64 << m) - 1;
    let mut families: BTreeMap<u64, BTreeSet<u32>> = BTreeMap::new();

    // Powers of two: every c != 1.
    let mut d = 1u64;
    for _ in 0..m {
        families.entry(d).or_default().insert(m);
        d = (d * 2) % n;
    }

    for k in 1..=m {
        if v2u(m as u64) > v2u(k as u64) {
            continue;
        }
        let g = gcd(k as u64, m as u64) as u32;
        let base = gold_exponent_mod(2, k, n);
        assert!(base != 0, "gold exponent collapses only when the v2 filter fails");
        let inv = mod_inverse(base, n).expect("gold exponent invertible when v2(m) <= v2(k)");
        for start in [base, inv] {
            let mut d = start;
            for _ in 0..m {
                families.entry(d).or_default().insert(g);
                d = (d * 2) % n;
            }
        }
    }

    let entries = families
        .into_iter()
        .map(|(d, degs)| CorollaryEntry {
            d,
            subfield_degrees: degs.into_iter().collect(),
        })
        .collect();
    CorollarySet { m, entries }
}

const HALF_GOLD_CITATION: &str = "x^((p^k+1)/2) over GF(p^m), c = -1, p odd, 1 <= k < m, m >= 3: \
     PcN iff v2(m) <= v2(k)+1, otherwise uniformity (p^gcd(k,m)+1)/2";

/// Stated PcN criterion for `x^((p^k+1)/2)` at `c = -1`, encoded exactly as
/// quoted (a claim-to-verify; the oracle arbitrates — and refutes its PcN
/// branch on part of the parameter range, e.g. `(p,m,k) = (3,3,1)` measures
/// uniformity 2). Outside the stated range `p odd, 1 <= k < m, m >= 3` the
/// predictor reports not-applicable rather than extrapolating.
pub fn predict_half_gold(p: u64, m: u32, k: u32) -> Prediction {
    if p == 2 {
        return Prediction::no(
            HALF_GOLD,
            HALF_GOLD_CITATION,
            "requires odd characteristic".to_string(),
        );
    }
    if !(1 <= k && k < m && m >= 3) {
        return Prediction::no(
            HALF_GOLD,
            HALF_GOLD_CITATION,
            format!("stated range needs 1 <= k < m and m >= 3; got k={k}, m={m}"),
        );
    }
    let vm = v2u(m as u64);
    let vk = v2u(k as u64);
    if vm <= vk + 1 {
        Prediction::yes(
            HALF_GOLD,
            HALF_GOLD_CITATION,
            format!("v2(m)={vm} <= v2(k)+1={}", vk + 1),
            Claim::Pcn,
        )
    } else {
        let g = gcd(k as u64, m as u64) as u32;
        let value = (p.pow(g) + 1) / 2;
        Prediction::yes(
            HALF_GOLD,
            HALF_GOLD_CITATION,
            format!("v2(m)={vm} > v2(k)+1={}", vk + 1),
            Claim::Uniformity { value },
        )
    }
}

/// The two exponent-generating congruences. `T1` is
/// `d (p^k + 1) = 2 (mod p^m - 1)`; `T2` is
/// `d (p^k + 1)/2 = (p^m + 1)/2 (mod p^m - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CongruenceFamily {
    T1,
    T2,
}

impl fmt::Display for CongruenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceFamily::T1 => write!(f, "T1"),
            CongruenceFamily::T2 => write!(f, "T2"),
        }
    }
}

/// One solution, with (for `T1`) the multiplier `ell` in
/// `d (p^k + 1) = 2 + ell (p^m - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceRoot {
    pub d: u64,
    pub ell: Option<u64>,
}

impl CongruenceRoot {
    pub fn d_is_odd(&self) -> bool {
        self.d % 2 == 1
    }

    pub fn ell_is_even(&self) -> Option<bool> {
        self.ell.map(|l| l % 2 == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceSolution {
    pub family: CongruenceFamily,
    pub p: u64,
    pub m: u32,
    pub k: u32,
    /// `p^m - 1`.
    pub modulus: u64,
    /// All solutions in `[1, p^m - 1]`, ascending.
    pub solutions: Vec<CongruenceRoot>,
}

impl CongruenceSolution {
    pub fn odd_solutions(&self) -> Vec<u64> {
        self.solutions
            .iter()
            .filter(|r| r.d_is_odd())
            .map(|r| r.d)
            .collect()
    }
}

/// All solutions of `phi * d = r (mod n)` as representatives in `[1, n]`,
/// ascending; empty when `gcd(phi, n)` does not divide `r`.
fn solve_linear_congruence(phi: u64, r: u64, n: u64) -> Vec<u64> {
    let phi = phi % n;
    let r = r % n;
    if phi == 0 {
        // gcd(0, n) = n: solvable exactly when n | r, and then every
        // residue qualifies.
        return if r == 0 { (1..=n).collect() } else { Vec::new() };
    }
    let g = gcd(phi, n);
    if r % g != 0 {
        return Vec::new();
    }
    let n1 = n / g;
    let inv = mod_inverse((phi / g) % n1, n1).expect("phi/g coprime to n/g");
    let d0 = ((r / g) as u128 * inv as u128 % n1 as u128) as u64;
    let mut out: Vec<u64> = (0..g)
        .map(|t| {
            let d = d0 + t * n1;
            if d == 0 {
                n
            } else {
                d
            }
        })
        .collect();
    out.sort_unstable();
    out
}

/// Solves the chosen exponent congruence over `GF(p^m)` (odd `p`) via
/// extended Euclid. An empty solution set is a valid outcome and coincides
/// with the gcd divisibility test failing.
pub fn solve_congruence(
    p: u64,
    m: u32,
    k: u32,
    family: CongruenceFamily,
) -> Result<CongruenceSolution, TheoremError> {
    if p == 2 {
        return Err(TheoremError::RequiresOddCharacteristic);
    }
    assert!(k >= 1 && m >= 1);
    let q = p.checked_pow(m).expect("field order fits u64");
    let n = q - 1;
    let (phi, r) = match family {
        CongruenceFamily::T1 => (gold_exponent_mod(p, k, n), 2 % n),
        CongruenceFamily::T2 => (half_gold_exponent_mod(p, k, n), ((q + 1) / 2) % n),
    };
    let pk_full = (p as u128).checked_pow(k);
    let solutions = solve_linear_congruence(phi, r, n)
        .into_iter()
        .map(|d| {
            let ell = match (family, pk_full) {
                (CongruenceFamily::T1, Some(pk)) => {
                    Some(((d as u128 * (pk + 1) - 2) / n as u128) as u64)
                }
                _ => None,
            };
            CongruenceRoot { d, ell }
        })
        .collect();
    Ok(CongruenceSolution {
        family,
        p,
        m,
        k,
        modulus: n,
        solutions,
    })
}

const THM_3MOD4_CITATION: &str = "p^m = 3 (mod 4), d (p^k+1) = 2 (mod p^m-1), c = -1: \
     x^d is PcN iff d is odd";

/// PcN criterion at `c = -1` for fields with `p^m = 3 (mod 4)`: applicable
/// when `d (p^k+1) = 2 (mod p^m-1)`, and then PcN exactly for odd `d`.
pub fn predict_thm_3mod4(p: u64, m: u32, k: u32, d: u64) -> Prediction {
    if p == 2 {
        return Prediction::no(
            THM_3MOD4,
            THM_3MOD4_CITATION,
            "requires odd characteristic".to_string(),
        );
    }
    assert!(k >= 1 && m >= 1);
    let q = p.checked_pow(m).expect("field order fits u64");
    if q % 4 != 3 {
        return Prediction::no(
            THM_3MOD4,
            THM_3MOD4_CITATION,
            format!("p^m = {} (mod 4)", q % 4),
        );
    }
    let n = q - 1;
    let lhs = (d % n) as u128 * gold_exponent_mod(p, k, n) as u128 % n as u128;
    if lhs != (2 % n) as u128 {
        return Prediction::no(
            THM_3MOD4,
            THM_3MOD4_CITATION,
            format!("d (p^k+1) = {lhs} (mod {n}), not 2; k={k}"),
        );
    }
    // Representatives mod p^m - 1 (even) share a parity, so "d odd" is
    // well-defined on the reduced exponent.
    let claim = if d % 2 == 1 { Claim::Pcn } else { Claim::NotPcn };
    Prediction::yes(
        THM_3MOD4,
        THM_3MOD4_CITATION,
        format!("d (p^k+1) = 2 (mod {n}) with k={k}; d is {}", parity(d)),
        claim,
    )
}

const THM_1MOD4_CITATION: &str =
    "p^m = 1 (mod 4), v2(k) = v2(m), d (p^k+1)/2 = (p^m+1)/2 (mod p^m-1), \
     c = -1: x^d is PcN";

/// PcN criterion at `c = -1` for fields with `p^m = 1 (mod 4)`: applicable
/// when `v2(k) = v2(m)` and `d (p^k+1)/2 = (p^m+1)/2 (mod p^m-1)`.
pub fn predict_thm_1mod4(p: u64, m: u32, k: u32, d: u64) -> Prediction {
    if p == 2 {
        return Prediction::no(
            THM_1MOD4,
            THM_1MOD4_CITATION,
            "requires odd characteristic".to_string(),
        );
    }
    assert!(k >= 1 && m >= 1);
    let q = p.checked_pow(m).expect("field order fits u64");
    if q % 4 != 1 {
        return Prediction::no(
            THM_1MOD4,
            THM_1MOD4_CITATION,
            format!("p^m = {} (mod 4)", q % 4),
        );
    }
    if v2u(k as u64) != v2u(m as u64) {
        return Prediction::no(
            THM_1MOD4,
            THM_1MOD4_CITATION,
            format!("v2(k)={} != v2(m)={}", v2u(k as u64), v2u(m as u64)),
        );
    }
    let n = q - 1;
    let lhs = (d % n) as u128 * half_gold_exponent_mod(p, k, n) as u128 % n as u128;
    let rhs = (((q + 1) / 2) % n) as u128;
    if lhs != rhs {
        return Prediction::no(
            THM_1MOD4,
            THM_1MOD4_CITATION,
            format!("d (p^k+1)/2 = {lhs} (mod {n}), not {rhs}; k={k}"),
        );
    }
    Prediction::yes(
        THM_1MOD4,
        THM_1MOD4_CITATION,
        format!("d (p^k+1)/2 = (p^m+1)/2 (mod {n}) with k={k}"),
        Claim::Pcn,
    )
}

const APCN_SPECTRUM_CITATION: &str = "x^(p^k+1) over GF(p^m), p odd, c != 1: \
     for c in GF(p^gcd(m,k)) APcN with spectrum ((p^m-1)/2, 1, (p^m-1)/2) iff v2(m) <= v2(k); \
     for c outside GF(p^gcd(m,k)) APcN with spectrum ((p^m-p^(m/2))/2, p^(m/2), (p^m-p^(m/2))/2) \
     iff m even and k = m/2";

/// APcN spectrum criterion for the Gold map `x^(p^k+1)` over odd-`p` fields.
pub fn predict_apcn_spectrum(
    f: &FieldSpec,
    k: u32,
    c: FieldElement,
) -> Result<Prediction, TheoremError> {
    if f.p() == 2 {
        return Err(TheoremError::RequiresOddCharacteristic);
    }
    if c == f.one() {
        return Err(TheoremError::CMustNotBeOne);
    }
    assert!(k >= 1);
    let m = f.m();
    let q = f.order();
    let g = gcd(k as u64, m as u64) as u32;
    if f.in_subfield(c, g) {
        if v2u(m as u64) <= v2u(k as u64) {
            Ok(Prediction::yes(
                APCN_SPECTRUM,
                APCN_SPECTRUM_CITATION,
                format!("c in GF(p^{g}) and v2(m) <= v2(k); k={k}"),
                Claim::ApcnSpectrum {
                    omega0: (q - 1) / 2,
                    omega1: 1,
                    omega2: (q - 1) / 2,
                },
            ))
        } else {
            Ok(Prediction::no(
                APCN_SPECTRUM,
                APCN_SPECTRUM_CITATION,
                format!(
                    "c in GF(p^{g}) but v2(m)={} > v2(k)={}; not APcN by the criterion",
                    v2u(m as u64),
                    v2u(k as u64)
                ),
            ))
        }
    } else if m % 2 == 0 && k == m / 2 {
        let root = f.p().pow(m / 2);
        Ok(Prediction::yes(
            APCN_SPECTRUM,
            APCN_SPECTRUM_CITATION,
            format!("c outside GF(p^{g}), m even, k = m/2 = {k}"),
            Claim::ApcnSpectrum {
                omega0: (q - root) / 2,
                omega1: root,
                omega2: (q - root) / 2,
            },
        ))
    } else {
        Ok(Prediction::no(
            APCN_SPECTRUM,
            APCN_SPECTRUM_CITATION,
            format!("c outside GF(p^{g}) and (m even, k = m/2) fails; k={k}, m={m}"),
        ))
    }
}

/// Dual pair of a power map: `x^d` at `c` is PcN exactly when `x^(d^-1)` at
/// `c' = c^d` is, where `d^-1` inverts `d` mod `p^m - 1`. For `c` in
/// `{0, 1, -1}` the dual keeps `c' = c`.
pub fn inverse_exponent_dual(
    f: &FieldSpec,
    d: u64,
    c: FieldElement,
) -> Result<(u64, FieldElement), TheoremError> {
    let n = f.order() - 1;
    if n <= 1 {
        return Ok((1, c));
    }
    let dr = d % n;
    if gcd(dr, n) != 1 {
        return Err(TheoremError::ExponentNotInvertible { d, modulus: n });
    }
    let d_inv = mod_inverse(dr, n).expect("coprime exponent inverts");
    let c_prime = f.pow(c, d);
    if c.code() == 0 || c == f.one() || c == f.minus_one() {
        // Invertible d is odd whenever p^m - 1 is even, so (-1)^d = -1.
        assert_eq!(c_prime, c, "dual keeps c fixed for c in {{0, 1, -1}}");
    }
    Ok((d_inv, c_prime))
}

// ---------------------------------------------------------------------------
// Known-family knowledge base
// ---------------------------------------------------------------------------

struct FamilyRow {
    id: &'static str,
    citation: &'static str,
    delta: u64,
}

const fn row(id: &'static str, citation: &'static str, delta: u64) -> FamilyRow {
    FamilyRow { id, citation, delta }
}

impl FamilyRow {
    fn claim(&self) -> Claim {
        match self.delta {
            1 => Claim::Pcn,
            2 => Claim::Apcn,
            v => Claim::Uniformity { value: v },
        }
    }

    fn fire(&self, reason: String) -> Prediction {
        Prediction::yes(self.id, self.citation, reason, self.claim())
    }
}

/// Matches `(p, m, d, c)` against every row of the known PcN/APcN
/// power-function table and returns the claims of all matching rows. Rows
/// quote external results; each returned claim is meant to be verified
/// against measurement, never trusted.
pub fn known_families_lookup(f: &FieldSpec, d: u64, c: FieldElement) -> Vec<Prediction> {
    let p = f.p();
    let m = f.m();
    let q = f.order();
    let n = q - 1;
    let dr = PowerMap::new(f, d).d_reduced();
    let minus_one = f.minus_one();
    let mut out = Vec::new();

    if c == f.one() {
        return out;
    }

    let matches = |pattern: u128| -> bool {
        pattern >= 1 && n >= 1 && reduce_exponent((pattern % n as u128) as u64, n) == dr
    };
    // Residues of p^k repeat with period m while parities and gcds of k
    // stabilize within 2m, so scanning k up to 2m covers every family below.
    let k_range = 1..=(2 * m);

    // d = 2, any c != 1 (odd p): APcN.
    let r1 = row("table-row-1", "x^2, p odd, c != 1: APcN", 2);
    if p != 2 && matches(2) {
        out.push(r1.fire("d = 2, c != 1".into()));
    }

    // d = p^m - 2, c = 0: PcN (inverse map is a permutation).
    let r2 = row("table-row-2", "x^(p^m-2), c = 0: PcN", 1);
    if c.code() == 0 && q >= 3 && matches(q as u128 - 2) {
        out.push(r2.fire("d = p^m - 2, c = 0".into()));
    }

    // p = 2, d = 2^m - 2, c != 0 with Tr(c) = Tr(1/c) = 1: APcN.
    let r3 = row(
        "table-row-3",
        "x^(2^m-2) over GF(2^m), c != 0, Tr(c) = Tr(1/c) = 1: APcN",
        2,
    );
    if p == 2 && c.code() != 0 && q >= 3 && matches(q as u128 - 2) {
        let inv_c = f.inv(c).expect("nonzero");
        if f.trace(c) == f.one() && f.trace(inv_c) == f.one() {
            out.push(r3.fire("both traces are 1".into()));
        }
    }

    // p odd, d = p^m - 2, c = 4, 1/4, or chi(c^2-4c) = chi(1-4c) = -1.
    let r4 = row(
        "table-row-4",
        "x^(p^m-2), p odd, c = 4, 1/4, or chi(c^2-4c) = chi(1-4c) = -1: APcN",
        2,
    );
    if p != 2 && matches(q as u128 - 2) {
        let four = f.scalar(4);
        let mut hit = four.code() != 1 && (c == four || Some(c) == f.inv(four));
        if !hit && c.code() != 0 {
            let a = f.sub(f.mul(c, c), f.mul(four, c));
            let b = f.sub(f.one(), f.mul(four, c));
            hit = f.quadratic_character(a).unwrap() == -1
                && f.quadratic_character(b).unwrap() == -1;
        }
        if hit {
            out.push(r4.fire("inverse-map APcN condition on c holds".into()));
        }
    }

    // p = 3, d = (3^k+1)/2 with m | k, c = -1: PcN.
    let r5 = row(
        "table-row-5",
        "x^((3^k+1)/2) over GF(3^m), c = -1, m/gcd(k,m) = 1: PcN",
        1,
    );
    if p == 3 && c == minus_one {
        for k in k_range.clone() {
            let pattern = (3u128.pow(k) + 1) / 2;
            if matches(pattern) && gcd(k as u64, m as u64) == m as u64 {
                out.push(r5.fire(format!("k = {k}, m | k")));
                break;
            }
        }
    }

    // Fixed-degree c = -1 families, p odd.
    if p != 2 && c == minus_one {
        let pw = p as u128;
        let r6 = row("table-row-6", "x^((p^2+1)/2), c = -1, m odd: PcN", 1);
        let r7 = row("table-row-7", "x^(p^2-p+1), c = -1, m = 3: PcN", 1);
        let r8 = row(
            "table-row-8",
            "x^(p^4+(p-2)p^2+(p-1)p+1), c = -1, m = 5: PcN",
            1,
        );
        let r9 = row("table-row-9", "x^((p^5+1)/(p+1)), c = -1, m = 5: PcN", 1);
        let r10 = row(
            "table-row-10",
            "x^((p-1)p^6+p^5+(p-2)p^3+(p-1)p^2+p), c = -1, m = 7: PcN",
            1,
        );
        let r11 = row(
            "table-row-11",
            "x^((p-2)p^6+(p-2)p^5+(p-1)p^4+p^3+p^2+p), c = -1, m = 7: PcN",
            1,
        );
        let r12 = row("table-row-12", "x^((p^7+1)/(p+1)), c = -1, m = 7: PcN", 1);
        let fixed: [(FamilyRow, bool, u128); 7] = [
            (r6, m % 2 == 1, (pw * pw + 1) / 2),
            (r7, m == 3, pw * pw - pw + 1),
            (r8, m == 5, pw.pow(4) + (pw - 2) * pw * pw + (pw - 1) * pw + 1),
            (r9, m == 5, (pw.pow(5) + 1) / (pw + 1)),
            (
                r10,
                m == 7,
                (pw - 1) * pw.pow(6) + pw.pow(5) + (pw - 2) * pw.pow(3) + (pw - 1) * pw * pw + pw,
            ),
            (
                r11,
                m == 7,
                (pw - 2) * pw.pow(6) + (pw - 2) * pw.pow(5) + (pw - 1) * pw.pow(4)
                    + pw.pow(3)
                    + pw * pw
                    + pw,
            ),
            (r12, m == 7, (pw.pow(7) + 1) / (pw + 1)),
        ];
        for (r, cond, pattern) in fixed {
            if cond && matches(pattern) {
                out.push(r.fire("fixed-exponent family matches".into()));
            }
        }
    }

    // p = 3, d = (3^m+3)/2, m even, c = -1: APcN.
    let r13 = row(
        "table-row-13",
        "x^((3^m+3)/2) over GF(3^m), c = -1, m even: APcN",
        2,
    );
    if p == 3 && m % 2 == 0 && c == minus_one && matches((q as u128 + 3) / 2) {
        out.push(r13.fire("d = (3^m+3)/2, m even".into()));
    }

    // p = 3, d = 3^m - 3, c = 0: APcN.
    let r14 = row("table-row-14", "x^(3^m-3) over GF(3^m), c = 0: APcN", 2);
    if p == 3 && c.code() == 0 && q >= 4 && matches(q as u128 - 3) {
        out.push(r14.fire("d = 3^m - 3, c = 0".into()));
    }

    // p odd, d = (p^k+1)/2, v2(m) <= v2(k)+1, c = -1: PcN.
    let r15 = row(
        "table-row-15",
        "x^((p^k+1)/2), p odd, v2(m) <= v2(k)+1, c = -1: PcN",
        1,
    );
    if p != 2 && c == minus_one {
        for k in k_range.clone() {
            let pattern = ((p as u128).pow(k) + 1) / 2;
            if matches(pattern) && v2u(m as u64) <= v2u(k as u64) + 1 {
                out.push(r15.fire(format!("k = {k}")));
                break;
            }
        }
    }

    // p odd, d = p^k+1, v2(m) <= v2(k), c in GF(p^gcd(m,k)) \ {1}: APcN.
    let r16 = row(
        "table-row-16",
        "x^(p^k+1), p odd, v2(m) <= v2(k), 1 != c in GF(p^gcd(m,k)): APcN",
        2,
    );
    if p != 2 {
        for k in k_range.clone() {
            let pattern = (p as u128).pow(k) + 1;
            if matches(pattern)
                && v2u(m as u64) <= v2u(k as u64)
                && f.in_subfield(c, gcd(k as u64, m as u64) as u32)
            {
                out.push(r16.fire(format!("k = {k}")));
                break;
            }
        }
    }

    // p = 2, d = 2^k+1, k >= 2, v2(m) <= v2(k), c in GF(2^gcd(k,m)) \ {1}.
    let r17 = row(
        "table-row-17",
        "x^(2^k+1), k >= 2, v2(m) <= v2(k), 1 != c in GF(2^gcd(k,m)): PcN",
        1,
    );
    if p == 2 {
        for k in k_range.clone() {
            if k < 2 {
                continue;
            }
            let pattern = (1u128 << k) + 1;
            if matches(pattern)
                && v2u(m as u64) <= v2u(k as u64)
                && f.in_subfield(c, gcd(k as u64, m as u64) as u32)
            {
                out.push(r17.fire(format!("k = {k}")));
                break;
            }
        }
    }

    // Congruence-defined rows: d odd with d (p^k+1)/2 = (p^m+1)/2.
    let r18 = row(
        "table-row-18",
        "p = 3, d odd, d (3^k+1)/2 = (3^m+1)/2 (mod 3^m-1), k and m odd, gcd(k,m) = 1, c = -1: PcN",
        1,
    );
    let r19 = row(
        "table-row-19",
        "p = 5, d odd, d (5^k+1)/2 = (5^m+1)/2 (mod 5^m-1), gcd(2m,k) = 1, c = -1: PcN",
        1,
    );
    if (p == 3 || p == 5) && c == minus_one && dr % 2 == 1 && n >= 2 {
        let rhs = ((q + 1) / 2) % n;
        let mut hit3 = false;
        let mut hit5 = false;
        for k in k_range {
            let lhs = (dr as u128 * half_gold_exponent_mod(p, k, n) as u128 % n as u128) as u64;
            if lhs != rhs {
                continue;
            }
            if p == 3 && !hit3 && m % 2 == 1 && k % 2 == 1 && gcd(k as u64, m as u64) == 1 {
                out.push(r18.fire(format!("k = {k}")));
                hit3 = true;
            }
            if p == 5 && !hit5 && gcd(2 * m as u64, k as u64) == 1 {
                out.push(r19.fire(format!("k = {k}")));
                hit5 = true;
            }
        }
    }

    out
}

/// Every prediction any encoded criterion makes about `(d, c)` over the
/// given field: the knowledge-base rows plus the parametric predictors,
/// deduplicated by (criterion, claim).
pub fn predictions_for(f: &FieldSpec, d: u64, c: FieldElement) -> Vec<Prediction> {
    let p = f.p();
    let m = f.m();
    let n = f.order() - 1;
    let dr = PowerMap::new(f, d).d_reduced();
    let mut out = known_families_lookup(f, d, c);

    if p == 2 {
        if c != f.one() && n >= 1 {
            for k in 1..=2 * m {
                if reduce_exponent(gold_exponent_mod(2, k, n), n) == dr {
                    if let Ok(pr) = predict_gold_gf2(f, k, c) {
                        out.push(pr);
                    }
                }
            }
            if m >= 2 && corollary_pcn_set_gf2(m).admits(f, dr, c) {
                out.push(Prediction::yes(
                    COROLLARY_GF2,
                    "over GF(2^m), powers of two, shifted Gold exponents 2^j (2^k+1) with \
                     v2(m) <= v2(k), and their inverses are PcN for c in GF(2^gcd(k,m)) \\ {1}",
                    "exponent belongs to the predicted PcN family".into(),
                    Claim::Pcn,
                ));
            }
        }
    } else {
        if c == f.minus_one() {
            for k in 1..=2 * m {
                if reduce_exponent(half_gold_exponent_mod(p, k, n), n) == dr {
                    let pr = predict_half_gold(p, m, k);
                    if pr.applicable {
                        out.push(pr);
                    }
                }
                let pr = predict_thm_3mod4(p, m, k, dr);
                if pr.applicable {
                    out.push(pr);
                }
                let pr = predict_thm_1mod4(p, m, k, dr);
                if pr.applicable {
                    out.push(pr);
                }
            }
        }
        if c != f.one() {
            for k in 1..=2 * m {
                if reduce_exponent(gold_exponent_mod(p, k, n), n) == dr {
                    if let Ok(pr) = predict_apcn_spectrum(f, k, c) {
                        if pr.applicable {
                            out.push(pr);
                        }
                    }
                }
            }
        }
    }

    let mut seen: Vec<(&'static str, Option<Claim>)> = Vec::new();
    out.retain(|pr| {
        let key = (pr.theorem_id, pr.claim);
        if seen.contains(&key) {
            false
        } else {
            seen.push(key);
            true
        }
    });
    out
}

fn parity(d: u64) -> &'static str {
    if d % 2 == 0 {
        "even"
    } else {
        "odd"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn gold_gf2_examples() {
        let f64 = build_field(2, 6).unwrap();
        // c in GF(4) \ {1}: PcN for k = 2.
        for c in f64.elements() {
            if c.code() == 1 || !f64.in_subfield(c, 2) {
                continue;
            }
            let pr = predict_gold_gf2(&f64, 2, c).unwrap();
            assert_eq!(pr.claim, Some(Claim::Pcn));
        }
        // k = 1 fails the valuation test for every c.
        for c in f64.elements() {
            if c.code() == 1 {
                continue;
            }
            let pr = predict_gold_gf2(&f64, 1, c).unwrap();
            assert_eq!(pr.claim, Some(Claim::NotPcn));
        }
        // GF(8), k = 1, c = 0: PcN.
        let f8 = build_field(2, 3).unwrap();
        let pr = predict_gold_gf2(&f8, 1, f8.zero()).unwrap();
        assert_eq!(pr.claim, Some(Claim::Pcn));
        assert_eq!(
            predict_gold_gf2(&f8, 1, f8.one()).unwrap_err(),
            TheoremError::CMustNotBeOne
        );
    }

    #[test]
    fn corollary_sets_small_m() {
        let s6 = corollary_pcn_set_gf2(6);
        assert_eq!(
            s6.exponents(),
            vec![1, 2, 4, 5, 8, 10, 13, 16, 17, 19, 20, 26, 32, 34, 38, 40, 41, 52]
        );
        // Powers of two admit every c != 1; the Gold part only GF(4) \ {1}.
        let f = build_field(2, 6).unwrap();
        let e1 = s6.entry(1).unwrap();
        assert!(e1.subfield_degrees.contains(&6));
        let e5 = s6.entry(5).unwrap();
        assert_eq!(e5.subfield_degrees, vec![2]);
        for c in f.elements() {
            let expect = c.code() != 1 && f.in_subfield(c, 2);
            assert_eq!(s6.admits(&f, 5, c), expect);
        }

        let s3 = corollary_pcn_set_gf2(3);
        assert_eq!(s3.exponents(), vec![1, 2, 3, 4, 5, 6]);
        let f8 = build_field(2, 3).unwrap();
        assert!(s3.admits(&f8, 3, f8.zero()));
        assert!(!s3.admits(&f8, 3, f8.element(2).unwrap()));

        let s2 = corollary_pcn_set_gf2(2);
        assert_eq!(s2.exponents(), vec![1, 2]);
        for e in &s2.entries {
            assert_eq!(e.subfield_degrees, vec![2]);
        }
    }

    #[test]
    fn half_gold_branches() {
        assert_eq!(predict_half_gold(3, 3, 1).claim, Some(Claim::Pcn));
        assert_eq!(
            predict_half_gold(3, 4, 1).claim,
            Some(Claim::Uniformity { value: 2 })
        );
        assert_eq!(predict_half_gold(5, 4, 2).claim, Some(Claim::Pcn));
        // Outside the stated range: not applicable, no claim.
        assert!(!predict_half_gold(3, 2, 1).applicable);
        assert!(!predict_half_gold(3, 3, 3).applicable);
        assert!(!predict_half_gold(2, 4, 1).applicable);
    }

    #[test]
    fn congruence_solver_examples() {
        let s = solve_congruence(3, 5, 1, CongruenceFamily::T1).unwrap();
        assert_eq!(
            s.solutions.iter().map(|r| r.d).collect::<Vec<_>>(),
            vec![61, 182]
        );
        assert_eq!(s.odd_solutions(), vec![61]);
        for r in &s.solutions {
            // Direct modular verification of the defining congruence.
            assert_eq!(r.d * 4 % 242, 2);
            assert_eq!(r.ell, Some((r.d * 4 - 2) / 242));
        }

        let s = solve_congruence(5, 5, 1, CongruenceFamily::T2).unwrap();
        assert_eq!(
            s.solutions.iter().map(|r| r.d).collect::<Vec<_>>(),
            vec![521]
        );
        assert_eq!(521 * 3 % 3124, 1563 % 3124);

        let s = solve_congruence(17, 3, 1, CongruenceFamily::T2).unwrap();
        assert_eq!(
            s.solutions.iter().map(|r| r.d).collect::<Vec<_>>(),
            vec![273]
        );
        assert_eq!(273 * 9, 2457);

        assert_eq!(
            solve_congruence(2, 4, 1, CongruenceFamily::T1).unwrap_err(),
            TheoremError::RequiresOddCharacteristic
        );
    }

    #[test]
    fn congruence_even_ell_matches_half_gold_inverse() {
        // T1 solutions with even ell are inverses of (p^k+1)/2 mod p^m-1.
        for (p, m, k) in [(3u64, 4u32, 2u32), (5, 3, 1), (7, 3, 1), (5, 4, 2)] {
            let s = solve_congruence(p, m, k, CongruenceFamily::T1).unwrap();
            let n = s.modulus;
            for r in &s.solutions {
                if r.ell_is_even() == Some(true) {
                    let hg = half_gold_exponent_mod(p, k, n);
                    assert_eq!(r.d as u128 * hg as u128 % n as u128, 1);
                }
            }
        }
    }

    #[test]
    fn thm_3mod4_examples() {
        assert_eq!(predict_thm_3mod4(3, 5, 1, 61).claim, Some(Claim::Pcn));
        assert_eq!(predict_thm_3mod4(3, 5, 1, 182).claim, Some(Claim::NotPcn));
        assert_eq!(predict_thm_3mod4(7, 3, 1, 43).claim, Some(Claim::Pcn));
        assert_eq!(predict_thm_3mod4(11, 3, 1, 111).claim, Some(Claim::Pcn));
        assert!(!predict_thm_3mod4(5, 2, 1, 2).applicable); // 25 = 1 mod 4
        assert!(!predict_thm_3mod4(3, 5, 1, 60).applicable); // congruence fails
    }

    #[test]
    fn thm_1mod4_examples() {
        assert_eq!(predict_thm_1mod4(5, 5, 1, 3645).claim, Some(Claim::Pcn));
        assert_eq!(predict_thm_1mod4(13, 3, 1, 157).claim, Some(Claim::Pcn));
        assert_eq!(predict_thm_1mod4(5, 5, 1, 521).claim, Some(Claim::Pcn));
        // The reported (17, 3, 111) case fails the congruence; the solver
        // yields 273 instead.
        assert!(!predict_thm_1mod4(17, 3, 1, 111).applicable);
        assert_eq!(predict_thm_1mod4(17, 3, 1, 273).claim, Some(Claim::Pcn));
        // 3^5 = 3 mod 4.
        assert!(!predict_thm_1mod4(3, 5, 1, 61).applicable);
    }

    #[test]
    fn apcn_spectrum_cases() {
        let f3 = build_field(3, 1).unwrap();
        let pr = predict_apcn_spectrum(&f3, 1, f3.element(2).unwrap()).unwrap();
        assert_eq!(
            pr.claim,
            Some(Claim::ApcnSpectrum {
                omega0: 1,
                omega1: 1,
                omega2: 1
            })
        );

        let f9 = build_field(3, 2).unwrap();
        for c in f9.elements() {
            if c.code() == 1 || f9.in_subfield(c, 1) {
                continue;
            }
            let pr = predict_apcn_spectrum(&f9, 1, c).unwrap();
            assert_eq!(
                pr.claim,
                Some(Claim::ApcnSpectrum {
                    omega0: 3,
                    omega1: 3,
                    omega2: 3
                })
            );
        }

        let f25 = build_field(5, 2).unwrap();
        for c in f25.elements() {
            if c.code() == 1 || f25.in_subfield(c, 1) {
                continue;
            }
            let pr = predict_apcn_spectrum(&f25, 1, c).unwrap();
            assert_eq!(
                pr.claim,
                Some(Claim::ApcnSpectrum {
                    omega0: 10,
                    omega1: 5,
                    omega2: 10
                })
            );
        }

        // Subfield case with v2 failing: not applicable.
        let pr = predict_apcn_spectrum(&f9, 1, f9.element(2).unwrap()).unwrap();
        assert!(!pr.applicable);
    }

    #[test]
    fn dual_exponent_examples() {
        let f64 = build_field(2, 6).unwrap();
        let (d_inv, _) = inverse_exponent_dual(&f64, 5, f64.zero()).unwrap();
        assert_eq!(d_inv, 38);

        let f243 = build_field(3, 5).unwrap();
        let c = f243.minus_one();
        let (d_inv, c2) = inverse_exponent_dual(&f243, 61, c).unwrap();
        assert_eq!(61 * d_inv % 242, 1);
        assert_eq!(c2, c);

        let (one_inv, c3) = inverse_exponent_dual(&f243, 1, f243.element(7).unwrap()).unwrap();
        assert_eq!(one_inv, 1);
        assert_eq!(c3.code(), 7);

        assert!(matches!(
            inverse_exponent_dual(&f243, 22, c),
            Err(TheoremError::ExponentNotInvertible { .. })
        ));
    }

    #[test]
    fn known_family_rows_fire() {
        let f7 = build_field(7, 1).unwrap();
        // Row 1: d = 2, c != 1.
        let rows = known_families_lookup(&f7, 2, f7.element(3).unwrap());
        assert!(rows
            .iter()
            .any(|r| r.theorem_id == "table-row-1" && r.claim == Some(Claim::Apcn)));

        // Row 2: inverse map at c = 0.
        let rows = known_families_lookup(&f7, 5, f7.zero());
        assert!(rows
            .iter()
            .any(|r| r.theorem_id == "table-row-2" && r.claim == Some(Claim::Pcn)));

        // Row 6: (p^2+1)/2 at c = -1 over odd-degree fields.
        let f27 = build_field(3, 3).unwrap();
        let rows = known_families_lookup(&f27, 5, f27.minus_one());
        assert!(rows.iter().any(|r| r.theorem_id == "table-row-6"));

        // Row 7: p^2 - p + 1 = 7 for p = 3, m = 3.
        let rows = known_families_lookup(&f27, 7, f27.minus_one());
        assert!(rows.iter().any(|r| r.theorem_id == "table-row-7"));

        // No c = 1 matches ever.
        assert!(known_families_lookup(&f7, 2, f7.one()).is_empty());
    }

    #[test]
    fn aggregated_predictions() {
        let f243 = build_field(3, 5).unwrap();
        let preds = predictions_for(&f243, 61, f243.minus_one());
        assert!(preds.iter().any(|p| p.theorem_id == THM_3MOD4));
        assert!(preds.iter().all(|p| p.applicable == p.claim.is_some()));

        let f4913 = build_field(17, 3).unwrap();
        let preds = predictions_for(&f4913, 111, f4913.minus_one());
        assert!(preds.iter().all(|p| p.theorem_id != THM_1MOD4));
        let preds = predictions_for(&f4913, 273, f4913.minus_one());
        assert!(preds
            .iter()
            .any(|p| p.theorem_id == THM_1MOD4 && p.claim == Some(Claim::Pcn)));
    }
}
