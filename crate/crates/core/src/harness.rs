//! Claim-level verification over the group catalog.
//!
//! Each claim is checked on a `(group, prime)` cell. Implications report
//! `vacuous` when their hypothesis fails and `fail` only when the
//! hypothesis holds but the conclusion does not. The biconditional
//! (`theorem_b`) fails exactly when its two sides disagree.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{p_bar, prime_divisors};
use crate::catalog::{quaternion_by_c3, quaternion_factor, standard_catalog};
use crate::error::{GroupError, Result};
use crate::fusion::{controls_fusion, enumerate_class, FusionClass};
use crate::group::FiniteGroup;
use crate::nilpotency::{hall_petrescu_check, is_p_nilpotent, omega_bar, upper_central_series};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    TheoremB,
    #[serde(rename = "corollary_1")]
    Corollary1,
    PropositionPriddy,
    CorollaryPriddy,
    CorollaryPcentral,
    ExampleQuaternion,
}

impl ClaimId {
    pub const ALL: [ClaimId; 6] = [
        ClaimId::TheoremB,
        ClaimId::Corollary1,
        ClaimId::PropositionPriddy,
        ClaimId::CorollaryPriddy,
        ClaimId::CorollaryPcentral,
        ClaimId::ExampleQuaternion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::TheoremB => "theorem_b",
            ClaimId::Corollary1 => "corollary_1",
            ClaimId::PropositionPriddy => "proposition_priddy",
            ClaimId::CorollaryPriddy => "corollary_priddy",
            ClaimId::CorollaryPcentral => "corollary_pcentral",
            ClaimId::ExampleQuaternion => "example_quaternion",
        }
    }

    pub fn parse(s: &str) -> Option<ClaimId> {
        ClaimId::ALL.into_iter().find(|c| c.as_str() == s)
    }

    fn is_implication(self) -> bool {
        !matches!(self, ClaimId::TheoremB | ClaimId::ExampleQuaternion)
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub claim: ClaimId,
    pub group: String,
    pub prime: u64,
    pub hypothesis_held: bool,
    pub conclusion_held: bool,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Power-commutator check recorded by `corollary_pcentral` when its
    /// hypothesis holds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hall_petrescu: Option<bool>,
}

impl VerificationResult {
    fn new(claim: ClaimId, group: &str, prime: u64, hypothesis: bool, conclusion: bool) -> Self {
        let verdict = if claim.is_implication() {
            match (hypothesis, conclusion) {
                (false, _) => Verdict::Vacuous,
                (true, true) => Verdict::Pass,
                (true, false) => Verdict::Fail,
            }
        } else if hypothesis == conclusion {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationResult {
            claim,
            group: group.to_string(),
            prime,
            hypothesis_held: hypothesis,
            conclusion_held: conclusion,
            verdict,
            witness: None,
            hall_petrescu: None,
        }
    }

    fn skipped(claim: ClaimId, group: &str, prime: u64, err: &GroupError) -> Self {
        VerificationResult {
            claim,
            group: group.to_string(),
            prime,
            hypothesis_held: false,
            conclusion_held: false,
            verdict: Verdict::Skipped,
            witness: Some(json!({ "error": err.to_string() })),
            hall_petrescu: None,
        }
    }

    fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Test-only perturbations used to confirm the harness can fail.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaultInjection {
    /// Negate the fusion side of `theorem_b` on this `(group, prime)` cell.
    pub flip_fusion: Option<(String, u64)>,
}

/// Every `x ∈ P` with `x^{p̄} = 1` lies in `Z(P)`.
fn small_elements_central(sylow: &Subgroup, p: u64) -> bool {
    let g = sylow.parent();
    let center = sylow.center();
    let bar = p_bar(p);
    sylow
        .members()
        .iter()
        .filter(|&&x| bar.is_multiple_of(g.element_order(x)))
        .all(|&x| center.contains_index(x))
}

/// `N_G(P) = C_G(P)·P` as sets.
fn normalizer_splits(g: &FiniteGroup, sylow: &Subgroup) -> Result<bool> {
    let n = g.normalizer(sylow)?;
    let product = g.centralizer(sylow)?.set_product(sylow)?;
    Ok(product == n.members())
}

fn theorem_b_sides(g: &FiniteGroup, p: u64) -> Result<(bool, bool, Option<Value>)> {
    let nilpotent = is_p_nilpotent(g, p)?.p_nilpotent;
    let sylow = g.sylow_subgroup(p)?;
    let report = controls_fusion(&sylow, FusionClass::Cp(p))?;
    let witness = (!report.holds()).then(|| serde_json::to_value(&report).expect("serializable"));
    Ok((nilpotent, report.holds(), witness))
}

/// `G` is `p`-nilpotent ⟺ a Sylow `p`-subgroup controls fusion of `C_p`-groups.
pub fn verify_theorem_b(g: &FiniteGroup, name: &str, p: u64) -> Result<VerificationResult> {
    verify_theorem_b_with(g, name, p, false)
}

fn verify_theorem_b_with(g: &FiniteGroup, name: &str, p: u64, flip: bool) -> Result<VerificationResult> {
    let (nilpotent, mut fusion, witness) = theorem_b_sides(g, p)?;
    if flip {
        fusion = !fusion;
    }
    let result = VerificationResult::new(ClaimId::TheoremB, name, p, nilpotent, fusion);
    Ok(match (result.verdict, witness) {
        (Verdict::Fail, Some(w)) => result.with_witness(w),
        (Verdict::Fail, None) => result.with_witness(json!({ "p_nilpotent": nilpotent, "controls_fusion": fusion })),
        _ => result,
    })
}

/// `N_G(P)` controls `C_p`-fusion and `N_G(P) = C_G(P)·P` ⟹ `G` is `p`-nilpotent.
pub fn verify_corollary_1(g: &FiniteGroup, name: &str, p: u64) -> Result<VerificationResult> {
    let sylow = g.sylow_subgroup(p)?;
    let normalizer = g.normalizer(&sylow)?;
    let hypothesis = controls_fusion(&normalizer, FusionClass::Cp(p))?.holds() && normalizer_splits(g, &sylow)?;
    let conclusion = is_p_nilpotent(g, p)?.p_nilpotent;
    Ok(VerificationResult::new(ClaimId::Corollary1, name, p, hypothesis, conclusion))
}

/// Elements of `P` of order dividing `p̄` are central in `P` ⟹ `N_G(P)`
/// controls `C_p`-fusion.
pub fn verify_proposition_priddy(g: &FiniteGroup, name: &str, p: u64) -> Result<VerificationResult> {
    let sylow = g.sylow_subgroup(p)?;
    let hypothesis = small_elements_central(&sylow, p);
    let report = controls_fusion(&g.normalizer(&sylow)?, FusionClass::Cp(p))?;
    let result = VerificationResult::new(ClaimId::PropositionPriddy, name, p, hypothesis, report.holds());
    Ok(if result.verdict == Verdict::Fail {
        result.with_witness(serde_json::to_value(&report).expect("serializable"))
    } else {
        result
    })
}

/// Central small elements in `P` and `N_G(P) = P·C_G(P)` ⟹ `G` is `p`-nilpotent.
pub fn verify_corollary_priddy(g: &FiniteGroup, name: &str, p: u64) -> Result<VerificationResult> {
    let sylow = g.sylow_subgroup(p)?;
    let hypothesis = small_elements_central(&sylow, p) && normalizer_splits(g, &sylow)?;
    let conclusion = is_p_nilpotent(g, p)?.p_nilpotent;
    Ok(VerificationResult::new(ClaimId::CorollaryPriddy, name, p, hypothesis, conclusion))
}

/// `Ω̄(G) = ⟨x : x^{p̄} = 1⟩` hypercentral ⟹ `G` is `p`-nilpotent.
///
/// When the hypothesis holds the power-commutator consequence is also
/// checked; the conclusion counts as held only if both succeed.
pub fn verify_corollary_pcentral(g: &FiniteGroup, name: &str, p: u64) -> Result<VerificationResult> {
    let k = omega_bar(g, p)?;
    let hypothesis = upper_central_series(g).first_term_containing(&k).is_some();
    let nilpotent = is_p_nilpotent(g, p)?.p_nilpotent;
    if !hypothesis {
        return Ok(VerificationResult::new(ClaimId::CorollaryPcentral, name, p, false, nilpotent));
    }
    let check = hall_petrescu_check(g, p)?;
    let mut result =
        VerificationResult::new(ClaimId::CorollaryPcentral, name, p, true, nilpotent && check.holds);
    result.hall_petrescu = Some(check.holds);
    if result.verdict == Verdict::Fail {
        result.witness = Some(json!({ "p_nilpotent": nilpotent, "hall_petrescu": check }));
    }
    Ok(result)
}

pub const QUATERNION_EXAMPLE_NAME: &str = "Q8:C3";

/// On `Q₈ ⋊ C₃`: `Q₈` controls fusion of involutions, yet the group is not
/// 2-nilpotent, and `Q₈` fails to control fusion of `C₂`-groups through a
/// cyclic subgroup of order 4.
pub fn verify_example_quaternion() -> Result<VerificationResult> {
    let g = quaternion_by_c3()?;
    let q = quaternion_factor(&g)?;
    let involution_control = controls_fusion(&q, FusionClass::CyclicP(2))?.holds();
    let nilpotent = is_p_nilpotent(&g, 2)?.p_nilpotent;
    let cp = controls_fusion(&q, FusionClass::Cp(2))?;
    let c4_witness = cp
        .witness_b
        .as_ref()
        .is_some_and(|w| w.subgroup.order() == 4 && w.revalidate(&q));
    let unique_involution = enumerate_class(&g, FusionClass::CyclicP(2))?.len() == 1;
    let all = g.order() == 24 && unique_involution && involution_control && !nilpotent && !cp.condition_b && c4_witness;
    let mut result = VerificationResult::new(ClaimId::ExampleQuaternion, QUATERNION_EXAMPLE_NAME, 2, true, all);
    result.witness = Some(json!({
        "order": g.order(),
        "involution_subgroups": enumerate_class(&g, FusionClass::CyclicP(2))?.len(),
        "controls_fusion_cyclic2": involution_control,
        "p_nilpotent": nilpotent,
        "controls_fusion_cp": cp,
    }));
    Ok(result)
}

fn verify_claim(claim: ClaimId, g: &FiniteGroup, name: &str, p: u64, faults: &FaultInjection) -> VerificationResult {
    let outcome = match claim {
        ClaimId::TheoremB => {
            let flip = faults
                .flip_fusion
                .as_ref()
                .is_some_and(|(n, q)| n == name && *q == p);
            verify_theorem_b_with(g, name, p, flip)
        }
        ClaimId::Corollary1 => verify_corollary_1(g, name, p),
        ClaimId::PropositionPriddy => verify_proposition_priddy(g, name, p),
        ClaimId::CorollaryPriddy => verify_corollary_priddy(g, name, p),
        ClaimId::CorollaryPcentral => verify_corollary_pcentral(g, name, p),
        ClaimId::ExampleQuaternion => verify_example_quaternion(),
    };
    outcome.unwrap_or_else(|e| VerificationResult::skipped(claim, name, p, &e))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub skipped: usize,
}

impl Totals {
    fn record(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Skipped => self.skipped += 1,
        }
    }

    pub fn cells(&self) -> usize {
        self.pass + self.fail + self.vacuous + self.skipped
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub cells: Vec<VerificationResult>,
    pub totals: Totals,
    pub by_claim: BTreeMap<ClaimId, Totals>,
}

impl SuiteReport {
    fn from_cells(cells: Vec<VerificationResult>) -> Self {
        let mut totals = Totals::default();
        let mut by_claim: BTreeMap<ClaimId, Totals> = BTreeMap::new();
        for c in &cells {
            totals.record(c.verdict);
            by_claim.entry(c.claim).or_default().record(c.verdict);
        }
        SuiteReport {
            cells,
            totals,
            by_claim,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.totals.fail > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationResult> {
        self.cells.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn claim_totals(&self, claim: ClaimId) -> Totals {
        self.by_claim.get(&claim).copied().unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// Aligned plain-text table followed by per-claim totals.
    pub fn to_text(&self) -> String {
        let header = ["claim", "group", "prime", "verdict"];
        let rows: Vec<[String; 4]> = self
            .cells
            .iter()
            .map(|c| {
                [
                    c.claim.to_string(),
                    c.group.clone(),
                    c.prime.to_string(),
                    c.verdict.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cols: [&str; 4]| {
            let _ = writeln!(
                out,
                "{:<w0$}  {:<w1$}  {:>w2$}  {}",
                cols[0],
                cols[1],
                cols[2],
                cols[3],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2]
            );
        };
        line(&mut out, header);
        for r in &rows {
            line(&mut out, [&r[0], &r[1], &r[2], &r[3]]);
        }
        out.push('\n');
        for (claim, t) in &self.by_claim {
            let _ = writeln!(
                out,
                "{:<20} pass {:>4}  fail {:>3}  vacuous {:>4}  skipped {:>3}",
                claim.as_str(),
                t.pass,
                t.fail,
                t.vacuous,
                t.skipped
            );
        }
        let t = &self.totals;
        let _ = writeln!(
            out,
            "{:<20} pass {:>4}  fail {:>3}  vacuous {:>4}  skipped {:>3}",
            "total", t.pass, t.fail, t.vacuous, t.skipped
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Primes to test; empty means every prime dividing the group order.
    pub primes: Vec<u64>,
    /// Claims to run; empty means all.
    pub claims: Vec<ClaimId>,
    pub faults: FaultInjection,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            primes: Vec::new(),
            claims: ClaimId::ALL.to_vec(),
            faults: FaultInjection::default(),
        }
    }
}

/// Runs the selected claims over `standard_catalog(max_order)` and every
/// selected prime dividing each group order. Cells are evaluated in
/// parallel but reported in catalog × prime × claim order.
pub fn run_suite(max_order: usize, options: &SuiteOptions) -> Result<SuiteReport> {
    for &p in &options.primes {
        crate::arith::require_prime(p)?;
    }
    let claims: Vec<ClaimId> = if options.claims.is_empty() {
        ClaimId::ALL.to_vec()
    } else {
        let mut c = options.claims.clone();
        c.sort();
        c.dedup();
        c
    };
    let per_group: Vec<ClaimId> = claims
        .iter()
        .copied()
        .filter(|&c| c != ClaimId::ExampleQuaternion)
        .collect();
    let catalog = standard_catalog(max_order)?;
    let mut cells: Vec<VerificationResult> = catalog
        .par_iter()
        .flat_map_iter(|entry| {
            let primes: Vec<u64> = prime_divisors(entry.group.order())
                .into_iter()
                .filter(|p| options.primes.is_empty() || options.primes.contains(p))
                .collect();
            let mut out = Vec::new();
            for p in primes {
                for &claim in &per_group {
                    out.push(verify_claim(claim, &entry.group, &entry.name, p, &options.faults));
                }
            }
            out
        })
        .collect();
    if claims.contains(&ClaimId::ExampleQuaternion) {
        let g = quaternion_by_c3()?;
        cells.push(verify_claim(
            ClaimId::ExampleQuaternion,
            &g,
            QUATERNION_EXAMPLE_NAME,
            2,
            &options.faults,
        ));
    }
    Ok(SuiteReport::from_cells(cells))
}
