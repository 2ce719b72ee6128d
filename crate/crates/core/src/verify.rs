//! Registry of lemma-level exhaustive checks: each lemma id maps to a finite
//! verification procedure over a (p, n) grid.
//!
//! Checks encode each lemma's stated hypotheses literally (congruences mod
//! p, lower bounds on n, label exclusions) rather than widest-possible
//! grids; small-n anomalies are real. For restrictions stated as
//! isomorphisms, only the containment direction is certified. Claims about
//! a two-candidate δ label are checked existentially when the statement
//! asserts some δ-labelled factor exists, and for every candidate when the
//! lemma quantifies over δ itself.

use rayon::prelude::*;
use serde::Serialize;

use num_bigint::BigUint;

use crate::branching::{self, Engine, FourCasesError, JsClass, Rules};
use crate::charzero;
use crate::crystal;
use crate::labels;
use crate::partition::{enumerate_rpp, BlockContent, Char, Partition, Residue};
use crate::Error;

/// One failed check: the characteristic, the partition involved (empty
/// string when the failure is not attached to one), and what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub p: u64,
    pub partition: String,
    pub detail: String,
}

impl Counterexample {
    pub fn new(p: u64, la: &Partition, detail: String) -> Counterexample {
        Counterexample {
            p,
            partition: la.to_string(),
            detail,
        }
    }

    pub fn bare(p: u64, detail: String) -> Counterexample {
        Counterexample {
            p,
            partition: String::new(),
            detail,
        }
    }
}

/// Outcome of one lemma check over a grid. `pass` holds exactly when no
/// counterexample was recorded.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub lemma_id: String,
    pub grid: String,
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(
        lemma_id: impl Into<String>,
        grid: String,
        checked: u64,
        counterexamples: Vec<Counterexample>,
    ) -> VerifyReport {
        let pass = counterexamples.is_empty();
        VerifyReport {
            lemma_id: lemma_id.into(),
            grid,
            checked,
            counterexamples,
            pass,
        }
    }
}

/// All registered lemma ids, in stable order.
pub const LEMMA_IDS: [&str; 20] = [
    "TStem",
    "LABBlocks",
    "TLabels_socle",
    "LJS0",
    "LPhillips3_8",
    "LPhillips3_14",
    "Delta_JS",
    "L4Cases",
    "L220710",
    "LNotBothJS",
    "LIJNZ",
    "LIJZ",
    "LEpsI2NonJS",
    "GB",
    "LDeltaBr",
    "JS02",
    "JS0_prop",
    "LFactor_blocks",
    "bound1",
    "MainThm_char0",
];

pub fn list_lemmas() -> Vec<&'static str> {
    LEMMA_IDS.to_vec()
}

/// Runs the named lemma check over `[n_lo, n_hi]`, clamped below to the
/// lemma's own hypotheses.
pub fn verify(id: &str, c: Char, n_lo: u64, n_hi: u64) -> Result<VerifyReport, Error> {
    verify_with_rules(id, c, n_lo, n_hi, Rules::default())
}

/// As [`verify`], with engine rule toggles exposed so tests can confirm the
/// checks are sensitive to the branching rules they certify.
#[doc(hidden)]
pub fn verify_with_rules(
    id: &str,
    c: Char,
    n_lo: u64,
    n_hi: u64,
    rules: Rules,
) -> Result<VerifyReport, Error> {
    match id {
        "TStem" => Ok(crystal::stembridge_over_range(c, n_lo, n_hi)),
        "LABBlocks" => {
            require_char_p(id, c)?;
            Ok(check_labblocks(c, n_lo.max(5), n_hi))
        }
        "TLabels_socle" => Ok(check_tlabels_socle(c, n_lo.max(6), n_hi)),
        "LJS0" => Ok(check_ljs0(c, n_lo.max(1), n_hi)),
        "LPhillips3_8" => Ok(check_lphillips3_8(c, n_lo.max(5), n_hi)),
        "LPhillips3_14" => {
            require_char_p(id, c)?;
            Ok(check_lphillips3_14(c, n_lo.max(5), n_hi))
        }
        "Delta_JS" => Ok(check_delta_js(c, n_lo.max(5), n_hi)),
        "L4Cases" => Ok(check_l4cases(c, n_lo.max(5), n_hi)),
        "L220710" => Ok(check_l220710(c, n_lo.max(5), n_hi)),
        "LNotBothJS" => Ok(check_lnotbothjs(c, n_lo.max(5), n_hi)),
        "LIJNZ" => Ok(check_two_eps(c, n_lo.max(5), n_hi, rules, TwoEps::BothNonzero)),
        "LIJZ" => Ok(check_two_eps(c, n_lo.max(5), n_hi, rules, TwoEps::OneZero)),
        "LEpsI2NonJS" => Ok(check_two_eps(c, n_lo.max(5), n_hi, rules, TwoEps::Double)),
        "GB" => Ok(check_gb(c, n_lo.max(6), n_hi, rules)),
        "LDeltaBr" => Ok(check_ldeltabr(c, n_lo.max(6), n_hi, rules)),
        "JS02" => {
            require_char_p(id, c)?;
            Ok(check_js02(c, n_lo.max(12), n_hi, rules))
        }
        "JS0_prop" => {
            require_char_p(id, c)?;
            let floor = match c.p() {
                3 => 13,
                5 => 17,
                _ => 11,
            };
            Ok(check_js0_prop(c, n_lo.max(floor), n_hi, rules))
        }
        "LFactor_blocks" => check_lfactor_blocks(c, n_lo, n_hi),
        "bound1" => Ok(check_bound1(c, n_lo.max(23), n_hi)),
        "MainThm_char0" => {
            if c.p() != 0 {
                return Err(Error::LemmaNotApplicable {
                    id: id.into(),
                    reason: "characteristic-zero scan requires p = 0".into(),
                });
            }
            Ok(charzero::main_theorem_check_char0(n_lo, n_hi))
        }
        _ => Err(Error::UnknownLemma(id.into())),
    }
}

fn require_char_p(id: &str, c: Char) -> Result<(), Error> {
    if c.p() == 0 {
        Err(Error::LemmaNotApplicable {
            id: id.into(),
            reason: "requires p > 0".into(),
        })
    } else {
        Ok(())
    }
}

fn grid_str(c: Char, lo: u64, hi: u64) -> String {
    format!("p={}, n={lo}..={hi}", c.p())
}

/// Scans every λ in `RP_p(n)` for n in the range, collecting per-partition
/// check counts and counterexamples deterministically.
fn scan<F>(c: Char, lo: u64, hi: u64, f: F) -> (u64, Vec<Counterexample>)
where
    F: Fn(u64, &Partition) -> (u64, Vec<Counterexample>) + Sync,
{
    let mut checked = 0u64;
    let mut ces = Vec::new();
    for n in lo..=hi {
        let level: Vec<(u64, Vec<Counterexample>)> = enumerate_rpp(c, n)
            .par_iter()
            .map(|la| f(n, la))
            .collect();
        for (k, mut v) in level {
            checked += k;
            ces.append(&mut v);
        }
    }
    (checked, ces)
}

fn mk(parts: &[u64]) -> Partition {
    Partition::new(parts.iter().map(|&x| x as u32).collect())
}

/// p = 0 counts as larger than any bound in the lemma side conditions.
fn p_gt(c: Char, bound: u64) -> bool {
    c.p() == 0 || c.p() > bound
}

// ---------------------------------------------------------------------------
// Label & block checks
// ---------------------------------------------------------------------------

fn superblock_base(c: Char, a: u64) -> BlockContent {
    let ell = c.ell().expect("p > 0");
    let mut bc = BlockContent::default();
    for i in 0..ell {
        bc.add(i, 2 * a);
    }
    bc.add(ell, a);
    bc
}

fn check_labblocks(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let p = c.p();
    let mut checked = 0u64;
    let mut ces = Vec::new();
    for n in lo..=hi {
        let b = ((n - 1) % p) + 1;
        let a = (n - b) / p;
        let mut expect_alpha = superblock_base(c, a);
        for s in 1..=b {
            expect_alpha.add(c.content_of_column(s), 1);
        }
        let alpha = labels::alpha_label(c, n);
        checked += 1;
        if alpha.block_content(c) != expect_alpha {
            ces.push(Counterexample::new(
                p,
                &alpha,
                format!("block content {} != gamma^A = {expect_alpha}", alpha.block_content(c)),
            ));
        }
        let mut expect_beta = superblock_base(c, a);
        for s in 1..b {
            expect_beta.add(c.content_of_column(s), 1);
        }
        expect_beta.add(0, 1);
        if let Some(beta) = labels::beta_label(c, n) {
            checked += 1;
            if beta.block_content(c) != expect_beta {
                ces.push(Counterexample::new(
                    p,
                    &beta,
                    format!("block content {} != gamma^B = {expect_beta}", beta.block_content(c)),
                ));
            }
        }
    }
    VerifyReport::new("LABBlocks", grid_str(c, lo, hi), checked, ces)
}

fn check_tlabels_socle(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let mut checked = 0u64;
    let mut ces = Vec::new();
    for n in lo..=hi {
        let alpha_prev = labels::alpha_label(c, n - 1);
        let beta_prev = labels::beta_label(c, n - 1);
        let gamma_prev = labels::gamma_label(c, n - 1);
        let alpha_n = labels::alpha_label(c, n);
        let beta_n = labels::beta_label(c, n);
        let gamma_n = labels::gamma_label(c, n);
        let delta_n = labels::delta_labels(c, n);
        let in_allowed = |la: &Partition, fixed: &[Option<&Partition>], with_delta: bool| {
            fixed.contains(&Some(la))
                || (with_delta && delta_n.as_ref().is_some_and(|d| d.contains(la)))
        };
        let (k, mut v) = scan(c, n, n, |_, la| {
            let mut ces = Vec::new();
            let mut count = 0u64;
            for i in crystal::active_residues(c, la) {
                let Some(mu) = crystal::e_tilde(c, la, i) else {
                    continue;
                };
                if mu == alpha_prev {
                    count += 1;
                    if !in_allowed(la, &[Some(&alpha_n), beta_n.as_ref()], false) {
                        ces.push(Counterexample::new(
                            c.p(),
                            la,
                            format!("adds a good node onto alpha_{} but is neither alpha nor beta", n - 1),
                        ));
                    }
                }
                if beta_prev.as_ref() == Some(&mu) {
                    count += 1;
                    if !in_allowed(la, &[beta_n.as_ref(), gamma_n.as_ref()], false) {
                        ces.push(Counterexample::new(
                            c.p(),
                            la,
                            format!("adds a good node onto beta_{} but is neither beta nor gamma", n - 1),
                        ));
                    }
                }
                if gamma_prev.as_ref() == Some(&mu) {
                    count += 1;
                    if !in_allowed(la, &[gamma_n.as_ref()], true) {
                        ces.push(Counterexample::new(
                            c.p(),
                            la,
                            format!("adds a good node onto gamma_{} but is neither gamma nor delta", n - 1),
                        ));
                    }
                }
            }
            (count, ces)
        });
        checked += k;
        ces.append(&mut v);
        // Converse of (v): gamma_{n-1} appears under every delta candidate.
        if let (Some(g), Some(ds)) = (&gamma_prev, &delta_n) {
            for d in ds.candidates() {
                checked += 1;
                let hit = crystal::active_residues(c, d)
                    .into_iter()
                    .any(|i| crystal::e_tilde(c, d, i).as_ref() == Some(g));
                if !hit {
                    ces.push(Counterexample::new(
                        c.p(),
                        d,
                        format!("no good-node removal reaches gamma_{}", n - 1),
                    ));
                }
            }
        }
    }
    VerifyReport::new("TLabels_socle", grid_str(c, lo, hi), checked, ces)
}

// ---------------------------------------------------------------------------
// JS checks
// ---------------------------------------------------------------------------

fn check_ljs0(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let (checked, ces) = scan(c, lo, hi, |_, la| {
        let mut values: Vec<u64> = la.parts().iter().map(|&x| u64::from(x)).collect();
        values.dedup();
        let predicted = values.last() == Some(&1)
            && values
                .windows(2)
                .all(|w| c.content_of_column(w[0]) == c.content_of_column(w[1] + 1));
        let actual = branching::js_class(c, la) == JsClass::Js(0);
        let ces = if predicted != actual {
            vec![Counterexample::new(
                c.p(),
                la,
                format!("part-value criterion says {predicted}, eps-vector says {actual}"),
            )]
        } else {
            Vec::new()
        };
        (1, ces)
    });
    VerifyReport::new("LJS0", grid_str(c, lo, hi), checked, ces)
}

fn check_lphillips3_8(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let (checked, ces) = scan(c, lo, hi, |_, la| {
        let cls = branching::js_class(c, la);
        let c1 = cls == JsClass::Js(0);
        let c2 = c1
            && crystal::e_tilde(c, la, 0)
                .map(|mu| branching::js_class(c, &mu) == JsClass::Js(1))
                .unwrap_or(false);
        let c3 = match cls {
            JsClass::Js(i) => {
                let mu = crystal::e_tilde(c, la, i).expect("good node");
                match branching::js_class(c, &mu) {
                    JsClass::Js(j) => (i == 0) != (j == 0),
                    JsClass::NotJs => false,
                }
            }
            JsClass::NotJs => false,
        };
        let ces = if c1 != c2 || c2 != c3 {
            vec![Counterexample::new(
                c.p(),
                la,
                format!("equivalence broken: (i)={c1} (ii)={c2} (iii)={c3}"),
            )]
        } else {
            Vec::new()
        };
        (1, ces)
    });
    VerifyReport::new("LPhillips3_8", grid_str(c, lo, hi), checked, ces)
}

fn check_lphillips3_14(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let p = c.p();
    let (checked, ces) = scan(c, lo, hi, |n, la| {
        let mut ces = Vec::new();
        let is_alpha = *la == labels::alpha_label(c, n);
        let eps = crystal::eps_map(c, la);

        // Clause (i) is quantified over basic labels: for λ = α_n the
        // congruence n ≡ 1 (mod p) is equivalent to the ε-support condition.
        // The unrestricted converse is false, e.g. (5,3,2,1) at p = 5 has
        // ε-vector (2,0,0) and a JS(0) first restriction without being α_11.
        if is_alpha {
            let lhs_i = n % p == 1;
            let rhs_i = eps.keys().all(|&i| i == 0)
                && eps.contains_key(&0)
                && crystal::e_tilde(c, la, 0)
                    .map(|mu| branching::js_class(c, &mu) == JsClass::Js(0))
                    .unwrap_or(false);
            if lhs_i != rhs_i {
                ces.push(Counterexample::new(
                    p,
                    la,
                    format!("(i): congruence side {lhs_i} but eps side {rhs_i}"),
                ));
            }
        }

        let lhs_ii = is_alpha && !matches!(n % p, 0..=2);
        let rhs_ii = match branching::js_class(c, la) {
            JsClass::Js(i) if i != 0 => {
                let mu = crystal::e_tilde(c, la, i).expect("good node");
                matches!(branching::js_class(c, &mu), JsClass::Js(j) if j != 0)
            }
            _ => false,
        };
        if lhs_ii != rhs_ii {
            ces.push(Counterexample::new(
                p,
                la,
                format!("(ii): alpha/congruence side {lhs_ii} but JS side {rhs_ii}"),
            ));
        }
        (2, ces)
    });
    VerifyReport::new("LPhillips3_14", grid_str(c, lo, hi), checked, ces)
}

fn check_delta_js(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let p = c.p();
    let mut checked = 0u64;
    let mut ces = Vec::new();
    for n in lo..=hi {
        let Some(ds) = labels::delta_labels(c, n) else {
            continue;
        };
        for d in ds.candidates() {
            checked += 1;
            let expected: Option<(Residue, u8)> = if p_gt(c, 5) && n == 6 && *d == mk(&[3, 2, 1]) {
                Some((0, 1))
            } else if p_gt(c, 3) && n == 7 && *d == mk(&[4, 3]) {
                Some((2, 1))
            } else if p > 3 && n % p == 0 && n / p >= 2 && *d == delta_two_column(p, n / p) {
                Some((2, labels::sigma(n / p)))
            } else {
                None
            };
            let actual = branching::js_class(c, d);
            match expected {
                Some((i, a)) => {
                    if actual != JsClass::Js(i) {
                        ces.push(Counterexample::new(
                            p,
                            d,
                            format!("expected JS({i}), classified {actual}"),
                        ));
                    } else if d.a_parity(c) != a {
                        ces.push(Counterexample::new(
                            p,
                            d,
                            format!("expected a = {a}, got {}", d.a_parity(c)),
                        ));
                    }
                }
                None => {
                    if actual.is_js() {
                        ces.push(Counterexample::new(
                            p,
                            d,
                            format!("classified {actual} outside the listed JS shapes"),
                        ));
                    }
                }
            }
        }
    }
    VerifyReport::new("Delta_JS", grid_str(c, lo, hi), checked, ces)
}

/// The shape `(p+2, p^{m-2}, p-2)` of degree `mp`.
fn delta_two_column(p: u64, m: u64) -> Partition {
    let mut parts = vec![p + 2];
    parts.extend(std::iter::repeat_n(p, (m - 2) as usize));
    parts.push(p - 2);
    mk(&parts)
}

fn check_l4cases(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let (checked, ces) = scan(c, lo, hi, |n, la| {
        if !branching::js_class(c, la).is_js() || *la == labels::alpha_label(c, n) {
            return (0, Vec::new());
        }
        let ces = match branching::matching_cases(c, la) {
            Ok(cases) if cases.len() == 1 => Vec::new(),
            Ok(cases) => vec![Counterexample::new(
                c.p(),
                la,
                format!("multiple cases apply: {cases:?}"),
            )],
            Err(FourCasesError::NoCase { i, eps }) => vec![Counterexample::new(
                c.p(),
                la,
                format!("no case applies: JS({i}), eps(e_tilde) = {eps:?}"),
            )],
            Err(e) => vec![Counterexample::new(c.p(), la, format!("unexpected: {e}"))],
        };
        (1, ces)
    });
    VerifyReport::new("L4Cases", grid_str(c, lo, hi), checked, ces)
}

fn check_l220710(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let (checked, ces) = scan(c, lo, hi, |_, la| {
        let eps = crystal::eps_map(c, la);
        let pair: Vec<Residue> = eps.keys().copied().collect();
        if pair.len() != 2
            || pair.contains(&0)
            || eps.values().any(|&e| e != 1)
        {
            return (0, Vec::new());
        }
        let mut ces = Vec::new();
        for (i, j) in [(pair[0], pair[1]), (pair[1], pair[0])] {
            let ej = crystal::e_tilde(c, la, j).expect("eps positive");
            let eij = crystal::e_tilde(c, &ej, i).expect("eps grows under e_tilde");
            if branching::js_class(c, &eij) == JsClass::Js(0) {
                ces.push(Counterexample::new(
                    c.p(),
                    la,
                    format!("e_{i} e_{j} lambda = ({eij}) lies in JS(0)"),
                ));
            }
        }
        (2, ces)
    });
    VerifyReport::new("L220710", grid_str(c, lo, hi), checked, ces)
}

fn check_lnotbothjs(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let (checked, ces) = scan(c, lo, hi, |_, la| {
        let eps = crystal::eps_map(c, la);
        let pair: Vec<Residue> = eps.keys().copied().collect();
        if pair.len() != 2 || eps.values().any(|&e| e != 1) {
            return (0, Vec::new());
        }
        let both_js = pair.iter().all(|&i| {
            let mu = crystal::e_tilde(c, la, i).expect("eps positive");
            branching::js_class(c, &mu).is_js()
        });
        let ces = if both_js {
            vec![Counterexample::new(
                c.p(),
                la,
                format!("both e_{} and e_{} land in JS", pair[0], pair[1]),
            )]
        } else {
            Vec::new()
        };
        (1, ces)
    });
    VerifyReport::new("LNotBothJS", grid_str(c, lo, hi), checked, ces)
}

/// The three `Σ ε_i(λ) = 2` lemmas share hypothesis plumbing.
#[derive(Clone, Copy, PartialEq, Eq)]
enum TwoEps {
    /// ε_i = ε_j = 1 with i, j ≠ 0: d_2 ≥ 5 plus the level-(n-1) claims.
    BothNonzero,
    /// ε_i = ε_0 = 1 with i ≠ 0: d_2 ≥ 3 plus the level-(n-1) claims.
    OneZero,
    /// ε_i = 2, all others 0: d_2 ≥ 3.
    Double,
}

impl TwoEps {
    fn id(self) -> &'static str {
        match self {
            TwoEps::BothNonzero => "LIJNZ",
            TwoEps::OneZero => "LIJZ",
            TwoEps::Double => "LEpsI2NonJS",
        }
    }

    fn d2_bound(self) -> u64 {
        match self {
            TwoEps::BothNonzero => 5,
            TwoEps::OneZero | TwoEps::Double => 3,
        }
    }
}

fn check_two_eps(c: Char, lo: u64, hi: u64, rules: Rules, which: TwoEps) -> VerifyReport {
    let engine = Engine::with_rules(c, rules);
    let (checked, ces) = scan(c, lo, hi, |n, la| {
        // Hypotheses exclude the four labels (all delta candidates).
        if *la == labels::alpha_label(c, n)
            || labels::beta_label(c, n).as_ref() == Some(la)
            || labels::gamma_label(c, n).as_ref() == Some(la)
            || labels::delta_labels(c, n).is_some_and(|d| d.contains(la))
        {
            return (0, Vec::new());
        }
        let eps = crystal::eps_map(c, la);
        let keys: Vec<Residue> = eps.keys().copied().collect();
        let applies = match which {
            TwoEps::BothNonzero => {
                keys.len() == 2 && !keys.contains(&0) && eps.values().all(|&e| e == 1)
            }
            TwoEps::OneZero => {
                keys.len() == 2 && keys.contains(&0) && eps.values().all(|&e| e == 1)
            }
            TwoEps::Double => keys.len() == 1 && eps.values().all(|&e| e == 2),
        };
        if !applies {
            return (0, Vec::new());
        }
        let mut ces = Vec::new();
        if which != TwoEps::Double {
            let prev_alpha = labels::alpha_label(c, n - 1);
            let prev_beta = labels::beta_label(c, n - 1);
            let prev_gamma = labels::gamma_label(c, n - 1);
            let mut js_hits = 0;
            for &i in &keys {
                let mu = crystal::e_tilde(c, la, i).expect("eps positive");
                if mu == prev_alpha
                    || prev_beta.as_ref() == Some(&mu)
                    || prev_gamma.as_ref() == Some(&mu)
                {
                    ces.push(Counterexample::new(
                        c.p(),
                        la,
                        format!("e_{i} lands on a small label ({mu})"),
                    ));
                }
                if branching::js_class(c, &mu).is_js() {
                    js_hits += 1;
                }
            }
            if js_hits == 2 {
                ces.push(Counterexample::new(
                    c.p(),
                    la,
                    "both first restrictions are JS".into(),
                ));
            }
            let d1 = engine.d_lower(la, 1);
            if d1 < BigUint::from(2u8) {
                ces.push(Counterexample::new(
                    c.p(),
                    la,
                    format!("certified d_1 = {d1} < 2"),
                ));
            }
        }
        let d2 = engine.d_lower(la, 2);
        if d2 < BigUint::from(which.d2_bound()) {
            ces.push(Counterexample::new(
                c.p(),
                la,
                format!("certified d_2 = {d2} < {}", which.d2_bound()),
            ));
        }
        (1, ces)
    });
    VerifyReport::new(which.id(), grid_str(c, lo, hi), checked, ces)
}

fn check_js02(c: Char, lo: u64, hi: u64, rules: Rules) -> VerifyReport {
    let p = c.p();
    let engine = Engine::with_rules(c, rules);
    let (checked, ces) = scan(c, lo, hi, |n, la| {
        if branching::js_class(c, la) != JsClass::Js(0)
            || *la == labels::alpha_label(c, n)
            || labels::beta_label(c, n).as_ref() == Some(la)
        {
            return (0, Vec::new());
        }
        let exception = p >= 5 && n % p == 1 && n > 2 * p;
        let d3 = engine.d_lower(la, 3);
        let ces = if d3 < BigUint::from(3u8) && !exception {
            vec![Counterexample::new(
                p,
                la,
                format!("certified d_3 = {d3} < 3 outside the n = mp+1 exception"),
            )]
        } else {
            Vec::new()
        };
        (1, ces)
    });
    VerifyReport::new("JS02", grid_str(c, lo, hi), checked, ces)
}

// ---------------------------------------------------------------------------
// Branching-engine containment checks
// ---------------------------------------------------------------------------

/// One required factor: an exact partition or any candidate of a label set.
enum Want {
    Exact(Partition, u64),
    AnyOf(Vec<Partition>, u64),
    /// A label that must exist at the target level but does not.
    Missing(&'static str),
}

fn want_delta(c: Char, m: u64, mult: u64) -> Want {
    match labels::delta_labels(c, m) {
        Some(ds) => Want::AnyOf(ds.candidates().to_vec(), mult),
        None => Want::Missing("delta"),
    }
}

fn want_gamma(c: Char, m: u64, mult: u64) -> Want {
    match labels::gamma_label(c, m) {
        Some(g) => Want::Exact(g, mult),
        None => Want::Missing("gamma"),
    }
}

fn want_beta(c: Char, m: u64, mult: u64) -> Want {
    match labels::beta_label(c, m) {
        Some(b) => Want::Exact(b, mult),
        None => Want::Missing("beta"),
    }
}

/// Checks `depth`-fold guaranteed restriction of `la` against the wanted
/// multiset; returns human-readable deficiencies.
fn demand(engine: &Engine, la: &Partition, depth: u64, wants: &[Want]) -> Vec<String> {
    let fb = engine.guaranteed_depth(la, depth);
    let mut missing = Vec::new();
    for w in wants {
        match w {
            Want::Exact(target, mult) => {
                let got = fb.multiplicity(target);
                if got < BigUint::from(*mult) {
                    missing.push(format!(
                        "needs {mult}({target}) at depth {depth}, certified {got}"
                    ));
                }
            }
            Want::AnyOf(cands, mult) => {
                if !cands
                    .iter()
                    .any(|t| fb.multiplicity(t) >= BigUint::from(*mult))
                {
                    let strs: Vec<String> =
                        cands.iter().map(|t| format!("({t})")).collect();
                    missing.push(format!(
                        "needs {mult} of one of {} at depth {depth}",
                        strs.join("/")
                    ));
                }
            }
            Want::Missing(name) => {
                missing.push(format!("required {name} label does not exist at depth {depth}"));
            }
        }
    }
    missing
}

fn check_gb(c: Char, lo: u64, hi: u64, rules: Rules) -> VerifyReport {
    let p = c.p();
    let engine = Engine::with_rules(c, rules);
    let mut checked = 0u64;
    let mut ces = Vec::new();
    for n in lo..=hi {
        let Some(gamma) = labels::gamma_label(c, n) else {
            continue;
        };
        let two = |s: u8| 1u64 << s;
        let wants: Vec<Want> = if p == 0 || n < p {
            vec![
                want_gamma(c, n - 1, two(labels::sigma(n))),
                want_beta(c, n - 1, two(labels::sigma(n))),
            ]
        } else {
            let b = ((n - 1) % p) + 1;
            let a = (n - b) / p;
            if n == p + 1 {
                vec![
                    Want::Exact(labels::alpha_label(c, n - 1), 1),
                    want_beta(c, n - 1, 2),
                ]
            } else if b == 1 && a >= 2 {
                if (n, p) == (7, 3) {
                    vec![want_beta(c, n - 1, 4)]
                } else {
                    vec![
                        want_beta(c, n - 1, 2 * two(labels::sigma(n))),
                        want_delta(c, n - 1, two(labels::sigma(n))),
                    ]
                }
            } else if b == 2 {
                vec![
                    want_beta(c, n - 1, two(labels::sigma(n + 1))),
                    want_gamma(c, n - 1, 1),
                ]
            } else if b == 4 && a == 1 {
                vec![want_beta(c, n - 1, 4)]
            } else if b == 4 {
                vec![
                    want_beta(c, n - 1, 2 * two(labels::sigma(n))),
                    want_delta(c, n - 1, two(labels::sigma(n))),
                ]
            } else {
                // 4 < b < p, a >= 1.
                vec![
                    want_beta(c, n - 1, two(labels::sigma(a + b))),
                    want_gamma(c, n - 1, two(labels::sigma(a + b))),
                ]
            }
        };
        checked += 1;
        for msg in demand(&engine, &gamma, 1, &wants) {
            ces.push(Counterexample::new(p, &gamma, msg));
        }
    }
    VerifyReport::new(
        "GB",
        format!("{}; containment direction only", grid_str(c, lo, hi)),
        checked,
        ces,
    )
}

/// Exception shapes of the δ-branching lemma, with their stated containments.
fn delta_br_exception(c: Char, n: u64, d: &Partition) -> Option<(Vec<Want>, Vec<Want>)> {
    let p = c.p();
    let two = |s: u8| 1u64 << s;
    if p_gt(c, 5) && n == 6 && *d == mk(&[3, 2, 1]) {
        return Some((
            vec![want_gamma(c, 5, 1)],
            vec![want_beta(c, 4, 2)],
        ));
    }
    if p_gt(c, 3) && n == 7 && *d == mk(&[4, 3]) {
        let deep = if p == 5 {
            vec![want_beta(c, 5, 4), Want::Exact(labels::alpha_label(c, 5), 2)]
        } else {
            vec![want_beta(c, 5, 2), want_gamma(c, 5, 2)]
        };
        return Some((vec![want_gamma(c, 6, 2)], deep));
    }
    if p_gt(c, 5) && n == 7 && *d == mk(&[4, 2, 1]) {
        return Some((
            vec![want_gamma(c, 6, 1), want_delta(c, 6, 1)],
            vec![want_beta(c, 5, 1), want_gamma(c, 5, 2)],
        ));
    }
    if p > 3 && n == p + 3 && *d == mk(&[p, 2, 1]) {
        return Some((
            vec![want_gamma(c, n - 1, 2), Want::Exact(labels::alpha_label(c, n - 1), 1)],
            vec![
                Want::Exact(labels::alpha_label(c, n - 2), 1),
                want_beta(c, n - 2, 2),
                want_gamma(c, n - 2, 2),
            ],
        ));
    }
    if p > 3 && n > p + 3 && (n - 3).is_multiple_of(p) {
        let m = (n - 3) / p;
        if m >= 2 {
            let mut shape = vec![p + 2];
            shape.extend(std::iter::repeat_n(p, (m - 1) as usize));
            shape.push(1);
            if *d == mk(&shape) {
                return Some((
                    vec![want_gamma(c, n - 1, 2)],
                    vec![
                        want_beta(c, n - 2, 2 * two(labels::sigma(m - 1))),
                        want_gamma(c, n - 2, 2),
                    ],
                ));
            }
        }
    }
    if p_gt(c, 5) && p != 0 && n == p + 6 && *d == mk(&[p + 3, 3]) {
        return Some((
            vec![want_gamma(c, n - 1, 2)],
            vec![want_beta(c, n - 2, 2), want_gamma(c, n - 2, 2)],
        ));
    }
    if p == 3 {
        // Any p = 3 delta is (5, 3^{a-1}, 1) with n = 3a + 3.
        let a = n / 3 - 1;
        return Some((
            vec![want_gamma(c, n - 1, 2)],
            vec![
                want_beta(c, n - 2, 2 * two(labels::sigma(a - 1))),
                want_gamma(c, n - 2, 2),
            ],
        ));
    }
    if p > 3 && n.is_multiple_of(p) && n / p >= 2 && *d == delta_two_column(p, n / p) {
        let m = n / p;
        let deep = if p > 5 {
            vec![want_gamma(c, n - 2, 2), want_beta(c, n - 2, 2)]
        } else if n > 10 {
            vec![want_delta(c, n - 2, 2), want_beta(c, n - 2, 4)]
        } else {
            vec![want_beta(c, n - 2, 4)]
        };
        return Some((vec![want_gamma(c, n - 1, two(labels::sigma(m)))], deep));
    }
    None
}

fn check_ldeltabr(c: Char, lo: u64, hi: u64, rules: Rules) -> VerifyReport {
    let p = c.p();
    let engine = Engine::with_rules(c, rules);
    let mut checked = 0u64;
    let mut ces = Vec::new();
    for n in lo..=hi {
        let Some(ds) = labels::delta_labels(c, n) else {
            continue;
        };
        for d in ds.candidates() {
            checked += 1;
            if let Some((level1, level2)) = delta_br_exception(c, n, d) {
                for msg in demand(&engine, d, 1, &level1) {
                    ces.push(Counterexample::new(p, d, msg));
                }
                for msg in demand(&engine, d, 2, &level2) {
                    ces.push(Counterexample::new(p, d, msg));
                }
            } else {
                let d1 = engine.d_lower(d, 1);
                let d2 = engine.d_lower(d, 2);
                if d1 < BigUint::from(2u8) || d2 < BigUint::from(3u8) {
                    ces.push(Counterexample::new(
                        p,
                        d,
                        format!("certified d_1 = {d1}, d_2 = {d2}; need 2 and 3"),
                    ));
                }
            }
        }
    }
    VerifyReport::new(
        "LDeltaBr",
        format!("{}; containment direction only", grid_str(c, lo, hi)),
        checked,
        ces,
    )
}

/// Exception shapes of the depth-6 JS(0) proposition.
fn js0_exception(c: Char, n: u64, la: &Partition) -> Option<Vec<Want>> {
    let p = c.p();
    if p > 7 && *la == mk(&[p - 3, 3, 2, 1]) {
        return Some(vec![
            Want::Exact(labels::alpha_label(c, p - 3), 4),
            want_beta(c, p - 3, 20),
            Want::Exact(mk(&[p - 5, 2]), 16),
            Want::Exact(mk(&[p - 6, 2, 1]), 4),
        ]);
    }
    if p >= 7 {
        let parts = la.parts();
        let k = parts.len();
        if k >= 4
            && u64::from(parts[0]) == p + 2
            && u64::from(parts[1]) == p + 1
            && u64::from(parts[k - 2]) == p - 1
            && u64::from(parts[k - 1]) == 1
            && parts[2..k - 2].iter().all(|&x| u64::from(x) == p)
        {
            let a = (k - 4) as u64;
            let mut t1 = vec![p + 2, p + 1];
            t1.extend(std::iter::repeat_n(p, a as usize));
            t1.push(p - 6);
            let mut t2 = vec![p + 2];
            t2.extend(std::iter::repeat_n(p, (a + 1) as usize));
            t2.push(p - 5);
            return Some(vec![
                Want::Exact(mk(&t1), 4),
                Want::Exact(mk(&t2), 16),
                Want::Exact(labels::alpha_label(c, n - 6), 4),
                want_beta(c, n - 6, 20),
            ]);
        }
    }
    if p == 5 && n == 18 && *la == mk(&[7, 6, 4, 1]) {
        return Some(vec![
            Want::Exact(mk(&[7, 4, 1]), 20),
            want_beta(c, 12, 16),
            Want::Exact(labels::alpha_label(c, 12), 8),
        ]);
    }
    None
}

fn check_js0_prop(c: Char, lo: u64, hi: u64, rules: Rules) -> VerifyReport {
    let p = c.p();
    let engine = Engine::with_rules(c, rules);
    let (checked, ces) = scan(c, lo, hi, |n, la| {
        if branching::js_class(c, la) != JsClass::Js(0)
            || *la == labels::alpha_label(c, n)
            || labels::beta_label(c, n).as_ref() == Some(la)
        {
            return (0, Vec::new());
        }
        let mut ces = Vec::new();
        let d6 = engine.d_lower(la, 6);
        if d6 < BigUint::from(24u8) {
            match js0_exception(c, n, la) {
                Some(wants) => {
                    for msg in demand(&engine, la, 6, &wants) {
                        ces.push(Counterexample::new(p, la, msg));
                    }
                }
                None => {
                    ces.push(Counterexample::new(
                        p,
                        la,
                        format!("unexplained shortfall: certified d_6 = {d6} < 24"),
                    ));
                }
            }
        }
        (1, ces)
    });
    VerifyReport::new(
        "JS0_prop",
        format!("{}; containment direction only", grid_str(c, lo, hi)),
        checked,
        ces,
    )
}

// ---------------------------------------------------------------------------
// Block-uniqueness and arithmetic checks
// ---------------------------------------------------------------------------

fn check_lfactor_blocks(c: Char, lo: u64, hi: u64) -> Result<VerifyReport, Error> {
    let p = c.p();
    if p <= 3 {
        return Err(Error::LemmaNotApplicable {
            id: "LFactor_blocks".into(),
            reason: "requires p > 3".into(),
        });
    }
    let ell = c.ell().expect("p > 0");
    let mut cases: Vec<(u64, BlockContent, Partition)> = Vec::new();
    if p > 5 {
        let mut gamma = BlockContent::default();
        for i in 0..=ell {
            let k = if i == 1 {
                3
            } else if i == ell {
                1
            } else {
                2
            };
            gamma.add(i, k);
        }
        cases.push((p + 1, gamma, mk(&[p - 1, 2])));
    }
    {
        let mut gamma = BlockContent::default();
        for i in 0..=ell {
            let k = if i <= 1 {
                4
            } else if i == ell {
                1
            } else {
                2
            };
            gamma.add(i, k);
        }
        cases.push((p + 4, gamma, mk(&[p + 2, 2])));
    }
    let mut checked = 0u64;
    let mut ces = Vec::new();
    let mut any_in_grid = false;
    for (n, gamma, only) in cases {
        if n < lo || n > hi {
            continue;
        }
        any_in_grid = true;
        let ordinary: Vec<Partition> = enumerate_rpp(Char::zero(), n)
            .into_iter()
            .filter(|la| la.block_content(c) == gamma)
            .collect();
        checked += 1;
        if ordinary != vec![only.clone()] {
            ces.push(Counterexample::new(
                p,
                &only,
                format!(
                    "ordinary irreducibles in superblock {gamma}: {ordinary:?}, expected only ({only})"
                ),
            ));
        }
        let modular: Vec<Partition> = enumerate_rpp(c, n)
            .into_iter()
            .filter(|la| la.block_content(c) == gamma)
            .collect();
        checked += 1;
        if modular != vec![only.clone()] {
            ces.push(Counterexample::new(
                p,
                &only,
                format!(
                    "modular irreducibles in superblock {gamma}: {modular:?}, expected only ({only})"
                ),
            ));
        }
    }
    if !any_in_grid {
        return Err(Error::LemmaNotApplicable {
            id: "LFactor_blocks".into(),
            reason: format!("grid misses both n = p+1 = {} and n = p+4 = {}", p + 1, p + 4),
        });
    }
    Ok(VerifyReport::new(
        "LFactor_blocks",
        grid_str(c, lo, hi),
        checked,
        ces,
    ))
}

fn check_bound1(c: Char, lo: u64, hi: u64) -> VerifyReport {
    let p = c.p();
    let mut checked = 0u64;
    let mut ces = Vec::new();
    for n in lo..=hi {
        if (n, p) == (24, 17) {
            continue;
        }
        checked += 1;
        let lhs = labels::fstar_threshold(c, n);
        let rhs = BigUint::from(24u8) * labels::f_threshold(c, n - 6);
        if lhs > rhs {
            ces.push(Counterexample::bare(
                p,
                format!("f*({n}) = {lhs} > 24 f({}) = {rhs}", n - 6),
            ));
        }
    }
    VerifyReport::new("bound1", grid_str(c, lo, hi), checked, ces)
}
