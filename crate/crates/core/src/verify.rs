//! Verification suites: each compares an exhaustive computation with a
//! closed-form value, a reference classification, or an independent oracle.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::ExtremalError;
use crate::extremal::lemmas::{lemma_suite, lemma_suite_sampled, LemmaReport};
use crate::extremal::{
    self, expected_max_value, is_signed_shuffle_of_increasing, EnumerationPlan, ExtremalReport,
    Statistic,
};
use crate::graphs::{build_graph, GraphKind};
use crate::oracle::bfs_word_lengths;
use crate::order;

/// Seed for the sampled lemma checks.
pub const SAMPLE_SEED: u64 = 0x5eed_b00c;
pub const SAMPLE_SIZE: usize = 10_000;
/// Largest rank whose Cayley graph is searched breadth first.
pub const BFS_MAX_RANK: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Bounds,
    Classification,
    Lemmas,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Bounds,
        Suite::Classification,
        Suite::Lemmas,
        Suite::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Classification => "classification",
            Suite::Lemmas => "lemmas",
            Suite::Oracle => "oracle",
        }
    }

    /// Ranks run when none is requested explicitly.
    pub fn default_ranks(self, statistic: Option<Statistic>) -> Vec<usize> {
        match (self, statistic) {
            (Suite::Bounds | Suite::Classification, Some(Statistic::Up)) => (2..=6).collect(),
            (Suite::Bounds | Suite::Classification, _) => (2..=7).collect(),
            (Suite::Lemmas, _) => vec![4, 5, 6],
            (Suite::Oracle, _) => (1..=5).collect(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bounds" => Ok(Suite::Bounds),
            "classification" => Ok(Suite::Classification),
            "lemmas" => Ok(Suite::Lemmas),
            "oracle" => Ok(Suite::Oracle),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub check: String,
    pub n: usize,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} n={} {}: expected {}, observed {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.n,
            self.check,
            self.expected,
            self.observed
        )
    }
}

fn check(suite: Suite, check: &str, n: usize, expected: Value, observed: Value) -> CheckResult {
    CheckResult {
        suite: suite.as_str(),
        check: check.to_string(),
        n,
        pass: expected == observed,
        expected,
        observed,
    }
}

/// Runs suites, caching the expensive maximum scans between them.
pub struct Verifier {
    jobs: usize,
    reports: BTreeMap<(usize, Statistic), ExtremalReport>,
}

impl Verifier {
    pub fn new(jobs: usize) -> Self {
        Self {
            jobs: jobs.max(1),
            reports: BTreeMap::new(),
        }
    }

    pub fn report(
        &mut self,
        n: usize,
        statistic: Statistic,
    ) -> Result<&ExtremalReport, ExtremalError> {
        if !self.reports.contains_key(&(n, statistic)) {
            let r = extremal::max_statistic(n, statistic, self.jobs)?;
            self.reports.insert((n, statistic), r);
        }
        Ok(&self.reports[&(n, statistic)])
    }

    /// Runs `suite` at `rank`, or over its default ranks when `rank` is
    /// `None`.
    pub fn run(
        &mut self,
        suite: Suite,
        rank: Option<usize>,
    ) -> Result<Vec<CheckResult>, ExtremalError> {
        match suite {
            Suite::Bounds => self.bounds(rank),
            Suite::Classification => self.classification(rank),
            Suite::Lemmas => self.lemmas(rank),
            Suite::Oracle => self.oracle(rank),
        }
    }

    pub fn run_all(&mut self, rank: Option<usize>) -> Result<Vec<CheckResult>, ExtremalError> {
        let mut out = Vec::new();
        for suite in Suite::ALL {
            out.extend(self.run(suite, rank)?);
        }
        Ok(out)
    }

    fn ranks(suite: Suite, statistic: Option<Statistic>, rank: Option<usize>) -> Vec<usize> {
        rank.map_or_else(|| suite.default_ranks(statistic), |n| vec![n])
    }

    fn bounds(&mut self, rank: Option<usize>) -> Result<Vec<CheckResult>, ExtremalError> {
        let mut out = Vec::new();
        for statistic in Statistic::ALL {
            for n in Self::ranks(Suite::Bounds, Some(statistic), rank) {
                let expected =
                    expected_max_value(n, statistic).ok_or(ExtremalError::RankOutOfRange {
                        n,
                        min: 2,
                        max: extremal::MAX_RANK,
                    })?;
                let observed = self.report(n, statistic)?.max_value;
                out.push(check(
                    Suite::Bounds,
                    &format!("max-{statistic}-degree"),
                    n,
                    json!(expected),
                    json!(observed),
                ));
                if statistic == Statistic::Total && n == 5 {
                    // Both closed forms apply at n = 5.
                    let other = extremal::max_down_formula(n) + n as u32 - 1;
                    out.push(check(
                        Suite::Bounds,
                        "max-total-degree-overlap",
                        n,
                        json!(other),
                        json!(observed),
                    ));
                }
            }
        }
        Ok(out)
    }

    fn classification(&mut self, rank: Option<usize>) -> Result<Vec<CheckResult>, ExtremalError> {
        let mut out = Vec::new();
        for statistic in Statistic::ALL {
            for n in Self::ranks(Suite::Classification, Some(statistic), rank) {
                let report = self.report(n, statistic)?;
                let name = format!("{statistic}-maximizers");
                if let Some(count) = report.expected.count() {
                    out.push(check(
                        Suite::Classification,
                        &format!("{name}-count"),
                        n,
                        json!(count),
                        json!(report.maximizers.len()),
                    ));
                }
                if let Some(family) = report.expected_family() {
                    out.push(check(
                        Suite::Classification,
                        &name,
                        n,
                        json!(family),
                        json!(report.maximizers),
                    ));
                }
                if statistic == Statistic::Down && n >= 4 {
                    let shuffles = report
                        .maximizers
                        .iter()
                        .filter(|p| is_signed_shuffle_of_increasing(p))
                        .count();
                    out.push(check(
                        Suite::Classification,
                        "down-maximizers-are-sign-shuffles",
                        n,
                        json!(report.maximizers.len()),
                        json!(shuffles),
                    ));
                }
            }
        }
        Ok(out)
    }

    fn lemmas(&mut self, rank: Option<usize>) -> Result<Vec<CheckResult>, ExtremalError> {
        let mut out = Vec::new();
        let reports: Vec<LemmaReport> = match rank {
            Some(n) if n <= 6 => vec![lemma_suite(n, self.jobs)?],
            Some(n) => vec![lemma_suite_sampled(n, SAMPLE_SIZE, SAMPLE_SEED, self.jobs)?],
            None => vec![
                lemma_suite(4, self.jobs)?,
                lemma_suite(5, self.jobs)?,
                lemma_suite_sampled(6, SAMPLE_SIZE, SAMPLE_SEED, self.jobs)?,
            ],
        };
        for report in reports {
            for outcome in &report.outcomes {
                if outcome.permutations == 0 {
                    continue;
                }
                let mut result = check(
                    Suite::Lemmas,
                    &format!(
                        "{}{}",
                        outcome.name,
                        if report.sampled { "-sampled" } else { "" }
                    ),
                    report.n,
                    json!({ "violations": 0 }),
                    json!({ "violations": outcome.violations }),
                );
                if let Some(example) = &outcome.first_counterexample {
                    result.observed["first_counterexample"] = json!(example);
                    result.pass = false;
                }
                out.push(result);
            }
        }
        Ok(out)
    }

    fn oracle(&mut self, rank: Option<usize>) -> Result<Vec<CheckResult>, ExtremalError> {
        let mut out = Vec::new();
        for n in Self::ranks(Suite::Oracle, None, rank) {
            out.extend(self.oracle_at(n)?);
        }
        Ok(out)
    }

    fn oracle_at(&self, n: usize) -> Result<Vec<CheckResult>, ExtremalError> {
        let plan = EnumerationPlan::new(n)?;
        let size = plan.iter().count();
        let mut out = Vec::new();

        // Closed-form length against breadth-first word length.
        if n <= BFS_MAX_RANK {
            let lengths = bfs_word_lengths(n);
            let length_mismatches = lengths
                .iter()
                .filter(|(p, &l)| p.length().value() != l)
                .count();
            out.push(check(
                Suite::Oracle,
                "bfs-group-order",
                n,
                json!(size),
                json!(lengths.len()),
            ));
            out.push(check(
                Suite::Oracle,
                "length-closed-form-vs-bfs",
                n,
                json!(0),
                json!(length_mismatches),
            ));
        }

        #[derive(Default)]
        struct Counts {
            cover_mismatch: usize,
            alpha_sum_mismatch: usize,
            beta_sum_mismatch: usize,
            duality_mismatch: usize,
            undefined_unit_steps: usize,
            round_trip_failures: usize,
            descent_sets: Vec<String>,
        }
        let parts = plan.map_blocks(self.jobs, |block| {
            let mut c = Counts::default();
            for p in block {
                let descents = order::descent_set(&p);
                if *descents.labels() != order::descent_labels_oracle(&p) {
                    c.cover_mismatch += 1;
                }
                let down = order::down_degree(&p);
                if down as usize != descents.len()
                    || down != build_graph(&p, GraphKind::Alpha).total_weight()
                {
                    c.alpha_sum_mismatch += 1;
                }
                let total = order::total_degree(&p);
                if total != build_graph(&p, GraphKind::Beta).total_weight()
                    || total as usize != descents.len() + order::ascent_labels_oracle(&p).len()
                {
                    c.beta_sum_mismatch += 1;
                }
                if order::up_degree(&p) != order::up_degree_by_duality(&p) {
                    c.duality_mismatch += 1;
                }
                c.undefined_unit_steps += order::undefined_unit_steps(&p).len();
                if order::reconstruct_from_descents(&descents, n).ok().as_ref() != Some(&p) {
                    c.round_trip_failures += 1;
                }
                c.descent_sets.push(descents.to_string());
            }
            c
        });
        let mut total = Counts::default();
        let mut distinct = HashSet::new();
        for c in parts {
            total.cover_mismatch += c.cover_mismatch;
            total.alpha_sum_mismatch += c.alpha_sum_mismatch;
            total.beta_sum_mismatch += c.beta_sum_mismatch;
            total.duality_mismatch += c.duality_mismatch;
            total.undefined_unit_steps += c.undefined_unit_steps;
            total.round_trip_failures += c.round_trip_failures;
            distinct.extend(c.descent_sets);
        }
        for (name, observed) in [
            ("covers-vs-length-oracle", total.cover_mismatch),
            ("down-degree-vs-alpha-weight", total.alpha_sum_mismatch),
            ("total-degree-vs-beta-weight", total.beta_sum_mismatch),
            ("up-degree-duality", total.duality_mismatch),
            ("undefined-unit-steps", total.undefined_unit_steps),
            ("descent-reconstruction", total.round_trip_failures),
        ] {
            out.push(check(Suite::Oracle, name, n, json!(0), json!(observed)));
        }
        out.push(check(
            Suite::Oracle,
            "distinct-descent-sets",
            n,
            json!(size),
            json!(distinct.len()),
        ));
        Ok(out)
    }
}
