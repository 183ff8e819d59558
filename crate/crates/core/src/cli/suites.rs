use std::ops::RangeInclusive;

use clap::ValueEnum;

use super::Params;
use crate::counting::{check_component_classes, fiber_statistics, omega_count_closed};
use crate::error::Result;
use crate::fields::pow_u128;
use crate::geometry::{enumerate_dl, enumerate_dl_bruteforce, factorization_check, residue_check, SymbolicCap, VarietyCtx};
use crate::quotients::{
    check_boundary, check_chart_agreement, check_full_quotient, check_quotient, check_roundtrip, lemma_aa_certify,
    recursion_table, QuotientMaps,
};
use crate::report::{CheckLine, Report};
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    LemmaAa,
    Factorization,
    Quotient,
    CompactifiedQuotient,
    Covering,
    Roundtrip,
    All,
}

/// Largest `|P^{d-1}(F_{q^m})|` in the default quotient grid.
pub const QUOTIENT_GRID_POINTS: u128 = 4_000_000;

/// Parameter selection for a suite: explicit values override the defaults.
#[derive(Debug, Clone, Default)]
pub struct Grid {
    pub d: Option<usize>,
    pub q: Option<u64>,
    pub m: Option<RangeInclusive<u32>>,
    pub i: Option<usize>,
    pub quick: bool,
}

impl Grid {
    pub fn from_params(p: &Params, quick: bool) -> Self {
        Grid { d: p.d, q: p.q, m: p.m.clone(), i: p.i, quick }
    }

    fn keep(&self, d: usize, q: u64) -> bool {
        self.d.is_none_or(|x| x == d) && self.q.is_none_or(|x| x == q)
    }

    fn i_values(&self, d: usize) -> Vec<usize> {
        match self.i {
            Some(i) => vec![i],
            None => (1..d).collect(),
        }
    }

    fn symbolic_cases(&self, defaults: &[(usize, u64)]) -> Vec<(usize, u64)> {
        match (self.d, self.q) {
            (Some(d), Some(q)) => vec![(d, q)],
            _ => defaults.iter().copied().filter(|&(d, q)| self.keep(d, q)).collect(),
        }
    }

    /// Rows `(d, q, m)`; with `d`, `q` and `m` all given, exactly those.
    fn rows(&self, defaults: Vec<(usize, u64, u32)>) -> Vec<(usize, u64, u32)> {
        if let (Some(d), Some(q), Some(m)) = (self.d, self.q, &self.m) {
            return m.clone().map(|m| (d, q, m)).collect();
        }
        defaults
            .into_iter()
            .filter(|&(d, q, m)| self.keep(d, q) && self.m.as_ref().is_none_or(|r| r.contains(&m)))
            .collect()
    }
}

fn projective_size(d: usize, q: u64, m: u32) -> u128 {
    let big = pow_u128(q, m);
    (0..d as u32).map(|j| big.saturating_pow(j)).sum()
}

/// `d <= 4`, `q ∈ {2, 3, 4}`, every `m` with `|P^{d-1}(F_{q^m})| <= max_points`
/// and `q^m` within the default field cap.
pub fn count_grid(max_points: u128) -> Vec<(usize, u64, u32)> {
    let mut out = Vec::new();
    for d in 1..=4 {
        for q in [2u64, 3, 4] {
            let mut m = 1;
            while pow_u128(q, m) <= crate::fields::DEFAULT_FIELD_CAP as u128 && projective_size(d, q, m) <= max_points {
                out.push((d, q, m));
                m += 1;
            }
        }
    }
    out
}

/// `d ∈ {2, 3, 4}`, `q ∈ {2, 3}`, `m ∈ {d, d+1, 2d}` with `|P^{d-1}| <= QUOTIENT_GRID_POINTS`.
pub fn quotient_grid() -> Vec<(usize, u64, u32)> {
    let mut out = Vec::new();
    for d in 2..=4usize {
        for q in [2u64, 3] {
            for m in [d as u32, d as u32 + 1, 2 * d as u32] {
                if projective_size(d, q, m) <= QUOTIENT_GRID_POINTS {
                    out.push((d, q, m));
                }
            }
        }
    }
    out
}

fn quick_grid(min_d: usize) -> Vec<(usize, u64, u32)> {
    let mut out = Vec::new();
    for d in min_d..=3 {
        for q in [2u64, 3] {
            for m in 1..=4 {
                out.push((d, q, m));
            }
        }
    }
    out
}

fn gl_order(d: usize, q: u64) -> u128 {
    let qd = pow_u128(q, d as u32);
    (0..d as u32).map(|j| qd - pow_u128(q, j)).product()
}

pub fn run_suite(suite: Suite, grid: &Grid, budget: Budget, modulus: Option<Vec<u32>>) -> Result<Report> {
    let ctx = |d: usize, q: u64, m: u32| VarietyCtx::build(d, q, m, budget, modulus.clone());
    let cap = SymbolicCap::default();
    let mut report = Report::default();
    let point_rows = |min_d: usize| {
        if grid.quick {
            grid.rows(quick_grid(min_d))
        } else {
            grid.rows(count_grid(10_000_000).into_iter().filter(|r| r.0 >= min_d).collect())
        }
    };
    let quotient_rows = || {
        let rows = if grid.quick {
            grid.rows(quick_grid(2))
        } else {
            grid.rows(quotient_grid())
        };
        rows.into_iter().filter(|&(d, _, m)| m as usize >= d).collect::<Vec<_>>()
    };
    let run = |s: Suite| -> Result<Report> {
        let mut r = Report::default();
        match s {
            Suite::LemmaAa => {
                for (d, q) in grid.symbolic_cases(&[(3, 2), (3, 3), (4, 2)]) {
                    let base = ctx(d, q, 1)?.base().clone();
                    let table = recursion_table(&base, d, cap)?;
                    r.push(
                        CheckLine::new("lemma-aa.recursion")
                            .param("d", d)
                            .param("q", q)
                            .pass(table.resubstitution_check()?),
                    );
                    for i in grid.i_values(d) {
                        r.extend(lemma_aa_certify(&base, d, i, cap)?);
                    }
                }
            }
            Suite::Factorization => {
                for (d, q) in grid.symbolic_cases(&[(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]) {
                    let base = ctx(d, q, 1)?.base().clone();
                    let code = |c: Option<crate::fields::Fe>| c.map_or("none".to_string(), |c| base.code(c).to_string());
                    for i in grid.i_values(d) {
                        let f = factorization_check(&base, d, i, cap)?;
                        r.push(
                            CheckLine::new("factorization")
                                .param("d", d)
                                .param("q", q)
                                .param("i", i)
                                .pass(f.holds && f.product_holds)
                                .detail(format!("C={} product_C={}", code(f.constant), code(f.product_constant))),
                        );
                        let res = residue_check(&base, d, i, cap)?;
                        r.push(
                            CheckLine::new("factorization.residue")
                                .param("d", d)
                                .param("q", q)
                                .param("i", i)
                                .pass(res.constant.is_some())
                                .detail(format!("constant={} exact={}", code(res.constant), res.exact)),
                        );
                    }
                }
            }
            Suite::Quotient => {
                for (d, q, m) in quotient_rows() {
                    let c = ctx(d, q, m)?;
                    r.extend(check_full_quotient(&c)?);
                    for i in grid.i_values(d) {
                        r.extend(check_quotient(&QuotientMaps::new(&c, i)?)?);
                    }
                }
            }
            Suite::CompactifiedQuotient => {
                for (d, q, m) in quotient_rows() {
                    if cap.check(q, d).is_err() && grid.d.is_none() {
                        continue;
                    }
                    let c = ctx(d, q, m)?;
                    for i in grid.i_values(d) {
                        let maps = QuotientMaps::with_table(&c, i, cap)?;
                        r.extend(check_chart_agreement(&maps)?);
                        r.extend(check_boundary(&maps)?);
                    }
                }
            }
            Suite::Covering => {
                for (d, q, m) in point_rows(1) {
                    let c = ctx(d, q, m)?;
                    let line = |name: &str| CheckLine::new(name).param("d", d).param("q", q).param("m", m);
                    let s = fiber_statistics(&c)?;
                    let closed = omega_count_closed(d, q, m);
                    r.push(line("covering.count").pass(s.omega == closed).detail(format!(
                        "omega_enum={} omega_closed={closed}",
                        s.omega
                    )));
                    r.push(line("covering.fibers").pass(s.holds()).detail(format!(
                        "dl={} fiber={} nonempty={} empty={} classes={}",
                        s.dl,
                        s.expected,
                        s.nonempty,
                        s.empty,
                        s.classes.len()
                    )));
                    if c.affine_size() <= 1 << 20 {
                        let same = enumerate_dl(&c)? == enumerate_dl_bruteforce(&c)?;
                        r.push(line("covering.bruteforce").pass(same));
                    }
                    if s.dl > 0
                        && s.dl * gl_order(d, q) <= 20_000_000
                        && pow_u128(q, (d * d) as u32) <= budget.points as u128
                    {
                        r.extend(check_component_classes(&c)?);
                    }
                }
            }
            Suite::Roundtrip => {
                for (d, q, m) in point_rows(1).into_iter().filter(|&(d, _, m)| m as usize >= d) {
                    r.extend(check_roundtrip(&ctx(d, q, m)?)?);
                }
            }
            Suite::All => unreachable!(),
        }
        Ok(r)
    };
    if suite == Suite::All {
        for s in [
            Suite::LemmaAa,
            Suite::Factorization,
            Suite::Roundtrip,
            Suite::Covering,
            Suite::Quotient,
            Suite::CompactifiedQuotient,
        ] {
            report.extend(run(s)?);
        }
    } else {
        report = run(suite)?;
    }
    Ok(report)
}
