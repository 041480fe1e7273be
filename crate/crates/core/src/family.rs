//! Enumeration sequences for one-parameter families of instances, linear
//! recurrence fitting and rational generating functions.
//!
//! Family member `i` has `i + r` missionaries and `i` cannibals with a fixed
//! boat and margin. Counts come from the transfer method. Fitting is done in
//! exact rational arithmetic; a recurrence is only accepted when at least two
//! equations beyond the unknowns confirm it.

use std::fmt;
use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::McParams;
use crate::species::SpeciesPuzzle;
use crate::transfer::{solve_by_transfer, TransferOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(
        "surplus r = {surplus} is below the margin d = {margin}; every start would be illegal"
    )]
    SurplusBelowMargin { surplus: u32, margin: u32 },
    #[error("at least one term is required")]
    NoTerms,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least {needed} terms to fit up to the requested order, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("denominator has a zero constant term")]
    ZeroConstantTerm,
    #[error("series coefficient {index} is not an integer")]
    NonIntegral { index: usize },
    #[error("need {needed} initial terms for this recurrence, got {got}")]
    ShortHead { needed: usize, got: usize },
}

/// `(i + surplus, i, boat, margin)` for `i` in `first_index..first_index + terms`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub surplus: u32,
    pub boat: u32,
    pub margin: u32,
    pub terms: usize,
    pub first_index: u32,
}

impl FamilySpec {
    pub fn new(surplus: u32, boat: u32, margin: u32, terms: usize) -> Result<Self, FamilyError> {
        if surplus < margin {
            return Err(FamilyError::SurplusBelowMargin { surplus, margin });
        }
        if terms == 0 {
            return Err(FamilyError::NoTerms);
        }
        Ok(Self {
            surplus,
            boat,
            margin,
            terms,
            first_index: 1,
        })
    }

    /// Starts the family at another index, e.g. `0` for the member with no
    /// cannibals.
    pub fn starting_at(mut self, first_index: u32) -> Self {
        self.first_index = first_index;
        self
    }

    pub fn indices(&self) -> Range<u32> {
        self.first_index..self.first_index + self.terms as u32
    }

    pub fn params(&self, i: u32) -> McParams {
        McParams::unchecked(i + self.surplus, i, self.boat, self.margin)
    }

    pub fn describe(&self) -> String {
        let missionaries = if self.surplus == 0 {
            "i".to_string()
        } else {
            format!("i+{}", self.surplus)
        };
        format!(
            "{missionaries} missionaries, i cannibals, boat capacity {}, safety margin {}",
            self.boat, self.margin
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTerm {
    Solved { crossings: usize, count: BigUint },
    Unsolvable,
}

impl FamilyTerm {
    /// The count, with `0` for unsolvable members.
    pub fn value(&self) -> BigInt {
        match self {
            FamilyTerm::Solved { count, .. } => BigInt::from(count.clone()),
            FamilyTerm::Unsolvable => BigInt::zero(),
        }
    }
}

pub fn family_term(p: &McParams) -> FamilyTerm {
    match solve_by_transfer(&SpeciesPuzzle::missionaries_cannibals(p)) {
        TransferOutcome::Solvable {
            crossings, count, ..
        } => FamilyTerm::Solved { crossings, count },
        TransferOutcome::Unsolvable { .. } => FamilyTerm::Unsolvable,
    }
}

/// Counts for every member of the family, computed in parallel.
pub fn family_counts(fs: &FamilySpec) -> Vec<FamilyTerm> {
    let indices: Vec<u32> = fs.indices().collect();
    indices
        .par_iter()
        .map(|&i| family_term(&fs.params(i)))
        .collect()
}

/// `a(n) = c_1 a(n-1) + ... + c_q a(n-q)` for every `n >= offset + q`.
///
/// Indices are positions in the fitted sequence, starting at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub coefficients: Vec<BigRational>,
    pub offset: usize,
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// First index `n` at which the relation is imposed.
    pub fn first_constrained(&self) -> usize {
        self.offset + self.order()
    }

    fn predict(&self, seq: &[BigRational], n: usize) -> BigRational {
        self.coefficients
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (j, c)| acc + c * &seq[n - j - 1])
    }

    /// Whether every term from [`Self::first_constrained`] on obeys the relation.
    pub fn verify(&self, seq: &[BigInt]) -> bool {
        let q: Vec<BigRational> = seq.iter().cloned().map(BigRational::from_integer).collect();
        (self.first_constrained()..seq.len()).all(|n| self.predict(&q, n) == q[n])
    }

    /// Extends `seq` to `len` terms using the relation.
    pub fn extend(&self, seq: &[BigInt], len: usize) -> Vec<BigRational> {
        let mut out: Vec<BigRational> =
            seq.iter().cloned().map(BigRational::from_integer).collect();
        while out.len() < len {
            let n = out.len();
            let next = self.predict(&out, n);
            out.push(next);
        }
        out.truncate(len.max(seq.len()));
        out
    }

    /// Renders the relation with `var` as the index name.
    pub fn render(&self, var: &str) -> String {
        let mut s = format!("a({var}) =");
        let mut first = true;
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                s.push_str(if c.is_negative() { " -" } else { "" });
            } else {
                s.push_str(&format!(" {sign}"));
            }
            let magnitude = c.abs();
            s.push(' ');
            if !magnitude.is_one() {
                s.push_str(&format!("{magnitude}*"));
            }
            s.push_str(&format!("a({var}-{})", j + 1));
            first = false;
        }
        if first {
            s.push_str(" 0");
        }
        s
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} for n >= {}",
            self.render("n"),
            self.first_constrained()
        )
    }
}

/// Solves `A c = b` exactly; returns one solution (free unknowns set to zero)
/// or `None` if the system is inconsistent.
fn solve_exact(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut solution = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        solution[col] = rows[i][unknowns].clone();
    }
    Some(solution)
}

/// Fits a recurrence of exactly `order` terms starting at `offset`, using
/// every available equation. Needs at least `order + 2` equations.
pub fn fit_recurrence_of_order(
    seq: &[BigInt],
    order: usize,
    offset: usize,
) -> Option<LinearRecurrence> {
    if order == 0 || seq.len() < offset + 2 * order + 2 {
        return None;
    }
    let q: Vec<BigRational> = seq.iter().cloned().map(BigRational::from_integer).collect();
    let rows: Vec<Vec<BigRational>> = (offset + order..seq.len())
        .map(|n| {
            let mut row: Vec<BigRational> = (1..=order).map(|j| q[n - j].clone()).collect();
            row.push(q[n].clone());
            row
        })
        .collect();
    let coefficients = solve_exact(rows, order)?;
    let rec = LinearRecurrence {
        coefficients,
        offset,
    };
    debug_assert!(rec.verify(seq));
    Some(rec)
}

/// Drops trailing zero coefficients: order `q` at offset `o` with `c_q = 0`
/// is the same relation as order `q - 1` at offset `o + 1`.
fn normalize(mut rec: LinearRecurrence) -> LinearRecurrence {
    while rec.order() > 1 && rec.coefficients.last().is_some_and(Zero::is_zero) {
        rec.coefficients.pop();
        rec.offset += 1;
    }
    rec
}

/// Minimal-order recurrence (up to `max_order`) holding for all terms from
/// `offset` on.
pub fn fit_linear_recurrence(
    seq: &[BigInt],
    max_order: usize,
    offset: usize,
) -> Result<Option<LinearRecurrence>, FitError> {
    let needed = 2 * max_order + offset + 2;
    if seq.len() < needed {
        return Err(FitError::InsufficientData {
            needed,
            got: seq.len(),
        });
    }
    Ok((1..=max_order)
        .find_map(|q| fit_recurrence_of_order(seq, q, offset))
        .map(normalize))
}

/// Searches orders `1..=max_order` and, for each, every offset that still
/// leaves two confirming equations. Returns the lowest order, then the
/// earliest offset.
pub fn find_recurrence(seq: &[BigInt], max_order: usize) -> Option<LinearRecurrence> {
    (1..=max_order).find_map(|q| {
        let last_offset = seq.len().checked_sub(2 * q + 2)?;
        (0..=last_offset).find_map(|offset| fit_recurrence_of_order(seq, q, offset))
    })
}

/// `N(x) / D(x)` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalGf {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigInt::zero());
    }
    v
}

/// Generating function `sum a(n) x^n` of the sequence that starts with `head`
/// and continues by `rec`.
///
/// The denominator is `1 - c_1 x - ... - c_q x^q` cleared of fractions; when
/// the coefficients are integers its constant term is exactly `1`. The
/// numerator absorbs the irregular head.
pub fn rational_gf(rec: &LinearRecurrence, head: &[BigInt]) -> Result<RationalGf, GfError> {
    let needed = rec.first_constrained();
    if head.len() < needed {
        return Err(GfError::ShortHead {
            needed,
            got: head.len(),
        });
    }
    let mut den: Vec<BigRational> = vec![BigRational::one()];
    den.extend(rec.coefficients.iter().map(|c| -c));
    let a: Vec<BigRational> = head
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    let num: Vec<BigRational> = (0..needed)
        .map(|n| {
            (0..=n.min(rec.order())).fold(BigRational::zero(), |acc, j| acc + &den[j] * &a[n - j])
        })
        .collect();
    let scale = BigRational::from_integer(lcm_of_denominators(den.iter().chain(&num)));
    let to_int = |v: &BigRational| (v * &scale).to_integer();
    let mut numerator: Vec<BigInt> = num.iter().map(to_int).collect();
    let mut denominator: Vec<BigInt> = den.iter().map(to_int).collect();
    let content = numerator
        .iter()
        .chain(&denominator)
        .fold(BigInt::zero(), |g, v| g.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for v in numerator.iter_mut().chain(denominator.iter_mut()) {
            *v /= &content;
        }
    }
    Ok(RationalGf {
        numerator: trim(numerator),
        denominator: trim(denominator),
    })
}

/// First `count` Taylor coefficients of `gf`.
pub fn series_coefficients(gf: &RationalGf, count: usize) -> Result<Vec<BigInt>, GfError> {
    let d0 = gf
        .denominator
        .first()
        .filter(|d| !d.is_zero())
        .ok_or(GfError::ZeroConstantTerm)?;
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for n in 0..count {
        let mut acc = gf.numerator.get(n).cloned().unwrap_or_default();
        for (j, dj) in gf
            .denominator
            .iter()
            .enumerate()
            .skip(1)
            .take_while(|(j, _)| *j <= n)
        {
            acc -= dj * &out[n - j];
        }
        let (q, r) = acc.div_rem(d0);
        if !r.is_zero() {
            return Err(GfError::NonIntegral { index: n });
        }
        out.push(q);
    }
    Ok(out)
}

fn render_univariate(coeffs: &[BigInt]) -> String {
    let mut s = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if s.is_empty() {
            if negative {
                s.push('-');
            }
        } else {
            s.push_str(if negative { " - " } else { " + " });
        }
        let m = c.abs();
        match k {
            0 => s.push_str(&m.to_string()),
            _ => {
                if !m.is_one() {
                    s.push_str(&format!("{m}*"));
                }
                s.push('x');
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for RationalGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})/({})",
            render_univariate(&self.numerator),
            render_univariate(&self.denominator)
        )
    }
}

/// A conjectured proposition about a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub family: FamilySpec,
    pub max_order: usize,
    pub terms: Vec<FamilyTerm>,
    pub recurrence: Option<LinearRecurrence>,
    pub gf: Option<RationalGf>,
    /// Equations beyond the unknowns that confirmed the fit.
    pub held_out: usize,
    /// Recurrence and generating function both reproduce every term.
    pub verified: bool,
}

impl ConjectureReport {
    pub fn values(&self) -> Vec<BigInt> {
        self.terms.iter().map(FamilyTerm::value).collect()
    }

    /// Family index from which the terms form a recurrent sequence.
    pub fn recurrent_from(&self) -> Option<u32> {
        self.recurrence
            .as_ref()
            .map(|r| self.family.first_index + r.offset as u32)
    }

    pub fn all_unsolvable(&self) -> bool {
        self.terms.iter().all(|t| *t == FamilyTerm::Unsolvable)
    }
}

pub fn conjecture_report(fs: &FamilySpec, max_order: usize) -> ConjectureReport {
    let terms = family_counts(fs);
    let values: Vec<BigInt> = terms.iter().map(FamilyTerm::value).collect();
    let mut report = ConjectureReport {
        family: *fs,
        max_order,
        terms,
        recurrence: None,
        gf: None,
        held_out: 0,
        verified: false,
    };
    if report.all_unsolvable() {
        return report;
    }
    let Some(rec) = find_recurrence(&values, max_order) else {
        return report;
    };
    let gf = rational_gf(&rec, &values).expect("the head covers the recurrence window");
    let series_ok = series_coefficients(&gf, values.len()).is_ok_and(|s| s == values);
    report.held_out = values.len() - rec.first_constrained() - rec.order();
    report.verified = rec.verify(&values) && series_ok;
    report.recurrence = Some(rec);
    report.gf = Some(gf);
    report
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = &self.family;
        let range = fam.indices();
        let (lo, hi) = (range.start, range.end - 1);
        writeln!(f, "Family: {} (i = {lo}..{hi})", fam.describe())?;
        let shown: Vec<String> = self.values().iter().map(ToString::to_string).collect();
        writeln!(f, "Terms: {}", shown.join(", "))?;
        let unsolvable: Vec<String> = fam
            .indices()
            .zip(&self.terms)
            .filter(|(_, t)| **t == FamilyTerm::Unsolvable)
            .map(|(i, _)| i.to_string())
            .collect();
        if self.all_unsolvable() {
            return writeln!(f, "No solutions exist for any i in {lo}..{hi}.");
        }
        if !unsolvable.is_empty() {
            writeln!(f, "Unsolvable at i = {}", unsolvable.join(", "))?;
        }
        let (Some(rec), Some(gf)) = (&self.recurrence, &self.gf) else {
            return writeln!(f, "No recurrence found up to order {}.", self.max_order);
        };
        let from = fam.first_index as usize + rec.first_constrained();
        writeln!(f, "Recurrence: {} for i >= {from}", rec.render("i"))?;
        writeln!(
            f,
            "Recurrent from: i = {}",
            fam.first_index as usize + rec.offset
        )?;
        let shift = match fam.first_index {
            0 => "a(n)".to_string(),
            s => format!("a(n+{s})"),
        };
        writeln!(f, "Generating function: sum_{{n>=0}} {shift} x^n = {gf}")?;
        let status = if self.verified { "verified" } else { "FAILED" };
        writeln!(
            f,
            "Check: {status} on all {} terms ({} beyond the fitted equations)",
            shown.len(),
            self.held_out
        )
    }
}
