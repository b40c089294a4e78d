//! Graded dimensions of 2-hom spaces from minimal diagrams of endpoint matchings.

use std::fmt;

use rayon::prelude::*;

use super::{xi_series, XiMode};
use crate::error::{Error, Result};
use crate::scalars::{CoveringScalar, TruncatedSeries};

/// Orientation of an endpoint: `Plus` is an upward `E` strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A word over `{+, -, o}`; each `o` is a parity shift.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoveringSequence {
    pub signs: Vec<Sign>,
    pub shifts: u32,
}

impl From<Vec<Sign>> for CoveringSequence {
    fn from(signs: Vec<Sign>) -> Self {
        Self { signs, shifts: 0 }
    }
}

impl fmt::Display for CoveringSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        for _ in 0..self.shifts {
            f.write_str("o")?;
        }
        Ok(())
    }
}

/// Parse `"+-o+"`; `o` (or `∘`) marks a parity shift, whitespace is ignored.
pub fn parse_sequence(s: &str) -> Result<CoveringSequence> {
    let mut out = CoveringSequence::default();
    for (i, c) in s.char_indices() {
        match c {
            '+' => out.signs.push(Sign::Plus),
            '-' => out.signs.push(Sign::Minus),
            'o' | '∘' => out.shifts += 1,
            c if c.is_whitespace() => {}
            _ => {
                return Err(Error::parse(
                    format!("expected +, - or o, found {c:?}"),
                    i,
                    i + c.len_utf8(),
                ))
            }
        }
    }
    Ok(out)
}

fn sum(signs: &[Sign]) -> i64 {
    signs.iter().map(|s| s.value()).sum()
}

/// Degree and parity of a cap closing adjacent bottom endpoints `(l, r)`
/// with region `mu` on its right.
pub fn cap_degree(l: Sign, r: Sign, mu: i64) -> (i64, u8) {
    match (l, r) {
        (Sign::Minus, Sign::Plus) => (1 + mu, 0),
        (Sign::Plus, Sign::Minus) => (1 - mu, (mu - 1).rem_euclid(2) as u8),
        _ => panic!("cap needs opposite orientations"),
    }
}

/// Degree and parity of a cup opening adjacent top endpoints `(l, r)`
/// with region `mu` on its right.
pub fn cup_degree(l: Sign, r: Sign, mu: i64) -> (i64, u8) {
    match (l, r) {
        (Sign::Plus, Sign::Minus) => (1 - mu, 0),
        (Sign::Minus, Sign::Plus) => (1 + mu, (mu + 1).rem_euclid(2) as u8),
        _ => panic!("cup needs opposite orientations"),
    }
}

fn crossing_degree(a: Sign, b: Sign) -> (i64, u8) {
    if a == b {
        (-2, 1)
    } else {
        (0, 1)
    }
}

/// Endpoint reference: bottom or top row, position from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Bottom(usize),
    Top(usize),
}

/// A perfect matching of endpoints, as pairs.
pub type Matching = Vec<(End, End)>;

fn compatible(lower: &[Sign], upper: &[Sign], a: End, b: End) -> bool {
    match (a, b) {
        (End::Bottom(i), End::Bottom(j)) => lower[i] != lower[j],
        (End::Top(i), End::Top(j)) => upper[i] != upper[j],
        (End::Bottom(i), End::Top(j)) | (End::Top(j), End::Bottom(i)) => lower[i] == upper[j],
    }
}

/// All orientation-compatible perfect matchings.
pub fn matchings(lower: &[Sign], upper: &[Sign]) -> Vec<Matching> {
    let ends: Vec<End> = (0..lower.len())
        .map(End::Bottom)
        .chain((0..upper.len()).map(End::Top))
        .collect();
    fn rec(
        lower: &[Sign],
        upper: &[Sign],
        free: &mut Vec<End>,
        cur: &mut Matching,
        out: &mut Vec<Matching>,
    ) {
        let Some(&first) = free.first() else {
            out.push(cur.clone());
            return;
        };
        for k in 1..free.len() {
            let other = free[k];
            if !compatible(lower, upper, first, other) {
                continue;
            }
            free.remove(k);
            free.remove(0);
            cur.push((first, other));
            rec(lower, upper, free, cur, out);
            cur.pop();
            free.insert(0, first);
            free.insert(k, other);
        }
    }
    let mut out = Vec::new();
    if ends.len().is_multiple_of(2) {
        rec(lower, upper, &mut ends.clone(), &mut Vec::new(), &mut out);
    }
    out
}

/// A matching realized as a minimal diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingDiagram {
    pub lower: Vec<Sign>,
    pub upper: Vec<Sign>,
    pub lambda: i64,
    pub matching: Matching,
    pub crossings: usize,
    pub degree: i64,
    pub parity: u8,
}

impl PairingDiagram {
    pub fn strands(&self) -> usize {
        self.matching.len()
    }
}

struct Sweep {
    degree: i64,
    parity: u8,
    crossings: usize,
}

impl Sweep {
    fn add(&mut self, (d, p): (i64, u8)) {
        self.degree += d;
        self.parity ^= p & 1;
    }

    fn cross(&mut self, a: Sign, b: Sign) {
        self.add(crossing_degree(a, b));
        self.crossings += 1;
    }

    /// Close every pair lying within `row`, innermost first; returns the
    /// remaining through strands in order.
    fn close_pairs(
        &mut self,
        mut row: Vec<(usize, Sign)>,
        lambda: i64,
        close: fn(Sign, Sign, i64) -> (i64, u8),
    ) -> Vec<(usize, Sign)> {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in 0..row.len() {
                for j in i + 1..row.len() {
                    if row[i].0 == row[j].0 && best.is_none_or(|(a, b)| j - i < b - a) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, mut j)) = best else { return row };
            while j > i + 1 {
                self.cross(row[j - 1].1, row[j].1);
                row.swap(j - 1, j);
                j -= 1;
            }
            let mu = lambda + 2 * row[j + 1..].iter().map(|s| s.1.value()).sum::<i64>();
            self.add(close(row[i].1, row[j].1, mu));
            row.drain(i..=j);
        }
    }
}

/// Realize a matching minimally: caps from the bottom innermost first, cups
/// from the top innermost first, then sort the through strands.
pub fn realize(lower: &[Sign], upper: &[Sign], lambda: i64, matching: &Matching) -> PairingDiagram {
    let mut id_bottom = vec![0; lower.len()];
    let mut id_top = vec![0; upper.len()];
    for (k, &(a, b)) in matching.iter().enumerate() {
        for e in [a, b] {
            match e {
                End::Bottom(i) => id_bottom[i] = k,
                End::Top(i) => id_top[i] = k,
            }
        }
    }
    let mut sw = Sweep {
        degree: 0,
        parity: 0,
        crossings: 0,
    };
    let bottom: Vec<(usize, Sign)> = id_bottom.into_iter().zip(lower.iter().copied()).collect();
    let top: Vec<(usize, Sign)> = id_top.into_iter().zip(upper.iter().copied()).collect();
    let mut mid_b = sw.close_pairs(bottom, lambda, cap_degree);
    let mid_t = sw.close_pairs(top, lambda, cup_degree);
    // bubble sort the bottom order into the top order
    let target: Vec<usize> = mid_t.iter().map(|s| s.0).collect();
    let rank = |id: usize| {
        target
            .iter()
            .position(|&t| t == id)
            .expect("through strand")
    };
    let n = mid_b.len();
    for pass in 0..n {
        for j in 0..n - 1 - pass.min(n - 1) {
            if rank(mid_b[j].0) > rank(mid_b[j + 1].0) {
                sw.cross(mid_b[j].1, mid_b[j + 1].1);
                mid_b.swap(j, j + 1);
            }
        }
    }
    PairingDiagram {
        lower: lower.to_vec(),
        upper: upper.to_vec(),
        lambda,
        matching: matching.clone(),
        crossings: sw.crossings,
        degree: sw.degree,
        parity: sw.parity,
    }
}

/// `sum_D pi^p q^deg` over minimal diagrams, before dot and bubble factors.
pub fn diagram_polynomial(lower: &[Sign], upper: &[Sign], lambda: i64) -> CoveringScalar {
    let ms = matchings(lower, upper);
    let diagrams: Vec<PairingDiagram> = ms
        .par_iter()
        .map(|m| realize(lower, upper, lambda, m))
        .collect();
    let mut out = CoveringScalar::zero();
    for d in diagrams {
        out += &CoveringScalar::monomial(1, d.degree, d.parity as i64);
    }
    out
}

/// `q`-graded, `pi`-graded dimension of the 2-hom space between the
/// sequences at rightmost weight `lambda`, through `cutoff`.
pub fn hom_dim_total(
    lower: &CoveringSequence,
    upper: &CoveringSequence,
    lambda: i64,
    mode: XiMode,
    cutoff: i64,
) -> TruncatedSeries {
    let (lo, up) = (&lower.signs, &upper.signs);
    if (lo.len() + up.len()) % 2 == 1 || sum(lo) != sum(up) {
        return TruncatedSeries::zero(cutoff);
    }
    let mut poly = diagram_polynomial(lo, up, lambda);
    if (lower.shifts + upper.shifts) % 2 == 1 {
        poly = &poly * &CoveringScalar::pi();
    }
    if poly.is_zero() {
        return TruncatedSeries::zero(cutoff);
    }
    let strands = (lo.len() + up.len()) / 2;
    let work = cutoff - poly.min_q().unwrap_or(0).min(0);
    let mut base = xi_series(mode, work);
    let dot = TruncatedSeries::geometric(2, 1, work);
    for _ in 0..strands {
        base = base.mul(&dot);
    }
    base.scale(&poly).truncate(cutoff)
}

/// The same series split into its even part and its `pi`-shifted part.
pub fn hom_dim_series(
    lower: &CoveringSequence,
    upper: &CoveringSequence,
    lambda: i64,
    mode: XiMode,
    cutoff: i64,
) -> (TruncatedSeries, TruncatedSeries) {
    hom_dim_total(lower, upper, lambda, mode, cutoff).split_parity()
}

/// Outcome of the enumerator's internal consistency checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// Moving the leftmost bottom endpoint to the top through a cup.
    pub adjunction: Option<bool>,
    /// Vertical reflection with orientation reversal, at `pi = 1`.
    pub reflection: bool,
    /// Every closed bubble has even degree.
    pub closed_even: bool,
    /// Odd endpoint count gives zero.
    pub odd_zero: bool,
}

impl ConsistencyReport {
    pub fn ok(&self) -> bool {
        self.adjunction.unwrap_or(true) && self.reflection && self.closed_even && self.odd_zero
    }
}

/// Checks that the char 2 basis forces on the enumerator.
pub fn char2_consistency(
    lower: &[Sign],
    upper: &[Sign],
    lambda: i64,
    cutoff: i64,
) -> ConsistencyReport {
    let mode = XiMode::Char2;
    let total = |lo: &[Sign], up: &[Sign]| {
        hom_dim_total(
            &lo.to_vec().into(),
            &up.to_vec().into(),
            lambda,
            mode,
            cutoff,
        )
    };
    let adjunction = lower.split_first().map(|(&s, rest)| {
        // Hom(s rest, upper) -> Hom(rest, (-s) upper) by a cup at weight lambda + 2 sum(rest)
        let mu = lambda + 2 * sum(rest);
        let (d, p) = cup_degree(s.flip(), s, mu);
        let mut up2 = vec![s.flip()];
        up2.extend_from_slice(upper);
        let lhs = total(rest, &up2);
        let rhs = total(lower, upper).shift(d, p);
        let through = lhs.cutoff().min(rhs.cutoff());
        lhs.agrees_through(&rhs, through)
    });
    let reflection = total(lower, upper).at_pi_one() == total(upper, lower).at_pi_one();
    let closed_even = (-6..=6).all(|mu| {
        [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)]
            .into_iter()
            .all(|(l, r)| (cap_degree(l, r, mu).0 + cup_degree(l, r, mu).0) % 2 == 0)
    });
    let mut odd = lower.to_vec();
    odd.push(Sign::Plus);
    let odd_zero = (lower.len() + upper.len()) % 2 == 1 || total(&odd, upper).is_zero();
    ConsistencyReport {
        adjunction,
        reflection,
        closed_even,
        odd_zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> CoveringSequence {
        parse_sequence(s).unwrap()
    }

    #[test]
    fn empty_is_xi() {
        for mode in XiMode::ALL {
            let t = hom_dim_total(&seq(""), &seq(""), 3, mode, 16);
            assert_eq!(t, xi_series(mode, 16));
        }
    }

    #[test]
    fn identity_strand() {
        for mode in XiMode::ALL {
            let t = hom_dim_total(&seq("+"), &seq("+"), 0, mode, 16);
            let expect = xi_series(mode, 16).mul(&TruncatedSeries::geometric(2, 1, 16));
            assert_eq!(t, expect);
        }
    }

    #[test]
    fn single_cap() {
        for lam in -3..=3 {
            let t = hom_dim_total(&seq("+-"), &seq(""), lam, XiMode::Char2, 12);
            let (d, p) = cap_degree(Sign::Plus, Sign::Minus, lam);
            assert_eq!(d, 1 - lam);
            let m = matchings(&seq("+-").signs, &[]);
            assert_eq!(m.len(), 1);
            let lead = t.terms().next().unwrap().0;
            assert_eq!(lead, (d, p));
        }
    }

    #[test]
    fn matching_counts() {
        assert_eq!(matchings(&seq("+-").signs, &seq("+-").signs).len(), 2);
        assert_eq!(matchings(&seq("++").signs, &seq("++").signs).len(), 2);
        assert_eq!(matchings(&seq("+").signs, &seq("").signs).len(), 0);
        assert_eq!(matchings(&seq("+-+-").signs, &seq("").signs).len(), 2);
    }

    #[test]
    fn crossing_counts() {
        let lo = seq("++").signs;
        for m in matchings(&lo, &lo) {
            let d = realize(&lo, &lo, 0, &m);
            let straight = m.contains(&(End::Bottom(0), End::Top(0)));
            assert_eq!(d.crossings, if straight { 0 } else { 1 });
            assert_eq!(d.degree, if straight { 0 } else { -2 });
        }
    }

    #[test]
    fn consistency_small_cases() {
        let cases = [
            ("+", "+", 1),
            ("+-", "", 2),
            ("-+", "", -1),
            ("+-", "+-", 0),
            ("++", "++", 3),
            ("+-+", "+", 1),
            ("-+", "+-", -2),
            ("+--", "-", 2),
        ];
        for (lo, up, lam) in cases {
            let r = char2_consistency(&seq(lo).signs, &seq(up).signs, lam, 12);
            assert!(r.ok(), "{lo} {up} {lam}: {r:?}");
        }
    }

    #[test]
    fn consistency_exhaustive() {
        let words = |n: usize| -> Vec<Vec<Sign>> {
            (0..1usize << n)
                .map(|bits| {
                    (0..n)
                        .map(|i| {
                            if bits >> i & 1 == 1 {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            }
                        })
                        .collect()
                })
                .collect()
        };
        for nl in 0..=3 {
            for nu in 0..=3 {
                if (nl + nu) % 2 == 1 {
                    continue;
                }
                for lo in words(nl) {
                    for up in words(nu) {
                        for lam in -2..=2 {
                            let r = char2_consistency(&lo, &up, lam, 8);
                            assert!(r.ok(), "{lo:?} {up:?} {lam}: {r:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parity_shift() {
        let a = hom_dim_total(&seq("o+"), &seq("+"), 0, XiMode::Char2, 8);
        let b = hom_dim_total(&seq("+"), &seq("+"), 0, XiMode::Char2, 8);
        assert_eq!(a.split_parity().0, b.split_parity().1);
        assert!(parse_sequence("+x").is_err());
    }
}
