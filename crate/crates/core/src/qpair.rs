//! Numerator/denominator recurrences for partial-quotient sequences.
//!
//! A partial-quotient sequence `a_0, a_1, ...` drives the recurrences
//! `p_{n+1} = a_{n+1} p_n + p_{n-1}`, `q_{n+1} = a_{n+1} q_n + q_{n-1}`
//! seeded by `p_{-1} = 1, q_{-1} = 0, p_0 = a_0, q_0 = 1`; `p_n / q_n` is
//! the n-th convergent.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{GRational, Gaussian, Scalar};

/// The rolling recurrence state `(p_{n-1}, p_n, q_{n-1}, q_n)`.
///
/// Invariant: `p_n q_{n-1} - q_n p_{n-1} = (-1)^{n-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPairState<T: Scalar> {
    pub p_prev: Gaussian<T>,
    pub p_cur: Gaussian<T>,
    pub q_prev: Gaussian<T>,
    pub q_cur: Gaussian<T>,
    /// Step index of the current column; `0` right after seeding.
    pub n: usize,
}

impl<T: Scalar> QPairState<T> {
    /// Seed with `a_0`, producing the state at `n = 0`.
    pub fn seed(a0: Gaussian<T>) -> Self {
        QPairState {
            p_prev: Gaussian::one(),
            p_cur: a0,
            q_prev: Gaussian::zero(),
            q_cur: Gaussian::one(),
            n: 0,
        }
    }

    /// Apply the recurrences once with partial quotient `a`.
    pub fn extend(&self, a: &Gaussian<T>) -> Self {
        QPairState {
            p_prev: self.p_cur.clone(),
            p_cur: a.mul(&self.p_cur).add(&self.p_prev),
            q_prev: self.q_cur.clone(),
            q_cur: a.mul(&self.q_cur).add(&self.q_prev),
            n: self.n + 1,
        }
    }

    /// `p_n q_{n-1} - q_n p_{n-1}`, which must equal `(-1)^{n-1}`.
    pub fn det(&self) -> Gaussian<T> {
        self.p_cur.mul(&self.q_prev).sub(&self.q_cur.mul(&self.p_prev))
    }

    pub fn det_ok(&self) -> bool {
        let expect = if self.n % 2 == 0 { -1 } else { 1 };
        self.det() == Gaussian::from_i64s(expect, 0)
    }

    /// The convergent `p_n / q_n` in canonical form; fails when `q_n = 0`.
    pub fn convergent(&self) -> Result<GRational<T>> {
        if self.q_cur.is_zero() {
            return Err(Error::ZeroDenominator { index: self.n });
        }
        GRational::new(self.p_cur.clone(), self.q_cur.clone())
    }
}

/// A finite tuple of Gaussian integers.
#[derive(Clone, PartialEq, Eq)]
pub struct Block<T = num_bigint::BigInt>(pub Vec<Gaussian<T>>);

impl<T: Scalar> fmt::Debug for Block<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<T: Scalar> Block<T> {
    pub fn new(entries: Vec<Gaussian<T>>) -> Self {
        Block(entries)
    }

    pub fn from_i64_pairs(pairs: &[(i64, i64)]) -> Self {
        Block(pairs.iter().map(|&(r, i)| Gaussian::from_i64s(r, i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Gaussian<T>] {
        &self.0
    }

    /// The block with entries in reverse order.
    pub fn reversed(&self) -> Self {
        Block(self.0.iter().rev().cloned().collect())
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Block(v)
    }

    /// Run the recurrences across the whole block (first entry is `a_0`).
    /// Returns every intermediate state, `states[k]` being the state at
    /// step `k`.
    pub fn qpair_states(&self) -> Vec<QPairState<T>> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut it = self.0.iter();
        if let Some(a0) = it.next() {
            let mut st = QPairState::seed(a0.clone());
            out.push(st.clone());
            for a in it {
                st = st.extend(a);
                out.push(st.clone());
            }
        }
        out
    }

    /// Parse from a comma-separated list of `a+bi` literals.
    pub fn parse_csv(s: &str) -> Result<Self>
    where
        T: FromStr,
    {
        let mut v = Vec::new();
        for part in s.split(',') {
            v.push(part.trim().parse()?);
        }
        Ok(Block(v))
    }
}

impl<T: Scalar> fmt::Display for Block<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<T: Scalar> Serialize for Block<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de, T: Scalar + FromStr> Deserialize<'de> for Block<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(d)?;
        let mut v = Vec::with_capacity(strings.len());
        for s in strings {
            v.push(s.parse().map_err(serde::de::Error::custom)?);
        }
        Ok(Block(v))
    }
}

/// Exact value of the finite continued fraction
/// `a_0 + 1/(a_1 + 1/(...))` over the block, via the recurrences.
/// An intermediate `q_k = 0` is reported with its index.
pub fn finite_omega<T: Scalar>(block: &Block<T>) -> Result<GRational<T>> {
    if block.is_empty() {
        return Err(Error::InvalidInput("empty block has no value".into()));
    }
    let mut st = QPairState::seed(block.0[0].clone());
    for (k, a) in block.0.iter().enumerate().skip(1) {
        if st.q_cur.is_zero() {
            return Err(Error::ZeroDenominator { index: k - 1 });
        }
        st = st.extend(a);
    }
    st.convergent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    type G = Gaussian<BigInt>;
    type B = Block<BigInt>;

    fn g(re: i64, im: i64) -> G {
        G::from_i64s(re, im)
    }

    /// Right-to-left exact folding of the continued fraction; independent
    /// of the recurrence path.
    fn fold_oracle(block: &B) -> Option<GRational<BigInt>> {
        let mut it = block.0.iter().rev();
        let mut acc = GRational::from_gaussian(it.next()?.clone());
        for a in it {
            if acc.is_zero() {
                return None;
            }
            acc = GRational::from_gaussian(a.clone()).add(&acc.inv().ok()?);
        }
        Some(acc)
    }

    #[test]
    fn seed_state() {
        let st = QPairState::seed(g(5, 0));
        assert_eq!(st.p_cur, g(5, 0));
        assert_eq!(st.q_cur, g(1, 0));
        assert!(st.det_ok());
    }

    #[test]
    fn golden_prefix_values() {
        // Quotients 2, -3, 3 reach (p_2, q_2) = (-13, -8).
        let st = QPairState::seed(g(2, 0)).extend(&g(-3, 0)).extend(&g(3, 0));
        assert_eq!(st.p_cur, g(-13, 0));
        assert_eq!(st.q_cur, g(-8, 0));
        let c = st.convergent().unwrap();
        assert_eq!(c, GRational::new(g(13, 0), g(8, 0)).unwrap());
        let st3 = st.extend(&g(-3, 0));
        assert_eq!(st3.p_cur, g(34, 0));
        assert_eq!(st3.q_cur, g(21, 0));
        assert_eq!(
            st3.convergent().unwrap(),
            GRational::new(g(34, 0), g(21, 0)).unwrap()
        );
    }

    #[test]
    fn determinant_after_two_steps() {
        let st = QPairState::seed(g(2, 0)).extend(&g(-3, 0));
        assert_eq!(st.det(), g(1, 0));
        assert!(st.det_ok());
    }

    #[test]
    fn determinant_identity_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xdead);
        for _ in 0..1000 {
            let mut st = QPairState::seed(g(rng.gen_range(-10..=10), rng.gen_range(-10..=10)));
            for _ in 0..10 {
                let a = g(rng.gen_range(-10..=10), rng.gen_range(-10..=10));
                st = st.extend(&a);
                assert!(st.det_ok(), "determinant failed at n={}", st.n);
            }
        }
    }

    #[test]
    fn telescoping_difference() {
        // p_{n+1}/q_{n+1} - p_n/q_n = (-1)^n / (q_n q_{n+1})
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xbeef);
        for _ in 0..500 {
            let mut st = QPairState::seed(g(rng.gen_range(-5..=5), rng.gen_range(-5..=5)));
            for _ in 0..8 {
                let a = g(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
                let next = st.extend(&a);
                if !st.q_cur.is_zero() && !next.q_cur.is_zero() {
                    let lhs = next.convergent().unwrap().sub(&st.convergent().unwrap());
                    let sign = if st.n % 2 == 0 { 1 } else { -1 };
                    let rhs = GRational::new(g(sign, 0), st.q_cur.mul(&next.q_cur)).unwrap();
                    assert_eq!(lhs, rhs);
                }
                st = next;
            }
        }
    }

    #[test]
    fn finite_omega_examples() {
        let b = B::from_i64_pairs(&[(7, -2)]);
        assert_eq!(
            finite_omega(&b).unwrap(),
            GRational::from_gaussian(g(7, -2))
        );

        let b = B::new(vec![g(1, 0), g(1, -1)]);
        assert_eq!(
            finite_omega(&b).unwrap(),
            GRational::new(g(3, 1), g(2, 0)).unwrap()
        );

        let b = B::new(vec![g(0, 0), g(1, 1)]);
        assert_eq!(
            finite_omega(&b).unwrap(),
            GRational::new(g(1, -1), g(2, 0)).unwrap()
        );
    }

    #[test]
    fn finite_omega_matches_folding() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let mut checked = 0;
        while checked < 500 {
            let len = rng.gen_range(1..=8);
            let mut v = vec![g(rng.gen_range(-5..=5), rng.gen_range(-5..=5))];
            for _ in 1..len {
                // keep later entries away from 0 so zero denominators are rare
                let re = rng.gen_range(-5..=5i64);
                let im = rng.gen_range(-5..=5i64);
                if re == 0 && im == 0 {
                    v.push(g(2, 0));
                } else {
                    v.push(g(re, im));
                }
            }
            let b = B::new(v);
            match (finite_omega(&b), fold_oracle(&b)) {
                (Ok(lhs), Some(rhs)) => {
                    assert_eq!(lhs, rhs, "mismatch on {b}");
                    checked += 1;
                }
                _ => continue,
            }
        }
    }

    #[test]
    fn finite_omega_zero_denominator_reported() {
        // a_0 = i, a_1 = 2i gives q_1 = 2i, then a_2 chosen so q_2 = 0:
        // q_2 = a_2 q_1 + q_0 = a_2 * 2i + 1. No Gaussian a_2 kills it, so
        // build directly: (0, i, i) -> q_1 = i, q_2 = i*i + 1 = 0.
        let b = B::new(vec![g(0, 0), g(0, 1), g(0, 1)]);
        match finite_omega(&b) {
            Err(Error::ZeroDenominator { index: 2 }) => {}
            other => panic!("expected zero denominator at 2, got {other:?}"),
        }
    }

    #[test]
    fn block_serde_string_array() {
        let b = B::from_i64_pairs(&[(2, 0), (-3, 0), (1, 1)]);
        let j = serde_json::to_string(&b).unwrap();
        assert_eq!(j, r#"["2","-3","1+i"]"#);
        let back: B = serde_json::from_str(&j).unwrap();
        assert_eq!(b, back);
    }
}
