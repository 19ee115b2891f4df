//! Value-level semirings, the shipped numeric instances, a nonunital string
//! algebra, and a sampled axiom checker.
//!
//! A semiring (V, ⊕, ⊗, 0̄, 1̄) carries two associative operations: ⊕ is
//! commutative with identity 0̄, ⊗ has identity 1̄ (when one exists) and is
//! annihilated by 0̄, and ⊗ distributes over ⊕ from both sides. Sparse storage
//! leans on the annihilator: entries equal to 0̄ are never stored, so a kernel
//! that skips missing entries is exact for any semiring.

use std::cmp::Ordering;
use std::fmt;

/// A semiring as a value: operation pair, constants, and the equality the
/// axiom checker compares with. Being a plain value (function pointers, no
/// type-level dispatch) lets benchmarks and tests enumerate rings at runtime.
#[derive(Clone)]
pub struct Semiring<T> {
    name: &'static str,
    add: fn(&T, &T) -> T,
    mul: fn(&T, &T) -> T,
    zero: T,
    one: Option<T>,
    eq: fn(&T, &T) -> bool,
}

fn exact_eq<T: PartialEq>(a: &T, b: &T) -> bool {
    a == b
}

impl<T: Clone + PartialEq> Semiring<T> {
    /// Ring with exact equality; `one: None` marks a nonunital algebra.
    pub fn new(
        name: &'static str,
        add: fn(&T, &T) -> T,
        mul: fn(&T, &T) -> T,
        zero: T,
        one: Option<T>,
    ) -> Semiring<T> {
        Semiring {
            name,
            add,
            mul,
            zero,
            one,
            eq: exact_eq::<T>,
        }
    }

    /// Replace the equality used by [`check_axioms`] (e.g. a float tolerance).
    pub fn with_eq(mut self, eq: fn(&T, &T) -> bool) -> Semiring<T> {
        self.eq = eq;
        self
    }
}

impl<T> Semiring<T> {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn add(&self, a: &T, b: &T) -> T {
        (self.add)(a, b)
    }

    pub fn mul(&self, a: &T, b: &T) -> T {
        (self.mul)(a, b)
    }

    pub fn zero(&self) -> &T {
        &self.zero
    }

    pub fn one(&self) -> Option<&T> {
        self.one.as_ref()
    }

    pub fn eq(&self, a: &T, b: &T) -> bool {
        (self.eq)(a, b)
    }

    /// The raw ⊕ function pointer, for tight kernel loops.
    pub fn add_op(&self) -> fn(&T, &T) -> T {
        self.add
    }

    /// The raw ⊗ function pointer, for tight kernel loops.
    pub fn mul_op(&self) -> fn(&T, &T) -> T {
        self.mul
    }
}

impl<T: fmt::Debug> fmt::Debug for Semiring<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semiring")
            .field("name", &self.name)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish()
    }
}

fn approx_eq_1e12(a: &f64, b: &f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// (ℝ, +, ×, 0, 1) — ordinary arithmetic. Axioms are checked with a 1e-12
/// relative tolerance since float addition rounds.
pub fn plus_times() -> Semiring<f64> {
    Semiring::new("plus_times", |a, b| a + b, |a, b| a * b, 0.0, Some(1.0))
        .with_eq(approx_eq_1e12)
}

/// (ℝ ∪ {−∞}, max, +, −∞, 0) — longest-path style algebra.
pub fn max_plus() -> Semiring<f64> {
    Semiring::new(
        "max_plus",
        |a, b| a.max(*b),
        |a, b| a + b,
        f64::NEG_INFINITY,
        Some(0.0),
    )
}

/// (ℝ ∪ {±∞}, max, min, −∞, +∞) — widest-bottleneck style algebra.
pub fn max_min() -> Semiring<f64> {
    Semiring::new(
        "max_min",
        |a, b| a.max(*b),
        |a, b| a.min(*b),
        f64::NEG_INFINITY,
        Some(f64::INFINITY),
    )
}

/// One failed axiom instance: the law that broke and the witness values.
#[derive(Clone, Debug)]
pub struct Violation {
    pub law: &'static str,
    pub witness: String,
}

/// Outcome of a sampled axiom check; empty means every instance held.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("all axioms hold");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.law, v.witness)?;
        }
        Ok(())
    }
}

/// Brute-force every axiom instance over `samples` (singles, pairs, and
/// triples as each law requires) and report each violation.
pub fn check_axioms<T: Clone + fmt::Debug>(ring: &Semiring<T>, samples: &[T]) -> AxiomReport {
    let mut violations = Vec::new();
    let eq = |a: &T, b: &T| ring.eq(a, b);
    let mut fail = |law: &'static str, witness: String| {
        violations.push(Violation { law, witness });
    };

    let zero = ring.zero().clone();
    for u in samples {
        if !eq(&ring.add(u, &zero), u) || !eq(&ring.add(&zero, u), u) {
            fail("additive identity", format!("u={u:?}"));
        }
        if !eq(&ring.mul(u, &zero), &zero) || !eq(&ring.mul(&zero, u), &zero) {
            fail("multiplicative annihilator", format!("u={u:?}"));
        }
        if let Some(one) = ring.one() {
            if !eq(&ring.mul(u, one), u) || !eq(&ring.mul(one, u), u) {
                fail("multiplicative identity", format!("u={u:?}"));
            }
        }
    }

    for u in samples {
        for v in samples {
            if !eq(&ring.add(u, v), &ring.add(v, u)) {
                fail("additive commutativity", format!("u={u:?}, v={v:?}"));
            }
        }
    }

    for u in samples {
        for v in samples {
            for w in samples {
                let witness = || format!("u={u:?}, v={v:?}, w={w:?}");
                if !eq(&ring.add(u, &ring.add(v, w)), &ring.add(&ring.add(u, v), w)) {
                    fail("additive associativity", witness());
                }
                if !eq(&ring.mul(u, &ring.mul(v, w)), &ring.mul(&ring.mul(u, v), w)) {
                    fail("multiplicative associativity", witness());
                }
                if !eq(
                    &ring.mul(u, &ring.add(v, w)),
                    &ring.add(&ring.mul(u, v), &ring.mul(u, w)),
                ) {
                    fail("left distributivity", witness());
                }
                if !eq(
                    &ring.mul(&ring.add(v, w), u),
                    &ring.add(&ring.mul(v, u), &ring.mul(w, u)),
                ) {
                    fail("right distributivity", witness());
                }
            }
        }
    }

    AxiomReport { violations }
}

/// Finite strings under concatenation and dictionary-least selection.
///
/// This is *not* a semiring under either assignment of the two operations:
/// concatenation is not commutative, and the empty string — the least string
/// in any dictionary order — absorbs `min` rather than acting as its
/// identity. The laws it does have are listed on [`StringAlgebra::check_axioms`].
/// The character order is configurable; the induced string order is
/// dictionary order with a proper prefix sorting first.
#[derive(Clone)]
pub struct StringAlgebra {
    char_cmp: fn(char, char) -> Ordering,
}

impl StringAlgebra {
    /// Dictionary order over code points — identical to `str`'s `Ord`.
    pub fn new() -> StringAlgebra {
        StringAlgebra {
            char_cmp: |a, b| a.cmp(&b),
        }
    }

    /// Dictionary order induced by a custom total order on characters.
    pub fn with_char_order(char_cmp: fn(char, char) -> Ordering) -> StringAlgebra {
        StringAlgebra { char_cmp }
    }

    /// The empty string: concatenation identity and `min` absorber.
    pub fn empty(&self) -> &'static str {
        ""
    }

    /// Induced dictionary order on strings.
    pub fn cmp(&self, a: &str, b: &str) -> Ordering {
        let mut bs = b.chars();
        for ca in a.chars() {
            match bs.next() {
                None => return Ordering::Greater,
                Some(cb) => match (self.char_cmp)(ca, cb) {
                    Ordering::Equal => continue,
                    other => return other,
                },
            }
        }
        if bs.next().is_some() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    pub fn concat(&self, a: &str, b: &str) -> String {
        let mut out = String::with_capacity(a.len() + b.len());
        out.push_str(a);
        out.push_str(b);
        out
    }

    /// Dictionary-least of the two; ties resolve to `a`.
    pub fn min<'a>(&self, a: &'a str, b: &'a str) -> &'a str {
        if self.cmp(b, a) == Ordering::Less {
            b
        } else {
            a
        }
    }

    /// Checks the laws this algebra actually satisfies over `samples`:
    /// `min` is associative, commutative, and idempotent; concatenation is
    /// associative with the empty string as two-sided identity; and the empty
    /// string absorbs `min`.
    pub fn check_axioms(&self, samples: &[&str]) -> AxiomReport {
        let mut violations = Vec::new();
        let mut fail = |law: &'static str, witness: String| {
            violations.push(Violation { law, witness });
        };

        for u in samples {
            if self.min(u, u) != *u {
                fail("min idempotence", format!("u={u:?}"));
            }
            if self.concat(u, "") != *u || self.concat("", u) != *u {
                fail("concat identity", format!("u={u:?}"));
            }
            if !self.min(u, "").is_empty() || !self.min("", u).is_empty() {
                fail("min absorber", format!("u={u:?}"));
            }
        }

        for u in samples {
            for v in samples {
                if self.min(u, v) != self.min(v, u) {
                    fail("min commutativity", format!("u={u:?}, v={v:?}"));
                }
            }
        }

        for u in samples {
            for v in samples {
                for w in samples {
                    let witness = || format!("u={u:?}, v={v:?}, w={w:?}");
                    if self.min(u, self.min(v, w)) != self.min(self.min(u, v), w) {
                        fail("min associativity", witness());
                    }
                    if self.concat(u, &self.concat(v, w)) != self.concat(&self.concat(u, v), w) {
                        fail("concat associativity", witness());
                    }
                }
            }
        }

        AxiomReport { violations }
    }
}

impl Default for StringAlgebra {
    fn default() -> StringAlgebra {
        StringAlgebra::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLES: [f64; 6] = [-2.0, -1.0, 0.0, 1.0, 3.0, 5.0];

    #[test]
    fn plus_times_axioms_hold() {
        let report = check_axioms(&plus_times(), &SAMPLES);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn max_plus_axioms_hold() {
        let report = check_axioms(&max_plus(), &SAMPLES);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn max_min_axioms_hold() {
        // Includes the constants' own carrier values.
        let samples = [-2.0, 0.0, 1.0, 4.0, f64::NEG_INFINITY, f64::INFINITY];
        let report = check_axioms(&max_min(), &samples);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn ring_constants() {
        let pt = plus_times();
        assert_eq!(*pt.zero(), 0.0);
        assert_eq!(pt.one(), Some(&1.0));
        assert_eq!(pt.mul(&3.0, &4.0), 12.0);

        let mp = max_plus();
        assert_eq!(*mp.zero(), f64::NEG_INFINITY);
        assert_eq!(mp.add(&2.0, &5.0), 5.0);
        assert_eq!(mp.mul(&2.0, &5.0), 7.0);

        let mm = max_min();
        assert_eq!(mm.mul(&2.0, &5.0), 2.0);
        assert_eq!(mm.one(), Some(&f64::INFINITY));
    }

    #[test]
    fn subtraction_breaks_the_axioms() {
        // Subtraction in the ⊗ slot: not associative, does not distribute,
        // and 0 does not annihilate it.
        let broken = Semiring::new("plus_minus", |a, b| a + b, |a, b| a - b, 0.0, None);
        let report = check_axioms(&broken, &[1.0, 2.0, 3.0]);
        assert!(!report.passed());
        let laws: Vec<&str> = report.violations.iter().map(|v| v.law).collect();
        assert!(laws.contains(&"multiplicative associativity"));
        assert!(laws.contains(&"left distributivity"));
        assert!(laws.contains(&"multiplicative annihilator"));

        // Subtraction in the ⊕ slot: neither commutative nor associative.
        let broken = Semiring::new("minus_times", |a, b| a - b, |a, b| a * b, 0.0, Some(1.0));
        let report = check_axioms(&broken, &[1.0, 2.0, 3.0]);
        let laws: Vec<&str> = report.violations.iter().map(|v| v.law).collect();
        assert!(laws.contains(&"additive commutativity"));
        assert!(laws.contains(&"additive associativity"));
    }

    #[test]
    fn plus_times_tolerates_float_rounding() {
        // (0.1 + 0.2) + 0.3 differs from 0.1 + (0.2 + 0.3) in the last ulp;
        // the relative tolerance accepts it.
        let report = check_axioms(&plus_times(), &[0.1, 0.2, 0.3, 0.7, 1.3]);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn string_algebra_laws_hold() {
        let alg = StringAlgebra::new();
        let report = alg.check_axioms(&["", "a", "ab", "b", "pop", "classical"]);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn string_min_and_concat() {
        let alg = StringAlgebra::new();
        assert_eq!(alg.min("pop", "classical"), "classical");
        assert_eq!(alg.concat("for", "mat"), "format");
        assert_eq!(alg.min("abc", "ab"), "ab"); // prefix sorts first
        assert_eq!(alg.cmp("a", "b"), Ordering::Less);
    }

    #[test]
    fn custom_char_order_flips_comparisons() {
        // Reverse code-point order: "b" now sorts before "a".
        let alg = StringAlgebra::with_char_order(|a, b| b.cmp(&a));
        assert_eq!(alg.min("a", "b"), "b");
        assert_eq!(alg.cmp("ab", "aa"), Ordering::Less);
        // Prefixes still sort first, and the laws still hold.
        assert_eq!(alg.min("abc", "ab"), "ab");
        let report = alg.check_axioms(&["", "a", "b", "ab", "zz"]);
        assert!(report.passed(), "{report}");
    }
}
