//! Finite-type Artin monoids and groups.
//!
//! Lattice operations are computed by right subword reversing: a word
//! `u^-1 v` is rewritten with `s^-1 t -> (s\t)(t\s)^-1` and `s^-1 s -> 1`
//! until it has the shape `v' u'^-1`, at which point `v' = u\v` and
//! `u' = v\u`, so that `u (u\v) = v (v\u) = u ∨ v`.
//!
//! Group elements are stored as canonical right fractions `a b^-1` with
//! `a ∧ᵣ b = 1`, both words in shortlex-least form. Structural equality of
//! [`ArtinFraction`] is therefore equality in the group.

use std::fmt;

use crate::error::{Error, Result};
use crate::factors::coxeter::{CoxeterMatrix, CoxeterType};

/// Generator index within one Artin factor.
pub type Letter = u16;

const REVERSING_STEP_CAP: usize = 1_000_000;

/// A positive word over the generators of an Artin monoid.
///
/// Two words may be different sequences and still the same monoid element;
/// compare through [`ArtinMonoid::equal_positive`] unless both sides have
/// been normalized.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtinWord(Vec<Letter>);

impl ArtinWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(s: Letter) -> Self {
        Self(vec![s])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Value of the length homomorphism.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ArtinWord) -> ArtinWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ArtinWord(v)
    }

    /// The word read backwards. This is an anti-automorphism of every Artin
    /// monoid since the defining relations are mapped onto relations.
    pub fn reversed(&self) -> ArtinWord {
        ArtinWord(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<Letter>> for ArtinWord {
    fn from(v: Vec<Letter>) -> Self {
        Self(v)
    }
}

/// Element `num · den^-1` of an Artin group, in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtinFraction {
    num: ArtinWord,
    den: ArtinWord,
}

impl ArtinFraction {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn num(&self) -> &ArtinWord {
        &self.num
    }

    pub fn den(&self) -> &ArtinWord {
        &self.den
    }

    /// Positive element from a word already in shortlex-least form.
    pub(crate) fn from_normalized(num: ArtinWord) -> Self {
        Self { num, den: ArtinWord::empty() }
    }

    pub fn is_identity(&self) -> bool {
        self.num.is_empty() && self.den.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.den.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { num: self.den.clone(), den: self.num.clone() }
    }

    /// Length homomorphism extended to the group.
    pub fn degree(&self) -> i64 {
        self.num.len() as i64 - self.den.len() as i64
    }
}

/// A finite-type Artin monoid `A_M^+` together with its group of fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinMonoid {
    generators: Vec<String>,
    matrix: CoxeterMatrix,
    types: Vec<CoxeterType>,
    // complements[s][t] = s\t
    complements: Vec<Vec<ArtinWord>>,
}

impl ArtinMonoid {
    pub fn new(generators: Vec<String>, matrix: CoxeterMatrix) -> Result<Self> {
        if generators.len() != matrix.rank() {
            return Err(Error::InvalidCoxeterMatrix(format!(
                "{} generators but matrix of rank {}",
                generators.len(),
                matrix.rank()
            )));
        }
        if generators.len() > Letter::MAX as usize {
            return Err(Error::InvalidCoxeterMatrix("too many generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g.chars().any(|c| c.is_whitespace() || c == '.') {
                return Err(Error::InvalidCoxeterMatrix(format!("invalid generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidCoxeterMatrix(format!("duplicate generator `{g}`")));
            }
        }
        let types = matrix.finite_type()?;
        let n = generators.len();
        let complements = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        if s == t {
                            return ArtinWord::empty();
                        }
                        // finite type guarantees finite entries
                        let m = matrix.get(s, t).expect("finite entry") as usize;
                        ArtinWord((0..m - 1).map(|k| if k % 2 == 0 { t as Letter } else { s as Letter }).collect())
                    })
                    .collect()
            })
            .collect();
        Ok(Self { generators, matrix, types, complements })
    }

    /// The braid monoid on `strands` strands (type A_{strands-1}).
    pub fn braid(strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidCoxeterMatrix("braid monoid needs at least two strands".into()));
        }
        let n = strands - 1;
        let names: Vec<String> = if n <= 8 {
            (0..n).map(|i| ((b's' + i as u8) as char).to_string()).collect()
        } else {
            (1..=n).map(|i| format!("s{i}")).collect()
        };
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        Some(match i.abs_diff(j) {
                            0 => 1,
                            1 => 3,
                            _ => 2,
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(names, CoxeterMatrix::new(m)?)
    }

    /// Two-generator Artin monoid with `st...= ts...` of length `m`.
    pub fn dihedral(m: u32) -> Result<Self> {
        Self::new(
            vec!["s".into(), "t".into()],
            CoxeterMatrix::new(vec![vec![Some(1), Some(m)], vec![Some(m), Some(1)]])?,
        )
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn coxeter_types(&self) -> &[CoxeterType] {
        &self.types
    }

    pub fn generator_index(&self, name: &str) -> Option<Letter> {
        self.generators.iter().position(|g| g == name).map(|i| i as Letter)
    }

    /// `⟨st⟩^m`: alternating word of length `m` starting with `s`.
    pub fn alternating(&self, s: Letter, t: Letter, m: usize) -> ArtinWord {
        ArtinWord((0..m).map(|k| if k % 2 == 0 { s } else { t }).collect())
    }

    /// Both complements `(u\v, v\u)` via subword reversing of `u^-1 v`.
    pub fn reverse(&self, u: &ArtinWord, v: &ArtinWord) -> Result<(ArtinWord, ArtinWord)> {
        // (letter, positive?)
        let mut w: Vec<(Letter, bool)> =
            u.0.iter().rev().map(|&s| (s, false)).chain(v.0.iter().map(|&t| (t, true))).collect();
        let mut i = 0usize;
        let mut steps = 0usize;
        while i + 1 < w.len() {
            let (s, sp) = w[i];
            let (t, tp) = w[i + 1];
            if sp || !tp {
                i += 1;
                continue;
            }
            steps += 1;
            if steps > REVERSING_STEP_CAP {
                return Err(Error::NoCommonMultiple);
            }
            if s == t {
                w.drain(i..i + 2);
            } else {
                let st = &self.complements[s as usize][t as usize];
                let ts = &self.complements[t as usize][s as usize];
                let replacement = st.0.iter().map(|&x| (x, true)).chain(ts.0.iter().rev().map(|&x| (x, false)));
                w.splice(i..i + 2, replacement);
            }
            i = i.saturating_sub(1);
        }
        let split = w.iter().position(|&(_, p)| !p).unwrap_or(w.len());
        let u_v = ArtinWord(w[..split].iter().map(|&(x, _)| x).collect());
        let v_u = ArtinWord(w[split..].iter().rev().map(|&(x, _)| x).collect());
        Ok((u_v, v_u))
    }

    /// `u\v`, the element with `u · (u\v) = u ∨ v`.
    pub fn complement(&self, u: &ArtinWord, v: &ArtinWord) -> Result<ArtinWord> {
        Ok(self.reverse(u, v)?.0)
    }

    pub fn equal_positive(&self, u: &ArtinWord, v: &ArtinWord) -> bool {
        if u.len() != v.len() {
            return false;
        }
        match self.reverse(u, v) {
            Ok((a, b)) => a.is_empty() && b.is_empty(),
            Err(_) => false,
        }
    }

    /// `u ≤ z`, i.e. `u` is a left divisor of `z`.
    pub fn left_divides(&self, u: &ArtinWord, z: &ArtinWord) -> bool {
        u.len() <= z.len() && matches!(self.reverse(z, u), Ok((a, _)) if a.is_empty())
    }

    /// `u^-1 z` when `u ≤ z`.
    pub fn left_quotient(&self, u: &ArtinWord, z: &ArtinWord) -> Option<ArtinWord> {
        if u.len() > z.len() {
            return None;
        }
        match self.reverse(u, z) {
            Ok((q, r)) if r.is_empty() => Some(q),
            _ => None,
        }
    }

    /// `z g^-1` when `g` is a right divisor of `z`.
    pub fn right_quotient(&self, z: &ArtinWord, g: &ArtinWord) -> Option<ArtinWord> {
        self.left_quotient(&g.reversed(), &z.reversed()).map(|q| q.reversed())
    }

    pub fn lub_positive(&self, u: &ArtinWord, v: &ArtinWord) -> Result<ArtinWord> {
        Ok(u.concat(&self.complement(u, v)?))
    }

    /// Greatest common left divisor, built one letter at a time.
    pub fn left_gcd(&self, u: &ArtinWord, v: &ArtinWord) -> ArtinWord {
        let mut gcd = Vec::new();
        let (mut u, mut v) = (u.clone(), v.clone());
        'outer: loop {
            for s in 0..self.rank() as Letter {
                let s_word = ArtinWord::letter(s);
                if let (Some(uq), Some(vq)) = (self.left_quotient(&s_word, &u), self.left_quotient(&s_word, &v)) {
                    gcd.push(s);
                    u = uq;
                    v = vq;
                    continue 'outer;
                }
            }
            break;
        }
        ArtinWord(gcd)
    }

    /// Greatest common right divisor `u ∧ᵣ v`.
    pub fn rgcd_positive(&self, u: &ArtinWord, v: &ArtinWord) -> ArtinWord {
        self.left_gcd(&u.reversed(), &v.reversed()).reversed()
    }

    /// Shortlex-least representative: the first letter is the least
    /// generator dividing the element on the left, and so on recursively.
    pub fn normalize(&self, u: &ArtinWord) -> ArtinWord {
        let mut rest = u.clone();
        let mut out = Vec::with_capacity(u.len());
        while !rest.is_empty() {
            let next = (0..self.rank() as Letter)
                .find_map(|s| self.left_quotient(&ArtinWord::letter(s), &rest).map(|q| (s, q)));
            match next {
                Some((s, q)) => {
                    out.push(s);
                    rest = q;
                }
                // unreachable for a nonempty word in a cancellative monoid
                None => {
                    out.extend_from_slice(rest.letters());
                    break;
                }
            }
        }
        ArtinWord(out)
    }

    /// Canonical fraction `num · den^-1`: cancels the common right divisor.
    pub fn fraction(&self, num: &ArtinWord, den: &ArtinWord) -> ArtinFraction {
        if den.is_empty() {
            return ArtinFraction { num: self.normalize(num), den: ArtinWord::empty() };
        }
        if num.is_empty() {
            return ArtinFraction { num: ArtinWord::empty(), den: self.normalize(den) };
        }
        let g = self.rgcd_positive(num, den);
        let (a, b) = if g.is_empty() {
            (num.clone(), den.clone())
        } else {
            (
                self.right_quotient(num, &g).expect("gcd divides numerator"),
                self.right_quotient(den, &g).expect("gcd divides denominator"),
            )
        };
        ArtinFraction { num: self.normalize(&a), den: self.normalize(&b) }
    }

    pub fn positive(&self, word: &ArtinWord) -> ArtinFraction {
        self.fraction(word, &ArtinWord::empty())
    }

    /// Builds an element from a signed letter sequence, `true` meaning positive.
    pub fn from_signed(&self, letters: &[(Letter, bool)]) -> ArtinFraction {
        letters.iter().fold(ArtinFraction::identity(), |acc, &(s, positive)| {
            let g = ArtinWord::letter(s);
            let step = if positive {
                ArtinFraction { num: g, den: ArtinWord::empty() }
            } else {
                ArtinFraction { num: ArtinWord::empty(), den: g }
            };
            self.multiply(&acc, &step)
        })
    }

    /// `(a b^-1)(c d^-1) = a (b\c) (d (c\b))^-1`.
    pub fn multiply(&self, x: &ArtinFraction, y: &ArtinFraction) -> ArtinFraction {
        if x.den.is_empty() {
            return self.fraction(&x.num.concat(&y.num), &y.den);
        }
        if y.num.is_empty() {
            return self.fraction(&x.num, &y.den.concat(&x.den));
        }
        let (b_c, c_b) = self.reverse(&x.den, &y.num).expect("finite type reversing terminates");
        self.fraction(&x.num.concat(&b_c), &y.den.concat(&c_b))
    }

    /// `x ≤ y` in the left-invariant order.
    pub fn leq(&self, x: &ArtinFraction, y: &ArtinFraction) -> bool {
        self.multiply(&x.inverse(), y).is_positive()
    }

    /// `x ∨ y = x · a` where `x^-1 y = a b^-1` canonically. Always finite.
    pub fn lub(&self, x: &ArtinFraction, y: &ArtinFraction) -> ArtinFraction {
        let z = self.multiply(&x.inverse(), y);
        self.multiply(x, &ArtinFraction { num: z.num, den: ArtinWord::empty() })
    }

    /// Renders a word with generator names; names are concatenated when
    /// they are all single characters and space separated otherwise.
    pub fn render(&self, word: &ArtinWord) -> String {
        let single = self.generators.iter().all(|g| g.chars().count() == 1);
        let names = word.letters().iter().map(|&s| self.generators[s as usize].as_str());
        if single {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(" ")
        }
    }

    /// Parses a positive word. Tokens are separated by whitespace or `.`;
    /// an unseparated string is split by longest generator-name match.
    pub fn parse_word(&self, text: &str) -> Result<ArtinWord> {
        let mut letters = Vec::new();
        for chunk in text.split(|c: char| c.is_whitespace() || c == '.').filter(|c| !c.is_empty()) {
            if let Some(s) = self.generator_index(chunk) {
                letters.push(s);
                continue;
            }
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| rest.starts_with(g.as_str()))
                    .max_by_key(|(_, g)| g.len())
                    .ok_or_else(|| Error::UnknownGenerator(rest.to_string()))?;
                letters.push(best.0 as Letter);
                rest = &rest[best.1.len()..];
            }
        }
        Ok(ArtinWord(letters))
    }
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
