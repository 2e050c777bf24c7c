//! Words and polynomials in a free associative algebra on graded generators.

mod parse;
mod poly;

use std::fmt;

pub use parse::parse_poly;
pub use poly::NcPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeAlgError {
    #[error("generator degrees must be positive (generator `{0}`)")]
    BadDegree(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("{names} names but {degrees} degrees")]
    LengthMismatch { names: usize, degrees: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial `{0}` is not homogeneous")]
    Inhomogeneous(String),
}

pub type Letter = u16;

/// Ordered generator names with positive degrees. The order of names breaks
/// ties in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl GeneratorSet {
    pub fn new(names: Vec<String>, degrees: Vec<u32>) -> Result<Self, FreeAlgError> {
        if names.len() != degrees.len() {
            return Err(FreeAlgError::LengthMismatch { names: names.len(), degrees: degrees.len() });
        }
        for (i, n) in names.iter().enumerate() {
            if degrees[i] == 0 {
                return Err(FreeAlgError::BadDegree(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(FreeAlgError::DuplicateName(n.clone()));
            }
        }
        assert!(names.len() <= Letter::MAX as usize, "too many generators");
        Ok(GeneratorSet { names, degrees })
    }

    /// All generators in degree one.
    pub fn standard(names: &[&str]) -> Self {
        GeneratorSet::new(names.iter().map(|s| s.to_string()).collect(), vec![1; names.len()])
            .expect("valid generator names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn name(&self, i: Letter) -> &str {
        &self.names[i as usize]
    }

    pub fn degree(&self, i: Letter) -> u32 {
        self.degrees[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn word(&self, letters: Vec<Letter>) -> Word {
        let deg = letters.iter().map(|&l| self.degree(l)).sum();
        Word { deg, letters }
    }

    pub fn letter(&self, i: Letter) -> Word {
        self.word(vec![i])
    }

    /// Every word of total degree `d`, in increasing order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Word> {
        // words[e] = all words of degree e, each list already sorted
        let mut words: Vec<Vec<Vec<Letter>>> = vec![vec![vec![]]];
        for e in 1..=d {
            let mut out = Vec::new();
            for g in 0..self.len() as Letter {
                let dg = self.degree(g);
                if dg > e {
                    continue;
                }
                for tail in &words[(e - dg) as usize] {
                    let mut w = Vec::with_capacity(tail.len() + 1);
                    w.push(g);
                    w.extend_from_slice(tail);
                    out.push(w);
                }
            }
            words.push(out);
        }
        words.pop().unwrap_or_default().into_iter().map(|l| Word { deg: d, letters: l }).collect()
    }
}

/// A monomial. The derived order compares degree first, then letters
/// lexicographically: degree-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    deg: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + o.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&o.letters);
        Word { deg: self.deg + o.deg, letters }
    }

    /// Splits `self` as `left · middle · right` where `middle` occupies
    /// `start..start + middle.len()`.
    pub fn split_around(&self, gens: &GeneratorSet, start: usize, len: usize) -> (Word, Word) {
        let left = gens.word(self.letters[..start].to_vec());
        let right = gens.word(self.letters[start + len..].to_vec());
        (left, right)
    }

    /// First position where `sub` occurs as a contiguous subword.
    pub fn find(&self, sub: &Word) -> Option<usize> {
        if sub.len() > self.len() {
            return None;
        }
        (0..=self.len() - sub.len()).find(|&i| self.letters[i..i + sub.len()] == sub.letters[..])
    }

    pub fn contains(&self, sub: &Word) -> bool {
        self.find(sub).is_some()
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let name = gens.name(l);
            if j - i > 1 {
                parts.push(format!("{name}^{}", j - i));
            } else {
                parts.push(name.to_string());
            }
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "<{}>", l.join(" "))
    }
}

/// Compares two words in the degree-lexicographic order.
pub fn compare_deglex(u: &Word, v: &Word) -> std::cmp::Ordering {
    u.cmp(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn deglex_basics() {
        let g = GeneratorSet::standard(&["x", "y"]);
        let x = g.letter(0);
        let y = g.letter(1);
        assert_eq!(compare_deglex(&x, &x.concat(&x)), Ordering::Less);
        assert_eq!(compare_deglex(&x.concat(&y), &y.concat(&x)), Ordering::Less);
        assert_eq!(compare_deglex(&y, &y), Ordering::Equal);
    }

    #[test]
    fn monomial_counts() {
        let g = GeneratorSet::standard(&["x", "y", "z", "w"]);
        assert_eq!(g.monomials_of_degree(2).len(), 16);
        let g3 = GeneratorSet::new(vec!["x".into()], vec![3]).unwrap();
        assert!(g3.monomials_of_degree(4).is_empty());
        let g12 = GeneratorSet::new(vec!["x".into(), "y".into()], vec![1, 2]).unwrap();
        let ws: Vec<String> = g12.monomials_of_degree(3).iter().map(|w| w.render(&g12)).collect();
        assert_eq!(ws, vec!["x^3", "x*y", "y*x"]);
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(GeneratorSet::new(vec!["x".into()], vec![0]), Err(FreeAlgError::BadDegree(_))));
        assert!(matches!(
            GeneratorSet::new(vec!["x".into(), "x".into()], vec![1, 1]),
            Err(FreeAlgError::DuplicateName(_))
        ));
    }

    #[test]
    fn subword_search() {
        let g = GeneratorSet::standard(&["x", "y"]);
        let w = g.word(vec![0, 1, 1, 0]);
        assert_eq!(w.find(&g.word(vec![1, 0])), Some(2));
        assert_eq!(w.find(&g.word(vec![0, 0])), None);
    }
}
