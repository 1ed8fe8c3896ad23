//! Permutations of `{1, …, degree}` with cycle-notation I/O.
//!
//! Products follow the composition convention pinned down by the bundled
//! generating systems: `p * q` applies `q` first, then `p`. Cycle strings use
//! 1-based points, e.g. `(1,2,3)(4,5)`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    Parse(String),
    #[error("point {0} out of range for degree {1}")]
    PointOutOfRange(usize, usize),
    #[error("point {0} repeated within a cycle expression")]
    RepeatedPoint(usize),
}

/// A permutation stored by its images on 0-based points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from explicit 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm { images })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)` on 1-based points.
    /// Cycles are applied left to right being composed into one map; repeated
    /// points within a single cycle are rejected, repeated points across
    /// cycles compose. `()` denotes the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Self, PermError> {
        let s = s.trim();
        let mut result = Perm::identity(degree);
        let mut rest = s;
        if s.is_empty() {
            return Err(PermError::Parse("empty permutation".into()));
        }
        while !rest.is_empty() {
            let rest2 = rest.trim_start();
            if !rest2.starts_with('(') {
                return Err(PermError::Parse(format!("expected '(' in {s:?}")));
            }
            let close = rest2
                .find(')')
                .ok_or_else(|| PermError::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &rest2[1..close];
            rest = &rest2[close + 1..];
            let body = body.trim();
            if body.is_empty() {
                continue; // () is the identity cycle
            }
            let mut points = Vec::new();
            for tok in body.split(',') {
                let p: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| PermError::Parse(format!("bad point {tok:?} in {s:?}")))?;
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange(p, degree));
                }
                if points.contains(&(p - 1)) {
                    return Err(PermError::RepeatedPoint(p));
                }
                points.push(p - 1);
            }
            let mut cycle = Perm::identity(degree);
            for w in 0..points.len() {
                cycle.images[points[w]] = points[(w + 1) % points.len()] as u16;
            }
            // compose this cycle onto what we have, applying left cycles first
            result = cycle.compose(&result);
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u16 == j)
    }
}

impl fmt::Display for Perm {
    /// Disjoint cycle notation on 1-based points; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.apply(p);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let p = Perm::parse("(1,2,3)(4,5)", 5).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(3), 4);
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        let q = Perm::parse(&p.to_string(), 5).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::parse("(1,2", 5).is_err());
        assert!(Perm::parse("(1,9)", 5).is_err());
        assert!(Perm::parse("(1,1,2)", 5).is_err());
        assert!(Perm::parse("1,2,3", 5).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let p = Perm::parse("(1,2)", 3).unwrap();
        let q = Perm::parse("(2,3)", 3).unwrap();
        // (p*q)(3) = p(q(3)) = p(2) = 1
        assert_eq!(p.compose(&q).apply(2), 0);
    }

    #[test]
    fn identity_display() {
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert!(Perm::parse("()", 4).unwrap().is_identity());
    }
}
