//! Permutations on `0..degree` and the cycle-notation parser.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree-1}` stored as an image array.
///
/// Products follow the right-action convention: `a.then(&b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::Invalid(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Invalid(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        Permutation { images }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::Invalid(format!(
                        "point {} exceeds degree {degree}",
                        x + 1
                    )));
                }
                if moved[x] {
                    return Err(Error::Invalid(format!(
                        "point {} repeated in cycles",
                        x + 1
                    )));
                }
                moved[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        result
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k ≥ 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = ord.lcm(&len);
        }
        ord
    }

    /// Pads with fixed points up to `degree`.
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u16..degree as u16);
        Permutation { images }
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; commas are accepted as separators.
///
/// Offsets in errors are byte offsets into `text`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let bytes = text.as_bytes();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    let err = |offset: usize, msg: &str| Error::Parse {
        line: 0,
        column: offset + 1,
        message: msg.to_string(),
    };
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                let open = i;
                i += 1;
                let mut cycle = Vec::new();
                loop {
                    while i < bytes.len() && matches!(bytes[i], b' ' | b'\t' | b',') {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(err(open, "unclosed cycle"));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(err(i, "expected a point number"));
                    }
                    let pt: usize = text[start..i]
                        .parse()
                        .map_err(|_| err(start, "bad point number"))?;
                    if pt == 0 || pt > degree {
                        return Err(err(start, &format!("point {pt} outside 1..={degree}")));
                    }
                    cycle.push(pt - 1);
                }
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            _ => return Err(err(i, "unexpected character")),
        }
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
        Error::Invalid(m) => err(0, &m),
        other => other,
    })
}

/// Parses a 1-based image list such as `[2, 3, 1]`.
pub fn parse_image_list(text: &str) -> Result<Permutation> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse {
            line: 0,
            column: 1,
            message: "expected [..] image list".into(),
        })?;
    let mut images = Vec::new();
    for tok in inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
    {
        let v: usize = tok.parse().map_err(|_| Error::Parse {
            line: 0,
            column: 1,
            message: format!("bad image '{tok}'"),
        })?;
        if v == 0 {
            return Err(Error::Parse {
                line: 0,
                column: 1,
                message: "images are 1-based".into(),
            });
        }
        images.push(v - 1);
    }
    Permutation::from_images(images).map_err(|e| Error::Parse {
        line: 0,
        column: 1,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lcm_of_cycles() {
        let g = parse_cycles("(1 2)(3 4)(5 6 7)", 7).unwrap();
        assert_eq!(g.order(), 6);
        let h = parse_cycles("(1 2 3 4 5 6)(7 8)", 8).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn inverse_and_then() {
        let g = parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert!(g.then(&g.inverse()).is_identity());
        assert_eq!(g.pow(6), Permutation::identity(5));
        assert_eq!(g.pow(2), g.then(&g));
    }

    #[test]
    fn round_trip_cycle_string() {
        let g = parse_cycles("( 3 1 2 )( 5 4 )", 6).unwrap();
        assert_eq!(g.to_cycle_string(), "(1 2 3)(4 5)");
        assert_eq!(parse_cycles(&g.to_cycle_string(), 6).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_cycles("(1 2", 3),
            Err(Error::Parse { column: 1, .. })
        ));
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(parse_cycles("(1 x)", 3).is_err());
    }

    #[test]
    fn image_lists() {
        let g = parse_image_list("[2, 3, 1]").unwrap();
        assert_eq!(g, parse_cycles("(1 2 3)", 3).unwrap());
        assert!(parse_image_list("[1, 1]").is_err());
    }
}
