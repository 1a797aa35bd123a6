//! Permutations on `0..n`, composed left to right: `p * q` applies `p` first.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a bijection of 0..{0}")]
    NotBijective(usize),
    #[error("degree mismatch: {0} vs {1}")]
    Degree(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Build from disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &p) in c.iter().enumerate() {
                let q = c[(i + 1) % c.len()];
                if p as usize >= n || q as usize >= n {
                    return Err(PermError::NotBijective(n));
                }
                images[p as usize] = q;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.images[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|&(i, &j)| i as u32 != j).map(|(i, _)| i as u32)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    /// `self = self * other` without a fresh allocation.
    pub fn mul_assign(&mut self, other: &Perm) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| other.images[j as usize] == self.images[other.images[i] as usize])
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() > 64 {
            return write!(f, "Perm(degree {}, order {})", self.degree(), self.order());
        }
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for s in 0..self.degree() {
            if seen[s] || self.images[s] as usize == s {
                continue;
            }
            write!(f, "(")?;
            let mut p = s;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p] as usize;
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
    fn composition_is_left_to_right() {
        let p = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.mul(&q).apply(0), 2);
        assert_eq!(q.mul(&p).apply(0), 1);
    }

    #[test]
    fn order_and_inverse() {
        let p = Perm::from_cycles(7, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.mul(&p.inverse()).is_identity());
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(2), p.mul(&p));
        assert_eq!(Perm::identity(4).order(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn debug_cycles() {
        let p = Perm::from_cycles(5, &[&[0, 3], &[1, 2, 4]]).unwrap();
        assert_eq!(format!("{p:?}"), "(0 3)(1 2 4)");
    }
}
