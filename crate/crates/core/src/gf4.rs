//! The field with four elements and packed 6-dimensional vectors over it.
//!
//! Scalars are encoded 0, 1, 2 = w, 3 = w² = w + 1, so addition is XOR.
//! A vector stores coordinate `i` in bits `2i..2i+2` of a `u16`.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F4(u8);

const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const W: F4 = F4(2);
    pub const W2: F4 = F4(3);
    pub const ALL: [F4; 4] = [F4::ZERO, F4::ONE, F4::W, F4::W2];

    pub fn new(v: u8) -> F4 {
        assert!(v < 4, "GF(4) code out of range");
        F4(v)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: F4) -> F4 {
        F4(MUL[self.0 as usize][o.0 as usize])
    }

    /// Frobenius `x -> x²`.
    pub fn conj(self) -> F4 {
        self.mul(self)
    }

    pub fn inv(self) -> Option<F4> {
        match self.0 {
            0 => None,
            1 => Some(F4::ONE),
            2 => Some(F4::W2),
            _ => Some(F4::W),
        }
    }

    pub fn symbol(self) -> char {
        ['0', '1', 'w', 'W'][self.0 as usize]
    }

    pub fn from_symbol(c: char) -> Option<F4> {
        match c {
            '0' => Some(F4::ZERO),
            '1' => Some(F4::ONE),
            'w' | 'ω' => Some(F4::W),
            'W' => Some(F4::W2),
            _ => None,
        }
    }
}

impl fmt::Debug for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

pub const DIM: usize = 6;
/// Number of nonzero vectors in GF(4)^6.
pub const NONZERO: usize = (1 << (2 * DIM)) - 1;

/// `SCALE[s][b]` multiplies the four coordinates packed in byte `b` by scalar `s`.
static SCALE: [[u8; 256]; 4] = build_scale();

const fn build_scale() -> [[u8; 256]; 4] {
    let mut t = [[0u8; 256]; 4];
    let mut s = 0;
    while s < 4 {
        let mut b = 0;
        while b < 256 {
            let mut out = 0u8;
            let mut k = 0;
            while k < 4 {
                let c = (b >> (2 * k)) & 3;
                out |= MUL[s][c] << (2 * k);
                k += 1;
            }
            t[s][b] = out;
            b += 1;
        }
        s += 1;
    }
    t
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec6(u16);

impl Vec6 {
    pub const ZERO: Vec6 = Vec6(0);

    pub fn from_packed(p: u16) -> Vec6 {
        assert!(p < (1 << 12));
        Vec6(p)
    }

    pub fn packed(self) -> u16 {
        self.0
    }

    pub fn from_coords(c: [F4; DIM]) -> Vec6 {
        let mut p = 0u16;
        for (i, x) in c.iter().enumerate() {
            p |= (x.0 as u16) << (2 * i);
        }
        Vec6(p)
    }

    pub fn basis(i: usize) -> Vec6 {
        Vec6(1 << (2 * i))
    }

    pub fn coord(self, i: usize) -> F4 {
        F4(((self.0 >> (2 * i)) & 3) as u8)
    }

    pub fn coords(self) -> [F4; DIM] {
        std::array::from_fn(|i| self.coord(i))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Vec6) -> Vec6 {
        Vec6(self.0 ^ o.0)
    }

    #[inline]
    pub fn scale(self, s: F4) -> Vec6 {
        let lo = SCALE[s.0 as usize][(self.0 & 0xff) as usize] as u16;
        let hi = SCALE[s.0 as usize][(self.0 >> 8) as usize] as u16;
        Vec6(lo | (hi << 8))
    }

    /// Scale so that the first nonzero coordinate is 1.
    pub fn normalized(self) -> Vec6 {
        match self.coords().iter().find(|c| c.0 != 0) {
            None => self,
            Some(c) => self.scale(c.inv().unwrap()),
        }
    }

    /// Index among nonzero vectors, `0..4095`.
    pub fn point(self) -> u32 {
        debug_assert!(!self.is_zero());
        self.0 as u32 - 1
    }

    pub fn from_point(p: u32) -> Vec6 {
        Vec6((p + 1) as u16)
    }

    pub fn nonzero() -> impl Iterator<Item = Vec6> {
        (1..=NONZERO as u16).map(Vec6)
    }
}

impl fmt::Debug for Vec6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c.symbol())?;
        }
        write!(f, ")")
    }
}

/// 6x6 matrix acting on row vectors: `x -> x M`. Row `i` is the image of basis vector `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat6 {
    rows: [Vec6; DIM],
}

impl Mat6 {
    pub fn identity() -> Mat6 {
        Mat6 { rows: std::array::from_fn(Vec6::basis) }
    }

    pub fn scalar(s: F4) -> Mat6 {
        Mat6 { rows: std::array::from_fn(|i| Vec6::basis(i).scale(s)) }
    }

    pub fn from_rows(rows: [Vec6; DIM]) -> Mat6 {
        Mat6 { rows }
    }

    pub fn rows(&self) -> &[Vec6; DIM] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> F4 {
        self.rows[i].coord(j)
    }

    #[inline]
    pub fn apply(&self, x: Vec6) -> Vec6 {
        let mut acc = Vec6::ZERO;
        for i in 0..DIM {
            let c = x.coord(i);
            if c.0 != 0 {
                acc = acc.add(self.rows[i].scale(c));
            }
        }
        acc
    }

    /// `self * o`: apply `self` first.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, o: &Mat6) -> Mat6 {
        Mat6 { rows: std::array::from_fn(|i| o.apply(self.rows[i])) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat6::identity()
    }

    /// `Some(s)` if the matrix is `s·I`.
    pub fn as_scalar(&self) -> Option<F4> {
        let s = self.entry(0, 0);
        (s.0 != 0 && *self == Mat6::scalar(s)).then_some(s)
    }

    /// Multiplicative order, or `None` past `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut p = *self;
        for k in 1..=limit {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Order modulo scalars.
    pub fn projective_order(&self, limit: u32) -> Option<u32> {
        let mut p = *self;
        for k in 1..=limit {
            if p.as_scalar().is_some() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Rows of symbols from `{0,1,w,W}`.
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.coords().iter().map(|c| c.symbol()).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for Mat6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text().replace('\n', " "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for a in F4::ALL {
            assert_eq!(a.add(a), F4::ZERO);
            assert_eq!(a.mul(F4::ONE), a);
            if a != F4::ZERO {
                assert_eq!(a.mul(a.inv().unwrap()), F4::ONE);
            }
            assert_eq!(a.conj().conj(), a);
            for b in F4::ALL {
                assert_eq!(a.mul(b), b.mul(a));
                assert_eq!(a.add(b).conj(), a.conj().add(b.conj()));
                assert_eq!(a.mul(b).conj(), a.conj().mul(b.conj()));
                for c in F4::ALL {
                    assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
                    assert_eq!(a.mul(b.mul(c)), a.mul(b).mul(c));
                }
            }
        }
        assert_eq!(F4::W.mul(F4::W), F4::W2);
        assert_eq!(F4::W.add(F4::ONE), F4::W2);
        assert_eq!(F4::W.mul(F4::W2), F4::ONE);
    }

    #[test]
    fn packed_scaling_matches_coordinates() {
        for v in Vec6::nonzero().step_by(37) {
            for s in F4::ALL {
                let by_coord = Vec6::from_coords(v.coords().map(|c| c.mul(s)));
                assert_eq!(v.scale(s), by_coord);
            }
        }
    }

    #[test]
    fn projective_classes() {
        let mut reps: Vec<Vec6> = Vec6::nonzero().map(|v| v.normalized()).collect();
        reps.sort();
        reps.dedup();
        assert_eq!(reps.len(), 1365);
    }

    #[test]
    fn matrix_product_order() {
        let a = Mat6::scalar(F4::W);
        assert_eq!(a.order(10), Some(3));
        assert_eq!(a.projective_order(10), Some(1));
        let x = Vec6::from_coords([F4::ONE, F4::W, F4::ZERO, F4::W2, F4::ONE, F4::ZERO]);
        let m = Mat6::from_rows(std::array::from_fn(|i| Vec6::basis((i + 1) % DIM)));
        let mm = m.mul(&a);
        assert_eq!(mm.apply(x), a.apply(m.apply(x)));
        assert_eq!(m.order(10), Some(6));
    }
}
