use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A prime field GF(p) with p in {2, 3, 5, 7}. Scalars are `u8` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Field(u8);

impl Field {
    pub fn new(p: u8) -> Result<Self> {
        match p {
            2 | 3 | 5 | 7 => Ok(Field(p)),
            _ => Err(Error::UnsupportedField(p)),
        }
    }

    pub fn p(self) -> u8 {
        self.0
    }

    pub fn order(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.0 as u16 - b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    /// Multiplicative inverse by Fermat. Panics on zero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a % self.0 != 0, "zero has no inverse in GF({})", self.0);
        let mut acc = 1u8;
        for _ in 0..self.0 - 2 {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.0
    }

    pub(crate) fn check_entry(self, entry: u8) -> Result<()> {
        if entry < self.0 {
            Ok(())
        } else {
            Err(Error::EntryOutOfRange { entry, p: self.0 })
        }
    }
}

impl TryFrom<u8> for Field {
    type Error = Error;

    fn try_from(p: u8) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u8 {
    fn from(f: Field) -> u8 {
        f.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        for p in [0, 1, 4, 6, 8, 11] {
            assert_eq!(Field::new(p), Err(Error::UnsupportedField(p)));
        }
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7] {
            let f = Field::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn sub_is_add_neg() {
        let f = Field::new(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            }
        }
    }
}
