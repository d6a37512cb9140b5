//! Shared bitmask plumbing for the two set-like index types.

/// Iterates every submask of a mask, descending, ending with 0.
#[derive(Debug, Clone)]
pub struct Submasks {
    mask: u32,
    cur: u32,
    done: bool,
}

impl Submasks {
    pub fn of(mask: u32) -> Self {
        Submasks {
            mask,
            cur: mask,
            done: false,
        }
    }
}

impl Iterator for Submasks {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if self.cur == 0 {
            self.done = true;
        } else {
            self.cur = (self.cur - 1) & self.mask;
        }
        Some(out)
    }
}

macro_rules! bitset_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(
            Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord,
            serde::Serialize, serde::Deserialize, Default,
        )]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl $name {
            pub const EMPTY: $name = $name(0);

            #[inline]
            pub fn singleton(index: usize) -> Self {
                $name(1 << index)
            }

            #[inline]
            pub fn contains(self, index: usize) -> bool {
                self.0 & (1 << index) != 0
            }

            #[inline]
            pub fn insert(self, index: usize) -> Self {
                $name(self.0 | (1 << index))
            }

            #[inline]
            pub fn remove(self, index: usize) -> Self {
                $name(self.0 & !(1 << index))
            }

            #[inline]
            pub fn union(self, other: Self) -> Self {
                $name(self.0 | other.0)
            }

            #[inline]
            pub fn inter(self, other: Self) -> Self {
                $name(self.0 & other.0)
            }

            #[inline]
            pub fn minus(self, other: Self) -> Self {
                $name(self.0 & !other.0)
            }

            #[inline]
            pub fn subset_of(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            /// Indices of the members, ascending.
            pub fn iter(self) -> impl Iterator<Item = usize> {
                let bits = self.0;
                (0..32u32).filter(move |i| bits & (1 << i) != 0).map(|i| i as usize)
            }

            /// All subsets of this set, including itself and the empty set.
            pub fn submasks(self) -> impl Iterator<Item = Self> {
                crate::mask::Submasks::of(self.0).map($name)
            }
        }
    };
}

pub(crate) use bitset_type;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_count_is_two_to_popcount() {
        assert_eq!(Submasks::of(0b1011).count(), 8);
        assert_eq!(Submasks::of(0).count(), 1);
    }

    #[test]
    fn submasks_are_subsets() {
        for s in Submasks::of(0b1101) {
            assert_eq!(s & !0b1101, 0);
        }
    }
}
