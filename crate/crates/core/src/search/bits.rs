/// Fixed-capacity square set used by the search core.
pub const MAX_SQUARES: usize = 256;
const WORDS: usize = MAX_SQUARES / 64;

#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct Bits([u64; WORDS]);

impl Bits {
    pub fn first_n(n: usize) -> Bits {
        let mut b = Bits::default();
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn single(i: usize) -> Bits {
        let mut b = Bits::default();
        b.insert(i);
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn and(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for (w, x) in r.0.iter_mut().zip(o.0) {
            *w &= x;
        }
        r
    }

    #[inline]
    pub fn or(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for (w, x) in r.0.iter_mut().zip(o.0) {
            *w |= x;
        }
        r
    }

    #[inline]
    pub fn and_not(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for (w, x) in r.0.iter_mut().zip(o.0) {
            *w &= !x;
        }
        r
    }

    #[inline]
    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let mut a = Bits::first_n(70);
        assert_eq!(a.count(), 70);
        a.remove(3);
        a.remove(65);
        assert!(!a.contains(3) && a.contains(64) && !a.contains(65));
        let b = Bits::single(200);
        assert_eq!(a.or(&b).count(), 69);
        assert!(a.and(&b).is_empty());
        assert_eq!(b.first(), Some(200));
        assert_eq!(
            Bits::first_n(5).and_not(&Bits::single(0)).iter().collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );
    }
}
