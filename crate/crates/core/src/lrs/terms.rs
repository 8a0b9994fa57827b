use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Lrs;

/// Term-by-term iterator over an [`Lrs`], starting at `u_0`.
///
/// Runs on `i128` while every value fits and switches to `BigInt` on the
/// first overflow. Zero recurrence coefficients are skipped, which matters
/// for the sparse recurrences produced from spike sums.
#[derive(Debug, Clone)]
pub struct Terms {
    k: usize,
    head: usize,
    window: Window,
    sparse_big: Vec<(usize, BigInt)>,
    sparse_small: Option<Vec<(usize, i128)>>,
}

#[derive(Debug, Clone)]
enum Window {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Terms {
    pub(crate) fn new(u: &Lrs) -> Self {
        let sparse_big: Vec<(usize, BigInt)> = u
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, a.clone()))
            .collect();
        let sparse_small = sparse_big
            .iter()
            .map(|(j, a)| a.to_i128().map(|v| (*j, v)))
            .collect::<Option<Vec<_>>>();
        let small_init = u.init.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>();
        let window = match (&sparse_small, small_init) {
            (Some(_), Some(w)) => Window::Small(w),
            _ => Window::Big(u.init.clone()),
        };
        Terms {
            k: u.order(),
            head: 0,
            window,
            sparse_big,
            sparse_small,
        }
    }

    /// True when the current term is zero. Does not advance.
    pub fn current_is_zero(&self) -> bool {
        match &self.window {
            Window::Small(w) => w[self.head] == 0,
            Window::Big(w) => w[self.head].is_zero(),
        }
    }

    pub fn current(&self) -> BigInt {
        match &self.window {
            Window::Small(w) => BigInt::from(w[self.head]),
            Window::Big(w) => w[self.head].clone(),
        }
    }

    /// Move to the next term.
    pub fn advance(&mut self) {
        let k = self.k;
        let head = self.head;
        if let (Window::Small(w), Some(coeffs)) = (&mut self.window, &self.sparse_small) {
            let next = coeffs.iter().try_fold(0i128, |acc, &(j, a)| {
                a.checked_mul(w[(head + j) % k]).and_then(|t| acc.checked_add(t))
            });
            if let Some(v) = next {
                w[head] = v;
                self.head = (head + 1) % k;
                return;
            }
            let promoted = w.iter().map(|&v| BigInt::from(v)).collect();
            self.window = Window::Big(promoted);
        }
        let Window::Big(w) = &mut self.window else {
            unreachable!("small window handled above")
        };
        let next: BigInt = self
            .sparse_big
            .iter()
            .map(|(j, a)| a * &w[(head + j) % k])
            .sum();
        w[head] = next;
        self.head = (head + 1) % k;
    }
}

impl Iterator for Terms {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let v = self.current();
        self.advance();
        Some(v)
    }
}
