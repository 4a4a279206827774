use serde::{Deserialize, Serialize};

/// Iterated base-2 logarithm: `0` for `x ≤ 1`, else `1 + log*(log₂ x)`.
pub fn log_star(x: f64) -> u32 {
    let mut x = x;
    let mut n = 0;
    while x > 1.0 {
        x = x.log2();
        n += 1;
    }
    n
}

/// Value of a tower, flagged once it no longer fits in an `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tower {
    pub value: f64,
    pub saturated: bool,
}

/// `twr_0(x) = x`, `twr_t(x) = 2^{twr_{t-1}(x)}`. Saturates once an exponent
/// exceeds 1023.
pub fn twr(t: u32, x: f64) -> Tower {
    let mut v = x;
    for _ in 0..t {
        if v > 1023.0 {
            return Tower {
                value: f64::INFINITY,
                saturated: true,
            };
        }
        v = v.exp2();
    }
    Tower {
        value: v,
        saturated: false,
    }
}
