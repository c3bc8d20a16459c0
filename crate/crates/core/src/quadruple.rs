//! The four coupled angular momenta and the diagonal grid they induce.

use crate::error::{Error, Result};
use crate::regge::regge_conjugate_unchecked;
use crate::HalfInt;

/// Four angular momentum quantum numbers closing a (not necessarily planar)
/// quadrilateral `J1 + J2 + J3 + J4 = 0`.
///
/// Construction does not validate; see [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadrupleJ {
    pub j: [HalfInt; 4],
}

impl QuadrupleJ {
    pub const fn new(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt) -> Self {
        QuadrupleJ { j: [j1, j2, j3, j4] }
    }

    pub const fn from_twice(twice: [i64; 4]) -> Self {
        QuadrupleJ {
            j: [
                HalfInt::from_twice(twice[0]),
                HalfInt::from_twice(twice[1]),
                HalfInt::from_twice(twice[2]),
                HalfInt::from_twice(twice[3]),
            ],
        }
    }

    /// Panics unless every entry is a multiple of one half.
    pub fn from_f64(values: [f64; 4]) -> Self {
        let h = |x: f64| HalfInt::from_f64_exact(x).expect("not a half-integer");
        QuadrupleJ::new(h(values[0]), h(values[1]), h(values[2]), h(values[3]))
    }

    pub fn twice(&self) -> [i64; 4] {
        self.j.map(HalfInt::twice)
    }

    /// Side lengths `J_i = j_i + 1/2` of the quadrilateral.
    pub fn sides(&self) -> [HalfInt; 4] {
        self.j.map(|j| j + HalfInt::HALF)
    }

    pub fn grid(&self) -> Result<LGrid> {
        validate(self)
    }
}

impl std::fmt::Display for QuadrupleJ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.j[0], self.j[1], self.j[2], self.j[3])
    }
}

/// The discrete diagonal grid `l_min, l_min + 1, ..., l_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LGrid {
    pub l_min: HalfInt,
    pub l_max: HalfInt,
    pub dim: usize,
}

impl LGrid {
    /// Diagonal value at grid index `i`.
    #[inline]
    pub fn l_at(&self, i: usize) -> HalfInt {
        self.l_min + HalfInt::integer(i as i64)
    }

    pub fn index_of(&self, l: HalfInt) -> Option<usize> {
        if l < self.l_min || l > self.l_max || !(l - self.l_min).is_integer() {
            return None;
        }
        Some(((l - self.l_min).twice() / 2) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.dim).map(move |i| self.l_at(i))
    }

    /// Upper end of the continuous domain, one step beyond the grid.
    pub fn domain_end(&self) -> HalfInt {
        self.l_max + HalfInt::ONE
    }
}

/// Checks the quadruple and returns its diagonal grid.
///
/// `l_min = max(|j1-j2|, |j3-j4|)` and `l_max = min(j1+j2, j3+j4)`. The
/// dimension agrees with `2 min(j_i, j'_i) + 1` over the quadruple and its
/// Regge conjugate.
pub fn validate(j: &QuadrupleJ) -> Result<LGrid> {
    let twice_sum: i64 = j.j.iter().map(|h| h.twice()).sum();
    if twice_sum % 2 != 0 {
        return Err(Error::NonHalfIntegral { twice_sum });
    }
    for (index, &value) in j.j.iter().enumerate() {
        if value < HalfInt::ZERO {
            return Err(Error::NegativeJ { index: index + 1, value });
        }
    }
    let conjugate = regge_conjugate_unchecked(j);
    for (index, &value) in conjugate.j.iter().enumerate() {
        if value < HalfInt::ZERO {
            return Err(Error::ClosureViolated { index: index + 1, value });
        }
    }
    let [j1, j2, j3, j4] = j.j;
    let l_min = (j1 - j2).abs().max((j3 - j4).abs());
    let l_max = (j1 + j2).min(j3 + j4);
    let steps = l_max - l_min;
    debug_assert!(steps.is_integer() && steps >= HalfInt::ZERO);
    Ok(LGrid {
        l_min,
        l_max,
        dim: (steps.twice() / 2 + 1) as usize,
    })
}

/// `2 min(j_1..j_4, j'_1..j'_4) + 1`, the dimension from the eight entries.
pub fn dimension_from_minimum(j: &QuadrupleJ) -> Result<usize> {
    validate(j)?;
    let conjugate = regge_conjugate_unchecked(j);
    let min = j.j.iter().chain(conjugate.j.iter()).copied().min().expect("eight entries");
    Ok((min.twice() + 1) as usize)
}

/// Relabels the quadruple so that `j1` is the smallest of the eight entries
/// and `j1 <= j2 <= j4`.
///
/// The relabeling passes to the Regge conjugate when the minimum lies there,
/// then applies a rotation or reflection of the quadrilateral. The spectrum
/// is unchanged; eigenvector component order is not, so this is never
/// applied implicitly.
pub fn canonical_form(j: &QuadrupleJ) -> Result<QuadrupleJ> {
    validate(j)?;
    let conjugate = regge_conjugate_unchecked(j);
    let min_of = |q: &QuadrupleJ| q.j.iter().copied().min().expect("four entries");
    let base = if min_of(&conjugate) < min_of(j) { conjugate } else { *j };
    let pos = (0..4).min_by_key(|&i| (base.j[i], i)).expect("four entries");
    let rotated: [HalfInt; 4] = std::array::from_fn(|i| base.j[(pos + i) % 4]);
    let [a, b, c, d] = rotated;
    Ok(if b <= d {
        QuadrupleJ::new(a, b, c, d)
    } else {
        QuadrupleJ::new(a, d, c, b)
    })
}
