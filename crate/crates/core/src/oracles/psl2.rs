//! `PSL₂(ℤ)` as 2×2 integer matrices of determinant 1 modulo `±I`.

use std::fmt;

use crate::words::Word;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectiveMatrix {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl ProjectiveMatrix {
    pub const IDENTITY: ProjectiveMatrix = ProjectiveMatrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    /// `None` unless `ad − bc = 1`. The sign is normalized so the first nonzero entry is positive.
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Option<Self> {
        (a * d - b * c == 1).then(|| ProjectiveMatrix { a, b, c, d }.canonical())
    }

    fn canonical(self) -> Self {
        let first = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|&x| x != 0)
            .unwrap_or(1);
        if first < 0 {
            ProjectiveMatrix {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            self
        }
    }

    pub fn entries(&self) -> (i128, i128, i128, i128) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn inverse(&self) -> Self {
        ProjectiveMatrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
        .canonical()
    }

    /// Exact product; overflow of `i128` entries panics instead of wrapping.
    pub fn mul(&self, o: &Self) -> Self {
        let m = |x: i128, y: i128| x.checked_mul(y).expect("matrix entry overflow");
        let s = |x: i128, y: i128| x.checked_add(y).expect("matrix entry overflow");
        ProjectiveMatrix {
            a: s(m(self.a, o.a), m(self.b, o.c)),
            b: s(m(self.a, o.b), m(self.b, o.d)),
            c: s(m(self.c, o.a), m(self.d, o.c)),
            d: s(m(self.c, o.b), m(self.d, o.d)),
        }
        .canonical()
    }

    /// The Möbius map `z ↦ (az + b)/(cz + d)`.
    pub fn mobius(&self) -> String {
        let (a, b, c, d) = self.entries();
        format!("({})/({})", linear(a, b), linear(c, d))
    }
}

fn linear(k: i128, m: i128) -> String {
    let z = match k {
        0 => return m.to_string(),
        1 => "z".to_string(),
        -1 => "-z".to_string(),
        _ => format!("{k}z"),
    };
    match m.signum() {
        0 => z,
        1 => format!("{z}+{m}"),
        _ => format!("{z}{m}"),
    }
}

impl fmt::Debug for ProjectiveMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

/// Image of `a`: `z ↦ −1/z`, of order 2.
pub const M_A: ProjectiveMatrix = ProjectiveMatrix {
    a: 0,
    b: -1,
    c: 1,
    d: 0,
};
/// Image of `b`: `z ↦ −1/(z + 1)`, of order 3.
pub const M_B: ProjectiveMatrix = ProjectiveMatrix {
    a: 0,
    b: -1,
    c: 1,
    d: 1,
};

/// Evaluates a word over `{a, b}` (ids 0 and 1) under `a ↦ M_A`, `b ↦ M_B`.
pub fn psl2_eval(w: &Word) -> ProjectiveMatrix {
    w.letters()
        .iter()
        .fold(ProjectiveMatrix::IDENTITY, |acc, l| {
            let m = match l.gen().0 {
                0 => M_A,
                1 => M_B,
                g => panic!("psl2_eval: generator {g} outside {{a, b}}"),
            };
            acc.mul(&if l.is_positive() { m } else { m.inverse() })
        })
}

/// True iff no nonempty freely reduced word of length `≤ max_len` in
/// `m1^{±1}, m2^{±1}` evaluates to the identity.
pub fn free_at_length(m1: ProjectiveMatrix, m2: ProjectiveMatrix, max_len: usize) -> bool {
    let gens = [m1, m1.inverse(), m2, m2.inverse()];
    // letter i is inverse to i ^ 1
    fn dfs(gens: &[ProjectiveMatrix; 4], acc: ProjectiveMatrix, last: usize, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in 0..4 {
            if i == last ^ 1 {
                continue;
            }
            let next = acc.mul(&gens[i]);
            if next.is_identity() || !dfs(gens, next, i, left - 1) {
                return false;
            }
        }
        true
    }
    (0..4).all(|i| !gens[i].is_identity() && dfs(&gens, gens[i], i, max_len - 1))
}
