//! Closed-form existence characterizations.

/// Closed tour on the regular `m x n` board.
pub fn schwenk_predicate(m: i64, n: i64) -> bool {
    let (s, l) = (m.min(n), m.max(n));
    !(m % 2 == 1 && n % 2 == 1) && ![1, 2, 4].contains(&s) && !(s == 3 && [4, 6, 8].contains(&l))
}

/// Any closed tour on `C(m,n)`.
pub fn watkins_predicate(m: i64, n: i64) -> bool {
    !((m == 1 && n > 1) || ((m == 2 || m == 4) && n % 2 == 0))
}

/// Nullhomotopic tour on `C(m,n)`.
pub fn cyl_null_predicate(m: i64, n: i64) -> bool {
    let both_odd = m % 2 == 1 && n % 2 == 1;
    !((both_odd && m * n > 1) || (m == 1 && n > 1) || m == 2 || (m == 4 && n % 2 == 0))
}

/// Nullhomotopic tour on `T(m,n)`.
pub fn tori_null_predicate(m: i64, n: i64) -> bool {
    match (m, n) {
        (1, 1) => true,
        (1, 2) | (2, 1) => false,
        _ => m % 2 == 0 || n % 2 == 0,
    }
}

/// Tour on `C(m,n)` of class `+1` or `-1`.
pub fn cyl_gen_predicate(m: i64, n: i64) -> bool {
    ![1, 2, 4].contains(&m) && !(m % 2 == 0 && n % 2 == 1)
}

/// Tour on `T(m,n)` of class `(0, +1)` or `(0, -1)`.
pub fn torus_lon_predicate(m: i64, n: i64) -> bool {
    (m, n) != (1, 1) && (m % 2 == 1 || n % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_examples() {
        assert!(schwenk_predicate(8, 8));
        assert!(schwenk_predicate(10, 3));
        assert!(!schwenk_predicate(4, 4));
        assert!(watkins_predicate(2, 1));
        assert!(!watkins_predicate(1, 5));
        assert!(!watkins_predicate(4, 6));
        assert!(cyl_null_predicate(1, 1));
        assert!(!cyl_null_predicate(2, 1));
        assert!(cyl_null_predicate(3, 4));
        assert!(tori_null_predicate(2, 2));
        assert!(!tori_null_predicate(3, 3));
        assert!(!tori_null_predicate(1, 2));
        assert!(cyl_gen_predicate(5, 5));
        assert!(!cyl_gen_predicate(4, 8));
        assert!(!cyl_gen_predicate(6, 3));
        assert!(torus_lon_predicate(1, 2));
        assert!(!torus_lon_predicate(2, 3));
        assert!(torus_lon_predicate(4, 2));
        assert!(!torus_lon_predicate(1, 1));
    }
}
