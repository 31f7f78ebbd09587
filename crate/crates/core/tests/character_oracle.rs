//! Weyl-Kac characters against the affine Freudenthal recursion.

mod oracle;

use oracle::first_mismatch;

#[test]
fn su2_levels_1_to_3() {
    for k in 1..=3 {
        assert_eq!(first_mismatch(2, k, 8), None, "su(2)_{k}");
    }
}

#[test]
fn su3_levels_1_and_2() {
    for k in 1..=2 {
        assert_eq!(first_mismatch(3, k, 5), None, "su(3)_{k}");
    }
}
