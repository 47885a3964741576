//! Reference rings built from closed-form rules.

use crate::ring::FusionRing;

/// Group ring of the cyclic group of order `n`: basis `1, g1, .., g(n-1)`
/// with `gi * gj = g((i + j) mod n)`.
pub fn cyclic_group_ring(n: usize) -> FusionRing {
    assert!(n >= 1, "group order must be positive");
    let label = |k: usize| {
        if k == 0 {
            "1".to_string()
        } else {
            format!("g{k}")
        }
    };
    let mut b = FusionRing::builder(format!("Z{n}"));
    for k in 0..n {
        b.push_basis(label(k), 1, label((n - k) % n));
    }
    b.set_unit("1");
    for i in 1..n {
        for j in 1..n {
            b.push_product(label(i), label(j), [(label((i + j) % n), 1)]);
        }
    }
    b.build().expect("cyclic group ring is well formed")
}

/// The odd-spin part of the representation ring of SO(3), truncated at
/// `max_degree`: basis `1, x3, x5, ..`, all self-dual, with
/// `x(2a+1) x(2b+1) = sum_{c=|a-b|}^{a+b} x(2c+1)`. Products reaching past
/// the bound are left unknown.
///
/// Panics unless `max_degree` is odd and at least 3.
pub fn so3_truncated(max_degree: u64) -> FusionRing {
    assert!(
        max_degree >= 3 && max_degree % 2 == 1,
        "max_degree must be odd and at least 3"
    );
    let top = (max_degree - 1) / 2;
    let label = |a: u64| {
        if a == 0 {
            "1".to_string()
        } else {
            format!("x{}", 2 * a + 1)
        }
    };
    let mut b = FusionRing::builder(format!("SO3_trunc{max_degree}"))
        .partial(true)
        .truncation(Some(max_degree));
    for a in 0..=top {
        b.push_basis(label(a), 2 * a + 1, label(a));
    }
    b.set_unit("1");
    for a in 1..=top {
        for c in 1..=top {
            if a + c > top {
                continue;
            }
            let lo = a.abs_diff(c);
            b.push_product(label(a), label(c), (lo..=a + c).map(|s| (label(s), 1)));
        }
    }
    b.build().expect("truncated SO(3) ring is well formed")
}

const V_LABELS: [&str; 5] = ["1", "g", "h1", "h2", "h3"];
const X3_LABELS: [&str; 5] = ["x3", "gx3", "h1x3", "h2x3", "h3x3"];

/// The configuration that the terminal branch of the ladder argument rules
/// out, as a partial ring of rank 11.
///
/// Five grouplikes fix `x5`, so they form a group of order five, taken as
/// the cyclic group `1, g = c, h1 = c^2, h2 = c^3, h3 = c^4`. The degree-3
/// basis is `{v x3 : v in V}` with `(v x3)* = v^-1 x3`. Known products:
/// the group table, `v x5 = x5 v = x5`, `x3^2 = 1 + x3 + x5`,
/// `x5 x3 = sum_v v x3`, `x5^2 = 4 x5 + sum_v v`, and what follows from
/// these by associativity with a grouplike factor (`v (w x3) = (vw) x3`,
/// `(v x3) x3 = v + v x3 + x5`, `x5 (v x3) = x5 x3`). Everything else is
/// unknown.
pub fn proof_fragment_ring() -> FusionRing {
    let inv = |e: usize| (5 - e) % 5;
    let mut b = FusionRing::builder("proof_fragment").partial(true);
    for e in 0..5 {
        b.push_basis(V_LABELS[e], 1, V_LABELS[inv(e)]);
        b.push_basis(X3_LABELS[e], 3, X3_LABELS[inv(e)]);
    }
    b.push_basis("x5", 5, "x5");
    b.set_unit("1");

    for e in 1..5 {
        for f in 1..5 {
            b.push_product(V_LABELS[e], V_LABELS[f], [(V_LABELS[(e + f) % 5], 1)]);
        }
        b.push_product(V_LABELS[e], "x5", [("x5", 1)]);
        b.push_product("x5", V_LABELS[e], [("x5", 1)]);
        for f in 0..5 {
            b.push_product(V_LABELS[e], X3_LABELS[f], [(X3_LABELS[(e + f) % 5], 1)]);
        }
    }
    let x5x3: Vec<(&str, u64)> = X3_LABELS.iter().map(|l| (*l, 1)).collect();
    for e in 0..5 {
        b.push_product(
            X3_LABELS[e],
            "x3",
            [(V_LABELS[e], 1), (X3_LABELS[e], 1), ("x5", 1)],
        );
        b.push_product("x5", X3_LABELS[e], x5x3.clone());
    }
    let mut x5x5: Vec<(&str, u64)> = V_LABELS.iter().map(|l| (*l, 1)).collect();
    x5x5.push(("x5", 4));
    b.push_product("x5", "x5", x5x5);
    b.build().expect("proof fragment is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cyclic_ring() {
        let r = cyclic_group_ring(1);
        assert_eq!(r.rank(), 1);
        assert!(r.is_complete());
    }

    #[test]
    fn so3_truncation_marks_unknowns() {
        let r3 = so3_truncated(3);
        let x3 = r3.index_of("x3").unwrap();
        assert!(!r3.entry(x3, x3).is_known());

        let r5 = so3_truncated(5);
        let x3 = r5.element("x3").unwrap();
        let sq = r5.multiply(&x3, &x3).unwrap();
        assert_eq!(r5.display(&sq), "1 + x3 + x5");

        let r9 = so3_truncated(9);
        let x5 = r9.element("x5").unwrap();
        let sq = r9.multiply(&x5, &x5).unwrap();
        assert_eq!(r9.display(&sq), "1 + x3 + x5 + x7 + x9");
        r9.validate_degree_sums().unwrap();
    }

    #[test]
    fn fragment_shape() {
        let r = proof_fragment_ring();
        assert_eq!(r.rank(), 11);
        assert_eq!(r.dimension(), 75);
        r.validate_degree_sums().unwrap();
        let x5 = r.element("x5").unwrap();
        let x3 = r.element("x3").unwrap();
        assert_eq!(
            r.display(&r.multiply(&x5, &x3).unwrap()),
            "gx3 + h1x3 + h2x3 + h3x3 + x3"
        );
        assert_eq!(
            r.display(&r.multiply(&x5, &x5).unwrap()),
            "1 + g + h1 + h2 + h3 + 4x5"
        );
    }
}
