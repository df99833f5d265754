use motivic_steenrod::dual::{
    bmu_coaction, coaction_of_u, dual_mul, pair_with_pn, BmuElement, DualMonomial,
};
use motivic_steenrod::modules::{p_on_projspace, ProjClass, ProjSpaceRing};
use motivic_steenrod::{FpScalar, Prime};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

// ⟨λ(v^k), P^n⟩ recovers P^n(h^k) on projective space.
#[test]
fn xi1_pairing_reproduces_the_power_action() {
    for p in [prime(2), prime(3), prime(5)] {
        let trunc = 40;
        let ring = ProjSpaceRing::new(trunc, p).unwrap();
        for k in 0..=8u32 {
            let v_k = BmuElement::monomial(p, trunc, 0, k, FpScalar::one(p));
            let image = bmu_coaction(&v_k);
            for n in 0..=6u32 {
                let mut paired = ProjClass::zero(ring);
                for (m, e, j, c) in image.terms() {
                    assert_eq!(e, 0);
                    let w = pair_with_pn(m, n as u64);
                    paired = paired.add(&ProjClass::monomial(ring, j, c * w));
                }
                let direct = p_on_projspace(n, &ProjClass::h_pow(ring, k));
                assert_eq!(paired, direct, "p={p} P{n}(v^{k})");
            }
        }
    }
}

#[test]
fn cross_terms_of_u_squared_cancel() {
    for p in [prime(3), prime(5), prime(7)] {
        let lu = coaction_of_u(p, 64);
        assert!(lu.mul(&lu).unwrap().is_zero(), "p={p}");
        for i in 0..3 {
            for j in 0..3 {
                let (ti, tj) = (DualMonomial::tau(i, p), DualMonomial::tau(j, p));
                let ij = dual_mul(&ti, &tj).unwrap();
                let ji = dual_mul(&tj, &ti).unwrap();
                match (ij, ji) {
                    (None, None) => assert_eq!(i, j),
                    (Some((a, m1)), Some((b, m2))) => {
                        assert_eq!(m1, m2);
                        assert_eq!(a + b, FpScalar::zero(p));
                    }
                    _ => panic!("asymmetric vanishing"),
                }
            }
        }
    }
}

#[test]
fn u_image_at_larger_truncation() {
    let img = bmu_coaction(&BmuElement::u(prime(3), 30));
    assert_eq!(img.to_string(), "u + t0@v + t1@v^3 + t2@v^9 + t3@v^27");
}
