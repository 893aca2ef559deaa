use pbwforge::complex::phi::{diagram_defect, has_unit_value, hochschild_transport_signs, max_order, PhiContext};
use pbwforge::complex::PolyDiffOp;
use pbwforge::scalar::rat;
use pbwforge::tensor::{CommMonomial, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: usize = 2;

fn random_cochain(rng: &mut ChaCha8Rng, arity: usize) -> PolyDiffOp {
    let mut psi = PolyDiffOp::zero(N, arity);
    for _ in 0..rng.gen_range(1..=2) {
        let mut budget = 2u32;
        let orders: Vec<CommMonomial> = (0..arity)
            .map(|_| {
                let mut e = vec![0u32; N];
                if budget > 0 && rng.gen_bool(0.6) {
                    e[rng.gen_range(0..N)] += 1;
                    budget -= 1;
                }
                CommMonomial::new(e)
            })
            .collect();
        let mut c = Polynomial::constant(rat(rng.gen_range(-3..=3)), N);
        if rng.gen_bool(0.5) {
            c = c.add(&Polynomial::var(rng.gen_range(0..N), N).scale(&rat(rng.gen_range(1..=2))));
        }
        psi.add_term(orders, &c);
    }
    psi
}

#[test]
fn transported_diagram_commutes_up_to_inner_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    let mut with_inner = 0;
    while checked < 24 {
        let arity = checked % 4;
        let psi = random_cochain(&mut rng, arity);
        if psi.is_zero() {
            continue;
        }
        let ctx = PhiContext::new(N, 3, max_order(&psi) + 1);
        let dd = diagram_defect(&psi, &ctx).unwrap();
        let parity = if arity % 2 == 0 { 1 } else { -1 };
        assert!(
            dd.matching_scalars.contains(&parity),
            "arity {arity}: {psi:?} gives {:?}",
            dd.difference
        );
        if !has_unit_value(&psi) {
            assert!(dd.vanishes());
        }
        if !dd.inner.is_zero() && arity > 0 {
            with_inner += 1;
        }
        checked += 1;
    }
    assert!(with_inner >= 6, "too few samples with Ψ(1) ≠ 0: {with_inner}");
}

#[test]
fn hochschild_differential_transports_to_minus_commutator() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..20 {
        let psi = random_cochain(&mut rng, i % 3);
        let ctx = PhiContext::new(N, 3, max_order(&psi) + 2);
        let signs = hochschild_transport_signs(&psi, &ctx).unwrap();
        assert!(signs.contains(&-1), "{psi:?}");
    }
}
