use super::*;
use crate::algebra::{Gen, Sign};
use crate::coeff::{rat, Rat, RatFunc};

fn engine(n: usize, ord: OrderingKind, order: usize) -> Engine<Rat> {
    Engine::new(QCtx::numeric(rat(3, 2)).unwrap(), n, ord, order).unwrap()
}

#[test]
fn projection_requires_normal_order() {
    let w = AlgElem::<Rat>::word(vec![Gen::plus(1, 1, 1), Gen::plus(2, 1, 1)], Rat::one());
    assert!(matches!(hc_project(&w, OrderingKind::Standard, 2), Err(Error::NotNormalOrdered(_))));
    let d = AlgElem::<Rat>::word(vec![Gen::plus(1, 1, 1), Gen::minus(2, 2, 1)], Rat::one());
    let p = hc_project(&d, OrderingKind::Standard, 2).unwrap();
    assert_eq!(p, PiElem::var(Sign::Plus, 1, 1).mul(&PiElem::var(Sign::Minus, 2, 1)));
    let off = AlgElem::<Rat>::word(vec![Gen::plus(2, 1, 1)], Rat::one());
    assert!(hc_project(&off, OrderingKind::Standard, 2).unwrap().is_zero());
}

#[test]
fn images_of_ell() {
    for (ord, k) in [(OrderingKind::Standard, 1), (OrderingKind::Standard, 2), (OrderingKind::Opposite, 1), (OrderingKind::Opposite, 2)] {
        let t = TruncPolicy::for_window(2, 2).unwrap();
        let eng = engine(2, ord, t.series_order);
        assert_eq!(hc_image_witness(&eng, k, &t, (0, 2)).unwrap(), None, "{ord:?} k={k}");
    }
}

#[test]
fn rank_one_image() {
    let t = TruncPolicy::for_window(2, 1).unwrap();
    let eng = engine(1, OrderingKind::Standard, t.series_order);
    assert_eq!(hc_image_witness(&eng, 1, &t, (-1, 1)).unwrap(), None);
}

#[test]
fn primed_image_differs() {
    // the two projections of ℓ_1 differ for n = 2, so the checks are not vacuous
    let t = TruncPolicy::for_window(2, 1).unwrap();
    let ctx = QCtx::numeric(rat(3, 2)).unwrap();
    let a = hc_formula::<Rat>(&ctx, 2, 1, false, (&t).into()).unwrap();
    let b = hc_formula::<Rat>(&ctx, 2, 1, true, (&t).into()).unwrap();
    assert_ne!(a.coeff(0).unwrap(), b.coeff(0).unwrap());
}

#[test]
fn multiplicative_on_window() {
    let eng = engine(2, OrderingKind::Standard, 8);
    assert_eq!(hc_multiplicative_witness(&eng, 2, (0, 1)).unwrap(), None);
}

#[test]
fn miura() {
    for n in 1..=3 {
        let eng = engine(n, OrderingKind::Standard, 2);
        assert_eq!(miura_witness(&eng, 3, (0, 3)).unwrap(), None, "n={n}");
    }
}

#[test]
fn wakimoto() {
    let ctx = QCtx::<RatFunc>::symbolic();
    for n in [2, 3] {
        for k in 1..=n {
            let t = PiTrunc { d_plus: 4, cap: 2 };
            assert_eq!(wakimoto_witness(&ctx, n, k, t).unwrap(), None, "n={n} k={k}");
        }
    }
}
