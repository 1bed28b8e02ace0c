use super::checks::*;
use super::*;
use crate::algebra::{LCalc, OrderingKind, TruncPolicy};
use crate::coeff::{rat, QCtx, Rat};
use crate::sugawara::{ell_bar_trace, plus_ctx, Trace34, EllMethod, SugawaraCtx};

fn engine(n: usize, order: usize) -> Engine<Rat> {
    Engine::new(QCtx::numeric(rat(3, 2)).unwrap(), n, OrderingKind::Standard, order).unwrap()
}

#[test]
fn quotient_relations() {
    let eng = engine(2, 4);
    let vac = Vacuum::new(&eng);
    let one = VacVector::vacuum();
    assert!(vac.act_gen(Gen::minus(1, 2, 1), &one).unwrap().is_zero());
    assert!(vac.act_gen(Gen::minus(2, 1, 0), &one).unwrap().is_zero());
    assert_eq!(vac.act_gen(Gen::minus(2, 2, 0), &one).unwrap(), one);
    assert_eq!(vac.act_gen(Gen::plus(1, 1, 0), &one).unwrap(), one);
    let g = Gen::plus(1, 2, 1);
    assert_eq!(vac.act_gen(g, &one).unwrap().elem(), &AlgElem::gen(g));
}

#[test]
fn action_is_associative() {
    let eng = engine(2, 6);
    let vac = Vacuum::new(&eng);
    let gens = generators(2, 1);
    let vs = spanning_words(&eng, 1, 2);
    for g in &gens {
        for h in &gens {
            let gh = eng.mul(&AlgElem::gen(*g), &AlgElem::gen(*h), None).unwrap();
            for v in &vs {
                let a = vac.act(&gh, v).unwrap();
                let b = vac.act_gen(*g, &vac.act_gen(*h, v).unwrap()).unwrap();
                assert_eq!(a, b, "{g} {h} on {}", v.elem());
            }
        }
    }
}

#[test]
fn ell_bar_is_invariant() {
    for n in [2, 3] {
        let eng = engine(n, 6);
        let vac = Vacuum::new(&eng);
        let cx = plus_ctx(&eng, 3);
        for k in 1..=n {
            let lb = window(&ell_bar_trace(&cx, k).unwrap(), 0, 2).unwrap();
            assert_eq!(invariance_witness(&vac, &lb, 2).unwrap(), None, "n={n} k={k}");
        }
    }
}

#[test]
fn ell_equals_ell_bar_on_vacuum() {
    let t = TruncPolicy::for_window(1, 2).unwrap();
    let eng = engine(2, t.series_order);
    let vac = Vacuum::new(&eng);
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t));
    let pcx = plus_ctx(&eng, t.d_plus);
    for k in 1..=2 {
        let l = window(&Trace34.ell(&cx, k).unwrap(), 0, 2).unwrap();
        let lb = window(&ell_bar_trace(&pcx, k).unwrap(), 0, 2).unwrap();
        assert_eq!(same_on_vacuum_witness(&vac, &l, &lb), None, "k={k}");
    }
}

#[test]
fn qdet_minus_fixes_vacuum() {
    let t = TruncPolicy::new(3, 1, 6).unwrap();
    let eng = engine(2, t.series_order);
    let vac = Vacuum::new(&eng);
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t));
    let d = cx.calc.qdet(Sign::Minus).unwrap();
    assert_eq!(acts_as_one_witness(&vac, &window(&d, -2, 0).unwrap()), None);
}

#[test]
fn ell_bar_coefficients_commute() {
    let eng = engine(2, 4);
    let vac = Vacuum::new(&eng);
    let cx = plus_ctx(&eng, 2);
    let a = window(&ell_bar_trace(&cx, 1).unwrap(), 0, 2).unwrap();
    let b = window(&ell_bar_trace(&cx, 2).unwrap(), 0, 2).unwrap();
    assert_eq!(exact_commutativity_witness(&vac, &a, &b).unwrap(), None);
    assert_eq!(commutativity_witness(&vac, &a, &b, &spanning_words(&eng, 1, 2)).unwrap(), None);
}

#[test]
fn ell_one_central_small() {
    let t = TruncPolicy::for_window(3, 1).unwrap();
    let eng = engine(2, t.series_order);
    let vac = Vacuum::new(&eng);
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t));
    let l = window(&Trace34.ell(&cx, 1).unwrap(), -1, 1).unwrap();
    let vs = spanning_words(&eng, 1, 2);
    assert_eq!(centrality_witness(&vac, &l, &generators(2, 1), &vs).unwrap(), None);
}


#[test]
fn invariance_needs_the_right_normalization() {
    let ctx = QCtx::numeric(rat(3, 2)).unwrap();
    let mut f = crate::coeff::f_series(&ctx, 2, 6).unwrap();
    f.add_term(1, Rat::one());
    let eng = Engine::with_f(ctx, 2, OrderingKind::Standard, &f).unwrap();
    let vac = Vacuum::new(&eng);
    let cx = plus_ctx(&eng, 3);
    let lb = window(&ell_bar_trace(&cx, 1).unwrap(), 0, 2).unwrap();
    assert!(invariance_witness(&vac, &lb, 2).unwrap().is_some());
}

#[test]
fn commutativity_needs_q_antisymmetrizer() {
    use crate::sugawara::{EllOptions, SugawaraCtx};
    use crate::tensor::PermKind;
    let eng = engine(2, 4);
    let vac = Vacuum::new(&eng);
    let good = plus_ctx(&eng, 2);
    let bad = SugawaraCtx::new(LCalc::plus_only(&eng, 2)).with_options(EllOptions { drop_d: false, perm: PermKind::Plain });
    let a = window(&ell_bar_trace(&good, 1).unwrap(), 0, 2).unwrap();
    let b = window(&ell_bar_trace(&bad, 2).unwrap(), 0, 2).unwrap();
    assert!(commutativity_witness(&vac, &a, &b, &spanning_words(&eng, 1, 2)).unwrap().is_some());
}

#[test]
fn centrality_needs_d() {
    use crate::sugawara::EllOptions;
    use crate::tensor::PermKind;
    let t = TruncPolicy::for_window(2, 1).unwrap();
    let eng = engine(2, t.series_order);
    let vac = Vacuum::new(&eng);
    let cx = SugawaraCtx::new(LCalc::new(&eng, &t)).with_options(EllOptions { drop_d: true, perm: PermKind::Q });
    let l = window(&Trace34.ell(&cx, 1).unwrap(), -1, 1).unwrap();
    assert!(centrality_witness(&vac, &l, &generators(2, 1), &spanning_words(&eng, 1, 1)).unwrap().is_some());
}
