use std::sync::Arc;

use super::fermi::{split_pair, GradedSlot};
use super::idempotent::{IdempotentSlot, Piece};
use super::*;
use crate::algebra::{AlgebraSignature, Monomial};
use crate::rational::{int, ratio};
use crate::word::Block;

fn state(name: &str, moments: &[Rational]) -> MomentFunctional {
    let sig = AlgebraSignature::ungraded(name, false, &["a"]).unwrap();
    MomentFunctional::from_fn(Arc::new(sig), moments.len(), |m| moments[m.len() - 1].clone())
}

/// Unital graded algebra with an odd `a` and an even `c`, even functional
/// with `φ(m) = moment(m)` on even monomials.
fn graded_state(name: &str, max: usize, moment: impl Fn(&Monomial) -> Rational) -> MomentFunctional {
    let sig = Arc::new(
        AlgebraSignature::new(name, true, [("a".to_string(), 1u8), ("c".to_string(), 0u8)]).unwrap(),
    );
    let s = sig.clone();
    MomentFunctional::from_fn(sig, max, move |m| {
        if s.degree(m) == 1 {
            int(0)
        } else {
            moment(m)
        }
    })
}

fn word(letters: &[(usize, Vec<usize>)]) -> Word {
    Word::merged(
        letters
            .iter()
            .map(|(f, l)| Block::new(*f, Monomial::from_indices(l.clone()))),
    )
}

fn aba() -> Word {
    word(&[(0, vec![0]), (1, vec![0]), (0, vec![0])])
}

fn slot(pieces: Vec<Piece>) -> IdempotentSlot {
    pieces.into_iter().fold(IdempotentSlot::unit(), |acc, p| {
        acc.times(&match p {
            Piece::P => IdempotentSlot::p(),
            Piece::Letters(m) => IdempotentSlot::letters(m),
        })
    })
}

#[test]
fn reduced_state_examples() {
    let phi = state("A", &[ratio(1, 2), ratio(3, 7)]);
    let ReducedState::Idempotent(f) = reduce_state(ReductionKind::Boolean, &phi).unwrap() else {
        panic!("expected the idempotent reduction")
    };
    let a = || Piece::Letters(Monomial::letter(0));
    assert_eq!(f.eval(&slot(vec![Piece::P, a(), Piece::P])).unwrap(), ratio(1, 2));
    let a2 = Piece::Letters(Monomial::from_indices(vec![0, 0]));
    assert_eq!(f.eval(&slot(vec![a(), Piece::P, a2])).unwrap(), ratio(3, 14));
    assert_eq!(f.eval(&IdempotentSlot::p()).unwrap(), int(1));

    let g = graded_state("G", 2, |_| ratio(5, 3));
    let ReducedState::Fermi(fg) = reduce_state(ReductionKind::Fermi, &g).unwrap() else {
        panic!("expected bosonization")
    };
    let aa = Monomial::from_indices(vec![0, 0]);
    let twisted = GradedSlot { monomial: aa.clone(), twist: true };
    assert_eq!(fg.eval(&twisted).unwrap(), ratio(5, 3));
    assert_eq!(fg.eval(&GradedSlot::letter(aa)).unwrap(), ratio(5, 3));
}

#[test]
fn reduce_state_regimes() {
    let unital = MomentFunctional::from_fn(
        Arc::new(AlgebraSignature::ungraded("A", true, &["a"]).unwrap()),
        2,
        |_| int(1),
    );
    assert!(matches!(
        reduce_state(ReductionKind::Monotone, &unital),
        Err(Error::RegimeMismatch(_))
    ));
    assert!(matches!(
        reduce_state(ReductionKind::Fermi, &state("A", &[int(1)])),
        Err(Error::RegimeMismatch(_))
    ));
    let odd = MomentFunctional::from_fn(
        Arc::new(AlgebraSignature::new("G", true, [("a".to_string(), 1u8)]).unwrap()),
        2,
        |_| int(1),
    );
    assert!(matches!(reduce_state(ReductionKind::Fermi, &odd), Err(Error::NotEven(_))));
}

#[test]
fn idempotent_slots_collapse() {
    let a = Monomial::letter(0);
    let s = IdempotentSlot::p()
        .times(&IdempotentSlot::p())
        .times(&IdempotentSlot::letters(a.clone()))
        .times(&IdempotentSlot::letters(a.clone()))
        .times(&IdempotentSlot::unit());
    assert_eq!(
        s.pieces(),
        &[Piece::P, Piece::Letters(Monomial::from_indices(vec![0, 0]))]
    );
}

fn two_factor_space(unital: bool) -> FreeProduct {
    let s = |n: &str| Arc::new(AlgebraSignature::ungraded(n, unital, &["a"]).unwrap());
    FreeProduct::new(vec![s("A1"), s("A2")]).unwrap()
}

#[test]
fn idempotent_letter_images() {
    let space = two_factor_space(false);
    let a = Monomial::letter(0);
    let img = |kind, f| match embed_word(kind, &space, &word(&[(f, vec![0])])).unwrap() {
        EmbeddedWord::Idempotent(t) => t.slots,
        _ => unreachable!(),
    };
    let letter = IdempotentSlot::letters(a);
    assert_eq!(img(ReductionKind::Boolean, 0), vec![letter.clone(), IdempotentSlot::p()]);
    assert_eq!(img(ReductionKind::Boolean, 1), vec![IdempotentSlot::p(), letter.clone()]);
    assert_eq!(img(ReductionKind::Monotone, 0), vec![letter.clone(), IdempotentSlot::p()]);
    assert_eq!(img(ReductionKind::Monotone, 1), vec![IdempotentSlot::unit(), letter.clone()]);
    assert_eq!(img(ReductionKind::AntiMonotone, 0), vec![letter.clone(), IdempotentSlot::unit()]);
    assert_eq!(img(ReductionKind::AntiMonotone, 1), vec![IdempotentSlot::p(), letter]);
}

fn graded_space() -> FreeProduct {
    let s = |n: &str| {
        Arc::new(
            AlgebraSignature::new(n, true, [("a".to_string(), 1u8), ("c".to_string(), 0u8)]).unwrap(),
        )
    };
    FreeProduct::new(vec![s("A1"), s("A2")]).unwrap()
}

#[test]
fn fermi_letter_images() {
    let space = graded_space();
    let img = |f, l: usize| match embed_word(ReductionKind::Fermi, &space, &word(&[(f, vec![l])])).unwrap() {
        EmbeddedWord::Fermi(t) => t,
        _ => unreachable!(),
    };
    // odd letter of the second factor: g̃ ⊗ b̃
    let odd = img(1, 0);
    assert!(!odd.negative);
    assert_eq!(odd.slots, vec![GradedSlot::g(), GradedSlot::letter(Monomial::letter(0))]);
    // even letters carry no twist
    let even = img(1, 1);
    assert_eq!(even.slots, vec![GradedSlot::unit(), GradedSlot::letter(Monomial::letter(1))]);
    let first = img(0, 0);
    assert_eq!(first.slots, vec![GradedSlot::letter(Monomial::letter(0)), GradedSlot::unit()]);
}

#[test]
fn monotone_aba_both_routes() {
    let phis = [state("A1", &[int(0), int(1)]), state("A2", &[ratio(1, 3)])];
    let v = verify_reduction(ReductionKind::Monotone, &phis, &aba()).unwrap();
    assert_eq!(v.lhs, ratio(1, 3));
    assert_eq!(v.rhs, ratio(1, 3));
    assert!(v.equal);
    let space = two_factor_space(false);
    let EmbeddedWord::Idempotent(t) = embed_word(ReductionKind::Monotone, &space, &aba()).unwrap() else {
        unreachable!()
    };
    // (a⊗p)(1⊗b)(a⊗p) = a²⊗pbp
    assert_eq!(t.slots[0], IdempotentSlot::letters(Monomial::from_indices(vec![0, 0])));
    assert_eq!(
        t.slots[1],
        slot(vec![Piece::P, Piece::Letters(Monomial::letter(0)), Piece::P])
    );
}

#[test]
fn boolean_aba_both_routes() {
    let phis = [state("A1", &[ratio(1, 2), int(1)]), state("A2", &[ratio(1, 3)])];
    let v = verify_reduction(ReductionKind::Boolean, &phis, &aba()).unwrap();
    assert_eq!((v.lhs.clone(), v.rhs.clone()), (ratio(1, 12), ratio(1, 12)));
    assert!(v.equal);
}

#[test]
fn fermi_signed_fixture() {
    let phis = [
        graded_state("A1", 4, |m| if m.letters() == [0, 0] { int(1) } else { int(0) }),
        graded_state("A2", 4, |m| if m.letters() == [0, 0] { int(1) } else { int(0) }),
    ];
    let abab = word(&[(0, vec![0]), (1, vec![0]), (0, vec![0]), (1, vec![0])]);
    let v = verify_reduction(ReductionKind::Fermi, &phis, &abab).unwrap();
    assert_eq!(v.lhs, int(-1));
    assert_eq!(v.rhs, int(-1));
    let EmbeddedWord::Fermi(t) = embed_word(ReductionKind::Fermi, &graded_space(), &abab).unwrap() else {
        unreachable!()
    };
    assert!(t.negative);
    let aa = Monomial::from_indices(vec![0, 0]);
    assert_eq!(t.slots, vec![GradedSlot::letter(aa.clone()), GradedSlot::letter(aa)]);
}

#[test]
fn fermi_even_letter_commutes() {
    // a c a' with c even: no sign, unlike an odd middle letter
    let phis = [
        graded_state("A1", 4, |m| if m.len() == 2 { ratio(2, 3) } else { int(1) }),
        graded_state("A2", 4, |_| ratio(-1, 5)),
    ];
    let aca = word(&[(0, vec![0]), (1, vec![1]), (0, vec![0])]);
    let v = verify_reduction(ReductionKind::Fermi, &phis, &aca).unwrap();
    assert_eq!(v.lhs, ratio(2, 3) * ratio(-1, 5));
    assert!(v.equal);
}

#[test]
fn bosonization_splitting_agrees_with_inclusion() {
    // F_2(a ⊗ b ⊗ 1) must be the image of a·b under J_2
    let space = graded_space();
    let sig = space.factors()[1].clone();
    let monomials = space.factors()[0].monomials(0, 2);
    for a in &monomials {
        for b in &monomials {
            let w = Word::merged([Block::new(0, a.clone()), Block::new(1, b.clone())]);
            let EmbeddedWord::Fermi(t) = embed_word(ReductionKind::Fermi, &space, &w).unwrap() else {
                unreachable!()
            };
            let (left, right) = split_pair(a, b, &sig, false);
            assert!(!t.negative);
            assert_eq!(t.slots, vec![left.clone(), right.clone()]);

            // F_2 is multiplicative: a⊗b⊗g = (a⊗b⊗1)(1⊗1⊗g)
            let (gl, gr) = split_pair(&Monomial::unit(), &Monomial::unit(), &sig, true);
            let (l2, s1) = left.times(&gl, &space.factors()[0]);
            let (r2, s2) = right.times(&gr, &sig);
            assert!(!s1 && !s2);
            assert_eq!((l2, r2), split_pair(a, b, &sig, true));
        }
    }
}

#[test]
fn embedding_is_multiplicative() {
    let space = graded_space();
    let w1 = word(&[(0, vec![0, 1]), (1, vec![0])]);
    let w2 = word(&[(1, vec![1]), (0, vec![0])]);
    let EmbeddedWord::Fermi(whole) = embed_word(ReductionKind::Fermi, &space, &w1.concat(&w2)).unwrap() else {
        unreachable!()
    };
    let EmbeddedWord::Fermi(t1) = embed_word(ReductionKind::Fermi, &space, &w1).unwrap() else {
        unreachable!()
    };
    let EmbeddedWord::Fermi(t2) = embed_word(ReductionKind::Fermi, &space, &w2).unwrap() else {
        unreachable!()
    };
    assert_eq!(whole, t1.times(&t2, space.factors()));

    let space = two_factor_space(false);
    for kind in [ReductionKind::Boolean, ReductionKind::Monotone, ReductionKind::AntiMonotone] {
        let w1 = word(&[(0, vec![0]), (1, vec![0, 0])]);
        let w2 = word(&[(1, vec![0]), (0, vec![0])]);
        let e = |w: &Word| match embed_word(kind, &space, w).unwrap() {
            EmbeddedWord::Idempotent(t) => t,
            _ => unreachable!(),
        };
        assert_eq!(e(&w1.concat(&w2)), e(&w1).times(&e(&w2)));
    }
}

#[test]
fn factor_out_of_range() {
    let space = two_factor_space(false);
    let bad = word(&[(2, vec![0])]);
    assert!(matches!(
        embed_word(ReductionKind::Boolean, &space, &bad),
        Err(Error::FactorOutOfRange { .. })
    ));
}
