//! Property tests for the algebraic laws the library is built on.

use proptest::prelude::*;

use dialg::catalog::Rep;
use dialg::doc::{parse_algebra, render_doc};
use dialg::field::{Elem, FieldCtx};
use dialg::msc::{aut_check, kron2, transform, Gl2, Mat2, Msc, Vec2};
use dialg::search::orbit_key;

fn field_specs() -> Vec<&'static str> {
    vec!["GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(8)", "GF(9)", "Q"]
}

fn elem(ctx: &FieldCtx, seed: i64) -> Elem {
    match ctx.order() {
        Some(q) => Elem::Fin((seed.rem_euclid(q as i64)) as u32),
        None => {
            // small rationals, denominators never zero
            let num = seed % 17;
            let den = (seed / 17).rem_euclid(9) + 1;
            ctx.parse_literal(&format!("{num}/{den}")).unwrap()
        }
    }
}

proptest! {
    #[test]
    fn field_axioms(spec_idx in 0usize..8, seeds in prop::array::uniform3(-2000i64..2000)) {
        let ctx = FieldCtx::parse(field_specs()[spec_idx]).unwrap();
        let a = elem(&ctx, seeds[0]);
        let b = elem(&ctx, seeds[1]);
        let c = elem(&ctx, seeds[2]);
        // associativity and commutativity
        prop_assert_eq!(
            ctx.add(&ctx.add(&a, &b).unwrap(), &c).unwrap(),
            ctx.add(&a, &ctx.add(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            ctx.mul(&ctx.mul(&a, &b).unwrap(), &c).unwrap(),
            ctx.mul(&a, &ctx.mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(ctx.mul(&a, &b).unwrap(), ctx.mul(&b, &a).unwrap());
        // distributivity
        prop_assert_eq!(
            ctx.mul(&a, &ctx.add(&b, &c).unwrap()).unwrap(),
            ctx.add(&ctx.mul(&a, &b).unwrap(), &ctx.mul(&a, &c).unwrap()).unwrap()
        );
        // inverses
        prop_assert!(ctx.add(&a, &ctx.neg(&a).unwrap()).unwrap().is_zero());
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()).unwrap(), ctx.one());
        }
    }

    #[test]
    fn square_class_rep_is_class_invariant(spec_idx in 0usize..8, x in -2000i64..2000, a in -2000i64..2000) {
        let ctx = FieldCtx::parse(field_specs()[spec_idx]).unwrap();
        let x = elem(&ctx, x);
        let a = elem(&ctx, a);
        let rep = ctx.square_class_rep(&x).unwrap();
        prop_assert_eq!(ctx.square_class_rep(&rep).unwrap(), rep.clone());
        if !a.is_zero() {
            let scaled = ctx.mul(&ctx.mul(&a, &a).unwrap(), &x).unwrap();
            prop_assert_eq!(ctx.square_class_rep(&scaled).unwrap(), rep);
        }
    }

    #[test]
    fn mul_vec_is_bilinear(
        msc in prop::array::uniform8(-30i64..30),
        xs in prop::array::uniform4(-30i64..30),
        scalars in prop::array::uniform2(-30i64..30),
        spec_idx in 0usize..8,
    ) {
        let ctx = FieldCtx::parse(field_specs()[spec_idx]).unwrap();
        let a = Msc::from_ints(&ctx, msc);
        let x = Vec2::new(&ctx, [ctx.from_int(xs[0]), ctx.from_int(xs[1])]);
        let xp = Vec2::new(&ctx, [ctx.from_int(xs[2]), ctx.from_int(xs[3])]);
        let y = Vec2::new(&ctx, [ctx.from_int(scalars[0]), ctx.from_int(scalars[1])]);
        let (s, t) = (ctx.from_int(scalars[0]), ctx.from_int(scalars[1]));
        let combo = x.scale(&s).unwrap().add(&xp.scale(&t).unwrap()).unwrap();
        let lhs = a.mul_vec(&combo, &y).unwrap();
        let rhs = a
            .mul_vec(&x, &y).unwrap().scale(&s).unwrap()
            .add(&a.mul_vec(&xp, &y).unwrap().scale(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // and in the second argument
        let lhs = a.mul_vec(&y, &combo).unwrap();
        let rhs = a
            .mul_vec(&y, &x).unwrap().scale(&s).unwrap()
            .add(&a.mul_vec(&y, &xp).unwrap().scale(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_respects_matrix_kron(g4 in prop::array::uniform4(0i64..5), xs in prop::array::uniform4(0i64..5)) {
        // (g (x) g)(x (x) y) == (gx) (x) (gy): pins the Kronecker convention
        let ctx = FieldCtx::parse("GF(5)").unwrap();
        let m = Mat2::from_ints(&ctx, g4);
        let x = Vec2::new(&ctx, [ctx.from_int(xs[0]), ctx.from_int(xs[1])]);
        let y = Vec2::new(&ctx, [ctx.from_int(xs[2]), ctx.from_int(xs[3])]);
        let kk = m.kron_self().unwrap();
        let kxy = kron2(&x, &y).unwrap();
        let mut lhs = Vec::new();
        for r in 0..4 {
            let mut acc = ctx.zero();
            for c in 0..4 {
                acc = ctx.add(&acc, &ctx.mul(&kk[r * 4 + c], &kxy.entries()[c]).unwrap()).unwrap();
            }
            lhs.push(acc);
        }
        let rhs = kron2(&m.apply(&x).unwrap(), &m.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs.as_slice(), &rhs.entries()[..]);
    }

    #[test]
    fn action_law_and_assoc_invariance(
        msc in prop::array::uniform8(0i64..7),
        g4 in prop::array::uniform4(0i64..7),
        h4 in prop::array::uniform4(0i64..7),
    ) {
        let ctx = FieldCtx::parse("GF(7)").unwrap();
        let a = Msc::from_ints(&ctx, msc);
        let gm = Mat2::from_ints(&ctx, g4);
        let hm = Mat2::from_ints(&ctx, h4);
        prop_assume!(!gm.det().unwrap().is_zero() && !hm.det().unwrap().is_zero());
        let g = Gl2::new(gm).unwrap();
        let h = Gl2::new(hm).unwrap();
        let lhs = transform(&g, &transform(&h, &a).unwrap()).unwrap();
        let rhs = transform(&h.matmul(&g).unwrap(), &a).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            transform(&g, &a).unwrap().assoc_matrix_check(),
            a.assoc_matrix_check()
        );
        // aut_check(g, A) iff transform(g, A) == A
        prop_assert_eq!(
            aut_check(&g, &a).unwrap(),
            transform(&g, &a).unwrap() == a
        );
    }

    #[test]
    fn orbit_key_is_isomorphism_invariant(
        msc in prop::array::uniform8(0i64..3),
        g4 in prop::array::uniform4(0i64..3),
    ) {
        let ctx = FieldCtx::parse("GF(3)").unwrap();
        let a = Msc::from_ints(&ctx, msc);
        let gm = Mat2::from_ints(&ctx, g4);
        prop_assume!(!gm.det().unwrap().is_zero());
        let g = Gl2::new(gm).unwrap();
        let moved = transform(&g, &a).unwrap();
        prop_assert_eq!(
            orbit_key(&Rep::Alg(a)).unwrap(),
            orbit_key(&Rep::Alg(moved)).unwrap()
        );
    }

    #[test]
    fn doc_roundtrip(
        spec_idx in 0usize..8,
        entries in prop::array::uniform8(-40i64..40),
        dia in any::<bool>(),
        entries2 in prop::array::uniform8(-40i64..40),
    ) {
        let spec = field_specs()[spec_idx];
        let ctx = FieldCtx::parse(spec).unwrap();
        let content = if dia {
            Rep::Dia(dialg::DiMsc::from_ints(&ctx, entries, entries2))
        } else {
            Rep::Alg(Msc::from_ints(&ctx, entries))
        };
        let doc = dialg::doc::AlgebraDoc { ctx, content };
        let text = render_doc(&doc);
        let doc2 = parse_algebra(&text).unwrap();
        let text2 = render_doc(&doc2);
        prop_assert_eq!(text, text2);
        match (&doc.content, &doc2.content) {
            (Rep::Alg(a), Rep::Alg(b)) => prop_assert_eq!(a, b),
            (Rep::Dia(a), Rep::Dia(b)) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "kind changed"),
        }
    }
}
