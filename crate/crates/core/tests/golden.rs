use relcan_core::curvegen::{construct_with_retries, CurveSpec, DEFAULT_ATTEMPTS};
use relcan_core::groebner::HilbertData;
use relcan_core::relres::{
    check_composition_zero, check_duality, check_minimal, render_betti, resolve_on_scroll, validate_splitting,
    ResolveOptions,
};
use relcan_core::scroll::{build_embedding, curve_on_scroll, verify_preimage};

fn counts(twists: &[i64]) -> Vec<(i64, usize)> {
    let mut out: Vec<(i64, usize)> = Vec::new();
    for &a in twists {
        match out.iter_mut().find(|(b, _)| *b == a) {
            Some((_, n)) => *n += 1,
            None => out.push((a, 1)),
        }
    }
    out.sort();
    out
}

#[test]
fn genus_nine_gonality_six() {
    let spec = CurveSpec::new(9, 6, 10007, 2024).unwrap();
    let (model, _) = construct_with_retries(&spec, DEFAULT_ATTEMPTS).unwrap();
    assert_eq!(
        model.hilbert(),
        HilbertData { projective_dimension: 1, degree: 16, arithmetic_genus: 9 }
    );
    assert_eq!(model.canonical.quadrics.len(), 21);

    let emb = build_embedding(&model).unwrap();
    assert_eq!(emb.scroll_matrix, [vec![0, 2, 4, 6], vec![1, 3, 5, 7]]);
    assert!(emb.verify_factorization(&model).unwrap());
    assert!(emb.verify_scroll_kernel().unwrap());

    let cos = curve_on_scroll(&model, &emb).unwrap();
    assert_eq!(counts(&cos.twists), vec![(0, 3), (1, 6)]);
    let j = cos.ideal(&emb).unwrap();
    assert!(verify_preimage(&model, &emb, &j).unwrap());

    let res = resolve_on_scroll(&emb, &cos, ResolveOptions::default()).unwrap();
    assert_eq!(res.ranks(), vec![1, 9, 16, 9, 1]);
    assert_eq!(counts(&res.steps[1].twists), vec![(0, 2), (1, 12), (2, 2)]);
    assert!(!res.steps[1].is_balanced());
    assert_eq!(counts(&res.steps[2].twists), vec![(1, 6), (2, 3)]);
    assert_eq!(res.steps[3].twists, vec![2]);
    validate_splitting(&res).unwrap();
    assert!(check_duality(&res));
    assert!(check_minimal(&res));
    assert!(check_composition_zero(&res, &emb).unwrap());
    let table = render_betti(&res);
    assert_eq!(table.totals(), vec![1, 9, 16, 9, 1]);
    assert_eq!(table.get(1, 2), 6);
    assert_eq!(table.get(1, 3), 3);
    println!("{}", table.render());
}
