use gstar::catalog::{self, CatalogParams, GrassmannInvolution};
use gstar::freepoly::{is_identity, parse_generators, parse_polynomial, ElementNames, MultiDegree};
use gstar::group::FiniteAbelianGroup;
use gstar::invariants::{verify_generating_set, Limits};

fn data(file: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Over C4 the element g2 squares to 1, which lies in the support, so the
/// product of two g2-variables is not killed by the x_{1,r} generators.
#[test]
fn grassmann_gg_sets_miss_the_g2_square_over_c4() {
    let c4 = FiniteAbelianGroup::cyclic(4);
    let g = c4.element(&[1]).unwrap();
    let g2 = c4.element(&[2]).unwrap();
    for (inv, file, sign) in [
        (GrassmannInvolution::Tau, "grassmann_gg_tau.gens", gstar::algebra::Sign::Minus),
        (GrassmannInvolution::Psi, "grassmann_gg_psi.gens", gstar::algebra::Sign::Minus),
        (GrassmannInvolution::Gamma, "grassmann_gg_gamma.gens", gstar::algebra::Sign::Plus),
    ] {
        let a = catalog::grassmann2(&c4, &g, &g, inv).unwrap();
        let (names, gens) = parse_generators(&data(file), &c4, &ElementNames::default()).unwrap();
        let report = verify_generating_set(&a, &gens, 2, &Limits::default()).unwrap();
        let frame = MultiDegree::from_blocks(&c4, &[(g2.clone(), sign, 2)]).unwrap();
        let missing: Vec<_> = report.degrees.iter().flat_map(|d| &d.incomplete).collect();
        assert_eq!(missing.len(), 1, "{file}");
        assert_eq!(missing[0].multidegree, frame);
        assert_eq!((missing[0].kernel_dim, missing[0].consequence_rank), (2, 1));
        let s = if sign == gstar::algebra::Sign::Plus { '+' } else { '-' };
        let square = parse_polynomial(&format!("x1^{s}_g2*x2^{s}_g2"), &c4, &names).unwrap();
        assert!(is_identity(&square, &a, 6).unwrap());
        let mut fixed = gens.clone();
        fixed.push(square);
        assert!(verify_generating_set(&a, &fixed, 4, &Limits::default()).unwrap().is_complete(), "{file}");
    }
}

#[test]
fn grassmann3_tau_has_five_skew_constituents() {
    let t = FiniteAbelianGroup::trivial();
    let a = catalog::build("G3tau", &CatalogParams::new(t.clone())).unwrap();
    let names = ElementNames::default();
    let nonzero = |text: &str| !is_identity(&parse_polynomial(text, &t, &names).unwrap(), &a, 6).unwrap();
    // e1e2 and e3 anticommute to 2 e1e2e3
    assert!(nonzero("x1^-_1*x2^-_1 + x2^-_1*x1^-_1"));
    assert!(nonzero("x1^-_1*x2^-_1 - x2^-_1*x1^-_1"));
    assert!(nonzero(
        "x1^-_1*x2^-_1*x3^-_1 - x1^-_1*x3^-_1*x2^-_1 - x2^-_1*x1^-_1*x3^-_1 \
         + x2^-_1*x3^-_1*x1^-_1 + x3^-_1*x1^-_1*x2^-_1 - x3^-_1*x2^-_1*x1^-_1"
    ));
    assert!(nonzero("x1^+_1*x2^-_1"));
}
