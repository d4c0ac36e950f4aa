use std::time::Instant;

use grext::constructions::{expected_freeprod_ext, free_product, freeprod_hilbert_check};
use grext::field::{Field, PrimeField, Rationals};
use grext::format::{parse_presentation, PresentationFile};
use grext::groebner::Presentation;
use grext::quotient::build_quotient;
use grext::resolution::{algebra_betti, inverse_series};
use grext::yoneda::cobar::ext_dims_cobar;
use grext::yoneda::verdict::check_2d_determined;

const FIXTURES: [&str; 12] = [
    "eight_gen",
    "thirteen_gen",
    "commutative_cubic",
    "mixed_a",
    "mixed_b",
    "mixed_r",
    "free2",
    "monomial_pair",
    "polynomial2",
    "squares2",
    "xyx",
    "z4",
];

fn text(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}.pres", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn prime(name: &str) -> PresentationFile<PrimeField> {
    parse_presentation(&text(name)).unwrap().into_prime().unwrap()
}

fn rational(name: &str) -> PresentationFile<Rationals> {
    parse_presentation(&text(name)).unwrap().into_rational().unwrap()
}

fn euler_matches<F: Field>(p: &Presentation<F>) {
    let t = algebra_betti(p, 12, 12).unwrap();
    let q = build_quotient(p, 12).unwrap();
    let inv = inverse_series(&q.hilbert_to(12), 12);
    for j in 0..=12 {
        assert_eq!(t.euler(j), inv[j], "degree {j}");
    }
}

#[test]
fn euler_characteristic_matches_hilbert_series() {
    for name in FIXTURES {
        euler_matches(&prime(name).presentation);
    }
}

#[test]
fn cobar_agrees_with_resolution_on_small_fixtures() {
    for name in FIXTURES {
        let p = prime(name).presentation;
        if p.alphabet.len() > 4 {
            continue;
        }
        let start = Instant::now();
        let q = build_quotient(&p, 10).unwrap();
        let cobar = ext_dims_cobar(&q, 5, 10).unwrap();
        let morse = algebra_betti(&p, 5, 10).unwrap();
        assert_eq!(cobar.first_difference(&morse), None, "{name}");
        eprintln!("{name}: {:?}", start.elapsed());
    }
}

#[test]
fn tables_do_not_depend_on_the_field() {
    for name in FIXTURES {
        let a = algebra_betti(&prime(name).presentation, 6, 12).unwrap();
        let b = algebra_betti(&rational(name).presentation, 6, 12).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn eight_gen_free_product() {
    let a = prime("eight_gen").presentation;
    let b = prime("z4").presentation;
    let c = free_product(&a, &b).combined;
    assert_eq!(c.alphabet.len(), 9);
    assert_eq!(c.relation_degrees(), vec![2, 4]);
    assert!(freeprod_hilbert_check(&a, &b, 10).unwrap().holds());
    let tc = algebra_betti(&c, 6, 12).unwrap();
    let predicted = expected_freeprod_ext(&algebra_betti(&a, 6, 12).unwrap(), &algebra_betti(&b, 6, 12).unwrap());
    assert_eq!(tc.first_difference(&predicted), None);
    assert!(check_2d_determined(&tc, &c.relation_degrees(), 4).holds());
}
