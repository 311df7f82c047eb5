
mod common;

use qpascal_core::covariants::left_coefficients;
use qpascal_core::text::{parse_expression, ParseError};
use qpascal_core::*;

use common::{as_words, rewrite_oracle};

#[test]
fn confluence_length_three_on_three_indices() {
    let alg = Algebra::new(3);
    let gens: Vec<Generator> = (1..=3).flat_map(|i| [Generator::x(i), Generator::y(i)]).collect();
    let mut checked = 0;
    for a in &gens {
        for b in &gens {
            for c in &gens {
                let w = vec![*a, *b, *c];
                let left = rewrite_oracle(w.clone(), true);
                let right = rewrite_oracle(w.clone(), false);
                assert_eq!(left, right, "rewrite order matters for {w:?}");
                let nf = alg.normal_form(&w, Scalar::one()).unwrap();
                assert_eq!(as_words(&alg, &nf), left, "normal form differs for {w:?}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 216);
}

#[test]
fn bracket_commutation_relations() {
    let alg = Algebra::new(6);
    let b = |i, j| bracket(&alg, i, j).unwrap();
    let q = Scalar::q_pow;
    for i in 1..=6 {
        for j in i + 1..=6 {
            assert_eq!(alg.star(&b(i, j)), b(i, j));
            assert_eq!(b(j, i), b(i, j).neg());
            for k in j + 1..=6 {
                assert_eq!(alg.multiply(&b(j, k), &b(i, j)), alg.multiply(&b(i, j), &b(j, k)).scale(&q(4)));
                assert_eq!(alg.multiply(&b(i, k), &b(i, j)), alg.multiply(&b(i, j), &b(i, k)).scale(&q(2)));
                assert_eq!(alg.multiply(&b(j, k), &b(i, k)), alg.multiply(&b(i, k), &b(j, k)).scale(&q(2)));
            }
        }
        assert!(b(i, i).is_zero());
    }
}

#[test]
fn form_coefficient_conventions() {
    let alg = Algebra::new(6);
    let q = Scalar::q_pow;
    for (i, j) in [(1, 2), (3, 4), (1, 6), (2, 5)] {
        let f = make_f(&alg, i, j).unwrap();
        let direct = alg
            .multiply(&bracket(&alg, 0, i).unwrap(), &bracket(&alg, 0, j).unwrap())
            .scale(&q(1));
        assert_eq!(f.realize(&alg), direct);
        let left = left_coefficients(&alg, &f).unwrap();
        assert_eq!(f.b, left.b.scale(&q(2)));
        assert_eq!(f.c, left.c.scale(&q(4)));
    }
    let f = make_f(&alg, 1, 2).unwrap();
    let g = make_f(&alg, 4, 5).unwrap();
    let j = jacobian(&alg, &f, &g);
    let left = left_coefficients(&alg, &j).unwrap();
    assert_eq!(j.a, left.a.scale(&q(6)));
    assert_eq!(j.b, left.b.scale(&q(8)));
    assert_eq!(j.c, left.c.scale(&q(10)));
}

#[test]
fn parse_examples() {
    let alg = Algebra::new(2);
    let b = parse_expression(&alg, "q^(-1/2)*x_1*y_2 - q^(1/2)*y_1*x_2").unwrap();
    assert_eq!(b, bracket(&alg, 1, 2).unwrap());
    assert_eq!(parse_expression(&alg, "(1 2)").unwrap(), b);
    let p = parse_expression(&alg, "x_2*x_1").unwrap();
    assert_eq!(p, alg.multiply(&alg.x(1), &alg.x(2)).scale(&Scalar::q_pow(2)));
    assert!(matches!(parse_expression(&alg, "x_1 +"), Err(ParseError::Syntax { offset: 5, .. })));
    assert!(matches!(parse_expression(&alg, "x_9"), Err(ParseError::UnknownIndex { .. })));
}
