use overq_core::enumeration::{over_qbinom_box_oracle, partitions};
use overq_core::qfunctions::{over_qbinom_rec, over_qbinom_sum, qbinom, OverQBinomTable};
use overq_core::{BigInt, QSeries};

fn ints(s: &QSeries) -> Vec<BigInt> {
    (0..s.prec()).map(|e| s.int_coeff(e).unwrap()).collect()
}

#[test]
fn over_qbinomials_three_ways() {
    let mut table = OverQBinomTable::new();
    for m in 0..=9u32 {
        for n in 0..=9u32 {
            let sum = ints(&over_qbinom_sum(m, n));
            assert_eq!(sum, ints(&over_qbinom_rec(m, n)), "rec ({m},{n})");
            assert_eq!(sum, table.coefficients(m, n), "table ({m},{n})");
            assert_eq!(sum, ints(&over_qbinom_box_oracle(m, n)), "box ({m},{n})");
            assert_eq!(sum, ints(&over_qbinom_sum(n, m)), "symmetry ({m},{n})");
        }
    }
}

#[test]
fn over_qbinomial_at_one_counts_weighted_box_partitions() {
    // evaluation at q = 1
    for (m, n) in [(3, 4), (5, 2), (6, 6)] {
        let total: BigInt = ints(&over_qbinom_sum(m, n)).into_iter().sum();
        let boxed: BigInt = ints(&over_qbinom_box_oracle(m, n)).into_iter().sum();
        assert_eq!(total, boxed);
    }
}

#[test]
fn gaussian_polynomials_count_partitions_in_a_box() {
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let g = qbinom(m, n);
            for size in 0..=m * n {
                let count = if size == 0 {
                    1
                } else {
                    partitions(size)
                        .iter()
                        .filter(|p| {
                            p.parts().len() <= n as usize && p.largest().is_some_and(|l| l <= m)
                        })
                        .count()
                };
                assert_eq!(
                    g.int_coeff(size.into()).unwrap(),
                    BigInt::from(count),
                    "({m},{n}) q^{size}"
                );
            }
        }
    }
}
