//! Randomized invariants: the dyadic and interval layers against exact
//! rational models, the family constructions against their closed forms,
//! and the two geometry routes against each other.

use cubic_shapes::exactnum::{parse_decimal, Dyadic, DyadicInterval, RoundDir};
use cubic_shapes::orders::{
    family_polynomial, ft_polynomial, irreducibility_witness, schedule_a_with, unit_norm_check,
    CubicOrder, FamilyParams,
};
use cubic_shapes::regshape::{
    apply_exact, basis_to_tau, hyperbolic_distance, limit_basis, limit_shape, log_embedding,
    reduce_exact, reduce_in_domain, trace_sum, ExactPoint, LinearUnit, Mat2, PlaneBasis, Sqrt3,
    UpperHalfPoint,
};
use cubic_shapes::sweeps::SweepConfig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use std::cmp::Ordering;

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rand_rational(state: &mut u64, num_mod: u64, den_mod: u64) -> BigRational {
    let n = (splitmix(state) % (2 * num_mod)) as i64 - num_mod as i64;
    let d = 1 + (splitmix(state) % den_mod) as i64;
    rat(n, d)
}

fn contains(iv: &DyadicInterval, x: &BigRational) -> bool {
    iv.lo().cmp_rational(x) != Ordering::Greater && iv.hi().cmp_rational(x) != Ordering::Less
}

fn overlaps(a: &DyadicInterval, b: &DyadicInterval) -> bool {
    a.lo() <= b.hi() && b.lo() <= a.hi()
}

#[test]
fn dyadic_ring_ops_match_the_rational_model() {
    let mut state = 0xD1A_D1Cu64;
    for _ in 0..2000 {
        let x = rand_rational(&mut state, 1_000_000_000, 1_000_000);
        let y = rand_rational(&mut state, 1_000_000_000, 1_000_000);
        let a_lo = Dyadic::from_rational(&x, 128, RoundDir::Down);
        let a_hi = Dyadic::from_rational(&x, 128, RoundDir::Up);
        assert!(a_lo.cmp_rational(&x) != Ordering::Greater);
        assert!(a_hi.cmp_rational(&x) != Ordering::Less);
        let b = Dyadic::from_rational(&y, 128, RoundDir::Down);
        // Ring operations on dyadics are exact, no rounding at all.
        assert_eq!((&a_lo + &b).to_rational(), a_lo.to_rational() + b.to_rational());
        assert_eq!((&a_lo - &b).to_rational(), a_lo.to_rational() - b.to_rational());
        assert_eq!((&a_lo * &b).to_rational(), a_lo.to_rational() * b.to_rational());
    }
}

#[test]
fn directed_decimal_printing_brackets_the_value() {
    let mut state = 0xDEC_1A1u64;
    for _ in 0..500 {
        let x = rand_rational(&mut state, 1_000_000_000, 1_000_000);
        let d = Dyadic::from_rational(&x, 96, RoundDir::Down);
        if d.is_zero() {
            continue;
        }
        let v = d.to_rational();
        let lo = parse_decimal(&d.to_decimal(28, RoundDir::Down)).unwrap();
        let hi = parse_decimal(&d.to_decimal(28, RoundDir::Up)).unwrap();
        assert!(lo <= v && v <= hi);
        let gap = (&hi - &lo).to_f64().unwrap();
        let mag = v.abs().to_f64().unwrap().max(f64::MIN_POSITIVE);
        assert!(gap / mag < 1e-25, "gap {gap} too wide for magnitude {mag}");
    }
    // Values whose decimal expansion fits in the digit budget print
    // exactly: both directions agree and parsing recovers the value.
    for _ in 0..200 {
        let n = (splitmix(&mut state) % 2_000_000) as i64 - 1_000_000;
        let k = (splitmix(&mut state) % 17) as usize;
        let x = BigRational::new(BigInt::from(n), BigInt::one() << k);
        let d = Dyadic::from_rational(&x, 96, RoundDir::Down);
        let down = d.to_decimal(28, RoundDir::Down);
        assert_eq!(down, d.to_decimal(28, RoundDir::Up));
        assert_eq!(parse_decimal(&down).unwrap(), x);
    }
}

#[test]
fn interval_arithmetic_contains_the_rational_results() {
    let mut state = 0x1_2E4Au64;
    for _ in 0..3000 {
        let x = rand_rational(&mut state, 100_000, 1000);
        let y = rand_rational(&mut state, 100_000, 1000);
        let ix = DyadicInterval::enclose_rational(&x, 64);
        let iy = DyadicInterval::enclose_rational(&y, 64);
        assert!(contains(&ix.add(&iy), &(&x + &y)));
        assert!(contains(&ix.sub(&iy), &(&x - &y)));
        assert!(contains(&ix.mul(&iy), &(&x * &y)));
        if !iy.contains_zero() {
            let q = ix.div(&iy).unwrap();
            assert!(contains(&q, &(&x / &y)));
        }
    }
}

#[test]
fn log_enclosures_nest_as_precision_grows() {
    let mut state = 0x106_106u64;
    for _ in 0..300 {
        let num = 1 + (splitmix(&mut state) % 1_000_000) as i64;
        let den = 1 + (splitmix(&mut state) % 1000) as i64;
        let x = rat(num, den);
        let coarse = DyadicInterval::enclose_rational(&x, 64).ln().unwrap();
        let fine = DyadicInterval::enclose_rational(&x, 256).ln().unwrap();
        assert!(coarse.lo() <= fine.lo() && fine.hi() <= coarse.hi());
        assert!(fine.width() <= coarse.width());
        // ln(xy) and ln x + ln y enclose the same real.
        let y = rat(1 + (splitmix(&mut state) % 1000) as i64, 1 + (splitmix(&mut state) % 50) as i64);
        let product = DyadicInterval::enclose_rational(&(&x * &y), 64).ln().unwrap();
        let sum = coarse.add(&DyadicInterval::enclose_rational(&y, 64).ln().unwrap());
        assert!(overlaps(&product, &sum));
    }
}

#[test]
fn sqrt_enclosures_square_back() {
    let mut state = 0x5_04B7u64;
    for _ in 0..300 {
        let num = 1 + (splitmix(&mut state) % 1_000_000) as i64;
        let den = 1 + (splitmix(&mut state) % 1000) as i64;
        let x = rat(num, den);
        let s = DyadicInterval::enclose_rational(&x, 128).sqrt().unwrap();
        assert!(contains(&s.mul(&s), &x));
    }
    for n in 1..=60i64 {
        let sq = rat(n * n, 1);
        let s = DyadicInterval::enclose_rational(&sq, 128).sqrt().unwrap();
        assert!(contains(&s, &rat(n, 1)));
    }
}

#[test]
fn specialized_and_general_family_polynomials_agree() {
    let mut state = 0xFA_111u64;
    for _ in 0..1000 {
        let a = BigInt::from(2 + (splitmix(&mut state) % 29) as i64);
        let t = BigInt::from(1 + (splitmix(&mut state) % 1_000_000) as i64);
        let params = FamilyParams::new(a.clone(), BigInt::one(), t.clone()).unwrap();
        let general = family_polynomial(&params).unwrap();
        let special = ft_polynomial(&a, &t);
        assert_eq!(general, special);
        let w = irreducibility_witness(&special, &a, &t).unwrap();
        assert!(w.irreducible);
    }
}

#[test]
fn vieta_and_discriminant_hold_on_random_members() {
    let pairs = [(2i64, 7i64), (7, 9), (3, 1), (5, 1), (2, 1)];
    let mut state = 0x71E7Au64;
    let mut done = 0;
    while done < 100 {
        let (a, b) = pairs[(splitmix(&mut state) % pairs.len() as u64) as usize];
        let t = 1 + (splitmix(&mut state) % 5000) as i64;
        let params = FamilyParams::new(BigInt::from(a), BigInt::from(b), BigInt::from(t)).unwrap();
        let order = match CubicOrder::new(params) {
            Ok(o) => o,
            // Small-t members of the general pairs can fail to be totally
            // real; the sample stream just moves on.
            Err(_) => continue,
        };
        done += 1;
        let refined = order.with_refined_roots(96);
        let r = [
            refined.theta1().to_interval(160),
            refined.theta2().to_interval(160),
            refined.theta3().to_interval(160),
        ];
        let f = order.poly();
        let sum = r[0].add(&r[1]).add(&r[2]);
        assert!(contains(&sum, &-BigRational::from_integer(f.p.clone())));
        let pairwise = r[0].mul(&r[1]).add(&r[0].mul(&r[2])).add(&r[1].mul(&r[2]));
        assert!(contains(&pairwise, &BigRational::from_integer(f.q.clone())));
        let product = r[0].mul(&r[1]).mul(&r[2]);
        assert!(contains(&product, &-BigRational::from_integer(f.r.clone())));
        let vprod = r[0].sub(&r[1]).mul(&r[0].sub(&r[2])).mul(&r[1].sub(&r[2]));
        assert!(contains(
            &vprod.mul(&vprod),
            &BigRational::from_integer(order.disc().clone())
        ));
    }
}

#[test]
fn unit_norms_and_trace_zero_on_random_members() {
    let mut state = 0x7124CEu64;
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    for _ in 0..200 {
        let a = 2 + (splitmix(&mut state) % 11) as i64;
        let t = 1 + (splitmix(&mut state) % 100_000) as i64;
        let params = FamilyParams::new(BigInt::from(a), BigInt::one(), BigInt::from(t)).unwrap();
        let order = CubicOrder::new(params).unwrap().with_refined_roots(120);
        let (n1, n2) = unit_norm_check(&order).unwrap();
        assert_eq!(n1, minus_one);
        assert_eq!(n2, minus_one);
        for unit in [LinearUnit::theta(), LinearUnit::new(a, 1)] {
            let emb = log_embedding(&order, &unit, 96).unwrap();
            assert!(trace_sum(&emb).contains_zero());
        }
        // theta3 agrees with -1/(theta1 theta2), forced by the norm.
        let prod = order
            .theta1()
            .to_interval(120)
            .mul(&order.theta2().to_interval(120));
        let implied = DyadicInterval::from_int(-1, 120).div(&prod).unwrap();
        assert!(overlaps(&implied, &order.theta3().to_interval(120)));
    }
}

#[test]
fn schedule_produces_the_exact_ceiling() {
    let alphas = [rat(1, 5), rat(1, 6), rat(1, 8), rat(1, 10), rat(2, 9), rat(3, 13)];
    let cs = [rat(9, 10), rat(1, 2), rat(99, 100), rat(1, 1)];
    let mut state = 0x5C4EDu64;
    for _ in 0..500 {
        let alpha = &alphas[(splitmix(&mut state) % alphas.len() as u64) as usize];
        let c = &cs[(splitmix(&mut state) % cs.len() as u64) as usize];
        let t = BigInt::from(1 + (splitmix(&mut state) % 1_000_000_000_000) as i64);
        let sched = schedule_a_with(&t, alpha, c).unwrap();
        let p = alpha.numer().to_u32().unwrap();
        let q = alpha.denom().to_u32().unwrap();
        let rhs = c.numer().pow(q) * t.pow(p);
        let scale = c.denom().pow(q);
        // a_t is the least n with n^q c_den^q >= c_num^q t^p.
        let holds = |n: &BigInt| n.pow(q) * &scale >= rhs;
        assert!(holds(&sched.a_t), "a_t too small at alpha {alpha}, c {c}, t {t}");
        let prev = &sched.a_t - BigInt::one();
        if prev.is_positive() {
            assert!(!holds(&prev), "a_t not minimal at alpha {alpha}, c {c}, t {t}");
        }
        // The range flag is exactly a_t^q <= t^p.
        assert_eq!(sched.in_range, sched.a_t.pow(q) <= t.pow(p));
    }
}

#[test]
fn limit_pipeline_interval_route_matches_exact() {
    for alpha in &SweepConfig::default().alphas {
        let exact = limit_shape(alpha).unwrap();
        let [w1, w2] = limit_basis(alpha).unwrap();
        let basis = PlaneBasis {
            v: (w1.0.to_interval(192), w1.1.to_interval(192)),
            w: (w2.0.to_interval(192), w2.1.to_interval(192)),
        };
        let (tau, swapped) = basis_to_tau(&basis).unwrap();
        assert!(!swapped);
        assert!(overlaps(tau.x(), &exact.tau.x.to_interval(192)));
        assert!(overlaps(tau.y(), &exact.tau.y.to_interval(192)));
        let reduced = reduce_in_domain(&tau, 256).unwrap();
        assert_eq!(reduced.g, exact.g, "reduction words differ at alpha {alpha}");
        assert!(overlaps(reduced.tau.x(), &exact.reduced.x.to_interval(192)));
        assert!(overlaps(reduced.tau.y(), &exact.reduced.y.to_interval(192)));
    }
}

#[test]
fn hyperbolic_distance_behaves_like_a_metric() {
    let mut state = 0xD157u64;
    let point = |state: &mut u64| {
        let x = rand_rational(state, 3000, 1000);
        let y = rat(1 + (splitmix(state) % 4000) as i64, 1000);
        UpperHalfPoint::new(
            DyadicInterval::enclose_rational(&x, 96),
            DyadicInterval::enclose_rational(&y, 96),
        )
        .unwrap()
    };
    for _ in 0..200 {
        let p = point(&mut state);
        let q = point(&mut state);
        let r = point(&mut state);
        assert!(hyperbolic_distance(&p, &p).unwrap().contains_zero());
        let pq = hyperbolic_distance(&p, &q).unwrap();
        let qp = hyperbolic_distance(&q, &p).unwrap();
        assert!(overlaps(&pq, &qp));
        let pr = hyperbolic_distance(&p, &r).unwrap();
        let qr = hyperbolic_distance(&q, &r).unwrap();
        let detour = pq.add(&qr);
        assert!(pr.lo() <= detour.hi());
        // Invariance under the modular generators.
        for g in [Mat2::s(), Mat2::t_pow(&BigInt::from(2))] {
            let gp = g.apply_interval(&p).unwrap();
            let gq = g.apply_interval(&q).unwrap();
            let moved = hyperbolic_distance(&gp, &gq).unwrap();
            assert!(overlaps(&moved, &pq));
        }
    }
}

#[test]
fn exact_reduction_is_idempotent() {
    let mut state = 0x1DE_4007u64;
    for _ in 0..300 {
        let x = rand_rational(&mut state, 2000, 16);
        let y = rat(1 + (splitmix(&mut state) % 2000) as i64, 1 + (splitmix(&mut state) % 16) as i64);
        let p = ExactPoint::new(Sqrt3::from_rational(x), Sqrt3::from_rational(y)).unwrap();
        let (red, g) = reduce_exact(&p).unwrap();
        assert_eq!(apply_exact(&g, &p).unwrap(), red);
        let (red2, g2) = reduce_exact(&red).unwrap();
        assert_eq!(red2, red);
        assert_eq!(g2, Mat2::identity());
    }
}
