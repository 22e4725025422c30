use num_bigint::BigInt;
use num_rational::BigRational;

use permpath::bell::{cie_decode, cie_encode, SetPartition};
use permpath::invert::{invert_jfraction, regenerate, RecoveryStatus};
use permpath::series::{closed_form, rat, RatSeries};
use permpath::{jfraction, kfraction, scheme_for, Marks, Permutation, SubsetId};

fn ints(s: &RatSeries) -> Vec<BigRational> {
    s.coeffs().to_vec()
}

#[test]
fn series_identities() {
    let n = 8;
    let z = RatSeries::monomial(rat(1), 1, n);
    let geometric = RatSeries::one(n).sub(&z).unwrap().reciprocal().unwrap();
    assert!(geometric.coeffs().iter().all(|c| *c == rat(1)));
    let root = RatSeries::new(vec![rat(1), rat(-6), rat(5)], n).sqrt().unwrap();
    assert_eq!(&root.coeffs()[..4], &[rat(1), rat(-3), rat(-2), rat(-6)]);
    let e = z.exp().unwrap();
    let e_neg = z.scale(&rat(-1)).exp().unwrap();
    assert_eq!(e.mul(&e_neg).unwrap(), RatSeries::one(n));
    let inv = closed_form("involutions", 5).unwrap();
    assert_eq!(ints(&inv), [1, 1, 2, 4, 10, 26].map(rat));
}

#[test]
fn fraction_kinds_are_checked() {
    let all = scheme_for(SubsetId::All, Marks::NONE).unwrap();
    let cyc = scheme_for(SubsetId::Cyclic, Marks::NONE).unwrap();
    assert!(kfraction(&all, 4).is_err());
    assert!(jfraction(&cyc, 4).is_err());
    let c = kfraction(&cyc, 6).unwrap();
    let counts: Vec<BigInt> = c.coeffs().iter().map(|p| p.constant_term()).collect();
    assert_eq!(counts, [0, 1, 1, 2, 6, 24, 120].map(BigInt::from));
}

#[test]
fn recovery_round_trip() {
    let terms: Vec<BigRational> = [1, 1, 2, 6, 24, 120, 720, 5040].map(rat).to_vec();
    let r = invert_jfraction(&terms).unwrap();
    assert_eq!(r.status, RecoveryStatus::Complete);
    assert_eq!(regenerate(&r, 7).unwrap().coeffs(), &terms[..]);
}

#[test]
fn cie_codec_round_trip() {
    let p: Permutation = "2 6 8 3 9 11 4 5 1 7 10".parse().unwrap();
    let m = cie_encode(&p).unwrap();
    assert_eq!(cie_decode(&m).unwrap(), p);
    assert_eq!(SetPartition::all(4).len(), 15);
}
