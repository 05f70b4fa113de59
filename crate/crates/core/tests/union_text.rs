use floorgap::am::{am_sets, gaps, union};
use floorgap::AlgNum;

const UNION_TO_50: &str = "\
[(0+1*sqrt(2))/10, 1/7)  ≈ [0.14142, 0.14286)
[(0+1*sqrt(3))/12, 7/48)  ≈ [0.14434, 0.14583)
[(0+1*sqrt(47))/47, 1/6)  ≈ [0.14586, 0.16667)
[(0+1*sqrt(35))/35, 6/35)  ≈ [0.16903, 0.17143)
[(0+1*sqrt(34))/34, 1/5)  ≈ [0.1715, 0.2)
[(0+1*sqrt(2))/7, 10/49)  ≈ [0.20203, 0.20408)
[(0+1*sqrt(6))/12, 1/4)  ≈ [0.20412, 0.25)
[(0+1*sqrt(141))/47, 1/3)  ≈ [0.25265, 0.33333)
[(0+1*sqrt(55))/22, 1/2)  ≈ [0.3371, 0.5)
[(0+2*sqrt(141))/47, 1/1)  ≈ [0.50529, 1)";

#[test]
fn union_to_50_text() {
    let sets = am_sets(50).unwrap();
    let u = union(sets.iter().map(|(_, s)| s));
    assert_eq!(u.lines().join("\n"), UNION_TO_50);

    let g = gaps(&u, &u.intervals()[0].lo, &AlgNum::one());
    let widths: Vec<String> = g
        .iter()
        .map(|g| floorgap::exact::format_sig(g.width, 1))
        .collect();
    assert_eq!(widths.len(), 9);
    assert_eq!(widths[1], "0.00003");
    assert_eq!(widths[3], "0.00007");
    assert_eq!(widths[5], "0.00004");
}

#[test]
fn unions_grow_with_m() {
    let sets = am_sets(20).unwrap();
    let mut prev = union(std::iter::empty());
    for k in 1..=sets.len() {
        let cur = union(sets[..k].iter().map(|(_, s)| s));
        for iv in prev.intervals() {
            assert!(cur.contains(&iv.lo) || !iv.lo_closed);
        }
        assert!(cur.measure().to_f64() >= prev.measure().to_f64());
        prev = cur;
    }
}
