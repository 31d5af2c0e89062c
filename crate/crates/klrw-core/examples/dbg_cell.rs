use klrw_core::cartan::{CartanDatum, CartanType};
use klrw_core::cellular::*;
use num_rational::Rational64;

fn main() {
    let datum = CartanDatum::new(CartanType::parse("B3").unwrap());
    let ctx = CellContext::new(&datum, &[2], &[Rational64::from_integer(0)], Mode::Cyclotomic, 1_000_000).unwrap();
    let cd = build_cell_datum(&ctx, 5).unwrap();
    for (i, v) in cd.vertices.iter().enumerate() {
        println!("vertex {i}: pref {} sand {} finch {}", v.preferred.residue_string(), v.sandwich_rank(&cd.datum), v.finch_size());
        for f in &v.flanks { println!("   flank {} -> {} deg {}", cycles(&f.perm), f.target, f.degree); }
    }
    println!("grdim {}  dim {}", cd.graded_rank(), cd.graded_rank().eval_one());
    for a in 0..3 { for b in a..3 {
        let p = cd.pairwise_rank(a, b);
        if !p.is_zero() { println!("pairwise ({a},{b}): {p}"); }
    }}
    for a in 0..3 { for b in 0..3 {
        let d = cd.decomposition_number(&ctx, a, b);
        if !d.is_zero() { println!("decomp ({a},{b}): {d}"); }
    }}
    let c3 = CartanDatum::new(CartanType::parse("C3").unwrap());
    let ctx3 = CellContext::new(&c3, &[1], &[Rational64::from_integer(0)], Mode::Cyclotomic, 1_000_000).unwrap();
    let cd4 = build_cell_datum(&ctx3, 4).unwrap();
    for (i, v) in cd4.vertices.iter().enumerate() {
        println!("C3 n4 vertex {i}: {} detours {} self-degs {:?}", v.preferred.residue_string(), v.detours,
            v.flanks.iter().filter(|f| f.target == i).map(|f| f.degree).collect::<Vec<_>>());
    }
    let cd7 = build_cell_datum(&ctx, 7).unwrap();
    for (i, v) in cd7.vertices.iter().enumerate() {
        if v.classes.len() > 1 {
            println!("n7 vertex {i}: detours {} self-degs {:?}", v.detours,
                v.flanks.iter().filter(|f| f.target == i).map(|f| f.degree).collect::<Vec<_>>());
        }
    }
}
