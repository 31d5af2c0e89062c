use klrw_core::cartan::{CartanDatum, CartanType};
use klrw_core::crystal;
use std::time::Instant;

fn main() {
    for (t, w, count, depth) in [("D5", 5, 16, 10), ("G2", 1, 14, 10), ("G2", 2, 7, 6), ("F4", 2, 1274, 42), ("E6", 3, 0, 42), ("B3", 2, 21, 10)] {
        let datum = CartanDatum::new(CartanType::parse(t).unwrap());
        let t0 = Instant::now();
        let g = crystal::fundamental_crystal(&datum, w, 2_000_000).unwrap();
        println!("{t} w{w}: {} vertices depth {} ({} ms)  [expect {count}/{depth}]", g.len(), g.depth(), t0.elapsed().as_millis());
    }
    // n(i) closed forms spotcheck: A4 w1 -> 4; B3 w2 -> 10; G2 -> 10,6; F4 row: 22,42,30,16
    for (t, exp) in [("F4", vec![22usize,42,30,16]), ("E6", vec![16,30,42,22,30,16])] {
        let datum = CartanDatum::new(CartanType::parse(t).unwrap());
        let got: Vec<usize> = (1..=datum.rank()).map(|w| {
            crystal::fundamental_crystal(&datum, w, 2_000_000).unwrap().depth()
        }).collect();
        println!("{t} depths: {got:?} expect {exp:?}");
    }
}
