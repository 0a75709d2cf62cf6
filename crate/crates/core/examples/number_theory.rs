//! Sums of squares behind the odd-form constructions.

use fourman::lattice::{four_odd_squares, four_odd_squares_via_three, is_legendre_exception, three_squares};

fn main() {
    for k in [4u64, 12, 20, 84, 1004] {
        let (a, b, c, d) = four_odd_squares(k).expect("k ≡ 4 mod 8");
        println!("{k} = {a}² + {b}² + {c}² + {d}²");
        assert_eq!(four_odd_squares_via_three(k).unwrap().0 % 2, 1);
    }
    println!("6 as four odd squares: {:?}", four_odd_squares(6).err());

    for n in [3u64, 7, 28, 59, 112] {
        match three_squares(n) {
            Some((a, b, c)) => println!("{n} = {a}² + {b}² + {c}²"),
            None => println!("{n} is 4^a(8b+7): {}", is_legendre_exception(n)),
        }
    }
}
