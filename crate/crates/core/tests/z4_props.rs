use codebound::z4::{hamming_distance, hamming_weight, BTL_ROWS};
use codebound::{gray_map, kerdock_params, lee_distance, lee_weight, Z4Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut impl Rng, n: usize) -> Z4Word {
    Z4Word::new((0..n).map(|_| rng.gen_range(0..4u8)).collect()).unwrap()
}

#[test]
fn gray_map_is_an_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=64);
        let (x, y) = (random_word(&mut rng, n), random_word(&mut rng, n));
        let hd = hamming_distance(&gray_map(&x), &gray_map(&y)).unwrap();
        assert_eq!(hd, lee_distance(&x, &y).unwrap(), "{x} {y}");
    }
}

#[test]
fn weights_correspond_on_every_short_word() {
    for n in 0..=6u32 {
        for code in 0..4u32.pow(n) {
            let symbols: Vec<u8> = (0..n).map(|i| ((code >> (2 * i)) & 3) as u8).collect();
            let x = Z4Word::new(symbols).unwrap();
            let image = gray_map(&x);
            assert_eq!(image.len(), 2 * x.len());
            assert_eq!(hamming_weight(&image), lee_weight(&x));
        }
    }
}

#[test]
fn parse_and_display_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = rng.gen_range(1..=20);
        let x = random_word(&mut rng, n);
        assert_eq!(x.to_string().parse::<Z4Word>().unwrap(), x);
    }
}

#[test]
fn kerdock_gray_length_is_double() {
    for k in (3..=31).step_by(2) {
        let p = kerdock_params(k).unwrap();
        assert_eq!(p.gray_length(), 2 * p.length);
        assert_eq!(p.gray_log2_size(), 2 * (k + 1));
    }
    for k in [0, 1, 2, 4, 33] {
        assert!(kerdock_params(k).is_err());
    }
}

#[test]
fn reference_rows_are_consistent() {
    for row in BTL_ROWS {
        row.record().validate().unwrap();
    }
}
