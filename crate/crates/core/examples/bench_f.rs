use lcount_core::interval::Interval;
use std::time::Instant;

fn main() {
    let b = Interval::new(1.0000001, 1.0000002);
    let n = 1_000_000u64;

    let t0 = Instant::now();
    let mut acc = Interval::new(1.5, 1.5000001);
    for _ in 0..n {
        acc = std::hint::black_box(acc * b);
    }
    eprintln!("mul x1M: {:?} ({})", t0.elapsed(), acc.lo());

    let c = Interval::new(1e-9, 1.1e-9);
    let t0 = Instant::now();
    let mut acc = Interval::new(0.5, 0.5000001);
    for _ in 0..n {
        acc = std::hint::black_box(acc + c);
    }
    eprintln!("add x1M: {:?} ({})", t0.elapsed(), acc.lo());

    let t0 = Instant::now();
    let mut acc = Interval::new(1.5, 1.5000001);
    for _ in 0..n {
        acc = std::hint::black_box(acc / 3.0);
        acc = acc * 3.0;
    }
    eprintln!("div+mul scalar x1M: {:?} ({})", t0.elapsed(), acc.lo());

    let n2 = 100_000u64;
    let t0 = Instant::now();
    let mut s = 0.0;
    for i in 0..n2 {
        s += std::hint::black_box(Interval::point(0.3 + (i % 7) as f64 * 0.1).exp()).lo();
    }
    eprintln!("exp x100k: {:?} ({s})", t0.elapsed());

    let t0 = Instant::now();
    let mut s = 0.0;
    for i in 0..n2 {
        s += std::hint::black_box(Interval::point(1.3 + (i % 7) as f64 * 0.1).ln().unwrap()).lo();
    }
    eprintln!("ln x100k: {:?} ({s})", t0.elapsed());
}
