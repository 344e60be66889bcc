use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// Exact Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Values come from `sum_{k=0}^{n} C(n+1, k) B_k = 0`, `B_0 = 1`, and are
/// memoized process-wide.
pub fn bernoulli(n: u32) -> Rational {
    if n > 1 && n % 2 == 1 {
        return Rational::new();
    }
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut t = table.lock().expect("bernoulli table poisoned");
    extend(&mut t, n as usize);
    t[n as usize].clone()
}

fn extend(t: &mut Vec<Rational>, upto: usize) {
    while t.len() <= upto {
        let m = t.len();
        if m > 1 && m % 2 == 1 {
            t.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        for (k, b) in t.iter().enumerate() {
            if *b == 0 {
                continue;
            }
            let c = Integer::from(Integer::binomial_u(m as u32 + 1, k as u32));
            acc += b.clone() * c;
        }
        acc /= m as u32 + 1;
        t.push(-acc);
    }
}
