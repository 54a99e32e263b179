use cycbound_core::gf::gcd;
use cycbound_core::proofcheck::{verify_construction_on, ProofParams};
use cycbound_core::usemiring::UVec;

/// `Δ^r (0^m Δ^r)^s Δ^gap 0^ℓ` of length `n`.
fn synthetic(ell: usize, m: usize, r: usize, s: usize, n: usize) -> UVec {
    let block = format!("{}{}", "0".repeat(m), "D".repeat(r));
    let body = format!("{}{}", "D".repeat(r), block.repeat(s));
    format!("{body}{}{}", "D".repeat(n - body.len() - ell), "0".repeat(ell)).parse().unwrap()
}

#[test]
fn bound_i_grid() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for ell in 1..=10 {
        for m in 1..=ell {
            for r in 1..=3 {
                for s in 1..=5 {
                    let len = ell + r + s * (m + r);
                    for n in len + m..=40 {
                        if gcd((m + r) as u64, n as u64) as usize > m {
                            continue;
                        }
                        let params = ProofParams::BoundI { ell, m, r, s };
                        let report = verify_construction_on(&synthetic(ell, m, r, s, n), &params).unwrap();
                        checked += 1;
                        if !(report.passed() && report.nested()) {
                            failures.push((ell, m, r, s, n));
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
    assert!(failures.is_empty(), "{} of {checked} failed, first {:?}", failures.len(), &failures[..failures.len().min(10)]);
}

#[test]
fn bound_ii_grid() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for mu in 2..=5 {
        for lambda in 1..=3 {
            for s in lambda + 2..=8 {
                let len = lambda * mu + 1 + s * mu;
                for n in len + mu..=40 {
                    let params = ProofParams::BoundII { lambda, mu, s };
                    let ell = lambda * mu;
                    let report = verify_construction_on(&synthetic(ell, mu - 1, 1, s, n), &params).unwrap();
                    checked += 1;
                    if !(report.passed() && report.nested()) {
                        failures.push((lambda, mu, s, n));
                    }
                }
            }
        }
    }
    assert!(checked > 100);
    assert!(failures.is_empty(), "{} of {checked} failed, first {:?}", failures.len(), &failures[..failures.len().min(10)]);
}
