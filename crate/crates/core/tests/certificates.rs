use permlike::cli::{certificate_from_json, certificate_to_json, check_spec, parse_spec, spec_to_file, Status};
use permlike::oracle::{verify_certificate, Tier};
use permlike::presentations::{build_spec, presentations, Twist};
use permlike::synth::Certificate;

fn certify(text: &str) -> Certificate {
    let spec = parse_spec(text).unwrap();
    let out = check_spec(&spec, Tier::Both);
    assert_eq!(out.status, Status::Certified, "{}", out.report());
    out.certificate.unwrap()
}

fn mult(r: u64, n: u32) -> Vec<u64> {
    (0..1u64 << n).map(|k| k * r % (1 << n)).collect()
}

#[test]
fn order_two_unit_three_at_n3() {
    // A e_j = e_{3j} with A^2 = I; 3^-1 = 3 mod 8
    let cert = certify(r#"{"n": 3, "generators": [{"name": "A", "r": 3, "coeffs": [0,0,0,0,0,0,0,0]}]}"#);
    assert_eq!(cert.generator_permutations["A"], mult(3, 3));
    assert_eq!(cert.generator_permutations["C"], vec![1, 2, 3, 4, 5, 6, 7, 0]);
}

#[test]
fn unit_five_at_n4_recurses() {
    let cert = certify(&format!(r#"{{"n": 4, "generators": [{{"name": "A", "r": 5, "coeffs": {:?}}}]}}"#, vec![0; 16]));
    assert_eq!(cert.generator_permutations["A"], mult(13, 4));
    let depths: std::collections::BTreeSet<u32> = cert.trace.iter().map(|s| s.depth).collect();
    assert_eq!(depths.into_iter().collect::<Vec<_>>(), vec![0, 1]);
}

#[test]
fn product_group_at_n3() {
    let ones = vec![0; 8];
    let text = format!(
        r#"{{"n": 3, "generators": [{{"name": "A", "r": 5, "coeffs": {ones:?}}}, {{"name": "B", "r": -1, "coeffs": {ones:?}}}]}}"#
    );
    let cert = certify(&text);
    assert_eq!(cert.generator_permutations["B"], mult(7, 3));
    assert!(cert.pairing.is_some());
}

#[test]
fn trivial_quotient_needs_no_rescaling() {
    let cert = certify(r#"{"n": 3, "generators": []}"#);
    assert!(cert.rescale.iter().all(|&t| t == 0));
    assert_eq!(cert.generator_permutations.len(), 1);
}

#[test]
fn certificates_survive_serialization_and_are_normalized() {
    for p in presentations(4).into_iter().filter(|p| p.expected_permutation_like()) {
        let spec = build_spec(&p, Twist::Seeded { seed: 5, row: 0, index: 1 });
        let out = check_spec(&spec, Tier::Fast);
        let cert = out.certificate.expect("certified");
        let half = cert.rescale.len() / 2;
        assert_eq!((cert.rescale[0], cert.rescale[half]), (0, 0));
        // generators used as given fix f; substituted ones differ from that by a power of C
        for (name, perm) in &cert.generator_permutations {
            let substituted = cert.substitutions.iter().any(|s| s.starts_with(&format!("{name} :=")));
            if name != "C" && !substituted {
                assert_eq!(perm[0], 0, "{name} must fix index 0 in {}", p.label());
            }
            let r = spec.generator(name).map(|g| g.matrix.perm()[1] as u64).unwrap_or(1);
            for k in 0..16u64 {
                let shifted = (perm[k as usize] + 16 - perm[0]) % 16;
                if name == "C" {
                    assert_eq!(perm[k as usize], (k + 1) % 16);
                } else {
                    assert_eq!(shifted * r % 16, k, "{name} in {}", p.label());
                }
            }
        }
        let back = certificate_from_json(&certificate_to_json(&cert)).unwrap();
        assert_eq!(back, cert);
        let respec = parse_spec(&serde_json::to_string(&spec_to_file(&spec)).unwrap()).unwrap();
        assert!(verify_certificate(&respec, &back, Tier::Dense).accepted());
    }
}

#[test]
fn certificate_for_another_spec_is_rejected() {
    let a = build_spec(&presentations(3)[4], Twist::Canonical);
    let b = build_spec(&presentations(3)[4], Twist::Seeded { seed: 1, row: 4, index: 0 });
    let cert_b = check_spec(&b, Tier::Fast).certificate.expect("certified");
    assert!(!cert_b.rescale.iter().all(|&t| t == 0));
    assert!(!verify_certificate(&a, &cert_b, Tier::Fast).accepted());
}
