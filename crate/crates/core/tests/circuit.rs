use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qboson::circuit::*;
use qboson::linalg::{evolution_operator, max_abs_diff, operator_norm, CMatrix};
use qboson::yukawa::{hamiltonian_t2, YukawaParams};
use qboson::{Pauli, PauliString, PauliSum};

fn letter() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

fn non_identity_string(max_n: usize) -> impl Strategy<Value = PauliString> {
    (1..=max_n)
        .prop_flat_map(|n| prop::collection::vec(letter(), n))
        .prop_map(|v| PauliString::from_letters(&v))
        .prop_filter("identity", |p| !p.is_identity())
}

fn exact(p: &PauliString, theta: f64) -> CMatrix {
    let h = PauliSum::term(*p, C64::new(1.0, 0.0)).to_dense().unwrap();
    evolution_operator(&h, theta)
}

fn random_gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    prop_oneof![
        q.clone().prop_map(Gate::H),
        q.clone().prop_map(Gate::R),
        (q.clone(), -3.0..3.0f64).prop_map(|(q, a)| Gate::Rz(q, a)),
        (q.clone(), -3.0..3.0f64).prop_map(|(q, a)| Gate::Rx(q, a)),
        (q.clone(), q).prop_filter_map("distinct", |(c, t)| (c != t)
            .then_some(Gate::Cnot { control: c, target: t })),
    ]
}

fn random_circuit() -> impl Strategy<Value = Circuit> {
    (2..=4usize).prop_flat_map(|n| {
        prop::collection::vec(random_gate(n), 0..40).prop_map(move |gates| Circuit { n_qubits: n, gates })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pauli_exponential_matches_dense(p in non_identity_string(5), theta in -4.0..4.0f64) {
        let c = compile_pauli_exponential(&p, theta).unwrap();
        let u = circuit_unitary(&c).unwrap();
        prop_assert!(max_abs_diff(&u, &exact(&p, theta)) < 1e-12);
        prop_assert_eq!(c.cnot_count(), 2 * (p.weight() - 1));
    }

    #[test]
    fn cancellation_preserves_unitary(c in random_circuit()) {
        let reduced = cancel_adjacent(&c);
        prop_assert!(reduced.gates.len() <= c.gates.len());
        let d = max_abs_diff(&circuit_unitary(&c).unwrap(), &circuit_unitary(&reduced).unwrap());
        prop_assert!(d < 1e-12, "deviation {}", d);
        prop_assert_eq!(cancel_adjacent(&reduced), reduced.clone());
    }

    #[test]
    fn text_export_round_trips(c in random_circuit()) {
        let text = export_text(&c);
        let back = parse_text(&text).unwrap();
        prop_assert_eq!(back.n_qubits, c.n_qubits);
        let d = max_abs_diff(&circuit_unitary(&c).unwrap(), &circuit_unitary(&back).unwrap());
        prop_assert!(d < 1e-12);
    }
}

fn step_error(h: &PauliSum, dt: f64) -> f64 {
    let (c, stats) = compile_step(h, dt, Ordering::Lex).unwrap();
    let u = circuit_unitary(&c).unwrap() * C64::from_polar(1.0, stats.global_phase);
    operator_norm(&(u - evolution_operator(&h.to_dense().unwrap(), dt)))
}

#[test]
fn step_error_is_second_order() {
    for g in [1.0, 34.75] {
        let params = YukawaParams {
            g,
            ..Default::default()
        };
        let h = hamiltonian_t2(&params, 0.7).unwrap();
        let coarse = step_error(&h, 0.1);
        let fine = step_error(&h, 0.05);
        let ratio = coarse / fine;
        assert!((3.0..=5.0).contains(&ratio), "g={g}: {coarse:e} / {fine:e} = {ratio}");
    }
}

#[test]
fn commuting_terms_compile_exactly() {
    let h = PauliSum::parse_text("0.3 0 ZZI\n-0.2 0 IZZ\n0.5 0 ZIZ\n1.0 0 III", 3).unwrap();
    assert!(step_error(&h, 0.4) < 1e-12);
}

#[test]
fn yukawa_step_counts_under_both_orderings() {
    let h = hamiltonian_t2(&YukawaParams::default(), 0.0).unwrap();
    let (lex, a) = compile_step(&h, 0.1, Ordering::Lex).unwrap();
    let (ladder, b) = compile_step(&h, 0.1, Ordering::Ladder).unwrap();
    println!("lex: {a:?}\nladder: {b:?}");
    assert_eq!(a.term_count, b.term_count);
    assert_eq!(a.cnot_count_naive, b.cnot_count_naive);
    assert!(a.cnot_count_after_cancellation <= a.cnot_count_naive);
    assert!(b.cnot_count_after_cancellation <= a.cnot_count_after_cancellation);
    // the two orderings are different products but both first-order accurate
    let u = |c: &Circuit, s: &CompilationStats| circuit_unitary(c).unwrap() * C64::from_polar(1.0, s.global_phase);
    let exact = evolution_operator(&h.to_dense().unwrap(), 0.1);
    assert!(operator_norm(&(u(&lex, &a) - &exact)) < 1e-2);
    assert!(operator_norm(&(u(&ladder, &b) - &exact)) < 1e-2);
}

#[test]
fn fidelity_threshold_values() {
    assert!((fidelity_threshold(0.70, 117, 10).unwrap() - 0.999695).abs() < 5e-7);
    assert!((fidelity_threshold(0.70, 117, 1).unwrap() - 0.996956).abs() < 5e-7);
    assert_eq!(fidelity_threshold(1.0, 5, 5).unwrap(), 1.0);
    assert!(fidelity_threshold(0.0, 1, 1).is_err());
    assert!(fidelity_threshold(0.7, 0, 1).is_err());
    assert!(fidelity_threshold(0.7, 1, 0).is_err());
}

#[test]
fn exported_text_has_standard_header() {
    let p: PauliString = "XYZ".parse().unwrap();
    let text = export_text(&compile_pauli_exponential(&p, 0.25).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OPENQASM 2.0;"));
    assert_eq!(lines.next(), Some("include \"qelib1.inc\";"));
    assert_eq!(lines.next(), Some("qreg q[3];"));
    assert_eq!(text.matches("cx ").count(), 4);
}

#[test]
fn out_of_range_gates_are_rejected() {
    let mut c = Circuit::new(2);
    assert!(c.push(Gate::H(2)).is_err());
    assert!(c.push(Gate::Cnot { control: 1, target: 1 }).is_err());
    assert!(parse_text("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n").is_err());
}
