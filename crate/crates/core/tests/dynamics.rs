mod common;

use approx::assert_abs_diff_eq;
use common::{complete, cycle, inf_norm, path, random_connected, star};
use nalgebra::{DMatrix, DVector};
use occwalk::classical::{
    euler_evolve, euler_stationary, stationary_occupation, GeneratorKind, GeneratorMatrix, IntegrationConfig,
};
use occwalk::quantum::{evolve_exact, initial_state, long_time_mean, Psi0Mode, QuantumState, QuantumWalk, C64};
use occwalk::{Error, Graph, ProbabilityVector};
use proptest::prelude::*;

/// `exp(a)` by scaling and squaring of a truncated Taylor series.
fn expm_taylor(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
    let squarings = norm.log2().ceil().max(0.0) as i32 + 4;
    let scaled = a / 2f64.powi(squarings);
    let mut term = DMatrix::identity(n, n);
    let mut sum = DMatrix::identity(n, n);
    for k in 1..30 {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(-i h t) psi` by many small Taylor steps.
fn schrodinger_taylor(h: &DMatrix<f64>, psi: &DVector<C64>, t: f64) -> DVector<C64> {
    let hc = h.map(|x| C64::new(x, 0.0));
    let steps = (t * 20.0).ceil().max(1.0) as usize;
    let dt = C64::new(0.0, -t / steps as f64);
    let mut out = psi.clone();
    for _ in 0..steps {
        let mut term = out.clone();
        let mut acc = out.clone();
        for k in 1..25 {
            term = &hc * &term * dt / C64::new(k as f64, 0.0);
            acc += &term;
        }
        out = acc;
    }
    out
}

fn connected() -> impl Strategy<Value = Graph> {
    (2usize..20, 0.0f64..0.6, any::<u64>()).prop_map(|(n, p, s)| random_connected(n, p, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagator_matches_series_and_is_stochastic(g in connected(), t in 0.0f64..5.0, normalized in any::<bool>()) {
        let kind = if normalized { GeneratorKind::Normalized } else { GeneratorKind::UnnormalizedRate };
        let h = GeneratorMatrix::new(&g, kind, 0.7).unwrap();
        let p = h.propagator(t).unwrap();
        let oracle = expm_taylor(&(-h.matrix() * t));
        prop_assert!((&p - &oracle).amax() < 1e-9);
        for j in 0..g.node_count() {
            let dev = (p.column(j).sum() - 1.0).abs();
            prop_assert!(dev < 1e-10, "column {j} deviates by {dev:e}");
        }
        prop_assert!(p.iter().all(|&x| x > -1e-12));
    }

    #[test]
    fn propagator_semigroup(g in connected(), s in 0.0f64..3.0, t in 0.0f64..3.0) {
        let h = GeneratorMatrix::normalized(&g).unwrap();
        let lhs = h.propagator(s).unwrap() * h.propagator(t).unwrap();
        prop_assert!((lhs - h.propagator(s + t).unwrap()).amax() < 1e-10);
    }

    #[test]
    fn euler_converges_to_degree_distribution(g in connected()) {
        let h = GeneratorMatrix::normalized(&g).unwrap();
        let cfg = IntegrationConfig::classical_default(&h);
        let p0 = ProbabilityVector::localized(&g, g.label(0).unwrap()).unwrap();
        let out = euler_stationary(&h, &p0, &cfg).unwrap();
        prop_assert!(out.converged);
        let op_c = stationary_occupation(&g).unwrap();
        prop_assert!(inf_norm(out.state.values(), op_c.values()) < 1e-6);
    }

    #[test]
    fn exact_evolution_matches_series_and_keeps_norm(g in connected(), t in 0.0f64..4.0) {
        let h = g.normalized_laplacian().unwrap();
        let psi0 = initial_state(&g, &Psi0Mode::Localized(g.label(0).unwrap().into())).unwrap();
        let psi = evolve_exact(&h, &psi0, t).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        let oracle = schrodinger_taylor(&h, psi0.amplitudes(), t);
        let err = (psi.amplitudes() - oracle).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-9, "err {err:e}");
    }

    #[test]
    fn global_phase_does_not_change_occupation(g in connected(), theta in -6.3f64..6.3) {
        let walk = QuantumWalk::new(&g).unwrap();
        let psi0 = initial_state(&g, &Psi0Mode::Localized(g.label(0).unwrap().into())).unwrap();
        let a = walk.long_time_mean(&psi0).unwrap();
        let b = walk.long_time_mean(&psi0.with_global_phase(theta)).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn relabeling_permutes_occupations(g in connected(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        // rebuild with edges listed in shuffled order so node indices change
        let mut edges: Vec<_> = g.edges().to_vec();
        edges.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let mut h = Graph::new();
        for e in &edges {
            h.add_edge(g.label(e.v).unwrap(), g.label(e.u).unwrap(), e.weight).unwrap();
        }
        let (cg, ch) = (stationary_occupation(&g).unwrap(), stationary_occupation(&h).unwrap());
        let qg = QuantumWalk::new(&g).unwrap().long_time_mean(&initial_state(&g, &Psi0Mode::Uniform).unwrap()).unwrap();
        let qh = QuantumWalk::new(&h).unwrap().long_time_mean(&initial_state(&h, &Psi0Mode::Uniform).unwrap()).unwrap();
        for (label, x) in cg.iter() {
            prop_assert_eq!(ch.get(label), Some(x));
        }
        for (label, x) in qg.iter() {
            let d = (qh.get(label).unwrap() - x).abs();
            prop_assert!(d < 1e-10, "{label}: {d:e}");
        }
    }
}

#[test]
fn star_hub_long_time_mean_is_analytic() {
    // From the hub, projections onto the λ=0 and λ=2 eigenvectors give
    // hub weight 1/2 and 1/(2n) per leaf.
    for n in [2, 3, 5, 9, 20] {
        let g = star(n);
        let psi0 = initial_state(&g, &Psi0Mode::Localized("c".into())).unwrap();
        let mean = long_time_mean(&g.normalized_laplacian().unwrap(), &psi0).unwrap();
        assert_abs_diff_eq!(mean.get("c").unwrap(), 0.5, epsilon = 1e-12);
        for i in 1..=n {
            assert_abs_diff_eq!(mean.get(&format!("l{i}")).unwrap(), 0.5 / n as f64, epsilon = 1e-12);
        }
    }
}

#[test]
fn star_degeneracy_numeric_matches_spectral() {
    let g = star(6);
    let walk = QuantumWalk::new(&g).unwrap();
    let cfg = IntegrationConfig::new(0.01, 2000.0, 1e-10).unwrap();
    for mode in [Psi0Mode::Uniform, Psi0Mode::Localized("l1".into()), Psi0Mode::Localized("c".into())] {
        let psi0 = initial_state(&g, &mode).unwrap();
        let exact = walk.long_time_mean(&psi0).unwrap();
        let numeric = walk.long_time_mean_numeric(&psi0, &cfg).unwrap();
        assert!(exact.max_abs_diff(&numeric) < 2e-3, "{mode}");
    }
}

#[test]
fn k2_and_path_closed_forms() {
    let g = Graph::from_pairs(&[("a", "b")]).unwrap();
    let psi0 = initial_state(&g, &Psi0Mode::Localized("a".into())).unwrap();
    let mean = QuantumWalk::new(&g).unwrap().long_time_mean(&psi0).unwrap();
    assert_abs_diff_eq!(mean.values()[0], 0.5, epsilon = 1e-12);

    // |ψ(t)|² on K2 from a: (cos² t, sin² t)
    let psi = evolve_exact(&g.normalized_laplacian().unwrap(), &psi0, 0.3).unwrap();
    assert_abs_diff_eq!(psi.amplitudes()[0].norm_sqr(), 0.3f64.cos().powi(2), epsilon = 1e-12);

    let op_c = stationary_occupation(&path(3)).unwrap();
    assert_eq!(op_c.values(), &[0.25, 0.5, 0.25]);
}

#[test]
fn vertex_transitive_graphs_are_uniform_under_euler() {
    for g in [complete(6), cycle(9)] {
        let n = g.node_count() as f64;
        for kind in [GeneratorKind::Normalized, GeneratorKind::UnnormalizedRate] {
            let h = GeneratorMatrix::new(&g, kind, 1.0).unwrap();
            let p0 = ProbabilityVector::localized(&g, "0").unwrap();
            let run = euler_evolve(&h, &p0, &IntegrationConfig::classical_default(&h)).unwrap();
            assert!(run.converged);
            assert!(run.trajectory.last().unwrap().values().iter().all(|x| (x - 1.0 / n).abs() < 1e-8));
        }
    }
}

#[test]
fn unstable_steps_are_rejected() {
    let g = star(4);
    let h = GeneratorMatrix::normalized(&g).unwrap();
    let p0 = ProbabilityVector::uniform(&g).unwrap();
    let cfg = IntegrationConfig::new(1.5, 10.0, 1e-10).unwrap();
    assert!(matches!(euler_evolve(&h, &p0, &cfg), Err(Error::UnstableStep(_))));

    let walk = QuantumWalk::new(&g).unwrap();
    let psi0 = initial_state(&g, &Psi0Mode::Uniform).unwrap();
    let cfg = IntegrationConfig::new(0.6, 10.0, 1e-10).unwrap();
    assert!(matches!(walk.long_time_mean_numeric(&psi0, &cfg), Err(Error::UnstableStep(_))));
}

#[test]
fn disconnected_and_mismatched_inputs_fail() {
    let g = Graph::from_pairs(&[("a", "b"), ("c", "d")]).unwrap();
    assert_eq!(stationary_occupation(&g), Err(Error::DisconnectedGraph { components: 2 }));

    let other = Graph::from_pairs(&[("x", "y")]).unwrap();
    let walk = QuantumWalk::new(&Graph::from_pairs(&[("a", "b")]).unwrap()).unwrap();
    let psi = initial_state(&other, &Psi0Mode::Uniform).unwrap();
    assert_eq!(walk.long_time_mean(&psi), Err(Error::NodeSetMismatch));

    let amps = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
    let labels: std::sync::Arc<[String]> = other.labels().map(String::from).collect();
    assert!(QuantumState::new(amps, labels).is_err());
}
