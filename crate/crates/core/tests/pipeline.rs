use jcgrav_core::observables::{entropy, inversion, overlaps, q_function, QGridSpec};
use jcgrav_core::scenario::{builtin_scenario, parse_scenario, serialize_scenario};
use jcgrav_core::sweep::{branch_state, overlap_series, Backend, BackendOptions};
use jcgrav_core::{build_momentum_grid, coherent_amplitudes, truncation_for, PhysicalParams, C64};

fn setup(nodes: usize) -> (PhysicalParams, jcgrav_core::CoherentField, jcgrav_core::MomentumGrid) {
    let params = PhysicalParams::reference(1.5e7);
    let field = coherent_amplitudes(params.alpha, truncation_for(params.alpha)).unwrap();
    let grid = build_momentum_grid(params.sigma0, nodes).unwrap();
    (params, field, grid)
}

#[test]
fn series_agrees_with_single_states() {
    let (params, field, grid) = setup(6);
    let lts = [0.0, 0.7, 3.1, 9.4, 18.0];
    let times: Vec<f64> = lts.iter().map(|l| l / params.lambda).collect();
    let opts = BackendOptions::default();
    for backend in [Backend::Analytic, Backend::Ode] {
        let series = overlap_series(backend, &times, &params, &field, &grid, &opts).unwrap();
        for (o, &t) in series.iter().zip(&times) {
            let single = overlaps(&branch_state(backend, t, &params, &field, &grid, &opts).unwrap());
            assert!((o.cc - single.cc).abs() < 1e-9, "{backend} cc at t={t}");
            assert!((o.dd - single.dd).abs() < 1e-9, "{backend} dd at t={t}");
            assert!((o.cd - single.cd).norm() < 1e-9, "{backend} cd at t={t}");
        }
    }
}

#[test]
fn ode_is_unitary_under_gravity() {
    let (params, field, grid) = setup(8);
    let times: Vec<f64> = (0..=50).map(|i| 0.5 * i as f64 / params.lambda).collect();
    let series = overlap_series(Backend::Ode, &times, &params, &field, &grid, &BackendOptions::default()).unwrap();
    for o in &series {
        assert!((o.norm() - 1.0).abs() < 1e-8);
        assert!(o.cd.norm_sqr() <= o.cc * o.dd * (1.0 + 1e-12));
        let s = entropy(o).unwrap().s_f;
        assert!((0.0..=std::f64::consts::LN_2).contains(&s));
    }
}

#[test]
fn decoupled_atom_stays_excited_in_both_backends() {
    let (mut params, field, grid) = setup(4);
    params.lambda = 0.0;
    let times = [0.0, 1e-6, 2.5e-5];
    for backend in [Backend::Analytic, Backend::Ode] {
        let series = overlap_series(backend, &times, &params, &field, &grid, &BackendOptions::default()).unwrap();
        for o in &series {
            assert!((inversion(o) - 1.0).abs() < 1e-12, "{backend}");
            assert!(entropy(o).unwrap().s_f.abs() < 1e-12);
        }
    }
}

#[test]
fn initial_q_function_is_the_coherent_gaussian() {
    let (params, field, grid) = setup(4);
    let state = branch_state(Backend::Ode, 0.0, &params, &field, &grid, &BackendOptions::default()).unwrap();
    let spec = QGridSpec { extent: 9.0, n: 41 };
    let q = q_function(&state, &spec).unwrap();
    for (i, &x) in q.x.iter().enumerate() {
        for (j, &y) in q.y.iter().enumerate() {
            let expected = (-(C64::new(x, y) - params.alpha).norm_sqr()).exp() / std::f64::consts::PI;
            assert!((q.values[[i, j]] - expected).abs() < 1e-12, "Q({x}, {y})");
        }
    }
}

#[test]
fn builtins_survive_a_text_round_trip() {
    for name in ["fig1", "fig2", "fig3"] {
        let s = builtin_scenario(name).unwrap();
        let back = parse_scenario(&serialize_scenario(&s)).unwrap();
        assert_eq!(back.scenario, s, "{name}");
        let unset = ["t_start", "t_end", "n_samples", "t_at", "fock.nmax"];
        assert!(back.defaulted.iter().all(|k| unset.contains(k)), "{name}: {:?}", back.defaulted);
    }
}
