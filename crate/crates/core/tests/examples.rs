//! Every runnable example doubles as a test.

macro_rules! example_test {
    ($module:ident, $test:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect("example runs");
        }
    };
}

example_test!(lattice_fixpoints, lattice_fixpoints_example_runs, "lattice_fixpoints.rs");
example_test!(interval_figure, interval_figure_example_runs, "interval_figure.rs");
example_test!(signature_terms, signature_terms_example_runs, "signature_terms.rs");
example_test!(mu_colimit, mu_colimit_example_runs, "mu_colimit.rs");
example_test!(nu_traces, nu_traces_example_runs, "nu_traces.rs");
example_test!(adjunction, adjunction_example_runs, "adjunction.rs");
example_test!(recursion, recursion_example_runs, "recursion.rs");
example_test!(dagger_coincidence, dagger_coincidence_example_runs, "dagger_coincidence.rs");
example_test!(json_specs, json_specs_example_runs, "json_specs.rs");
