//! Every runnable example also runs as a test.

macro_rules! example_test {
    ($name:ident, $file:literal, $needle:literal) => {
        mod $name {
            #![allow(dead_code)]
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));

            #[test]
            fn runs() {
                let out = run_example().expect("example runs");
                assert!(out.contains($needle), "{out}");
            }
        }
    };
}

example_test!(local_arithmetic, "local_arithmetic.rs", "v3(4^-27 - 1) = 4");
example_test!(ring_eigenbasis, "ring_eigenbasis.rs", "c4^3 - c6^2 = (216)σ^2τ");
example_test!(tmf_basis, "tmf_basis.rs", "torsion in internal degree 6: [\"β\"]");
example_test!(delta0_matrix, "delta0_matrix.rs", "ker delta0 = Z(3){C_0^0}");
example_test!(case_analysis, "case_analysis.rs", "Case 4 (eps=1, m=4): matches true");
example_test!(resolve_u, "resolve_u.rs", "U^54 = (Z/3)^3 + Z/3^4");
example_test!(e2_page, "e2_page.rs", "PASS");
example_test!(chart_svg, "chart_svg.rs", "collapse check true");
