//! Every example's `run` succeeds; the examples are compiled in as modules.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                run().expect(stringify!($name));
            }
        }
    };
}

example!(quadratic_field);
example!(certified_floor);
example!(cz_indices);
example!(jump_sequences);
example!(torus_closure);
example!(ellipsoid_spectrum);
example!(classify_spectra);
example!(rotation_search);
example!(realize_ratio);
