macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect("example runs");
        }
    };
}

example!(boundedness_report);
example!(canonical_check);
example!(complete_box_extraction);
example!(conflict_census);
example!(erdos_rado_search);
example!(file_formats);
example!(proof_pipeline);
example!(rainbow_sampling);
example!(random_lower_bound);
example!(schedule_certificate);
