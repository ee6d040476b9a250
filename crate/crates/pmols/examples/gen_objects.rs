//! Regenerates the PGM test objects shipped under `assets/objects/`.
//!
//! Usage: `cargo run -p pmols --example gen_objects`

use pmols::imaging::{save_pgm, synthetic_object, SYNTHETIC_OBJECT_NAMES};
use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("assets/objects");
    std::fs::create_dir_all(&dir).expect("create assets directory");
    for name in SYNTHETIC_OBJECT_NAMES {
        let object = synthetic_object(name).unwrap();
        let path = dir.join(format!("{name}.pgm"));
        save_pgm(&object, &path).expect("write object");
        println!(
            "wrote {} ({} lit pixels)",
            path.display(),
            object.nonzero_count()
        );
    }
}
