use stretch_core::fixtures::{endperiodic, ENDPERIODIC_SHAPES};

fn main() {
    for (i, shape) in ENDPERIODIC_SHAPES.iter().enumerate() {
        let path = format!("crates/core/fixtures/endperiodic_{}.json", i + 1);
        std::fs::write(
            &path,
            serde_json::to_string(&endperiodic(*shape)).unwrap() + "\n",
        )
        .unwrap();
    }
}
