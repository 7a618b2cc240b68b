//! Loading a space file, parsing points and writing a sample CSV.
//!
//! Usage: `cargo run --example files -- [SPACE_FILE]`.

use std::path::PathBuf;

use ballspace::io::{load_space, parse_point, point_json, write_samples};
use ballspace::sample::Sampler;
use ballspace::Result;

fn main() -> Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/chain.json")));
    let loaded = load_space(&path)?;
    let space = &loaded.space;
    println!("loaded a {} space from {}", space.kind(), path.display());

    let samples = Sampler::new(0).quadruples(space, 5);
    write_samples(space, &samples, std::io::stdout())?;
    if let Ok(g) = space.as_graph() {
        let v = g.vertex_name(g.vertex_ids().next().expect("graphs have vertices"));
        let p = parse_point(space, &format!(r#"{{"vertex":"{v}"}}"#))?;
        println!("parsed {}", point_json(space, &p));
    }
    Ok(())
}
