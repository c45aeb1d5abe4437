// Seeded instance generation and the JSON instance format.

use std::error::Error;

use mixed_auction::instances::{
    generate, parse_instance, read_instance, serialize_instance, write_instance, CtrMode,
    GeneratorConfig,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut config = GeneratorConfig::new(7, 5, 3);
    let instance = generate(&config)?;
    let text = serialize_instance(&instance);
    print!("{text}");
    assert_eq!(parse_instance(&text)?, instance);
    assert_eq!(generate(&config)?, instance, "same seed, same instance");

    config.ctr_mode = CtrMode::Geometric;
    let geometric = generate(&config)?;
    let rates: Vec<String> = geometric
        .ladder
        .ctrs()
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("geometric rates: {}", rates.join(", "));

    let path =
        std::env::temp_dir().join(format!("mixed-auction-example-{}.json", std::process::id()));
    write_instance(&path, &geometric)?;
    assert_eq!(read_instance(&path)?, geometric);
    std::fs::remove_file(&path)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
