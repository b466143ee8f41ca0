//! Builds the order-3 projective configuration, its quotient complex, and
//! its stabilizer code, then checks the code is perfect.

use configcomplex::complex::quotient_complex;
use configcomplex::constructions::{config_from_difference_set, singer_difference_set};
use configcomplex::correspondence::config_to_code;

fn main() -> Result<(), configcomplex::Error> {
    let ds = singer_difference_set(3)?; // a planar difference set in Z_13
    let (config, _action) = config_from_difference_set(&ds)?;
    let qc = quotient_complex(&config)?;
    assert_eq!(qc.complex().num_vertices(), 13);
    let code = config_to_code(&config)?; // perfect: index 13 = 3² + 3 + 1
    assert!(code.is_perfect()?);
    println!("order-3 projective plane: 13 vertices, perfect stabilizer code");
    Ok(())
}
