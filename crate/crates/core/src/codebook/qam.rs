use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square 2^{2r}-QAM with odd integer coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct QamConstellation {
    pub r: u32,
    pub points: Vec<Complex64>,
}

/// `{±a ± bi : 1 ≤ a, b ≤ 2^r − 1, a and b odd}`, ordered by real then imaginary part.
pub fn qam(r: u32) -> Result<QamConstellation> {
    if !(1..=8).contains(&r) {
        return Err(Error::Domain(format!(
            "QAM order r must be in 1..=8, got {r}"
        )));
    }
    let top = (1i64 << r) - 1;
    let coords: Vec<f64> = (-top..=top).step_by(2).map(|v| v as f64).collect();
    let points = coords
        .iter()
        .flat_map(|&re| coords.iter().map(move |&im| Complex64::new(re, im)))
        .collect();
    Ok(QamConstellation { r, points })
}
