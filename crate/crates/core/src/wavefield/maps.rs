use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::matching::{field_on_orbit, MatchedPair};
use crate::error::{Error, Result};
use crate::quantization::OrbitSolution;

/// Smallest accepted map resolution.
pub const MIN_GRID: usize = 16;

/// Sampling plane of an intensity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Plane {
    /// z = 0; coordinates (x, y).
    Equatorial,
    /// y = 0; coordinates (x, z).
    Meridian,
}

/// |u(t = 0)|² on a square cell-centred grid, distances in units of a₀.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntensityMap {
    pub plane: Plane,
    pub grid_n: usize,
    /// Half-width of the map in units of a₀.
    pub extent: f64,
    /// Cell size in units of a₀.
    pub cell: f64,
    pub a0: f64,
    /// Row-major: index `j * grid_n + i` holds the cell at (coord(i), coord(j)).
    pub values: Vec<f64>,
}

/// A local maximum of a map, in units of a₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapPeak {
    pub u: f64,
    pub v: f64,
    pub value: f64,
}

impl IntensityMap {
    /// Centre of cell `i` along either axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + (i as f64 + 0.5) * self.cell
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid_n + i]
    }

    /// Global maximum (first in row-major order on ties).
    pub fn argmax(&self) -> MapPeak {
        let (k, &value) =
            self.values
                .iter()
                .enumerate()
                .fold((0, &f64::NEG_INFINITY), |acc, x| if *x.1 > *acc.1 { x } else { acc });
        MapPeak {
            u: self.coord(k % self.grid_n),
            v: self.coord(k / self.grid_n),
            value,
        }
    }

    /// Mean intensity in annuli of width one cell, as (radius, mean) pairs.
    pub fn radial_profile(&self) -> Vec<(f64, f64)> {
        let nbins = (self.extent * std::f64::consts::SQRT_2 / self.cell).ceil() as usize + 1;
        let mut sum = vec![0.0; nbins];
        let mut count = vec![0usize; nbins];
        for j in 0..self.grid_n {
            for i in 0..self.grid_n {
                let rho = self.coord(i).hypot(self.coord(j));
                let k = (rho / self.cell) as usize;
                sum[k] += self.value(i, j);
                count[k] += 1;
            }
        }
        // keep only full annuli inside the inscribed circle
        let full = (self.extent / self.cell) as usize;
        (0..full.min(nbins))
            .filter(|&k| count[k] > 0)
            .map(|k| ((k as f64 + 0.5) * self.cell, sum[k] / count[k] as f64))
            .collect()
    }

    /// Radius (units of a₀) of the largest annular mean.
    pub fn radial_argmax(&self) -> f64 {
        self.radial_profile()
            .into_iter()
            .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc })
            .0
    }

    /// Cells that are at least as large as their eight neighbours and strictly
    /// larger than one of them, with value above `min_fraction` of the global
    /// maximum. Plateaus of equal neighbouring maxima count once.
    pub fn local_maxima(&self, min_fraction: f64) -> Vec<MapPeak> {
        let n = self.grid_n;
        let top = self.argmax().value;
        let mut peaks: Vec<(usize, usize, f64)> = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let v = self.value(i, j);
                if v < min_fraction * top {
                    continue;
                }
                let mut is_max = true;
                let mut strictly = false;
                for dj in -1i64..=1 {
                    for di in -1i64..=1 {
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        let (ii, jj) = (i as i64 + di, j as i64 + dj);
                        if ii < 0 || jj < 0 || ii >= n as i64 || jj >= n as i64 {
                            continue;
                        }
                        let w = self.value(ii as usize, jj as usize);
                        if w > v {
                            is_max = false;
                        } else if w < v {
                            strictly = true;
                        }
                    }
                }
                if is_max && strictly {
                    let dup = peaks
                        .iter()
                        .any(|&(pi, pj, pv)| pv == v && pi.abs_diff(i) <= 1 && pj.abs_diff(j) <= 1);
                    if !dup {
                        peaks.push((i, j, v));
                    }
                }
            }
        }
        peaks
            .into_iter()
            .map(|(i, j, value)| MapPeak {
                u: self.coord(i),
                v: self.coord(j),
                value,
            })
            .collect()
    }
}

/// |u(0, ·)|² of a matched pair on the requested plane.
///
/// `extent` is the half-width in units of a₀. Evaluation is parallel over
/// rows; each cell is computed independently, so the output does not depend
/// on the thread count.
pub fn intensity_map(
    orbit: &OrbitSolution,
    pair: &MatchedPair,
    plane: Plane,
    extent: f64,
    grid_n: usize,
) -> Result<IntensityMap> {
    if grid_n < MIN_GRID {
        return Err(Error::param(
            "grid_n",
            format!("need grid_n >= {MIN_GRID}, got {grid_n}"),
        ));
    }
    if !(extent > 0.0 && extent.is_finite()) {
        return Err(Error::param("extent", format!("need extent > 0, got {extent}")));
    }
    let a0 = orbit.a0;
    let cell = 2.0 * extent / grid_n as f64;
    // Cell centres sit at (2i + 1 − n)·cell/2, so r² is an integer multiple of
    // (cell/2)²; radial ratios are tabulated once per distinct integer.
    let n = grid_n as i64;
    let key = |i: usize, j: usize| {
        let (p, q) = (2 * i as i64 + 1 - n, 2 * j as i64 + 1 - n);
        (p * p + q * q) as u64
    };
    let mut keys: Vec<u64> = (0..grid_n)
        .flat_map(|j| (0..grid_n).map(move |i| (i, j)))
        .filter(|&(i, j)| i <= j && 2 * j + 1 >= grid_n && 2 * i + 1 >= grid_n)
        .map(|(i, j)| key(i, j))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let (rp, rm) = pair.radial_ratios()?;
    let half = 0.5 * cell * a0;
    let table: Vec<(Complex64, Complex64)> = keys
        .par_iter()
        .map(|&k| {
            let r = half * (k as f64).sqrt();
            Ok((rp.at(r)?, rm.at(r)?))
        })
        .collect::<Result<_>>()?;
    let lookup = |k: u64| table[keys.binary_search(&k).expect("every cell radius is tabulated")];
    let values: Vec<f64> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % grid_n, idx / grid_n);
            let (x, w) = ((2 * i as i64 + 1 - n) as f64, (2 * j as i64 + 1 - n) as f64);
            let (theta, phi) = match plane {
                Plane::Equatorial => (FRAC_PI_2, w.atan2(x)),
                Plane::Meridian => (
                    (w / x.hypot(w)).clamp(-1.0, 1.0).acos(),
                    if x >= 0.0 { 0.0 } else { PI },
                ),
            };
            pair.combine(lookup(key(i, j)), 0.0, theta, phi).norm_sqr()
        })
        .collect();
    Ok(IntensityMap {
        plane,
        grid_n,
        extent,
        cell,
        a0,
        values,
    })
}

/// Default map half-width: twice the orbit radius, in units of a₀.
pub fn default_extent(orbit: &OrbitSolution) -> f64 {
    2.0 * orbit.r / orbit.a0
}

/// The three polylines of the orbit picture at t = 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitWaveCurves {
    pub n: f64,
    pub r_n: f64,
    pub delta: f64,
    pub u0: f64,
    pub phi: Vec<f64>,
    /// rₙ + Δ Re u(0, rₙ, π/2, φ).
    pub total: Vec<[f64; 2]>,
    /// rₙ + Δ z₀ cos(nφ/b).
    pub phase_wave: Vec<[f64; 2]>,
    /// The orbit itself.
    pub circle: Vec<[f64; 2]>,
    /// Fewer than 8 m₊ samples.
    pub undersampled: bool,
    /// Distance between the first and last point of the total-field curve.
    pub closure_gap: f64,
    pub total_sign_changes: usize,
    pub phase_wave_sign_changes: usize,
    pub envelope_zero_crossings: usize,
}

/// Sign changes of a periodic sequence (last sample duplicates the first and
/// is ignored); exact zeros inherit the previous sign.
pub fn cyclic_sign_changes(values: &[f64]) -> usize {
    let body = &values[..values.len().saturating_sub(1)];
    let signs: Vec<bool> = {
        let mut last = body.iter().rev().find(|v| **v != 0.0).map(|v| *v > 0.0).unwrap_or(true);
        body.iter()
            .map(|&v| {
                if v != 0.0 {
                    last = v > 0.0;
                }
                last
            })
            .collect()
    };
    (0..signs.len())
        .filter(|&k| signs[k] != signs[(k + 1) % signs.len()])
        .count()
}

/// Total-field, phase-wave and orbit curves for `samples` points over one
/// revolution (φ = 0 and φ = 2π both included).
pub fn orbit_wave_curve(orbit: &OrbitSolution, u0: f64, delta: f64, samples: usize) -> Result<OrbitWaveCurves> {
    if samples < 3 {
        return Err(Error::param(
            "samples",
            format!("need at least 3 samples, got {samples}"),
        ));
    }
    let r_n = orbit.r;
    let phi: Vec<f64> = (0..samples)
        .map(|k| 2.0 * PI * k as f64 / (samples - 1) as f64)
        .collect();
    let polar = |rad: f64, p: f64| [rad * p.cos(), rad * p.sin()];
    let mut total_dev = Vec::with_capacity(samples);
    let mut phase_dev = Vec::with_capacity(samples);
    let mut envelope = Vec::with_capacity(samples);
    for &p in &phi {
        let s = field_on_orbit(orbit, u0, 0.0, p);
        total_dev.push(delta * s.value.re);
        phase_dev.push(delta * u0 * (orbit.n * p / orbit.b).cos());
        envelope.push(s.envelope);
    }
    let total: Vec<[f64; 2]> = phi.iter().zip(&total_dev).map(|(&p, &d)| polar(r_n + d, p)).collect();
    let phase_wave = phi.iter().zip(&phase_dev).map(|(&p, &d)| polar(r_n + d, p)).collect();
    let circle = phi.iter().map(|&p| polar(r_n, p)).collect();
    let first = total[0];
    let last = total[samples - 1];
    Ok(OrbitWaveCurves {
        n: orbit.n,
        r_n,
        delta,
        u0,
        undersampled: (samples as f64) < 8.0 * orbit.m_plus,
        closure_gap: (first[0] - last[0]).hypot(first[1] - last[1]),
        total_sign_changes: cyclic_sign_changes(&total_dev),
        phase_wave_sign_changes: cyclic_sign_changes(&phase_dev),
        envelope_zero_crossings: cyclic_sign_changes(&envelope),
        phi,
        total,
        phase_wave,
        circle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_change_counting() {
        let v: Vec<f64> = (0..=400).map(|k| (3.0 * 2.0 * PI * k as f64 / 400.0).cos()).collect();
        assert_eq!(cyclic_sign_changes(&v), 6);
        let w = [1.0, 0.0, -1.0, 0.0, 1.0, 1.0];
        assert_eq!(cyclic_sign_changes(&w), 2);
    }
}
