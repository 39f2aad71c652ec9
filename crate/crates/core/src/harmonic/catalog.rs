use crate::error::{Error, Result};
use crate::series::{rational_expand, Complex, PowerSeries};

use super::HarmonicMap;

/// A named map together with where it comes from.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub map: HarmonicMap,
    pub provenance: &'static str,
}

/// Static description of a catalog family.
#[derive(Clone, Copy, Debug)]
pub struct CatalogInfo {
    pub name: &'static str,
    /// A concrete, parseable name for this family.
    pub example: &'static str,
    pub provenance: &'static str,
}

pub const CATALOG: &[CatalogInfo] = &[
    CatalogInfo {
        name: "identity",
        example: "identity",
        provenance: "the identity map z",
    },
    CatalogInfo {
        name: "f0",
        example: "f0",
        provenance: "half-plane map h0 = (2z - z^2)/(2(1-z)^2), g0 = -z^2/(2(1-z)^2); \
                     vertical shear of z/(1-z) with dilatation -z, onto Re w > -1/2",
    },
    CatalogInfo {
        name: "koebe_harmonic",
        example: "koebe_harmonic",
        provenance: "harmonic Koebe map h = (z - z^2/2 + z^3/6)/(1-z)^3, \
                     g = (z^2/2 + z^3/6)/(1-z)^3",
    },
    CatalogInfo {
        name: "sixgon",
        example: "sixgon",
        provenance: "6-gon map h = z + sum_{n>=1} z^(6n+1)/(6n+1), \
                     g = -sum_{n>=1} z^(6n-1)/(6n-1)",
    },
    CatalogInfo {
        name: "pzhalf",
        example: "pzhalf",
        provenance: "z + conj(z)^2 / 2, in P_H^0 but not convex",
    },
    CatalogInfo {
        name: "example1(a,beta)",
        example: "example1(0.8,0)",
        provenance: "z + a(1-beta) conj(z)^2: in G_H^0(beta) iff |a| <= 1, \
                     univalent iff |a| <= 1/(2(1-beta)); also example1(re,im,beta)",
    },
    CatalogInfo {
        name: "geometric",
        example: "geometric",
        provenance: "analytic z/(1-z); its sections are s_n(z) = z + ... + z^n",
    },
];

/// Builds the named map truncated at `degree`.
pub fn catalog(name: &str, degree: usize) -> Result<HarmonicMap> {
    catalog_entry(name, degree).map(|e| e.map)
}

pub fn catalog_entry(name: &str, degree: usize) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogName(name.to_string());
    if degree < 1 {
        return Err(Error::InvalidConfig(
            "catalog degree must be at least 1".into(),
        ));
    }
    let trimmed = name.trim();
    let (family, map) = if let Some(args) = trimmed
        .strip_prefix("example1(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let nums = args
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| unknown())?;
        let (a, beta) = match nums[..] {
            [a, beta] => (Complex::new(a, 0.0), beta),
            [re, im, beta] => (Complex::new(re, im), beta),
            _ => return Err(unknown()),
        };
        ("example1(a,beta)", example1(a, beta, degree)?)
    } else {
        let map = match trimmed {
            "identity" => HarmonicMap::identity(degree),
            "f0" => f0(degree)?,
            "koebe_harmonic" => koebe_harmonic(degree)?,
            "sixgon" => sixgon(degree)?,
            "pzhalf" => {
                let g = PowerSeries::monomial(Complex::new(0.5, 0.0), 2, degree).truncated(degree);
                HarmonicMap::new(PowerSeries::identity(degree), g)?
            }
            "geometric" => {
                HarmonicMap::analytic(rational_expand(&[0.0, 1.0], &[1.0, -1.0], degree)?)?
            }
            _ => return Err(unknown()),
        };
        (trimmed, map)
    };
    let info = CATALOG
        .iter()
        .find(|i| i.name == family)
        .expect("every family is listed");
    Ok(CatalogEntry {
        name: trimmed.to_string(),
        map,
        provenance: info.provenance,
    })
}

fn f0(degree: usize) -> Result<HarmonicMap> {
    let h = rational_expand(&[0.0, 2.0, -1.0], &[2.0, -4.0, 2.0], degree)?;
    let g = rational_expand(&[0.0, 0.0, -1.0], &[2.0, -4.0, 2.0], degree)?;
    HarmonicMap::new(h, g)
}

// Closed-form coefficients `h_n = (n+1)(2n+1)/6`, `g_n = (n-1)(2n-1)/6`
// round once each; expanding the quotient by `(1-z)^3` accumulates error.
fn koebe_harmonic(degree: usize) -> Result<HarmonicMap> {
    let coeff = |n: usize, p: f64, q: f64| {
        let n = n as f64;
        if n == 0.0 {
            0.0
        } else {
            (n + p) * (2.0 * n + q) / 6.0
        }
    };
    let h: Vec<f64> = (0..=degree).map(|n| coeff(n, 1.0, 1.0)).collect();
    let g: Vec<f64> = (0..=degree).map(|n| coeff(n, -1.0, -1.0)).collect();
    HarmonicMap::new(PowerSeries::from_real(&h)?, PowerSeries::from_real(&g)?)
}

// Sums start at n = 1: this is the indexing under which the convolution
// with f0 has dilatation z^4 (2 + z^6) / (1 + 2 z^6).
fn sixgon(degree: usize) -> Result<HarmonicMap> {
    let mut h = vec![0.0; degree + 1];
    let mut g = vec![0.0; degree + 1];
    h[1] = 1.0;
    for n in 1.. {
        let (up, down) = (6 * n + 1, 6 * n - 1);
        if down > degree {
            break;
        }
        g[down] = -1.0 / down as f64;
        if up <= degree {
            h[up] = 1.0 / up as f64;
        }
    }
    HarmonicMap::new(PowerSeries::from_real(&h)?, PowerSeries::from_real(&g)?)
}

/// `z + a(1-β) conj(z)^2`; the stored coefficient is `conj(a)(1-β)`.
fn example1(a: Complex, beta: f64, degree: usize) -> Result<HarmonicMap> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidConfig(format!(
            "example1 needs 0 <= beta < 1, got {beta}"
        )));
    }
    let g = PowerSeries::monomial(a.conj() * (1.0 - beta), 2, degree).truncated(degree);
    HarmonicMap::new(PowerSeries::identity(degree), g)
}
