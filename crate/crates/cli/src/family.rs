//! Families addressable from the command line, as real-parameter maps (for
//! pullbacks, norms and distances) and as Hermitian metric fields on complex
//! charts (for metrics and curvature).

use clap::{Args, ValueEnum};
use cs_geometry::coherent::{
    default_disc_cutoff, default_glauber_cutoff, glauber_state, indefinite_su11_signature,
    indefinite_su11_state, su11_perelomov, su1k_state, su2_state, su3_state, suk_state,
    CoherentParameters,
};
use cs_geometry::geometry::diff::{from_real, to_real};
use cs_geometry::geometry::{
    fs_metric_chart, fs_potential, hyperbolic_metric_chart, hyperbolic_potential, kahler_metric,
    pullback_hermitian, pullback_metric, MetricTensor,
};
use cs_geometry::projective::to_inhomogeneous;
use cs_geometry::veronese::veronese_embed;
use cs_geometry::{ChartPoint, Complex64, Error, InnerProductSpace, Result, StateVector};
use nalgebra::DMatrix;

use crate::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Glauber,
    Su2,
    Su3,
    Suk,
    Su11,
    Su1k,
    IndefiniteSu11,
    /// Unnormalised degree-N Veronese image of the chart point (1, ζ).
    Veronese,
    /// `CP^k` itself in the standard chart, metric scaled by N.
    Fs,
    /// `CH^k` in the unit-ball chart, metric scaled by N.
    Hyperbolic,
}

impl Family {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Degree N, or the metric scale for fs and hyperbolic.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// SU(3) second polar angle.
    #[arg(long, allow_hyphen_values = true)]
    pub varphi: Option<f64>,
    /// SU(3) phase angle.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Real angle for su3; complex disk point(s) for su11 and su1k.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Glauber amplitudes a_1,...,a_M.
    #[arg(long, allow_hyphen_values = true)]
    pub amplitudes: Option<String>,
    /// Homogeneous point for suk.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Chart coordinates for suk, veronese, fs and hyperbolic.
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<String>,
}

fn missing(flag: &str, family: Family) -> Error {
    Error::Usage(format!("--{flag} is required for family {}", family.name()))
}

fn parsed<T>(r: std::result::Result<T, String>) -> Result<T> {
    r.map_err(Error::Usage)
}

type RealMap = Box<dyn Fn(&[f64]) -> Result<StateVector> + Send + Sync>;

/// Real parameters, their names and the map they feed.
pub struct RealModel {
    pub names: Vec<String>,
    pub at: Vec<f64>,
    pub space: InnerProductSpace,
    /// Multiplies the induced metric (fs/hyperbolic scale).
    pub scale: f64,
    map: RealMap,
}

impl RealModel {
    pub fn state(&self) -> Result<StateVector> {
        (self.map)(&self.at)
    }

    pub fn pullback(&self, step: f64) -> Result<DMatrix<f64>> {
        Ok(pullback_metric(&*self.map, &self.at, &self.space, step)? * self.scale)
    }
}

type Field = Box<dyn Fn(&[Complex64]) -> Result<MetricTensor> + Send + Sync>;

fn complex_names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k)
        .flat_map(|i| [format!("{prefix}{i}.re"), format!("{prefix}{i}.im")])
        .collect()
}

impl FamilyArgs {
    fn n(&self) -> Result<u32> {
        let n = self.n.ok_or_else(|| missing("n", self.family))?;
        if n == 0 {
            return Err(Error::Usage("--n must be >= 1".into()));
        }
        Ok(n)
    }

    fn scale(&self) -> f64 {
        f64::from(self.n.unwrap_or(1))
    }

    fn real(&self, value: Option<f64>, flag: &str) -> Result<f64> {
        value.ok_or_else(|| missing(flag, self.family))
    }

    fn complex_list(&self, value: &Option<String>, flag: &str) -> Result<Vec<Complex64>> {
        let text = value.as_ref().ok_or_else(|| missing(flag, self.family))?;
        let v = parsed(parse::complex_vec(text))?;
        if v.is_empty() {
            return Err(Error::Usage(format!("--{flag} must not be empty")));
        }
        Ok(v)
    }

    fn xi_real(&self) -> Result<f64> {
        let text = self.xi.as_ref().ok_or_else(|| missing("xi", self.family))?;
        text.trim()
            .parse()
            .map_err(|_| Error::Usage(format!("--xi must be a real angle for su3, got '{text}'")))
    }

    /// Chart coordinates: `--zeta`, or the standard-chart image of `--point`.
    pub fn chart(&self) -> Result<Vec<Complex64>> {
        if self.zeta.is_some() {
            return self.complex_list(&self.zeta, "zeta");
        }
        if self.point.is_some() {
            let p = StateVector::new(self.complex_list(&self.point, "point")?)?;
            return Ok(to_inhomogeneous(&p, 0)?.coords().to_vec());
        }
        Err(missing("zeta", self.family))
    }

    /// Validated coherent-state parameters for the seven coherent families.
    pub fn coherent(&self) -> Result<CoherentParameters> {
        match self.family {
            Family::Glauber => {
                CoherentParameters::glauber(self.complex_list(&self.amplitudes, "amplitudes")?)
            }
            Family::Su2 => CoherentParameters::su2(
                self.real(self.theta, "theta")?,
                self.real(self.phi, "phi")?,
                self.n()?,
            ),
            Family::Su3 => CoherentParameters::su3(
                self.real(self.theta, "theta")?,
                self.real(self.varphi, "varphi")?,
                self.xi_real()?,
                self.real(self.eta, "eta")?,
                self.n()?,
            ),
            Family::Suk => {
                let point = match &self.point {
                    Some(_) => StateVector::new(self.complex_list(&self.point, "point")?)?,
                    None => ChartPoint::standard(self.chart()?)?.lift(),
                };
                CoherentParameters::suk(point, self.n()?)
            }
            Family::Su11 => {
                let xi = self.complex_list(&self.xi, "xi")?;
                if xi.len() != 1 {
                    return Err(Error::Usage(
                        "su11 takes a single complex --xi; use su1k for vectors".into(),
                    ));
                }
                CoherentParameters::su11(xi[0])
            }
            Family::Su1k => CoherentParameters::su1k(self.complex_list(&self.xi, "xi")?),
            Family::IndefiniteSu11 => CoherentParameters::indefinite_su11(
                self.real(self.tau, "tau")?,
                self.real(self.phi, "phi")?,
                self.n()?,
            ),
            other => Err(Error::Usage(format!(
                "{} is not a coherent-state family",
                other.name()
            ))),
        }
    }

    pub fn real_model(&self, cutoff: Option<u32>) -> Result<RealModel> {
        let definite = |dim: usize| InnerProductSpace::definite(dim);
        let model = |names: Vec<String>, at: Vec<f64>, space, scale, map: Box<_>| RealModel {
            names,
            at,
            space,
            scale,
            map,
        };
        match self.family {
            Family::Glauber => {
                let a = self.complex_list(&self.amplitudes, "amplitudes")?;
                let cutoff = cutoff.unwrap_or_else(|| default_glauber_cutoff(&a));
                let dim = glauber_state(&a, cutoff)?.len();
                Ok(model(
                    complex_names("a", a.len()),
                    to_real(&a),
                    definite(dim)?,
                    1.0,
                    Box::new(move |x| Ok(glauber_state(&from_real(x), cutoff)?.to_state_vector())),
                ))
            }
            Family::Su2 => {
                self.coherent()?;
                let n = self.n()?;
                Ok(model(
                    vec!["theta".into(), "phi".into()],
                    vec![self.real(self.theta, "theta")?, self.real(self.phi, "phi")?],
                    definite(n as usize + 1)?,
                    1.0,
                    Box::new(move |x| su2_state(x[0], x[1], n)),
                ))
            }
            Family::Su3 => {
                self.coherent()?;
                let n = self.n()?;
                let dim = ((n as usize + 1) * (n as usize + 2)) / 2;
                Ok(model(
                    ["theta", "varphi", "xi", "eta"].map(String::from).to_vec(),
                    vec![
                        self.real(self.theta, "theta")?,
                        self.real(self.varphi, "varphi")?,
                        self.xi_real()?,
                        self.real(self.eta, "eta")?,
                    ],
                    definite(dim)?,
                    1.0,
                    Box::new(move |x| su3_state(x[0], x[1], x[2], x[3], n)),
                ))
            }
            Family::Suk | Family::Veronese => {
                let zeta = self.chart()?;
                let n = self.n()?;
                let dim = veronese_embed(&ChartPoint::standard(zeta.clone())?.lift(), n)?.len();
                let map: RealMap = if self.family == Family::Suk {
                    Box::new(move |x| suk_state(&ChartPoint::standard(from_real(x))?.lift(), n))
                } else {
                    Box::new(move |x| {
                        veronese_embed(&ChartPoint::standard(from_real(x))?.lift(), n)
                    })
                };
                Ok(model(
                    complex_names("zeta", zeta.len()),
                    to_real(&zeta),
                    definite(dim)?,
                    1.0,
                    map,
                ))
            }
            Family::Fs | Family::Hyperbolic => {
                let zeta = self.chart()?;
                let k = zeta.len();
                let space = if self.family == Family::Fs {
                    definite(k + 1)?
                } else {
                    InnerProductSpace::hyperbolic(k)?
                };
                if self.family == Family::Hyperbolic {
                    hyperbolic_metric_chart(&zeta)?;
                }
                Ok(model(
                    complex_names("zeta", k),
                    to_real(&zeta),
                    space,
                    self.scale(),
                    Box::new(|x| Ok(ChartPoint::standard(from_real(x))?.lift())),
                ))
            }
            Family::Su11 => {
                let CoherentParameters::Su11 { xi } = self.coherent()? else {
                    unreachable!()
                };
                let cutoff = cutoff.unwrap_or_else(|| default_disc_cutoff(xi.norm_sqr()));
                Ok(model(
                    vec!["xi.re".into(), "xi.im".into()],
                    vec![xi.re, xi.im],
                    definite(cutoff as usize)?,
                    1.0,
                    Box::new(move |x| su11_perelomov(Complex64::new(x[0], x[1]), cutoff)),
                ))
            }
            Family::Su1k => {
                let CoherentParameters::Su1k { xi } = self.coherent()? else {
                    unreachable!()
                };
                let r2: f64 = xi.iter().map(|z| z.norm_sqr()).sum();
                let cutoff = cutoff.unwrap_or_else(|| default_disc_cutoff(r2));
                let dim = su1k_state(&xi, cutoff)?.len();
                Ok(model(
                    complex_names("xi", xi.len()),
                    to_real(&xi),
                    definite(dim)?,
                    1.0,
                    Box::new(move |x| Ok(su1k_state(&from_real(x), cutoff)?.to_state_vector())),
                ))
            }
            Family::IndefiniteSu11 => {
                self.coherent()?;
                let n = self.n()?;
                Ok(model(
                    vec!["tau".into(), "phi".into()],
                    vec![self.real(self.tau, "tau")?, self.real(self.phi, "phi")?],
                    indefinite_su11_signature(n)?,
                    1.0,
                    Box::new(move |x| indefinite_su11_state(x[0], x[1], n)),
                ))
            }
        }
    }

    /// Chart point and Hermitian metric field for families with a complex chart.
    pub fn hermitian_field(
        &self,
        cutoff: Option<u32>,
        step: f64,
    ) -> Result<(Vec<Complex64>, Field)> {
        let scale = self.scale();
        match self.family {
            Family::Fs => Ok((self.chart()?, Box::new(move |z| Ok(fs_metric_chart(z)?.scaled(scale))))),
            Family::Hyperbolic => Ok((self.chart()?, Box::new(move |z| Ok(hyperbolic_metric_chart(z)?.scaled(scale))))),
            Family::Suk | Family::Veronese | Family::Glauber | Family::Su11 | Family::Su1k => {
                let model = self.real_model(cutoff)?;
                let zeta = from_real(&model.at);
                let RealModel { space, map, .. } = model;
                let field: Field = Box::new(move |z| {
                    let holo = |w: &[Complex64]| map(&to_real(w));
                    pullback_hermitian(&holo, z, &space, step)
                });
                Ok((zeta, field))
            }
            other => Err(Error::Usage(format!(
                "family {} has no complex chart here; use the pullback subcommand for its real metric",
                other.name()
            ))),
        }
    }

    /// Metric from the Kähler potential by finite differences (fs, hyperbolic).
    pub fn potential_metric(&self, step: f64) -> Result<MetricTensor> {
        let zeta = self.chart()?;
        match self.family {
            Family::Fs => kahler_metric(&fs_potential(self.scale()), &zeta, step),
            Family::Hyperbolic => {
                hyperbolic_metric_chart(&zeta)?;
                kahler_metric(&hyperbolic_potential(self.scale()), &zeta, step)
            }
            other => Err(Error::Usage(format!(
                "--potential applies to fs and hyperbolic, not {}",
                other.name()
            ))),
        }
    }

    /// Replaces one named parameter by `value`. Complex-vector parameters
    /// have their first component replaced by the real number `value`.
    pub fn with(&self, name: &str, value: f64) -> Result<FamilyArgs> {
        let mut next = self.clone();
        let first = |text: &Option<String>| -> Result<Option<String>> {
            let mut v = match text {
                Some(t) => parsed(parse::complex_vec(t))?,
                None => Vec::new(),
            };
            if v.is_empty() {
                v.push(Complex64::new(value, 0.0));
            } else {
                v[0] = Complex64::new(value, 0.0);
            }
            Ok(Some(
                v.iter()
                    .map(|z| format!("{}{:+}i", z.re, z.im))
                    .collect::<Vec<_>>()
                    .join(","),
            ))
        };
        match name {
            "n" => {
                if value < 1.0 || value.fract() != 0.0 || value > f64::from(u32::MAX) {
                    return Err(Error::Usage(format!("n must be a positive integer, got {value}")));
                }
                next.n = Some(value as u32);
            }
            "theta" => next.theta = Some(value),
            "phi" => next.phi = Some(value),
            "varphi" => next.varphi = Some(value),
            "eta" => next.eta = Some(value),
            "tau" => next.tau = Some(value),
            "xi" if self.family == Family::Su3 => next.xi = Some(value.to_string()),
            "xi" => next.xi = first(&self.xi)?,
            "zeta" => next.zeta = first(&self.zeta)?,
            "amplitudes" => next.amplitudes = first(&self.amplitudes)?,
            other => {
                return Err(Error::Usage(format!(
                    "cannot vary '{other}'; expected n, theta, phi, varphi, eta, tau, xi, zeta or amplitudes"
                )))
            }
        }
        Ok(next)
    }
}
