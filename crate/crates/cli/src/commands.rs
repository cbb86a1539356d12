use harnack_core::harmonic::{
    gradient_check, interval_gradient_check, random_bounded, random_into_interval, schwarz_deviation_check, DiskSpec, GradientRecords,
    HarmonicDiskFunction, IntervalRange, SweepOptions,
};
use harnack_core::harnack::{
    counterexample_remark, empirical_harnack_constant, harnack_constant_ball, harnack_metric, hg_upper_bound, log_growth_bound_ball,
    sphere_side_condition, DistortionParams, HarnackSampling, HgVariant, PoissonMixture,
};
use harnack_core::metrics::{self, quasihyperbolic, QuasihyperbolicOptions};
use harnack_core::sampling::{stream, unit_vector};
use harnack_core::{specfun, Domain, DomainKind, Point, SamplingBox, Summary, VerificationRecord};

use crate::report::{inputs, Cell, Report};
use crate::{
    CliError, Command, CounterexampleArgs, GeodesicArgs, GradientArgs, GradientFunction, HarnackArgs, MetricArgs, MetricKind, Outcome,
    RunConfig, SchwarzArgs, SchwarzFunction, SpecfunArgs, SpecialFunction,
};

type Output = Result<(Report, Outcome), CliError>;

pub(crate) fn execute(config: &RunConfig) -> Output {
    match &config.command {
        Command::Metric(a) => metric(config, a),
        Command::Geodesic(a) => geodesic(config, a),
        Command::Specfun(a) => specfun_cmd(config, a),
        Command::HarnackVerify(a) => harnack_verify(config, a),
        Command::SchwarzVerify(a) => schwarz_verify(config, a),
        Command::GradientVerify(a) => gradient_verify(config, a),
        Command::Counterexample(a) => counterexample(config, a),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Metric(_) => "metric",
        Command::Geodesic(_) => "geodesic",
        Command::Specfun(_) => "specfun",
        Command::HarnackVerify(_) => "harnack-verify",
        Command::SchwarzVerify(_) => "schwarz-verify",
        Command::GradientVerify(_) => "gradient-verify",
        Command::Counterexample(_) => "counterexample",
    }
}

fn or_default<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "default".to_string(), |v| v.to_string())
}

/// Report with the global configuration echoed into its header.
fn report(config: &RunConfig, columns: &[&str]) -> Report {
    let mut r = Report::new(columns);
    r.config("command", command_name(&config.command));
    r.config("seed", config.seed);
    r.config("samples", or_default(config.samples));
    r.config("tolerance", or_default(config.tolerance));
    r.config("output", config.output);
    r.config("resolution", config.resolution);
    r.config("cn", config.c_n);
    r.config("b", config.b);
    r.config("A", config.a);
    r.config("KI", config.k_i);
    r
}

/// Independent seed for stream family `tag`, member `i`.
fn sub_seed(seed: u64, tag: u64, i: usize) -> u64 {
    seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (i as u64).wrapping_mul(0xd1b5_4a32_d192_ed03)
}

fn parse_point(s: &str, what: &str) -> Result<Point, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("--{what}: {e}")))
}

fn parse_domain(s: &str) -> Result<Domain, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("--domain: {e}")))
}

fn solver_options(config: &RunConfig) -> Result<QuasihyperbolicOptions, CliError> {
    if config.resolution < 2 {
        return Err(CliError::Usage(format!("--resolution must be at least 2, got {}", config.resolution)));
    }
    Ok(QuasihyperbolicOptions::with_resolution(config.resolution))
}

fn distortion(config: &RunConfig, n: usize) -> Result<DistortionParams, CliError> {
    Ok(DistortionParams::new(1.0, n)?
        .with_inner_dilatation(config.k_i)?
        .with_uniformity(config.a)?
        .with_c_n(config.c_n)?
        .with_b(config.b)?)
}

fn metric(config: &RunConfig, a: &MetricArgs) -> Output {
    let domain = parse_domain(&a.domain)?;
    let x = parse_point(&a.x, "x")?;
    let y = parse_point(&a.y, "y")?;
    let mut r = report(config, &[]);
    r.config("domain", &domain);
    r.config("x", &a.x);
    r.config("y", &a.y);
    match a.kind {
        MetricKind::Rho => r.scalar("value", metrics::rho(&domain, &x, &y)?),
        MetricKind::J => r.scalar("value", metrics::j_metric(&domain, &x, &y)?),
        MetricKind::KLowerLogratio => r.scalar("value", metrics::k_lower_bound_logratio(&domain, &x, &y)?),
        MetricKind::KLowerLog1p => r.scalar("value", metrics::k_lower_bound_log1p(&domain, &x, &y)?),
        MetricKind::Harnack => r.scalar("value", harnack_metric(&domain, &x, &y)?),
        MetricKind::K => {
            let res = quasihyperbolic(&domain, &x, &y, &solver_options(config)?)?;
            r.scalar("value", res.value);
            r.scalar("diagnostics", serde_json::to_value(&res.diagnostics)?);
        }
        MetricKind::Bounds => {
            let j = metrics::j_metric(&domain, &x, &y)?;
            r.scalar("j", j);
            r.scalar("k_lower_logratio", metrics::k_lower_bound_logratio(&domain, &x, &y)?);
            r.scalar("k_lower_log1p", metrics::k_lower_bound_log1p(&domain, &x, &y)?);
            r.scalar("two_j", 2.0 * j);
            if matches!(domain.kind(), DomainKind::UnitBall | DomainKind::HalfSpace) {
                r.scalar("rho", metrics::rho(&domain, &x, &y)?);
            }
        }
    }
    Ok((r, Outcome::Passed))
}

fn geodesic(config: &RunConfig, a: &GeodesicArgs) -> Output {
    let domain = parse_domain(&a.domain)?;
    let x = parse_point(&a.x, "x")?;
    let y = parse_point(&a.y, "y")?;
    let res = quasihyperbolic(&domain, &x, &y, &solver_options(config)?)?;
    let mut columns = vec!["index".to_string()];
    columns.extend((1..=domain.dim()).map(|i| format!("x{i}")));
    let mut r = report(config, &[]).with_columns(columns);
    r.config("domain", &domain);
    r.config("x", &a.x);
    r.config("y", &a.y);
    r.scalar("value", res.value);
    r.scalar("length", res.path.length);
    r.scalar("diagnostics", serde_json::to_value(&res.diagnostics)?);
    for (i, v) in res.path.vertices.iter().enumerate() {
        let mut row = vec![Cell::from(i)];
        row.extend(v.coords().iter().map(|c| Cell::from(*c)));
        r.row(row);
    }
    Ok((r, Outcome::Passed))
}

fn required<T: Copy>(v: Option<T>, flag: &str, function: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--function {function} requires --{flag}")))
}

fn specfun_cmd(config: &RunConfig, a: &SpecfunArgs) -> Output {
    let mut r = report(config, &[]);
    let value = match a.function {
        SpecialFunction::EllipticK => {
            let x = required(a.r, "r", "elliptic-k")?;
            r.config("r", x);
            specfun::elliptic_k(x)?
        }
        SpecialFunction::Mu => {
            let x = required(a.r, "r", "mu")?;
            r.config("r", x);
            specfun::mu(x)?
        }
        SpecialFunction::MuInverse => {
            let y = required(a.y, "y", "mu-inverse")?;
            r.config("y", y);
            specfun::mu_inverse(y)?
        }
        SpecialFunction::Phi => {
            let k = required(a.k, "K", "phi")?;
            let x = required(a.r, "r", "phi")?;
            r.config("K", k);
            r.config("r", x);
            specfun::phi_k(k, x)?
        }
        SpecialFunction::C => {
            let k = required(a.k, "K", "c")?;
            r.config("K", k);
            specfun::c_of_k(k)?
        }
        SpecialFunction::Omega => {
            let n = required(a.n, "n", "omega")?;
            r.config("n", n);
            specfun::sphere_surface_area(n)?
        }
    };
    r.scalar("value", value);
    Ok((r, Outcome::Passed))
}

const RECORD_COLUMNS: [&str; 7] = ["index", "check", "inputs", "lhs", "rhs", "margin", "pass"];

fn labelled(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Verification report over named checks, in emission order.
fn record_report(mut r: Report, records: Vec<(&'static str, VerificationRecord)>) -> (Report, Outcome) {
    for (i, (check, rec)) in records.iter().enumerate() {
        r.row(vec![
            Cell::from(i),
            Cell::from(*check),
            Cell::from(inputs(rec)),
            Cell::from(rec.lhs),
            Cell::from(rec.rhs),
            Cell::from(rec.margin),
            Cell::from(rec.pass),
        ]);
    }
    let summary = Summary::of(records.iter().map(|(_, rec)| rec));
    let outcome = Outcome::from_pass(summary.all_passed());
    r.summary(summary);
    (r, outcome)
}

fn harnack_domain(literal: &str) -> Result<Domain, CliError> {
    let domain = parse_domain(literal)?;
    match domain.kind() {
        DomainKind::UnitBall => Ok(domain),
        DomainKind::HalfSpace if domain.sampling_box().is_some() => Ok(domain),
        DomainKind::HalfSpace => {
            // [-1, 1]^{n-1} x (0, 2]
            let n = domain.dim();
            let mut lo = vec![-1.0; n];
            let mut hi = vec![1.0; n];
            lo[n - 1] = 0.0;
            hi[n - 1] = 2.0;
            Ok(domain.with_sampling_box(SamplingBox::new(lo, hi)?)?)
        }
        _ => Err(CliError::Usage(format!("harnack-verify needs a ball or half-space domain, got {domain}"))),
    }
}

fn harnack_verify(config: &RunConfig, a: &HarnackArgs) -> Output {
    let domain = harnack_domain(&a.domain)?;
    if a.functions == 0 {
        return Err(CliError::Usage("--functions must be at least 1".into()));
    }
    let (n, s) = (domain.dim(), a.s);
    let c = harnack_constant_ball(s, n)?;
    let log_c = c.ln();
    let slack = config.tolerance.unwrap_or(1e-9);
    let samples = config.samples.unwrap_or(100);
    let ball = matches!(domain.kind(), DomainKind::UnitBall);

    let mut r = report(config, &RECORD_COLUMNS);
    r.config("domain", &domain);
    r.config("s", s);
    r.config("functions", a.functions);
    r.config("terms", a.terms);
    r.config("centers", a.centers);
    r.scalar("C", c);

    let functions: Vec<PoissonMixture> = (0..a.functions)
        .map(|i| PoissonMixture::random(&domain, a.terms, sub_seed(config.seed, 1, i)))
        .collect::<Result<_, _>>()?;
    let mut records = Vec::new();

    for (i, u) in functions.iter().enumerate() {
        let sampling = HarnackSampling {
            centers: a.centers,
            seed: sub_seed(config.seed, 2, i),
            ..HarnackSampling::default()
        };
        let emp = empirical_harnack_constant(|p: &Point| u.eval(p.coords()), &domain, s, &sampling)?;
        records.push(("harnack-constant", VerificationRecord::check(labelled(&[("function", i as f64)]), emp.value, c, slack * c)));
    }

    if samples > 0 {
        let xs = domain.sample_interior(samples, sub_seed(config.seed, 3, 0), 0.05)?;
        let ys = domain.sample_interior(samples, sub_seed(config.seed, 3, 1), 0.05)?;
        for (j, (x, y)) in xs.iter().zip(&ys).enumerate() {
            let fi = j % functions.len();
            let u = &functions[fi];
            let rho = metrics::rho(&domain, x, y)?;
            let h = harnack_metric(&domain, x, y)?;
            let log_ratio = (u.eval(x.coords()) / u.eval(y.coords())).ln();
            let tag = labelled(&[("pair", j as f64), ("function", fi as f64), ("rho", rho)]);
            let rel = |v: f64| slack * (1.0 + v.abs());

            if ball {
                let g = log_growth_bound_ball(s, c, rho)?;
                records.push(("growth", VerificationRecord::check(tag.clone(), log_ratio, g, rel(g))));
            }
            let bh = hg_upper_bound(s, c, rho, HgVariant::BallHalfSpace)?;
            records.push(("hg-function", VerificationRecord::check(tag.clone(), log_ratio.abs(), bh, rel(bh))));
            records.push(("hg-ball-halfspace", VerificationRecord::check(tag.clone(), h, bh, rel(bh))));
            // k >= max(j, rho/2) on the ball and k = rho on the half-space
            let k_lb = if ball { metrics::j_metric(&domain, x, y)?.max(0.5 * rho) } else { rho };
            let gen = hg_upper_bound(s, c, k_lb, HgVariant::General)?;
            records.push(("hg-general", VerificationRecord::check(tag, log_ratio.abs(), gen, rel(gen))));

            // a point on the sphere S(x, s d(x))
            let dir = unit_vector(&mut stream(sub_seed(config.seed, 4, 0), j as u64), n);
            let rad = s * domain.dist_to_boundary(x)?;
            let z = Point::new(x.coords().iter().zip(&dir).map(|(c, d)| c + rad * d).collect())?;
            let rho_z = metrics::rho(&domain, x, &z)?;
            let tag = labelled(&[("pair", j as f64), ("function", fi as f64), ("rho", rho_z)]);
            let lz = (u.eval(x.coords()) / u.eval(z.coords())).ln();
            records.push(("sphere", VerificationRecord::check(tag.clone(), lz, log_c, rel(log_c))));
            let side = VerificationRecord::check(tag, s, rho_z.exp_m1(), 0.0);
            let side = VerificationRecord {
                pass: sphere_side_condition(s, rho_z),
                ..side
            };
            records.push(("sphere-side", side));
        }
    }
    Ok(record_report(r, records))
}

const SWEEP_COLUMNS: [&str; 6] = ["z_re", "z_im", "lhs", "rhs", "margin", "pass"];

fn sweep_row(rec: &VerificationRecord) -> Vec<Cell> {
    vec![
        Cell::from(rec.input("z_re").unwrap_or(f64::NAN)),
        Cell::from(rec.input("z_im").unwrap_or(f64::NAN)),
        Cell::from(rec.lhs),
        Cell::from(rec.rhs),
        Cell::from(rec.margin),
        Cell::from(rec.pass),
    ]
}

fn sweep_report(mut r: Report, records: &[VerificationRecord]) -> (Report, Outcome) {
    for rec in records {
        r.row(sweep_row(rec));
    }
    let summary = Summary::of(records);
    let outcome = Outcome::from_pass(summary.all_passed());
    r.summary(summary);
    (r, outcome)
}

fn sweep_options(config: &RunConfig) -> SweepOptions {
    SweepOptions {
        samples: config.samples.unwrap_or(1000),
        seed: config.seed,
        slack: config.tolerance.unwrap_or(1e-8),
        ..SweepOptions::default()
    }
}

fn schwarz_verify(config: &RunConfig, a: &SchwarzArgs) -> Output {
    let center = parse_point(&a.center, "center")?;
    let &[cx, cy] = center.coords() else {
        return Err(CliError::Usage(format!("--center must be a planar point, got {}", a.center)));
    };
    let disk = DiskSpec::new([cx, cy], a.radius, a.m)?;
    let functions: Vec<HarmonicDiskFunction> = match a.function {
        SchwarzFunction::U0 => vec![HarmonicDiskFunction::extremal_u0(disk)],
        SchwarzFunction::Constant => vec![HarmonicDiskFunction::constant(disk, 0.5 * a.m)],
        SchwarzFunction::Random => (0..a.functions.max(1))
            .map(|i| random_bounded(disk, a.degree, sub_seed(config.seed, 5, i)))
            .collect::<Result<_, _>>()?,
    };
    let opts = sweep_options(config);
    let mut r = report(config, &SWEEP_COLUMNS);
    r.config("function", format!("{:?}", a.function).to_lowercase());
    r.config("functions", functions.len());
    r.config("center", &a.center);
    r.config("radius", a.radius);
    r.config("M", a.m);
    r.config("degree", a.degree);
    r.config("row_order", "function-major");
    let mut records = Vec::new();
    for f in &functions {
        records.extend(schwarz_deviation_check(f, &opts)?);
    }
    Ok(sweep_report(r, &records))
}

fn gradient_verify(config: &RunConfig, a: &GradientArgs) -> Output {
    let range = IntervalRange::new(a.alpha, a.beta)?;
    let disk = DiskSpec::unit();
    let canonical = a.alpha == -1.0 && a.beta == 1.0;
    let u = match a.function {
        GradientFunction::U0 => HarmonicDiskFunction::extremal_u0(disk),
        GradientFunction::Ell => HarmonicDiskFunction::extremal_ell(disk, range),
        GradientFunction::Random => random_into_interval(disk, &range, a.degree, sub_seed(config.seed, 6, 0))?,
    };
    let opts = sweep_options(config);
    let pairs: Vec<GradientRecords> = if canonical {
        gradient_check(&u, &opts)?
    } else {
        interval_gradient_check(&u, &range, &opts)?
    };
    let mut r = report(config, &SWEEP_COLUMNS);
    r.config("function", format!("{:?}", a.function).to_lowercase());
    r.config("alpha", a.alpha);
    r.config("beta", a.beta);
    r.config("degree", a.degree);
    r.config("row_order", "gradient<=cosine,cosine<=quadratic");
    let records: Vec<VerificationRecord> = pairs.into_iter().flat_map(|g| [g.cosine, g.quadratic]).collect();
    Ok(sweep_report(r, &records))
}

fn counterexample(config: &RunConfig, a: &CounterexampleArgs) -> Output {
    let params = distortion(config, a.n)?;
    let table = counterexample_remark(a.pmax, a.s, &params)?;
    let mut r = report(config, &["p", "log_lhs", "rhs", "pass"]);
    r.config("pmax", a.pmax);
    r.config("s", a.s);
    r.config("n", a.n);
    if let Some(row) = table.rows.first() {
        r.scalar("log_rhs", row.log_rhs);
    }
    r.scalar("p0", table.p0.map_or(Cell::from("none"), Cell::from));
    for row in &table.rows {
        r.row(vec![Cell::from(row.p), Cell::from(row.log_lhs), Cell::from(row.rhs()), Cell::from(row.pass)]);
    }
    let records: Vec<VerificationRecord> = table.rows.iter().map(|row| row.record()).collect();
    r.summary(Summary::of(&records));
    // the reproduction succeeds when the bound is seen to fail
    Ok((r, Outcome::from_pass(table.p0.is_some())))
}
