use std::f64::consts::PI;

use parityprobe::analytic::{detector_report, report};
use parityprobe::optimize::{
    landmark_phase, minimize_qcr, optimized_scan_phi, precision_vs_photons, scan_phi, table1,
};
use parityprobe::{crosscheck, ProbeConfig};

use crate::args::{Command, Format, OutputArgs};
use crate::error::CliError;
use crate::output::{self, Sink};

fn sink_and_format(out: &OutputArgs, default: Format) -> Result<(Sink, Format), CliError> {
    Ok((
        Sink::open(out.output.as_deref())?,
        out.format.unwrap_or(default),
    ))
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Report { probe, eta, out } => {
            let cfg = probe.merge()?.config()?;
            log::debug!("report at {:?}", cfg.settings());
            let rep = report(&cfg)?;
            let det = eta.map(|e| detector_report(&cfg, e)).transpose()?;
            let (sink, format) = sink_and_format(&out, Format::Json)?;
            output::write_report(sink, format, &cfg.settings(), &rep, det.as_ref(), None)
        }
        Command::Scan { probe, grid, out } => {
            let m = probe.merge()?;
            if m.phi.is_some() {
                return Err(CliError::Invalid(
                    "scan takes --phi-min/--phi-max/--points, not --phi".into(),
                ));
            }
            let phis = grid.resolve()?;
            let s2_db = m.s2_db()?;
            let rows = scan_phi(m.k()?, m.s_db()?, s2_db, m.big_b()?, &phis)?;
            let (sink, format) = sink_and_format(&out, Format::Csv)?;
            output::write_curve(sink, format, &rows, s2_db)
        }
        Command::Optimize {
            probe,
            curve,
            grid,
            bounds,
            out,
        } => {
            let m = probe.merge()?;
            if m.s_db.is_some() || m.big_b.is_some() {
                return Err(CliError::Invalid(
                    "optimize searches over S and B; do not fix --s-db or --B".into(),
                ));
            }
            let (k, s2_db, bounds) = (m.k()?, m.s2_db()?, bounds.resolve()?);
            if curve {
                if m.phi.is_some() {
                    return Err(CliError::Invalid(
                        "--curve scans the phase grid; drop --phi".into(),
                    ));
                }
                let rows = optimized_scan_phi(k, s2_db, &grid.resolve()?, &bounds)?;
                let (sink, format) = sink_and_format(&out, Format::Csv)?;
                output::write_curve(sink, format, &rows, s2_db)
            } else {
                let phi = m.phi()?;
                let opt = minimize_qcr(k, s2_db, phi, &bounds)?;
                let cfg = ProbeConfig::from_db(opt.best_s_db, s2_db, opt.best_big_b, k, phi)?;
                let rep = report(&cfg)?;
                let (sink, format) = sink_and_format(&out, Format::Json)?;
                output::write_report(sink, format, &cfg.settings(), &rep, None, Some(&opt))
            }
        }
        Command::Fig5 {
            k,
            s2_db,
            phi_star_pi,
            deltas,
            bounds,
            out,
        } => {
            let phi_star = phi_star_pi.map_or_else(|| landmark_phase(k), |m| m * PI);
            let rows = precision_vs_photons(k, s2_db, phi_star, &deltas, &bounds.resolve()?)?;
            let (sink, format) = sink_and_format(&out, Format::Csv)?;
            output::write_curve(sink, format, &rows, s2_db)
        }
        Command::Table1 { s2_db, bounds, out } => {
            let rows = table1(s2_db, &bounds.resolve()?)?;
            let (sink, format) = sink_and_format(&out, Format::Csv)?;
            output::write_table(sink, format, &rows)
        }
        Command::OracleCheck { quick, out } => {
            let grid = crosscheck::equivalence_grid(quick);
            let dev = crosscheck::compare(&grid)?;
            let pass = dev.within_tolerance();
            let (sink, format) = sink_and_format(&out, Format::Json)?;
            output::write_deviations(sink, format, &dev, pass)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!(
                    "max moment deviation {:e} (limit {:e}), qfi {:e} (limit {:e})",
                    dev.max_moment(),
                    crosscheck::MOMENT_TOLERANCE,
                    dev.qfi,
                    crosscheck::QFI_TOLERANCE
                )))
            }
        }
    }
}
