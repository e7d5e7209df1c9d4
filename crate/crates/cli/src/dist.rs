use tridiag_spectra::{EntryDistribution, EntryLaw, RealizedTriple};

use crate::args::DistArgs;
use crate::CliError;

/// Parses `--dist` together with `--sym`/`--nonsym`.
///
/// A symmetric point mass takes `x,y` or `x,y,z` with `z = y`.
pub fn parse_distribution(args: &DistArgs) -> Result<EntryDistribution, CliError> {
    let symmetric = args.sym;
    let spec = args.dist.trim();
    let law = match spec {
        "rademacher" => EntryLaw::Rademacher,
        "gaussian" | "normal" => EntryLaw::StandardNormal,
        "cauchy" => EntryLaw::StandardCauchy,
        _ => match spec.strip_prefix("pointmass:") {
            Some(values) => EntryLaw::PointMass(parse_point(values, symmetric)?),
            None => return Err(CliError::Usage(format!("unknown distribution '{spec}'"))),
        },
    };
    Ok(if symmetric {
        EntryDistribution::symmetric(law)
    } else {
        EntryDistribution::nonsymmetric(law)
    })
}

fn parse_point(values: &str, symmetric: bool) -> Result<RealizedTriple<f64>, CliError> {
    let parsed = values
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("pointmass '{values}': {e}")))?;
    let triple = match (parsed.as_slice(), symmetric) {
        (&[x, y], true) => RealizedTriple::symmetric(x, y),
        (&[x, y, z], true) => {
            if z != y {
                return Err(CliError::Usage(format!(
                    "pointmass '{values}': symmetric mode needs z = y, got y = {y}, z = {z}"
                )));
            }
            RealizedTriple::symmetric(x, y)
        }
        (&[x, y, z], false) => RealizedTriple::new(x, y, z),
        _ => {
            let expected = if symmetric { "x,y or x,y,z" } else { "x,y,z" };
            return Err(CliError::Usage(format!("pointmass '{values}': expected {expected}")));
        }
    };
    triple.map_err(|e| CliError::Usage(format!("pointmass '{values}': {e}")))
}

/// Text form accepted by [`parse_distribution`].
pub fn describe(dist: &EntryDistribution) -> String {
    match dist.law {
        EntryLaw::Rademacher => "rademacher".into(),
        EntryLaw::StandardNormal => "gaussian".into(),
        EntryLaw::StandardCauchy => "cauchy".into(),
        EntryLaw::PointMass(t) => format!("pointmass:{},{},{}", t.x(), t.y(), t.z()),
    }
}
