//! Orchestration behind the `grpx` binary: bundled assets, certificates and
//! the reproducible claims.

pub mod assets;
pub mod cert;
pub mod claims;

use grpx::gf::Matrix;
use grpx::groupcore::{AnyGroup, Group, GroupFile};
use grpx::symtype::{construct_r, weil_rep, FormData, Kind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("asset error: {0}")]
    Asset(String),
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Compute(#[from] grpx::Error),
}

impl CliError {
    /// 2 for bad assets or inputs, 1 for a computation that could not finish.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Asset(_) | CliError::Input(_) => 2,
            CliError::Compute(e) => match e {
                grpx::Error::CapExceeded(_) | grpx::Error::Budget(_) | grpx::Error::Internal(_) => 1,
                _ => 2,
            },
        }
    }
}

/// File stem and `.grp`/`.mod` texts for a symplectic-type group in its Weil
/// representation over GF(q). Generators are the images of the standard basis
/// of `V` followed by the central generator.
pub fn symtype_files(kind: Kind, r: u32, n: usize, q: u32) -> grpx::Result<(String, String, String)> {
    let fd = FormData::standard(kind, r, n)?;
    let w = weil_rep(&construct_r(&fd), q)?;
    let group = format!("{}_r{r}_n{n}", kind.as_str());
    let module = w.module().clone().with_name(format!("weil_{}_n{n}", kind.as_str()), group.clone());
    let gens: Vec<Matrix> = module.generators().to_vec();
    let names = (0..gens.len()).map(|i| if i + 1 == gens.len() { "c".into() } else { format!("x{}", i + 1) }).collect();
    let gf = GroupFile {
        name: group,
        degree: w.dim(),
        field: Some(w.field().clone()),
        gen_names: names,
        group: AnyGroup::Mat(Group::new(gens, Matrix::identity(w.field(), w.dim()))),
    };
    Ok((format!("{}_r{r}_n{n}_q{q}", kind.as_str()), gf.to_text(), module.to_text()))
}
