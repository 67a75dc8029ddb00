//! The bundled asset directory: manifest, hash checks, loaders and the
//! semantic checks behind `asset-verify`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use grpx::groupcore::{Action, AnyGroup, Group, GroupFile, Perm};
use grpx::modrep::GModule;
use grpx::presentations::{evaluate_word, verify_presentation, Presentation};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const ASSET_ENV: &str = "GRPX_ASSET_DIR";

#[derive(Clone, Debug, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
    pub provenance: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub assets: Vec<ManifestEntry>,
}

/// `$GRPX_ASSET_DIR`, else the `assets/` directory of the source tree, else `./assets`.
pub fn default_asset_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(ASSET_ENV) {
        return PathBuf::from(d);
    }
    let built = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets");
    if built.join("manifest.json").is_file() {
        return built;
    }
    PathBuf::from("assets")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// An asset directory whose files are checked against the manifest on every read.
#[derive(Clone, Debug)]
pub struct Assets {
    pub dir: PathBuf,
    pub manifest: Manifest,
}

impl Assets {
    pub fn open(dir: &Path) -> Result<Assets, CliError> {
        let path = dir.join("manifest.json");
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::Asset(format!("{}: {e}", path.display())))?;
        let manifest: Manifest =
            serde_json::from_str(&text).map_err(|e| CliError::Asset(format!("{}: {e}", path.display())))?;
        Ok(Assets { dir: dir.to_path_buf(), manifest })
    }

    pub fn entry(&self, rel: &str) -> Option<&ManifestEntry> {
        self.manifest.assets.iter().find(|e| e.path == rel)
    }

    /// Contents of a manifest asset, refused if its hash does not match.
    pub fn read(&self, rel: &str) -> Result<(String, String), CliError> {
        let entry = self.entry(rel).ok_or_else(|| CliError::Asset(format!("{rel} is not in the manifest")))?;
        let bytes = std::fs::read(self.dir.join(rel)).map_err(|e| CliError::Asset(format!("{rel}: {e}")))?;
        let digest = sha256_hex(&bytes);
        if digest != entry.sha256 {
            return Err(CliError::Asset(format!("{rel}: sha256 {digest} does not match the manifest")));
        }
        let text = String::from_utf8(bytes).map_err(|_| CliError::Asset(format!("{rel}: not UTF-8")))?;
        Ok((text, digest))
    }

    /// Checks every manifest hash; the first mismatch is an error.
    pub fn check_hashes(&self) -> Result<(), CliError> {
        for e in &self.manifest.assets {
            self.read(&e.path)?;
        }
        Ok(())
    }
}

/// Loaded assets plus the hashes of everything read, for certificate inputs.
#[derive(Debug)]
pub struct Loader<'a> {
    pub assets: &'a Assets,
    pub hashes: BTreeMap<String, String>,
}

impl<'a> Loader<'a> {
    pub fn new(assets: &'a Assets) -> Self {
        Loader { assets, hashes: BTreeMap::new() }
    }

    pub fn text(&mut self, rel: &str) -> Result<String, CliError> {
        let (text, digest) = self.assets.read(rel)?;
        self.hashes.insert(rel.to_string(), digest);
        Ok(text)
    }

    pub fn group(&mut self, rel: &str) -> Result<GroupFile, CliError> {
        let text = self.text(rel)?;
        GroupFile::parse(&text).map_err(|e| CliError::Asset(format!("{rel}: {e}")))
    }

    pub fn perm_group(&mut self, rel: &str) -> Result<Group<Perm>, CliError> {
        match self.group(rel)?.group {
            AnyGroup::Perm(g) => Ok(g),
            _ => Err(CliError::Asset(format!("{rel}: expected a permutation group"))),
        }
    }

    pub fn mat_group(&mut self, rel: &str) -> Result<Group<grpx::gf::Matrix>, CliError> {
        match self.group(rel)?.group {
            AnyGroup::Mat(g) => Ok(g),
            _ => Err(CliError::Asset(format!("{rel}: expected a matrix group"))),
        }
    }

    pub fn presentation(&mut self, rel: &str) -> Result<Presentation, CliError> {
        let text = self.text(rel)?;
        Presentation::parse(&text).map_err(|e| CliError::Asset(format!("{rel}: {e}")))
    }

    pub fn module(&mut self, rel: &str) -> Result<GModule, CliError> {
        let text = self.text(rel)?;
        GModule::parse(&text).map_err(|e| CliError::Asset(format!("{rel}: {e}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AssetCheck {
    pub path: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InventoryReport {
    pub manifest_entries: usize,
    /// Asset files on disk, excluding the manifest itself.
    pub files_on_disk: usize,
    pub inventory_matches: bool,
    pub checks: Vec<AssetCheck>,
    pub failures: Vec<String>,
}

fn files_under(dir: &Path, base: &Path, out: &mut Vec<String>) {
    let Ok(rd) = std::fs::read_dir(dir) else { return };
    for e in rd.flatten() {
        let p = e.path();
        if p.is_dir() {
            files_under(&p, base, out);
        } else if let Ok(rel) = p.strip_prefix(base) {
            let rel = rel.to_string_lossy().replace('\\', "/");
            if rel != "manifest.json" {
                out.push(rel);
            }
        }
    }
}

fn stem(path: &str) -> &str {
    path.rsplit_once('.').map_or(path, |(s, _)| s)
}

fn relators_hold<E: Action>(pres: &Presentation, gens: &[E], one: &E) -> grpx::Result<bool> {
    if gens.len() != pres.num_gens() {
        return Ok(false);
    }
    for r in &pres.rels {
        if !evaluate_word(r, gens, one)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn read_unchecked(dir: &Path, rel: &str) -> Result<String, String> {
    std::fs::read_to_string(dir.join(rel)).map_err(|e| format!("{rel}: {e}"))
}

/// Content check for one asset, reading files without the hash gate so a
/// corrupted file is also diagnosed by what it fails.
fn check_content(dir: &Path, rel: &str, coset_cap: usize) -> Result<String, String> {
    let text = read_unchecked(dir, rel)?;
    let fail = |e: &dyn std::fmt::Display| format!("{rel}: {e}");
    if rel.ends_with(".grp") {
        let gf = GroupFile::parse(&text).map_err(|e| fail(&e))?;
        let order = gf.group.order().map_err(|e| fail(&e))?;
        Ok(format!("{} generators, order {order}", gf.group.num_generators()))
    } else if rel.ends_with(".pres") {
        let pres = Presentation::parse(&text).map_err(|e| fail(&e))?;
        let grp = format!("{}.grp", stem(rel));
        let g = GroupFile::parse(&read_unchecked(dir, &grp)?).map_err(|e| fail(&e))?;
        let ok = match &g.group {
            AnyGroup::Perm(h) => verify_presentation(&pres, h, coset_cap),
            AnyGroup::Mat(h) => verify_presentation(&pres, h, coset_cap),
            AnyGroup::ProjMat(h) => verify_presentation(&pres, h, coset_cap),
        }
        .map_err(|e| fail(&e))?;
        if ok {
            Ok(format!("defines the group of {grp}"))
        } else {
            Err(fail(&format!("does not define the group of {grp}")))
        }
    } else if rel.ends_with(".mod") {
        let m = GModule::parse(&text).map_err(|e| fail(&e))?;
        let same = format!("{}.grp", stem(rel));
        if dir.join(&same).is_file() {
            // a module bundled with its matrix group: the generators must coincide
            let g = GroupFile::parse(&read_unchecked(dir, &same)?).map_err(|e| fail(&e))?;
            let AnyGroup::Mat(g) = g.group else { return Err(fail(&format!("{same} is not a matrix group"))) };
            return if g.generators() == m.generators() {
                Ok(format!("dimension {}, generators of {same}", m.dim()))
            } else {
                Err(fail(&format!("generators differ from {same}")))
            };
        }
        let pres_path = format!("{}.pres", m.group_name());
        let pres = Presentation::parse(&read_unchecked(dir, &pres_path)?).map_err(|e| fail(&e))?;
        let one = grpx::gf::Matrix::identity(m.field(), m.dim());
        if relators_hold(&pres, m.generators(), &one).map_err(|e| fail(&e))? {
            Ok(format!("dimension {}, satisfies {pres_path}", m.dim()))
        } else {
            Err(fail(&format!("does not satisfy {pres_path}")))
        }
    } else {
        Err(fail(&"unknown asset type"))
    }
}

/// Checks the inventory, every hash, and the contents: orders of groups,
/// presentations by coset enumeration, modules against their presentations.
pub fn verify_all(dir: &Path, coset_cap: usize) -> Result<InventoryReport, CliError> {
    let assets = Assets::open(dir)?;
    let mut on_disk = Vec::new();
    files_under(dir, dir, &mut on_disk);
    on_disk.sort();
    let mut listed: Vec<String> = assets.manifest.assets.iter().map(|e| e.path.clone()).collect();
    listed.sort();
    let mut failures = Vec::new();
    for f in on_disk.iter().filter(|f| listed.binary_search(f).is_err()) {
        failures.push(format!("{f}: not in the manifest"));
    }
    let mut checks = Vec::new();
    for entry in &assets.manifest.assets {
        let mut problems = Vec::new();
        if let Err(CliError::Asset(e)) = assets.read(&entry.path) {
            problems.push(e);
        }
        let content = check_content(dir, &entry.path, coset_cap);
        if let Err(e) = &content {
            problems.push(e.clone());
        }
        failures.extend(problems.iter().cloned());
        checks.push(AssetCheck {
            path: entry.path.clone(),
            ok: problems.is_empty(),
            detail: if problems.is_empty() { content.unwrap_or_default() } else { problems.join("; ") },
        });
    }
    Ok(InventoryReport {
        manifest_entries: listed.len(),
        files_on_disk: on_disk.len(),
        inventory_matches: on_disk == listed,
        checks,
        failures,
    })
}
