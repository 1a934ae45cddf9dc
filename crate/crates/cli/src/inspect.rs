use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use coref_eval::io::export_inspector_bundle;
use coref_eval::metrics::Evaluation;
use coref_eval::MentionId;

use crate::config::RunConfig;
use crate::load::{check_mismatch, doc_id, load};
use crate::serve;

pub enum Target {
    File(PathBuf),
    Serve { port: u16, assets: Option<PathBuf> },
}

pub fn run(config: &RunConfig, target: &Target) -> Result<()> {
    let (key_path, response_path) = config.inputs.pair()?;
    let key = load(key_path)?;
    let response = load(response_path)?;
    check_mismatch(&key.partition, &response.partition, config.on_mismatch)?;

    // The key's surface text wins where both files carry one.
    let mut surfaces: HashMap<MentionId, String> = HashMap::new();
    for m in response.doc.mentions.iter().chain(&key.doc.mentions) {
        if let Some(s) = &m.surface {
            surfaces.insert(m.id.clone(), s.clone());
        }
    }

    let evaluation = Evaluation::new(&key.partition, &response.partition, config.xps_mode);
    let bundle = export_inspector_bundle(&doc_id(&key, key_path), &evaluation, &surfaces);
    match target {
        Target::File(path) => {
            fs::write(path, bundle).with_context(|| format!("cannot write {}", path.display()))
        }
        Target::Serve { port, assets } => serve::serve(*port, bundle, assets.as_deref()),
    }
}
