use anyhow::Result;
use coref_eval::io::emit_report;
use coref_eval::metrics::Evaluation;

use crate::config::RunConfig;
use crate::load::{check_mismatch, doc_id, load};
use crate::write_output;

pub fn run(config: &RunConfig) -> Result<()> {
    let (key_path, response_path) = config.inputs.pair()?;
    let key = load(key_path)?;
    let response = load(response_path)?;
    check_mismatch(&key.partition, &response.partition, config.on_mismatch)?;

    let evaluation = Evaluation::new(&key.partition, &response.partition, config.xps_mode);
    let stats = &evaluation.stats;
    if !stats.is_aligned() {
        eprintln!(
            "note: added {} response-only mention(s) to the key and {} key-only mention(s) to the response as singletons",
            stats.added_to_key.len(),
            stats.added_to_response.len()
        );
    }
    let id = doc_id(&key, key_path);
    let out = emit_report(&id, &evaluation.report, config.format, config.metrics);
    write_output(config.output.as_deref(), &out)
}
