//! Seeded instance files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use centerkit::gen::{
    random_line_instance, random_supplier_instance, triangle_gadget_supplier, LineParams,
    SupplierParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn line_json(seed: u64, params: LineParams) -> Result<String> {
    Ok(random_line_instance(&mut rng(seed), params)?.to_json())
}

pub fn supplier_json(seed: u64, params: SupplierParams) -> Result<String> {
    Ok(random_supplier_instance(&mut rng(seed), params)?.to_json())
}

/// Sizes of the standard benchmark corpus.
#[derive(Debug, Clone, Copy)]
pub struct CorpusSpec {
    pub seed: u64,
    pub line: usize,
    pub supplier: usize,
    pub gadget: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 2024,
            line: 20,
            supplier: 20,
            gadget: 5,
        }
    }
}

/// Writes `line-NNN.json`, `supplier-NNN.json` and `gadget-NNN.json` into
/// `dir`. Instance `i` of each family uses its own seed derived from the
/// corpus seed, so families can be resized independently.
pub fn write_corpus(dir: &Path, spec: CorpusSpec) -> Result<Vec<String>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut names = Vec::new();
    let mut put = |name: String, text: String| -> Result<()> {
        fs::write(dir.join(&name), text + "\n").with_context(|| format!("writing {name}"))?;
        names.push(name);
        Ok(())
    };
    for i in 0..spec.line {
        let mut r = rng(spec.seed ^ (0x1000 + i as u64));
        let n = r.gen_range(1..=10);
        let inst = random_line_instance(
            &mut r,
            LineParams {
                n,
                max_coord: 20,
                denominator: 2,
            },
        )?;
        put(format!("line-{i:03}.json"), inst.to_json())?;
    }
    for i in 0..spec.supplier {
        let mut r = rng(spec.seed ^ (0x2000 + i as u64));
        let params = SupplierParams {
            clients: r.gen_range(1..=10),
            facilities: r.gen_range(1..=6),
            dim: 2,
            max_coord: 20,
            k: r.gen_range(1..=3),
            p: None,
        };
        put(
            format!("supplier-{i:03}.json"),
            random_supplier_instance(&mut r, params)?.to_json(),
        )?;
    }
    for i in 0..spec.gadget {
        let mut r = rng(spec.seed ^ (0x3000 + i as u64));
        put(
            format!("gadget-{i:03}.json"),
            triangle_gadget_supplier(&mut r, 4)?.to_json(),
        )?;
    }
    Ok(names)
}
