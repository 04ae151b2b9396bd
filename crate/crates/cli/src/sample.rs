use std::fmt::Write;

use ksnake_core::kesten::{sample_augmented, serialize_with_spine, AugmentedRoot, KestenSampler};
use ksnake_core::plane_tree::{preorder_index, sample_uniform_plane_tree, serialize};
use ksnake_core::snake::{assign_and_embed, SnakeIndex};
use ksnake_core::{derive_stream, OffspringLaw, PlaneTree};

use crate::config::Settings;
use crate::error::{CliError, CliResult};

fn law(s: &Settings) -> CliResult<OffspringLaw> {
    Ok(s.raw("law").unwrap_or("geometric").parse::<OffspringLaw>()?)
}

pub fn sampler(s: &Settings) -> CliResult<KestenSampler> {
    let sampler = KestenSampler::new(law(s)?);
    Ok(match s.get::<u64>("budget")? {
        Some(b) => sampler.with_budget(b),
        None => sampler,
    })
}

/// `<dyck> <a>><b>`
pub fn tree(s: &Settings) -> CliResult<String> {
    let n = s
        .get::<usize>("n")?
        .ok_or_else(|| CliError::Usage("sample tree needs --n".into()))?;
    let t = sample_uniform_plane_tree(n, &mut derive_stream(s.seed()?, &[]))?;
    Ok(format!("{}\n", serialize(&t)))
}

/// `<dyck> <a>><b> spine=i,j,...`
pub fn kesten(s: &Settings) -> CliResult<String> {
    let r = s.single_u32("radius", "")?;
    let t = sampler(s)?.sample_ball(r, &mut derive_stream(s.seed()?, &[]))?;
    Ok(format!("{}\n", serialize_with_spine(&t)))
}

/// `<dyck> <a>><b> root=finite|conditioned`
pub fn augmented(s: &Settings) -> CliResult<String> {
    let r = s.single_u32("radius", "")?;
    let sm = sampler(s)?;
    let t = sample_augmented(sm.law(), r, &mut derive_stream(s.seed()?, &[]), sm.budget())?;
    let root = match t.which_root {
        AugmentedRoot::Finite => "finite",
        AugmentedRoot::Conditioned => "conditioned",
    };
    Ok(format!("{} root={root}\n", serialize(&t.tree)))
}

/// The tree line, then one `index<TAB>x1,...,xd` line per vertex in preorder.
/// Runs on a uniform plane tree with `--n` edges, or on a Kesten ball of
/// radius `--radius`.
pub fn snake(s: &Settings) -> CliResult<String> {
    let dim = s.single_u32("dim", "1")?;
    let seed = s.seed()?;
    let (head, tree): (String, Box<dyn SnakeIndex>) = match (s.get::<usize>("n")?, s.raw("radius")) {
        (Some(n), None) => {
            let t = sample_uniform_plane_tree(n, &mut derive_stream(seed, &[0]))?;
            (serialize(&t), Box::new(t))
        }
        (None, Some(_)) => {
            let r = s.single_u32("radius", "")?;
            let t = sampler(s)?.sample_ball(r, &mut derive_stream(seed, &[0]))?;
            (serialize_with_spine(&t), Box::new(t))
        }
        _ => {
            return Err(CliError::Usage(
                "sample snake needs exactly one of --n or --radius".into(),
            ))
        }
    };
    let e = assign_and_embed(tree.as_ref(), dim, &mut derive_stream(seed, &[1]))?;
    let t: &PlaneTree = tree.plane_tree();
    let idx = preorder_index(t);
    let mut out = format!("{head}\n");
    for v in t.preorder() {
        let p: Vec<String> = e.position(v).0.iter().map(i32::to_string).collect();
        let _ = writeln!(out, "{}\t{}", idx[v as usize], p.join(","));
    }
    Ok(out)
}
