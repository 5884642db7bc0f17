use std::fmt::Write as _;
use std::sync::Arc;

use chipfire_core::bigjson::{int_to_json, int_vec_to_json};
use chipfire_core::cone::realizable_degree;
use chipfire_core::forests::{forest_number, reduced_laplacian_group, spanning_forests};
use chipfire_core::homology::{critical_group, group_json, homology, REPRESENTATIVE_LIMIT};
use chipfire_core::pseudomanifold::{analyze, cycle_hilbert_basis, incidence_graph};
use chipfire_core::winnability::{
    is_winnable, linearly_equivalent, minimal_winning_degrees, x_set_witness,
};
use chipfire_core::{
    ChainSpace, ComplexDocument, DegreeVector, ForestMode, HilbertBasisSet, HomologyVariant,
    RealizeMode,
};
use serde_json::{json, Value};

use crate::input::{self, CliResult};
use crate::{Command, ForestModeArg, HomologyMode, Outcome, RealizeModeArg, Target};

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn space_for(doc: &ComplexDocument, dim: i32) -> CliResult<ChainSpace> {
    ChainSpace::new(Arc::new(doc.complex.clone()), dim).map_err(err)
}

/// Document, dimension (from the flag, a chain argument or the embedded
/// chain) and the chain space.
fn open(target: &Target, chain: Option<&str>) -> CliResult<(ComplexDocument, ChainSpace)> {
    let doc = input::load_document(&target.file)?;
    let chain_dim = match chain {
        Some(c) => input::coefficients(c)?.0,
        None => None,
    };
    let dim = input::resolve_dim(target.dim, chain_dim, &doc)?;
    let space = space_for(&doc, dim)?;
    Ok((doc, space))
}

pub fn run(cmd: Command) -> CliResult<Outcome> {
    match cmd {
        Command::Analyze { target } => analyze_cmd(&target),
        Command::Hilbert { target, rays_only } => {
            let (_, space) = open(&target, None)?;
            let hb = space.hilbert_basis().map_err(err)?;
            let shown = if rays_only {
                let keep: Vec<usize> = (0..hb.len()).filter(|&k| hb.ray_flags[k]).collect();
                HilbertBasisSet {
                    dim: hb.dim,
                    elements: keep.iter().map(|&k| hb.elements[k].clone()).collect(),
                    ray_flags: vec![true; keep.len()],
                }
            } else {
                hb.clone()
            };
            let mut text = String::new();
            for (h, ray) in shown.elements.iter().zip(&shown.ray_flags) {
                let row: Vec<String> = h.coeffs.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(text, "({}){}", row.join(","), if *ray { "  ray" } else { "" });
            }
            Ok(Outcome {
                payload: shown.to_json(),
                pretty: Some(text),
                negative: false,
            })
        }
        Command::Degree {
            target,
            chain,
            rays_only,
            realize,
            mode,
        } => {
            if let Some(r) = realize {
                let (_, space) = open(&target, None)?;
                let (_, values) = input::coefficients(&r)?;
                let delta = DegreeVector { values };
                let mode = match mode {
                    RealizeModeArg::Any => RealizeMode::Any,
                    RealizeModeArg::Effective => RealizeMode::Effective,
                };
                let found = realizable_degree(&space, &delta, mode).map_err(err)?;
                return Ok(Outcome::json(json!({
                    "degree": delta.to_json(),
                    "mode": if mode == RealizeMode::Any { "any" } else { "effective" },
                    "chain": found.map(|c| int_vec_to_json(&c.coeffs)),
                })));
            }
            let (doc, space) = open(&target, chain.chain.as_deref())?;
            let sigma = input::chain(&doc, space.dim(), chain.chain.as_deref())?;
            let d = chipfire_core::cone::degree(&space, &sigma, rays_only).map_err(err)?;
            Ok(Outcome::json(json!({ "degree": d.to_json(), "rays_only": rays_only })))
        }
        Command::Winnable {
            target,
            chain,
            expect_winnable,
            expect_unwinnable,
        } => {
            let (doc, space) = open(&target, chain.chain.as_deref())?;
            let sigma = input::chain(&doc, space.dim(), chain.chain.as_deref())?;
            let v = is_winnable(&space, &sigma).map_err(err)?;
            let negative = (expect_winnable && !v.winnable) || (expect_unwinnable && v.winnable);
            let mut text = format!("{} ({})\n", if v.winnable { "winnable" } else { "unwinnable" }, v.reason);
            if let Some(f) = &v.firing_vector {
                let script = chipfire_core::game::script_from_firing(&space, f);
                for m in script {
                    let _ = writeln!(text, "  {} {}", m.kind, m.face);
                }
            }
            Ok(Outcome {
                payload: v.to_json(),
                pretty: Some(text),
                negative,
            })
        }
        Command::Equivalent { target, chain, to } => {
            let (doc, space) = open(&target, chain.chain.as_deref())?;
            let sigma = input::chain(&doc, space.dim(), chain.chain.as_deref())?;
            let tau = input::chain(&doc, space.dim(), Some(&to))?;
            let v = linearly_equivalent(&space, &sigma, &tau).map_err(err)?;
            let mut payload = json!({ "equivalent": v.is_some() });
            if let Some(v) = &v {
                payload["firing_vector"] = int_vec_to_json(v);
            }
            Ok(Outcome::json(payload))
        }
        Command::Critgroup {
            target,
            representatives,
        } => {
            let (_, space) = open(&target, None)?;
            let c = if representatives {
                critical_group(&space, REPRESENTATIVE_LIMIT).map_err(err)?
            } else {
                chipfire_core::CriticalGroupResult {
                    dim: space.dim(),
                    group: space.critical_quotient().structure().clone(),
                    torsion_representatives: Vec::new(),
                }
            };
            Ok(Outcome {
                payload: c.to_json(representatives),
                pretty: Some(format!("{}\n", c.group)),
                negative: false,
            })
        }
        Command::Homology {
            target,
            mode,
            relative_to,
        } => {
            let doc = input::load_document(&target.file)?;
            let dim = target.dim.ok_or("no dimension given: pass -i/--dim")?;
            if mode != HomologyMode::Relative && relative_to.is_some() {
                return Err("--relative-to needs --mode relative".into());
            }
            let variant = match mode {
                HomologyMode::Reduced => HomologyVariant::Reduced,
                HomologyMode::Ordinary => HomologyVariant::Ordinary,
                HomologyMode::Relative => HomologyVariant::Relative(match relative_to {
                    Some(f) => input::faces(&f)?,
                    None => Vec::new(),
                }),
            };
            let h = homology(&doc.complex, dim, &variant).map_err(err)?;
            Ok(Outcome {
                pretty: Some(format!("{}\n", h.group)),
                payload: h.to_json(),
                negative: false,
            })
        }
        Command::Pseudo { file } => {
            let doc = input::load_document(&file)?;
            let info = analyze(&doc.complex);
            let mut payload = json!({ "info": info.to_json() });
            if let Some(g) = &info.gamma {
                let graph = incidence_graph(&doc.complex, g).map_err(err)?;
                let cycles = cycle_hilbert_basis(&doc.complex).map_err(err)?;
                payload["incidence_graph"] = graph.to_json();
                payload["cycle_hilbert_basis"] = cycles.to_json();
            }
            Ok(Outcome::json(payload))
        }
        Command::Forests {
            target,
            mode,
            faces,
            limit,
        } => {
            let doc = input::load_document(&target.file)?;
            let dim = target.dim.ok_or("no dimension given: pass -i/--dim")?;
            let mode = match (mode, faces) {
                (ForestModeArg::Check, Some(f)) => ForestMode::Check(input::faces(&f)?),
                (ForestModeArg::Check, None) => return Err("--mode check needs --faces".into()),
                (_, Some(_)) => return Err("--faces needs --mode check".into()),
                (ForestModeArg::First, None) => ForestMode::First,
                (ForestModeArg::All, None) => ForestMode::All,
            };
            let certs = spanning_forests(&doc.complex, dim, &mode, limit).map_err(err)?;
            let mut payload = json!({
                "dim": dim,
                "forests": certs.iter().map(|c| c.to_json(&doc.complex)).collect::<Vec<_>>(),
            });
            let mut text = String::new();
            for c in &certs {
                let faces: Vec<String> = c
                    .face_subset
                    .iter()
                    .map(|&j| chipfire_core::complex::face_label(&doc.complex.faces(dim)[j]))
                    .collect();
                let _ = writeln!(text, "{}\t{}", faces.join(" "), c.torsion_order);
            }
            if mode == ForestMode::All {
                let tau = forest_number(&doc.complex, dim, limit).map_err(err)?;
                let _ = writeln!(text, "tau_{dim} = {tau}");
                payload["forest_number"] = int_to_json(&tau);
            }
            Ok(Outcome {
                payload,
                pretty: Some(text),
                negative: false,
            })
        }
        Command::Reduced { target, faces } => {
            let doc = input::load_document(&target.file)?;
            let dim = target.dim.ok_or("no dimension given: pass -i/--dim")?;
            let forest = input::faces(&faces)?;
            let r = reduced_laplacian_group(&doc.complex, dim, &forest).map_err(err)?;
            Ok(Outcome::json(r.to_json(&doc.complex)))
        }
        Command::Mindeg { target, bound } => {
            let (_, space) = open(&target, None)?;
            let r = minimal_winning_degrees(&space, bound).map_err(err)?;
            Ok(Outcome::json(r.to_json()))
        }
        Command::Xset { target, chain } => {
            let (doc, space) = open(&target, chain.chain.as_deref())?;
            let sigma = input::chain(&doc, space.dim(), chain.chain.as_deref())?;
            let w = x_set_witness(&space, &sigma).map_err(err)?;
            Ok(Outcome::json(json!({
                "in_x": w.is_some(),
                "witness": w.map(|c| int_vec_to_json(&c.coeffs)),
            })))
        }
        Command::Play | Command::Serve { .. } => unreachable!("handled by main"),
    }
}

fn analyze_cmd(target: &Target) -> CliResult<Outcome> {
    let doc = input::load_document(&target.file)?;
    let delta = &doc.complex;
    let d = delta.dim();
    let shared = Arc::new(delta.clone());
    let homology_list: Vec<Value> = (-1..=d)
        .map(|i| {
            let h = homology(delta, i, &HomologyVariant::Reduced).map_err(err)?;
            let mut g = group_json(&h.group);
            g["dim"] = json!(i);
            Ok(g)
        })
        .collect::<CliResult<_>>()?;
    let dims: Vec<i32> = match target.dim {
        Some(i) => {
            delta.check_dim(i, 0, d).map_err(err)?;
            vec![i]
        }
        None => (0..=d).collect(),
    };
    let mut per_dim = Vec::new();
    for i in dims {
        let space = ChainSpace::new(Arc::clone(&shared), i).map_err(err)?;
        let hb = space.hilbert_basis().map_err(err)?;
        per_dim.push(json!({
            "dim": i,
            "faces": space.len(),
            "critical_group": group_json(space.critical_quotient().structure()),
            "hilbert_basis_size": hb.len(),
            "extreme_rays": hb.ray_flags.iter().filter(|&&r| r).count(),
            "zero_one": hb.is_zero_one(),
        }));
    }
    Ok(Outcome::json(json!({
        "dim": d,
        "f_vector": delta.f_vector(),
        "facets": delta.facets().len(),
        "pure": delta.is_pure(),
        "reduced_homology": homology_list,
        "pseudomanifold": analyze(delta).to_json(),
        "chain_spaces": per_dim,
    })))
}
