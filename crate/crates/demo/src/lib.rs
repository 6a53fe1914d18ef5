//! Browser bindings. Each export takes plain numbers and returns a JSON
//! scene (vertices, edges, token sets and a move list) that `www/index.html`
//! draws and animates. The `*_scene` functions are the native equivalents.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use reconfig_core::generate::{self, SplitParams};
use reconfig_core::graph::split_partition;
use reconfig_core::oracle::{reconfig_oracle, OracleOptions};
use reconfig_core::reductions::{build_gb, GadgetVertex};
use reconfig_core::solver::{reachable_small, solve, SplitInstanceView};
use reconfig_core::{Move, MoveSequence, ReconfigInstance, VertexSet};

/// Drawing hint for one vertex.
#[derive(Debug, Serialize)]
pub struct Vertex {
    pub label: String,
    /// Clique side of a split graph; drawn on the inner ring.
    pub inner: bool,
}

#[derive(Debug, Serialize)]
pub struct Step {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Serialize)]
pub struct Scene {
    pub title: String,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub reachable: bool,
    pub steps: Vec<Step>,
    pub notes: Vec<String>,
}

fn steps(seq: &MoveSequence) -> Vec<Step> {
    seq.moves()
        .iter()
        .filter_map(|m| match *m {
            Move::Slide { from, to } | Move::Jump { from, to } => Some(Step { from, to }),
            _ => None,
        })
        .collect()
}

fn split_vertices(inst: &ReconfigInstance) -> Vec<Vertex> {
    let clique = split_partition(&inst.graph).map(|p| p.clique).unwrap_or_else(|| VertexSet::new(inst.graph.n()));
    (0..inst.graph.n())
        .map(|v| Vertex {
            label: v.to_string(),
            inner: clique.contains(v),
        })
        .collect()
}

fn error_scene(title: &str, message: String) -> Scene {
    Scene {
        title: title.into(),
        vertices: Vec::new(),
        edges: Vec::new(),
        source: Vec::new(),
        target: Vec::new(),
        reachable: false,
        steps: Vec::new(),
        notes: vec![message],
    }
}

/// Random split instance decided by the polynomial solver.
pub fn split_scene(seed: u64, n: usize, colors: usize, tokens: usize) -> Scene {
    let title = format!("split graph, n = {n}, c = {colors}");
    let mut p = SplitParams::new(n, colors, tokens.min(n));
    // half of the seeds start with a full clique part to exercise the bridge search
    if seed.is_multiple_of(2) {
        p.source_clique = Some(colors.min(p.clique).min(p.tokens));
    }
    let inst = match generate::split_instance(&mut generate::rng(seed), &p) {
        Ok(i) => i,
        Err(e) => return error_scene(&title, e.to_string()),
    };
    let sol = match solve(&inst) {
        Ok(s) => s,
        Err(e) => return error_scene(&title, e.to_string()),
    };
    Scene {
        title,
        vertices: split_vertices(&inst),
        edges: inst.graph.edges().to_vec(),
        source: inst.source.to_vec(),
        target: inst.target.to_vec(),
        reachable: sol.reachable,
        steps: sol.witness.as_ref().map(steps).unwrap_or_default(),
        notes: vec![
            format!("bridge candidates examined: {}", sol.stats.candidates),
            format!("rigid sets visited: {}", sol.stats.rigid_states),
        ],
    }
}

/// Random split instance with fewer than `colors` tokens on the clique side
/// of both sets, routed directly.
pub fn routing_scene(seed: u64, n: usize, colors: usize, tokens: usize) -> Scene {
    let title = format!("small-set routing, n = {n}, c = {colors}");
    let mut p = SplitParams::new(n, colors, tokens.min(n));
    let on_clique = (colors.saturating_sub(1)).min(p.clique).min(p.tokens);
    p.source_clique = Some(on_clique);
    p.target_clique = Some(on_clique / 2);
    let inst = match generate::split_instance(&mut generate::rng(seed), &p) {
        Ok(i) => i,
        Err(e) => return error_scene(&title, e.to_string()),
    };
    let routed = SplitInstanceView::from_instance(&inst).and_then(|v| reachable_small(&v));
    match routed {
        Ok(w) => Scene {
            title,
            vertices: split_vertices(&inst),
            edges: inst.graph.edges().to_vec(),
            source: inst.source.to_vec(),
            target: inst.target.to_vec(),
            reachable: true,
            notes: vec![format!("{} slides", w.len())],
            steps: steps(&w),
        },
        Err(e) => error_scene(&title, e.to_string()),
    }
}

/// Gadget graph of a random constraint logic machine, searched exhaustively
/// while never holding both selectors of one edge.
pub fn gadget_scene(seed: u64, ands: usize, ors: usize) -> Scene {
    let title = format!("gadget graph, {ands} AND and {ors} OR vertices");
    let ncl = match generate::ncl_instance(&mut generate::rng(seed), ands, ors) {
        Ok(m) => m,
        Err(e) => return error_scene(&title, e.to_string()),
    };
    let gb = match build_gb(&ncl) {
        Ok(g) => g,
        Err(e) => return error_scene(&title, e.to_string()),
    };
    let filter = |s: &VertexSet| gb.no_both_selectors(s);
    let res = match reconfig_oracle(&gb.instance(), Some(&filter), &OracleOptions::default()) {
        Ok(r) => r,
        Err(e) => return error_scene(&title, e.to_string()),
    };
    Scene {
        title,
        vertices: (0..gb.graph.n())
            .map(|v| Vertex {
                label: gb.label(v).to_string(),
                inner: matches!(gb.label(v), GadgetVertex::Gate { .. }),
            })
            .collect(),
        edges: gb.graph.edges().to_vec(),
        source: gb.source.to_vec(),
        target: gb.target.to_vec(),
        reachable: res.reachable,
        steps: res.witness.as_ref().map(steps).unwrap_or_default(),
        notes: vec![
            format!("machine edges: {}", ncl.m()),
            format!("states explored: {}", res.states_explored),
        ],
    }
}

fn json(scene: &Scene) -> String {
    serde_json::to_string(scene).expect("scene serializes")
}

#[wasm_bindgen]
pub fn split_demo(seed: u32, n: u32, colors: u32, tokens: u32) -> String {
    json(&split_scene(seed.into(), n as usize, colors as usize, tokens as usize))
}

#[wasm_bindgen]
pub fn routing_demo(seed: u32, n: u32, colors: u32, tokens: u32) -> String {
    json(&routing_scene(seed.into(), n as usize, colors as usize, tokens as usize))
}

#[wasm_bindgen]
pub fn gadget_demo(seed: u32, ands: u32, ors: u32) -> String {
    json(&gadget_scene(seed.into(), ands as usize, ors as usize))
}
