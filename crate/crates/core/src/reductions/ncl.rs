use crate::model::{EdgeColor, NclEdge, NclInstance, VertexKind};

use super::ReductionError;

/// Subdivides every blue edge between two non-COPY vertices with a new COPY
/// vertex, so that each blue edge touches exactly one COPY vertex.
///
/// The subdivided edge keeps its index and becomes `(u, w)`; the new edge
/// `(w, v)` is appended. Heads are preserved: if the old edge pointed at `v`,
/// then `(w, v)` points at `v` and `(u, w)` at `w`, and symmetrically.
pub fn ncl_normalize(ncl: &NclInstance) -> Result<NclInstance, ReductionError> {
    let mut edges = ncl.edges().to_vec();
    let mut d0 = ncl.initial.clone();
    let mut d1 = ncl.target.clone();
    let mut n = ncl.n();
    for i in 0..ncl.m() {
        let e = ncl.edge(i);
        if e.color != EdgeColor::Blue {
            continue;
        }
        let copies = [e.u, e.v].iter().filter(|&&x| ncl.kind(x) == VertexKind::Copy).count();
        match copies {
            1 => continue,
            2 => {
                return Err(ReductionError::MalformedNcl(format!(
                    "blue edge {i} joins two COPY vertices"
                )))
            }
            _ => {}
        }
        let w = n;
        n += 1;
        edges[i] = NclEdge {
            u: e.u,
            v: w,
            color: EdgeColor::Blue,
        };
        edges.push(NclEdge {
            u: w,
            v: e.v,
            color: EdgeColor::Blue,
        });
        for d in [&mut d0, &mut d1] {
            if d[i] == e.v {
                d[i] = w;
                d.push(e.v);
            } else {
                d.push(w);
            }
        }
    }
    NclInstance::new(n, edges, d0, d1).map_err(|err| ReductionError::MalformedNcl(err.to_string()))
}

/// First blue edge without exactly one COPY endpoint.
pub(crate) fn first_unnormalized_edge(ncl: &NclInstance) -> Option<usize> {
    (0..ncl.m()).find(|&i| {
        let e = ncl.edge(i);
        e.color == EdgeColor::Blue
            && (ncl.kind(e.u) == VertexKind::Copy) == (ncl.kind(e.v) == VertexKind::Copy)
    })
}
