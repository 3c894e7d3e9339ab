use serde::Serialize;

use super::pg::{PartialGroupoid, Spine, Store};

/// One failed invariant: which operator, on which simplex, and what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub operator: String,
    pub simplex: Vec<String>,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} on [{}]: {}", self.operator, self.simplex.join("|"), self.detail)
    }
}

fn names(pg: &PartialGroupoid, word: &[usize]) -> Vec<String> {
    word.iter().map(|&e| pg.edge_name(e).to_string()).collect()
}

/// Checks the structural invariants of a partial groupoid. An empty report means valid.
pub fn validate(pg: &PartialGroupoid) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |op: &str, word: &[usize], detail: String| {
        out.push(Violation { operator: op.into(), simplex: names(pg, word), detail });
    };
    for (e, edge) in pg.edges().iter().enumerate() {
        let inv = pg.edge(edge.inv);
        if inv.inv != e {
            push("inverse", &[e], "inverse is not an involution".into());
        }
        if inv.src != edge.tgt || inv.tgt != edge.src {
            push("inverse", &[e], "inverse does not swap source and target".into());
        }
    }
    for (a, &id) in pg.identities().iter().enumerate() {
        let edge = pg.edge(id);
        if edge.src != a || edge.tgt != a {
            push("s0", &[id], "identity not a loop at its object".into());
        }
        if edge.inv != id {
            push("inverse", &[id], "identity is not self-inverse".into());
        }
    }
    for (f, g, c) in pg.compositions() {
        let (ef, eg, ec) = (pg.edge(f), pg.edge(g), pg.edge(c));
        if ef.tgt != eg.src {
            push("d1", &[f, g], "composite of non-composable pair".into());
            continue;
        }
        if ec.src != ef.src || ec.tgt != eg.tgt {
            push("d1", &[f, g], format!("composite {} has wrong endpoints", ec.name));
        }
        // transpositions of a 2-simplex: [f⁻¹ | g∘f] and [g∘f | g⁻¹]
        if pg.compose(pg.inv(f), c) != Some(g) {
            push("(0 1)", &[f, g], format!("expected [{}|{}] with composite {}", pg.edge(ef.inv).name, ec.name, eg.name));
        }
        if pg.compose(c, pg.inv(g)) != Some(f) {
            push("(1 2)", &[f, g], format!("expected [{}|{}] with composite {}", ec.name, pg.edge(eg.inv).name, ef.name));
        }
    }
    for f in 0..pg.edge_count() {
        let e = pg.edge(f);
        if pg.compose(f, pg.identity(e.tgt)) != Some(f) || pg.compose(pg.identity(e.src), f) != Some(f) {
            push("s0", &[f], "unit law fails".into());
        }
    }
    if let Store::Words(words) = pg.store() {
        for (&n, ws) in words {
            let mut sorted: Vec<&Vec<usize>> = ws.iter().collect();
            sorted.sort();
            for w in sorted {
                check_word(pg, n, w, &mut push);
            }
        }
    }
    out
}

fn check_word(pg: &PartialGroupoid, n: usize, w: &[usize], push: &mut impl FnMut(&str, &[usize], String)) {
    if !pg.is_composable_chain(w) {
        push("spine", w, "word is not composable".into());
        return;
    }
    let base = pg.edge(w[0]).src;
    let s = Spine { base, word: w.to_vec() };
    // every coedge must be defined and the inner composites must agree
    let mut m = vec![vec![None; n + 1]; n + 1];
    for i in 0..n {
        m[i][i + 1] = Some(w[i]);
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len;
            let mut value = None;
            for k in i + 1..j {
                let c = match (m[i][k], m[k][j]) {
                    (Some(a), Some(b)) => pg.compose(a, b),
                    _ => None,
                };
                match (value, c) {
                    (_, None) => {}
                    (None, Some(c)) => value = Some(c),
                    (Some(v), Some(c)) if v != c => {
                        push(&format!("coedge ε{i}{j}"), w, format!("two values {} and {}", pg.edge_name(v), pg.edge_name(c)));
                        return;
                    }
                    _ => {}
                }
            }
            match value {
                Some(v) => m[i][j] = Some(v),
                None => {
                    push(&format!("coedge ε{i}{j}"), w, "restriction is undefined".into());
                    return;
                }
            }
            for k in i + 1..j {
                let ok = matches!((m[i][k], m[k][j]), (Some(a), Some(b)) if pg.compose(a, b) == m[i][j]);
                if !ok {
                    push(&format!("coedge ε{i}{j}"), w, format!("[ε{i}{k}|ε{k}{j}] does not compose to ε{i}{j}"));
                    return;
                }
            }
        }
    }
    if pg.matrix_form(&s).is_none() {
        push("matrix", w, "matrix form is not computable".into());
        return;
    }
    if !pg.is_nondegenerate(&s) {
        if !pg.is_simplex(w) {
            push("degeneracy", w, "stored degenerate word does not collapse to a simplex".into());
        }
        return;
    }
    for i in 0..=n {
        match pg.face(&s, i) {
            Some(f) if pg.is_simplex(&f.word) => {}
            _ => push(&format!("d{i}"), w, "face is not a simplex".into()),
        }
    }
    for i in 0..n {
        let alpha: Vec<usize> = (0..=n).map(|k| if k == i { i + 1 } else if k == i + 1 { i } else { k }).collect();
        match pg.act(&alpha, &s) {
            Some(t) if pg.is_simplex(&t.word) => {}
            _ => push(&format!("({i} {})", i + 1), w, "transposed simplex missing".into()),
        }
    }
    for i in 0..=n {
        let mut d = w.to_vec();
        let obj = pg.vertices(&s)[i];
        d.insert(i, pg.identity(obj));
        if !pg.is_simplex(&d) {
            push(&format!("s{i}"), w, "degeneracy is not a simplex".into());
        }
    }
}
