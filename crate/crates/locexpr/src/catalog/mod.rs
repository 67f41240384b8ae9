//! Shipped expressions, carrier classes and reference recognizers.
//!
//! Fixed entries are read from the DSL files under `data/`; parameterised
//! ones (`rghv(4)`, `kcol_partition(3)`, ...) are built in code.

pub mod bases;
pub mod figures;
pub mod recognizers;

use crate::cli::dsl::{expression_document, parse};
use crate::expressions::LocalExpression;
use crate::structures::io::from_graph6;
use crate::structures::Structure;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub expression: LocalExpression,
    pub provenance: String,
    /// Name accepted by [`recognizers::reference_recognizer`].
    pub recognizer: Option<String>,
}

type Builder = fn() -> Result<LocalExpression>;

/// A catalog entry backed by a data file.
pub struct Fixed {
    pub name: &'static str,
    pub carrier: &'static str,
    pub recognizer: Option<&'static str>,
    pub provenance: &'static str,
    pub build: Builder,
    pub data: &'static str,
}

macro_rules! fixed {
    ($name:literal, $file:literal, $carrier:literal, $rec:expr, $prov:literal, $build:expr) => {
        Fixed {
            name: $name,
            carrier: $carrier,
            recognizer: $rec,
            provenance: $prov,
            build: $build,
            data: include_str!(concat!("../../data/", $file, ".lex")),
        }
    };
}

/// The fixed entries, in listing order.
pub const FIXED: &[Fixed] = &[
    fixed!("chordal_peo", "chordal_peo", "LOR", Some("chordal"),
        "Chordal graphs: a linear order in which the later neighbours of every vertex are pairwise adjacent (perfect elimination ordering).",
        figures::chordal_peo),
    fixed!("rghv(2)", "rghv_2", "OR", Some("k_colourable(2)"),
        "Bipartite graphs: an orientation with no directed path on 3 vertices as a subgraph (Gallai, Roy, Hasse, Vitaver with k = 2).",
        || figures::rghv(2)),
    fixed!("rghv(3)", "rghv_3", "OR", Some("k_colourable(3)"),
        "3-colourable graphs: an orientation with no directed path on 4 vertices as a subgraph (Gallai, Roy, Hasse, Vitaver with k = 3).",
        || figures::rghv(3)),
    fixed!("bipartite_or", "bipartite_or", "OR", Some("bipartite"),
        "Bipartite graphs: an orientation with no directed walk on three vertices, listed as the three oriented graphs containing a directed P3.",
        figures::bipartite_or),
    fixed!("cobipartite_2ec", "cobipartite_2ec", "EG2", Some("cobipartite"),
        "Co-bipartite graphs: a 2-edge-colouring, red inside the two cliques and blue across, avoiding six 3-vertex patterns. The pattern with one edge and an isolated vertex is blue here.",
        figures::cobipartite_2ec),
    fixed!("cobipartite_2ec_as_drawn", "cobipartite_2ec_as_drawn", "EG2", None,
        "The co-bipartite pattern set as originally drawn, with a red edge next to the isolated vertex. Rejects K3 + K1, so it does not characterise co-bipartite graphs.",
        figures::cobipartite_2ec_as_drawn),
    fixed!("threecol_loor", "threecol_loor", "LOOR", Some("k_colourable(3)"),
        "3-colourable graphs: linearly ordered oriented graphs avoiding nine 3-vertex patterns.",
        figures::threecol_loor),
    fixed!("threecol_lo2ec", "threecol_lo2ec", "LO2EC", Some("k_colourable(3)"),
        "3-colourable graphs: the LOOR patterns coded as linearly ordered 2-edge-coloured graphs, forward arcs blue and backward arcs red.",
        figures::threecol_lo2ec),
    fixed!("circulararc_coor", "circulararc_coor", "COOR", Some("tucker_circular_arc"),
        "Circular-arc graphs: circularly ordered oriented graphs avoiding three patterns (Tucker's characterisation).",
        figures::circulararc_coor),
    fixed!("pca_cobip_t2", "pca_cobip_t2", "T2", None,
        "Proper circular-arc co-bipartite graphs: 2-arc-coloured tournaments, blue arcs on edges and red arcs on non-edges, avoiding six tournaments.",
        figures::pca_cobip_t2),
    fixed!("interval_lor", "interval_lor", "LOR", None,
        "Interval graphs: a linear order with no a < b < c where ac is an edge and ab is not (Olariu).",
        figures::interval_lor),
    fixed!("chordal_gen", "chordal_gen", "GEN", Some("chordal"),
        "Chordal graphs: the interval patterns forbidden in genealogical graphs.",
        figures::chordal_gen),
    fixed!("trivially_perfect_gen", "trivially_perfect_gen", "GEN", Some("trivially_perfect"),
        "Trivially perfect graphs: genealogical graphs with no two comparable non-adjacent vertices.",
        figures::trivially_perfect_gen),
    fixed!("complete_lor", "complete_lor", "LOR", Some("complete"),
        "Complete graphs: linearly ordered graphs with no two non-adjacent vertices.",
        figures::complete_lor),
    fixed!("comparability_so", "comparability_so", "SO", Some("comparability"),
        "Comparability graphs: suitably ordered graphs with no two comparable non-adjacent vertices.",
        figures::comparability_so),
    fixed!("comparability_height(2)", "comparability_height_2", "SO", None,
        "Comparability graphs of posets of height at most 2: also forbids a chain on three pairwise adjacent vertices.",
        || figures::comparability_height(2)),
    fixed!("pmixed(edgeless)", "pmixed_edgeless", "DI", Some("comparability"),
        "P-mixed graphs with P the edgeless graphs: digraphs whose symmetric pairs form an edgeless graph and whose arcs avoid the listed 3-vertex shapes. Equals comparability graphs (quasi-transitive orientations).",
        figures::pmixed_edgeless),
    fixed!("b1_free_or", "b1_free_or", "OR", None,
        "Graphs with a B1-free orientation, B1 being a vertex with two non-adjacent out-neighbours. Exploratory.",
        figures::b1_free_or),
    fixed!("pca_or", "pca_or", "OR", None,
        "Orientations whose in- and out-neighbourhoods are tournaments (Skrien); on connected graphs these are the proper circular-arc graphs.",
        figures::pca_or),
    fixed!("cobipartite_or", "cobipartite_or", "OR", Some("cobipartite"),
        "Co-bipartite graphs: the non-edges oriented with no directed path on 3 vertices as a subgraph.",
        figures::cobipartite_or),
    fixed!("split_partition", "split_partition", "G2", Some("split"),
        "Split graphs as M-partitions with M = [[1,*],[*,0]]: a clique part and an independent part.",
        || figures::m_partition_expression(&figures::parse_matrix("1*;*0")?)),
];

fn param<'a>(name: &'a str, head: &str) -> Option<&'a str> {
    name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')').map(str::trim)
}

fn int_param(name: &str, head: &str) -> Option<Result<usize>> {
    param(name, head).map(|p| p.parse().map_err(|_| Error::input(format!("{name}: {p:?} is not a number"))))
}

fn clique(k: usize) -> Structure {
    let edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    Structure::graph(k, &edges)
}

fn parameterised(name: &str) -> Option<Result<CatalogEntry>> {
    let entry = |expression: Result<LocalExpression>, provenance: String, recognizer: Option<String>| {
        expression.map(|expression| CatalogEntry { name: name.to_string(), expression, provenance, recognizer })
    };
    if let Some(k) = int_param(name, "rghv") {
        return Some(k.and_then(|k| {
            entry(figures::rghv(k), format!("Graphs with an orientation with no directed path on {} vertices.", k + 1), Some(format!("k_colourable({k})")))
        }));
    }
    if let Some(k) = int_param(name, "comparability_height") {
        return Some(k.and_then(|k| {
            entry(figures::comparability_height(k), format!("Comparability graphs of posets of height at most {k}."), None)
        }));
    }
    if let Some(k) = int_param(name, "kcol_partition") {
        return Some(k.and_then(|k| {
            let m: Vec<Vec<_>> = (0..k)
                .map(|i| (0..k).map(|j| if i == j { figures::MEntry::Zero } else { figures::MEntry::Star }).collect())
                .collect();
            entry(figures::m_partition_expression(&m), format!("{k}-colourable graphs as M-partitions: zero diagonal, * elsewhere."), Some(format!("k_colourable({k})")))
        }));
    }
    if let Some(m) = param(name, "m_partition") {
        return Some(figures::parse_matrix(m).and_then(|m| {
            entry(figures::m_partition_expression(&m), "M-partitions for the given matrix, rows separated by ';'.".to_string(), None)
        }));
    }
    if let Some(k) = int_param(name, "csp_clique") {
        return Some(k.and_then(|k| {
            entry(figures::csp_expression(&clique(k)), format!("K{k}-colourable graphs as equivalence graphs."), Some(format!("k_colourable({k})")))
        }));
    }
    if let Some(h) = param(name, "csp") {
        return Some(from_graph6(h).and_then(|h| {
            entry(figures::csp_expression(&h), "H-colourable graphs as equivalence graphs, H given in graph6.".to_string(), None)
        }));
    }
    None
}

fn fixed_entry(f: &Fixed) -> Result<CatalogEntry> {
    let doc = parse(f.data)?;
    let expression = doc
        .expression(&file_safe(f.name))
        .ok_or_else(|| Error::input(format!("data file for {} does not declare it", f.name)))?
        .clone();
    Ok(CatalogEntry {
        name: f.name.to_string(),
        expression,
        provenance: f.provenance.to_string(),
        recognizer: f.recognizer.map(str::to_string),
    })
}

/// Looks up a shipped entry. Besides the fixed names, accepts `rghv(k)`,
/// `comparability_height(k)`, `kcol_partition(k)`, `m_partition(rows)`,
/// `csp_clique(k)` and `csp(graph6)`.
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    if let Some(f) = FIXED.iter().find(|f| f.name == name) {
        return fixed_entry(f);
    }
    if let Some(e) = parameterised(name) {
        return e;
    }
    Err(Error::input(format!("no catalog entry {name:?}; available: {}", list().join(", "))))
}

/// Names of the fixed entries followed by the parameterised forms.
pub fn list() -> Vec<String> {
    let mut out: Vec<String> = FIXED.iter().map(|f| f.name.to_string()).collect();
    out.extend(
        ["rghv(k)", "comparability_height(k)", "kcol_partition(k)", "m_partition(rows)", "csp_clique(k)", "csp(graph6)"]
            .map(str::to_string),
    );
    out
}

/// DSL text shipped for a fixed entry, or generated for a parameterised one.
pub fn show(name: &str) -> Result<String> {
    if let Some(f) = FIXED.iter().find(|f| f.name == name) {
        return Ok(f.data.to_string());
    }
    let e = builtin(name)?;
    render(&e.name, "Carrier", &e.provenance, e.recognizer.as_deref(), &e.expression)
}

/// The text of a data file: a comment header, then the expression document.
pub fn render(name: &str, carrier: &str, provenance: &str, recognizer: Option<&str>, e: &LocalExpression) -> Result<String> {
    let mut out = format!("# {name}\n");
    for line in wrap(provenance, 76) {
        out.push_str(&format!("# {line}\n"));
    }
    if let Some(r) = recognizer {
        out.push_str(&format!("# recognizer: {r}\n"));
    }
    out.push('\n');
    out.push_str(&expression_document(&file_safe(name), carrier, e)?.to_string());
    Ok(out)
}

fn wrap(text: &str, width: usize) -> Vec<String> {
    let mut lines = vec![String::new()];
    for w in text.split_whitespace() {
        let last = lines.last_mut().unwrap();
        if !last.is_empty() && last.len() + 1 + w.len() > width {
            lines.push(w.to_string());
        } else {
            if !last.is_empty() {
                last.push(' ');
            }
            last.push_str(w);
        }
    }
    lines
}

/// `rghv(2)` becomes `rghv_2`: the DSL name and the data file stem.
pub fn file_safe(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect::<String>().trim_end_matches('_').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `LOCEXPR_WRITE_DATA=1 cargo test -p locexpr --lib write_data_files`
    /// rewrites the data files from the builders.
    #[test]
    fn write_data_files() {
        if std::env::var_os("LOCEXPR_WRITE_DATA").is_none() {
            return;
        }
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        for f in FIXED {
            let e = (f.build)().unwrap();
            let text = render(f.name, f.carrier, f.provenance, f.recognizer, &e).unwrap();
            std::fs::write(dir.join(format!("{}.lex", file_safe(f.name))), text).unwrap();
        }
    }

    #[test]
    fn data_files_equal_builders() {
        for f in FIXED {
            let parsed = fixed_entry(f).unwrap_or_else(|e| panic!("{}: {e}", f.name)).expression;
            assert_eq!(parsed, (f.build)().unwrap(), "{}", f.name);
            assert!(f.data.starts_with(&format!("# {}\n", f.name)));
        }
    }

    #[test]
    fn data_files_round_trip() {
        for f in FIXED {
            let doc = parse(f.data).unwrap();
            assert_eq!(parse(&doc.to_string()).unwrap(), doc, "{}", f.name);
        }
    }

    #[test]
    fn lookup() {
        assert!(builtin("rghv(4)").is_ok());
        assert_eq!(builtin("rghv(3)").unwrap().recognizer.as_deref(), Some("k_colourable(3)"));
        assert!(builtin("kcol_partition(3)").is_ok());
        assert!(builtin("m_partition(1*;*0)").is_ok());
        assert!(builtin("m_partition(1*;00)").is_err());
        let err = builtin("nope").unwrap_err().to_string();
        assert!(err.contains("chordal_peo"), "{err}");
        assert!(show("rghv(4)").unwrap().contains("expression rghv_4"));
        assert!(list().len() > FIXED.len());
    }
}
