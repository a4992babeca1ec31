use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use alphaform::alpha::{self, AlphaError, Certificate};
use alphaform::dodgson::{symanzik_second, DIndex, Dodgson};
use alphaform::forms::{latex_poly, AlphaForm};
use alphaform::graph::{families, graph_to_json, graph_to_text, parse_graph, Graph};
use alphaform::poly::{poly_to_json, MPoly};
use serde_json::{json, Value};

use crate::{Failure, Format, GenFormat, GraphInput, Output};

pub fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

pub fn load_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let text = read_source(&input.graph)?;
    let g = parse_graph(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.graph.display())))?;
    Ok(match input.v_star {
        Some(v) => g.set_v_star(v)?,
        None => g,
    })
}

fn render_poly(p: &MPoly, format: Format) -> String {
    match format {
        Format::Latex => latex_poly(p),
        _ => p.to_string(),
    }
}

fn render_alpha(a: &AlphaForm, out: &Output) -> String {
    match out.format {
        Format::Latex => a.render_latex(out.with_pi),
        _ => a.render_text(out.with_pi),
    }
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("json"));
}

pub fn alpha(input: &GraphInput, out: &Output, max_edges: usize, timings: bool) -> Result<(), Failure> {
    let g = load_graph(input)?;
    let loops = if g.is_connected() { Some(g.loop_number()) } else { None };
    let start = Instant::now();
    let tree = alpha::alpha_tree_sum(&g)?;
    let tree_time = start.elapsed();

    let start = Instant::now();
    let (brute, notice) = if g.edge_count() > max_edges.min(alpha::BRUTE_MAX_EDGES) {
        (None, Some(format!("brute force skipped: {} edges exceed the guard of {}", g.edge_count(), max_edges.min(alpha::BRUTE_MAX_EDGES))))
    } else {
        match alpha::alpha_brute(&g) {
            Ok(b) => (Some(b), None),
            Err(e @ AlphaError::TooLarge { .. }) => (None, Some(format!("brute force skipped: {e}"))),
            Err(e) => return Err(e.into()),
        }
    };
    let brute_time = start.elapsed();
    let agree = brute.as_ref().map(|b| b.equals(&tree));
    let wedge_zero = alpha::wedge_self(&tree)?.iter().all(|c| c.value.is_zero());
    let reason = alpha::zero_reason(&g);

    if out.format == Format::Json {
        let mut record = json!({
            "graph": serde_json::from_str::<Value>(&graph_to_json(&g)).expect("json"),
            "v_star": g.v_star(),
            "L": loops,
            "alpha": tree.to_json(out.with_pi),
            "zero_reason": reason,
            "wedge_zero": wedge_zero,
            "pipelines_agree": agree,
            "notice": notice,
        });
        if timings {
            record["timings_ms"] = json!({
                "tree_sum": tree_time.as_secs_f64() * 1e3,
                "brute": brute.as_ref().map(|_| brute_time.as_secs_f64() * 1e3),
            });
        }
        print_json(&record);
    } else {
        out!(
            "graph: {} vertices, {} edges, L = {}, v_star = {}",
            g.vertex_count(),
            g.edge_count(),
            loops.map_or_else(|| "-".to_string(), |l| l.to_string()),
            g.v_star()
        );
        match reason {
            Some(r) => out!("alpha = 0 ({r})"),
            None => {
                out!("psi = {}", render_poly(&tree.psi, out.format));
                out!("alpha = {}", render_alpha(&tree, out));
            }
        }
        match agree {
            Some(true) => out!("pipelines: agree"),
            Some(false) => out!("pipelines: DISAGREE"),
            None => {}
        }
        if let Some(n) = &notice {
            out!("{n}");
        }
        out!("alpha^alpha: {}", if wedge_zero { "0" } else { "NONZERO" });
    }
    if agree == Some(false) {
        return Err(Failure::Check("brute force and tree sum disagree".into()));
    }
    Ok(())
}

pub fn wedge_check(input: &GraphInput, out: &Output) -> Result<(), Failure> {
    let g = load_graph(input)?;
    let a = alpha::alpha_tree_sum(&g)?;
    let coeffs = alpha::wedge_self(&a)?;
    let bound = alpha::edge_bound_check(&g);
    let nonzero: Vec<_> = coeffs.iter().filter(|c| !c.value.is_zero()).collect();
    if out.format == Format::Json {
        let list: Vec<Value> = coeffs.iter().map(|c| json!({"edges": c.edges, "value": c.value.to_string()})).collect();
        print_json(&json!({
            "edge_bound": bound,
            "alpha_zero": a.is_zero(),
            "coefficients": list,
            "wedge_zero": nonzero.is_empty(),
        }));
    } else {
        if bound {
            out!("2L > |E|: no admissible edge set, alpha^alpha = 0 trivially");
        } else if a.is_zero() {
            out!("alpha = 0 ({})", alpha::zero_reason(&g).unwrap_or("vanishing form"));
        }
        for c in &coeffs {
            let word = c.edges.iter().map(|e| format!("da{e}")).collect::<Vec<_>>().join("∧");
            out!("{word}: {}", render_poly(&c.value, out.format));
        }
        out!("alpha^alpha: {}", if nonzero.is_empty() { "0" } else { "NONZERO" });
    }
    if nonzero.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} nonzero coefficients", nonzero.len())))
    }
}

pub fn symanzik(input: &GraphInput, out: &Output, second: bool, massless: bool) -> Result<(), Failure> {
    let g = load_graph(input)?;
    let p = if second {
        let s = symanzik_second(&g)?;
        if massless {
            let values: Vec<MPoly> = (0..s.registry.len())
                .map(|i| if s.registry.name(i).starts_with("mu_") { MPoly::zero(&s.registry) } else { MPoly::var(&s.registry, i) })
                .collect();
            s.phi.substitute(&s.registry, &values).map_err(|e| Failure::Usage(e.to_string()))?
        } else {
            s.phi
        }
    } else {
        Dodgson::new(&g).psi()
    };
    emit_poly(&p, out.format);
    Ok(())
}

fn emit_poly(p: &MPoly, format: Format) {
    if format == Format::Json {
        print_json(&json!({"text": p.to_string(), "terms": poly_to_json(p), "variables": p.registry().names()}));
    } else {
        out!("{}", render_poly(p, format));
    }
}

/// `e:1,2` or `v:3` or mixed `e:1,v:2`; a bare number keeps the last kind.
pub fn parse_indices(spec: &str) -> Result<Vec<DIndex>, Failure> {
    let mut out = Vec::new();
    let mut kind: Option<char> = None;
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let num = match tok.split_once(':') {
            Some((k, n)) => {
                kind = match k {
                    "e" => Some('e'),
                    "v" => Some('v'),
                    _ => return Err(Failure::Usage(format!("unknown index kind {k:?} (use e: or v:)"))),
                };
                n
            }
            None => tok,
        };
        let n: usize = num.parse().map_err(|_| Failure::Usage(format!("bad index {tok:?}")))?;
        out.push(match kind {
            Some('e') => DIndex::Edge(n),
            Some('v') => DIndex::Vertex(n),
            _ => return Err(Failure::Usage(format!("index {tok:?} needs an e: or v: prefix"))),
        });
    }
    Ok(out)
}

pub fn dodgson(input: &GraphInput, out: &Output, rows: &str, cols: &str) -> Result<(), Failure> {
    let g = load_graph(input)?;
    let (r, c) = (parse_indices(rows)?, parse_indices(cols)?);
    if r.len() != c.len() {
        return Err(Failure::Usage(format!("row and column sets differ in size ({} vs {})", r.len(), c.len())));
    }
    let p = Dodgson::new(&g).dodgson(&r, &c)?;
    emit_poly(&p, out.format);
    Ok(())
}

fn size_list(size: Option<&str>, n: usize) -> Result<Vec<usize>, Failure> {
    let s = size.ok_or_else(|| Failure::Usage("this family needs a size".into()))?;
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("bad size {t:?}"))))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(Failure::Usage(format!("expected {n} size parameter(s), got {}", v.len())));
    }
    Ok(v)
}

pub fn family_graph(family: &str, size: Option<&str>, v: Option<usize>, e: Option<usize>, seed: u64) -> Result<Graph, Failure> {
    let one = |size| size_list(size, 1).map(|v| v[0]);
    Ok(match family {
        "dunce-cap" => families::dunce_cap(),
        "multiedge" => families::multiedge(),
        "k4-doubled" => families::k4_doubled(),
        "k33" => families::k33(),
        "prism" => families::prism(),
        "banana" => families::banana(one(size)?)?,
        "path" => families::path(one(size)?)?,
        "cycle" => families::cycle(one(size)?)?,
        "wheel" => families::wheel(one(size)?)?,
        "complete" => families::complete(one(size)?)?,
        "dunce-cap-subdivided" => families::dunce_cap_subdivided(one(size)?)?,
        "theta-subdivided" => {
            let s = size_list(size, 3)?;
            families::theta_subdivided(s[0], s[1], s[2])?
        }
        "random" => {
            let (v, e) = (v.ok_or_else(|| Failure::Usage("random needs --v".into()))?, e.ok_or_else(|| Failure::Usage("random needs --e".into()))?);
            families::random_connected(seed, v, e)?
        }
        _ => return Err(Failure::Usage(format!("unknown family {family:?}"))),
    })
}

pub fn gen(family: &str, size: Option<&str>, v: Option<usize>, e: Option<usize>, seed: u64, format: GenFormat, output: Option<PathBuf>) -> Result<(), Failure> {
    let g = family_graph(family, size, v, e, seed)?;
    let text = match format {
        GenFormat::Json => format!("{}\n", graph_to_json(&g)),
        GenFormat::Text => graph_to_text(&g),
    };
    match output {
        Some(p) => std::fs::write(&p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            out!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn certificate_summary(c: &Certificate) -> String {
    format!(
        "L = {}: {} terms, {} cancelling pairs, {} unpaired, {} failures",
        c.loops,
        c.terms,
        c.entries.len(),
        c.unpaired.len(),
        c.failures.len()
    )
}

pub fn certificate(loops: usize, limit: usize, format: Format) -> Result<(), Failure> {
    let c = alpha::cancellation_certificate(loops)?;
    if format == Format::Json {
        let entries: Vec<Value> = c.entries.iter().take(limit).map(|e| serde_json::to_value(e).expect("json")).collect();
        print_json(&json!({
            "loops": c.loops,
            "terms": c.terms,
            "pairs": c.entries.len(),
            "complete": c.complete(),
            "unpaired": c.unpaired,
            "failures": c.failures,
            "entries": entries,
        }));
    } else {
        out!("{}", certificate_summary(&c));
        for e in c.entries.iter().take(limit) {
            let swaps = e.swapped.iter().map(|(a, b)| format!("{a}↔{b}")).collect::<Vec<_>>().join(" ");
            out!("{}  ~  {}  [fix {{{},{}}}, exchange {}]", e.term.render(), e.partner.render(), e.fixed.0, e.fixed.1, swaps);
        }
        if c.entries.len() > limit {
            out!("... {} more pairs", c.entries.len() - limit);
        }
        for f in &c.failures {
            out!("failure: {f}");
        }
    }
    if c.complete() {
        Ok(())
    } else {
        Err(Failure::Check(certificate_summary(&c)))
    }
}
