//! Human-readable summaries. Advisory only; the JSON reports are the
//! contract.

use std::fmt::Write;

use logtrop_core::compactify::CompactificationReport;
use logtrop_core::cones::Fan;
use logtrop_core::katofan::{KatoFan, StrataConeTable};
use logtrop_core::topology::{BettiTable, SimplicialComplex, W0Report};
use logtrop_core::trop::{DimensionReport, TropFan};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fan_rays(out: &mut String, f: &Fan) {
    for (i, r) in f.rays().iter().enumerate() {
        let _ = writeln!(out, "  ray {i:>3}  {r}");
    }
}

pub fn kato_fan(k: &KatoFan) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Kato fan: {} points, dimension {}", k.len(), k.dim());
    let _ = writeln!(
        out,
        "  {:<10} {:>5} {:>14}",
        "point", "rank", "generizations"
    );
    for (x, name) in k.names().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:<10} {:>5} {:>14}",
            name,
            k.stalk(x).rank(),
            k.generizations(x).len()
        );
    }
    out
}

pub fn strata(t: &StrataConeTable) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:>9} {:>15}",
        "point", "cell dim", "stratum codim"
    );
    for row in &t.rows {
        let _ = writeln!(
            out,
            "{:<10} {:>9} {:>15}",
            row.name, row.cell_dim, row.stratum_codim
        );
    }
    let _ = writeln!(out, "order-reversing: {}", yes_no(t.order_reversing));
    out
}

pub fn trop(t: &TropFan, d: &DimensionReport) -> String {
    let mut out = String::new();
    let kind = if t.declared_variety {
        "tropical variety"
    } else {
        "tropical prevariety"
    };
    let _ = writeln!(
        out,
        "{kind} in dimension {}: {} rays, {} cones, dimension {}",
        t.ambient_dim(),
        t.fan.rays().len(),
        t.fan.cones().len(),
        d.trop_dim
    );
    fan_rays(&mut out, &t.fan);
    if let (Some(src), Some(drop)) = (d.source_dim, d.dimension_drop) {
        let _ = writeln!(
            out,
            "source dimension {src}: bound {}, dimension drop {}",
            if d.bound_holds == Some(true) {
                "holds"
            } else {
                "fails"
            },
            yes_no(drop)
        );
    }
    out
}

pub fn report(r: &CompactificationReport, sigma: &Fan) -> String {
    let mut out = String::new();
    if let Some(p) = r.proper {
        let _ = writeln!(out, "proper: {}", yes_no(p));
    }
    if let Some(p) = r.premise_holds {
        let _ = writeln!(out, "premise |Trop| ⊇ |Σ|: {}", yes_no(p));
    }
    if let Some(w) = &r.premise_witness {
        let _ = writeln!(out, "  witness outside |Trop|: {w}");
    }
    fan_rays(&mut out, sigma);
    let _ = writeln!(
        out,
        "  {:<14} {:>4} {:>6} {:>12}  witness",
        "cone", "dim", "meets", "expected dim"
    );
    for c in &r.cones {
        let rays: Vec<String> = c.rays.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "  {:<14} {:>4} {:>6} {:>12}  {}",
            format!("[{}]", rays.join(",")),
            c.dim,
            yes_no(c.meets),
            c.expected_dim.map_or("-".to_string(), |d| d.to_string()),
            c.witness
                .as_ref()
                .map_or("-".to_string(), ToString::to_string)
        );
    }
    out
}

pub fn complex(s: &SimplicialComplex) -> String {
    let f: Vec<String> = s.f_vector().iter().map(usize::to_string).collect();
    format!(
        "simplicial complex: {} vertices, dimension {}, f-vector (from the empty simplex) [{}]\n",
        s.vertices().len(),
        s.dim(),
        f.join(", ")
    )
}

pub fn cohomology(b: &BettiTable, w: &W0Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>4} {:>10} {:>16}", "i", "b̃^(i-1)", "dim W0 Hc^i");
    for (i, &d) in w.dims.iter().enumerate() {
        let _ = writeln!(out, "{:>4} {:>10} {:>16}", i, b.get(i as isize - 1), d);
    }
    let _ = writeln!(
        out,
        "reduced Euler characteristic: {}",
        b.euler_characteristic()
    );
    out
}
