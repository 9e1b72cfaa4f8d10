//! Serialization of crease patterns to the FOLD interchange format and
//! to SVG diagrams. Both outputs are byte-deterministic: numbers are
//! written with twelve significant digits, vertices are ordered by id
//! and edges lexicographically by role.

use crate::canonical::CanonicalPair;
use crate::error::{Error, Result};
use crate::euclid::Point2;
use crate::pattern::{Assignment, CreasePattern, EdgeShape};

/// Styling knobs for the SVG renderer.
#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// SVG stroke attributes for mountain creases.
    pub mountain_style: String,
    pub valley_style: String,
    pub border_style: String,
    /// Stroke for unassigned (hybrid) creases.
    pub flat_style: String,
    /// Ray truncation length as a multiple of the pattern diameter.
    pub boundary_margin: f64,
    pub label_points: bool,
    /// SVG user units per unit of ridge length.
    pub units_per_ridge: f64,
    /// Mirror the drawing left-right (front view of a back-side
    /// development).
    pub mirror: bool,
}

impl Default for RenderOptions {
    fn default() -> RenderOptions {
        RenderOptions {
            mountain_style: "stroke:#c22;stroke-width:1.5".into(),
            valley_style: "stroke:#22c;stroke-width:1.5;stroke-dasharray:6 3".into(),
            border_style: "stroke:#000;stroke-width:1".into(),
            flat_style: "stroke:#777;stroke-width:1;stroke-dasharray:2 3".into(),
            boundary_margin: 1.5,
            label_points: true,
            units_per_ridge: 100.0,
            mirror: false,
        }
    }
}

/// Twelve significant digits in scientific notation; the exponent form
/// keeps the representation identical across platforms.
fn fmt(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{:.11e}", x)
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Flattened, deterministic view of a pattern: vertices sorted by id
/// followed by synthetic ray endpoints, edges sorted by role label.
struct Layout {
    coords: Vec<Point2>,
    /// Indices (into `coords`) of synthetic ray endpoints.
    truncated: Vec<usize>,
    /// `(from, to, assignment, role)` rows.
    edges: Vec<(usize, usize, Assignment, String)>,
}

fn diameter(cp: &CreasePattern) -> f64 {
    let xs: Vec<f64> = cp.vertices().iter().map(|v| v.at.x).collect();
    let ys: Vec<f64> = cp.vertices().iter().map(|v| v.at.y).collect();
    let span = |vals: &[f64]| {
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    (span(&xs).powi(2) + span(&ys).powi(2)).sqrt().max(1.0)
}

fn layout(cp: &CreasePattern, margin: f64) -> Result<Layout> {
    cp.validate()?;
    if cp.edges().is_empty() {
        return Err(Error::InvalidPattern("pattern has no creases".into()));
    }
    let reach = margin * diameter(cp);

    let mut order: Vec<usize> = (0..cp.vertices().len()).collect();
    order.sort_by(|&a, &b| cp.vertices()[a].id.cmp(&cp.vertices()[b].id));
    let mut remap = vec![0usize; order.len()];
    for (new_ix, &old_ix) in order.iter().enumerate() {
        remap[old_ix] = new_ix;
    }
    let mut coords: Vec<Point2> = order.iter().map(|&i| cp.vertices()[i].at).collect();

    let mut rows: Vec<(usize, usize, Assignment, String)> = Vec::new();
    let mut truncated = Vec::new();
    let mut edge_order: Vec<usize> = (0..cp.edges().len()).collect();
    edge_order.sort_by(|&a, &b| {
        let (ea, eb) = (&cp.edges()[a], &cp.edges()[b]);
        (&ea.role, a).cmp(&(&eb.role, b))
    });
    for ix in edge_order {
        let e = &cp.edges()[ix];
        match e.shape {
            EdgeShape::Segment { from, to } => {
                rows.push((remap[from], remap[to], e.assignment, e.role.clone()));
            }
            EdgeShape::Ray { from, dir } => {
                let tip = cp.vertices()[from].at.add(dir.scale(reach));
                coords.push(tip);
                truncated.push(coords.len() - 1);
                rows.push((remap[from], coords.len() - 1, e.assignment, e.role.clone()));
            }
        }
    }
    Ok(Layout { coords, truncated, edges: rows })
}

fn frame_body(cp: &CreasePattern, lay: &Layout, indent: &str) -> String {
    let mut out = String::new();
    let viewed_from = cp
        .metadata()
        .iter()
        .find(|(k, _)| k == "viewed_from")
        .map(|(_, v)| v.as_str())
        .unwrap_or("front");
    out.push_str(&format!("{indent}\"frame_classes\": [\"creasePattern\"],\n"));
    out.push_str(&format!(
        "{indent}\"frame_title\": {},\n",
        json_string(&format!("{} origon gadget", cp.kind().as_str()))
    ));
    out.push_str(&format!("{indent}\"vertices_coords\": [\n"));
    for (i, q) in lay.coords.iter().enumerate() {
        let comma = if i + 1 < lay.coords.len() { "," } else { "" };
        out.push_str(&format!("{indent}  [{}, {}]{comma}\n", fmt(q.x), fmt(q.y)));
    }
    out.push_str(&format!("{indent}],\n"));
    out.push_str(&format!("{indent}\"edges_vertices\": [\n"));
    for (i, (a, b, _, _)) in lay.edges.iter().enumerate() {
        let comma = if i + 1 < lay.edges.len() { "," } else { "" };
        out.push_str(&format!("{indent}  [{a}, {b}]{comma}\n"));
    }
    out.push_str(&format!("{indent}],\n"));
    let assignments: Vec<String> =
        lay.edges.iter().map(|(_, _, a, _)| json_string(a.letter())).collect();
    out.push_str(&format!(
        "{indent}\"edges_assignment\": [{}],\n",
        assignments.join(", ")
    ));
    let roles: Vec<String> = lay.edges.iter().map(|(_, _, _, r)| json_string(r)).collect();
    out.push_str(&format!("{indent}\"origon:edge_roles\": [{}],\n", roles.join(", ")));
    let trunc: Vec<String> = lay.truncated.iter().map(|i| i.to_string()).collect();
    out.push_str(&format!(
        "{indent}\"origon:truncated_vertices\": [{}],\n",
        trunc.join(", ")
    ));
    out.push_str(&format!(
        "{indent}\"origon:viewed_from\": {}",
        json_string(viewed_from)
    ));
    out
}

/// Renders one pattern as a FOLD 1.1 document.
pub fn to_fold(cp: &CreasePattern) -> Result<String> {
    let lay = layout(cp, 1.5)?;
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"file_spec\": 1.1,\n");
    out.push_str("  \"file_creator\": \"origon\",\n");
    out.push_str(&frame_body(cp, &lay, "  "));
    out.push_str("\n}\n");
    Ok(out)
}

/// Renders a canonical pair as one multi-frame FOLD document: the
/// positive gadget is the top-level frame, the negative and hybrid
/// patterns follow in `file_frames`.
pub fn pair_to_fold(pair: &CanonicalPair) -> Result<String> {
    let lead = layout(&pair.positive, 1.5)?;
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"file_spec\": 1.1,\n");
    out.push_str("  \"file_creator\": \"origon\",\n");
    out.push_str(&frame_body(&pair.positive, &lead, "  "));
    out.push_str(",\n  \"file_frames\": [\n");
    for (i, cp) in [&pair.negative, &pair.hybrid].into_iter().enumerate() {
        let lay = layout(cp, 1.5)?;
        out.push_str("    {\n");
        out.push_str(&frame_body(cp, &lay, "      "));
        out.push_str("\n    }");
        out.push_str(if i == 0 { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    Ok(out)
}

/// Renders one pattern as an SVG diagram.
pub fn to_svg(cp: &CreasePattern, opts: &RenderOptions) -> Result<String> {
    let lay = layout(cp, opts.boundary_margin)?;
    let scale = opts.units_per_ridge;
    let flip = if opts.mirror { -1.0 } else { 1.0 };
    // SVG y grows downward; the construction hangs below the apex, so
    // flipping y puts the gadget upright on screen.
    let tx = |q: Point2| (flip * q.x * scale, -q.y * scale);

    let pts: Vec<(f64, f64)> = lay.coords.iter().map(|&q| tx(q)).collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.05 * scale.max(1.0) + 8.0;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        fmt(min_x - pad),
        fmt(min_y - pad),
        fmt(max_x - min_x + 2.0 * pad),
        fmt(max_y - min_y + 2.0 * pad)
    ));
    out.push_str(&format!(
        "  <title>{} origon gadget crease pattern</title>\n",
        cp.kind().as_str()
    ));
    out.push_str("  <g fill=\"none\" stroke-linecap=\"round\">\n");
    for (a, b, assignment, role) in &lay.edges {
        let style = match assignment {
            Assignment::Mountain => &opts.mountain_style,
            Assignment::Valley => &opts.valley_style,
            Assignment::Border => &opts.border_style,
            Assignment::Flat => &opts.flat_style,
        };
        let (x1, y1) = pts[*a];
        let (x2, y2) = pts[*b];
        out.push_str(&format!(
            "    <path d=\"M {} {} L {} {}\" style=\"{}\"><desc>{}</desc></path>\n",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2),
            style,
            xml_escape(role)
        ));
    }
    out.push_str("  </g>\n");
    if opts.label_points {
        out.push_str("  <g font-size=\"10\" font-family=\"sans-serif\" fill=\"#000\">\n");
        let named = lay.coords.len() - lay.truncated.len();
        let mut ids: Vec<&str> = cp.vertices().iter().map(|v| v.id.as_str()).collect();
        ids.sort();
        for (i, id) in ids.iter().enumerate().take(named) {
            let (x, y) = pts[i];
            out.push_str(&format!(
                "    <text x=\"{}\" y=\"{}\">{}</text>\n",
                fmt(x + 3.0),
                fmt(y - 3.0),
                xml_escape(id)
            ));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
