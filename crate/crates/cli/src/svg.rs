use std::fmt::Write;

use aulayout::Layout;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Renders `f` with `scale` pixels per unit, y pointing up.
///
/// Each rectangle carries `data-vertex` and its layout coordinates in
/// `data-rect`. A segment that breaks one-sidedness is drawn with a heavy stroke.
pub fn render(f: &Layout, scale: u32) -> String {
    let s = f64::from(scale);
    let [x0, y0, x1, y1] = f.bbox();
    let (w, h) = (num((x1 - x0) * s), num((y1 - y0) * s));
    let px = |x: f64| num((x - x0) * s);
    let py = |y: f64| num((y1 - y) * s);
    let stroke = 1.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    for (&v, r) in f.rects() {
        let _ = writeln!(
            out,
            r##"  <g data-vertex="{v}"><rect x="{}" y="{}" width="{}" height="{}" data-rect="{}" fill="#f4f1e8" stroke="#222" stroke-width="{}"/><text x="{}" y="{}" text-anchor="middle" dominant-baseline="central">{v}</text></g>"##,
            px(r[0]),
            py(r[3]),
            num((r[2] - r[0]) * s),
            num((r[3] - r[1]) * s),
            r.map(num).join(" "),
            num(stroke),
            px((r[0] + r[2]) / 2.0),
            py((r[1] + r[3]) / 2.0),
        );
    }
    if let Some(seg) = f.non_one_sided_segment() {
        let [a, b, c, d] = seg.endpoints();
        let _ = writeln!(
            out,
            r##"  <line class="not-one-sided" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="{}"/>"##,
            px(a),
            py(b),
            px(c),
            py(d),
            num(3.0 * stroke),
        );
    }
    out.push_str("</svg>");
    out
}
