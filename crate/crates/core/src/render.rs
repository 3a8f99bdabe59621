//! SVG rendering of scene graphs.
//!
//! The table is drawn top-down with +x to the right and +y (front) towards the bottom of
//! the image. Every plane and object is one addressable element: planes are `plane-<id>`,
//! objects are `<g id="object-<id>">` groups translated to the object's centre.

use std::fmt::Write as _;

use crate::geometry::Region;
use crate::scene::{ObjectAttributes, ObjectColor, ObjectMaterial, ObjectShape, PlaneAttributes, PlaneColor, PlaneMaterial, SceneGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    /// Canvas edge length in pixels; the unit table maps onto the whole canvas.
    pub size: f64,
    pub object_colors: [(ObjectColor, &'static str); 8],
    pub plane_colors: [(PlaneColor, &'static str); 4],
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            size: 640.0,
            object_colors: [
                (ObjectColor::Blue, "#2a4bd7"),
                (ObjectColor::Brown, "#814a19"),
                (ObjectColor::Cyan, "#29d0d0"),
                (ObjectColor::Gray, "#8a8a8a"),
                (ObjectColor::Green, "#1d8f2e"),
                (ObjectColor::Purple, "#8126c0"),
                (ObjectColor::Red, "#ad2323"),
                (ObjectColor::Yellow, "#ffee33"),
            ],
            plane_colors: [
                (PlaneColor::Black, "#2b2b2b"),
                (PlaneColor::Gray, "#a0a0a0"),
                (PlaneColor::Brown, "#9c6b3c"),
                (PlaneColor::White, "#ffffff"),
            ],
        }
    }
}

impl RenderStyle {
    fn object_color(&self, c: ObjectColor) -> &'static str {
        self.object_colors.iter().find(|(k, _)| *k == c).map(|(_, v)| *v).unwrap_or("#000000")
    }

    fn plane_color(&self, c: PlaneColor) -> &'static str {
        self.plane_colors.iter().find(|(k, _)| *k == c).map(|(_, v)| *v).unwrap_or("#ffffff")
    }

    fn px(&self, v: f64) -> String {
        format!("{:.3}", v * self.size)
    }
}

/// Fill pattern id for an object material; metal is drawn solid.
fn material_pattern(m: ObjectMaterial) -> Option<&'static str> {
    match m {
        ObjectMaterial::Metal => None,
        ObjectMaterial::Rubber => Some("mat-stipple"),
        ObjectMaterial::Leather => Some("mat-crosshatch"),
        ObjectMaterial::Marble => Some("mat-veined"),
        ObjectMaterial::Wood => Some("mat-grain"),
    }
}

fn plane_pattern(m: PlaneMaterial) -> &'static str {
    match m {
        PlaneMaterial::Marble => "mat-veined",
        PlaneMaterial::Wood => "mat-grain",
    }
}

const DEFS: &str = r##"<defs>
<pattern id="mat-stipple" width="6" height="6" patternUnits="userSpaceOnUse"><circle cx="1.5" cy="1.5" r="0.9" fill="#000" fill-opacity="0.35"/><circle cx="4.5" cy="4.5" r="0.9" fill="#000" fill-opacity="0.35"/></pattern>
<pattern id="mat-crosshatch" width="6" height="6" patternUnits="userSpaceOnUse"><path d="M0 0L6 6M6 0L0 6" stroke="#000" stroke-opacity="0.35" stroke-width="0.8"/></pattern>
<pattern id="mat-veined" width="16" height="16" patternUnits="userSpaceOnUse"><path d="M0 12C4 8 8 14 16 4M2 0C6 6 10 2 14 16" fill="none" stroke="#fff" stroke-opacity="0.55" stroke-width="0.9"/></pattern>
<pattern id="mat-grain" width="10" height="5" patternUnits="userSpaceOnUse"><path d="M0 2.5C3 1 7 4 10 2.5" fill="none" stroke="#000" stroke-opacity="0.3" stroke-width="0.8"/></pattern>
</defs>
"##;

/// Renders `scene` as an SVG 1.1 document. Output is a pure function of its inputs.
pub fn render_svg(scene: &SceneGraph, style: &RenderStyle) -> String {
    let s = style.size;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}" data-scene="{}">"#,
        scene.scene_id
    );
    out.push_str(DEFS);
    let background = scene.planes.iter().find(|p| !p.is_geometric());
    let bg_color = background.map(|p| style.plane_color(p.color)).unwrap_or("#ffffff");
    let _ = writeln!(
        out,
        r##"<rect id="plane-0" class="plane" data-shape="non_geometric" data-color="white" x="0" y="0" width="{s}" height="{s}" fill="{bg_color}" stroke="#444" stroke-width="1"/>"##
    );
    for plane in scene.geometric_planes() {
        render_plane(&mut out, plane, style);
    }
    for obj in &scene.objects {
        render_object(&mut out, obj, style);
    }
    out.push_str("</svg>\n");
    out
}

fn render_plane(out: &mut String, plane: &PlaneAttributes, style: &RenderStyle) {
    let fill = style.plane_color(plane.color);
    let material = plane.material.map(|m| m.name()).unwrap_or("none");
    let common = format!(
        r#"id="plane-{}" class="plane" data-shape="{}" data-color="{}" data-material="{material}""#,
        plane.id,
        plane.shape.name(),
        plane.color.name()
    );
    let overlay = plane.material.map(plane_pattern);
    match &plane.region {
        Region::Disc { center, radius } => {
            let geom = format!(r#"cx="{}" cy="{}" r="{}""#, style.px(center.x), style.px(center.y), style.px(*radius));
            let _ = writeln!(out, r##"<circle {common} {geom} fill="{fill}" stroke="#222" stroke-width="1"/>"##);
            if let Some(p) = overlay {
                let _ = writeln!(out, r#"<circle {geom} fill="url(#{p})" pointer-events="none"/>"#);
            }
        }
        Region::Polygon { vertices } => {
            let points: Vec<String> = vertices.iter().map(|v| format!("{},{}", style.px(v.x), style.px(v.y))).collect();
            let points = points.join(" ");
            let _ = writeln!(out, r##"<polygon {common} points="{points}" fill="{fill}" stroke="#222" stroke-width="1"/>"##);
            if let Some(p) = overlay {
                let _ = writeln!(out, r#"<polygon points="{points}" fill="url(#{p})" pointer-events="none"/>"#);
            }
        }
        Region::Background => {}
    }
}

/// Glyph path centred on the origin for an object of pixel radius `r`.
fn glyph(shape: ObjectShape, r: f64) -> String {
    let f = |v: f64| format!("{v:.3}");
    match shape {
        ObjectShape::Sphere => format!(r#"<circle r="{}"/>"#, f(r)),
        ObjectShape::Cube => {
            let h = r * 0.85;
            format!(r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#, f(-h), f(-h), f(2.0 * h), f(2.0 * h))
        }
        ObjectShape::Cylinder => {
            let h = r * 0.85;
            format!(
                r#"<rect x="{}" y="{}" width="{}" height="{}" rx="{}"/>"#,
                f(-h),
                f(-h),
                f(2.0 * h),
                f(2.0 * h),
                f(h * 0.6)
            )
        }
        ObjectShape::Cone => polygon(&[(0.0, -1.0), (0.87, 0.5), (-0.87, 0.5)], r),
        ObjectShape::Tetrahedron => polygon(&[(0.0, 1.0), (-0.87, -0.5), (0.87, -0.5)], r),
        ObjectShape::Pentahedron => polygon(&[(0.0, -1.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)], r),
        ObjectShape::TriangularPrism => polygon(&[(0.0, -1.0), (0.8, -0.35), (0.8, 0.75), (-0.8, 0.75), (-0.8, -0.35)], r),
    }
}

fn polygon(unit: &[(f64, f64)], r: f64) -> String {
    let pts: Vec<String> = unit.iter().map(|(x, y)| format!("{:.3},{:.3}", x * r, y * r)).collect();
    format!(r#"<polygon points="{}"/>"#, pts.join(" "))
}

fn render_object(out: &mut String, obj: &ObjectAttributes, style: &RenderStyle) {
    let r = obj.radius * style.size;
    let g = glyph(obj.shape, r);
    let _ = write!(
        out,
        r#"<g id="object-{}" class="object" data-shape="{}" data-size="{}" data-color="{}" data-material="{}" transform="translate({} {})">"#,
        obj.id,
        obj.shape.name(),
        obj.size.name(),
        obj.color.name(),
        obj.material.name(),
        style.px(obj.position.x),
        style.px(obj.position.y)
    );
    let _ = write!(
        out,
        r##"<g fill="{}" stroke="#111" stroke-width="0.8">{g}</g>"##,
        style.object_color(obj.color)
    );
    if let Some(p) = material_pattern(obj.material) {
        let _ = write!(out, r#"<g fill="url(#{p})">{g}</g>"#);
    } else {
        // Metal: a specular highlight instead of a texture.
        let _ = write!(
            out,
            r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#fff" fill-opacity="0.6"/>"##,
            -r * 0.3,
            -r * 0.3,
            r * 0.2
        );
    }
    out.push_str("</g>\n");
}
