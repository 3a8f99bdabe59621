use qlevr_gen::geometry::Region;
use qlevr_gen::render::{render_svg, RenderStyle};
use qlevr_gen::sampler::{sample_scene, SamplerConfig};

/// Value of `attr="..."` within `element`.
fn attr<'a>(element: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = element.find(&key)? + key.len();
    let len = element[start..].find('"')?;
    Some(&element[start..start + len])
}

/// Opening tags of every element whose id starts with `prefix`.
fn elements<'a>(svg: &'a str, prefix: &str) -> Vec<&'a str> {
    let key = format!("id=\"{prefix}");
    svg.match_indices(&key)
        .map(|(i, _)| {
            let start = svg[..i].rfind('<').unwrap();
            let end = i + svg[i..].find('>').unwrap();
            &svg[start..=end]
        })
        .collect()
}

fn id_of(element: &str, prefix: &str) -> usize {
    attr(element, "id").unwrap().strip_prefix(prefix).unwrap().parse().unwrap()
}

#[test]
fn positions_parse_back_within_half_a_pixel() {
    let style = RenderStyle::default();
    let config = SamplerConfig { seed: 17, ..Default::default() };
    for scene_id in 0..100 {
        let scene = sample_scene(&config, scene_id).unwrap();
        let svg = render_svg(&scene, &style);
        assert_eq!(svg, render_svg(&scene, &style), "scene {scene_id} is not deterministic");

        let objects = elements(&svg, "object-");
        let planes = elements(&svg, "plane-");
        assert_eq!(objects.len(), scene.objects.len());
        assert_eq!(planes.len(), scene.planes.len());

        for el in objects {
            let obj = &scene.objects[id_of(el, "object-")];
            let t = attr(el, "transform").unwrap();
            let inner = t.strip_prefix("translate(").unwrap().strip_suffix(')').unwrap();
            let xy: Vec<f64> = inner.split(' ').map(|v| v.parse().unwrap()).collect();
            assert!((xy[0] - obj.position.x * style.size).abs() <= 0.5);
            assert!((xy[1] - obj.position.y * style.size).abs() <= 0.5);
            assert_eq!(attr(el, "data-shape"), Some(obj.shape.name()));
            assert_eq!(attr(el, "data-color"), Some(obj.color.name()));
        }
        for el in planes {
            let plane = &scene.planes[id_of(el, "plane-")];
            match &plane.region {
                Region::Disc { center, radius } => {
                    let cx: f64 = attr(el, "cx").unwrap().parse().unwrap();
                    let cy: f64 = attr(el, "cy").unwrap().parse().unwrap();
                    let r: f64 = attr(el, "r").unwrap().parse().unwrap();
                    assert!((cx - center.x * style.size).abs() <= 0.5);
                    assert!((cy - center.y * style.size).abs() <= 0.5);
                    assert!((r - radius * style.size).abs() <= 0.5);
                }
                Region::Polygon { vertices } => {
                    let points: Vec<(f64, f64)> = attr(el, "points")
                        .unwrap()
                        .split(' ')
                        .map(|p| {
                            let (x, y) = p.split_once(',').unwrap();
                            (x.parse().unwrap(), y.parse().unwrap())
                        })
                        .collect();
                    assert_eq!(points.len(), vertices.len());
                    for ((x, y), v) in points.iter().zip(vertices) {
                        assert!((x - v.x * style.size).abs() <= 0.5 && (y - v.y * style.size).abs() <= 0.5);
                    }
                }
                Region::Background => assert!(el.starts_with("<rect")),
            }
        }
    }
}

#[test]
fn draw_order_is_background_planes_objects() {
    let scene = sample_scene(&SamplerConfig { seed: 3, ..Default::default() }, 0).unwrap();
    let svg = render_svg(&scene, &RenderStyle::default());
    let background = svg.find("id=\"plane-0\"").unwrap();
    let last_plane = svg.rfind("class=\"plane\"").unwrap();
    let first_object = svg.find("class=\"object\"").unwrap();
    assert!(background < last_plane && last_plane < first_object);
}
