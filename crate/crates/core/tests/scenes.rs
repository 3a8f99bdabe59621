use std::collections::BTreeMap;

use qlevr_gen::sampler::{sample_scene, SamplerConfig};
use qlevr_gen::scene::{validate_scene, ObjectColor, ObjectMaterial, ObjectShape, Size};
use qlevr_gen::spatial;

#[test]
fn sampled_scenes_are_valid_and_cover_the_vocabulary() {
    let config = SamplerConfig { seed: 11, ..Default::default() };
    let mut plane_hist = BTreeMap::new();
    let mut per_plane_hist = BTreeMap::new();
    let (mut shapes, mut colors, mut materials, mut sizes) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for id in 0..2_000 {
        let scene = sample_scene(&config, id).unwrap();
        let report = validate_scene(&scene);
        assert!(report.is_valid(), "scene {id}: {:?}", report.messages());
        *plane_hist.entry(scene.geometric_planes().count()).or_insert(0) += 1;
        for p in &scene.planes {
            *per_plane_hist.entry((p.id == 0, scene.objects_on(p.id).count())).or_insert(0) += 1;
        }
        for o in &scene.objects {
            assert_eq!(spatial::locate(&scene.planes, o), Some(scene.plane_of(o.id)));
            shapes.push(o.shape);
            colors.push(o.color);
            materials.push(o.material);
            sizes.push(o.size);
        }
    }
    assert_eq!(plane_hist.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    assert!(ObjectShape::ALL.iter().all(|s| shapes.contains(s)));
    assert!(ObjectColor::ALL.iter().all(|s| colors.contains(s)));
    assert!(ObjectMaterial::ALL.iter().all(|s| materials.contains(s)));
    assert!(Size::ALL.iter().all(|s| sizes.contains(s)));
    eprintln!("{plane_hist:?}\n{per_plane_hist:?}");
}
