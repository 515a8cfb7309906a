use pwl_market::analysis::{classify_region, ClassLabel, ClassifierConfig, LabelKind, ParamRegion};
use pwl_market::grids::{
    basin_stats, bifurcation_stats, compute_basin_grid, compute_bifurcation_grid, immediate_basin_violations,
    with_threads, BifurcationSpec, GridSpec2D, OVERLAY_CAP,
};
use pwl_market::io::csv::{read_basin, read_points, write_basin, write_points};
use pwl_market::io::image::{render_basin, render_basin_labels, Palette};
use pwl_market::{ModelParams, State};

fn cfg() -> ClassifierConfig {
    ClassifierConfig { t_max: 20_000, ..Default::default() }
}

fn p(b: f64, c: f64) -> ModelParams {
    ModelParams::new(b, c, 0.05).unwrap()
}

#[test]
fn thread_count_does_not_change_output() {
    let g = GridSpec2D::square(0.25, 40).unwrap();
    let one = with_threads(1, || compute_basin_grid(&p(0.8, 2.5), &g, &cfg())).unwrap().unwrap();
    let four = with_threads(4, || compute_basin_grid(&p(0.8, 2.5), &g, &cfg())).unwrap().unwrap();
    assert_eq!(format!("{:?}", one.cells), format!("{:?}", four.cells));
    assert_eq!(one.overlay, four.overlay);
    assert_eq!(one.centroids, four.centroids);

    let spec = BifurcationSpec { b_min: 0.0, b_max: 1.1, c_min: 0.0, c_max: 4.4, nb: 30, nc: 30, h: 0.05, initial: State::new(0.04, 0.0) };
    let a = with_threads(1, || compute_bifurcation_grid(&spec, &cfg())).unwrap().unwrap();
    let b = with_threads(3, || compute_bifurcation_grid(&spec, &cfg())).unwrap().unwrap();
    assert_eq!(format!("{:?}", a.cells), format!("{:?}", b.cells));
}

#[test]
fn bifurcation_cross_tab_is_consistent() {
    let spec = BifurcationSpec { b_min: 0.0, b_max: 1.1, c_min: 0.0, c_max: 4.4, nb: 44, nc: 44, h: 0.05, initial: State::new(0.06, 0.06) };
    let g = compute_bifurcation_grid(&spec, &cfg()).unwrap();
    let s = bifurcation_stats(&g);
    let table = s.by_region.expect("bifurcation stats carry a cross tab");
    let total: usize = table.iter().flatten().sum();
    assert_eq!(total, s.total);
    assert_eq!(s.total, 44 * 44);
    for k in LabelKind::ALL {
        let column: usize = table.iter().map(|row| row[k.index()]).sum();
        assert_eq!(column, s.count(k));
    }
    assert_eq!(s.region_count(ParamRegion::R1, LabelKind::Wqa), 0);
    assert_eq!(s.region_count(ParamRegion::R1, LabelKind::Divergent), 0);
    assert_eq!(s.region_count(ParamRegion::R3, LabelKind::Wqa), 0);
    for j in 0..44 {
        for i in 0..44 {
            let region = classify_region(&spec.params(i, j).unwrap(), 1e-9);
            assert_eq!(g.region(i, j), region);
        }
    }
}

#[test]
fn immediate_basin_cells_are_fixed_points() {
    for (b, c) in [(0.8, 2.5), (0.4, 2.85), (0.6, 1.0)] {
        let g = compute_basin_grid(&p(b, c), &GridSpec2D::square(0.25, 60).unwrap(), &cfg()).unwrap();
        assert!(immediate_basin_violations(&g).is_empty(), "({b}, {c})");
        let s = basin_stats(&g);
        assert_eq!(s.total, 3600);
        assert!((s.fractions.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn overlay_is_bounded() {
    let g = compute_basin_grid(&p(0.8, 1.0), &GridSpec2D::square(0.25, 80).unwrap(), &cfg()).unwrap();
    assert!(g.cells.contains(&ClassLabel::Wqa));
    assert!(!g.overlay.is_empty());
    assert!(g.overlay.len() <= OVERLAY_CAP);
    assert!(g.overlay.iter().all(|s| s.max_abs() < 1.0));
}

#[test]
fn globally_attracting_picture_has_no_attractor_colours() {
    let pal = Palette::default();
    let g = compute_basin_grid(&p(0.8, 0.25), &GridSpec2D::square(0.25, 60).unwrap(), &cfg()).unwrap();
    let img = render_basin(&g, &pal);
    assert!(!img.contains(pal.wqa_basin));
    assert!(!img.contains(pal.mirror_wqa_basin));
    assert!(!img.contains(pal.divergent));
    assert!(!img.contains(pal.wqa_overlay));
}

#[test]
fn picture_can_be_rebuilt_from_tables() {
    let dir = tempfile::tempdir().unwrap();
    let pal = Palette::default();
    let params = p(0.8, 2.5);
    let g = compute_basin_grid(&params, &GridSpec2D::square(0.25, 50).unwrap(), &cfg()).unwrap();
    let (cells, points) = (dir.path().join("basin.csv"), dir.path().join("overlay.csv"));
    write_basin(&cells, &g).unwrap();
    write_points(&points, &g.overlay).unwrap();

    let rows = read_basin(&cells).unwrap();
    assert_eq!(rows.len(), 2500);
    assert!(rows.iter().enumerate().all(|(k, r)| r.i == k % 50 && r.j == k / 50));
    let overlay = read_points(&points).unwrap();
    assert_eq!(overlay, g.overlay);
    let rebuilt = render_basin_labels(&g.spec, &params, rows.iter().map(|r| r.label.as_str()), &overlay, &pal);
    assert_eq!(rebuilt.to_ppm(), render_basin(&g, &pal).to_ppm());
}

#[test]
fn scaled_windows_give_the_same_picture() {
    let g = GridSpec2D::square(0.25, 30).unwrap();
    let small = compute_basin_grid(&p(0.8, 2.5), &g, &cfg()).unwrap();
    let big = compute_basin_grid(&ModelParams::new(0.8, 2.5, 0.2).unwrap(), &g.scaled(4.0), &cfg()).unwrap();
    let kinds = |cells: &[ClassLabel]| cells.iter().map(|c| c.kind()).collect::<Vec<_>>();
    assert_eq!(kinds(&small.cells), kinds(&big.cells));
}
