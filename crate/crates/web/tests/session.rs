use depthscope::Point;
use depthscope_web::{Explorer, Session, PICK_RADIUS};

fn diamond() -> Session {
    let mut s = Session::new();
    for p in [Point::new(1.0, 0.0), Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)] {
        s.toggle(p);
    }
    s
}

#[test]
fn too_few_points_report_instead_of_failing() {
    let mut s = Session::new();
    s.toggle(Point::new(0.0, 0.0));
    let snap = s.snapshot(&[0.5]).unwrap();
    assert_eq!(snap.points.len(), 1);
    assert!(snap.max_depth.is_none() && snap.levels.is_empty());
    assert!(snap.error.is_some());
    assert!(s.depth_at(Point::new(0.0, 0.0)).is_none());
}

#[test]
fn diamond_snapshot() {
    let s = diamond();
    assert_eq!(s.depth_at(Point::new(0.0, 0.0)), Some(1.0));
    let snap = s.snapshot(&[1.0 / 3.0, 0.99]).unwrap();
    assert_eq!(snap.max_depth, Some(1.0));
    assert_eq!(snap.levels.len(), 2);
    assert_eq!(snap.levels[0].vertices.len(), 4);
    let m = snap.median.unwrap();
    assert!(m[0].abs() < 1e-9 && m[1].abs() < 1e-9);
}

#[test]
fn clicking_near_a_point_removes_it() {
    let mut s = diamond();
    s.toggle(Point::new(1.0 + 0.5 * PICK_RADIUS, 0.0));
    assert_eq!(s.points().len(), 3);
    assert!(s.snapshot(&[0.5]).unwrap().error.is_some());
    s.toggle(Point::new(3.0, 3.0));
    assert_eq!(s.points().len(), 4);
    assert!(s.depth_at(Point::ORIGIN).is_some());
}

#[test]
fn scenarios_load() {
    let s = Session::from_scenario("example1", 60, 7).unwrap();
    assert_eq!(s.points().len(), 60);
    let snap = s.snapshot(&depthscope::FIGURE_ALPHAS).unwrap();
    assert!(!snap.levels.is_empty());
    let json = serde_json::to_string(&snap).unwrap();
    assert!(json.contains("\"levels\""));
    assert!(Session::from_scenario("nope", 60, 7).is_err());
}

#[test]
fn explorer_methods_run_natively() {
    let mut e = Explorer::new();
    for (x, y) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
        e.toggle_point(x, y);
    }
    e.set_levels(vec![0.5]);
    assert_eq!(e.depth_at(0.0, 0.0), 1.0);
    e.clear();
    assert!(e.depth_at(0.0, 0.0).is_nan());
}
