use qsp::geometry::{BodyVolume, ConvexShape, Point2, Pose2};
use qsp::qmp::{HeuristicsConfig, QmpPlanner};
use qsp::roadmap::PlannerParams;
use qsp::scene::{NestedRobotSequence, PlannerDefaults, PlanningProblem, RobotKind, RobotModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn problem() -> PlanningProblem<f64> {
    let disc = RobotModel {
        name: "disc".into(),
        kind: RobotKind::FreeFloating {
            parts: vec![(ConvexShape::disc(Point2::new(0.0, 0.0), 0.5).unwrap(), Pose2::identity())],
            rotates: false,
        },
    };
    let square = RobotModel {
        name: "square".into(),
        kind: RobotKind::FreeFloating {
            parts: vec![(ConvexShape::rect(-0.5, -0.5, 0.5, 0.5).unwrap(), Pose2::identity())],
            rotates: true,
        },
    };
    let seq = NestedRobotSequence::new(vec![disc, square], (0.0, 10.0), (0.0, 10.0), None).unwrap();
    let env = BodyVolume::new(vec![
        (ConvexShape::rect(0.0, 0.0, 10.0, 4.0).unwrap(), Pose2::identity()),
        (ConvexShape::rect(0.0, 5.2, 3.9, 10.0).unwrap(), Pose2::identity()),
        (ConvexShape::rect(6.1, 5.2, 10.0, 10.0).unwrap(), Pose2::identity()),
        (ConvexShape::rect(3.9, 7.4, 6.1, 10.0).unwrap(), Pose2::identity()),
    ]).unwrap();
    let space = seq.decomposition().level(2).clone();
    PlanningProblem::new(
        "notch".into(),
        env,
        seq,
        space.configuration(vec![1.5, 4.6, 0.0]).unwrap(),
        space.configuration(vec![1.5, 4.6, std::f64::consts::PI]).unwrap(),
        PlannerDefaults::default(),
    ).unwrap()
}

fn main() {
    let p = problem();
    let variants = [
        ("default", HeuristicsConfig::default()),
        ("bias-only", HeuristicsConfig { thicken_enabled: false, ..HeuristicsConfig::default() }),
        ("thicken-only", HeuristicsConfig { bias_enabled: false, ..HeuristicsConfig::default() }),
        ("none", HeuristicsConfig::none()),
    ];
    for (name, h) in variants {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut planner = QmpPlanner::new(&p, h, PlannerParams::default()).unwrap();
        let t0 = std::time::Instant::now();
        let mut solved_at = None;
        let mut accepted = 0u64;
        let mut isolated = 0u64;
        let mut bias_accepted = 0u64;
        let mut bias_isolated = 0u64;
        for i in 0..8000u64 {
            if planner.solved() { solved_at = Some(i); break; }
            let r = planner.step(&mut rng).unwrap();
            if r.level == 2 && r.accepted {
                accepted += 1;
                if r.new_edges == 0 { isolated += 1; }
                if r.from_path_bias {
                    bias_accepted += 1;
                    if r.new_edges == 0 { bias_isolated += 1; }
                }
            }
            if t0.elapsed().as_secs() > 45 { break; }
        }
        println!(
            "{name}: solved={solved_at:?} accepted={accepted} isolated={isolated} ({:.1}%) bias_acc={bias_accepted} bias_iso={bias_isolated} t={:?}",
            100.0 * isolated as f64 / accepted.max(1) as f64, t0.elapsed()
        );
    }
}
