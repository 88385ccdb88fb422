use confdisk::motion::{default_t_grid, fitness_report, FitnessOptions, Motion, MotionFamily, Verdict};
use confdisk::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn holomorphic_families_pass_everywhere() {
    for m in [
        MotionFamily::trivial_disk(),
        MotionFamily::trivial_exterior(),
        MotionFamily::Joukowski,
        MotionFamily::slit_grow(),
    ] {
        let r = fitness_report(&m, &default_t_grid(), FitnessOptions::default()).unwrap();
        assert_eq!(r.records.len(), 49);
        assert!(r.consistent && r.all_pass(), "{}", r.to_csv());
        for rec in &r.records[1..] {
            assert_eq!(rec.verdict_string(), "PPPP", "{} at {}", m.label(), rec.t);
        }
    }
}

#[test]
fn affine_stretch_fails_where_determinate() {
    let ts = [c(0.0, 0.0), c(0.0, 0.5), c(-0.53, 0.53), c(0.75, 0.0)];
    let opts = FitnessOptions {
        n: 256,
        ..FitnessOptions::default()
    };
    let r = fitness_report(&MotionFamily::AffineStretch, &ts, opts).unwrap();
    assert!(r.consistent && r.all_fail(), "{}", r.to_csv());
    assert_eq!(r.records[0].verdicts[1], Verdict::Fail);
    for rec in &r.records[1..] {
        assert!(rec.dev_iii.unwrap() > 0.1);
        assert!((rec.dev_iii.unwrap() - rec.dev_v.unwrap()).abs() < 5e-3);
    }
}

#[test]
fn csv_layout() {
    let r = fitness_report(&MotionFamily::Joukowski, &[c(0.0, 0.0), c(0.3, 0.0)], FitnessOptions::default()).unwrap();
    let csv = r.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t_re,t_im,dev_iii,dev_iv,dev_v,dev_vi,verdicts,consistent");
    assert!(lines[1].ends_with(",?P?P,true"));
    assert!(lines[2].ends_with(",PPPP,true"));
    assert!(!csv.contains('\r'));
}
