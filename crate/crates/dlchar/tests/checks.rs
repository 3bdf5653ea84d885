use coxdl_dlchar::{central_check, cuspidal_check, degree_check, twist_check, very_regular_check, Pipeline};
use coxdl_torus::GroupSpec;

fn pipeline(q: u64, n: u32, kappa: u32, h: usize) -> Pipeline {
    Pipeline::new(&GroupSpec::new(q, n, kappa, h).unwrap()).unwrap()
}

#[test]
fn character_properties() {
    for (q, n, k, h) in [(2, 2, 0, 1), (3, 2, 0, 1), (3, 2, 0, 2), (2, 2, 1, 2), (2, 3, 0, 1)] {
        let p = pipeline(q, n, k, h);
        for theta in p.general_position_characters() {
            let rep = p.extract(&theta).unwrap();
            for v in [degree_check(&p, &rep), cuspidal_check(&p, &rep), very_regular_check(&p, &rep), central_check(&p, &rep)] {
                assert!(v.pass, "({q},{n},{k},{h}) {}: {}", v.name, v.detail);
            }
            assert_eq!(cuspidal_check(&p, &rep).skipped, k != 0);
        }
    }
}

#[test]
fn twisting_by_norm_characters() {
    let p = pipeline(2, 2, 0, 2);
    for theta in p.general_position_characters() {
        let v = twist_check(&p, &theta);
        assert!(v.pass, "{}", v.detail);
    }
    assert!(twist_check(&pipeline(2, 2, 1, 2), &p.torus().trivial()).skipped);
}

#[test]
fn mackey_division_algebra() {
    let p = pipeline(2, 2, 1, 2);
    let thetas = p.torus().characters();
    let report = p.mackey_matrix(&thetas);
    assert!(report.pass);
    let extracted: Vec<usize> = (0..thetas.len()).filter(|&i| report.measured[i][i].is_some()).collect();
    assert_eq!(extracted.len(), 12);
    for &i in &extracted {
        for &j in &extracted {
            assert_eq!(report.measured[i][j], Some(i128::from(i == j)));
        }
    }
}

#[test]
fn mackey_split_level_two() {
    let p = pipeline(3, 2, 0, 2);
    let gp = p.general_position_characters();
    let report = p.mackey_matrix(&gp);
    assert!(report.pass);
    assert!(report.measured.iter().flatten().all(Option::is_some));
    for (i, row) in report.predicted.iter().enumerate() {
        assert_eq!(row[i], 1);
        assert_eq!(row.iter().sum::<u32>(), 2);
    }
}
