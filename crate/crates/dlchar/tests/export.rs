use coxdl_dlchar::{character_table_csv, character_table_json, Pipeline};
use coxdl_torus::GroupSpec;
use coxdl_variety::CountCache;

#[test]
fn tables_and_cache_reuse() {
    let spec = GroupSpec::new(2, 2, 0, 1).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut cache = CountCache::open(dir.path()).unwrap();
    let p = Pipeline::with_cache(&spec, &mut cache).unwrap();
    assert_eq!(cache.len(), p.classes().count() * p.torus().order());
    let mut again = CountCache::open(dir.path()).unwrap();
    let q = Pipeline::with_cache(&spec, &mut again).unwrap();
    assert_eq!(p.table().counts, q.table().counts);
    assert_eq!(again.misses, 0);

    let rows: Vec<_> =
        p.general_position_characters().into_iter().map(|t| (t.clone(), p.extract(&t).unwrap().chi)).collect();
    let json = character_table_json(&p, &rows);
    assert_eq!(json["classes"].as_array().unwrap().len(), 3);
    assert_eq!(json["characters"].as_array().unwrap().len(), 2);
    let csv = character_table_csv(&p, &rows).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 3);
    assert!(csv.lines().any(|l| l.ends_with(",1,1,1.000000,0.000000")));
}
