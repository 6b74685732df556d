use pgarcs::bounds::Bound;
use pgarcs::field::prime_power;
use pgarcs::tables::{
    bundled_all, bundled_table, bundled_tables, figure_series, load_table, merge, parse_table,
    verify_table, FigureKind, TableEntry, TableError,
};
use std::io::Write;

fn lookup(entries: &[TableEntry], q: u64) -> u64 {
    entries.iter().find(|e| e.q == q).unwrap().t2
}

#[test]
fn table4_spot_checks() {
    let t4 = bundled_table(4).unwrap();
    let pairs = [
        (2, 4), (3, 4), (4, 6), (5, 6), (7, 6), (8, 6), (9, 6), (11, 7), (13, 8), (16, 9),
        (19, 10), (49, 18), (109, 30), (601, 90), (1024, 124), (2383, 217), (4096, 300),
        (6859, 405), (9973, 499), (9941, 500),
    ];
    for (q, t) in pairs {
        assert_eq!(lookup(&t4, q), t, "q={q}");
    }
}

#[test]
fn table_coverage() {
    let is_pp = |q: &u64| prime_power(*q).is_some();
    let qs = |id| bundled_table(id).unwrap().iter().map(|e| e.q).collect::<Vec<_>>();
    assert_eq!(qs(4), (2..=10_000).filter(is_pp).collect::<Vec<_>>());
    assert_eq!(qs(5), (10_001..=100_000).filter(is_pp).collect::<Vec<_>>());
    assert_eq!(qs(6), (100_001..=160_000).filter(is_pp).collect::<Vec<_>>());
    assert_eq!(qs(3).len(), 37);
    assert_eq!(lookup(&bundled_table(3).unwrap(), 160_001), 2383);
    assert!(bundled_table(7).is_none() && bundled_table(0).is_none());
    // Entries for q <= 10000 listed in table 1 agree with table 4.
    let t4 = bundled_table(4).unwrap();
    for e in bundled_table(1).unwrap().iter().filter(|e| e.q <= 10_000) {
        assert_eq!(e.t2, lookup(&t4, e.q), "q={}", e.q);
    }
}

#[test]
fn no_violations_on_stated_ranges() {
    for entries in [bundled_tables(), bundled_all()] {
        let report = verify_table(&entries);
        for b in Bound::ALL {
            let s = &report.summary[&b];
            assert_eq!(s.violations, 0, "{}", b.name());
            assert!(s.in_range > 0);
        }
        for r in &report.entries {
            for c in r.checks.iter().filter(|c| c.in_range) {
                assert!(r.diff(c) > 0.0);
                let pct = r.percent(c);
                assert!(pct > 0.0 && pct < 100.0);
            }
        }
    }
}

#[test]
fn report_csv_has_a_row_per_entry_and_bound() {
    let entries = bundled_table(3).unwrap();
    let report = verify_table(&entries);
    let mut buf = Vec::new();
    report.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q,t2,bound_name,bound_value,in_range,pass,diff,percent");
    assert_eq!(lines.count(), entries.len() * Bound::ALL.len());
}

#[test]
fn load_merges_and_validates_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "q,t2,source\n67,23,T4\n67,22,T1\n2,4,T4").unwrap();
    let e = load_table(&path).unwrap();
    assert_eq!(e.len(), 2);
    assert_eq!(lookup(&e, 67), 22);
    std::fs::write(&path, "q,t2\n6,5\n").unwrap();
    assert!(matches!(load_table(&path), Err(TableError::NotPrimePower { q: 6, .. })));
    assert!(matches!(load_table(dir.path().join("missing.csv")), Err(TableError::Io(_))));
}

#[test]
fn figure_series_round_trip_through_csv() {
    let entries = bundled_tables();
    for kind in FigureKind::ALL {
        let s = figure_series(&entries, kind);
        assert_eq!(s.rows.len(), entries.len());
        let mut a = Vec::new();
        s.write_csv(&mut a).unwrap();
        let mut b = Vec::new();
        figure_series(&entries, kind).write_csv(&mut b).unwrap();
        assert_eq!(a, b);
        let mut rdr = csv::Reader::from_reader(a.as_slice());
        assert_eq!(rdr.headers().unwrap().len(), kind.columns().len());
        let mut rows = 0;
        for rec in rdr.records() {
            let rec = rec.unwrap();
            for cell in rec.iter().filter(|c| !c.is_empty()) {
                cell.parse::<f64>().unwrap();
            }
            rows += 1;
        }
        assert_eq!(rows, entries.len());
    }
}

#[test]
fn figure_values() {
    let e = parse_table("q,t2\n109,30\n160001,2383\n".as_bytes()).unwrap();
    let h = figure_series(&e, FigureKind::H);
    let row = &h.rows[1];
    assert!((row[1].unwrap() - 0.9936).abs() < 1e-4);
    assert_eq!((row[3], row[4]), (Some(0.998), Some(1.006)));
    let c = figure_series(&e, FigureKind::C);
    assert!(c.rows[0][1].unwrap() < 0.7295);
    let d = figure_series(&merge(bundled_tables()), FigureKind::DiffConjLogPower);
    for row in d.rows.iter().filter(|r| r[0].unwrap() >= 109.0) {
        assert!(row[1].unwrap() > 0.0 && row[2].unwrap() > 0.0);
    }
}
