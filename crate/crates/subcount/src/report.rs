//! CSV count reports.
//!
//! Schema version 1. The first line is `# subcount-report v1`, then a CSV
//! header. Node level: `node,substructure,count`, one row per node in index
//! order. Graph level: `substructure,count`, a single row. With pattern
//! columns enabled, 6-cycle reports append `pattern0` .. `pattern4` (node
//! level only). Counting programs and the oracle write identical reports for
//! identical counts.

use std::io::Write;

use subcount_core::CountReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Node,
    Graph,
}

pub fn write_report<W: Write>(out: W, report: &CountReport, level: Level, patterns: bool) -> csv::Result<()> {
    let mut out = out;
    writeln!(out, "# subcount-report v{SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    let kind = report.kind.to_string();
    match level {
        Level::Graph => {
            w.write_record(["substructure", "count"])?;
            w.write_record([kind.as_str(), &report.graph.to_string()])?;
        }
        Level::Node => {
            let pattern_cols = report.patterns.as_ref().filter(|_| patterns);
            let mut header = vec!["node".to_string(), "substructure".into(), "count".into()];
            if pattern_cols.is_some() {
                header.extend((0..5).map(|p| format!("pattern{p}")));
            }
            w.write_record(&header)?;
            for (v, c) in report.node.iter().enumerate() {
                let mut row = vec![v.to_string(), kind.clone(), c.to_string()];
                if let Some(p) = pattern_cols {
                    row.extend(p.counts.iter().map(|col| col[v].to_string()));
                }
                w.write_record(&row)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn report_string(report: &CountReport, level: Level, patterns: bool) -> String {
    let mut buf = Vec::new();
    write_report(&mut buf, report, level, patterns).expect("writing to memory");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use subcount_core::generators::cycle;
    use subcount_core::programs::count;
    use subcount_core::Substructure;

    #[test]
    fn node_and_graph_rows() {
        let r = count(&cycle(3).unwrap(), Substructure::Cycle3, None).unwrap();
        assert_eq!(
            report_string(&r, Level::Node, false),
            "# subcount-report v1\nnode,substructure,count\n0,cycle3,1\n1,cycle3,1\n2,cycle3,1\n"
        );
        assert_eq!(
            report_string(&r, Level::Graph, true),
            "# subcount-report v1\nsubstructure,count\ncycle3,1\n"
        );
    }

    #[test]
    fn pattern_columns() {
        let r = count(&cycle(6).unwrap(), Substructure::Cycle6, None).unwrap();
        let text = report_string(&r, Level::Node, true);
        let mut lines = text.lines().skip(1);
        assert_eq!(lines.next(), Some("node,substructure,count,pattern0,pattern1,pattern2,pattern3,pattern4"));
        assert_eq!(lines.next(), Some("0,cycle6,1,2,0,0,0,0"));
    }
}
