use std::io::{self, Write};

use super::PartialColoring;
use crate::distset::DistanceSet;

pub const POINTS_CSV_HEADER: &str = "a,b,value,value_approx,color";

/// One row per colored point in lexicographic `(a, b)` order. `value` is the
/// exact embedded number as `p/q+r/s*s`; `value_approx` is for plotting only.
pub fn write_points_csv<W: Write>(ds: &DistanceSet, coloring: &PartialColoring, out: &mut W) -> io::Result<()> {
    writeln!(out, "{POINTS_CSV_HEADER}")?;
    for (p, c) in coloring.iter() {
        let v = ds.embed(p);
        writeln!(out, "{},{},{},{:.12},{}", p.a, p.b, v.to_fraction_string(), v.approx(), c)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distset::generate_theorem_family;
    use crate::lattice::{LinearColoring, Window};

    #[test]
    fn rows_and_header() {
        let d = generate_theorem_family(3).unwrap();
        let col = LinearColoring { t: 3, weights: (1, 1) }.restrict(&Window::square(1));
        let mut buf = Vec::new();
        write_points_csv(&d, &col, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], POINTS_CSV_HEADER);
        assert_eq!(lines[1], "-1,-1,-1/1-1/1*s,-2.414213562373,1");
        assert_eq!(lines[9], "1,1,1/1+1/1*s,2.414213562373,2");
    }

    #[test]
    fn empty_coloring_is_header_only() {
        let d = generate_theorem_family(2).unwrap();
        let mut buf = Vec::new();
        write_points_csv(&d, &PartialColoring::new(2), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{POINTS_CSV_HEADER}\n"));
    }
}
