use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::{canonical_form, ColoredGraph, EdgeColor, PatternGraph};

const PATTERN_DATA: &str = include_str!("../../data/patterns.txt");

#[derive(Debug, Clone)]
pub struct NamedPattern {
    pub name: String,
    pub pattern: PatternGraph,
    tags: Vec<String>,
}

/// Forbidden family restricting which colored graphs are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// No restriction.
    Unrestricted,
    /// {B3, B3+, B5}.
    Fc5,
    /// {B3, B3+, B3*, B5, B5+}.
    Fc7,
}

fn catalogue() -> &'static [NamedPattern] {
    static CATALOGUE: OnceLock<Vec<NamedPattern>> = OnceLock::new();
    CATALOGUE.get_or_init(|| {
        PATTERN_DATA
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let mut cols = l.split_whitespace();
                let name = cols.next().expect("pattern name").to_string();
                let pattern = cols
                    .next()
                    .and_then(|e| e.parse().ok())
                    .unwrap_or_else(|| panic!("bad pattern line `{l}`"));
                NamedPattern { name, pattern, tags: cols.map(String::from).collect() }
            })
            .collect()
    })
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Unrestricted => "NONE",
            Family::Fc5 => "FC5",
            Family::Fc7 => "FC7",
        }
    }

    /// Forbidden patterns, in data-file order.
    pub fn patterns(self) -> &'static [NamedPattern] {
        static FAMILIES: OnceLock<BTreeMap<Family, Vec<NamedPattern>>> = OnceLock::new();
        let all = FAMILIES.get_or_init(|| {
            [Family::Unrestricted, Family::Fc5, Family::Fc7]
                .into_iter()
                .map(|f| {
                    let ps = catalogue().iter().filter(|p| p.tags.iter().any(|t| t == f.name())).cloned().collect();
                    (f, ps)
                })
                .collect()
        });
        &all[&self]
    }

    pub fn pattern_by_name(name: &str) -> Option<&'static NamedPattern> {
        catalogue().iter().find(|p| p.name == name)
    }

    /// Largest pattern order; 0 when unrestricted.
    pub fn max_pattern_order(self) -> usize {
        self.patterns().iter().map(|p| p.pattern.order()).max().unwrap_or(0)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "NONE" => Ok(Family::Unrestricted),
            "FC5" => Ok(Family::Fc5),
            "FC7" => Ok(Family::Fc7),
            _ => Err(format!("unknown family `{s}` (expected NONE, FC5 or FC7)")),
        }
    }
}

/// All non-isomorphic red/blue colorings of the path on `vertices` vertices.
pub fn path_colorings(vertices: usize) -> Vec<ColoredGraph> {
    assert!(vertices >= 2);
    let m = vertices - 1;
    let mut seen = BTreeMap::new();
    for mask in 0..1u32 << m {
        let mut g = ColoredGraph::empty(vertices);
        for i in 0..m {
            let c = if mask >> i & 1 == 1 { EdgeColor::Blue } else { EdgeColor::Red };
            g.set_color(i, i + 1, c);
        }
        seen.entry(canonical_form(&g)).or_insert(g);
    }
    seen.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{pairs, CanonicalForm, PatternColor};

    #[test]
    fn family_membership() {
        let names = |f: Family| f.patterns().iter().map(|p| p.name.as_str()).collect::<Vec<_>>();
        assert_eq!(names(Family::Fc5), ["B3", "B3+", "B5"]);
        assert_eq!(names(Family::Fc7), ["B3", "B3+", "B3*", "B5", "B5+"]);
        assert!(names(Family::Unrestricted).is_empty());
        assert_eq!(Family::Fc7.max_pattern_order(), 6);
    }

    #[test]
    fn pattern_shapes() {
        let p = |n: &str| &Family::pattern_by_name(n).unwrap().pattern;
        assert_eq!((p("B3").order(), p("B3").edge_count()), (3, 3));
        assert_eq!((p("B3+").order(), p("B3+").edge_count()), (4, 4));
        assert_eq!((p("B3*").order(), p("B3*").edge_count()), (5, 5));
        assert_eq!((p("B5").order(), p("B5").edge_count()), (5, 5));
        assert_eq!((p("B5+").order(), p("B5+").edge_count()), (6, 6));
        let c4x = p("C4X").recolorings();
        assert_eq!(c4x.len(), 1);
        assert_eq!((c4x[0].red_edge_count(), c4x[0].blue_edge_count()), (4, 1));
    }

    /// Black read as red, so shapes compare by canonical form.
    fn shape(p: &PatternGraph) -> CanonicalForm {
        let mut g = ColoredGraph::empty(p.order());
        for (i, j) in pairs(p.order()) {
            match p.color(i, j) {
                PatternColor::Black | PatternColor::Red => g.set_color(i, j, EdgeColor::Red),
                PatternColor::Blue => g.set_color(i, j, EdgeColor::Blue),
                PatternColor::None => {}
            }
        }
        canonical_form(&g)
    }

    #[test]
    fn pattern_edge_lists() {
        let want = |n: usize, black: &[(usize, usize)], blue: (usize, usize)| {
            let mut g = ColoredGraph::empty(n);
            for &(i, j) in black {
                g.set_color(i, j, EdgeColor::Red);
            }
            g.set_color(blue.0, blue.1, EdgeColor::Blue);
            canonical_form(&g)
        };
        let p = |n: &str| shape(&Family::pattern_by_name(n).unwrap().pattern);
        assert_eq!(p("B3"), want(3, &[(1, 2), (0, 2)], (0, 1)));
        assert_eq!(p("B3+"), want(4, &[(0, 1), (1, 2), (0, 2)], (0, 3)));
        assert_eq!(p("B3*"), want(5, &[(0, 1), (1, 2), (0, 2), (0, 3)], (3, 4)));
        assert_eq!(p("B5"), want(5, &[(1, 2), (2, 3), (3, 4), (4, 0)], (0, 1)));
        assert_eq!(p("B5+"), want(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], (0, 5)));
        assert_eq!(p("C4X"), want(5, &[(1, 2), (2, 3), (3, 0), (2, 4)], (0, 1)));
    }

    #[test]
    fn path_coloring_counts() {
        assert_eq!(path_colorings(4).len(), 6);
        assert_eq!(path_colorings(5).len(), 10);
    }

    #[test]
    fn parse_names() {
        assert_eq!("fc5".parse::<Family>(), Ok(Family::Fc5));
        assert_eq!("NONE".parse::<Family>(), Ok(Family::Unrestricted));
        assert!("FC9".parse::<Family>().is_err());
    }
}
