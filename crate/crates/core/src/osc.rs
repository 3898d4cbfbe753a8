//! Increasing oscillations, end-inflated oscillations and star permutations.
//!
//! An increasing oscillation is a permutation whose inversion graph is a
//! path. The primary oscillation ω_n has its least entry at a path end; the
//! secondary oscillation ω̄_n has its first entry at a path end. ω_n^{r,s}
//! replaces the lower and upper ends of ω_n by increasing runs of lengths r
//! and s; its graph is a path on n−2 vertices with r pendant edges at the
//! lower end and s at the upper end.

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OscError {
    #[error("oscillation length must be at least 1, got {0}")]
    BadLength(usize),
    #[error("end inflation needs n >= 4, got n={0}")]
    CoreTooShort(usize),
    #[error("inflation multiplicities must be at least 1, got r={0}, s={1}")]
    BadInflation(usize, usize),
    #[error("star parameter must be at least 2, got {0}")]
    BadStar(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscKind {
    Primary,
    Secondary,
}

/// ω_n: the increasing oscillation whose least entry is a path end.
pub fn primary_oscillation(n: usize) -> Result<Permutation, OscError> {
    let v: Vec<u16> = match n {
        0 => return Err(OscError::BadLength(n)),
        1 => vec![1],
        2 => vec![2, 1],
        3 => vec![3, 1, 2],
        _ if n.is_multiple_of(2) => {
            let mut v = vec![3u16, 1];
            for j in 2..=(n - 2) / 2 {
                v.push(2 * j as u16 + 1);
                v.push(2 * j as u16 - 2);
            }
            v.push(n as u16);
            v.push(n as u16 - 2);
            v
        }
        _ => {
            let mut v = vec![3u16, 1];
            for j in 2..=(n - 3) / 2 {
                v.push(2 * j as u16 + 1);
                v.push(2 * j as u16 - 2);
            }
            v.push(n as u16);
            v.push(n as u16 - 3);
            v.push(n as u16 - 1);
            v
        }
    };
    Ok(Permutation::new(v).expect("oscillation construction yields a permutation"))
}

/// ω̄_n: the increasing oscillation whose first entry is a path end.
pub fn secondary_oscillation(n: usize) -> Result<Permutation, OscError> {
    let v: Vec<u16> = match n {
        0 => return Err(OscError::BadLength(n)),
        1 => vec![1],
        2 => vec![2, 1],
        3 => vec![2, 3, 1],
        _ if n.is_multiple_of(2) => {
            let mut v = vec![2u16];
            for j in 1..=(n - 4) / 2 {
                v.push(2 * j as u16 + 2);
                v.push(2 * j as u16 - 1);
            }
            v.push(n as u16);
            v.push(n as u16 - 3);
            v.push(n as u16 - 1);
            v
        }
        _ => {
            let mut v = vec![2u16];
            for j in 1..=(n - 5) / 2 {
                v.push(2 * j as u16 + 2);
                v.push(2 * j as u16 - 1);
            }
            v.push(n as u16 - 1);
            v.push(n as u16 - 4);
            v.push(n as u16);
            v.push(n as u16 - 2);
            v
        }
    };
    Ok(Permutation::new(v).expect("oscillation construction yields a permutation"))
}

pub fn oscillation(kind: OscKind, n: usize) -> Result<Permutation, OscError> {
    match kind {
        OscKind::Primary => primary_oscillation(n),
        OscKind::Secondary => secondary_oscillation(n),
    }
}

/// ψ_u = (u+1)12…u: the star K_{1,u} centred at the first (and greatest) entry.
pub fn star(u: usize) -> Result<Permutation, OscError> {
    if u < 2 {
        return Err(OscError::BadStar(u));
    }
    let mut v = Vec::with_capacity(u + 1);
    v.push(u as u16 + 1);
    v.extend(1..=u as u16);
    Ok(Permutation::new(v).expect("star construction yields a permutation"))
}

/// Replace the point at `pos` (0-based) by an increasing run of length `t`.
///
/// The run occupies t consecutive positions and t consecutive values; in the
/// inversion graph each run point inherits exactly the neighbours of the
/// original point, so inflating a path end by t yields t pendant edges.
pub(crate) fn inflate_point(p: &Permutation, pos: usize, t: usize) -> Permutation {
    assert!(t >= 1);
    let v = p.values()[pos];
    let shift = (t - 1) as u16;
    let mut out: Vec<u16> = Vec::with_capacity(p.len() + t - 1);
    for (i, &x) in p.values().iter().enumerate() {
        if i == pos {
            out.extend(v..v + t as u16);
        } else {
            out.push(if x > v { x + shift } else { x });
        }
    }
    Permutation::new(out).expect("inflation preserves permutation-ness")
}

/// Positions (0-based) of the lower-value and upper-value path ends.
fn path_ends(p: &Permutation) -> (usize, usize) {
    let g = p.graph();
    debug_assert!(g.is_path(), "path_ends called on a non-path graph");
    let ends: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) <= 1).collect();
    let (a, b) = (ends[0] - 1, *ends.last().unwrap() - 1);
    if p.values()[a] <= p.values()[b] {
        (a, b)
    } else {
        (b, a)
    }
}

/// ω_n^{r,s} (or ω̄_n^{r,s}): both ends of an oscillation inflated by
/// increasing runs of lengths r and s. Length n − 2 + r + s.
pub fn inflated_oscillation(
    n: usize,
    r: usize,
    s: usize,
    kind: OscKind,
) -> Result<Permutation, OscError> {
    if n < 4 {
        return Err(OscError::CoreTooShort(n));
    }
    if r < 1 || s < 1 {
        return Err(OscError::BadInflation(r, s));
    }
    let base = oscillation(kind, n)?;
    let (lo_pos, hi_pos) = path_ends(&base);
    let lo_val = base.values()[lo_pos];
    let hi_val = base.values()[hi_pos];
    let inflated = inflate_point(&base, lo_pos, r);
    // track where the upper end landed after the first inflation
    let hi_pos2 = if hi_pos > lo_pos {
        hi_pos + r - 1
    } else {
        hi_pos
    };
    let hi_val2 = if hi_val > lo_val {
        hi_val + r as u16 - 1
    } else {
        hi_val
    };
    debug_assert_eq!(inflated.values()[hi_pos2], hi_val2);
    Ok(inflate_point(&inflated, hi_pos2, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn small_oscillations_match_figures() {
        assert_eq!(primary_oscillation(1).unwrap(), p("1"));
        assert_eq!(primary_oscillation(2).unwrap(), p("21"));
        assert_eq!(secondary_oscillation(1).unwrap(), p("1"));
        assert_eq!(secondary_oscillation(2).unwrap(), p("21"));
        assert_eq!(primary_oscillation(6).unwrap(), p("315264"));
        assert_eq!(secondary_oscillation(6).unwrap(), p("241635"));
        assert_eq!(primary_oscillation(7).unwrap(), p("3152746"));
        assert_eq!(secondary_oscillation(7).unwrap(), p("2416375"));
        assert!(primary_oscillation(0).is_err());
    }

    #[test]
    fn oscillation_graphs_are_paths_with_correct_ends() {
        for n in 1..=20 {
            let w = primary_oscillation(n).unwrap();
            let g = w.graph();
            assert!(g.is_path(), "ω_{n} graph not a path");
            if n >= 2 {
                // least entry is at a path end
                let least_pos = w.values().iter().position(|&v| v == 1).unwrap() + 1;
                assert_eq!(g.degree(least_pos), 1, "ω_{n} least entry not an end");
            }
            let wb = secondary_oscillation(n).unwrap();
            let gb = wb.graph();
            assert!(gb.is_path(), "ω̄_{n} graph not a path");
            if n >= 2 {
                assert_eq!(gb.degree(1), 1, "ω̄_{n} first entry not an end");
            }
        }
    }

    #[test]
    fn inflated_oscillations_match_figure_panels() {
        let w = |n, r, s| inflated_oscillation(n, r, s, OscKind::Primary).unwrap();
        // R_7^{4,3} panels
        assert_eq!(w(7, 2, 2), p("4 1 2 6 3 9 5 7 8"));
        assert_eq!(w(7, 2, 3), p("4 1 2 6 3 10 5 7 8 9"));
        assert_eq!(w(7, 3, 2), p("5 1 2 3 7 4 10 6 8 9"));
        assert_eq!(w(7, 3, 3), p("5 1 2 3 7 4 11 6 8 9 10"));
        assert_eq!(w(7, 4, 2), p("6 1 2 3 4 8 5 11 7 9 10"));
        assert_eq!(w(7, 4, 3), p("6 1 2 3 4 8 5 12 7 9 10 11"));
        // elements of Q^{4,3} of size 6
        assert_eq!(w(4, 3, 1), p("512364"));
        assert_eq!(w(5, 2, 1), p("412635"));
        assert_eq!(w(5, 1, 2), p("316245"));
        assert_eq!(
            inflated_oscillation(4, 1, 3, OscKind::Secondary).unwrap(),
            p("261345")
        );
        // π_0 = ω_5^{7,1} and π_1 = ω_7^{9,1}
        assert_eq!(w(5, 7, 1), p("9 1 2 3 4 5 6 7 11 8 10"));
        assert_eq!(w(7, 9, 1), p("11 1 2 3 4 5 6 7 8 9 13 10 15 12 14"));
    }

    #[test]
    fn inflated_graph_shape() {
        for &n in &[5, 7, 9] {
            for r in 1..=4 {
                for s in 1..=4 {
                    let w = inflated_oscillation(n, r, s, OscKind::Primary).unwrap();
                    assert_eq!(w.len(), n - 2 + r + s);
                    let g = w.graph();
                    assert!(g.is_connected());
                    assert_eq!(g.edges().len(), n - 1 + (r - 1) + (s - 1));
                    // degree multiset: pendants + path internals + the two inflated ends
                    let mut degs: Vec<usize> = (1..=g.n()).map(|v| g.degree(v)).collect();
                    degs.sort_unstable();
                    let pendants = degs.iter().filter(|&&d| d == 1).count();
                    assert_eq!(pendants, r + s, "ω_{n}^{{{r},{s}}}");
                }
            }
        }
    }

    #[test]
    fn identity_inflation_reproduces_oscillation() {
        for &n in &[5, 7, 9, 11] {
            assert_eq!(
                inflated_oscillation(n, 1, 1, OscKind::Primary).unwrap(),
                primary_oscillation(n).unwrap()
            );
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(5).unwrap(), p("612345"));
        assert_eq!(star(7).unwrap(), p("81234567"));
        assert_eq!(star(2).unwrap(), p("312"));
        assert!(star(1).is_err());
        let g = star(6).unwrap().graph();
        assert_eq!(g.is_star(), Some(1));
    }

    #[test]
    fn monotone_inflation_containment() {
        // ω_n^{u,v} <= ω_n^{r,s} whenever u <= r and v <= s
        for &n in &[5, 7] {
            let top = inflated_oscillation(n, 4, 4, OscKind::Primary).unwrap();
            for u in 1..=4 {
                for v in 1..=4 {
                    let small = inflated_oscillation(n, u, v, OscKind::Primary).unwrap();
                    assert!(
                        top.contains(&small),
                        "ω_{n}^{{{u},{v}}} not in ω_{n}^{{4,4}}"
                    );
                }
            }
        }
    }
}
