//! Newton polygon iteration at infinity.
//!
//! A node holds `H(y1) = h(x, prefix + y1)` and the number `k` of roots of
//! `H` with order below the last exponent used. Those roots are found by
//! walking the upper hull of the points `(j, ord a_j)` for `j <= k`: an edge
//! of slope `-e` yields roots `c x^e + ...` with `c` a nonzero root of the
//! edge (face) polynomial, and each such `c` of multiplicity `mu` becomes a
//! child node with `k = mu`. Coefficients `a_j` with `j > k` are kept because
//! they still affect deeper terms.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use super::approx::YPoly;
use super::roots::roots_with_multiplicity;
use super::series::PuiseuxSeries;
use super::{EngineConfig, PuiseuxError};

/// Hull vertices `(j, ord)` at both ends and the root exponent of the edge.
type Edge = ((i64, i64), (i64, i64), Rational64);

pub(crate) struct Expander<'a> {
    pub cfg: &'a EngineConfig,
    pub trunc_terms: usize,
}

pub(crate) struct Node {
    pub poly: YPoly,
    pub prefix: Vec<(Rational64, Complex64)>,
    /// Exponent of the last prefix term; `None` at the root of the search.
    pub e_cur: Option<Rational64>,
    pub k: usize,
}

impl Node {
    fn ram(&self) -> i64 {
        self.prefix.iter().fold(1i64, |m, (e, _)| m.lcm(e.denom()))
    }
}

impl Expander<'_> {
    /// Exponents at or above this are always resolved.
    fn stop_exponent(&self, ram: i64) -> Rational64 {
        Rational64::from_integer(1) - Rational64::new(self.trunc_terms as i64, ram)
    }

    /// Roots that are still coincident below this are reported as inseparable.
    fn floor_exponent(&self, ram: i64) -> Rational64 {
        Rational64::from_integer(1) - Rational64::new(3 * self.trunc_terms as i64, ram)
    }

    pub fn expand(&self, node: Node, out: &mut Vec<PuiseuxSeries>) -> Result<(), PuiseuxError> {
        let tol = self.cfg.drop_tol;
        let k = node.k;
        let ram = node.ram();
        let ords: Vec<Option<i64>> = (0..=k).map(|j| node.poly.a.get(j).and_then(|s| s.top(tol))).collect();
        if ords[k].is_none() {
            return Err(PuiseuxError::NumericBreakdown { detail: format!("coefficient of y^{k} vanished") });
        }
        let j_min = ords.iter().position(Option::is_some).expect("ords[k] is some");
        for _ in 0..j_min {
            out.push(PuiseuxSeries::new(node.prefix.clone(), None));
        }
        if j_min == k {
            return Ok(());
        }

        let pts: Vec<(i64, i64)> = (j_min..=k).filter_map(|j| ords[j].map(|o| (j as i64, o))).collect();
        let hull = upper_hull(&pts);
        let den = node.poly.den;
        let edges: Vec<Edge> = hull
            .windows(2)
            .map(|w| (w[0], w[1], Rational64::new(w[0].1 - w[1].1, (w[1].0 - w[0].0) * den)))
            .collect();
        let grid = edges.iter().fold(den, |g, e| g.lcm(e.2.denom()));
        let mut poly = node.poly;
        poly.regrid(grid);
        let f = grid / den;

        for ((j1, o1), (j2, _), e) in edges {
            if node.e_cur.is_some_and(|ec| e >= ec) {
                return Err(PuiseuxError::NumericBreakdown {
                    detail: format!("edge exponent {e} does not decrease below {}", node.e_cur.expect("some")),
                });
            }
            let e_num = (e * grid).to_integer();
            let base = o1 * f;
            let face: Vec<Complex64> = (j1..=j2)
                .map(|j| {
                    let n = poly.a[j as usize].get(base - (j - j1) * e_num);
                    if n.is_negligible(tol) {
                        Complex64::zero()
                    } else {
                        n.v
                    }
                })
                .collect();
            let roots = roots_with_multiplicity(&face, self.cfg).map_err(|r| PuiseuxError::RootRefinement { face: r.poly })?;
            for (c, mu) in roots {
                if c == Complex64::zero() {
                    return Err(PuiseuxError::NumericBreakdown { detail: "zero root on a face edge".into() });
                }
                let mut prefix = node.prefix.clone();
                if mu == 1 && e < self.stop_exponent(ram) {
                    out.push(PuiseuxSeries::new(prefix, Some(e)));
                    continue;
                }
                if mu > 1 && e < self.floor_exponent(ram) {
                    return Err(PuiseuxError::NotSeparated { exponent: e, multiplicity: mu });
                }
                prefix.push((e, c));
                let child = Node { poly: poly.shift(c, e_num, tol), prefix, e_cur: Some(e), k: mu };
                self.expand(child, out)?;
            }
        }
        Ok(())
    }
}

/// Upper convex hull of points sorted by `x`, keeping only vertices.
fn upper_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut h: Vec<(i64, i64)> = Vec::new();
    for &p in pts {
        while h.len() >= 2 {
            let a = h[h.len() - 2];
            let b = h[h.len() - 1];
            // Drop b unless it lies strictly above segment a-p.
            let cross = (b.0 - a.0) as i128 * (p.1 - a.1) as i128 - (b.1 - a.1) as i128 * (p.0 - a.0) as i128;
            if cross >= 0 {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_keeps_upper_vertices() {
        // y^3 - 3xy - x^3 has points (0,3), (1,1), (3,0): (1,1) is below the chord.
        assert_eq!(upper_hull(&[(0, 3), (1, 1), (3, 0)]), vec![(0, 3), (3, 0)]);
        assert_eq!(upper_hull(&[(0, 0), (1, 1), (2, 0)]), vec![(0, 0), (1, 1), (2, 0)]);
        // Collinear middle points are not vertices.
        assert_eq!(upper_hull(&[(0, 2), (1, 1), (2, 0)]), vec![(0, 2), (2, 0)]);
    }
}
