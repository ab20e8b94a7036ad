//! Double description: extreme rays and lineality of `{x : A x >= 0, E x = 0}`
//! by exact incremental insertion of inequalities.

use num_traits::{Signed, Zero};

use crate::linalg::{self, Q};

fn combine(a: &Q, x: &[Q], b: &Q, y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

/// Returns `(rays, lines)`, with every ray primitive and the rays pairwise distinct.
pub(super) fn extreme_rays(
    dim: usize,
    ineqs: &[Vec<Q>],
    eqs: &[Vec<Q>],
) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    // Start from the whole solution space of the equations as lines.
    let mut lines = linalg::nullspace(eqs, dim);
    let eq_rank = linalg::rank(eqs, dim);
    let mut rays: Vec<Vec<Q>> = Vec::new();
    // Zero sets of each ray over the inequalities inserted so far.
    let mut zeros: Vec<Vec<usize>> = Vec::new();
    let mut inserted: Vec<usize> = Vec::new();

    for (idx, a) in ineqs.iter().enumerate() {
        let one = Q::from_integer(1.into());
        let pivot = lines.iter().position(|l| !linalg::dot(a, l).is_zero());
        if let Some(p) = pivot {
            let mut l = lines.swap_remove(p);
            let al = linalg::dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
            }
            let al = al.abs();
            for other in lines.iter_mut() {
                let ao = linalg::dot(a, other);
                if !ao.is_zero() {
                    *other = combine(&one, other, &(-(ao / &al)), &l);
                }
            }
            for (r, z) in rays.iter_mut().zip(zeros.iter_mut()) {
                let ar = linalg::dot(a, r);
                if !ar.is_zero() {
                    *r = linalg::primitive(&combine(&one, r, &(-(ar / &al)), &l));
                }
                z.push(idx);
            }
            rays.push(linalg::primitive(&l));
            // The new ray lies on every earlier hyperplane, since those vanish on lines.
            zeros.push(inserted.clone());
            inserted.push(idx);
            continue;
        }

        let values: Vec<Q> = rays.iter().map(|r| linalg::dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let pointed_dim = dim - lines.len() - eq_rank;
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &i in &pos {
            for &j in &neg {
                let common: Vec<usize> = zeros[i]
                    .iter()
                    .filter(|k| zeros[j].contains(k))
                    .copied()
                    .collect();
                if !adjacent(&common, ineqs, dim, eqs, eq_rank, pointed_dim) {
                    continue;
                }
                let r = combine(&values[i], &rays[j], &(-values[j].clone()), &rays[i]);
                let mut z = common;
                z.push(idx);
                new_rays.push(linalg::primitive(&r));
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for (i, (r, mut z)) in rays.into_iter().zip(zeros).enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                z.push(idx);
            }
            kept_rays.push(r);
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
        inserted.push(idx);
    }

    let mut seen: Vec<Vec<Q>> = Vec::new();
    for r in rays {
        if !linalg::is_zero_vector(&r) && !seen.contains(&r) {
            seen.push(r);
        }
    }
    (seen, lines)
}

/// Two rays are adjacent when the inequalities tight on both, together with
/// the equations, cut out a two-dimensional face of the pointed part.
fn adjacent(
    common: &[usize],
    ineqs: &[Vec<Q>],
    dim: usize,
    eqs: &[Vec<Q>],
    eq_rank: usize,
    pointed_dim: usize,
) -> bool {
    if pointed_dim < 2 {
        return false;
    }
    if common.len() < pointed_dim - 2 {
        return false;
    }
    let mut all: Vec<Vec<Q>> = common.iter().map(|&k| ineqs[k].clone()).collect();
    all.extend(eqs.iter().cloned());
    linalg::rank(&all, dim) - eq_rank == pointed_dim - 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // x3 >= |x1|, x3 >= |x2|
        let ineqs = vec![v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])];
        let (mut rays, lines) = extreme_rays(3, &ineqs, &[]);
        rays.sort();
        assert!(lines.is_empty());
        assert_eq!(
            rays,
            vec![
                v(&[-1, -1, 1]),
                v(&[-1, 1, 1]),
                v(&[1, -1, 1]),
                v(&[1, 1, 1])
            ]
        );
    }

    #[test]
    fn equations_restrict_the_space() {
        let (rays, lines) = extreme_rays(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])], &[v(&[1, 1, -1])]);
        assert!(lines.is_empty());
        assert_eq!(rays.len(), 2);
        for r in &rays {
            assert!(linalg::dot(&v(&[1, 1, -1]), r).is_zero());
        }
    }

    #[test]
    fn infeasible_interior_gives_origin() {
        let (rays, lines) = extreme_rays(1, &[v(&[1]), v(&[-1])], &[]);
        assert!(rays.is_empty() && lines.is_empty());
    }
}
