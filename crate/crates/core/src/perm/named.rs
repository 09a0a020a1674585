//! Explicit small groups used as references and test fixtures.

use super::{Perm, PermGroup};

pub fn cyclic(n: usize) -> PermGroup {
    let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    PermGroup::new(n, vec![Perm::from_images_unchecked(images)])
}

/// Dihedral group of order `2n` on the `n` vertices of a polygon.
pub fn dihedral(n: usize) -> PermGroup {
    let rot = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let refl = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    PermGroup::new(n, vec![Perm::from_images_unchecked(rot), Perm::from_images_unchecked(refl)])
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    let cycle = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    PermGroup::new(n, vec![Perm::from_images_unchecked(cycle), Perm::from_images_unchecked(swap)])
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n)
        .map(|k| {
            let mut im: Vec<u32> = (0..n as u32).collect();
            im[0] = 1;
            im[1] = k as u32;
            im[k] = 0;
            Perm::from_images_unchecked(im)
        })
        .collect();
    PermGroup::new(n, gens)
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (m, n) = (g.degree(), h.degree());
    let lift_left = |p: &Perm| {
        let mut im: Vec<u32> = p.images().to_vec();
        im.extend((m..m + n).map(|x| x as u32));
        Perm::from_images_unchecked(im)
    };
    let lift_right = |p: &Perm| {
        let mut im: Vec<u32> = (0..m as u32).collect();
        im.extend(p.images().iter().map(|&x| x + m as u32));
        Perm::from_images_unchecked(im)
    };
    let gens = g.generators().iter().map(lift_left).chain(h.generators().iter().map(lift_right)).collect();
    PermGroup::new(m + n, gens)
}

/// Vectors of `GF(p)^n` in lexicographic order.
pub fn vectors(p: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn vec_times_mat(v: &[u8], m: &[Vec<u8>], p: u8) -> Vec<u8> {
    let n = v.len();
    (0..n)
        .map(|j| (0..n).map(|i| v[i] as u32 * m[i][j] as u32).sum::<u32>() as u8 % p)
        .collect()
}

/// Permutation induced by `v -> v M + c` on `points`.
pub fn affine_perm(points: &[Vec<u8>], m: &[Vec<u8>], c: &[u8], p: u8) -> Perm {
    let index = |v: &Vec<u8>| points.iter().position(|w| w == v).expect("point set is invariant");
    let images = points
        .iter()
        .map(|v| {
            let w: Vec<u8> = vec_times_mat(v, m, p).iter().zip(c).map(|(x, y)| (x + y) % p).collect();
            index(&w) as u32
        })
        .collect();
    Perm::from_images(images).expect("invertible map")
}

/// Matrix group acting on the nonzero row vectors of `GF(p)^n`.
pub fn linear_group(p: u8, mats: &[Vec<Vec<u8>>]) -> PermGroup {
    let n = mats[0].len();
    let pts: Vec<Vec<u8>> = vectors(p, n).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let zero = vec![0u8; n];
    let gens = mats.iter().map(|m| affine_perm(&pts, m, &zero, p)).collect();
    PermGroup::new(pts.len(), gens)
}

fn gl23_mats() -> Vec<Vec<Vec<u8>>> {
    vec![vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]], vec![vec![2, 0], vec![0, 1]]]
}

/// Q8 as the Sylow 2-subgroup of SL2(3) on the 8 nonzero vectors.
pub fn quaternion() -> PermGroup {
    linear_group(3, &[vec![vec![0, 1], vec![2, 0]], vec![vec![1, 1], vec![1, 2]]])
}

/// GL2(3) on the 8 nonzero vectors of the plane.
pub fn gl23() -> PermGroup {
    linear_group(3, &gl23_mats())
}

/// AGL2(3) on the 9 points of the affine plane.
pub fn agl23() -> PermGroup {
    let pts = vectors(3, 2);
    let zero = [0u8, 0];
    let mut gens: Vec<Perm> = gl23_mats().iter().map(|m| affine_perm(&pts, m, &zero, 3)).collect();
    let id = vec![vec![1, 0], vec![0, 1]];
    gens.push(affine_perm(&pts, &id, &[1, 0], 3));
    PermGroup::new(9, gens)
}

/// PSL2(7), realized as GL3(2) on the 7 nonzero vectors.
pub fn psl27() -> PermGroup {
    let mut mats = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = vec![vec![0u8; 3]; 3];
                for (k, row) in m.iter_mut().enumerate() {
                    row[k] = 1;
                }
                m[i][j] = 1;
                mats.push(m);
            }
        }
    }
    linear_group(2, &mats)
}

/// Extraspecial group of order 27 and exponent 3 (upper unitriangular matrices).
pub fn heisenberg27() -> PermGroup {
    let e = |i: usize, j: usize| {
        let mut m = vec![vec![0u8; 3]; 3];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1;
        }
        m[i][j] = 1;
        m
    };
    linear_group(3, &[e(0, 1), e(1, 2)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(5).order(), 5);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(gl23().order(), 48);
        assert_eq!(agl23().order(), 432);
        assert_eq!(psl27().order(), 168);
        assert_eq!(heisenberg27().order(), 27);
        assert_eq!(direct_product(&gl23(), &cyclic(9)).order(), 432);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let h = quaternion().order_histogram(100).unwrap();
        assert_eq!(h, vec![(1, 1), (2, 1), (4, 6)]);
    }

    #[test]
    fn heisenberg_exponent_three() {
        let h = heisenberg27().order_histogram(100).unwrap();
        assert_eq!(h, vec![(1, 1), (3, 26)]);
    }
}
