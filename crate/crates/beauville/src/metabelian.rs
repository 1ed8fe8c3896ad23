//! Metabelian groups N ⋊_{Φ,Θ} Q on the set N × Q.
//!
//! N and Q are abelian, given by their cyclic factor orders. Multiplication is
//!
//! ```text
//! (n₁, q₁) · (n₂, q₂) = (n₁ + Φ_{q₁}(n₂) + Θ(q₁, q₂), q₁ + q₂)
//! ```
//!
//! with Φ : Q → Aut(N) a homomorphism given on the basis of Q, and Θ a
//! bilinear map Q × Q → N given on basis pairs. This multiplication is
//! associative exactly when every Φ_q fixes every Θ value, which is checked
//! at construction. Nonzero Θ produces the non-split extensions (the order-16
//! semidirect factor groups, generalized quaternion groups, and the two
//! order-256 groups all arise this way).

use crate::group::{Elem, GroupError, GroupTable};

/// Defining data for N ⋊_{Φ,Θ} Q.
#[derive(Clone, Debug)]
pub struct MetabelianData {
    /// Cyclic factor orders of N; an element of N is a coordinate vector mod these.
    pub n_invariants: Vec<u32>,
    /// Cyclic factor orders of Q.
    pub q_invariants: Vec<u32>,
    /// Per Q-basis vector, a matrix acting on N coordinate vectors:
    /// `phi[b][i][j]` multiplies input coordinate j into output coordinate i.
    pub phi: Vec<Vec<Vec<u32>>>,
    /// Θ on basis pairs: `theta[i][j]` is Θ(e_i, e_j) as an N coordinate vector.
    pub theta: Vec<Vec<Vec<u32>>>,
}

struct AbelianCoords<'a> {
    invariants: &'a [u32],
    size: usize,
}

impl<'a> AbelianCoords<'a> {
    fn new(invariants: &'a [u32]) -> Self {
        let size = invariants.iter().map(|&d| d as usize).product::<usize>().max(1);
        AbelianCoords { invariants, size }
    }

    fn index(&self, coords: &[u32]) -> usize {
        let mut idx = 0usize;
        for (c, &d) in coords.iter().zip(self.invariants) {
            idx = idx * d as usize + (*c % d) as usize;
        }
        idx
    }

    fn coords(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.invariants.len()];
        for i in (0..self.invariants.len()).rev() {
            let d = self.invariants[i] as usize;
            out[i] = (idx % d) as u32;
            idx /= d;
        }
        out
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(self.invariants)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }
}

impl MetabelianData {
    fn apply_matrix(&self, m: &[Vec<u32>], n: &[u32]) -> Vec<u32> {
        self.n_invariants
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut acc = 0u64;
                for (j, &nj) in n.iter().enumerate() {
                    acc += u64::from(m[i][j]) * u64::from(nj);
                }
                (acc % u64::from(d)) as u32
            })
            .collect()
    }

    /// Θ extended bilinearly from the basis values.
    fn theta_of(&self, q1: &[u32], q2: &[u32]) -> Vec<u32> {
        let mut acc = vec![0u32; self.n_invariants.len()];
        for (i, &c1) in q1.iter().enumerate() {
            for (j, &c2) in q2.iter().enumerate() {
                let base = &self.theta[i][j];
                let scale = u64::from(c1) * u64::from(c2);
                for (slot, (&t, &d)) in acc.iter_mut().zip(base.iter().zip(&self.n_invariants)) {
                    *slot = ((u64::from(*slot) + scale * u64::from(t)) % u64::from(d)) as u32;
                }
            }
        }
        acc
    }

    fn validate(&self) -> Result<(), GroupError> {
        let s = self.n_invariants.len();
        let t = self.q_invariants.len();
        if self.phi.len() != t {
            return Err(GroupError::InvalidConstruction(
                "one phi matrix per Q basis vector required".into(),
            ));
        }
        if self.theta.len() != t || self.theta.iter().any(|row| row.len() != t) {
            return Err(GroupError::InvalidConstruction(
                "theta must be a t×t table of N values".into(),
            ));
        }
        for m in &self.phi {
            if m.len() != s || m.iter().any(|row| row.len() != s) {
                return Err(GroupError::InvalidConstruction("phi matrix shape mismatch".into()));
            }
            // well-defined: coordinate j is only defined mod d_j
            for (i, &di) in self.n_invariants.iter().enumerate() {
                for (j, &dj) in self.n_invariants.iter().enumerate() {
                    if (u64::from(m[i][j]) * u64::from(dj)) % u64::from(di) != 0 {
                        return Err(GroupError::InvalidConstruction(format!(
                            "phi entry ({i},{j}) is not well-defined on Z{dj} → Z{di}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds N ⋊_{Φ,Θ} Q with element index `(n, q) ↦ q·|N| + n`; (0,0) is the
/// identity and gets index 0.
pub fn metabelian(data: &MetabelianData, label: impl Into<String>, bound: usize) -> Result<GroupTable, GroupError> {
    data.validate()?;
    let ncoords = AbelianCoords::new(&data.n_invariants);
    let qcoords = AbelianCoords::new(&data.q_invariants);
    let (nn, nq) = (ncoords.size, qcoords.size);
    let order = nn * nq;
    if order > bound {
        return Err(GroupError::BoundExceeded(order, bound));
    }

    // Φ_q for every q ∈ Q, as a full permutation of N indices. Built by
    // composing basis matrices; each must be bijective on N and of order
    // dividing its basis vector's order for Φ to be a homomorphism.
    let n_elems: Vec<Vec<u32>> = (0..nn).map(|i| ncoords.coords(i)).collect();
    let mut basis_maps: Vec<Vec<usize>> = Vec::new();
    for (b, m) in data.phi.iter().enumerate() {
        let map: Vec<usize> = n_elems
            .iter()
            .map(|n| ncoords.index(&data.apply_matrix(m, n)))
            .collect();
        let mut seen = vec![false; nn];
        for &i in &map {
            if std::mem::replace(&mut seen[i], true) {
                return Err(GroupError::InvalidConstruction(format!(
                    "phi[{b}] is not a bijection of N"
                )));
            }
        }
        // additivity is automatic for a matrix; order must divide ord(e_b)
        let mut pow: Vec<usize> = (0..nn).collect();
        for _ in 0..data.q_invariants[b] {
            pow = pow.iter().map(|&i| map[i]).collect();
        }
        if pow.iter().enumerate().any(|(i, &j)| i != j) {
            return Err(GroupError::InvalidConstruction(format!(
                "phi[{b}] has order not dividing {}",
                data.q_invariants[b]
            )));
        }
        basis_maps.push(map);
    }
    for (a, ma) in basis_maps.iter().enumerate() {
        for (b, mb) in basis_maps.iter().enumerate().skip(a + 1) {
            let ab: Vec<usize> = (0..nn).map(|i| ma[mb[i]]).collect();
            let ba: Vec<usize> = (0..nn).map(|i| mb[ma[i]]).collect();
            if ab != ba {
                return Err(GroupError::InvalidConstruction(format!(
                    "phi[{a}] and phi[{b}] do not commute; Φ is not defined on Q"
                )));
            }
        }
    }
    let mut phi_table: Vec<Vec<usize>> = Vec::with_capacity(nq);
    for q in 0..nq {
        let qc = qcoords.coords(q);
        let mut map: Vec<usize> = (0..nn).collect();
        for (b, &c) in qc.iter().enumerate() {
            for _ in 0..c {
                map = map.iter().map(|&i| basis_maps[b][i]).collect();
            }
        }
        phi_table.push(map);
    }

    // Compatibility: every Φ_q must fix every Θ value, otherwise the
    // multiplication below is not associative.
    for i in 0..data.q_invariants.len() {
        for row in &data.theta {
            for t in row {
                let tn = ncoords.index(t);
                if basis_maps[i][tn] != tn {
                    return Err(GroupError::InvalidConstruction(format!(
                        "phi[{i}] moves a theta value; compatibility condition fails"
                    )));
                }
            }
        }
    }

    let mut theta_table = vec![0usize; nq * nq];
    for q1 in 0..nq {
        let c1 = qcoords.coords(q1);
        for q2 in 0..nq {
            let c2 = qcoords.coords(q2);
            theta_table[q1 * nq + q2] = ncoords.index(&data.theta_of(&c1, &c2));
        }
    }

    let mut mul = vec![0 as Elem; order * order];
    for q1 in 0..nq {
        for n1 in 0..nn {
            let x = q1 * nn + n1;
            for q2 in 0..nq {
                let qsum = qcoords.index(&qcoords.add(&qcoords.coords(q1), &qcoords.coords(q2)));
                for n2 in 0..nn {
                    let y = q2 * nn + n2;
                    let moved = phi_table[q1][n2];
                    let nsum = ncoords.index(&ncoords.add(
                        &ncoords.add(&n_elems[n1], &n_elems[moved]),
                        &n_elems[theta_table[q1 * nq + q2]],
                    ));
                    mul[x * order + y] = (qsum * nn + nsum) as Elem;
                }
            }
        }
    }
    GroupTable::from_mul_table(label, order, mul, Vec::new(), true, bound)
}

/// Index of the element with the given N and Q coordinates, matching the
/// layout produced by [`metabelian`].
pub fn metabelian_index(data: &MetabelianData, n: &[u32], q: &[u32]) -> Elem {
    let ncoords = AbelianCoords::new(&data.n_invariants);
    let qcoords = AbelianCoords::new(&data.q_invariants);
    (qcoords.index(q) * ncoords.size + ncoords.index(n)) as Elem
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_BOUND;

    #[test]
    fn trivial_twist_gives_direct_product() {
        // Θ ≡ 0, Φ trivial, N = Z₂, Q = Z₂ → Z₂ × Z₂
        let data = MetabelianData {
            n_invariants: vec![2],
            q_invariants: vec![2],
            phi: vec![vec![vec![1]]],
            theta: vec![vec![vec![0]]],
        };
        let g = metabelian(&data, "Z2xZ2", DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.abelianization(), vec![2, 2]);
    }

    #[test]
    fn quaternion_group_from_cocycle() {
        // N = Z₄, Q = Z₂, Φ = inversion, Θ(1,1) = 2
        let data = MetabelianData {
            n_invariants: vec![4],
            q_invariants: vec![2],
            phi: vec![vec![vec![3]]],
            theta: vec![vec![vec![2]]],
        };
        let g = metabelian(&data, "Q8", DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 8);
        // Q8 has a unique involution
        assert_eq!(g.elements_of_order(2).len(), 1);
        assert_eq!(g.elements_of_order(4).len(), 6);
    }

    #[test]
    fn incompatible_theta_is_rejected() {
        // Φ = inversion on Z₄ does not fix Θ(1,1) = 1
        let data = MetabelianData {
            n_invariants: vec![4],
            q_invariants: vec![2],
            phi: vec![vec![vec![3]]],
            theta: vec![vec![vec![1]]],
        };
        assert!(matches!(
            metabelian(&data, "bad", DEFAULT_ORDER_BOUND),
            Err(GroupError::InvalidConstruction(_))
        ));
    }

    #[test]
    fn projection_to_q_is_a_homomorphism() {
        let data = MetabelianData {
            n_invariants: vec![4],
            q_invariants: vec![2],
            phi: vec![vec![vec![3]]],
            theta: vec![vec![vec![2]]],
        };
        let g = metabelian(&data, "Q8", DEFAULT_ORDER_BOUND).unwrap();
        let nn = 4;
        let q_of = |x: Elem| (x as usize) / nn;
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(q_of(g.mul(a, b)), (q_of(a) + q_of(b)) % 2);
            }
        }
    }
}
