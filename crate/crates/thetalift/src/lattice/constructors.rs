//! Named lattices.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::even::EvenLattice;
use crate::linalg::{det_int, hnf_rows, lll_gram, IMat};

fn build(name: &str, gram: IMat) -> EvenLattice {
    EvenLattice::from_gram(name, gram).expect("constructor produces a valid even lattice")
}

fn from_edges(name: &str, n: usize, edges: &[(usize, usize)]) -> EvenLattice {
    let mut g = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = BigInt::from(2);
    }
    for &(a, b) in edges {
        g[a][b] = BigInt::from(-1);
        g[b][a] = BigInt::from(-1);
    }
    build(name, g)
}

/// Root lattice `A_n` (Cartan matrix).
pub fn a_n(n: usize) -> EvenLattice {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_edges(&format!("A{n}"), n, &edges)
}

/// Root lattice `D_n`, `n ≥ 2`, in the basis `eᵢ − eᵢ₊₁`, `e_{n−1} + e_n`.
pub fn d_n(n: usize) -> EvenLattice {
    assert!(n >= 2, "D_n needs n ≥ 2");
    build(&format!("D{n}"), even_part_gram(n, 0))
}

/// Root lattice `E₈` (Cartan matrix, Bourbaki numbering).
pub fn e8() -> EvenLattice {
    from_edges("E8", 8, &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)])
}

/// The hyperbolic plane `II₁,₁(scale)` with Gram `[[0, s], [s, 0]]`.
pub fn hyperbolic_plane(scale: i64) -> EvenLattice {
    let name = if scale == 1 { "U".to_string() } else { format!("U({scale})") };
    let s = BigInt::from(scale);
    build(&name, vec![vec![BigInt::zero(), s.clone()], vec![s, BigInt::zero()]])
}

/// Orthogonal direct sum.
pub fn direct_sum(a: &EvenLattice, b: &EvenLattice) -> EvenLattice {
    let (n, m) = (a.rank(), b.rank());
    let mut g = vec![vec![BigInt::zero(); n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = a.gram()[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            g[n + i][n + j] = b.gram()[i][j].clone();
        }
    }
    build(&format!("{}+{}", a.name(), b.name()), g)
}

/// `L(n)`: the Gram matrix multiplied by `n` (`n` may be negative).
pub fn rescale(l: &EvenLattice, n: i64) -> EvenLattice {
    let k = BigInt::from(n);
    let g = l.gram().iter().map(|r| r.iter().map(|x| x * &k).collect()).collect();
    build(&format!("{}({n})", l.name()), g)
}

fn even_part_gram(p: usize, q: usize) -> IMat {
    let n = p + q;
    let sign = |i: usize| if i < p { 1i64 } else { -1 };
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for i in 0..n - 1 {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v[i + 1] = -1;
        basis.push(v);
    }
    let mut v = vec![0i64; n];
    v[n - 2] = 1;
    v[n - 1] = 1;
    basis.push(v);
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| BigInt::from((0..n).map(|i| a[i] * b[i] * sign(i)).sum::<i64>()))
                .collect()
        })
        .collect()
}

/// The maximal even sublattice of the odd unimodular lattice `I_{p,q}`
/// (vectors with even coordinate sum), `p + q ≥ 2`.
pub fn odd_unimodular_even_part(p: usize, q: usize) -> EvenLattice {
    assert!(p + q >= 2, "need rank at least 2");
    build(&format!("I{p},{q}even"), even_part_gram(p, q))
}

/// Generator matrix rows of the extended binary Golay code, from the cyclic
/// code with generator polynomial `1 + x² + x⁴ + x⁵ + x⁶ + x¹⁰ + x¹¹` plus a
/// parity bit.
pub fn golay_basis() -> Vec<[u8; 24]> {
    let g = [0usize, 2, 4, 5, 6, 10, 11];
    (0..12)
        .map(|shift| {
            let mut w = [0u8; 24];
            for &d in &g {
                w[d + shift] = 1;
            }
            w[23] = (w[..23].iter().map(|&b| b as u32).sum::<u32>() % 2) as u8;
            w
        })
        .collect()
}

/// The Leech lattice, LLL-reduced Gram matrix.
///
/// Built from the Golay code: `√8·Λ` is spanned by `2c` for codewords `c`,
/// by `4(e₀ ± eᵢ)`, and by `(−3, 1, …, 1)`.
pub fn leech() -> EvenLattice {
    static GRAM: OnceLock<IMat> = OnceLock::new();
    let g = GRAM.get_or_init(|| {
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for c in golay_basis() {
            gens.push(c.iter().map(|&b| BigInt::from(2 * b as i64)).collect());
        }
        for i in 1..24 {
            for s in [1i64, -1] {
                let mut v = vec![BigInt::zero(); 24];
                v[0] = BigInt::from(4);
                v[i] = BigInt::from(4 * s);
                gens.push(v);
            }
        }
        let mut odd = vec![BigInt::one(); 24];
        odd[0] = BigInt::from(-3);
        gens.push(odd);
        let (basis, _, _) = hnf_rows(&gens);
        assert_eq!(basis.len(), 24);
        let eight = BigInt::from(8);
        let gram: IMat = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let s: BigInt = a.iter().zip(b).map(|(x, y)| x * y).sum();
                        assert!((&s % &eight).is_zero());
                        s / &eight
                    })
                    .collect()
            })
            .collect();
        debug_assert!(det_int(&gram).is_one());
        lll_gram(&gram).0
    });
    build("Leech", g.clone())
}
