//! Angular-momentum operators for a spin `s` coupled to a spin-1/2.
//!
//! Spin magnitudes are carried as the integer `2s`. Basis states of a single
//! spin are labelled `|n⟩ = |m = -s + n⟩`, `n = 0..=2s`.
//!
//! The uncoupled product space `|n⟩₁|m⟩₂` (large spin first, small spin
//! second with `m = 0` down and `m = 1` up) is flattened as `k = 2n + m`. With
//! this ordering the two-dimensional `J²`-invariant subspace
//! `V_n = span{|n⟩₁|0⟩₂, |n-1⟩₁|1⟩₂}` occupies the contiguous indices
//! `2n-1, 2n`, while `V_0 = {|0⟩₁|0⟩₂}` is index `0` and
//! `V_{2s+1} = {|2s⟩₁|1⟩₂}` is the last index.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Twice the spin quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinMagnitude {
    twice_s: u32,
}

impl SpinMagnitude {
    pub const HALF: SpinMagnitude = SpinMagnitude { twice_s: 1 };

    pub const fn from_twice(twice_s: u32) -> Self {
        Self { twice_s }
    }

    pub const fn twice(self) -> u32 {
        self.twice_s
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_s) / 2.0
    }

    /// Number of states `2s + 1`.
    pub const fn dim(self) -> usize {
        self.twice_s as usize + 1
    }

    /// Dimension `2(2s+1)` of the product space with a spin-1/2.
    pub const fn product_dim(self) -> usize {
        2 * self.dim()
    }

    /// `j(j+1)` for the upper coupled spin `j = s + 1/2`.
    pub fn upper_casimir(self) -> f64 {
        let j = self.value() + 0.5;
        j * (j + 1.0)
    }

    /// `j(j+1)` for the lower coupled spin `j = s - 1/2`.
    pub fn lower_casimir(self) -> f64 {
        let j = self.value() - 0.5;
        j * (j + 1.0)
    }
}

/// A dense complex operator, `ħ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix(DMatrix<Complex64>);

impl OperatorMatrix {
    pub fn new(matrix: DMatrix<Complex64>) -> Self {
        assert!(matrix.is_square(), "operator matrix must be square");
        Self(matrix)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_real_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        Self(DMatrix::from_fn(dim, dim, |r, c| {
            Complex64::new(f(r, c), 0.0)
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn matrix_mut(&mut self) -> &mut DMatrix<Complex64> {
        &mut self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(&self.0 * Complex64::new(factor, 0.0))
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.0 - &other.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M − M†`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim());
        (0..self.dim())
            .map(|r| (0..self.dim()).map(|c| self.0[(r, c)] * v[c]).sum())
            .collect()
    }
}

impl std::ops::Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix(&self.0 * &rhs.0)
    }
}

/// `S₊`, `S₋` and `S_z` for a single spin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperators {
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
    pub z: OperatorMatrix,
}

impl SpinOperators {
    /// `S_x = (S₊ + S₋)/2`.
    pub fn x(&self) -> OperatorMatrix {
        (&self.plus + &self.minus).scale(0.5)
    }

    /// `S_y = (S₊ − S₋)/(2i)`.
    pub fn y(&self) -> OperatorMatrix {
        let diff = (&self.plus - &self.minus).into_inner();
        OperatorMatrix::new(diff * Complex64::new(0.0, -0.5))
    }

    /// `S² = S_z² + (S₊S₋ + S₋S₊)/2`.
    pub fn squared(&self) -> OperatorMatrix {
        let zz = &self.z * &self.z;
        let pm = &self.plus * &self.minus;
        let mp = &self.minus * &self.plus;
        &zz + &(&pm + &mp).scale(0.5)
    }
}

/// Ladder and `S_z` operators in the `|n⟩ = |-s+n⟩` basis.
pub fn ladder_operators(s: SpinMagnitude) -> SpinOperators {
    let dim = s.dim();
    let two_s = f64::from(s.twice());
    let plus = OperatorMatrix::from_real_fn(dim, |r, c| {
        if r == c + 1 {
            let n = c as f64;
            ((n + 1.0) * (two_s - n)).sqrt()
        } else {
            0.0
        }
    });
    let minus = plus.adjoint();
    let z =
        OperatorMatrix::from_real_fn(dim, |r, c| if r == c { -s.value() + r as f64 } else { 0.0 });
    SpinOperators { plus, minus, z }
}

/// Total-spin operators `J = S ⊗ 1 + 1 ⊗ σ/2` on the uncoupled product space.
pub fn total_spin(s: SpinMagnitude) -> SpinOperators {
    let large = ladder_operators(s);
    let small = ladder_operators(SpinMagnitude::HALF);
    let id_large = OperatorMatrix::identity(s.dim());
    let id_small = OperatorMatrix::identity(2);
    let lift = |a: &OperatorMatrix, b: &OperatorMatrix| &a.kron(&id_small) + &id_large.kron(b);
    SpinOperators {
        plus: lift(&large.plus, &small.plus),
        minus: lift(&large.minus, &small.minus),
        z: lift(&large.z, &small.z),
    }
}

/// Total `J²` on the `2(2s+1)`-dimensional uncoupled space.
pub fn j_squared(s: SpinMagnitude) -> OperatorMatrix {
    total_spin(s).squared()
}

/// `J²` restricted to its invariant subspaces.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockForm {
    pub twice_s: u32,
    /// `A_n` for `n = 1..=2s`, in the basis `(|n⟩₁|0⟩₂, |n-1⟩₁|1⟩₂)`.
    pub blocks: Vec<nalgebra::Matrix2<f64>>,
    /// The one-dimensional blocks `A_0` and `A_{2s+1}`.
    pub scalars: (f64, f64),
}

/// `A_n = (s²+s+1/4)·1 + (s-n+1/2)·σ_z + √(n(2s-n+1))·σ_x` and the two scalar
/// blocks `A_0 = A_{2s+1} = s² + 2s + 3/4`.
pub fn block_matrices(s: SpinMagnitude) -> BlockForm {
    let sv = s.value();
    let two_s = f64::from(s.twice());
    let diag = sv * sv + sv + 0.25;
    let blocks = (1..=s.twice())
        .map(|n| {
            let n = f64::from(n);
            let zc = sv - n + 0.5;
            let xc = (n * (two_s - n + 1.0)).sqrt();
            nalgebra::Matrix2::new(diag + zc, xc, xc, diag - zc)
        })
        .collect();
    let edge = sv * sv + 2.0 * sv + 0.75;
    BlockForm {
        twice_s: s.twice(),
        blocks,
        scalars: (edge, edge),
    }
}

impl BlockForm {
    /// Places every block back at its uncoupled indices, giving the full `J²`.
    pub fn assemble(&self) -> OperatorMatrix {
        let s = SpinMagnitude::from_twice(self.twice_s);
        let dim = s.product_dim();
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        m[(0, 0)] = self.scalars.0.into();
        m[(dim - 1, dim - 1)] = self.scalars.1.into();
        for (i, block) in self.blocks.iter().enumerate() {
            let n = i as u32 + 1;
            let idx = [uncoupled_index(n, 0), uncoupled_index(n - 1, 1)];
            for (a, &ra) in idx.iter().enumerate() {
                for (b, &cb) in idx.iter().enumerate() {
                    m[(ra, cb)] = block[(a, b)].into();
                }
            }
        }
        OperatorMatrix::new(m)
    }
}

/// Flattened index of `|n⟩₁|m⟩₂` (`m = 0` down, `m = 1` up).
pub const fn uncoupled_index(n: u32, m: u32) -> usize {
    2 * n as usize + m as usize
}

/// Label of an uncoupled product basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UncoupledLabel {
    /// Large-spin index `n`, `m_s = -s + n`.
    pub n: u32,
    /// Small spin: `0` down, `1` up.
    pub small: u32,
}

/// Label of a coupled basis state.
///
/// `Upper { n }` is `|n⟩_{s+1/2}` with `n = 0..=2s+1` and magnetic number
/// `-(s+1/2) + n`. `Lower { n }` is `|n⟩_{s-1/2}` with `n = 1..=2s` and
/// magnetic number `-(s-1/2) + (n-1)`; both share `m = -s - 1/2 + n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoupledLabel {
    Upper { n: u32 },
    Lower { n: u32 },
}

/// Real orthogonal change of basis from uncoupled to coupled states.
///
/// Row `r` of `matrix` holds the uncoupled components of coupled basis state
/// `coupled_labels()[r]`, so `coupled = matrix · uncoupled` for amplitude
/// vectors. Coupled rows are ordered as all upper states `n = 0..=2s+1`
/// followed by the lower states `n = 1..=2s`. Columns follow the uncoupled
/// order `k = 2n + m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTransform {
    pub twice_s: u32,
    pub matrix: OperatorMatrix,
}

impl CouplingTransform {
    pub fn spin(&self) -> SpinMagnitude {
        SpinMagnitude::from_twice(self.twice_s)
    }

    pub fn coupled_labels(&self) -> Vec<CoupledLabel> {
        let two_s = self.twice_s;
        (0..=two_s + 1)
            .map(|n| CoupledLabel::Upper { n })
            .chain((1..=two_s).map(|n| CoupledLabel::Lower { n }))
            .collect()
    }

    pub fn uncoupled_labels(&self) -> Vec<UncoupledLabel> {
        (0..=self.twice_s)
            .flat_map(|n| (0..2).map(move |small| UncoupledLabel { n, small }))
            .collect()
    }

    pub fn coupled_index(&self, label: CoupledLabel) -> usize {
        match label {
            CoupledLabel::Upper { n } => n as usize,
            CoupledLabel::Lower { n } => (self.twice_s + 1 + n) as usize,
        }
    }

    /// Coupled amplitudes of an uncoupled amplitude vector.
    pub fn to_coupled(&self, uncoupled: &[Complex64]) -> Vec<Complex64> {
        self.matrix.apply(uncoupled)
    }

    /// Uncoupled amplitudes of a coupled amplitude vector.
    pub fn to_uncoupled(&self, coupled: &[Complex64]) -> Vec<Complex64> {
        self.matrix.adjoint().apply(coupled)
    }

    /// Largest entry of `U†U − 1`.
    pub fn unitarity_residual(&self) -> f64 {
        let dim = self.matrix.dim();
        let product = &self.matrix.adjoint() * &self.matrix;
        product.max_abs_diff(&OperatorMatrix::identity(dim))
    }
}

/// Coupled/uncoupled basis change for `s ⊗ 1/2`.
pub fn coupling_transform(s: SpinMagnitude) -> CouplingTransform {
    let two_s = s.twice();
    let dim = s.product_dim();
    let denom = f64::from(two_s + 1);
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..=two_s + 1 {
        let nf = f64::from(n);
        // |n⟩_{s+1/2} = √((2s-n+1)/(2s+1)) |n⟩|0⟩ + √(n/(2s+1)) |n-1⟩|1⟩
        if n <= two_s {
            m[(n as usize, uncoupled_index(n, 0))] =
                ((f64::from(two_s) - nf + 1.0) / denom).sqrt().into();
        }
        if n >= 1 {
            m[(n as usize, uncoupled_index(n - 1, 1))] = (nf / denom).sqrt().into();
        }
    }
    for n in 1..=two_s {
        let nf = f64::from(n);
        let row = (two_s + 1 + n) as usize;
        // |n⟩_{s-1/2} = √(n/(2s+1)) |n⟩|0⟩ − √((2s-n+1)/(2s+1)) |n-1⟩|1⟩
        m[(row, uncoupled_index(n, 0))] = (nf / denom).sqrt().into();
        m[(row, uncoupled_index(n - 1, 1))] =
            (-((f64::from(two_s) - nf + 1.0) / denom).sqrt()).into();
    }
    CouplingTransform {
        twice_s: two_s,
        matrix: OperatorMatrix::new(m),
    }
}

/// Sorted eigenvalues of a Hermitian operator.
pub fn hermitian_eigenvalues(op: &OperatorMatrix) -> Vec<f64> {
    let eig = nalgebra::SymmetricEigen::new(op.matrix().clone());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn spins() -> impl Iterator<Item = SpinMagnitude> {
        (1..=5).map(SpinMagnitude::from_twice)
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn spin_half_operators() {
        let ops = ladder_operators(SpinMagnitude::HALF);
        assert_eq!(ops.z.matrix()[(0, 0)], Complex64::new(-0.5, 0.0));
        assert_eq!(ops.z.matrix()[(1, 1)], Complex64::new(0.5, 0.0));
        let nonzero: Vec<_> = ops
            .plus
            .matrix()
            .iter()
            .filter(|z| z.norm() > 0.0)
            .collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(ops.plus.matrix()[(1, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn spin_one_raising_entries() {
        let ops = ladder_operators(SpinMagnitude::from_twice(2));
        let p = ops.plus.matrix();
        assert!((p[(1, 0)].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((p[(2, 1)].re - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            ops.plus.matrix().iter().filter(|z| z.norm() > 0.0).count(),
            2
        );
    }

    #[test]
    fn commutation_and_adjoint() {
        for s in spins() {
            let ops = ladder_operators(s);
            assert!(ops.z.commutator(&ops.plus).max_abs_diff(&ops.plus) < TOL);
            assert_eq!(ops.minus, ops.plus.adjoint());
            // [S₊, S₋] = 2 S_z
            assert!(
                ops.plus
                    .commutator(&ops.minus)
                    .max_abs_diff(&ops.z.scale(2.0))
                    < TOL
            );
        }
    }

    #[test]
    fn j_squared_spectra() {
        assert_close(
            &hermitian_eigenvalues(&j_squared(SpinMagnitude::HALF)),
            &[0.0, 2.0, 2.0, 2.0],
            TOL,
        );
        assert_close(
            &hermitian_eigenvalues(&j_squared(SpinMagnitude::from_twice(2))),
            &[0.75, 0.75, 3.75, 3.75, 3.75, 3.75],
            TOL,
        );
        for s in spins() {
            let j2 = j_squared(s);
            assert!(j2.is_hermitian(TOL));
            let mut expected = vec![s.lower_casimir(); s.twice() as usize];
            expected.extend(vec![s.upper_casimir(); s.twice() as usize + 2]);
            assert_close(&hermitian_eigenvalues(&j2), &expected, 1e-11);
        }
    }

    #[test]
    fn j_squared_matches_pauli_expansion() {
        // J² = S² + 3/4 + S_z σ_z + S₊σ₋ + S₋σ₊ with σ± = |↑⟩⟨↓|, |↓⟩⟨↑|
        for s in spins() {
            let large = ladder_operators(s);
            let half = ladder_operators(SpinMagnitude::HALF);
            let sigma_z = half.z.scale(2.0);
            let id_l = OperatorMatrix::identity(s.dim());
            let id_s = OperatorMatrix::identity(2);
            let mut expected = large.squared().kron(&id_s);
            expected = &expected + &id_l.kron(&id_s).scale(0.75);
            expected = &expected + &large.z.kron(&sigma_z);
            expected = &expected + &large.plus.kron(&half.minus);
            expected = &expected + &large.minus.kron(&half.plus);
            assert!(j_squared(s).max_abs_diff(&expected) < TOL);
        }
    }

    #[test]
    fn scalar_blocks() {
        for s in spins() {
            let v = s.value();
            let form = block_matrices(s);
            assert_eq!(form.blocks.len(), s.twice() as usize);
            assert!((form.scalars.0 - (v * v + 2.0 * v + 0.75)).abs() < 1e-15);
            assert_eq!(form.scalars.0, form.scalars.1);
        }
    }

    fn block_eigs(m: &nalgebra::Matrix2<f64>) -> Vec<f64> {
        let mut e: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn block_spectra() {
        let half = block_matrices(SpinMagnitude::HALF);
        assert_eq!(half.blocks[0], nalgebra::Matrix2::new(1.0, 1.0, 1.0, 1.0));
        assert_close(&block_eigs(&half.blocks[0]), &[0.0, 2.0], TOL);
        let one = block_matrices(SpinMagnitude::from_twice(2));
        assert_close(&block_eigs(&one.blocks[0]), &[0.75, 3.75], TOL);
        for s in spins() {
            for b in &block_matrices(s).blocks {
                assert_close(&block_eigs(b), &[s.lower_casimir(), s.upper_casimir()], TOL);
            }
        }
    }

    #[test]
    fn blocks_reassemble_j_squared() {
        for s in spins() {
            assert!(block_matrices(s).assemble().max_abs_diff(&j_squared(s)) < TOL);
        }
    }

    #[test]
    fn singlet_row_for_two_qubits() {
        let u = coupling_transform(SpinMagnitude::HALF);
        let row = u.coupled_index(CoupledLabel::Lower { n: 1 });
        let m = u.matrix.matrix();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m[(row, uncoupled_index(1, 0))].re - r).abs() < 1e-15);
        assert!((m[(row, uncoupled_index(0, 1))].re + r).abs() < 1e-15);
    }

    #[test]
    fn coupling_is_real_orthogonal_and_blocked() {
        for s in spins() {
            let u = coupling_transform(s);
            assert!(u.unitarity_residual() < TOL);
            assert!(u.matrix.matrix().iter().all(|z| z.im == 0.0));
            for r in 0..u.matrix.dim() {
                let row_norm: f64 = u.matrix.matrix().row(r).iter().map(|z| z.norm_sqr()).sum();
                assert!((row_norm - 1.0).abs() < TOL);
            }
            // Each coupled row lives inside a single V_n block.
            let mut block_sizes = std::collections::BTreeMap::new();
            for (r, label) in u.coupled_labels().into_iter().enumerate() {
                let n = match label {
                    CoupledLabel::Upper { n } | CoupledLabel::Lower { n } => n,
                };
                let support: Vec<usize> = (0..u.matrix.dim())
                    .filter(|&c| u.matrix.matrix()[(r, c)].norm() > 0.0)
                    .collect();
                let allowed: Vec<usize> = u
                    .uncoupled_labels()
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l.n + l.small == n)
                    .map(|(i, _)| i)
                    .collect();
                assert!(support.iter().all(|c| allowed.contains(c)));
                *block_sizes.entry(n).or_insert(0) += 1;
            }
            let ones = block_sizes.values().filter(|&&c| c == 1).count();
            let twos = block_sizes.values().filter(|&&c| c == 2).count();
            assert_eq!((ones, twos), (2, s.twice() as usize));
        }
    }

    #[test]
    fn coupling_diagonalizes_j_squared() {
        for s in spins() {
            let u = coupling_transform(s);
            let conj = &(&u.matrix * &j_squared(s)) * &u.matrix.adjoint();
            for (r, label) in u.coupled_labels().into_iter().enumerate() {
                let expected = match label {
                    CoupledLabel::Upper { .. } => s.upper_casimir(),
                    CoupledLabel::Lower { .. } => s.lower_casimir(),
                };
                for c in 0..conj.dim() {
                    let want = if r == c { expected } else { 0.0 };
                    assert!((conj.matrix()[(r, c)] - want).norm() < TOL);
                }
            }
        }
    }

    #[test]
    fn coupled_states_follow_condon_shortley_phases() {
        // J₊ maps each coupled state onto a positive multiple of the next.
        for s in spins() {
            let u = coupling_transform(s);
            let jp = total_spin(s).plus;
            let labels = u.coupled_labels();
            for (r, label) in labels.iter().enumerate() {
                let next = match *label {
                    CoupledLabel::Upper { n } if n <= s.twice() => CoupledLabel::Upper { n: n + 1 },
                    CoupledLabel::Lower { n } if n < s.twice() => CoupledLabel::Lower { n: n + 1 },
                    _ => continue,
                };
                let v: Vec<Complex64> = u.matrix.matrix().row(r).iter().copied().collect();
                let raised = jp.apply(&v);
                let w = u.matrix.matrix().row(u.coupled_index(next)).transpose();
                let overlap: Complex64 =
                    raised.iter().zip(w.iter()).map(|(a, b)| a * b.conj()).sum();
                assert!(overlap.re > 0.5 && overlap.im.abs() < TOL);
            }
        }
    }
}
