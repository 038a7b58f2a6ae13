//! Block-skew multilinear maps.
//!
//! A [`BlockMap`] with `p` blocks realizes an element of
//! `Hom(⊗^p(∧^{n-1} S) ⊗ S, T)`: each block holds `n - 1` antisymmetric
//! arguments and there is one extra tail argument. No symmetry is imposed
//! between different blocks or between the last block and the tail.
//!
//! Tables are keyed by sorted blocks only; a missing key is the zero vector.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::{
    axpy, basis_vector, is_zero_vector, sort_to_block, support, zero_vector, Matrix, Scalar,
    Vector, WedgeBasis,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub dim: usize,
    pub label: String,
}

impl Space {
    pub fn new(dim: usize, label: impl Into<String>) -> Self {
        Space {
            dim,
            label: label.into(),
        }
    }
}

/// Bidegree `k|l` of a homogeneous map on a direct sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bidegree {
    pub k: i64,
    pub l: i64,
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.k, self.l)
    }
}

/// Something that can absorb scalar multiples of itself and be pushed
/// through a matrix. Vectors are the concrete case; [`SymbolicVector`]
/// tracks coefficients of an unknown cochain so that coboundary matrices can
/// be assembled row by row.
pub trait Module: Clone {
    fn zero(dim: usize) -> Self;
    fn add_scaled(&mut self, c: &Scalar, other: &Self);
    /// `m · self`
    fn transform(&self, m: &Matrix) -> Self;
}

impl Module for Vector {
    fn zero(dim: usize) -> Self {
        zero_vector(dim)
    }

    fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        axpy(self, c, other);
    }

    fn transform(&self, m: &Matrix) -> Self {
        m.mul_vec(self)
    }
}

/// A target vector whose components are linear forms in unknown
/// coefficients (sparse, column index to coefficient).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicVector {
    pub comps: Vec<BTreeMap<usize, Scalar>>,
}

impl Module for SymbolicVector {
    fn zero(dim: usize) -> Self {
        SymbolicVector {
            comps: vec![BTreeMap::new(); dim],
        }
    }

    fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (mine, theirs) in self.comps.iter_mut().zip(&other.comps) {
            for (col, x) in theirs {
                let e = mine.entry(*col).or_insert_with(Scalar::zero);
                *e += c * x;
                if e.is_zero() {
                    mine.remove(col);
                }
            }
        }
    }

    fn transform(&self, m: &Matrix) -> Self {
        let mut out = SymbolicVector::zero(m.rows());
        for (r, comp) in out.comps.iter_mut().enumerate() {
            for (j, src) in self.comps.iter().enumerate() {
                let a = &m[(r, j)];
                if a.is_zero() {
                    continue;
                }
                for (col, x) in src {
                    let e = comp.entry(*col).or_insert_with(Scalar::zero);
                    *e += a * x;
                    if e.is_zero() {
                        comp.remove(col);
                    }
                }
            }
        }
        out
    }
}

/// Evaluation of a block-skew map on vector arguments.
pub trait Evaluate<M: Module> {
    fn eval_at(&self, blocks: &[Vec<Vector>], tail: &Vector) -> M;
}

/// Key layout shared by [`BlockMap`] and [`UnknownCochain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyLayout {
    n: usize,
    blocks: usize,
    source_dim: usize,
    wedge: WedgeBasis,
}

impl KeyLayout {
    pub fn new(n: usize, blocks: usize, source_dim: usize) -> Self {
        assert!(n >= 2, "arity must be at least 2");
        KeyLayout {
            n,
            blocks,
            source_dim,
            wedge: WedgeBasis::new(source_dim, n - 1),
        }
    }

    pub fn wedge(&self) -> &WedgeBasis {
        &self.wedge
    }

    pub fn key_count(&self) -> usize {
        self.wedge.len().pow(self.blocks as u32) * self.source_dim
    }

    pub fn encode(&self, ranks: &[usize], tail: usize) -> usize {
        let w = self.wedge.len();
        ranks.iter().fold(0, |acc, r| acc * w + r) * self.source_dim + tail
    }

    pub fn decode(&self, key: usize) -> (Vec<usize>, usize) {
        let w = self.wedge.len();
        let tail = key % self.source_dim;
        let mut rest = key / self.source_dim;
        let mut ranks = vec![0; self.blocks];
        for r in ranks.iter_mut().rev() {
            *r = rest % w;
            rest /= w;
        }
        (ranks, tail)
    }

    /// Basis-index form of a key: sorted blocks and the tail.
    pub fn key_indices(&self, key: usize) -> (Vec<Vec<usize>>, usize) {
        let (ranks, tail) = self.decode(key);
        (
            ranks
                .iter()
                .map(|&r| self.wedge.subset(r).to_vec())
                .collect(),
            tail,
        )
    }

    /// Basis-vector arguments for a key.
    pub fn key_vectors(&self, key: usize) -> (Vec<Vec<Vector>>, Vector) {
        let (blocks, tail) = self.key_indices(key);
        let d = self.source_dim;
        (
            blocks
                .iter()
                .map(|b| b.iter().map(|&i| basis_vector(d, i)).collect())
                .collect(),
            basis_vector(d, tail),
        )
    }

    /// Multilinear expansion of vector arguments into `(key, coefficient)`
    /// pairs. Antisymmetry inside blocks is applied here.
    pub fn expand(&self, blocks: &[Vec<Vector>], tail: &Vector) -> Vec<(usize, Scalar)> {
        assert_eq!(blocks.len(), self.blocks, "block count mismatch");
        let mut per_block: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(self.blocks);
        for b in blocks {
            let w = self.wedge_coefficients(b);
            if w.is_empty() {
                return Vec::new();
            }
            per_block.push(w);
        }
        let tails: Vec<(usize, Scalar)> = support(tail).map(|(i, x)| (i, x.clone())).collect();
        if tails.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut ranks = vec![0usize; self.blocks];
        self.expand_rec(&per_block, 0, &Scalar::from_integer(1.into()), &mut ranks, &tails, &mut out);
        out
    }

    fn expand_rec(
        &self,
        per_block: &[Vec<(usize, Scalar)>],
        depth: usize,
        coeff: &Scalar,
        ranks: &mut Vec<usize>,
        tails: &[(usize, Scalar)],
        out: &mut Vec<(usize, Scalar)>,
    ) {
        if depth == per_block.len() {
            for (t, x) in tails {
                out.push((self.encode(ranks, *t), coeff * x));
            }
            return;
        }
        for (r, c) in &per_block[depth] {
            ranks[depth] = *r;
            self.expand_rec(per_block, depth + 1, &(coeff * c), ranks, tails, out);
        }
    }

    /// Coefficients of `v_1 ∧ … ∧ v_{n-1}` in the wedge basis.
    pub fn wedge_coefficients(&self, vectors: &[Vector]) -> Vec<(usize, Scalar)> {
        assert_eq!(vectors.len(), self.n - 1, "block size mismatch");
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        let supports: Vec<Vec<(usize, &Scalar)>> =
            vectors.iter().map(|v| support(v).collect()).collect();
        if supports.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let mut idx = vec![0usize; vectors.len()];
        let mut choice = vec![0usize; vectors.len()];
        'outer: loop {
            for (slot, s) in supports.iter().enumerate() {
                choice[slot] = s[idx[slot]].0;
            }
            if let Some((block, sign)) = sort_to_block(&choice) {
                let mut c: Scalar = supports
                    .iter()
                    .zip(&idx)
                    .fold(Scalar::from_integer(1.into()), |a, (s, &i)| a * s[i].1);
                if sign < 0 {
                    c = -c;
                }
                let e = acc
                    .entry(self.wedge.rank(block.indices()))
                    .or_insert_with(Scalar::zero);
                *e += c;
            }
            // odometer
            let mut slot = supports.len();
            loop {
                if slot == 0 {
                    break 'outer;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < supports[slot].len() {
                    break;
                }
                idx[slot] = 0;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// A block-skew multilinear map stored by its values on sorted basis keys.
/// Equality ignores space labels.
#[derive(Clone, Debug)]
pub struct BlockMap {
    layout: KeyLayout,
    source: Space,
    target: Space,
    table: BTreeMap<usize, Vector>,
}

impl PartialEq for BlockMap {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other) && self.table == other.table
    }
}

impl Eq for BlockMap {}

impl BlockMap {
    pub fn zero(n: usize, blocks: usize, source: Space, target: Space) -> Self {
        BlockMap {
            layout: KeyLayout::new(n, blocks, source.dim),
            source,
            target,
            table: BTreeMap::new(),
        }
    }

    /// Materializes a map from its values on sorted basis keys.
    pub fn from_fn(
        n: usize,
        blocks: usize,
        source: Space,
        target: Space,
        mut f: impl FnMut(&[Vec<usize>], usize) -> Vector,
    ) -> Self {
        let mut m = Self::zero(n, blocks, source, target);
        for key in 0..m.layout.key_count() {
            let (bs, tail) = m.layout.key_indices(key);
            let v = f(&bs, tail);
            assert_eq!(v.len(), m.target.dim, "value has wrong dimension");
            m.insert_key(key, v);
        }
        m
    }

    /// Materializes any evaluable map on the sorted basis keys.
    pub fn materialize<E: Evaluate<Vector> + ?Sized>(
        n: usize,
        blocks: usize,
        source: Space,
        target: Space,
        e: &E,
    ) -> Self {
        let mut m = Self::zero(n, blocks, source, target);
        for key in 0..m.layout.key_count() {
            let (bs, tail) = m.layout.key_vectors(key);
            let v = e.eval_at(&bs, &tail);
            m.insert_key(key, v);
        }
        m
    }

    /// A linear map `S → T` given by a `T.dim × S.dim` matrix, as a map with
    /// no blocks.
    pub fn from_matrix(n: usize, source: Space, target: Space, m: &Matrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (target.dim, source.dim));
        Self::from_fn(n, 0, source, target, |_, tail| m.column(tail))
    }

    /// Matrix of a map with no blocks.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.blocks(), 0, "only block-free maps are linear maps");
        let cols: Vec<Vector> = (0..self.source.dim)
            .map(|t| self.value(&[], t))
            .collect();
        Matrix::from_columns(&cols, self.target.dim)
    }

    pub fn n(&self) -> usize {
        self.layout.n
    }

    /// Number of `(n-1)`-blocks; the graded degree.
    pub fn blocks(&self) -> usize {
        self.layout.blocks
    }

    /// Cochain degree: blocks plus one.
    pub fn degree(&self) -> usize {
        self.layout.blocks + 1
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn layout(&self) -> &KeyLayout {
        &self.layout
    }

    pub fn key_count(&self) -> usize {
        self.layout.key_count()
    }

    /// Nonzero table entries in key order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.table.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn same_shape(&self, other: &BlockMap) -> bool {
        self.layout == other.layout && self.source.dim == other.source.dim && self.target.dim == other.target.dim
    }

    fn insert_key(&mut self, key: usize, v: Vector) {
        if is_zero_vector(&v) {
            self.table.remove(&key);
        } else {
            self.table.insert(key, v);
        }
    }

    /// Sets the value on a key given by sorted blocks and tail. Unsorted
    /// blocks are normalized, with the sorting sign applied to `value`.
    pub fn set(&mut self, blocks: &[&[usize]], tail: usize, value: Vector) -> Result<()> {
        self.check_indices(blocks, tail)?;
        if value.len() != self.target.dim {
            return Err(Error::Shape(format!(
                "value of length {} for target of dimension {}",
                value.len(),
                self.target.dim
            )));
        }
        let mut ranks = Vec::with_capacity(blocks.len());
        let mut negate = false;
        for b in blocks {
            let (sorted, sign) = sort_to_block(b).ok_or_else(|| {
                Error::Shape(format!("repeated index in block {b:?}"))
            })?;
            negate ^= sign < 0;
            ranks.push(self.layout.wedge.rank(sorted.indices()));
        }
        let key = self.layout.encode(&ranks, tail);
        let v = if negate {
            value.into_iter().map(|x| -x).collect()
        } else {
            value
        };
        self.insert_key(key, v);
        Ok(())
    }

    fn check_indices(&self, blocks: &[&[usize]], tail: usize) -> Result<()> {
        if blocks.len() != self.blocks() {
            return Err(Error::Arity(format!(
                "expected {} blocks, got {}",
                self.blocks(),
                blocks.len()
            )));
        }
        for b in blocks {
            if b.len() != self.n() - 1 {
                return Err(Error::Arity(format!(
                    "block of size {} where {} expected",
                    b.len(),
                    self.n() - 1
                )));
            }
            if let Some(i) = b.iter().find(|&&i| i >= self.source.dim) {
                return Err(Error::Range(format!("index {i} in block")));
            }
        }
        if tail >= self.source.dim {
            return Err(Error::Range(format!("tail index {tail}")));
        }
        Ok(())
    }

    /// Value on sorted-or-unsorted basis indices.
    pub fn evaluate_basis(&self, blocks: &[&[usize]], tail: usize) -> Result<Vector> {
        self.check_indices(blocks, tail)?;
        let mut ranks = Vec::with_capacity(blocks.len());
        let mut negate = false;
        for b in blocks {
            match sort_to_block(b) {
                None => return Ok(zero_vector(self.target.dim)),
                Some((sorted, sign)) => {
                    negate ^= sign < 0;
                    ranks.push(self.layout.wedge.rank(sorted.indices()));
                }
            }
        }
        let key = self.layout.encode(&ranks, tail);
        let v = self.table.get(&key).cloned().unwrap_or_else(|| zero_vector(self.target.dim));
        Ok(if negate { v.into_iter().map(|x| -x).collect() } else { v })
    }

    /// Value on sorted basis keys given as index lists (no checks).
    pub fn value(&self, blocks: &[Vec<usize>], tail: usize) -> Vector {
        let ranks: Vec<usize> = blocks.iter().map(|b| self.layout.wedge.rank(b)).collect();
        let key = self.layout.encode(&ranks, tail);
        self.table
            .get(&key)
            .cloned()
            .unwrap_or_else(|| zero_vector(self.target.dim))
    }

    /// Checked evaluation on vector arguments.
    pub fn evaluate(&self, blocks: &[Vec<Vector>], tail: &Vector) -> Result<Vector> {
        if blocks.len() != self.blocks() {
            return Err(Error::Arity(format!(
                "expected {} blocks, got {}",
                self.blocks(),
                blocks.len()
            )));
        }
        let d = self.source.dim;
        for b in blocks {
            if b.len() != self.n() - 1 || b.iter().any(|v| v.len() != d) {
                return Err(Error::Arity("malformed block argument".into()));
            }
        }
        if tail.len() != d {
            return Err(Error::Arity("malformed tail argument".into()));
        }
        Ok(self.eval_at(blocks, tail))
    }

    pub fn add(&self, other: &BlockMap) -> Result<BlockMap> {
        self.combine(other, &Scalar::from_integer(1.into()))
    }

    pub fn sub(&self, other: &BlockMap) -> Result<BlockMap> {
        self.combine(other, &Scalar::from_integer((-1).into()))
    }

    /// `self + c · other`
    pub fn combine(&self, other: &BlockMap, c: &Scalar) -> Result<BlockMap> {
        if !self.same_shape(other) {
            return Err(Error::SpaceMismatch(
                "cannot add maps of different shapes".into(),
            ));
        }
        let mut out = self.clone();
        for (k, v) in &other.table {
            let mut cur = out
                .table
                .remove(k)
                .unwrap_or_else(|| zero_vector(self.target.dim));
            axpy(&mut cur, c, v);
            out.insert_key(*k, cur);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> BlockMap {
        let mut out = BlockMap {
            layout: self.layout.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            table: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.table {
            out.table.insert(*k, v.iter().map(|x| c * x).collect());
        }
        out
    }

    /// Flat coordinate vector in the canonical cochain basis: keys in
    /// lexicographic order, then target components.
    pub fn coordinates(&self) -> Vector {
        let t = self.target.dim;
        let mut out = zero_vector(self.key_count() * t);
        for (k, v) in &self.table {
            out[k * t..(k + 1) * t].clone_from_slice(v);
        }
        out
    }

    pub fn from_coordinates(n: usize, blocks: usize, source: Space, target: Space, coords: &[Scalar]) -> Self {
        let mut m = Self::zero(n, blocks, source, target);
        let t = m.target.dim;
        assert_eq!(coords.len(), m.key_count() * t, "coordinate vector length");
        for key in 0..m.key_count() {
            m.insert_key(key, coords[key * t..(key + 1) * t].to_vec());
        }
        m
    }

    /// Dimension of the space of maps of this shape.
    pub fn space_dim(&self) -> usize {
        self.key_count() * self.target.dim
    }

    /// Same table reinterpreted with different labels (dimensions must agree).
    pub fn relabel(&self, source: Space, target: Space) -> BlockMap {
        assert_eq!((source.dim, target.dim), (self.source.dim, self.target.dim));
        BlockMap {
            source,
            target,
            ..self.clone()
        }
    }
}

impl Evaluate<Vector> for BlockMap {
    fn eval_at(&self, blocks: &[Vec<Vector>], tail: &Vector) -> Vector {
        let mut out = zero_vector(self.target.dim);
        if self.table.is_empty() {
            return out;
        }
        for (key, c) in self.layout.expand(blocks, tail) {
            if let Some(v) = self.table.get(&key) {
                axpy(&mut out, &c, v);
            }
        }
        out
    }
}

/// A cochain with unknown coefficients; evaluation returns linear forms in
/// the canonical coordinates (see [`BlockMap::coordinates`]).
#[derive(Clone, Debug)]
pub struct UnknownCochain {
    pub layout: KeyLayout,
    pub target_dim: usize,
}

impl UnknownCochain {
    pub fn new(n: usize, blocks: usize, source_dim: usize, target_dim: usize) -> Self {
        UnknownCochain {
            layout: KeyLayout::new(n, blocks, source_dim),
            target_dim,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.layout.key_count() * self.target_dim
    }
}

impl Evaluate<SymbolicVector> for UnknownCochain {
    fn eval_at(&self, blocks: &[Vec<Vector>], tail: &Vector) -> SymbolicVector {
        let mut out = SymbolicVector::zero(self.target_dim);
        for (key, c) in self.layout.expand(blocks, tail) {
            for (j, comp) in out.comps.iter_mut().enumerate() {
                let col = key * self.target_dim + j;
                let e = comp.entry(col).or_insert_with(Scalar::zero);
                *e += &c;
                if e.is_zero() {
                    comp.remove(&col);
                }
            }
        }
        out
    }
}

/// A map on `g ⊕ V` (basis: `g` first, then `V`) with the split recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSpaceMap {
    pub map: BlockMap,
    pub split: usize,
}

impl SumSpaceMap {
    pub fn new(map: BlockMap, split: usize) -> Result<Self> {
        if map.source().dim != map.target().dim || split > map.source().dim {
            return Err(Error::Shape(
                "sum-space maps are endomorphism cochains with split ≤ dim".into(),
            ));
        }
        Ok(SumSpaceMap { map, split })
    }

    pub fn g_dim(&self) -> usize {
        self.split
    }

    pub fn v_dim(&self) -> usize {
        self.map.source().dim - self.split
    }

    pub fn sum_space(g_dim: usize, v_dim: usize) -> Space {
        Space::new(g_dim + v_dim, "g+V")
    }
}

/// What is being lifted to the direct sum.
pub enum LiftSource<'a> {
    /// `μ: ∧^n g → g`, stored as a one-block map on `g`.
    Bracket { mu: &'a BlockMap, v_dim: usize },
    /// `ρ: ∧^{n-1} g ⊗ V → V`, one matrix per sorted `(n-1)`-block of `g`.
    Action {
        n: usize,
        g_dim: usize,
        v_dim: usize,
        action: &'a [Matrix],
    },
    /// `P: ⊗^m(∧^{n-1} V) ⊗ V → g`, any number of blocks.
    Operator { p: &'a BlockMap },
}

/// Lift of a bracket, action or operator cochain to `g ⊕ V`.
pub fn lift_to_sum(src: LiftSource<'_>) -> Result<SumSpaceMap> {
    match src {
        LiftSource::Bracket { mu, v_dim } => {
            let g = mu.source().dim;
            if mu.blocks() != 1 || mu.target().dim != g {
                return Err(Error::Shape("bracket must be a one-block map g → g".into()));
            }
            let n = mu.n();
            let map = BlockMap::from_fn(n, 1, SumSpaceMap::sum_space(g, v_dim), SumSpaceMap::sum_space(g, v_dim), |bs, tail| {
                let mut out = zero_vector(g + v_dim);
                if tail < g && bs[0].iter().all(|&i| i < g) {
                    out[..g].clone_from_slice(&mu.value(bs, tail));
                }
                out
            });
            SumSpaceMap::new(map, g)
        }
        LiftSource::Action {
            n,
            g_dim,
            v_dim,
            action,
        } => {
            let wedge = WedgeBasis::new(g_dim, n - 1);
            if action.len() != wedge.len()
                || action.iter().any(|m| m.rows() != v_dim || m.cols() != v_dim)
            {
                return Err(Error::Shape("action matrices do not match (g, V)".into()));
            }
            let d = g_dim + v_dim;
            let act = |g_args: &[usize]| -> Option<(i32, &Matrix)> {
                let (b, s) = sort_to_block(g_args)?;
                Some((s, &action[wedge.rank(b.indices())]))
            };
            let map = BlockMap::from_fn(n, 1, SumSpaceMap::sum_space(g_dim, v_dim), SumSpaceMap::sum_space(g_dim, v_dim), |bs, tail| {
                let mut out = zero_vector(d);
                let mut args: Vec<usize> = bs[0].clone();
                args.push(tail);
                let v_positions: Vec<usize> =
                    (0..n).filter(|&p| args[p] >= g_dim).collect();
                if v_positions.len() != 1 {
                    return out;
                }
                let p = v_positions[0];
                let others: Vec<usize> = args
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != p)
                    .map(|(_, &i)| i)
                    .collect();
                if let Some((s, m)) = act(&others) {
                    let u = args[p] - g_dim;
                    let sign = if ((n - 1 - p) % 2 == 0) == (s > 0) { 1 } else { -1 };
                    for r in 0..v_dim {
                        let x = &m[(r, u)];
                        out[g_dim + r] = if sign > 0 { x.clone() } else { -x.clone() };
                    }
                }
                out
            });
            SumSpaceMap::new(map, g_dim)
        }
        LiftSource::Operator { p } => {
            let v = p.source().dim;
            let g = p.target().dim;
            let map = BlockMap::from_fn(p.n(), p.blocks(), SumSpaceMap::sum_space(g, v), SumSpaceMap::sum_space(g, v), |bs, tail| {
                let mut out = zero_vector(g + v);
                if tail >= g && bs.iter().all(|b| b.iter().all(|&i| i >= g)) {
                    let shifted: Vec<Vec<usize>> =
                        bs.iter().map(|b| b.iter().map(|i| i - g).collect()).collect();
                    out[..g].clone_from_slice(&p.value(&shifted, tail - g));
                }
                out
            });
            SumSpaceMap::new(map, g)
        }
    }
}

/// Bidegree of a map on `g ⊕ V`, checked on every basis key. `None` when the
/// map is not homogeneous, and also for the zero map, which has every
/// bidegree (see [`has_bidegree`]).
pub fn bidegree_of(f: &SumSpaceMap) -> Option<Bidegree> {
    let n = f.map.n() as i64;
    let m = f.map.blocks() as i64;
    let split = f.split;
    let layout = f.map.layout();
    let mut found: Option<i64> = None;
    for (key, v) in f.map.entries() {
        let (bs, tail) = layout.key_indices(key);
        let g_args = bs.iter().flatten().filter(|&&i| i < split).count() as i64
            + i64::from(tail < split);
        let g_part = v[..split].iter().any(|x| !x.is_zero());
        let v_part = v[split..].iter().any(|x| !x.is_zero());
        for (present, k) in [(g_part, g_args - 1), (v_part, g_args)] {
            if present {
                match found {
                    None => found = Some(k),
                    Some(k0) if k0 != k => return None,
                    _ => {}
                }
            }
        }
    }
    found.map(|k| Bidegree {
        k,
        l: m * (n - 1) - k,
    })
}

/// Whether `f` satisfies the bidegree conditions for `bd` (zero always does).
pub fn has_bidegree(f: &SumSpaceMap, bd: Bidegree) -> bool {
    let n = f.map.n() as i64;
    let m = f.map.blocks() as i64;
    if bd.k + bd.l != m * (n - 1) {
        return false;
    }
    f.map.is_zero() || bidegree_of(f) == Some(bd)
}

/// Component of `f` in `Hom(⊗^m(∧^{n-1} V) ⊗ V, g)`: all arguments from `V`,
/// value projected to `g`.
pub fn restrict_to_operator_cochain(f: &SumSpaceMap) -> BlockMap {
    let g = f.g_dim();
    let v = f.v_dim();
    let n = f.map.n();
    BlockMap::from_fn(n, f.map.blocks(), Space::new(v, "V"), Space::new(g, "g"), |bs, tail| {
        let shifted: Vec<Vec<usize>> =
            bs.iter().map(|b| b.iter().map(|i| i + g).collect()).collect();
        f.map.value(&shifted, tail + g)[..g].to_vec()
    })
}
