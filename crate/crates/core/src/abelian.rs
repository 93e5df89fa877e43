//! Relation matrices, Smith normal form and abelianization.
//!
//! The abelianization of `⟨x_1..x_u | r_1..r_v⟩` is `Z^u / rowspan(M)` where
//! `M[i][j]` is the exponent sum of `x_j` in `r_i`. With `D = U M V` in Smith
//! form, a row vector `e` of exponent sums has coordinates `e V` in the
//! decomposition `Z/d_1 ⊕ … ⊕ Z/d_r ⊕ Z^(u-r)`.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fpgroup::{Presentation, Word};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// One row per line, entries separated by single spaces.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(BigInt::from_str)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Syntax {
                    line: lineno + 1,
                    message: "expected integers".into(),
                })?;
            rows.push(row);
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Syntax {
                line: 0,
                message: "rows have different lengths".into(),
            });
        }
        Ok(IntMatrix::from_rows(&rows))
    }
}

/// `v × u` matrix of exponent sums: entry `(i, j)` counts generator `j` in
/// relator `i`.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let u = p.num_generators();
    let mut m = IntMatrix::zeros(p.relators().len(), u);
    for (i, r) in p.relators().iter().enumerate() {
        for s in r.syllables() {
            m[(i, s.generator)] += &s.exponent;
        }
    }
    m
}

/// Smith normal form `D = U · A · V` together with the unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries of `D`, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: IntMatrix,
}

/// Pivot: nonzero entry of least absolute value in the trailing submatrix,
/// ties broken by lowest `(row, col)`.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = find_pivot(&a, t) {
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_zero() {
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        rank += 1;
    }

    let factors = (0..rank).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        factors,
        rank,
        left,
        right,
        diagonal: a,
    }
}

/// Invariant factors (nonzero Smith diagonal, including units) and rank.
pub fn smith_invariant_factors(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let snf = smith_normal_form(m);
    (snf.factors, snf.rank)
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `1 < t_1 | t_2 | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        AbelianInvariants { free_rank, torsion }
    }

    /// `Z/m`, or the trivial group for `m = 1`.
    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => AbelianInvariants::new(1, vec![]),
            1 => AbelianInvariants::new(0, vec![]),
            m => AbelianInvariants::new(0, vec![BigInt::from(m)]),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// `Z^2 + Z/2 + Z/6`; rank one prints as `Z`, the trivial group as `0`.
impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A class in an abelian group given by [`AbelianInvariants`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianElement {
    pub free_part: Vec<BigInt>,
    /// Component `i` lies in `[0, torsion[i])`.
    pub torsion_part: Vec<BigInt>,
    moduli: Vec<BigInt>,
}

impl AbelianElement {
    pub fn is_zero(&self) -> bool {
        self.free_part
            .iter()
            .chain(&self.torsion_part)
            .all(Zero::is_zero)
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }
}

impl Add for &AbelianElement {
    type Output = AbelianElement;

    fn add(self, rhs: &AbelianElement) -> AbelianElement {
        assert_eq!(self.moduli, rhs.moduli, "elements of different groups");
        AbelianElement {
            free_part: self
                .free_part
                .iter()
                .zip(&rhs.free_part)
                .map(|(a, b)| a + b)
                .collect(),
            torsion_part: self
                .torsion_part
                .iter()
                .zip(&rhs.torsion_part)
                .zip(&self.moduli)
                .map(|((a, b), d)| (a + b).mod_floor(d))
                .collect(),
            moduli: self.moduli.clone(),
        }
    }
}

/// Abelian invariants of a presentation plus the column transform needed to
/// send words to coordinates.
#[derive(Clone, Debug)]
pub struct Abelianization {
    invariants: AbelianInvariants,
    num_generators: usize,
    right: IntMatrix,
    /// Smith diagonal padded with zeros to length `num_generators`.
    diagonal: Vec<BigInt>,
}

impl Abelianization {
    pub fn of(p: &Presentation) -> Self {
        let u = p.num_generators();
        let snf = smith_normal_form(&relation_matrix(p));
        let mut diagonal = snf.factors.clone();
        diagonal.resize(u, BigInt::zero());
        let torsion = snf
            .factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        Abelianization {
            invariants: AbelianInvariants::new(u - snf.rank, torsion),
            num_generators: u,
            right: snf.right,
            diagonal,
        }
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn image(&self, w: &Word) -> Result<AbelianElement> {
        w.check_range(self.num_generators)?;
        let u = self.num_generators;
        let mut exps = vec![BigInt::zero(); u];
        for s in w.syllables() {
            exps[s.generator] += &s.exponent;
        }
        let mut free_part = Vec::new();
        let mut torsion_part = Vec::new();
        for (j, d) in self.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let coord: BigInt = (0..u).map(|i| &exps[i] * &self.right[(i, j)]).sum();
            if d.is_zero() {
                free_part.push(coord);
            } else {
                torsion_part.push(coord.mod_floor(d));
            }
        }
        Ok(AbelianElement {
            free_part,
            torsion_part,
            moduli: self.invariants.torsion.clone(),
        })
    }

    /// For a finite cyclic abelianization `Z/n` and a word `g` whose class
    /// generates it, returns `k ∈ [0, n)` with `[w] = k·[g]`. This is the
    /// coordinate of `w` under the isomorphism `Z/n → Z/n` sending `[g]` to 1.
    pub fn cyclic_coordinate(&self, w: &Word, g: &Word) -> Result<Option<BigInt>> {
        if self.invariants.free_rank != 0 || self.invariants.torsion.len() != 1 {
            return Ok(None);
        }
        let n = &self.invariants.torsion[0];
        let wi = self.image(w)?.torsion_part[0].clone();
        let gi = self.image(g)?.torsion_part[0].clone();
        let ext = gi.extended_gcd(n);
        if !ext.gcd.is_one() {
            return Ok(None);
        }
        Ok(Some((wi * ext.x).mod_floor(n)))
    }
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    Abelianization::of(p)
}

pub fn abelian_image(w: &Word, abz: &Abelianization) -> Result<AbelianElement> {
    abz.image(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn relation_matrices() {
        let t = parse("gens a b\nrel a b a B A B\n");
        assert_eq!(relation_matrix(&t), IntMatrix::from_rows(&[vec![1, -1]]));
        let x = parse("gens x y\nrel x^2 y^-3\n");
        assert_eq!(relation_matrix(&x), IntMatrix::from_rows(&[vec![2, -3]]));
        let f = parse("gens a\n");
        let m = relation_matrix(&f);
        assert_eq!((m.rows(), m.cols()), (0, 1));
    }

    #[test]
    fn smith_examples() {
        let (f, r) = smith_invariant_factors(&IntMatrix::from_rows(&[vec![1, -1]]));
        assert_eq!((f, r), (big(&[1]), 1));
        // gcd(2,3)=1, product 6: by hand, [[2,0],[0,3]] ~ diag(1,6)
        let (f, r) = smith_invariant_factors(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!((f, r), (big(&[1, 6]), 2));
        let (f, r) = smith_invariant_factors(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!((f, r), (vec![], 0));
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diagonal);
        assert_eq!(snf.factors, big(&[2, 6, 12]));
    }

    #[test]
    fn abelianization_examples() {
        let x = parse("gens x y\nrel x^2 y^-3\n");
        assert_eq!(
            *Abelianization::of(&x).invariants(),
            AbelianInvariants::new(1, vec![])
        );
        let orb = parse("gens x y\nrel x^2 y^-3\nrel x y^-1 x y^-1\n");
        assert_eq!(
            *Abelianization::of(&orb).invariants(),
            AbelianInvariants::new(0, big(&[2]))
        );
        let f = parse("gens a\n");
        assert_eq!(
            *Abelianization::of(&f).invariants(),
            AbelianInvariants::new(1, vec![])
        );
    }

    #[test]
    fn images_in_torus_orbifold() {
        // torus(2,3) orbifold, m = 4: meridian x y^-1
        let orb = parse("gens x y\nrel x^2 y^-3\nrel x Y x Y x Y x Y\nmeridian x y^-1\n");
        let abz = Abelianization::of(&orb);
        assert_eq!(*abz.invariants(), AbelianInvariants::new(0, big(&[4])));
        let mer = orb.meridian().unwrap();
        let x = Word::generator(0);
        assert_eq!(
            abz.cyclic_coordinate(&x, mer).unwrap(),
            Some(BigInt::from(3))
        );
        let x2 = Word::power(0, 2);
        assert_eq!(
            abz.cyclic_coordinate(&x2, mer).unwrap(),
            Some(BigInt::from(2))
        );
        assert!(abz.image(&Word::identity()).unwrap().is_zero());
    }

    #[test]
    fn invariants_display() {
        assert_eq!(AbelianInvariants::new(0, big(&[2])).to_string(), "Z/2");
        assert_eq!(AbelianInvariants::new(1, vec![]).to_string(), "Z");
        assert_eq!(
            AbelianInvariants::new(2, big(&[2, 6])).to_string(),
            "Z^2 + Z/2 + Z/6"
        );
        assert_eq!(AbelianInvariants::new(0, vec![]).to_string(), "0");
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = IntMatrix::from_rows(&[vec![1, -2, 3], vec![0, 4, -5]]);
        assert_eq!(m.to_string().parse::<IntMatrix>().unwrap(), m);
    }
}
