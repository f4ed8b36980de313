use super::poly::Poly;
use crate::error::{Error, Result};

/// Square matrix of polynomials with integer row/column labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    labels: Vec<i64>,
    entries: Vec<Vec<Poly>>,
}

/// Matrices up to this size use Laplace expansion.
const EXPANSION_MAX: usize = 4;

impl PolyMatrix {
    pub fn new(labels: Vec<i64>, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let rows = entries.len();
        for r in &entries {
            if r.len() != rows {
                return Err(Error::NotSquare { rows, cols: r.len() });
            }
        }
        if labels.len() != rows {
            return Err(Error::NotSquare { rows, cols: labels.len() });
        }
        Ok(PolyMatrix { labels, entries })
    }

    /// Build from a labelled index set and an entry function.
    pub fn from_fn<F: FnMut(i64, i64) -> Poly>(labels: &[i64], mut f: F) -> Self {
        let entries = labels
            .iter()
            .map(|&i| labels.iter().map(|&j| f(i, j)).collect())
            .collect();
        PolyMatrix { labels: labels.to_vec(), entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r][c]
    }

    /// Exact determinant; the empty matrix has determinant 1.
    pub fn det(&self) -> Poly {
        let n = self.size();
        if n == 0 {
            return Poly::one();
        }
        let zeros = self.entries.iter().flatten().filter(|p| p.is_zero()).count();
        if n <= EXPANSION_MAX || zeros * 2 > n * n {
            laplace(&self.entries)
        } else {
            bareiss(self.entries.clone())
        }
    }

    /// Determinant by cofactor expansion regardless of size.
    pub fn det_expansion(&self) -> Poly {
        if self.size() == 0 {
            return Poly::one();
        }
        laplace(&self.entries)
    }

    /// Determinant by fraction-free elimination regardless of size.
    pub fn det_bareiss(&self) -> Poly {
        if self.size() == 0 {
            return Poly::one();
        }
        bareiss(self.entries.clone())
    }
}

fn laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        1 => return m[0][0].clone(),
        2 => return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {}
    }
    // Expand along the row with the most zeros.
    let row = (0..n)
        .max_by_key(|&r| m[r].iter().filter(|p| p.is_zero()).count())
        .unwrap_or(0);
    let mut acc = Poly::zero();
    for col in 0..n {
        if m[row][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (0..n)
            .filter(|&r| r != row)
            .map(|r| (0..n).filter(|&c| c != col).map(|c| m[r][c].clone()).collect())
            .collect();
        let term = &m[row][col] * &laplace(&minor);
        if (row + col) % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

fn bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{qi, Var};

    #[test]
    fn small_cases() {
        let z = Poly::var(Var::Z);
        let w = Poly::var(Var::W);
        let one = PolyMatrix::new(vec![1], vec![vec![z.clone()]]).unwrap();
        assert_eq!(one.det(), z);
        let id = PolyMatrix::from_fn(&[1, 2], |i, j| Poly::int((i == j) as i64));
        assert_eq!(id.det(), Poly::one());
        let m = PolyMatrix::new(vec![1, 2], vec![vec![z.clone(), w.clone()], vec![w.clone(), z.clone()]]).unwrap();
        assert_eq!(m.det(), z.pow(2) - w.pow(2));
        let empty = PolyMatrix::new(vec![], vec![]).unwrap();
        assert_eq!(empty.det(), Poly::one());
    }

    #[test]
    fn rejects_ragged() {
        assert!(PolyMatrix::new(vec![1, 2], vec![vec![Poly::one()], vec![Poly::one()]]).is_err());
    }

    #[test]
    fn bareiss_matches_expansion_with_pivoting() {
        let z = Poly::var(Var::Z);
        let a = Poly::var(Var::A);
        let m = PolyMatrix::from_fn(&[1, 2, 3, 4, 5], |i, j| {
            if i == j && i < 3 {
                Poly::zero()
            } else {
                &z.scale(&qi(i * j)) + &a.scale(&qi(i - j)) + &Poly::int((i + 2 * j) % 3)
            }
        });
        assert_eq!(m.det_bareiss(), m.det_expansion());
    }
}
