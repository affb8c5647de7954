use crate::exactla::RatMatrix;
use crate::rat::Q;

/// A matrix whose entries are linear forms in `p` parameters.
#[derive(Clone, Debug)]
pub(super) struct Forms {
    pub rows: usize,
    pub cols: usize,
    pub p: usize,
    data: Vec<Q>,
}

impl Forms {
    pub fn zeros(rows: usize, cols: usize, p: usize) -> Self {
        Forms { rows, cols, p, data: vec![Q::zero(); rows * cols * p] }
    }

    pub fn entry(&self, r: usize, c: usize) -> &[Q] {
        let s = (r * self.cols + c) * self.p;
        &self.data[s..s + self.p]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut [Q] {
        let s = (r * self.cols + c) * self.p;
        &mut self.data[s..s + self.p]
    }

    pub fn pad(&mut self, p: usize) {
        if p == self.p {
            return;
        }
        let mut data = Vec::with_capacity(self.rows * self.cols * p);
        for chunk in self.data.chunks(self.p.max(1)).take(self.rows * self.cols) {
            data.extend_from_slice(&chunk[..self.p]);
            data.extend(std::iter::repeat_n(Q::zero(), p - self.p));
        }
        if self.p == 0 {
            data = vec![Q::zero(); self.rows * self.cols * p];
        }
        self.data = data;
        self.p = p;
    }

    /// `a * self` for a numeric matrix `a`.
    pub fn left_mul(&self, a: &RatMatrix) -> Forms {
        let mut out = Forms::zeros(a.rows(), self.cols, self.p);
        for r in 0..a.rows() {
            for k in 0..a.cols() {
                let c = a.get(r, k);
                if c.is_zero() {
                    continue;
                }
                for col in 0..self.cols {
                    let src = self.entry(k, col).to_vec();
                    let dst = out.entry_mut(r, col);
                    for (d, s) in dst.iter_mut().zip(&src) {
                        if !s.is_zero() {
                            *d += &(c * s);
                        }
                    }
                }
            }
        }
        out
    }

    /// `self * b` for a numeric matrix `b`.
    pub fn right_mul(&self, b: &RatMatrix) -> Forms {
        let mut out = Forms::zeros(self.rows, b.cols(), self.p);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let src = self.entry(r, k).to_vec();
                if src.iter().all(Q::is_zero) {
                    continue;
                }
                for col in 0..b.cols() {
                    let c = b.get(k, col);
                    if c.is_zero() {
                        continue;
                    }
                    let dst = out.entry_mut(r, col);
                    for (d, s) in dst.iter_mut().zip(&src) {
                        if !s.is_zero() {
                            *d += &(c * s);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &Forms) -> Forms {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Forms { data, ..*self }
    }

    /// Substitute `params = k * new_params`.
    pub fn substitute(&mut self, k: &RatMatrix) {
        let np = k.cols();
        let mut data = vec![Q::zero(); self.rows * self.cols * np];
        for e in 0..self.rows * self.cols {
            let src = &self.data[e * self.p..(e + 1) * self.p];
            let dst = &mut data[e * np..(e + 1) * np];
            for (i, s) in src.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                for (j, d) in dst.iter_mut().enumerate() {
                    let c = k.get(i, j);
                    if !c.is_zero() {
                        *d += &(s * c);
                    }
                }
            }
        }
        self.data = data;
        self.p = np;
    }

    pub fn eval_unit(&self, k: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.entry(r, c)[k].clone());
            }
        }
        m
    }

    pub fn push_rows(&self, out: &mut Vec<Vec<Q>>) {
        for e in self.data.chunks(self.p.max(1)) {
            if self.p > 0 && e.iter().any(|x| !x.is_zero()) {
                out.push(e.to_vec());
            }
        }
    }
}
