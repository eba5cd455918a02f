//! Span tables: for a word of length `n`, node `t` gets a bit matrix whose
//! row `i`, bit `j` says the factor `w[i..j]` lies in the value of `t`.

use super::program::{Op, Program};

pub(crate) struct SpanEval {
    pub n: usize,
    words: usize,
    stride: usize,
    /// `upper[i]`: bits `i..=n` of row `i`.
    upper: Vec<u64>,
    buf: Vec<u64>,
}

fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + b)
        })
    })
}

impl SpanEval {
    pub fn new(n: usize) -> SpanEval {
        let words = (n + 1).div_ceil(64);
        let stride = (n + 1) * words;
        let mut upper = vec![0u64; stride];
        for i in 0..=n {
            for j in i..=n {
                upper[i * words + j / 64] |= 1 << (j % 64);
            }
        }
        SpanEval { n, words, stride, upper, buf: Vec::new() }
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn set(&self, rows: &mut [u64], i: usize, j: usize) {
        rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn node(&self, k: u32) -> &[u64] {
        &self.buf[k as usize * self.stride..(k as usize + 1) * self.stride]
    }

    pub fn contains(&self, k: u32, i: usize, j: usize) -> bool {
        self.node(k)[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Evaluates every instruction; `leaves` holds one table per program
    /// variable. Panics on `Compl`, which callers rule out beforehand.
    pub fn run(&mut self, prog: &Program, leaves: &[u64]) {
        let (n, w, stride) = (self.n, self.words, self.stride);
        self.buf.clear();
        self.buf.resize(prog.ops.len() * stride, 0);
        for (k, op) in prog.ops.iter().enumerate() {
            let (done, rest) = self.buf.split_at_mut(k * stride);
            let out = &mut rest[..stride];
            let tab = |x: u32| &done[x as usize * stride..(x as usize + 1) * stride];
            match *op {
                Op::Var(x) => out.copy_from_slice(&leaves[x as usize * stride..(x as usize + 1) * stride]),
                Op::CoVar(x) => {
                    let src = &leaves[x as usize * stride..(x as usize + 1) * stride];
                    for i in 0..stride {
                        out[i] = !src[i] & self.upper[i];
                    }
                }
                Op::One => {
                    for i in 0..=n {
                        out[i * w + i / 64] |= 1 << (i % 64);
                    }
                }
                Op::Zero => {}
                Op::CoOne => {
                    out.copy_from_slice(&self.upper);
                    for i in 0..=n {
                        out[i * w + i / 64] &= !(1 << (i % 64));
                    }
                }
                Op::Plus(a, b) => {
                    let (ta, tb) = (tab(a), tab(b));
                    for i in 0..stride {
                        out[i] = ta[i] | tb[i];
                    }
                }
                Op::Seq(a, b) => {
                    let (ta, tb) = (tab(a), tab(b));
                    for i in 0..=n {
                        for k in bits(&ta[i * w..(i + 1) * w]) {
                            for c in 0..w {
                                out[i * w + c] |= tb[k * w + c];
                            }
                        }
                    }
                }
                Op::Star(a) => {
                    let ta = tab(a);
                    for i in (0..=n).rev() {
                        out[i * w + i / 64] |= 1 << (i % 64);
                        for k in bits(&ta[i * w..(i + 1) * w]) {
                            if k > i {
                                for c in 0..w {
                                    out[i * w + c] |= out[k * w + c];
                                }
                            }
                        }
                    }
                }
                Op::Compl(_) => panic!("span evaluation of a full complement"),
            }
        }
    }
}
