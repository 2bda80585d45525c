use num::Zero;
use serde::Deserialize;

use crate::complex::{GaussianRational, GaussianRationalMatrix};
use crate::correlation::{json_error, ordered_json, parse_entry, Correlation};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::set::FiniteSet;

/// A projection-valued measure `{Π^x_y}_y` for each input `x` on `ℂ^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumModel {
    input: FiniteSet,
    output: FiniteSet,
    dim: usize,
    pvm: Vec<Vec<GaussianRationalMatrix>>,
}

impl QuantumModel {
    /// Checks shapes only; the PVM conditions are checked by [`from_quantum_model`].
    pub fn new(
        input: FiniteSet,
        output: FiniteSet,
        dim: usize,
        pvm: Vec<Vec<GaussianRationalMatrix>>,
    ) -> Result<Self> {
        let shape_err = |found: String| Error::ShapeMismatch {
            expected: format!(
                "{} measurements of {} projections of dimension {dim}",
                input.size(),
                output.size()
            ),
            found,
        };
        if dim == 0 {
            return Err(shape_err("dimension 0".into()));
        }
        if pvm.len() != input.size() {
            return Err(shape_err(format!("{} measurements", pvm.len())));
        }
        for ops in &pvm {
            if ops.len() != output.size() {
                return Err(shape_err(format!("{} projections", ops.len())));
            }
            if let Some(m) = ops.iter().find(|m| m.dim() != dim) {
                return Err(shape_err(format!("dimension {}", m.dim())));
            }
        }
        Ok(QuantumModel {
            input,
            output,
            dim,
            pvm,
        })
    }

    pub fn input_set(&self) -> &FiniteSet {
        &self.input
    }

    pub fn output_set(&self) -> &FiniteSet {
        &self.output
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Π^x_y`.
    pub fn projection(&self, x: usize, y: usize) -> &GaussianRationalMatrix {
        &self.pvm[x][y]
    }

    /// Hermitian, then idempotent, then completeness, in input order.
    pub fn validate(&self) -> Result<()> {
        for (x, ops) in self.pvm.iter().enumerate() {
            let names = |y: usize| (self.input.label(x).to_string(), self.output.label(y).to_string());
            for (y, m) in ops.iter().enumerate() {
                if !m.is_hermitian() {
                    let (x, y) = names(y);
                    return Err(Error::NotHermitian { x, y });
                }
                if m.mul(m) != *m {
                    let (x, y) = names(y);
                    return Err(Error::NotIdempotent { x, y });
                }
            }
            let total = ops
                .iter()
                .fold(GaussianRationalMatrix::zeros(self.dim), |acc, m| acc.add(m));
            if total != GaussianRationalMatrix::identity(self.dim) {
                return Err(Error::NotComplete(self.input.label(x).to_string()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let matrix = |m: &GaussianRationalMatrix| {
            serde_json::Value::from(
                m.rows()
                    .iter()
                    .map(|row| {
                        serde_json::Value::from(
                            row.iter()
                                .map(|z| vec![format_rational(&z.re), format_rational(&z.im)])
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect::<Vec<_>>(),
            )
        };
        let pvm: serde_json::Map<String, serde_json::Value> = self
            .pvm
            .iter()
            .enumerate()
            .map(|(x, ops)| {
                (
                    self.input.label(x).to_string(),
                    serde_json::Value::from(ops.iter().map(matrix).collect::<Vec<_>>()),
                )
            })
            .collect();
        ordered_json(&[
            ("input_set", serde_json::json!(self.input.labels())),
            ("output_set", serde_json::json!(self.output.labels())),
            ("d", self.dim.into()),
            ("pvm", serde_json::Value::Object(pvm)),
        ])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct File {
            input_set: Vec<String>,
            output_set: Vec<String>,
            d: usize,
            pvm: serde_json::Map<String, serde_json::Value>,
        }
        let file: File = serde_json::from_str(text).map_err(json_error)?;
        let input = FiniteSet::new(file.input_set)?;
        let output = FiniteSet::new(file.output_set)?;
        let mut pvm = Vec::with_capacity(input.size());
        for x in input.labels() {
            let raw = file.pvm.get(x).ok_or_else(|| Error::Parse {
                location: format!("pvm.{x}"),
                message: "missing measurement for input".into(),
            })?;
            let ops: Vec<Vec<Vec<[String; 2]>>> =
                serde_json::from_value(raw.clone()).map_err(|e| Error::Parse {
                    location: format!("pvm.{x}"),
                    message: e.to_string(),
                })?;
            let mut mats = Vec::with_capacity(ops.len());
            for (y, rows) in ops.iter().enumerate() {
                let entries = rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, [re, im])| {
                                let loc = format!("pvm.{x}[{y}][{i}][{j}]");
                                Ok(GaussianRational::new(parse_entry(re, &loc)?, parse_entry(im, &loc)?))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = GaussianRationalMatrix::from_rows(entries).ok_or_else(|| Error::ShapeMismatch {
                    expected: "square matrix".into(),
                    found: format!("pvm.{x}[{y}]"),
                })?;
                mats.push(m);
            }
            pvm.push(mats);
        }
        Self::new(input, output, file.d, pvm)
    }
}

/// `p(y_A, y_B | x_A, x_B) = tr(Π^{x_A}_{y_A} Π^{x_B}_{y_B}) / d` after exact PVM validation.
pub fn from_quantum_model(model: &QuantumModel) -> Result<Correlation> {
    model.validate()?;
    let (input, output) = (&model.input, &model.output);
    let d = Rational::from_integer(model.dim.into());
    Correlation::from_columns(input.clone(), output.clone(), |xa, xb| {
        let mut col = Vec::with_capacity(output.squared_size());
        for ya in 0..output.size() {
            for yb in 0..output.size() {
                let t = model.pvm[xa][ya].trace_of_product(&model.pvm[xb][yb]);
                assert!(t.im.is_zero(), "trace of a product of projections is real");
                col.push(t.re / &d);
            }
        }
        col
    })
}

/// `Ē^x_z = Σ_y Π^x_y ⊗ M^y_z` on `ℂ^{d₁} ⊗ ℂ^{d₂}`; realizes the composition `q ∘ p`.
pub fn product_model(q: &QuantumModel, p: &QuantumModel) -> Result<QuantumModel> {
    if p.output != q.input {
        return Err(Error::SetMismatch(format!(
            "first model outputs {} but second takes {}",
            p.output, q.input
        )));
    }
    let dim = p.dim * q.dim;
    let pvm = (0..p.input.size())
        .map(|x| {
            (0..q.output.size())
                .map(|z| {
                    (0..p.output.size()).fold(GaussianRationalMatrix::zeros(dim), |acc, y| {
                        acc.add(&p.pvm[x][y].kron(&q.pvm[y][z]))
                    })
                })
                .collect()
        })
        .collect();
    QuantumModel::new(p.input.clone(), q.output.clone(), dim, pvm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{from_classical_model, ClassicalModel};
    use crate::rational::{int, rat};

    fn real(rows: Vec<Vec<Rational>>) -> GaussianRationalMatrix {
        GaussianRationalMatrix::from_real(rows).unwrap()
    }

    fn computational() -> Vec<GaussianRationalMatrix> {
        vec![
            real(vec![vec![int(1), int(0)], vec![int(0), int(0)]]),
            real(vec![vec![int(0), int(0)], vec![int(0), int(1)]]),
        ]
    }

    fn hadamard() -> Vec<GaussianRationalMatrix> {
        vec![
            real(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]]),
            real(vec![vec![rat(1, 2), rat(-1, 2)], vec![rat(-1, 2), rat(1, 2)]]),
        ]
    }

    fn bin() -> FiniteSet {
        FiniteSet::binary()
    }

    #[test]
    fn mutually_unbiased_bases() {
        let m = QuantumModel::new(bin(), bin(), 2, vec![computational(), hadamard()]).unwrap();
        let p = from_quantum_model(&m).unwrap();
        assert_eq!(p.column(1), vec![rat(1, 4); 4]);
        assert_eq!(p.column(0), vec![rat(1, 2), int(0), int(0), rat(1, 2)]);
    }

    #[test]
    fn common_measurement_is_classical() {
        let m = QuantumModel::new(bin(), bin(), 2, vec![computational(), computational()]).unwrap();
        let c = ClassicalModel::new(bin(), bin(), [(vec![0, 0], rat(1, 2)), (vec![1, 1], rat(1, 2))]).unwrap();
        assert_eq!(from_quantum_model(&m).unwrap(), from_classical_model(&c).unwrap());
    }

    #[test]
    fn invalid_families() {
        let incomplete = vec![hadamard()[0].clone(), computational()[0].clone()];
        let m = QuantumModel::new(bin(), bin(), 2, vec![incomplete, computational()]).unwrap();
        assert_eq!(from_quantum_model(&m), Err(Error::NotComplete("0".into())));

        let skew = GaussianRationalMatrix::from_rows(vec![
            vec![GaussianRational::zero(), GaussianRational::new(int(0), int(1))],
            vec![GaussianRational::new(int(0), int(1)), GaussianRational::zero()],
        ])
        .unwrap();
        let m = QuantumModel::new(bin(), bin(), 2, vec![computational(), vec![skew, computational()[1].clone()]])
            .unwrap();
        assert_eq!(
            from_quantum_model(&m),
            Err(Error::NotHermitian { x: "1".into(), y: "0".into() })
        );

        let twice = real(vec![vec![int(2), int(0)], vec![int(0), int(0)]]);
        let m = QuantumModel::new(bin(), bin(), 2, vec![vec![twice, computational()[1].clone()], computational()])
            .unwrap();
        assert_eq!(
            from_quantum_model(&m),
            Err(Error::NotIdempotent { x: "0".into(), y: "0".into() })
        );
        assert!(QuantumModel::new(bin(), bin(), 3, vec![computational(), computational()]).is_err());
    }

    #[test]
    fn complex_projection() {
        // Projection onto (1, i)/√2.
        let half = |re: i64, im: i64| GaussianRational::new(rat(re, 2), rat(im, 2));
        let plus = GaussianRationalMatrix::from_rows(vec![vec![half(1, 0), half(0, -1)], vec![half(0, 1), half(1, 0)]])
            .unwrap();
        let minus = GaussianRationalMatrix::identity(2).sub(&plus);
        let m = QuantumModel::new(bin(), bin(), 2, vec![computational(), vec![plus, minus]]).unwrap();
        let p = from_quantum_model(&m).unwrap();
        assert_eq!(p.column(1), vec![rat(1, 4); 4]);
        assert_eq!(QuantumModel::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn product_is_a_pvm() {
        let a = QuantumModel::new(bin(), bin(), 2, vec![computational(), hadamard()]).unwrap();
        let prod = product_model(&a, &a).unwrap();
        assert_eq!(prod.dim(), 4);
        prod.validate().unwrap();
    }

    #[test]
    fn json_layout() {
        let m = QuantumModel::new(bin(), bin(), 2, vec![computational(), hadamard()]).unwrap();
        let text = m.to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["d"], 2);
        assert_eq!(v["pvm"]["1"][0][0][1], serde_json::json!(["1/2", "0"]));
        assert_eq!(QuantumModel::from_json(&text).unwrap(), m);
    }
}
