//! Versioned JSON documents for operators, complexes, chain maps, Sullivan
//! algebras and modules, and suite configurations. Operators and
//! polynomials are stored as strings in the operator grammar.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::amod::{AModule, CellRule, ModKey, ModuleElement};
use crate::dcomplex::{ChainMap, DMatrix, FreeDComplex};
use crate::dga::{AlgebraElement, Atom, SullivanAlgebra};
use crate::error::{Error, Result};
use crate::weyl::{parse_operator, Polynomial, WeylElement};

pub const FORMAT: &str = "dgdm-doc";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub version: u32,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "body", rename_all = "kebab-case")]
pub enum Body {
    Operator(OperatorDoc),
    Complex(ComplexDoc),
    Chainmap(ChainMapDoc),
    Algebra(AlgebraDoc),
    Amodule(AModuleDoc),
    SuiteConfig(SuiteConfig),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub nvars: usize,
    pub expr: String,
}

/// `differentials[n-1]` is the matrix of `d_n`, one row per basis vector of
/// `C_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub nvars: usize,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub maps: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coefficient: String,
    pub word: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: usize,
    pub differential: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub nvars: usize,
    pub generators: Vec<GeneratorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModTermDoc {
    pub cell: usize,
    pub d: Vec<u32>,
    pub coefficient: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub name: String,
    pub degree: usize,
    pub differential: Vec<ModTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AModuleDoc {
    pub algebra: AlgebraDoc,
    pub cells: Vec<CellDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub filter: Option<String>,
    pub instances: Option<usize>,
    pub truncation: Option<u32>,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Document {
            format: FORMAT.into(),
            version: VERSION,
            body,
        }
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        if doc.format != FORMAT || doc.version != VERSION {
            return Err(Error::Document(format!("unsupported format {} version {}", doc.format, doc.version)));
        }
        Ok(doc)
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::Operator(_) => "operator",
            Body::Complex(_) => "complex",
            Body::Chainmap(_) => "chainmap",
            Body::Algebra(_) => "algebra",
            Body::Amodule(_) => "amodule",
            Body::SuiteConfig(_) => "suite-config",
        }
    }

    pub fn operator(p: &WeylElement) -> Self {
        Document::new(Body::Operator(OperatorDoc {
            nvars: p.nvars(),
            expr: p.to_string(),
        }))
    }

    pub fn complex(c: &FreeDComplex) -> Self {
        Document::new(Body::Complex(ComplexDoc::from_complex(c)))
    }

    pub fn chain_map(f: &ChainMap) -> Self {
        Document::new(Body::Chainmap(ChainMapDoc {
            source: ComplexDoc::from_complex(f.source()),
            target: ComplexDoc::from_complex(f.target()),
            maps: (0..=f.top()).map(|n| matrix_doc(&f.component(n))).collect(),
        }))
    }

    pub fn algebra(a: &SullivanAlgebra) -> Self {
        Document::new(Body::Algebra(AlgebraDoc::from_algebra(a)))
    }

    pub fn amodule(m: &AModule) -> Result<Self> {
        Ok(Document::new(Body::Amodule(AModuleDoc::from_module(m)?)))
    }

    fn wrong(&self, want: &str) -> Error {
        Error::Document(format!("expected a {want} document, found {}", self.kind()))
    }

    pub fn to_operator(&self) -> Result<WeylElement> {
        match &self.body {
            Body::Operator(o) => parse_operator(&o.expr, o.nvars),
            _ => Err(self.wrong("operator")),
        }
    }

    pub fn to_complex(&self) -> Result<FreeDComplex> {
        match &self.body {
            Body::Complex(c) => c.to_complex(),
            _ => Err(self.wrong("complex")),
        }
    }

    pub fn to_chain_map(&self) -> Result<ChainMap> {
        match &self.body {
            Body::Chainmap(f) => {
                let src = f.source.to_complex()?;
                let tgt = f.target.to_complex()?;
                let maps = f
                    .maps
                    .iter()
                    .enumerate()
                    .map(|(n, m)| parse_matrix(m, src.nvars(), tgt.rank(n)))
                    .collect::<Result<Vec<_>>>()?;
                ChainMap::new(src, tgt, maps)
            }
            _ => Err(self.wrong("chainmap")),
        }
    }

    pub fn to_algebra(&self) -> Result<SullivanAlgebra> {
        match &self.body {
            Body::Algebra(a) => a.to_algebra(),
            _ => Err(self.wrong("algebra")),
        }
    }

    pub fn to_amodule(&self) -> Result<AModule> {
        match &self.body {
            Body::Amodule(m) => m.to_module(),
            _ => Err(self.wrong("amodule")),
        }
    }

    pub fn to_suite_config(&self) -> Result<SuiteConfig> {
        match &self.body {
            Body::SuiteConfig(s) => Ok(s.clone()),
            _ => Err(self.wrong("suite-config")),
        }
    }
}

fn matrix_doc(m: &DMatrix) -> Vec<Vec<String>> {
    m.rows()
        .iter()
        .map(|r| r.coords().iter().map(|p| p.to_string()).collect())
        .collect()
}

fn parse_matrix(rows: &[Vec<String>], nvars: usize, cols: usize) -> Result<DMatrix> {
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_operator(s, nvars)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    DMatrix::from_entries(nvars, cols, entries)
}

impl ComplexDoc {
    pub fn from_complex(c: &FreeDComplex) -> Self {
        ComplexDoc {
            nvars: c.nvars(),
            ranks: c.ranks().to_vec(),
            differentials: (1..=c.top()).map(|n| matrix_doc(&c.differential(n))).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<FreeDComplex> {
        if self.differentials.len() + 1 != self.ranks.len().max(1) {
            return Err(Error::Document(format!(
                "{} ranks need {} differentials, found {}",
                self.ranks.len(),
                self.ranks.len().saturating_sub(1),
                self.differentials.len()
            )));
        }
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(m, self.nvars, self.ranks[i]))
            .collect::<Result<Vec<_>>>()?;
        FreeDComplex::new(self.nvars, self.ranks.clone(), diffs)
    }
}

fn poly(s: &str, nvars: usize) -> Result<Polynomial> {
    parse_operator(s, nvars)?
        .to_polynomial()
        .ok_or_else(|| Error::Document(format!("coefficient {s} is not a polynomial")))
}

fn element_doc(u: &AlgebraElement) -> Vec<TermDoc> {
    u.terms()
        .map(|(w, p)| TermDoc {
            coefficient: p.to_string(),
            word: w.clone(),
        })
        .collect()
}

fn element_from_doc(terms: &[TermDoc], nvars: usize) -> Result<AlgebraElement> {
    let mut u = AlgebraElement::zero(nvars);
    for t in terms {
        let mut w = t.word.clone();
        w.sort();
        u.add_word(w, &poly(&t.coefficient, nvars)?);
    }
    Ok(u)
}

impl AlgebraDoc {
    pub fn from_algebra(a: &SullivanAlgebra) -> Self {
        AlgebraDoc {
            nvars: a.nvars(),
            generators: a
                .generators()
                .iter()
                .enumerate()
                .map(|(j, g)| GeneratorDoc {
                    name: g.name.clone(),
                    degree: g.degree,
                    differential: element_doc(a.differential_of_generator(j)),
                })
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<SullivanAlgebra> {
        let mut a = SullivanAlgebra::ground(self.nvars);
        for g in &self.generators {
            let dg = element_from_doc(&g.differential, self.nvars)?;
            // re-normalize through the algebra so signs and squares are canonical
            let dg = a.multiply(&AlgebraElement::one(self.nvars), &dg)?;
            a = a.extend(&g.name, g.degree, dg)?;
        }
        Ok(a)
    }
}

impl AModuleDoc {
    pub fn from_module(m: &AModule) -> Result<Self> {
        let cells = m
            .cells()
            .iter()
            .map(|c| match &c.rule {
                CellRule::Assigned(v) if c.arity == 1 => Ok(CellDoc {
                    name: c.name.clone(),
                    degree: c.degree,
                    differential: v
                        .terms()
                        .map(|(k, a)| ModTermDoc {
                            cell: k.cell,
                            d: k.d.clone(),
                            coefficient: element_doc(a),
                        })
                        .collect(),
                }),
                _ => Err(Error::Document("only Sullivan modules with free cells are serializable".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AModuleDoc {
            algebra: AlgebraDoc::from_algebra(m.algebra()),
            cells,
        })
    }

    pub fn to_module(&self) -> Result<AModule> {
        let a = Arc::new(self.algebra.to_algebra()?);
        let nvars = a.nvars();
        let mut m = AModule::zero(&a);
        for c in &self.cells {
            let mut v = ModuleElement::zero();
            for t in &c.differential {
                let coeff = element_from_doc(&t.coefficient, nvars)?;
                let coeff = a.multiply(&AlgebraElement::one(nvars), &coeff)?;
                v.add_term(
                    ModKey {
                        cell: t.cell,
                        d: t.d.clone(),
                    },
                    &coeff,
                );
            }
            m = m.extend_differential(&c.name, c.degree, v)?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_round_trip() {
        let p = parse_operator("3/2 * x1^2 * d1^3 - d1*x1", 1).unwrap();
        let doc = Document::operator(&p);
        let back = Document::parse(&doc.to_text()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_operator().unwrap(), p);
    }

    #[test]
    fn complex_d_squared_rejected() {
        let doc = ComplexDoc {
            nvars: 1,
            ranks: vec![1, 1, 1],
            differentials: vec![vec![vec!["1".into()]], vec![vec!["d1".into()]]],
        };
        assert!(matches!(doc.to_complex(), Err(Error::NotAComplex { degree: 2 })));
    }

    #[test]
    fn disk_document() {
        let d2 = FreeDComplex::disk(1, 2).unwrap();
        let doc = Document::complex(&d2);
        assert_eq!(doc.kind(), "complex");
        assert_eq!(Document::parse(&doc.to_text()).unwrap().to_complex().unwrap(), d2);
        assert!(doc.to_algebra().is_err());
    }

    #[test]
    fn version_checked() {
        let text = Document::operator(&WeylElement::one(1)).to_text().replace("\"version\": 1", "\"version\": 9");
        assert!(matches!(Document::parse(&text), Err(Error::Document(_))));
    }
}
