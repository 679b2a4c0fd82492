//! JSON encodings of grid functions, paths and functionals.
//!
//! Complex numbers are `[re, im]` pairs. Grid values run in ascending index
//! order; dense functional values run in rank order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GridFunction, LatticeKind, LatticeSpec};
use crate::level2::{Builtin, Functional, Repr};
use crate::pathspace::{PathFunction, PathSpace, Variant, DEFAULT_GUARD};
use crate::C64;

type Pair = [f64; 2];

fn to_pairs(values: &[C64]) -> Vec<Pair> {
    values.iter().map(|c| [c.re, c.im]).collect()
}

fn from_pairs(pairs: &[Pair]) -> Vec<C64> {
    pairs.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn param(value: u32, name: &'static str) -> Result<u32> {
    if value == 0 {
        return Err(Error::MissingParameter(name));
    }
    Ok(value)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridJson {
    kind: String,
    #[serde(rename = "H")]
    h: u32,
    values: Vec<Pair>,
}

pub fn grid_to_json(phi: &GridFunction) -> String {
    render(&GridJson {
        kind: LatticeKind::Level1.to_string(),
        h: phi.lattice().h(),
        values: to_pairs(phi.values()),
    })
}

pub fn grid_from_json(text: &str) -> Result<GridFunction> {
    let g: GridJson = parse(text)?;
    if g.kind != LatticeKind::Level1.to_string() {
        return Err(Error::Invalid(format!(
            "expected kind \"level1\", found {:?}",
            g.kind
        )));
    }
    let lattice = LatticeSpec::level1(param(g.h, "H")?)?;
    GridFunction::new(lattice, from_pairs(&g.values))
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceJson {
    #[serde(rename = "H")]
    h: u32,
    #[serde(rename = "Hp")]
    hp: u32,
    variant: String,
}

impl SpaceJson {
    fn of(space: &PathSpace) -> Self {
        Self {
            h: space.h(),
            hp: space.hp(),
            variant: space.variant().to_string(),
        }
    }

    fn build(&self) -> Result<PathSpace> {
        let variant: Variant = self.variant.parse()?;
        PathSpace::new(variant, param(self.h, "H")?, param(self.hp, "Hp")?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathJson {
    #[serde(rename = "H")]
    h: u32,
    #[serde(rename = "Hp")]
    hp: u32,
    variant: String,
    digits: Vec<i64>,
}

pub fn path_to_json(a: &PathFunction) -> String {
    let s = SpaceJson::of(a.space());
    render(&PathJson {
        h: s.h,
        hp: s.hp,
        variant: s.variant,
        digits: a.digits().to_vec(),
    })
}

/// Digits are wrapped into the codomain on load.
pub fn path_from_json(text: &str) -> Result<PathFunction> {
    let p: PathJson = parse(text)?;
    let space = SpaceJson {
        h: p.h,
        hp: p.hp,
        variant: p.variant,
    }
    .build()?;
    PathFunction::new(space, p.digits)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FunctionalJson {
    Product {
        space: SpaceJson,
        sites: Vec<Vec<Pair>>,
    },
    Builtin {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<SpaceJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        l: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<f64>,
    },
    Dense {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        space: Option<SpaceJson>,
        values: Vec<Pair>,
    },
}

pub fn functional_to_json(f: &Functional) -> String {
    let space = SpaceJson::of(f.space());
    let doc = match f.repr() {
        Repr::Dense(values) => FunctionalJson::Dense {
            space: Some(space),
            values: to_pairs(values),
        },
        Repr::Product(sites) => FunctionalJson::Product {
            space,
            sites: sites.iter().map(|s| to_pairs(s)).collect(),
        },
        Repr::Builtin(b) => {
            let (l, beta) = match *b {
                Builtin::DeltaPow(l) => (Some(l), None),
                Builtin::ShiftedGaussian(beta) => (None, Some(beta)),
                _ => (None, None),
            };
            FunctionalJson::Builtin {
                name: b.name().to_string(),
                space: Some(space),
                l,
                beta,
            }
        }
    };
    render(&doc)
}

fn builtin_named(name: &str, l: Option<f64>, beta: Option<f64>) -> Result<Builtin> {
    let need = |v: Option<f64>, field: &'static str| v.ok_or(Error::MissingParameter(field));
    let unexpected = |v: Option<f64>, field: &'static str| match v {
        Some(_) => Err(Error::UnexpectedParameter(field)),
        None => Ok(()),
    };
    let b = match name {
        "one" => Builtin::One,
        "delta" => Builtin::Delta,
        "delta_pow" => Builtin::DeltaPow(need(l, "l")?),
        "chirp" => Builtin::Chirp,
        "gaussian" => Builtin::Gaussian,
        "shifted_gaussian" => Builtin::ShiftedGaussian(need(beta, "beta")?),
        other => {
            return Err(Error::Invalid(format!(
                "unknown builtin functional {other:?}"
            )))
        }
    };
    if !matches!(b, Builtin::DeltaPow(_)) {
        unexpected(l, "l")?;
    }
    if !matches!(b, Builtin::ShiftedGaussian(_)) {
        unexpected(beta, "beta")?;
    }
    Ok(b)
}

/// Parses a functional. Documents without a `space` use `fallback`.
pub fn functional_from_json(text: &str, fallback: Option<PathSpace>) -> Result<Functional> {
    functional_from_json_guarded(text, fallback, DEFAULT_GUARD)
}

/// As [`functional_from_json`], with spaces read from the document given
/// the enumeration guard `guard`.
pub fn functional_from_json_guarded(
    text: &str,
    fallback: Option<PathSpace>,
    guard: u64,
) -> Result<Functional> {
    let doc: FunctionalJson = parse(text)?;
    let resolve = |s: Option<SpaceJson>| -> Result<PathSpace> {
        match (s, fallback) {
            (Some(s), _) => Ok(s.build()?.with_guard(guard)),
            (None, Some(space)) => Ok(space),
            (None, None) => Err(Error::MissingParameter("space")),
        }
    };
    match doc {
        FunctionalJson::Product { space, sites } => Functional::product(
            space.build()?.with_guard(guard),
            sites.iter().map(|s| from_pairs(s)).collect(),
        ),
        FunctionalJson::Builtin {
            name,
            space,
            l,
            beta,
        } => Functional::builtin(resolve(space)?, builtin_named(&name, l, beta)?),
        FunctionalJson::Dense { space, values } => {
            Functional::dense(resolve(space)?, from_pairs(&values))
        }
    }
}
