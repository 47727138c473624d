//! Ideals of null morphisms in the three supported regimes.
//!
//! Every regime is determined by its null class `K_X` in each algebra `X`:
//! a homomorphism is null when its image lies in the null class of its
//! codomain, and the N-kernel of `f: X → Y` is the preimage of `K_Y`.
//!
//! | context        | `K_X`                                  |
//! |----------------|----------------------------------------|
//! | `total`        | all of `X`                             |
//! | `pointed:<b>`  | `{b}`, a one-element subalgebra        |
//! | `proto`        | the subalgebra generated by constants  |

use std::fmt;
use std::str::FromStr;

use crate::algebra::{FiniteAlgebra, Homomorphism, Subset};
use crate::error::{Error, Result};

/// Selects the base point of a pointed context in a particular algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasePoint {
    Element(usize),
    Constant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealContext {
    Total,
    Pointed(BasePoint),
    ProtoPointed,
}

impl IdealContext {
    pub fn pointed_at(element: usize) -> Self {
        IdealContext::Pointed(BasePoint::Element(element))
    }

    /// Resolves the base point of a pointed context in `a` and checks it is fixed
    /// by every operation applied diagonally.
    pub fn base_point(&self, a: &FiniteAlgebra) -> Result<Option<usize>> {
        let IdealContext::Pointed(base) = self else {
            return Ok(None);
        };
        let b = match base {
            BasePoint::Element(e) => {
                a.check_element(*e)
                    .map_err(|_| Error::InvalidContext(format!("no element {e} in `{}`", a.name())))?;
                *e
            }
            BasePoint::Constant(name) => a.constant_named(name).ok_or_else(|| {
                Error::InvalidContext(format!("`{}` has no constant `{name}`", a.name()))
            })?,
        };
        for (s, sym) in a.signature().symbols().iter().enumerate() {
            let diagonal = vec![b; sym.arity];
            if a.apply(s, &diagonal) != b {
                return Err(Error::InvalidContext(format!(
                    "{{{b}}} is not a subalgebra of `{}`: `{}` moves it",
                    a.name(),
                    sym.name
                )));
            }
        }
        Ok(Some(b))
    }

    pub fn validate(&self, a: &FiniteAlgebra) -> Result<()> {
        self.base_point(a)?;
        if *self == IdealContext::ProtoPointed && !a.signature().has_constants() {
            return Err(Error::InvalidContext(format!(
                "proto-pointed context needs a constant in `{}`",
                a.name()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for IdealContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealContext::Total => write!(f, "total"),
            IdealContext::Pointed(BasePoint::Element(e)) => write!(f, "pointed:{e}"),
            IdealContext::Pointed(BasePoint::Constant(c)) => write!(f, "pointed:{c}"),
            IdealContext::ProtoPointed => write!(f, "proto"),
        }
    }
}

impl FromStr for IdealContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(IdealContext::Total),
            "proto" => Ok(IdealContext::ProtoPointed),
            _ => {
                let base = s
                    .strip_prefix("pointed:")
                    .filter(|b| !b.is_empty())
                    .ok_or_else(|| {
                        Error::InvalidContext(format!(
                            "`{s}`: expected `total`, `pointed:<element|constant>` or `proto`"
                        ))
                    })?;
                if let Ok(e) = base.parse::<usize>() {
                    Ok(IdealContext::pointed_at(e))
                } else if base.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    Ok(IdealContext::Pointed(BasePoint::Constant(base.to_string())))
                } else {
                    Err(Error::InvalidContext(format!("`{base}` is not an element or constant")))
                }
            }
        }
    }
}

/// The null class `K_X` of an algebra: the N-kernel of its identity.
pub type NullClass = Subset;

pub fn null_class(ctx: &IdealContext, a: &FiniteAlgebra) -> Result<NullClass> {
    ctx.validate(a)?;
    Ok(match ctx {
        IdealContext::Total => Subset::full(a.size()),
        IdealContext::Pointed(_) => {
            let b = ctx.base_point(a)?.expect("pointed context has a base");
            Subset::from_elements(a.size(), [b])?
        }
        IdealContext::ProtoPointed => a.constants_subalgebra().clone(),
    })
}

pub fn is_null_morphism(ctx: &IdealContext, f: &Homomorphism) -> Result<bool> {
    let k = null_class(ctx, f.codomain())?;
    Ok(f.image().is_subset(&k))
}

/// Largest subset of the domain that `f` sends into the codomain's null class.
pub fn n_kernel(ctx: &IdealContext, f: &Homomorphism) -> Result<Subset> {
    let k = null_class(ctx, f.codomain())?;
    Ok(f.preimage(&k))
}

/// Whether `f` maps the domain's null class onto the codomain's.
pub fn is_saturating(ctx: &IdealContext, f: &Homomorphism) -> Result<bool> {
    let source = null_class(ctx, f.domain())?;
    let target = null_class(ctx, f.codomain())?;
    let mut hit = vec![false; f.codomain().size()];
    for &x in source.elements() {
        hit[f.apply(x)] = true;
    }
    Ok(target.elements().iter().all(|&y| hit[y]))
}
