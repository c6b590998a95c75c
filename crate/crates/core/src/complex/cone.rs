use crate::error::Error;
use crate::matrix::RMatrix;

use super::{is_null_homotopic, ChainMap2, TwoPeriodicComplex};

/// Mapping cone of `f: X -> Y` together with the canonical maps
/// `u: Y -> C(f)` and `v: C(f) -> X[1]`.
///
/// `C^0 = X^1 ⊕ Y^0`, `C^1 = X^0 ⊕ Y^1`, with
/// `d0 = [[-d1X, 0], [-f1, d0Y]]` and `d1 = [[-d0X, 0], [-f0, d1Y]]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: TwoPeriodicComplex,
    pub u: ChainMap2,
    pub v: ChainMap2,
}

pub fn cone(f: &ChainMap2) -> Result<Cone, Error> {
    f.validate()?;
    let (x, y) = (f.src(), f.dst());
    let field = x.field();
    let (x0, x1) = x.ranks();
    let (y0, y1) = y.ranks();

    let d0 = RMatrix::block2(
        &x.d1().neg(),
        &RMatrix::zeros(field, x0, y0),
        &f.f1().neg(),
        y.d0(),
    );
    let d1 = RMatrix::block2(
        &x.d0().neg(),
        &RMatrix::zeros(field, x1, y1),
        &f.f0().neg(),
        y.d1(),
    );
    let c = TwoPeriodicComplex::new(d0, d1)?;

    let inject =
        |xr: usize, yr: usize| RMatrix::zeros(field, xr, yr).vstack(&RMatrix::identity(field, yr));
    let project = |xr: usize, yr: usize| {
        RMatrix::identity(field, xr)
            .neg()
            .hstack(&RMatrix::zeros(field, xr, yr))
    };
    let u = ChainMap2::new(y.clone(), c.clone(), inject(x1, y0), inject(x0, y1))?;
    let v = ChainMap2::new(c.clone(), x.shift(), project(x1, y0), project(x0, y1))?;
    Ok(Cone { complex: c, u, v })
}

/// A candidate triangle `N -f-> E -g-> M -h-> N[1]`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub f: ChainMap2,
    pub g: ChainMap2,
    pub h: ChainMap2,
}

impl Triangle {
    pub fn new(f: ChainMap2, g: ChainMap2, h: ChainMap2) -> Result<Self, Error> {
        if f.dst() != g.src() || g.dst() != h.src() || h.dst() != &f.src().shift() {
            return Err(Error::InvalidChainMap(
                "triangle maps do not chain N -> E -> M -> N[1]".into(),
            ));
        }
        Ok(Triangle { f, g, h })
    }

    /// The standard triangle `X -f-> Y -u-> C(f) -v-> X[1]`.
    pub fn standard(f: &ChainMap2) -> Result<Self, Error> {
        let c = cone(f)?;
        Triangle::new(f.clone(), c.u, c.v)
    }

    pub fn n(&self) -> &TwoPeriodicComplex {
        self.f.src()
    }

    pub fn e(&self) -> &TwoPeriodicComplex {
        self.f.dst()
    }

    pub fn m(&self) -> &TwoPeriodicComplex {
        self.g.dst()
    }

    /// `E -g-> M -h-> N[1] -(-f[1])-> E[1]`.
    pub fn rotate(&self) -> Triangle {
        Triangle {
            f: self.g.clone(),
            g: self.h.clone(),
            h: self.f.shift().neg(),
        }
    }

    /// `N[1] -f[1]-> E[1] -g[1]-> M[1] -(-h[1])-> N[2] = N`.
    pub fn shift(&self) -> Triangle {
        Triangle {
            f: self.f.shift(),
            g: self.g.shift(),
            h: self.h.shift().neg(),
        }
    }

    /// Whether `g∘f`, `h∘g` and `f[1]∘h` are all null-homotopic.
    pub fn composites_vanish(&self) -> bool {
        let gf = self.g.compose(&self.f);
        let hg = self.h.compose(&self.g);
        let fh = self.f.shift().compose(&self.h);
        [gf, hg, fh]
            .into_iter()
            .all(|c| c.is_ok_and(|c| is_null_homotopic(&c).is_some()))
    }
}
