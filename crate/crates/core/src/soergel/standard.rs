//! Twisted modules, the rank-two modules `B_s`, Bott–Samelson products and
//! the unit and counit of the self-adjunction of `– ⊗ B_s`.

use super::bimodule::{pm_identity, pm_scale, pm_sub, Bimodule, BimoduleMap, Level, PMat, Ring};
use super::poly::{kappa, q_frac, Poly, RingAction, Z};
use crate::affine_weyl::{AffWElem, AffineSystem};
use crate::error::{Error, Result};
use crate::root_datum::RootDatum;

/// A reflection `s` with a chosen root `α_s`, a linear form with `s(α_s) = -α_s`.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub name: String,
    pub elem: AffWElem,
    pub alpha: Poly,
}

impl Reflection {
    /// The `i`-th simple reflection of `sys`.
    pub fn simple(sys: &AffineSystem, i: usize) -> Self {
        let g = &sys.generators()[i];
        Reflection { name: g.name.clone(), elem: g.elem, alpha: Poly::character(&g.root.root, sys.rank()) }
    }
}

fn action(d: &RootDatum, g: &AffWElem, ring: Ring) -> RingAction {
    RingAction::new(d, g, ring.level == Level::Extended)
}

/// `R(w)`: rank one, `e · a = w(a) e`. At the split level `Z = -κ(λ)`.
pub fn twisted(d: &RootDatum, w: &AffWElem, ring: Ring) -> Bimodule {
    let act = action(d, w, ring);
    let mut ops: Vec<PMat> = (0..ring.rank).map(|i| vec![vec![act.image(i).clone()]]).collect();
    match ring.level {
        Level::Plain => {}
        Level::Extended => ops.push(vec![vec![act.image(Z).clone()]]),
        Level::Split => ops.push(vec![vec![-&kappa(d, w.translation_part())]]),
    }
    Bimodule { ring, label: format!("R({w:?})"), degrees: vec![0], ops }
}

pub fn regular(d: &RootDatum, ring: Ring) -> Bimodule {
    let mut m = twisted(d, &AffWElem::identity(d.rank()), ring);
    m.label = "R".into();
    m
}

/// `B_s = R ⊗_{R^s} R⟨1⟩` with basis `c_1 = 1 ⊗ 1` in degree `-1` and
/// `c_α = 1 ⊗ α_s` in degree `1`.
pub fn b_atom(d: &RootDatum, s: &Reflection, ring: Ring) -> Result<Bimodule> {
    let act = action(d, &s.elem, ring);
    let alpha = &s.alpha;
    let alpha2 = alpha * alpha;
    let half = q_frac(1, 2);
    let demazure = |f: &Poly, sf: &Poly| -> Result<Poly> {
        (f - sf).div_linear(alpha).ok_or_else(|| Error::Invariant(format!("{} is not a root of {}", alpha, s.name)))
    };
    let block = |a: &Poly| -> Result<PMat> {
        let sa = act.apply(a);
        let plus = (a + &sa).scale(&half);
        let dd = demazure(a, &sa)?.scale(&half);
        Ok(vec![vec![plus.clone(), dd.clone()], vec![&alpha2 * &dd, plus]])
    };
    let mut ops = Vec::with_capacity(ring.num_ops());
    for i in 0..ring.rank {
        ops.push(block(&Poly::var(i))?);
    }
    match ring.level {
        Level::Plain => {}
        Level::Extended => ops.push(block(&Poly::var(Z))?),
        Level::Split => {
            // Z = z - ρ(z) on the extended module, i.e. (c/2)(α - ρ(α)) with c = ∂_s z
            let full = RingAction::new(d, &s.elem, true);
            let z = Poly::var(Z);
            let c = demazure(&z, &full.apply(&z))?.scale(&half);
            let ra = block(alpha)?;
            ops.push(pm_scale(&pm_sub(&pm_scale(&pm_identity(2), alpha), &ra), &c));
        }
    }
    Ok(Bimodule { ring, label: format!("B({})", s.name), degrees: vec![-1, 1], ops })
}

/// `B_{s_1} ⊗ ⋯ ⊗ B_{s_k}`; the regular module for the empty word.
pub fn bott_samelson(d: &RootDatum, word: &[Reflection], ring: Ring) -> Result<Bimodule> {
    let Some((first, rest)) = word.split_first() else { return Ok(regular(d, ring)) };
    let mut m = b_atom(d, first, ring)?;
    for s in rest {
        m = m.tensor(&b_atom(d, s, ring)?)?;
    }
    Ok(m)
}

/// Convolution of modules: the tensor product over the common ring.
pub fn conv(a: &Bimodule, b: &Bimodule) -> Result<Bimodule> {
    a.tensor(b)
}

/// The extended module induced from a split one: `z` acts on the right by `z - Z`.
pub fn induce(m: &Bimodule) -> Result<Bimodule> {
    if m.ring.level != Level::Split {
        return Err(Error::Precondition("induction starts from a split-level module".into()));
    }
    let r = m.ring.rank;
    let mut ops = m.ops[..r].to_vec();
    let zop = &m.ops[r];
    ops.push(pm_sub(&pm_scale(&pm_identity(m.rank()), &Poly::var(Z)), zop));
    Ok(Bimodule { ring: Ring::new(r, Level::Extended), label: format!("Ind {}", m.label), degrees: m.degrees.clone(), ops })
}

/// Unit `R → B_s ⊗ B_s`, `1 ↦ α_s ⊗ 1 ⊗ 1 + 1 ⊗ 1 ⊗ α_s`.
pub fn unit(s: &Reflection) -> BimoduleMap {
    BimoduleMap { degree: 0, mat: vec![vec![s.alpha.clone(), Poly::one(), Poly::zero(), Poly::zero()]] }
}

/// Counit `B_s ⊗ B_s → R`, applying `∂_s / 2` to the middle tensor factor.
pub fn counit(s: &Reflection) -> BimoduleMap {
    BimoduleMap {
        degree: 0,
        mat: vec![vec![Poly::zero()], vec![Poly::zero()], vec![Poly::one()], vec![s.alpha.clone()]],
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AdjunctionCheck {
    pub unit_is_morphism: bool,
    pub counit_is_morphism: bool,
    pub left_triangle: bool,
    pub right_triangle: bool,
}

impl AdjunctionCheck {
    pub fn passed(&self) -> bool {
        self.unit_is_morphism && self.counit_is_morphism && self.left_triangle && self.right_triangle
    }
}

/// Checks the unit and counit are bimodule maps and both triangle identities
/// `(id ⊗ ε)(η ⊗ id) = id` and `(ε ⊗ id)(id ⊗ η) = id` on `B_s`.
pub fn unit_counit_check(d: &RootDatum, s: &Reflection, ring: Ring) -> Result<AdjunctionCheck> {
    let r = regular(d, ring);
    let b = b_atom(d, s, ring)?;
    let bb = b.tensor(&b)?;
    let (eta, eps) = (unit(s), counit(s));
    let id = BimoduleMap::identity(&b);
    let left = eta.tensor_id(&b).then(&eps.id_tensor(&b));
    let right = eta.id_tensor(&b).then(&eps.tensor_id(&b));
    Ok(AdjunctionCheck {
        unit_is_morphism: eta.is_morphism(&r, &bb),
        counit_is_morphism: eps.is_morphism(&bb, &r),
        left_triangle: left == id,
        right_triangle: right == id,
    })
}
