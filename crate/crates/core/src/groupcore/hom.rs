use once_cell::sync::OnceCell;

use super::bsgs::Bsgs;
use super::element::{Action, GroupElement, Pair, PAIR_TAG};
use super::group::Group;
use crate::error::{Error, Result};

/// A map given by images of the source generators.
///
/// Computations go through the graph subgroup `{(g, φ(g))}` of the direct
/// product: it has the order of the source exactly when `φ` is well defined,
/// its stabiliser of the target points is the kernel, and sifting by source
/// points evaluates `φ`.
#[derive(Clone, Debug)]
pub struct Homomorphism<A: Action, B: Action> {
    source: Group<A>,
    target: Group<B>,
    images: Vec<B>,
    graph: Group<Pair<A, B>>,
    by_source: OnceCell<Bsgs<Pair<A, B>>>,
    by_target: OnceCell<Bsgs<Pair<A, B>>>,
}

impl<A: Action, B: Action> Homomorphism<A, B> {
    pub fn new(source: Group<A>, target: Group<B>, images: Vec<B>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::invalid("one image per source generator is required"));
        }
        let gens: Vec<Pair<A, B>> =
            source.generators().iter().zip(&images).map(|(a, b)| Pair(a.clone(), b.clone())).collect();
        let one = Pair(source.one().clone(), target.one().clone());
        let graph = Group::new(gens, one).with_cap(source.cap()).with_seed(source.seed());
        Ok(Homomorphism { source, target, images, graph, by_source: OnceCell::new(), by_target: OnceCell::new() })
    }

    pub fn source(&self) -> &Group<A> {
        &self.source
    }

    pub fn target(&self) -> &Group<B> {
        &self.target
    }

    pub fn images(&self) -> &[B] {
        &self.images
    }

    /// Whether the generator assignment extends to a homomorphism.
    pub fn is_well_defined(&self) -> Result<bool> {
        Ok(self.graph.order()? == self.source.order()?)
    }

    fn source_points(&self) -> Vec<u64> {
        self.source.one().base_candidates()
    }

    fn target_points(&self) -> Vec<u64> {
        self.target.one().base_candidates().into_iter().map(|p| p | PAIR_TAG).collect()
    }

    fn ensure_well_defined(&self) -> Result<()> {
        if !self.is_well_defined()? {
            return Err(Error::Precondition("generator images do not define a homomorphism".into()));
        }
        Ok(())
    }

    fn by_source(&self) -> Result<&Bsgs<Pair<A, B>>> {
        self.by_source.get_or_try_init(|| self.graph.bsgs_with_prefix(&self.source_points()))
    }

    fn by_target(&self) -> Result<&Bsgs<Pair<A, B>>> {
        self.by_target.get_or_try_init(|| self.graph.bsgs_with_prefix(&self.target_points()))
    }

    /// `φ(x)`, or an error when `x` is not in the source.
    pub fn image(&self, x: &A) -> Result<B> {
        self.ensure_well_defined()?;
        let b = self.by_source()?;
        let mut h = Pair(x.clone(), self.target.one().clone());
        for l in b.levels() {
            if l.point() & PAIR_TAG != 0 {
                break;
            }
            let pt = h.act(l.point());
            let j = l.position(pt).ok_or_else(|| Error::invalid("element is not in the source group"))?;
            let u = l.transversal(j, self.graph.one());
            h = h.mul(&u.inv());
        }
        if !h.0.is_one() {
            return Err(Error::invalid("element is not in the source group"));
        }
        // h = (1, φ(x)⁻¹)
        Ok(h.1.inv())
    }

    /// Some `y` with `φ(y) = t`, or `None` when `t` is outside the image.
    pub fn preimage(&self, t: &B) -> Result<Option<A>> {
        self.ensure_well_defined()?;
        let b = self.by_target()?;
        let mut h = Pair(self.source.one().clone(), t.clone());
        for l in b.levels() {
            if l.point() & PAIR_TAG == 0 {
                break;
            }
            let pt = h.act(l.point());
            let Some(j) = l.position(pt) else { return Ok(None) };
            let u = l.transversal(j, self.graph.one());
            h = h.mul(&u.inv());
        }
        if !h.1.is_one() {
            return Ok(None);
        }
        Ok(Some(h.0.inv()))
    }

    /// Kernel as a subgroup of the source.
    pub fn kernel(&self) -> Result<Group<A>> {
        self.ensure_well_defined()?;
        let b = self.by_target()?;
        let depth = self.target_points().len();
        let gens = b.levels().get(depth).map(|l| l.generators().iter().map(|p| p.0.clone()).collect()).unwrap_or_default();
        Ok(self.source.subgroup(gens))
    }

    pub fn image_group(&self) -> Group<B> {
        self.target.subgroup(self.images.clone())
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.order()? == 1)
    }
}
