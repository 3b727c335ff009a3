//! The duality complex C3 -> C2 -> C1 -> C0 -> Z/2^m at a finite level: the
//! differentials, the construction of Theta, and the identity checks around them.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_ring::{GroupRingElement, ModuleElement, RingDescriptor};
use crate::howell::{solve, SpanBuilder, Submodule};
use crate::ideal::{congruent_mod, ideal_span, IdealSpec, SubgroupRef};
use crate::quotient::{
    generated_subgroup, pi_conjugate, project_named, CosetSpace, QuotientElement, QuotientGroup, DEFAULT_SIZE_CAP,
};
use crate::stabilizer::{Group, Named};

pub const THETA_FORMAT_VERSION: u32 = 1;

/// Name of the pivot rule used by the linear solver, recorded in exports.
pub const SOLVER_RULE: &str = "howell: minimal valuation, earliest row";

fn translate(g: &QuotientElement, v: &ModuleElement) -> ModuleElement {
    GroupRingElement::of(g, v.bits()).act(v)
}

/// First nonzero coefficient, as "digits:coeff", for failure reports.
pub fn module_witness(v: &ModuleElement) -> Option<String> {
    v.coeffs()
        .iter()
        .position(|&c| c != 0)
        .map(|c| format!("coset {}:{}", v.space().representative(c).digit_string(), v.coeffs()[c]))
}

fn ring_witness(x: &GroupRingElement) -> Option<String> {
    x.sorted_terms().first().map(|(g, c)| format!("{}:{}", g.digit_string(), c))
}

/// Map all terms through a group automorphism.
fn map_terms(x: &GroupRingElement, f: impl Fn(&QuotientElement) -> QuotientElement) -> GroupRingElement {
    let mut out = GroupRingElement::zero(x.descriptor());
    for (g, c) in x.terms() {
        out = out + GroupRingElement::monomial(x.descriptor(), &f(&g), c as i64);
    }
    out
}

/// A module map Z/2^m[G/H] -> Z/2^m[G/H'] determined by the image of eH.
#[derive(Clone, Debug)]
pub struct InducedMap {
    source: Arc<CosetSpace>,
    target: Arc<CosetSpace>,
    image: ModuleElement,
}

impl InducedMap {
    /// eH maps to x eH'. Fails unless h x eH' = x eH' for all generators h of H.
    pub fn new(source: Arc<CosetSpace>, target: Arc<CosetSpace>, x: &GroupRingElement) -> Result<InducedMap> {
        let image = x.act(&ModuleElement::generator(target.clone(), x.descriptor().bits));
        for h in source.subgroup().generators() {
            let moved = translate(&h, &image);
            if moved != image {
                return Err(Error::WellDefinedness(format!(
                    "stabilizer element {} moves the image; difference at {}",
                    h.digit_string(),
                    module_witness(&moved.sub(&image)).unwrap_or_default()
                )));
            }
        }
        Ok(InducedMap { source, target, image })
    }

    pub fn source(&self) -> &Arc<CosetSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CosetSpace> {
        &self.target
    }

    pub fn image_of_generator(&self) -> &ModuleElement {
        &self.image
    }

    pub fn apply(&self, v: &ModuleElement) -> ModuleElement {
        assert_eq!(v.space().len(), self.source.len());
        let m = crate::witt::mask(v.bits());
        let support: Vec<(usize, u64)> =
            self.image.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(t, &c)| (t, c)).collect();
        let mut out = vec![0u64; self.target.len()];
        for (c, &vc) in v.coeffs().iter().enumerate() {
            if vc == 0 {
                continue;
            }
            let x = self.source.representative(c);
            for &(t, a) in &support {
                let u = self.target.act(&x, t);
                out[u] = out[u].wrapping_add(vc.wrapping_mul(a)) & m;
            }
        }
        ModuleElement::from_coeffs(self.target.clone(), v.bits(), out)
    }

    /// Image of the basis vector for coset c, as a dense column.
    pub fn column(&self, c: usize) -> Vec<u64> {
        self.apply(&ModuleElement::basis(self.source.clone(), self.image.bits(), c)).coeffs().to_vec()
    }

    /// f(g v) = g f(v) for every g in `gens` and every basis vector v among the first `samples` cosets.
    pub fn commutes_with(&self, gens: &[QuotientElement], samples: usize) -> bool {
        let bits = self.image.bits();
        (0..self.source.len().min(samples)).all(|c| {
            let v = ModuleElement::basis(self.source.clone(), bits, c);
            let fv = self.apply(&v);
            gens.iter().all(|g| self.apply(&translate(g, &v)) == translate(g, &fv))
        })
    }
}

/// The four modules of the complex at level n with coefficients mod 2^m.
#[derive(Clone, Debug)]
pub struct DualityComplex {
    bits: u32,
    group: Arc<QuotientGroup>,
    g24: Arc<QuotientGroup>,
    c6: Arc<QuotientGroup>,
    k1: Arc<QuotientGroup>,
    c0: Arc<CosetSpace>,
    c1: Arc<CosetSpace>,
    c3: Arc<CosetSpace>,
}

impl DualityComplex {
    pub fn new(level: u32, bits: u32) -> Result<DualityComplex> {
        DualityComplex::with_cache(level, bits, None)
    }

    pub fn with_cache(level: u32, bits: u32, cache: Option<&Path>) -> Result<DualityComplex> {
        let q = QuotientGroup::enumerate_cached(Group::S21, level, DEFAULT_SIZE_CAP, cache)?;
        DualityComplex::from_group(Arc::new(q), bits)
    }

    pub fn from_group(group: Arc<QuotientGroup>, bits: u32) -> Result<DualityComplex> {
        let n = group.level();
        if group.group() != Group::S21 {
            return Err(Error::DescriptorMismatch("the complex lives over S21".into()));
        }
        let el = |name| project_named(name, Group::S21, n);
        let (i, w) = (el(Named::I)?, el(Named::Omega)?);
        let g24 = generated_subgroup(&[i, w], Group::S21, n, DEFAULT_SIZE_CAP)?;
        if g24.len() != 24 {
            return Err(Error::LevelTooSmall { group: Group::S21, level: n, minimum: 3 });
        }
        let c6 = generated_subgroup(&[w, i.mul(&i)], Group::S21, n, DEFAULT_SIZE_CAP)?;
        let g24p = QuotientGroup::from_elements(Group::S21, n, g24.elements().iter().map(pi_conjugate).collect());
        let k1 = SubgroupRef::K1.elements(&group);
        let (g24, c6, g24p) = (Arc::new(g24), Arc::new(c6), Arc::new(g24p));
        let c0 = Arc::new(CosetSpace::new(group.clone(), g24.clone())?);
        let c1 = Arc::new(CosetSpace::new(group.clone(), c6.clone())?);
        let c3 = Arc::new(CosetSpace::new(group.clone(), g24p)?);
        Ok(DualityComplex { bits, group, g24, c6, k1: Arc::new(k1), c0, c1, c3 })
    }

    pub fn level(&self) -> u32 {
        self.group.level()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(Group::S21, self.level(), self.bits)
    }

    pub fn group(&self) -> &Arc<QuotientGroup> {
        &self.group
    }

    pub fn g24(&self) -> &Arc<QuotientGroup> {
        &self.g24
    }

    pub fn c6(&self) -> &Arc<QuotientGroup> {
        &self.c6
    }

    pub fn k1(&self) -> &Arc<QuotientGroup> {
        &self.k1
    }

    pub fn c0(&self) -> &Arc<CosetSpace> {
        &self.c0
    }

    /// C1 and C2 are the same module.
    pub fn c1(&self) -> &Arc<CosetSpace> {
        &self.c1
    }

    pub fn c3(&self) -> &Arc<CosetSpace> {
        &self.c3
    }

    pub fn element(&self, name: Named) -> QuotientElement {
        project_named(name, Group::S21, self.level()).expect("named elements of S21")
    }

    pub fn ring(&self, name: Named) -> GroupRingElement {
        GroupRingElement::monomial(self.descriptor(), &self.element(name), 1)
    }

    pub fn e(&self) -> GroupRingElement {
        GroupRingElement::one(self.descriptor())
    }

    pub fn e0(&self) -> ModuleElement {
        ModuleElement::generator(self.c0.clone(), self.bits)
    }

    pub fn e1(&self) -> ModuleElement {
        ModuleElement::generator(self.c1.clone(), self.bits)
    }

    pub fn e3(&self) -> ModuleElement {
        ModuleElement::generator(self.c3.clone(), self.bits)
    }

    /// e - alpha.
    pub fn d1_coefficient(&self) -> GroupRingElement {
        self.e() - self.ring(Named::Alpha)
    }

    pub fn d1(&self) -> Result<InducedMap> {
        InducedMap::new(self.c1.clone(), self.c0.clone(), &self.d1_coefficient())
    }

    pub fn d2(&self, theta: &GroupRingElement) -> Result<InducedMap> {
        InducedMap::new(self.c1.clone(), self.c1.clone(), theta)
    }

    /// pi (e+i+j+k)(e-alpha^-1) pi^-1, computed as the conjugate of the product.
    pub fn d3prime_coefficient(&self) -> GroupRingElement {
        map_terms(&self.d3prime_inner(), pi_conjugate)
    }

    fn d3prime_inner(&self) -> GroupRingElement {
        let e = self.e();
        let s = &e + &self.ring(Named::I) + self.ring(Named::J) + self.ring(Named::K);
        let ainv = GroupRingElement::monomial(self.descriptor(), &self.element(Named::Alpha).inv(), 1);
        s * (e - ainv)
    }

    pub fn d3prime(&self) -> Result<InducedMap> {
        InducedMap::new(self.c3.clone(), self.c1.clone(), &self.d3prime_coefficient())
    }

    /// Representatives of G24 / C6 in the order e, i, j, k.
    fn quaternion_reps(&self) -> [QuotientElement; 4] {
        [self.group.identity(), self.element(Named::I), self.element(Named::J), self.element(Named::K)]
    }

    /// gamma (e - alpha) e0 for gamma running over representatives of Q_n / C6 (the
    /// value only depends on gamma C6 since C6 commutes with alpha and fixes e0).
    fn d1_columns(&self) -> Result<Vec<Vec<u64>>> {
        let d1 = self.d1()?;
        Ok((0..self.c1.len()).map(|c| d1.column(c)).collect())
    }

    /// Span of the image of d1 compared with the kernel of the augmentation on C0.
    pub fn aug_ideal_generation_check(&self) -> Result<SpanComparison> {
        let dim = self.c0.len();
        let image = Submodule::span(dim, self.bits, self.d1_columns()?);
        let base = self.c0.base();
        let mut b = SpanBuilder::new(dim, self.bits);
        for c in 0..dim {
            if c != base {
                let mut v = vec![0u64; dim];
                v[c] = 1;
                v[base] = crate::witt::mask(self.bits);
                b.push(v);
            }
        }
        let kernel = b.finish();
        Ok(SpanComparison {
            dim,
            image_log2: image.log2_size(),
            kernel_log2: kernel.log2_size(),
            equal: image == kernel,
        })
    }

    /// h with h (e - alpha) e0 = (e - g) e0, h supported on K1 {e, i, j, k}.
    pub fn solve_h(&self, g: &QuotientElement) -> Result<GroupRingElement> {
        let desc = self.descriptor();
        let e0 = self.e0();
        let target = (self.e() - GroupRingElement::monomial(desc, g, 1)).act(&e0);
        if target.is_zero() {
            return Ok(GroupRingElement::zero(desc));
        }
        let base = self.d1_coefficient().act(&e0);
        let mut unknowns = Vec::new();
        let mut columns = Vec::new();
        for kappa in self.k1.elements() {
            for t in self.quaternion_reps() {
                let gamma = kappa.mul(&t);
                columns.push(translate(&gamma, &base).coeffs().to_vec());
                unknowns.push(gamma);
            }
        }
        let x = solve(&columns, target.coeffs(), self.c0.len(), self.bits)
            .ok_or(Error::NoSolution { level: self.level() })?;
        let mut h = GroupRingElement::zero(desc);
        for (gamma, c) in unknowns.iter().zip(x) {
            if c != 0 {
                h = h + GroupRingElement::monomial(desc, gamma, c as i64);
            }
        }
        Ok(h)
    }

    /// Whether h lies in ((IK1)^7, 2(IK1)^3, 4 IK1, 8).
    pub fn certify_h(&self, h: &GroupRingElement) -> Result<bool> {
        if h.is_zero() {
            return Ok(true);
        }
        ideal_span(&IdealSpec::certificate_ideal(), &self.group, self.bits)?.contains(h)
    }

    /// The element Theta_2 whose image under d1 is (e - alpha_i alpha_j alpha_k alpha^2) e0.
    pub fn theta2(&self) -> Result<GroupRingElement> {
        let e = self.e();
        let r = |n| self.ring(n);
        let (a, i, j, k) = (r(Named::Alpha), r(Named::I), r(Named::J), r(Named::K));
        let (ai, aj, ak) = (r(Named::AlphaI), r(Named::AlphaJ), r(Named::AlphaK));
        let t1 = (&e + &i - (&e - &a) + (&e - &ai)).tr_c3()?;
        let aiaj = &ai * &aj;
        let aiajak = &aiaj * &ak;
        Ok(t1 - (&e + &a).scale(2) - (&e - &ai) * (j - aj) - (&e - &aiaj) * (k - ak) - (&e - &aiajak) * (&e + &a))
    }

    /// alpha_i alpha_j alpha_k alpha^2, which lies in F_{8/2}K1.
    pub fn deep_element(&self) -> QuotientElement {
        let el = |n| self.element(n);
        el(Named::AlphaI).mul(&el(Named::AlphaJ)).mul(&el(Named::AlphaK)).mul(&el(Named::AlphaSq))
    }

    pub fn build_theta(&self) -> Result<ThetaBuild> {
        let theta2 = self.theta2()?;
        let h = self.solve_h(&self.deep_element())?;
        let theta = (&theta2 - &h).tr_c3()?.div_odd(3);
        Ok(ThetaBuild { theta2, h, theta })
    }

    /// Reduce a C1 element modulo (4, IK1): sum coefficients over K1-orbits, mod 4.
    pub fn mod_four_aug_k1(&self, v: &ModuleElement) -> Vec<u64> {
        let (orbit, count) = self.c1.orbits_under(&self.k1);
        let m = crate::witt::mask(self.bits.min(2));
        let mut out = vec![0u64; count];
        for (c, &x) in v.coeffs().iter().enumerate() {
            out[orbit[c]] = out[orbit[c]].wrapping_add(x) & m;
        }
        out
    }

    /// The three conditions on Theta, plus exact commutation with C6 in the group ring.
    pub fn check_theta(&self, theta: &GroupRingElement) -> Result<ThetaChecks> {
        let d1 = self.d1()?;
        let (d2, d2_err) = match self.d2(theta) {
            Ok(m) => (Some(m), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let commutes = self.c6.generators().iter().all(|t| theta.left_mul(t) == theta.right_mul(t));
        let theta_e1 = theta.act(&self.e1());
        let composite = d1.apply(&theta_e1);
        let expected =
            (self.e().scale(3) + self.ring(Named::I) + self.ring(Named::J) + self.ring(Named::K)).act(&self.e1());
        let lhs = self.mod_four_aug_k1(&theta_e1);
        let rhs = self.mod_four_aug_k1(&expected);
        let gens = self.group.generators();
        let module_maps = d1.commutes_with(&gens, 8) && d2.as_ref().is_some_and(|m| m.commutes_with(&gens, 8));
        Ok(ThetaChecks {
            c6_well_defined: d2.is_some(),
            c6_commutes: commutes,
            kernel: composite.is_zero(),
            kernel_witness: module_witness(&composite).or(d2_err),
            augmentation_d1: d1.image_of_generator().augmentation() == 0,
            mod_four: lhs == rhs,
            mod_four_orbits: lhs.len(),
            mod_four_witness: if lhs == rhs { None } else { Some(format!("{lhs:?} vs {rhs:?}")) },
            module_maps,
        })
    }

    /// Theta = e+alpha+i+j+k-alpha_i-alpha_j-alpha_k modulo the ideal J.
    pub fn beta_congruence(&self, theta: &GroupRingElement) -> Result<IdealCongruence> {
        let r = |n| self.ring(n);
        let rhs = self.e() + r(Named::Alpha) + r(Named::I) + r(Named::J) + r(Named::K)
            - r(Named::AlphaI)
            - r(Named::AlphaJ)
            - r(Named::AlphaK);
        self.congruence(theta, &rhs, &IdealSpec::beta_ideal())
    }

    /// Theta = e + alpha modulo (2, I(S21)^2).
    pub fn mod_two_congruence(&self, theta: &GroupRingElement) -> Result<IdealCongruence> {
        let rhs = self.e() + self.ring(Named::Alpha);
        self.congruence(theta, &rhs, &IdealSpec::two_and_aug_squared())
    }

    fn congruence(&self, x: &GroupRingElement, y: &GroupRingElement, spec: &IdealSpec) -> Result<IdealCongruence> {
        let span = ideal_span(spec, &self.group, self.bits)?;
        let holds = congruent_mod(x, y, &span)?;
        Ok(IdealCongruence {
            holds,
            reduced_level: span.reduced_level,
            ideal_log2: span.log2_size(),
            witness: if holds { None } else { ring_witness(&x.try_sub(y)?) },
        })
    }

    /// The identities behind the mod (2, I(S21)^2) reduction: the factorization of e - alpha_t,
    /// (e - i)(e - j) = e + i + j + k mod 2, and the polynomial identity
    /// sum_{s<8} x^s = (1-x)^7 + 2x^4(x-1)^3 + 4x^2(x-1) mod 8, checked in Z/8[x] and at x = alpha.
    pub fn congruence_identities(&self) -> Result<CongruenceIdentities> {
        let desc = self.descriptor();
        let e = self.e();
        let of = |g: &QuotientElement| GroupRingElement::of(g, self.bits);
        let alpha = self.element(Named::Alpha);
        let e_ainv = &e - &of(&alpha.inv());
        let span = ideal_span(&IdealSpec::two_and_aug_squared(), &self.group, self.bits)?;
        let mut factorization = true;
        let mut in_ideal = true;
        for (t, at) in [(Named::I, Named::AlphaI), (Named::J, Named::AlphaJ), (Named::K, Named::AlphaK)] {
            let tau = self.element(t);
            let e_tinv = &e - &of(&tau.inv());
            let rhs = of(&tau.mul(&alpha)) * (&e_ainv * &e_tinv - &e_tinv * &e_ainv);
            let lhs = &e - &self.ring(at);
            factorization &= lhs == rhs;
            in_ideal &= span.contains(&lhs)?;
        }
        let (i, j, k) = (self.ring(Named::I), self.ring(Named::J), self.ring(Named::K));
        let prod = (&e - &i) * (&e - &j);
        let sum = &e + &i + &j + &k;
        let two = ideal_span(&IdealSpec::Scalar(1), &self.group, self.bits)?;
        let quaternion_sum = congruent_mod(&prod, &sum, &two)? && span.contains(&sum)?;
        let x = self.ring(Named::Alpha);
        let pow = |y: &GroupRingElement, n: usize| (0..n).fold(e.clone(), |acc, _| &acc * y);
        let xm1 = &x - &e;
        let lhs = (0..8).fold(GroupRingElement::zero(desc), |acc, s| acc + pow(&x, s));
        let rhs = pow(&(&e - &x), 7) + (pow(&x, 4) * pow(&xm1, 3)).scale(2) + (pow(&x, 2) * xm1).scale(4);
        let eight = ideal_span(&IdealSpec::Scalar(3), &self.group, self.bits)?;
        let geometric_sum = geometric_sum_polynomial_identity() && congruent_mod(&lhs, &rhs, &eight)?;
        Ok(CongruenceIdentities { factorization, alpha_tau_in_ideal: in_ideal, quaternion_sum, geometric_sum })
    }

    /// The coset and pairing identities used to identify the dual complex.
    pub fn dual_identity_checks(&self) -> Result<DualChecks> {
        let desc = self.descriptor();
        let e = self.e();
        let inv = |n| GroupRingElement::monomial(desc, &self.element(n).inv(), 1);
        let quat_inv = &e + &inv(Named::I) + inv(Named::J) + inv(Named::K);
        let sum_g24 = GroupRingElement::sum_of(desc, self.g24.elements());
        let sum_c6 = GroupRingElement::sum_of(desc, self.c6.elements());
        let coset_identity = sum_g24 == &sum_c6 * &quat_inv;
        let ea = self.d1_coefficient();
        let commuted_identity = &ea * &sum_g24 == &(&sum_c6 * &ea) * &quat_inv;
        let pairing = self.pairing_check(&self.c0)?;
        let d3 = self.d3prime();
        let (d3_well_defined, d3_nonzero, d3_witness) = match &d3 {
            Ok(m) => (true, !m.image_of_generator().is_zero(), None),
            Err(err) => (false, false, Some(err.to_string())),
        };
        let inner = self.d3prime_inner();
        let conj = |x: &GroupRingElement| map_terms(x, pi_conjugate);
        let s = &e + &self.ring(Named::I) + self.ring(Named::J) + self.ring(Named::K);
        let ainv = GroupRingElement::monomial(desc, &self.element(Named::Alpha).inv(), 1);
        let d3_two_ways = conj(&inner) == conj(&s) * conj(&(&e - &ainv));
        Ok(DualChecks {
            coset_identity,
            commuted_identity,
            pairing,
            d3_well_defined,
            d3_augmentation_zero: inner.augmentation() == 0,
            d3_two_ways,
            d3_nonzero,
            d3_witness,
        })
    }

    /// The map [g] -> [g]^* with [g]^*([e]) = sum_{h in H} h g^-1 into the H-invariant
    /// part of Z/2^m[G], which is free on the right cosets Hx.
    pub fn pairing_check(&self, space: &Arc<CosetSpace>) -> Result<PairingCheck> {
        let desc = self.descriptor();
        let h = space.subgroup().elements();
        let norm = GroupRingElement::sum_of(desc, h);
        let image = |g: &QuotientElement| norm.right_mul(&g.inv());
        let mut well_defined = true;
        let mut rows = Vec::with_capacity(space.len());
        let gens = space.subgroup().generators();
        for c in 0..space.len() {
            let g = space.representative(c);
            let v = image(&g);
            well_defined &= gens.iter().all(|t| image(&g.mul(t)) == v);
            well_defined &= gens.iter().all(|t| v.left_mul(t) == v);
            rows.push(v.to_dense(&self.group));
        }
        let equivariant = self.group.generators().iter().all(|x| {
            (0..space.len().min(8)).all(|c| {
                let g = space.representative(c);
                // (x phi)(m) = phi(m) x^-1
                image(&x.mul(&g)) == image(&g).right_mul(&x.inv())
            })
        });
        let span = Submodule::span(self.group.len(), self.bits, rows);
        Ok(PairingCheck {
            rank: span.free_rank(),
            cosets: space.len(),
            invertible: span.free_rank() == space.len() && span.log2_size() == self.bits as u64 * space.len() as u64,
            well_defined,
            equivariant,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanComparison {
    pub dim: usize,
    pub image_log2: u64,
    pub kernel_log2: u64,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct ThetaBuild {
    pub theta2: GroupRingElement,
    pub h: GroupRingElement,
    pub theta: GroupRingElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaChecks {
    pub c6_well_defined: bool,
    pub c6_commutes: bool,
    pub kernel: bool,
    pub kernel_witness: Option<String>,
    pub augmentation_d1: bool,
    pub mod_four: bool,
    pub mod_four_orbits: usize,
    pub mod_four_witness: Option<String>,
    pub module_maps: bool,
}

impl ThetaChecks {
    pub fn all(&self) -> bool {
        self.c6_well_defined
            && self.c6_commutes
            && self.kernel
            && self.augmentation_d1
            && self.mod_four
            && self.module_maps
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealCongruence {
    pub holds: bool,
    pub reduced_level: u32,
    pub ideal_log2: u64,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingCheck {
    pub rank: usize,
    pub cosets: usize,
    pub invertible: bool,
    pub well_defined: bool,
    pub equivariant: bool,
}

impl PairingCheck {
    pub fn ok(&self) -> bool {
        self.invertible && self.well_defined && self.equivariant
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualChecks {
    pub coset_identity: bool,
    pub commuted_identity: bool,
    pub pairing: PairingCheck,
    pub d3_well_defined: bool,
    pub d3_augmentation_zero: bool,
    pub d3_two_ways: bool,
    pub d3_nonzero: bool,
    pub d3_witness: Option<String>,
}

impl DualChecks {
    pub fn all(&self) -> bool {
        self.coset_identity
            && self.commuted_identity
            && self.pairing.ok()
            && self.d3_well_defined
            && self.d3_augmentation_zero
            && self.d3_two_ways
            && self.d3_nonzero
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceIdentities {
    pub factorization: bool,
    pub alpha_tau_in_ideal: bool,
    pub quaternion_sum: bool,
    pub geometric_sum: bool,
}

impl CongruenceIdentities {
    pub fn all(&self) -> bool {
        self.factorization && self.alpha_tau_in_ideal && self.quaternion_sum && self.geometric_sum
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[i64], n: usize) -> Vec<i64> {
    (0..n).fold(vec![1], |acc, _| poly_mul(&acc, a))
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// sum_{s<8} x^s - (1-x)^7 - 2x^4(x-1)^3 - 4x^2(x-1) has all coefficients divisible by 8.
pub fn geometric_sum_polynomial_identity() -> bool {
    let lhs = vec![1i64; 8];
    let t1 = poly_pow(&[1, -1], 7);
    let t2: Vec<i64> = poly_mul(&poly_pow(&[0, 1], 4), &poly_pow(&[-1, 1], 3)).iter().map(|c| 2 * c).collect();
    let t3: Vec<i64> = poly_mul(&poly_pow(&[0, 1], 2), &[-1, 1]).iter().map(|c| 4 * c).collect();
    let rhs = poly_add(&poly_add(&t1, &t2), &t3);
    let diff = poly_add(&lhs, &rhs.iter().map(|c| -c).collect::<Vec<_>>());
    diff.iter().all(|c| c.rem_euclid(8) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct N1Checks {
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
    pub f4: bool,
    pub four_a: bool,
}

impl N1Checks {
    pub fn all(&self) -> bool {
        self.f1 && self.f2 && self.f3 && self.f4 && self.four_a
    }
}

/// Identities in Z/2^m[G24 / C6] with f = (3e + i + j + k) e1.
pub fn n1_identities(bits: u32) -> Result<N1Checks> {
    let n = 4;
    let el = |name| project_named(name, Group::S21, n);
    let (i, w) = (el(Named::I)?, el(Named::Omega)?);
    let g24 = Arc::new(generated_subgroup(&[i, w], Group::S21, n, DEFAULT_SIZE_CAP)?);
    let c6 = Arc::new(generated_subgroup(&[w, i.mul(&i)], Group::S21, n, DEFAULT_SIZE_CAP)?);
    let space = Arc::new(CosetSpace::new(g24, c6)?);
    let desc = RingDescriptor::new(Group::S21, n, bits);
    let r = |name| GroupRingElement::named(desc, name);
    let (e, i, j, k) = (GroupRingElement::one(desc), r(Named::I)?, r(Named::J)?, r(Named::K)?);
    let e1 = ModuleElement::generator(space, bits);
    let f = (e.scale(3) + &i + &j + &k).act(&e1);
    let f1 = e1.scale(-4);
    let f1_ok = f1 == (&i + &j + &k - e.scale(5)).div_odd(3).act(&f);
    let f2_ok = (&i - &e).scale(2).act(&e1) == i.act(&f).sub(&f);
    let f3_ok = (&j - &e).scale(2).act(&e1) == j.act(&f).sub(&f);
    let f4_ok = (&k - &i - &j - &e).act(&e1) == (-&k).act(&f.add(&f1));
    let mult = ((&e - &i) + (&e - &j) + (&e - &k) + e.scale(2)).div_odd(3);
    let four_a = [&e, &i, &j, &k].iter().all(|a| a.scale(4).act(&e1) == (*a * &mult).act(&f));
    Ok(N1Checks { f1: f1_ok, f2: f2_ok, f3: f3_ok, f4: f4_ok, four_a })
}

/// Write x in the image of I F_{k/2}K1 as h0(e - a0) + h1(e - a1) + h2(e - a2) with
/// h_t in Z/2^m[F_{k/2}K1], where (a0, a1, a2) are alpha^(2^(r-1)), alpha_i^(2^(r-1)),
/// alpha_j^(2^(r-1)) for k = 2r and alpha^(2^r), alpha_i^(2^(r-1)), alpha_j^(2^(r-1)) for k = 2r + 1.
pub fn decompose_aug_ideal(q: &QuotientGroup, x: &GroupRingElement, k: u32) -> Result<[GroupRingElement; 3]> {
    let desc = x.descriptor();
    if k < 2 || q.level() <= k {
        return Err(Error::LevelTooSmall { group: Group::S21, level: q.level(), minimum: k + 1 });
    }
    let sub = q.filter(|g| g.in_filtration(k) && crate::stabilizer::digits_in_k(&g.digits()));
    let r = k / 2;
    let e_alpha = if k % 2 == 0 { 1i64 << (r - 1) } else { 1i64 << r };
    let e_tau = 1i64 << (r - 1);
    let el = |name| project_named(name, Group::S21, q.level());
    let gens = [el(Named::Alpha)?.pow(e_alpha), el(Named::AlphaI)?.pow(e_tau), el(Named::AlphaJ)?.pow(e_tau)];
    let zero = || GroupRingElement::zero(desc);
    if x.is_zero() {
        return Ok([zero(), zero(), zero()]);
    }
    let mut columns = Vec::new();
    for a in &gens {
        for f in sub.elements() {
            let col = GroupRingElement::monomial(desc, f, 1) - GroupRingElement::monomial(desc, &f.mul(a), 1);
            columns.push(col.to_dense(&sub));
        }
    }
    let target = if x.terms().all(|(g, _)| sub.contains(&g)) {
        x.to_dense(&sub)
    } else {
        return Err(Error::NoSolution { level: q.level() });
    };
    let sol = solve(&columns, &target, sub.len(), desc.bits).ok_or(Error::NoSolution { level: q.level() })?;
    let mut out = [zero(), zero(), zero()];
    for (t, chunk) in sol.chunks(sub.len()).enumerate() {
        out[t] = GroupRingElement::from_dense(desc, &sub, chunk);
    }
    Ok(out)
}

/// Versioned JSON export of Theta and the differentials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaExport {
    pub format_version: u32,
    pub level: u32,
    pub modulus: u64,
    pub solver: String,
    pub element: Vec<(String, u64)>,
    pub h: Vec<(String, u64)>,
    pub d1: Vec<(String, u64)>,
    pub d3prime: Vec<(String, u64)>,
}

fn terms_of(x: &GroupRingElement) -> Vec<(String, u64)> {
    x.sorted_terms().into_iter().map(|(g, c)| (g.digit_string(), c)).collect()
}

impl ThetaExport {
    pub fn new(cx: &DualityComplex, build: &ThetaBuild) -> ThetaExport {
        ThetaExport {
            format_version: THETA_FORMAT_VERSION,
            level: cx.level(),
            modulus: 1u64 << cx.bits(),
            solver: SOLVER_RULE.to_string(),
            element: terms_of(&build.theta),
            h: terms_of(&build.h),
            d1: terms_of(&cx.d1_coefficient()),
            d3prime: terms_of(&cx.d3prime_coefficient()),
        }
    }

    /// Rebuild Theta from the export.
    pub fn theta(&self) -> Result<GroupRingElement> {
        let bits = self.modulus.trailing_zeros();
        let desc = RingDescriptor::new(Group::S21, self.level, bits);
        let mut out = GroupRingElement::zero(desc);
        for (d, c) in &self.element {
            let digits = d
                .bytes()
                .map(|b| match b {
                    b'0'..=b'3' => Ok(crate::witt::F4::from_bits(b - b'0')),
                    _ => Err(Error::Parse { pos: 0, msg: format!("bad digit string {d}") }),
                })
                .collect::<Result<Vec<_>>>()?;
            let g = QuotientElement::from_digits(Group::S21, &digits)?;
            out = out + GroupRingElement::monomial(desc, &g, *c as i64);
        }
        Ok(out)
    }
}
