//! The subextension lattice of one finite Galois extension and the
//! filtration identities on it: each subgroup yields a fixed field,
//! normal subgroups carry induced upper-numbering chains that must agree
//! with direct recomputation, and the break data satisfies the
//! quotient-compatibility, fixed-field and base-change identities.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::plfun::PlFunction;
use crate::exactmath::rat::Rat;
use crate::galois::{galois_group, Extension, GaloisGroup, TowerSpec};
use crate::localfield::elem::{TowerElem, VK};
use crate::ramification::{breaks, conjugate_profile, BreakBound, RamProfile};

/// One subgroup of the Galois group together with its fixed field data.
pub struct LatticeMember {
    /// Sorted element indices, always containing the identity.
    pub subgroup: Vec<usize>,
    pub normal: bool,
    /// Degree of the fixed field over the base: the subgroup index.
    pub degree: usize,
    /// Orbit-sum generator of the fixed field, certified by stabilizer
    /// comparison; absent when the search ladder failed.
    pub generator: Option<TowerElem>,
    /// Description of the fixed field, when a caller-supplied candidate
    /// matched.
    pub label: Option<String>,
    pub spec: Option<TowerSpec>,
}

pub struct Lattice {
    /// Members in subgroup-size order: the whole extension first (trivial
    /// subgroup), the base field last (full group).
    pub members: Vec<LatticeMember>,
}

impl Lattice {
    pub fn member_of(&self, subgroup: &[usize]) -> Option<&LatticeMember> {
        self.members.iter().find(|m| m.subgroup == subgroup)
    }

    pub fn display_of(&self, subgroup: &[usize]) -> String {
        match self.member_of(subgroup) {
            Some(m) => match &m.label {
                Some(l) => l.clone(),
                None if m.degree == 1 => "K".to_string(),
                None if m.subgroup.len() == 1 => "L".to_string(),
                None => format!("fixed field of {:?}", m.subgroup),
            },
            None => format!("subgroup {subgroup:?}"),
        }
    }
}

fn orbit_sum(group: &GaloisGroup, h: &[usize], x: &TowerElem) -> Result<TowerElem> {
    let mut acc = TowerElem::zero(x.field());
    for &s in h {
        acc = acc.add(&group.apply(s, x)?);
    }
    Ok(acc)
}

/// A generator certificate: every element outside `h` must provably move
/// the candidate. Inside `h` the candidate is invariant by construction.
fn stabilizer_is(group: &GaloisGroup, h: &[usize], x: &TowerElem) -> Result<bool> {
    for g in 0..group.order() {
        if h.binary_search(&g).is_ok() {
            continue;
        }
        match group.apply(g, x)?.sub(x).valuation() {
            VK::Exact(_) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn generator_for(ext: &Extension, group: &GaloisGroup, h: &[usize]) -> Result<Option<TowerElem>> {
    if h.len() == group.order() {
        // Base field: the trace works and needs no certificate.
        return Ok(Some(orbit_sum(group, h, &ext.alpha)?));
    }
    // Orbit sums of powers of the generator, then of its unit shift.
    let shifted = ext.alpha.add(&TowerElem::one(&ext.tower));
    let mut candidates = Vec::with_capacity(16);
    for base in [&ext.alpha, &shifted] {
        let mut pow = base.clone();
        for _ in 0..8 {
            candidates.push(pow.clone());
            pow = pow.mul(base);
        }
    }
    for x in &candidates {
        let t = orbit_sum(group, h, x)?;
        if stabilizer_is(group, h, &t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Enumerates all subgroups and attaches fixed-field data: a certified
/// orbit-sum generator and, where one of the caller's candidate towers
/// has a matching embedded image, its description.
pub fn subextension_lattice(
    ext: &Extension,
    group: &GaloisGroup,
    candidates: &[(String, TowerSpec)],
) -> Result<Lattice> {
    let n = group.order();
    let prec = ext.tower.precision();
    let built: Vec<(String, Extension)> = candidates
        .iter()
        .map(|(label, spec)| Ok((label.clone(), Extension::analyze(spec, prec)?)))
        .collect::<Result<_>>()?;

    let mut members = Vec::new();
    for h in group.subgroups() {
        let degree = n / h.len();
        let normal = group.is_normal(&h);
        let generator = generator_for(ext, group, &h)?;
        let mut label = None;
        let mut spec = None;
        for (cand_label, cand) in &built {
            if cand.degree() == degree && group.fixed_field_is(&h, cand)? {
                label = Some(cand_label.clone());
                spec = Some(candidates.iter().find(|(l, _)| l == cand_label).unwrap().1.clone());
                break;
            }
        }
        members.push(LatticeMember {
            subgroup: h,
            normal,
            degree,
            generator,
            label,
            spec,
        });
    }
    Ok(Lattice { members })
}

/// Per-element upper numbering of the full group.
pub struct UpperFiltration {
    /// `u(sigma)` for each element; the identity carries none.
    pub u_of: Vec<Option<Rat>>,
    /// Distinct finite values, ascending.
    pub breaks: Vec<Rat>,
    pub u_max: BreakBound,
    pub f: PlFunction,
}

pub fn upper_filtration(ext: &Extension, group: &GaloisGroup) -> Result<UpperFiltration> {
    let profile = conjugate_profile(ext)?;
    let brk = breaks(&profile)?;
    let mut u_of = vec![None; group.order()];
    for g in 0..group.order() {
        if g == group.identity {
            continue;
        }
        let i = match group.roots[g].sub(&ext.alpha).valuation() {
            VK::Exact(v) => v,
            other => {
                return Err(Error::InsufficientPrecision(format!(
                    "conjugate difference not exact: {other:?}"
                )))
            }
        };
        u_of[g] = Some(brk.f.eval(&i)?);
    }
    let mut distinct: Vec<Rat> = u_of.iter().flatten().cloned().collect();
    distinct.sort();
    distinct.dedup();
    Ok(UpperFiltration {
        u_of,
        breaks: distinct,
        u_max: brk.u_max,
        f: brk.f,
    })
}

impl UpperFiltration {
    /// `{sigma : u(sigma) >= m}` with the identity, as a sorted index list.
    pub fn group_at(&self, group: &GaloisGroup, m: &Rat) -> Vec<usize> {
        let mut out: Vec<usize> = (0..group.order())
            .filter(|&g| g == group.identity || self.u_of[g].as_ref().is_some_and(|u| u >= m))
            .collect();
        out.sort_unstable();
        out
    }

    /// `{sigma : u(sigma) > m}` with the identity.
    pub fn group_above(&self, group: &GaloisGroup, m: &Rat) -> Vec<usize> {
        let mut out: Vec<usize> = (0..group.order())
            .filter(|&g| g == group.identity || self.u_of[g].as_ref().is_some_and(|u| u > m))
            .collect();
        out.sort_unstable();
        out
    }
}

/// The image of the upper chain in the quotient by a normal subgroup.
#[derive(Debug)]
pub struct InducedChain {
    /// Sorted multiset of quotient break values, one per nontrivial coset.
    pub coset_u: Vec<Rat>,
    /// Distinct break values with the image subgroup order at each.
    pub steps: Vec<(Rat, usize)>,
    pub u_max: BreakBound,
}

/// Left cosets of a normal subgroup, each sorted; the identity coset
/// comes first.
fn cosets(group: &GaloisGroup, h: &[usize]) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for lead in std::iter::once(group.identity).chain(0..n) {
        if seen[lead] {
            continue;
        }
        let mut coset: Vec<usize> = h.iter().map(|&x| group.table[lead][x]).collect();
        coset.sort_unstable();
        for &c in &coset {
            seen[c] = true;
        }
        out.push(coset);
    }
    out
}

/// Quotient filtration via the projection: a coset sits in the image of
/// the chain at `m` exactly when one of its elements does, so its break
/// is the largest member break.
pub fn induced_quotient_filtration(
    filt: &UpperFiltration,
    group: &GaloisGroup,
    h: &[usize],
) -> Result<InducedChain> {
    if !group.is_normal(h) {
        return Err(Error::BadInput(
            "quotient filtration requires a normal subgroup".to_string(),
        ));
    }
    let mut coset_u: Vec<Rat> = Vec::new();
    for coset in cosets(group, h).into_iter().skip(1) {
        let u = coset
            .iter()
            .filter_map(|&g| filt.u_of[g].clone())
            .max()
            .ok_or_else(|| {
                Error::IdentityFailure("nontrivial coset with no break values".to_string())
            })?;
        coset_u.push(u);
    }
    coset_u.sort();
    let mut steps: Vec<(Rat, usize)> = Vec::new();
    for b in coset_u.iter().rev() {
        // Image order at b: identity coset plus cosets with break >= b.
        let order = 1 + coset_u.iter().filter(|u| *u >= b).count();
        match steps.last() {
            Some((last, _)) if last == b => {}
            _ => steps.push((b.clone(), order)),
        }
    }
    steps.reverse();
    let u_max = match coset_u.last() {
        Some(u) => BreakBound::Finite(u.clone()),
        None => BreakBound::NegInf,
    };
    Ok(InducedChain {
        coset_u,
        steps,
        u_max,
    })
}

/// Upper-numbering multiset of an extension recomputed from scratch.
pub fn standalone_upper_multiset(spec: &TowerSpec, prec: i64) -> Result<(Vec<Rat>, BreakBound)> {
    let ext = Extension::analyze(spec, prec)?;
    if ext.degree() == 1 {
        return Ok((Vec::new(), BreakBound::NegInf));
    }
    let group = galois_group(&ext)?;
    let filt = upper_filtration(&ext, &group)?;
    let mut multiset: Vec<Rat> = filt.u_of.iter().flatten().cloned().collect();
    multiset.sort();
    Ok((multiset, filt.u_max))
}

pub struct CompatRow {
    pub label: String,
    pub degree: usize,
    pub induced: Vec<Rat>,
    pub direct: Vec<Rat>,
    pub u_max: BreakBound,
}

pub struct CompatReport {
    pub rows: Vec<CompatRow>,
    /// Normal members without a matched description, which therefore
    /// cannot be recomputed independently.
    pub unverified: Vec<String>,
}

/// For every matched Galois member, the induced quotient chain must equal
/// the chain computed by analyzing the member on its own: same break
/// values, coset for coset. A mismatch is a hard failure carrying both
/// chains.
pub fn quotient_compatibility_check(
    ext: &Extension,
    group: &GaloisGroup,
    filt: &UpperFiltration,
    lattice: &Lattice,
) -> Result<CompatReport> {
    let prec = ext.tower.precision();
    let mut rows = Vec::new();
    let mut unverified = Vec::new();
    for member in &lattice.members {
        if !member.normal || member.degree == 1 {
            continue;
        }
        let induced = induced_quotient_filtration(filt, group, &member.subgroup)?;
        let Some(spec) = &member.spec else {
            unverified.push(lattice.display_of(&member.subgroup));
            continue;
        };
        let (direct, direct_u) = standalone_upper_multiset(spec, prec)?;
        if induced.coset_u != direct || induced.u_max != direct_u {
            return Err(Error::IdentityFailure(format!(
                "quotient chain mismatch for {}: induced {:?}, direct {:?}",
                lattice.display_of(&member.subgroup),
                induced.coset_u,
                direct
            )));
        }
        rows.push(CompatRow {
            label: lattice.display_of(&member.subgroup),
            degree: member.degree,
            induced: induced.coset_u,
            direct,
            u_max: direct_u,
        });
    }
    Ok(CompatReport { rows, unverified })
}

/// Break of a Galois member read off the ambient data alone.
pub fn member_break(
    filt: &UpperFiltration,
    group: &GaloisGroup,
    h: &[usize],
) -> Result<BreakBound> {
    Ok(induced_quotient_filtration(filt, group, h)?.u_max)
}

pub struct FixedFieldRow {
    pub m: Rat,
    /// Intersection of the stabilizers of the Galois members with break
    /// strictly below `m`: the group fixing their composite.
    pub composite_below: Vec<usize>,
    /// The filtration subgroup at `m`.
    pub at: Vec<usize>,
    pub composite_below_eq: Vec<usize>,
    /// The filtration subgroup just past `m`.
    pub above: Vec<usize>,
    pub display_at: String,
    pub display_above: String,
}

/// Row-wise identity: the composite of the Galois subextensions with
/// break below `m` is exactly the fixed field of the subgroup at `m`,
/// and the non-strict composite matches the subgroup just past `m`.
pub fn fixed_field_table(
    group: &GaloisGroup,
    filt: &UpperFiltration,
    lattice: &Lattice,
    grid: &[Rat],
) -> Result<Vec<FixedFieldRow>> {
    // Member breaks, ambient-side.
    let mut member_u: Vec<(usize, BreakBound)> = Vec::new();
    for (idx, member) in lattice.members.iter().enumerate() {
        if !member.normal {
            continue;
        }
        member_u.push((idx, member_break(filt, group, &member.subgroup)?));
    }

    let mut rows = Vec::new();
    for m in grid {
        let mut below: Vec<usize> = (0..group.order()).collect();
        let mut below_eq: Vec<usize> = (0..group.order()).collect();
        for (idx, u) in &member_u {
            let h = &lattice.members[*idx].subgroup;
            let strictly = match u {
                BreakBound::NegInf => true,
                BreakBound::Finite(u) => u < m,
            };
            let weakly = match u {
                BreakBound::NegInf => true,
                BreakBound::Finite(u) => u <= m,
            };
            if strictly {
                below.retain(|g| h.binary_search(g).is_ok());
            }
            if weakly {
                below_eq.retain(|g| h.binary_search(g).is_ok());
            }
        }
        let at = filt.group_at(group, m);
        let above = filt.group_above(group, m);
        if below != at {
            return Err(Error::IdentityFailure(format!(
                "fixed-field identity fails at m = {m}: composite fixes {below:?}, \
                 filtration gives {at:?}"
            )));
        }
        if below_eq != above {
            return Err(Error::IdentityFailure(format!(
                "fixed-field identity fails just past m = {m}: composite fixes \
                 {below_eq:?}, filtration gives {above:?}"
            )));
        }
        rows.push(FixedFieldRow {
            m: m.clone(),
            display_at: lattice.display_of(&at),
            display_above: lattice.display_of(&above),
            composite_below: below,
            at,
            composite_below_eq: below_eq,
            above,
        });
    }
    Ok(rows)
}

/// Kernel of the action on the residue field: elements moving no residue
/// class, certified through a lifted residue generator. For a totally
/// ramified extension the action is trivial and the kernel is everything.
pub fn residue_action_kernel(ext: &Extension, group: &GaloisGroup) -> Result<Vec<usize>> {
    if ext.residue_degree() == 1 {
        return Ok((0..group.order()).collect());
    }
    let res = ext.tower.residue_field().clone();
    let gen_lift = TowerElem::lift(&ext.tower, &res.element(res.p()));
    let mut kernel = Vec::new();
    for g in 0..group.order() {
        let moved = group.apply(g, &gen_lift)?.sub(&gen_lift);
        let in_kernel = match moved.valuation() {
            VK::Infinite => true,
            VK::Exact(v) => v > Rat::zero(),
            VK::AtLeast(b) if b > Rat::zero() => true,
            VK::AtLeast(_) => {
                return Err(Error::InsufficientPrecision(
                    "residue action not resolved".to_string(),
                ))
            }
        };
        if in_kernel {
            kernel.push(g);
        }
    }
    Ok(kernel)
}

/// Upper numbering of `L` over the fixed field of `h`, in that field's
/// own normalization: the order profile shrinks to `h` and valuations
/// rescale by the relative ramification index.
pub fn relative_upper(
    group: &GaloisGroup,
    ext: &Extension,
    h: &[usize],
    e_prime: i64,
) -> Result<RelativeChain> {
    let mut diffs = Vec::new();
    for &g in h {
        if g == group.identity {
            continue;
        }
        let i = match group.roots[g].sub(&ext.alpha).valuation() {
            VK::Exact(v) => v,
            other => {
                return Err(Error::InsufficientPrecision(format!(
                    "conjugate difference not exact: {other:?}"
                )))
            }
        };
        diffs.push(i * Rat::from_int(e_prime));
    }
    let profile = RamProfile::new(diffs, h.len());
    let brk = breaks(&profile)?;
    let mut u_of: BTreeMap<usize, Rat> = BTreeMap::new();
    for &g in h {
        if g == group.identity {
            continue;
        }
        let i = match group.roots[g].sub(&ext.alpha).valuation() {
            VK::Exact(v) => v * Rat::from_int(e_prime),
            _ => unreachable!("checked above"),
        };
        u_of.insert(g, brk.f.eval(&i)?);
    }
    Ok(RelativeChain {
        u_of,
        u_max: brk.u_max,
    })
}

pub struct RelativeChain {
    /// Upper values of the elements of the subgroup, keyed by ambient
    /// element index.
    pub u_of: BTreeMap<usize, Rat>,
    pub u_max: BreakBound,
}

impl RelativeChain {
    pub fn group_at(&self, group: &GaloisGroup, m: &Rat) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .u_of
            .iter()
            .filter(|(_, u)| *u >= m)
            .map(|(&g, _)| g)
            .collect();
        out.push(group.identity);
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub struct MemberRamification {
    pub label: String,
    pub degree: usize,
    pub u: BreakBound,
    pub unramified: bool,
}

pub struct StructureReport {
    pub inertia: Vec<usize>,
    pub members: Vec<MemberRamification>,
    /// Labels of unramified members whose relative chain matched the
    /// ambient chain intersection.
    pub base_change_equalities: Vec<String>,
}

/// Finite-level structure assertions on the chain:
/// trivial strictly above the largest break, equal to the inertia
/// subgroup on (0, 1], member breaks zero exactly for the unramified
/// members, and for unramified subextensions the relative filtration is
/// the intersection of the ambient one.
pub fn structure_checks(
    ext: &Extension,
    group: &GaloisGroup,
    filt: &UpperFiltration,
    lattice: &Lattice,
) -> Result<StructureReport> {
    // (a) Separation past the largest break.
    if let BreakBound::Finite(u) = &filt.u_max {
        let past = u.clone() + Rat::new(1, 4);
        let g = filt.group_at(group, &past);
        if g != vec![group.identity] {
            return Err(Error::IdentityFailure(format!(
                "chain not separated: nontrivial at {past}"
            )));
        }
    }

    // (b) The chain on (0, 1] is the inertia subgroup.
    let inertia = residue_action_kernel(ext, group)?;
    for m in [Rat::new(1, 4), Rat::new(1, 2), Rat::one()] {
        let g = filt.group_at(group, &m);
        if g != inertia {
            return Err(Error::IdentityFailure(format!(
                "chain at {m} is {g:?}, inertia is {inertia:?}"
            )));
        }
    }

    // (c) Member breaks detect ramification: zero or absent exactly for
    // the unramified members. The inertia of the member's group is the
    // image of the ambient inertia, so the member is unramified exactly
    // when the subgroup absorbs the inertia.
    let mut members = Vec::new();
    for member in &lattice.members {
        if !member.normal {
            continue;
        }
        let u = member_break(filt, group, &member.subgroup)?;
        let unramified = inertia
            .iter()
            .all(|g| member.subgroup.binary_search(g).is_ok());
        let cutoff = BreakBound::Finite(Rat::zero());
        if unramified && u > cutoff {
            return Err(Error::IdentityFailure(format!(
                "unramified member {} has positive break {u:?}",
                lattice.display_of(&member.subgroup)
            )));
        }
        if !unramified && u < BreakBound::Finite(Rat::one()) {
            return Err(Error::IdentityFailure(format!(
                "ramified member {} has break {u:?} below one",
                lattice.display_of(&member.subgroup)
            )));
        }
        members.push(MemberRamification {
            label: lattice.display_of(&member.subgroup),
            degree: member.degree,
            u,
            unramified,
        });
    }

    // (d) Unramified base change: the relative chain of L over an
    // unramified subextension is the ambient chain intersected with the
    // subgroup, break for break.
    let mut base_change_equalities = Vec::new();
    for member in &lattice.members {
        if member.degree == 1 || member.subgroup.len() == 1 {
            continue;
        }
        let unramified = inertia
            .iter()
            .all(|g| member.subgroup.binary_search(g).is_ok());
        if !unramified {
            continue;
        }
        let rel = relative_upper(group, ext, &member.subgroup, 1)?;
        let mut probes: Vec<Rat> = filt.breaks.clone();
        probes.extend(rel.u_of.values().cloned());
        probes.sort();
        probes.dedup();
        for m in &probes {
            let ambient: Vec<usize> = filt
                .group_at(group, m)
                .into_iter()
                .filter(|g| member.subgroup.binary_search(g).is_ok())
                .collect();
            let relative = rel.group_at(group, m);
            if ambient != relative {
                return Err(Error::IdentityFailure(format!(
                    "base change mismatch over {} at {m}: ambient {ambient:?}, \
                     relative {relative:?}",
                    lattice.display_of(&member.subgroup)
                )));
            }
        }
        base_change_equalities.push(lattice.display_of(&member.subgroup));
    }

    Ok(StructureReport {
        inertia,
        members,
        base_change_equalities,
    })
}

/// Composite identity on the lattice: the break of the compositum (the
/// field fixed by the intersection of stabilizers) is the larger of the
/// two breaks. Returns the number of pairs checked.
pub fn composite_break_check(
    group: &GaloisGroup,
    filt: &UpperFiltration,
    lattice: &Lattice,
) -> Result<usize> {
    let normal: Vec<&LatticeMember> = lattice.members.iter().filter(|m| m.normal).collect();
    let mut checked = 0;
    for a in &normal {
        for b in &normal {
            let meet: Vec<usize> = a
                .subgroup
                .iter()
                .filter(|g| b.subgroup.binary_search(g).is_ok())
                .cloned()
                .collect();
            let u_a = member_break(filt, group, &a.subgroup)?;
            let u_b = member_break(filt, group, &b.subgroup)?;
            let u_ab = member_break(filt, group, &meet)?;
            let expected = u_a.clone().max(u_b.clone());
            if u_ab != expected {
                return Err(Error::IdentityFailure(format!(
                    "composite of {} and {} has break {u_ab:?}, expected {expected:?}",
                    lattice.display_of(&a.subgroup),
                    lattice.display_of(&b.subgroup)
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

pub struct BaseChangeRow {
    pub label: String,
    pub e_prime: i64,
    pub relative_u: BreakBound,
    pub bound: BreakBound,
    pub equality: bool,
}

/// Scaled base-change inequality within the lattice: over the fixed field
/// of each subgroup, the break of the remaining extension is at most the
/// relative ramification index times the ambient break, with equality for
/// unramified subextensions.
pub fn base_change_inequality_check(
    ext: &Extension,
    group: &GaloisGroup,
    filt: &UpperFiltration,
    lattice: &Lattice,
) -> Result<Vec<BaseChangeRow>> {
    let inertia = residue_action_kernel(ext, group)?;
    let mut rows = Vec::new();
    for member in &lattice.members {
        if member.subgroup.len() == 1 {
            continue;
        }
        let h = &member.subgroup;
        let h_inertia = inertia
            .iter()
            .filter(|g| h.binary_search(g).is_ok())
            .count();
        if inertia.len() % h_inertia != 0 {
            return Err(Error::IdentityFailure(
                "inertia order does not divide".to_string(),
            ));
        }
        let e_prime = (inertia.len() / h_inertia) as i64;
        let rel = relative_upper(group, ext, h, e_prime)?;
        let bound = match &filt.u_max {
            BreakBound::Finite(u) => BreakBound::Finite(u.clone() * Rat::from_int(e_prime)),
            BreakBound::NegInf => BreakBound::NegInf,
        };
        if rel.u_max > bound {
            return Err(Error::IdentityFailure(format!(
                "base change over {} breaks the bound: {:?} > {bound:?}",
                lattice.display_of(h),
                rel.u_max
            )));
        }
        let unramified = e_prime == 1 && inertia.iter().all(|g| h.binary_search(g).is_ok());
        let equality = rel.u_max == bound;
        if unramified && h.len() > 1 && !equality {
            return Err(Error::IdentityFailure(format!(
                "unramified base change over {} must attain the bound",
                lattice.display_of(h)
            )));
        }
        rows.push(BaseChangeRow {
            label: lattice.display_of(h),
            e_prime,
            relative_u: rel.u_max,
            bound,
            equality,
        });
    }
    Ok(rows)
}
