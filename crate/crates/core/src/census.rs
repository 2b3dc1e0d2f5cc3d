//! Exhaustive enumeration and BFS orbit computation over finite rings.
//!
//! This is the verification oracle of the crate: orbit and equivalence
//! claims that cannot be decided symbolically are observed here at desk
//! scale. Enumeration is complete and duplicate-free, canonical
//! representatives are the lexicographically least serialized encodings,
//! and every BFS parent chain replays into a checkable witness.
//!
//! Results over finite rings are observations, not theorem checks: the
//! source results concern smooth affine algebras over algebraically closed
//! fields, and no finite-ring analogue is claimed.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::altform::AlternatingMatrix;
use crate::error::{Error, Result};
use crate::generators::{build_generator, GeneratorSpec};
use crate::matrix::ExactMatrix;
use crate::ring::{RingElement, RingHandle, UnitStatus};
use crate::witt::{check_equiv_witness, GroupFlag, WitnessCheck, WitnessFactor, WitnessWord};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectKind {
    UnimodularRows { n: usize },
    AlternatingInvertible { size: usize },
}

impl ObjectKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ObjectKind::UnimodularRows { .. } => "umrows",
            ObjectKind::AlternatingInvertible { .. } => "alt",
        }
    }
}

/// Which generator family drives the action. Symplectic transvections are
/// the maps `x -> x + lambda psi(x,v) v` over all enumerable `(v, lambda)`;
/// over fields these generate the symplectic group. `ElementarySymplectic`
/// is the set of single elementary generators that preserve the standard
/// form exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSet {
    Elementary,
    SpecialLinear,
    SymplecticTransvections,
    ElementarySymplectic,
}

impl GeneratorSet {
    pub fn tag(&self) -> &'static str {
        match self {
            GeneratorSet::Elementary => "E",
            GeneratorSet::SpecialLinear => "SL",
            GeneratorSet::SymplecticTransvections => "Sp-transvections",
            GeneratorSet::ElementarySymplectic => "ESp-elementary",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "E" => Some(GeneratorSet::Elementary),
            "SL" => Some(GeneratorSet::SpecialLinear),
            "Sp" | "Sp-transvections" => Some(GeneratorSet::SymplecticTransvections),
            "ESp" | "ESp-elementary" => Some(GeneratorSet::ElementarySymplectic),
            _ => None,
        }
    }

    fn group_flag(&self) -> GroupFlag {
        match self {
            GeneratorSet::Elementary | GeneratorSet::ElementarySymplectic => {
                GroupFlag::Elementary
            }
            _ => GroupFlag::SpecialLinear,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusJob {
    pub ring: RingHandle,
    pub object: ObjectKind,
    pub generators: GeneratorSet,
    /// Stabilization cap for alternating congruence classes; a report field,
    /// never a claim about stable class counts.
    pub stab_cap: usize,
    pub budget: usize,
    pub seed: u64,
}

impl CensusJob {
    pub fn new(ring: RingHandle, object: ObjectKind, generators: GeneratorSet) -> Self {
        CensusJob { ring, object, generators, stab_cap: 0, budget: DEFAULT_BUDGET, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusObject {
    Row(Vec<RingElement>),
    Alt(AlternatingMatrix),
}

impl CensusObject {
    pub fn key(&self) -> String {
        match self {
            CensusObject::Row(a) => a
                .iter()
                .map(|e| e.to_canonical_string())
                .collect::<Vec<_>>()
                .join(","),
            CensusObject::Alt(m) => m.matrix().canonical_key(),
        }
    }
}

/// One generator instantiated at the acting size, with its exact inverse.
#[derive(Debug, Clone)]
struct CensusGen {
    factor: CensusFactor,
    mat: ExactMatrix,
    inv_factor: CensusFactor,
}

/// Replayable description of one step; elementary steps keep their index
/// form so they can embed into witness words at any larger size.
#[derive(Debug, Clone)]
pub enum CensusFactor {
    Elem { row: usize, col: usize, lambda: RingElement },
    Explicit(ExactMatrix),
}

impl CensusFactor {
    fn matrix(&self, ring: &RingHandle, size: usize) -> Result<ExactMatrix> {
        match self {
            CensusFactor::Elem { row, col, lambda } => build_generator(
                ring,
                &GeneratorSpec::Elementary { row: *row, col: *col, lambda: lambda.clone() },
                size,
            ),
            CensusFactor::Explicit(m) => {
                if m.nrows() == size {
                    Ok(m.clone())
                } else if m.nrows() < size {
                    m.direct_sum(&ExactMatrix::identity(ring.clone(), size - m.nrows()))
                } else {
                    Err(Error::ShapeMismatch(format!(
                        "factor of size {} cannot embed into size {}",
                        m.nrows(),
                        size
                    )))
                }
            }
        }
    }
}

/// A replayable parent chain from the class's canonical representative to a
/// member object.
#[derive(Debug, Clone)]
pub struct WitnessPath {
    pub rep_key: String,
    pub object_key: String,
    pub steps: Vec<CensusFactor>,
}

#[derive(Debug, Clone)]
pub struct OrbitClass {
    pub size: usize,
    pub canonical: CensusObject,
    /// Pfaffian of the canonical representative, for alternating censuses.
    pub pfaffian: Option<RingElement>,
    pub member_keys: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub job: CensusJob,
    pub object_count: usize,
    pub orbits: Vec<OrbitClass>,
    pub witnesses: Vec<WitnessPath>,
}

impl CensusResult {
    /// Canonical representative key of the class containing `key`.
    pub fn class_of(&self, key: &str) -> Option<&str> {
        self.orbits
            .iter()
            .find(|c| c.member_keys.iter().any(|k| k == key))
            .map(|c| c.member_keys[0].as_str())
    }
}

struct Budget {
    spent: usize,
    budget: usize,
}

impl Budget {
    fn new(budget: usize) -> Self {
        Budget { spent: 0, budget }
    }

    fn charge(&mut self, n: usize) -> Result<()> {
        self.spent = self.spent.saturating_add(n);
        if self.spent > self.budget {
            Err(Error::BudgetExceeded { needed: self.spent, budget: self.budget })
        } else {
            Ok(())
        }
    }
}

/// `q^e` with overflow treated as "over budget".
fn checked_pow(q: usize, e: usize) -> usize {
    let mut acc: usize = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q);
    }
    acc
}

fn for_each_tuple<F: FnMut(&[usize]) -> Result<()>>(q: usize, n: usize, mut f: F) -> Result<()> {
    let mut idx = vec![0usize; n];
    loop {
        f(&idx)?;
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < q {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Complete, duplicate-free enumeration of the object set. Rows are kept
/// when a section exists, decided by exhaustive search; alternating matrices
/// are kept when the Pfaffian is a unit (equivalent to a unit determinant,
/// since `det = Pf^2`).
pub fn enumerate_objects(job: &CensusJob) -> Result<Vec<CensusObject>> {
    let elems = job.ring.enumerate()?;
    let q = elems.len();
    let mut budget = Budget::new(job.budget);
    let mut out = Vec::new();
    match job.object {
        ObjectKind::UnimodularRows { n } => {
            if n == 0 {
                return Err(Error::BadSpec("rows must have positive length".into()));
            }
            // candidate rows plus the per-row exhaustive section search
            budget.charge(checked_pow(q, n).saturating_mul(2))?;
            for_each_tuple(q, n, |idx| {
                let a: Vec<RingElement> = idx.iter().map(|&i| elems[i].clone()).collect();
                if find_section(&job.ring, &elems, &a)?.is_some() {
                    out.push(CensusObject::Row(a));
                }
                Ok(())
            })?;
        }
        ObjectKind::AlternatingInvertible { size } => {
            if size == 0 || size % 2 != 0 {
                return Err(Error::BadSpec("alternating census needs a positive even size".into()));
            }
            let uppers = size * (size - 1) / 2;
            budget.charge(checked_pow(q, uppers))?;
            for_each_tuple(q, uppers, |idx| {
                let mut pos = 0;
                let m = AlternatingMatrix::from_upper(job.ring.clone(), size, |_, _| {
                    let e = elems[idx[pos]].clone();
                    pos += 1;
                    e
                })
                .expect("even size");
                if matches!(m.pfaffian().unit_status(), UnitStatus::Yes(_)) {
                    out.push(CensusObject::Alt(m));
                }
                Ok(())
            })?;
        }
    }
    Ok(out)
}

/// Exhaustive section search: the first `b` (in enumeration order) with
/// `a * b = 1`, if any.
fn find_section(
    ring: &RingHandle,
    elems: &[RingElement],
    a: &[RingElement],
) -> Result<Option<Vec<RingElement>>> {
    let q = elems.len();
    let n = a.len();
    let mut found = None;
    for_each_tuple(q, n, |idx| {
        if found.is_some() {
            return Ok(());
        }
        let mut acc = ring.zero();
        for (x, &i) in a.iter().zip(idx.iter()) {
            acc = acc.add(&x.mul(&elems[i])?)?;
        }
        if acc.is_one() {
            found = Some(idx.iter().map(|&i| elems[i].clone()).collect());
        }
        Ok(())
    })?;
    Ok(found)
}

fn build_census_generators(
    ring: &RingHandle,
    size: usize,
    set: GeneratorSet,
    budget: &mut Budget,
) -> Result<Vec<CensusGen>> {
    let elems = ring.enumerate()?;
    let q = elems.len();
    let mut gens: BTreeMap<String, CensusGen> = BTreeMap::new();

    let push_elem = |gens: &mut BTreeMap<String, CensusGen>,
                         row: usize,
                         col: usize,
                         lambda: &RingElement|
     -> Result<()> {
        let mat = build_generator(
            ring,
            &GeneratorSpec::Elementary { row, col, lambda: lambda.clone() },
            size,
        )?;
        gens.insert(
            mat.canonical_key(),
            CensusGen {
                factor: CensusFactor::Elem { row, col, lambda: lambda.clone() },
                mat,
                inv_factor: CensusFactor::Elem { row, col, lambda: lambda.neg() },
            },
        );
        Ok(())
    };

    match set {
        GeneratorSet::Elementary | GeneratorSet::SpecialLinear => {
            budget.charge(size * size * q)?;
            for row in 0..size {
                for col in 0..size {
                    if row == col {
                        continue;
                    }
                    for lam in &elems {
                        if lam.is_zero() {
                            continue;
                        }
                        push_elem(&mut gens, row, col, lam)?;
                    }
                }
            }
            if set == GeneratorSet::SpecialLinear {
                // unit-diagonal pairs diag(.., u, .., u^{-1}, ..)
                for i in 0..size {
                    for j in (i + 1)..size {
                        for u in &elems {
                            if u.is_one() {
                                continue;
                            }
                            let UnitStatus::Yes(u_inv) = u.unit_status() else {
                                continue;
                            };
                            let mut mat = ExactMatrix::identity(ring.clone(), size);
                            mat.set(i, i, u.clone());
                            mat.set(j, j, u_inv.clone());
                            let mut inv_mat = ExactMatrix::identity(ring.clone(), size);
                            inv_mat.set(i, i, u_inv.clone());
                            inv_mat.set(j, j, u.clone());
                            gens.insert(
                                mat.canonical_key(),
                                CensusGen {
                                    factor: CensusFactor::Explicit(mat.clone()),
                                    mat,
                                    inv_factor: CensusFactor::Explicit(inv_mat),
                                },
                            );
                        }
                    }
                }
            }
        }
        GeneratorSet::SymplecticTransvections => {
            if size % 2 != 0 {
                return Err(Error::BadSpec(
                    "symplectic generators need an even ambient size".into(),
                ));
            }
            let form = AlternatingMatrix::psi(ring.clone(), size / 2);
            let vectors = checked_pow(q, size);
            budget.charge(vectors.saturating_mul(q))?;
            for_each_tuple(q, size, |idx| {
                if idx.iter().all(|&i| elems[i].is_zero()) {
                    return Ok(());
                }
                let v: Vec<RingElement> = idx.iter().map(|&i| elems[i].clone()).collect();
                for lam in &elems {
                    if lam.is_zero() {
                        continue;
                    }
                    let spec = GeneratorSpec::Transvection {
                        v: v.clone(),
                        lambda: lam.clone(),
                        form: form.clone(),
                    };
                    let mat = build_generator(ring, &spec, size)?;
                    let inv_spec = spec.inverse();
                    let inv_mat = build_generator(ring, &inv_spec, size)?;
                    gens.insert(
                        mat.canonical_key(),
                        CensusGen {
                            factor: CensusFactor::Explicit(mat.clone()),
                            mat,
                            inv_factor: CensusFactor::Explicit(inv_mat),
                        },
                    );
                }
                Ok(())
            })?;
        }
        GeneratorSet::ElementarySymplectic => {
            if size % 2 != 0 {
                return Err(Error::BadSpec(
                    "symplectic generators need an even ambient size".into(),
                ));
            }
            let form = AlternatingMatrix::psi(ring.clone(), size / 2);
            budget.charge(size * size * q)?;
            for row in 0..size {
                for col in 0..size {
                    if row == col {
                        continue;
                    }
                    for lam in &elems {
                        if lam.is_zero() {
                            continue;
                        }
                        let mat = build_generator(
                            ring,
                            &GeneratorSpec::Elementary {
                                row,
                                col,
                                lambda: lam.clone(),
                            },
                            size,
                        )?;
                        if AlternatingMatrix::congruence(&mat, &form)? == form {
                            push_elem(&mut gens, row, col, lam)?;
                        }
                    }
                }
            }
        }
    }
    Ok(gens.into_values().collect())
}

fn apply_gen(object: &CensusObject, gen_mat: &ExactMatrix) -> Result<CensusObject> {
    match object {
        CensusObject::Row(a) => Ok(CensusObject::Row(gen_mat.act_on_row(a)?)),
        CensusObject::Alt(m) => Ok(CensusObject::Alt(AlternatingMatrix::congruence(gen_mat, m)?)),
    }
}

/// Partition the object set into orbits by breadth-first search.
///
/// Rows are acted on the right; alternating matrices by congruence, with the
/// stabilization cap applied symmetrically (the BFS walks stabilized forms
/// and objects are identified through their stabilized keys). The generator
/// application order is shuffled by the seed; the resulting partition,
/// canonical representatives and orbit sizes do not depend on it.
pub fn orbit_bfs(job: &CensusJob) -> Result<CensusResult> {
    let objects = enumerate_objects(job)?;
    let mut budget = Budget::new(job.budget);

    let (acting_size, stab) = match job.object {
        ObjectKind::UnimodularRows { n } => (n, 0usize),
        ObjectKind::AlternatingInvertible { size } => (size + 2 * job.stab_cap, job.stab_cap),
    };
    let mut gens = build_census_generators(&job.ring, acting_size, job.generators, &mut budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    gens.shuffle(&mut rng);

    // stabilized key -> object index
    let mut stab_key_of: BTreeMap<String, usize> = BTreeMap::new();
    let stabilized: Vec<CensusObject> = objects
        .iter()
        .map(|o| match o {
            CensusObject::Row(a) => CensusObject::Row(a.clone()),
            CensusObject::Alt(m) => CensusObject::Alt(m.stabilize(stab)),
        })
        .collect();
    for (i, s) in stabilized.iter().enumerate() {
        stab_key_of.insert(s.key(), i);
    }

    let mut assigned: Vec<Option<usize>> = vec![None; objects.len()];
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    // per object: chain of (generator index, forward?) from its class root
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];

    for root in 0..objects.len() {
        if assigned[root].is_some() {
            continue;
        }
        let class_idx = class_members.len();
        class_members.push(Vec::new());

        // BFS over stabilized states from the root's stabilized form.
        let mut visited: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let root_state = stabilized[root].clone();
        visited.insert(root_state.key(), Vec::new());
        let mut queue: VecDeque<CensusObject> = VecDeque::new();
        queue.push_back(root_state);
        while let Some(state) = queue.pop_front() {
            let state_key = state.key();
            let path_here = visited.get(&state_key).expect("visited").clone();
            if let Some(&obj_idx) = stab_key_of.get(&state_key) {
                if assigned[obj_idx].is_none() {
                    assigned[obj_idx] = Some(class_idx);
                    class_members[class_idx].push(obj_idx);
                    paths[obj_idx] = path_here.clone();
                }
            }
            budget.charge(gens.len())?;
            for (gi, gen) in gens.iter().enumerate() {
                let next = apply_gen(&state, &gen.mat)?;
                let key = next.key();
                if visited.contains_key(&key) {
                    continue;
                }
                let mut path = path_here.clone();
                path.push(gi);
                visited.insert(key, path);
                queue.push_back(next);
            }
        }
    }

    // Canonical representative per class: lexicographically least member key.
    let mut orbits: Vec<OrbitClass> = Vec::new();
    let mut witnesses: Vec<WitnessPath> = Vec::new();
    for members in &class_members {
        let mut keys: Vec<(String, usize)> =
            members.iter().map(|&i| (objects[i].key(), i)).collect();
        keys.sort();
        let (rep_key, rep_idx) = keys[0].clone();
        let pfaffian = match &objects[rep_idx] {
            CensusObject::Alt(m) => Some(m.pfaffian()),
            CensusObject::Row(_) => None,
        };
        // witness rep -> member: undo rep's root path, then follow member's
        let rep_path = &paths[rep_idx];
        for &(ref key, idx) in &keys {
            let mut steps: Vec<CensusFactor> = Vec::new();
            for &gi in rep_path.iter().rev() {
                steps.push(gens[gi].inv_factor.clone());
            }
            for &gi in &paths[idx] {
                steps.push(gens[gi].factor.clone());
            }
            witnesses.push(WitnessPath {
                rep_key: rep_key.clone(),
                object_key: key.clone(),
                steps,
            });
        }
        orbits.push(OrbitClass {
            size: members.len(),
            canonical: objects[rep_idx].clone(),
            pfaffian,
            member_keys: keys.into_iter().map(|(k, _)| k).collect(),
        });
    }
    orbits.sort_by(|a, b| a.canonical.key().cmp(&b.canonical.key()));
    witnesses.sort_by(|a, b| {
        (a.rep_key.as_str(), a.object_key.as_str()).cmp(&(b.rep_key.as_str(), b.object_key.as_str()))
    });

    Ok(CensusResult { job: job.clone(), object_count: objects.len(), orbits, witnesses })
}

/// Replay a witness path: apply the steps to the canonical representative at
/// the acting (stabilized) size and compare against the target object.
pub fn replay_witness(job: &CensusJob, result: &CensusResult, path: &WitnessPath) -> Result<bool> {
    let rep = result
        .orbits
        .iter()
        .find(|c| c.canonical.key() == path.rep_key)
        .map(|c| &c.canonical)
        .ok_or_else(|| {
            Error::BadWitness("witness representative is not a canonical representative".into())
        })?;
    match (job.object, rep) {
        (ObjectKind::UnimodularRows { n }, CensusObject::Row(a)) => {
            let mut cur = a.clone();
            for step in &path.steps {
                let mat = step.matrix(&job.ring, n)?;
                cur = mat.act_on_row(&cur)?;
            }
            Ok(CensusObject::Row(cur).key() == path.object_key)
        }
        (ObjectKind::AlternatingInvertible { size }, CensusObject::Alt(m)) => {
            let total = size + 2 * job.stab_cap;
            let mut cur = m.stabilize(job.stab_cap);
            for step in &path.steps {
                let mat = step.matrix(&job.ring, total)?;
                cur = AlternatingMatrix::congruence(&mat, &cur)?;
            }
            // The reached state must be exactly object ⊥ psi_pad.
            let top = ExactMatrix::from_fn(job.ring.clone(), size, size, |i, j| {
                cur.matrix().entry(i, j).clone()
            });
            Ok(top.canonical_key() == path.object_key && pad_is_psi(&cur, size))
        }
        _ => Err(Error::BadWitness("object kind mismatch".into())),
    }
}

/// For stabilized replay: the off-block parts must vanish and the pad must
/// be the standard form, otherwise the reached state only agrees on a corner.
fn pad_is_psi(m: &AlternatingMatrix, size: usize) -> bool {
    let total = m.size();
    let ring = m.ring().clone();
    let psi = AlternatingMatrix::psi(ring, (total - size) / 2);
    for i in 0..total {
        for j in 0..total {
            if i < size && j < size {
                continue;
            }
            let expect = if i >= size && j >= size {
                psi.matrix().entry(i - size, j - size).clone()
            } else {
                m.ring().zero()
            };
            if m.matrix().entry(i, j) != &expect {
                return false;
            }
        }
    }
    true
}

/// Convert an alternating-census witness path into a checkable
/// [`WitnessWord`] for `check_equiv_witness(rep, object, word, flag)`.
///
/// The path's steps carry the representative onto the object, i.e.
/// `object ⊥ pad = W^t (rep ⊥ pad) W`; the defining identity of the check
/// runs the other way, so the word is the reversed inverse of the steps.
/// Elementary steps embed by index; other steps embed as explicit
/// block-diagonal factors, which forces the SL flag.
pub fn path_to_witness_word(job: &CensusJob, path: &WitnessPath) -> Result<(WitnessWord, GroupFlag)> {
    let ObjectKind::AlternatingInvertible { size } = job.object else {
        return Err(Error::Unsupported(
            "witness words are defined for alternating censuses".into(),
        ));
    };
    let total = 2 * size + 2 * job.stab_cap;
    let mut flag = job.generators.group_flag();
    let mut factors = Vec::with_capacity(path.steps.len());
    for step in path.steps.iter().rev() {
        match step {
            CensusFactor::Elem { row, col, lambda } => factors.push(WitnessFactor::Elem {
                row: *row,
                col: *col,
                lambda: lambda.neg(),
            }),
            CensusFactor::Explicit(m) => {
                flag = GroupFlag::SpecialLinear;
                // Census factors all have determinant 1.
                let inv = m.inverse(Some(&job.ring.one()))?;
                let embedded = if inv.nrows() < total {
                    inv.direct_sum(&ExactMatrix::identity(job.ring.clone(), total - inv.nrows()))?
                } else {
                    inv
                };
                factors.push(WitnessFactor::Explicit(embedded));
            }
        }
    }
    Ok((WitnessWord { factors, stabilization: job.stab_cap }, flag))
}

/// Re-verify every witness of an alternating census through
/// `check_equiv_witness`, or by replay for row censuses. Returns the number
/// of witnesses checked.
pub fn verify_all_witnesses(job: &CensusJob, result: &CensusResult) -> Result<usize> {
    let mut checked = 0;
    match job.object {
        ObjectKind::UnimodularRows { .. } => {
            for path in &result.witnesses {
                if !replay_witness(job, result, path)? {
                    return Err(Error::BadWitness(format!(
                        "replay failed for {} -> {}",
                        path.rep_key, path.object_key
                    )));
                }
                checked += 1;
            }
        }
        ObjectKind::AlternatingInvertible { size } => {
            let find_alt = |key: &str| -> Option<AlternatingMatrix> {
                let known = result
                    .orbits
                    .iter()
                    .any(|c| c.member_keys.iter().any(|k| k == key));
                if known {
                    parse_alt_key(&job.ring, key, size).ok()
                } else {
                    None
                }
            };
            for path in &result.witnesses {
                let rep = find_alt(&path.rep_key)
                    .ok_or_else(|| Error::BadWitness("missing representative".into()))?;
                let obj = find_alt(&path.object_key)
                    .ok_or_else(|| Error::BadWitness("missing object".into()))?;
                let (word, flag) = path_to_witness_word(job, path)?;
                let check = check_equiv_witness(&rep, &obj, &word, flag)?;
                if !matches!(check, WitnessCheck::Verified) {
                    return Err(Error::BadWitness(format!(
                        "witness identity failed for {} -> {}",
                        path.rep_key, path.object_key
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn parse_alt_key(ring: &RingHandle, key: &str, size: usize) -> Result<AlternatingMatrix> {
    let rows: Vec<&str> = key.split(';').collect();
    if rows.len() != size {
        return Err(Error::Parse(format!("key has {} rows, expected {}", rows.len(), size)));
    }
    let mut entries = Vec::with_capacity(size);
    for r in rows {
        let cols: Vec<&str> = r.split(',').collect();
        if cols.len() != size {
            return Err(Error::Parse("ragged key".into()));
        }
        let mut row = Vec::with_capacity(size);
        for c in cols {
            row.push(ring.parse(c)?);
        }
        entries.push(row);
    }
    AlternatingMatrix::new(ExactMatrix::from_rows(ring.clone(), entries)?)
}

/// Compare the orbit partitions induced by two generator sets on the same
/// object set; on disagreement, exhibits a pair of objects that one side
/// joins and the other separates.
#[derive(Debug, Clone)]
pub struct CompareReport {
    pub set_a: GeneratorSet,
    pub set_b: GeneratorSet,
    pub orbits_a: usize,
    pub orbits_b: usize,
    pub coincide: bool,
    /// `(x, y, side)`: objects x and y share an orbit on `side` only.
    pub separating: Option<(String, String, &'static str)>,
}

pub fn compare_generator_sets(
    job: &CensusJob,
    set_a: GeneratorSet,
    set_b: GeneratorSet,
) -> Result<CompareReport> {
    let mut job_a = job.clone();
    job_a.generators = set_a;
    let mut job_b = job.clone();
    job_b.generators = set_b;
    let res_a = orbit_bfs(&job_a)?;
    let res_b = orbit_bfs(&job_b)?;

    let class_map = |res: &CensusResult| -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        for c in &res.orbits {
            for k in &c.member_keys {
                m.insert(k.clone(), c.member_keys[0].clone());
            }
        }
        m
    };
    let map_a = class_map(&res_a);
    let map_b = class_map(&res_b);
    let coincide = partitions_equal(&map_a, &map_b);
    let mut separating = None;
    if !coincide {
        'outer: for (x, ra) in &map_a {
            for (y, ra2) in &map_a {
                if x >= y {
                    continue;
                }
                let same_a = ra == ra2;
                let same_b = map_b.get(x) == map_b.get(y);
                if same_a != same_b {
                    separating = Some((
                        x.clone(),
                        y.clone(),
                        if same_a { "A" } else { "B" },
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(CompareReport {
        set_a,
        set_b,
        orbits_a: res_a.orbits.len(),
        orbits_b: res_b.orbits.len(),
        coincide,
        separating,
    })
}

fn partitions_equal(a: &BTreeMap<String, String>, b: &BTreeMap<String, String>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    // same blocks: representatives may differ, compare block fingerprints
    let blocks = |m: &BTreeMap<String, String>| -> BTreeMap<String, Vec<String>> {
        let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (k, rep) in m {
            out.entry(rep.clone()).or_default().push(k.clone());
        }
        out
    };
    let ba: Vec<Vec<String>> = blocks(a).into_values().collect();
    let bb: Vec<Vec<String>> = blocks(b).into_values().collect();
    ba == bb
}

/// Census-backed stabilized equivalence oracle: search for the least
/// stabilization level `s <= cap` at which `m` and `n` are congruent under
/// the generator set, by BFS from `m ⊥ psi_{2s}`. Returns `Some(s)` on
/// success, `None` when every orbit within the cap was exhausted.
pub fn stabilized_equivalent(
    ring: &RingHandle,
    m: &AlternatingMatrix,
    n: &AlternatingMatrix,
    set: GeneratorSet,
    cap: usize,
    budget_limit: usize,
) -> Result<Option<usize>> {
    if m.ring() != ring || n.ring() != ring {
        return Err(Error::MixedRings);
    }
    if m.size() != n.size() {
        return Err(Error::ShapeMismatch(format!(
            "stabilized comparison of sizes {} and {}",
            m.size(),
            n.size()
        )));
    }
    for s in 0..=cap {
        let size = m.size() + 2 * s;
        let mut budget = Budget::new(budget_limit);
        let gens = build_census_generators(ring, size, set, &mut budget)?;
        let start = m.stabilize(s);
        let target = n.stabilize(s);
        let target_key = target.matrix().canonical_key();
        let mut visited: BTreeMap<String, ()> = BTreeMap::new();
        visited.insert(start.matrix().canonical_key(), ());
        if start == target {
            return Ok(Some(s));
        }
        let mut queue = VecDeque::new();
        queue.push_back(start);
        let mut found = false;
        while let Some(state) = queue.pop_front() {
            budget.charge(gens.len())?;
            for gen in &gens {
                let next = AlternatingMatrix::congruence(&gen.mat, &state)?;
                let key = next.matrix().canonical_key();
                if key == target_key {
                    found = true;
                    break;
                }
                if visited.contains_key(&key) {
                    continue;
                }
                visited.insert(key, ());
                queue.push_back(next);
            }
            if found {
                break;
            }
        }
        if found {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Enumerate the group generated by a generator set by closure under right
/// multiplication; used only on tiny rings where the order fits the budget.
pub fn generated_group_order(
    ring: &RingHandle,
    size: usize,
    set: GeneratorSet,
    budget_limit: usize,
) -> Result<usize> {
    let mut budget = Budget::new(budget_limit);
    let gens = build_census_generators(ring, size, set, &mut budget)?;
    let identity = ExactMatrix::identity(ring.clone(), size);
    let mut seen: BTreeMap<String, ()> = BTreeMap::new();
    seen.insert(identity.canonical_key(), ());
    let mut queue = VecDeque::new();
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        budget.charge(gens.len())?;
        for gen in &gens {
            let next = g.mul(&gen.mat)?;
            let key = next.canonical_key();
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, ());
            queue.push_back(next);
        }
    }
    Ok(seen.len())
}
