//! The checks behind `verify-all`. Every check yields one report entry.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use xconn::bundle::{assemble_amalgam, fiber_family};
use xconn::category::{
    cone_compose, normal_factorization, principal_cones, principal_morphism,
    search_normal_cones, ConeSemigroup, SubspaceCategory,
};
use xconn::crossconn::{
    build_cross_conn_semigroup_over, chi_report, conjugation_is_automorphism, gamma_eps,
    verify_cross_connection, MembershipReading, Side,
};
use xconn::dual::{build_annihilator_category, build_ta_semigroup, iso_to_dual_subspace_category, m_set_comparisons};
use xconn::gf::{
    enumerate_automorphisms, enumerate_endos, gaussian_binomial, general_linear_order,
    singular_count, Endo, Field, LinearMap,
};
use xconn::semigroup::{
    class_ids, green_relations, null_semigroup_fixture, verify_amalgam, CayleyJson,
    FiniteSemigroup, ASSOCIATIVITY_GUARD,
};
use xconn::sing::SingSemigroup;
use xconn::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub witness: Value,
}

impl CheckResult {
    pub fn new(check: &str, ok: bool, witness: Value) -> Self {
        CheckResult {
            check: check.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub field: Option<u8>,
    pub dim: Option<usize>,
    pub checks: Vec<CheckResult>,
    /// Checks that could not run within the enumeration guards.
    pub skipped: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(field: Option<u8>, dim: Option<usize>, checks: Vec<CheckResult>, skipped: Vec<String>) -> Self {
        let passed = checks.iter().all(CheckResult::passed);
        Report {
            field,
            dim,
            checks,
            skipped,
            passed,
        }
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.check.as_str())
            .collect()
    }
}

/// Morphisms sampled for the factorization check on top of the exhaustive pass.
pub const FACTORIZATION_SAMPLES: usize = 10_000;
/// Automorphisms examined per cross-connection sweep when `GL(V)` is larger.
pub const EPSILON_SAMPLES: usize = 8;
/// Composable pairs checked exhaustively, or sampled beyond this count.
pub const FUNCTORIALITY_PAIRS: usize = 20_000;

/// Closed form, brute-force rank filtering, and the enumerated semigroup agree.
pub fn sing_cardinality(field: Field, n: usize, sing: &SingSemigroup) -> xconn::Result<CheckResult> {
    let closed = singular_count(field.p() as u128, n);
    let brute = enumerate_endos(field, n, false)?
        .iter()
        .filter(|e| e.rank() < n)
        .count() as u128;
    let built = sing.order() as u128;
    Ok(CheckResult::new(
        "sing_cardinality",
        closed == brute && brute == built,
        json!({"closed_form": closed, "rank_filter": brute, "semigroup": built}),
    ))
}

/// Number of idempotents of rank below `n`: `Σ_k [n k]_p p^{k(n-k)}`.
pub fn idempotent_count(p: u128, n: usize) -> u128 {
    (0..n)
        .map(|k| gaussian_binomial(p, n, k) * p.pow((k * (n - k)) as u32))
        .sum()
}

pub fn sing_regular(sing: &SingSemigroup) -> CheckResult {
    let s = sing.semigroup();
    let expected = idempotent_count(sing.field().p() as u128, sing.dim());
    let found = s.idempotents().len() as u128;
    let irregular = s.irregular_element().map(|i| s.label(i).to_string());
    CheckResult::new(
        "sing_regular_idempotents",
        irregular.is_none() && found == expected,
        json!({"idempotents": found, "expected_idempotents": expected, "irregular": irregular}),
    )
}

/// `L` ⟺ equal image, `R` ⟺ equal kernel, and one `D`-class per rank with
/// Gaussian-binomial eggbox dimensions.
pub fn green_structure(sing: &SingSemigroup) -> CheckResult {
    let s = sing.semigroup();
    let g = green_relations(s);
    let n = s.order();
    let (l, r) = (class_ids(n, &g.l_classes), class_ids(n, &g.r_classes));
    let mut witness = Value::Null;
    'pairs: for a in 0..n {
        for b in 0..n {
            let (ea, eb) = (sing.element(a), sing.element(b));
            let l_ok = (l[a] == l[b]) == (ea.image() == eb.image());
            let r_ok = (r[a] == r[b]) == (ea.kernel() == eb.kernel());
            if !(l_ok && r_ok) {
                witness = json!({"pair": [s.label(a), s.label(b)], "l_ok": l_ok, "r_ok": r_ok});
                break 'pairs;
            }
        }
    }
    let p = sing.field().p() as u128;
    let dim = sing.dim();
    let mut expected: Vec<(usize, usize, usize)> = (0..dim)
        .map(|k| {
            let g = gaussian_binomial(p, dim, k) as usize;
            let h = general_linear_order(p, k) as usize;
            (g * g * h, g, g)
        })
        .collect();
    expected.sort();
    let shape = g.shape();
    let ok = witness.is_null() && shape == expected;
    CheckResult::new(
        "green_structure",
        ok,
        json!({"d_classes": g.d_classes.len(), "shape": shape, "expected_shape": expected, "counterexample": witness}),
    )
}

fn factorization_ok(f: &LinearMap) -> bool {
    let nf = normal_factorization(f);
    let coimage = nf.retraction.cod();
    let splits = LinearMap::inclusion(coimage, f.dom())
        .and_then(|j| j.then(&nf.retraction))
        .map(|m| m.is_identity())
        .unwrap_or(false);
    nf.recompose() == *f && nf.iso.is_iso() && nf.inclusion.is_mono() && splits
}

/// Every morphism between every object pair, then `samples` random ones.
pub fn normal_factorization_check(cat: &SubspaceCategory, samples: usize, seed: u64) -> CheckResult {
    let k = cat.len();
    let mut exhaustive = 0usize;
    let mut witness = None;
    for i in 0..k {
        for j in 0..k {
            for f in cat.hom(i, j) {
                exhaustive += 1;
                if witness.is_none() && !factorization_ok(&f) {
                    witness = Some(format!("{f:?}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    for _ in 0..samples {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let f = LinearMap::random(&mut rng, cat.object(i), cat.object(j));
        if witness.is_none() && !factorization_ok(&f) {
            witness = Some(format!("{f:?}"));
        }
    }
    let retractions_split = cat.inclusion_pairs().iter().all(|&(i, j)| {
        let q = cat.retraction(i, j).expect("inclusion pair");
        cat.inclusion(i, j).expect("inclusion pair").then(&q).map(|m| m.is_identity()).unwrap_or(false)
    });
    CheckResult::new(
        "normal_factorization",
        witness.is_none() && retractions_split,
        json!({"exhaustive": exhaustive, "sampled": samples, "retractions_split": retractions_split, "counterexample": witness}),
    )
}

/// The normal cones found by exhaustive search are exactly the principal ones.
pub fn normal_cone_enumeration(cat: &SubspaceCategory, sing: &SingSemigroup) -> xconn::Result<(CheckResult, Vec<xconn::category::Cone>)> {
    let found = search_normal_cones(cat)?;
    let principal: BTreeSet<_> = principal_cones(cat, sing)?.into_iter().collect();
    let non_principal: Vec<String> = found
        .iter()
        .filter(|c| !principal.contains(*c))
        .take(3)
        .map(|c| c.label())
        .collect();
    let ok = found.len() == sing.order() && non_principal.is_empty();
    let check = CheckResult::new(
        "normal_cone_enumeration",
        ok,
        json!({"normal_cones": found.len(), "sing": sing.order(), "principal": principal.len(), "non_principal_examples": non_principal}),
    );
    Ok((check, found))
}

/// `α ↦ ρ^α` is an isomorphism onto the principal cones, with
/// `ρ^α ρ^β = ρ^{αβ}` on every pair.
pub fn principal_cone_isomorphism(cat: &SubspaceCategory, sing: &SingSemigroup) -> xconn::Result<CheckResult> {
    let cones = principal_cones(cat, sing)?;
    let s = sing.semigroup();
    let n = sing.order();
    let bad: Option<(usize, usize)> = (0..n * n)
        .into_par_iter()
        .map(|k| (k / n, k % n))
        .find_first(|&(i, j)| {
            cone_compose(cat, &cones[i], &cones[j]).ok().as_ref() != Some(&cones[s.mul(i, j)])
        });
    let witness = match bad {
        Some((i, j)) => json!([s.label(i), s.label(j)]),
        None => Value::Null,
    };
    let mut sorted = cones;
    sorted.sort();
    let ts = ConeSemigroup::from_cones(cat, sorted, false)?;
    let r = principal_morphism(cat, sing, &ts)?.verify();
    Ok(CheckResult::new(
        "principal_cone_isomorphism",
        witness.is_null() && r.is_isomorphism(),
        json!({"is_hom": r.is_hom, "is_injective": r.is_injective, "is_surjective": r.is_surjective, "product_counterexample": witness}),
    ))
}

/// Regularity of the semigroup of normal cones.
pub fn cone_semigroup_regular(cat: &SubspaceCategory, cones: Vec<xconn::category::Cone>, exhaustive: bool) -> xconn::Result<CheckResult> {
    let ts = ConeSemigroup::from_cones(cat, cones, exhaustive)?;
    let s = ts.semigroup();
    let irregular = s.irregular_element().map(|i| s.label(i).to_string());
    Ok(CheckResult::new(
        "cone_semigroup_regular",
        irregular.is_none(),
        json!({"order": ts.order(), "exhaustive": exhaustive, "irregular": irregular}),
    ))
}

pub fn m_sets(cat: &SubspaceCategory, sing: &SingSemigroup) -> xconn::Result<CheckResult> {
    let cmp = m_set_comparisons(cat, sing)?;
    let bad: Vec<_> = cmp.iter().filter(|c| !c.agrees()).map(|c| c.idempotent.clone()).collect();
    Ok(CheckResult::new(
        "m_sets",
        bad.is_empty(),
        json!({"idempotents": cmp.len(), "disagreeing": bad}),
    ))
}

pub fn annihilator_duality(field: Field, n: usize) -> xconn::Result<CheckResult> {
    let av = build_annihilator_category(field, n)?;
    let r = iso_to_dual_subspace_category(&av)?;
    Ok(CheckResult::new("annihilator_duality", r.passed(), serde_json::to_value(&r).expect("report")))
}

pub fn ta_anti_isomorphism(field: Field, n: usize) -> xconn::Result<CheckResult> {
    let ta = build_ta_semigroup(field, n)?;
    let r = &ta.anti_isomorphism;
    Ok(CheckResult::new(
        "ta_anti_isomorphism",
        r.is_isomorphism() && ta.transpose_reverses_products && ta.transpose_involutive,
        json!({
            "order": ta.cones.order(),
            "is_hom": r.is_hom,
            "is_bijective": r.is_injective && r.is_surjective,
            "transpose_reverses_products": ta.transpose_reverses_products,
            "transpose_involutive": ta.transpose_involutive,
        }),
    ))
}

/// All of `GL(V)` when it has at most [`EPSILON_SAMPLES`] elements, else the
/// identity plus a seeded sample.
pub fn epsilon_family(field: Field, n: usize, seed: u64) -> xconn::Result<(Vec<Endo>, bool)> {
    let all = enumerate_automorphisms(field, n)?;
    if all.len() <= EPSILON_SAMPLES {
        return Ok((all, true));
    }
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = Endo::identity(field, n);
    let mut picked: Vec<Endo> = all
        .iter()
        .filter(|e| **e != id)
        .cloned()
        .collect::<Vec<_>>()
        .choose_multiple(&mut rng, EPSILON_SAMPLES - 1)
        .cloned()
        .collect();
    picked.push(id);
    picked.sort();
    Ok((picked, false))
}

/// Per `ε`: `S̃Γ_ε` order, first projection, second coordinates, covering,
/// local isomorphism, functoriality and χ.
pub fn cross_connections(sing: &std::sync::Arc<SingSemigroup>, seed: u64) -> xconn::Result<CheckResult> {
    let (field, n) = (sing.field(), sing.dim());
    let (family, exhaustive) = epsilon_family(field, n, seed)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for eps in &family {
        let s = build_cross_conn_semigroup_over(eps, sing.clone())?;
        let proj = s.projection_report()?;
        let c = gamma_eps(eps)?;
        let cover = verify_cross_connection(&c)?;
        let f1 = c.functoriality(Side::Gamma, FUNCTORIALITY_PAIRS, seed)?;
        let f2 = c.functoriality(Side::GammaStar, FUNCTORIALITY_PAIRS, seed)?;
        let chi = chi_report(&c, MembershipReading::Literal)?;
        let conj = conjugation_is_automorphism(sing, eps)?;
        let row_ok = s.order() == sing.order()
            && proj.is_isomorphism()
            && s.second_coordinates_consistent()
            && cover.passed()
            && f1.passed()
            && f2.passed()
            && chi.bijective
            && conj;
        ok &= row_ok;
        rows.push(json!({
            "epsilon": eps.label(),
            "order": s.order(),
            "projection_isomorphism": proj.is_isomorphism(),
            "second_coordinates": s.second_coordinates_consistent(),
            "covering": cover.covering_holds,
            "local_isomorphism": cover.inclusion_preserving && cover.hom_injective && cover.hom_bijective,
            "functorial": f1.passed() && f2.passed(),
            "chi_bijective": chi.bijective,
            "conjugation_automorphism": conj,
        }));
    }
    Ok(CheckResult::new(
        "cross_connections",
        ok,
        json!({"all_epsilon": exhaustive, "reading": MembershipReading::Literal.name(), "per_epsilon": rows}),
    ))
}

/// The null-semigroup amalgam: products as tabulated and a valid amalgam.
pub fn null_semigroup_amalgam() -> CheckResult {
    let a = null_semigroup_fixture();
    let report = verify_amalgam(&a);
    let z = 3;
    let product = |s: &FiniteSemigroup, x: &str, y: &str| {
        let idx = |l: &str| s.labels().iter().position(|m| m == l).expect("label");
        s.label(s.mul(idx(x), idx(y))).to_string()
    };
    let core_null = (0..4).all(|x| (0..4).all(|y| a.core.mul(x, y) == z));
    let s1 = &a.branches[0];
    let s2 = &a.branches[1];
    let tables = core_null
        && product(s1, "a", "u") == "v"
        && product(s1, "u", "a") == "v"
        && product(s2, "b", "v") == "w"
        && product(s2, "v", "b") == "w"
        && ["u", "v", "w", "z", "a"].iter().all(|x| {
            ["u", "v", "w", "z", "a"]
                .iter()
                .all(|y| matches!((*x, *y), ("a", "u") | ("u", "a")) || product(s1, x, y) == "z")
        })
        && ["u", "v", "w", "z", "b"].iter().all(|x| {
            ["u", "v", "w", "z", "b"]
                .iter()
                .all(|y| matches!((*x, *y), ("b", "v") | ("v", "b")) || product(s2, x, y) == "z")
        });
    CheckResult::new(
        "null_semigroup_amalgam",
        tables && report.valid,
        json!({"tables_match": tables, "valid": report.valid, "disjoint": report.disjoint}),
    )
}

/// Fiber dimensions used by `verify-all`: `(n, n, n+1)` when the larger
/// branch stays within the associativity guard, else `(n, n)`.
pub fn default_fiber_dims(field: Field, n: usize) -> Vec<usize> {
    if singular_count(field.p() as u128, n + 1) <= ASSOCIATIVITY_GUARD as u128 {
        vec![n, n, n + 1]
    } else {
        vec![n, n]
    }
}

pub fn bundle_amalgam(field: Field, dims: &[usize], m: usize) -> xconn::Result<CheckResult> {
    let k = *dims.iter().max().expect("nonempty");
    let spec = fiber_family(field, k, dims, None)?;
    let b = assemble_amalgam(&spec, Some(m), None)?;
    let orders: Vec<usize> = b.branches.iter().map(|s| s.order()).collect();
    let expected: Vec<u128> = dims.iter().map(|&d| singular_count(field.p() as u128, d)).collect();
    let ok = b.report.valid
        && b.core.semigroup.order() as u128 == singular_count(field.p() as u128, m)
        && orders.iter().map(|&o| o as u128).eq(expected.iter().copied());
    Ok(CheckResult::new(
        "bundle_amalgam",
        ok,
        json!({
            "fiber_dims": dims,
            "m": m,
            "core_order": b.core.semigroup.order(),
            "branch_orders": orders,
            "valid": b.report.valid,
            "disjoint": b.report.disjoint,
            "failing_branches": b.report.failing_branches,
        }),
    ))
}

/// Every check at `GF(p)^n`.
pub fn verify_all(field: Field, n: usize, seed: u64) -> xconn::Result<Report> {
    let sing = std::sync::Arc::new(SingSemigroup::build(field, n)?);
    let cat = SubspaceCategory::build(field, n)?;
    let mut checks = vec![
        sing_cardinality(field, n, &sing)?,
        sing_regular(&sing),
        green_structure(&sing),
        normal_factorization_check(&cat, FACTORIZATION_SAMPLES, seed),
    ];
    let mut skipped = Vec::new();
    match normal_cone_enumeration(&cat, &sing) {
        Ok((check, cones)) => {
            checks.push(check);
            match cone_semigroup_regular(&cat, cones, true) {
                Ok(c) => checks.push(c),
                Err(Error::GuardExceeded { .. }) => {
                    skipped.push("cone_semigroup_regular (exhaustive)".to_string());
                    let mut cones = principal_cones(&cat, &sing)?;
                    cones.sort();
                    checks.push(cone_semigroup_regular(&cat, cones, false)?);
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::GuardExceeded { .. }) => {
            skipped.push("normal_cone_enumeration".to_string());
            let mut cones = principal_cones(&cat, &sing)?;
            cones.sort();
            checks.push(cone_semigroup_regular(&cat, cones, false)?);
        }
        Err(e) => return Err(e),
    }
    checks.push(principal_cone_isomorphism(&cat, &sing)?);
    checks.push(m_sets(&cat, &sing)?);
    checks.push(annihilator_duality(field, n)?);
    checks.push(ta_anti_isomorphism(field, n)?);
    checks.push(cross_connections(&sing, seed)?);
    checks.push(null_semigroup_amalgam());
    checks.push(bundle_amalgam(field, &default_fiber_dims(field, n), n)?);
    Ok(Report::new(Some(field.p()), Some(n), checks, skipped))
}

/// Checks a Cayley table given as `{"elements":[...],"table":[[...]]}`.
pub fn verify_table(text: &str) -> Report {
    let parsed: Result<CayleyJson, _> = serde_json::from_str(text);
    let checks = match parsed {
        Err(e) => vec![CheckResult::new("cayley_table_wellformed", false, json!(e.to_string()))],
        Ok(cj) => match FiniteSemigroup::from_table(cj.elements, cj.table) {
            Ok(s) => vec![
                CheckResult::new("cayley_table_wellformed", true, Value::Null),
                CheckResult::new("cayley_table_associative", true, json!({"order": s.order()})),
            ],
            Err(Error::NotAssociative { a, b, c, witness }) => vec![
                CheckResult::new("cayley_table_wellformed", true, Value::Null),
                CheckResult::new(
                    "cayley_table_associative",
                    false,
                    json!({"triple": [witness.0, witness.1, witness.2], "labels": [a, b, c]}),
                ),
            ],
            Err(e) => vec![CheckResult::new("cayley_table_wellformed", false, json!(e.to_string()))],
        },
    };
    Report::new(None, None, checks, Vec::new())
}
