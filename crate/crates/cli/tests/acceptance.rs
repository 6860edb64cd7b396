//! Acceptance suite: one line per criterion, exact equality throughout.
//!
//! Each criterion recomputes its expected values on the test side (closed
//! forms, brute-force tables, hand-written matrix arithmetic) and compares
//! them against the library.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xconn::bundle::{assemble_amalgam, fiber_family, CORE_TAG};
use xconn::category::{
    brute_force_normal_cones, normal_factorization, principal_cone, principal_cones, ConeSemigroup,
    SubspaceCategory,
};
use xconn::crossconn::{build_cross_conn_semigroup_over, chi_report, gamma_eps, verify_cross_connection, MembershipReading};
use xconn::dual::{build_annihilator_category, build_ta_semigroup, iso_to_dual_subspace_category, m_set_comparisons};
use xconn::gf::{enumerate_automorphisms, Endo, Field, LinearMap};
use xconn::semigroup::{green_relations, null_semigroup_fixture, verify_amalgam, FiniteSemigroup};
use xconn::sing::SingSemigroup;

type Matrix = Vec<Vec<u8>>;

fn gf(p: u8) -> Field {
    Field::new(p).unwrap()
}

fn all_matrices(p: u8, n: usize) -> Vec<Matrix> {
    let total = (p as usize).pow((n * n) as u32);
    (0..total)
        .map(|mut idx| {
            let mut flat = vec![0u8; n * n];
            for slot in flat.iter_mut().rev() {
                *slot = (idx % p as usize) as u8;
                idx /= p as usize;
            }
            flat.chunks(n).map(<[u8]>::to_vec).collect()
        })
        .collect()
}

/// Rank by elimination mod p, written independently of the library.
fn rank(p: u8, m: &Matrix) -> usize {
    let p = p as u32;
    let mut rows: Vec<Vec<u32>> = m.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = (1..p).find(|&x| x * rows[r][c] % p == 1).unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn mat_mul(p: u8, a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| (row.iter().zip(b).map(|(x, r)| *x as u32 * r[j] as u32).sum::<u32>() % p as u32) as u8)
                .collect()
        })
        .collect()
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.first().map_or(0, Vec::len);
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

fn closed_form_singular(p: u128, n: u32) -> u128 {
    let pn = p.pow(n);
    p.pow(n * n) - (0..n).map(|i| pn - p.pow(i)).product::<u128>()
}

fn is_associative(s: &FiniteSemigroup) -> bool {
    let n = s.order();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)))))
}

fn is_regular_by_table(s: &FiniteSemigroup) -> bool {
    let n = s.order();
    (0..n).all(|a| (0..n).any(|x| s.mul(s.mul(a, x), a) == a))
}

fn s1_left(s: &FiniteSemigroup, a: usize) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = (0..s.order()).map(|x| s.mul(x, a)).collect();
    set.insert(a);
    set
}

fn s1_right(s: &FiniteSemigroup, a: usize) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = (0..s.order()).map(|x| s.mul(a, x)).collect();
    set.insert(a);
    set
}

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    for (p, n, expected) in [(2u8, 2usize, 10usize), (3, 2, 33), (2, 3, 344)] {
        let closed = closed_form_singular(p as u128, n as u32) as usize;
        let brute = all_matrices(p, n).iter().filter(|m| rank(p, m) < n).count();
        let sing = SingSemigroup::build(gf(p), n).map_err(|e| e.to_string())?;
        let ours: BTreeSet<Matrix> = sing.elements().iter().map(|e| e.rows().to_vec()).collect();
        let oracle: BTreeSet<Matrix> = all_matrices(p, n).into_iter().filter(|m| rank(p, m) < n).collect();
        ensure(
            closed == expected && brute == expected && sing.order() == expected && ours == oracle,
            || format!("GF({p})^{n}: closed {closed}, brute {brute}, library {}", sing.order()),
        )?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let sing = SingSemigroup::build(gf(2), 2).map_err(|e| e.to_string())?;
    let s = sing.semigroup();
    let idem = sing.elements().iter().filter(|e| mat_mul(2, &e.rows().to_vec(), &e.rows().to_vec()) == e.rows()).count();
    ensure(is_regular_by_table(s) && s.is_regular(), || "Sing not regular".into())?;
    ensure(idem == 7 && s.idempotents().len() == 7, || format!("{idem} idempotents"))?;
    let cat = SubspaceCategory::build(gf(2), 2).map_err(|e| e.to_string())?;
    let cones = brute_force_normal_cones(&cat).map_err(|e| e.to_string())?;
    let ts = ConeSemigroup::from_cones(&cat, cones, true).map_err(|e| e.to_string())?;
    ensure(is_regular_by_table(ts.semigroup()) && ts.semigroup().is_regular(), || "TS not regular".into())
}

fn criterion_3() -> Outcome {
    let sing = SingSemigroup::build(gf(2), 2).map_err(|e| e.to_string())?;
    let s = sing.semigroup();
    let g = green_relations(s);
    ensure(g.d_classes.len() == 2, || format!("{} D-classes", g.d_classes.len()))?;
    let rank_one: BTreeSet<usize> = (0..s.order()).filter(|&i| sing.element(i).rank() == 1).collect();
    let d1 = g
        .d_classes
        .iter()
        .find(|d| d.iter().any(|i| rank_one.contains(i)))
        .ok_or("no rank-1 class")?;
    let d1: BTreeSet<usize> = d1.iter().copied().collect();
    ensure(d1 == rank_one, || "rank-1 D-class mismatch".into())?;
    let ls = g.l_classes.iter().filter(|c| d1.contains(&c[0])).count();
    let rs = g.r_classes.iter().filter(|c| d1.contains(&c[0])).count();
    let hs: Vec<usize> = g.h_classes.iter().filter(|c| d1.contains(&c[0])).map(Vec::len).collect();
    ensure(ls == 3 && rs == 3 && hs.len() == 9 && hs.iter().all(|&h| h == 1), || {
        format!("eggbox {rs}x{ls}, H sizes {hs:?}")
    })?;
    let l_id = xconn::semigroup::class_ids(s.order(), &g.l_classes);
    let r_id = xconn::semigroup::class_ids(s.order(), &g.r_classes);
    for a in 0..s.order() {
        for b in 0..s.order() {
            let (ea, eb) = (sing.element(a), sing.element(b));
            let l_table = s1_left(s, a) == s1_left(s, b);
            let r_table = s1_right(s, a) == s1_right(s, b);
            let same_image = ea.image() == eb.image();
            let same_kernel = ea.kernel() == eb.kernel();
            ensure(l_table == same_image && (l_id[a] == l_id[b]) == same_image, || format!("L at ({a},{b})"))?;
            ensure(r_table == same_kernel && (r_id[a] == r_id[b]) == same_kernel, || format!("R at ({a},{b})"))?;
        }
    }
    Ok(())
}

fn factorization_ok(f: &LinearMap) -> bool {
    let nf = normal_factorization(f);
    let j = LinearMap::inclusion(nf.retraction.cod(), f.dom()).expect("coimage lies in domain");
    nf.recompose() == *f
        && nf.retraction.then(&nf.iso).and_then(|x| x.then(&nf.inclusion)).ok().as_ref() == Some(f)
        && nf.iso.is_iso()
        && j.then(&nf.retraction).map(|x| x.is_identity()).unwrap_or(false)
}

fn criterion_4() -> Outcome {
    let cat = SubspaceCategory::build(gf(2), 2).map_err(|e| e.to_string())?;
    let mut exhaustive = 0;
    for i in 0..cat.len() {
        for j in 0..cat.len() {
            for f in cat.hom(i, j) {
                ensure(factorization_ok(&f), || format!("{f:?}"))?;
                exhaustive += 1;
            }
        }
    }
    // zero maps into and out of 0, plus two maps between any pair of lines
    ensure(exhaustive == 4 + 3 + 9 * 2, || format!("{exhaustive} morphisms"))?;
    let cat3 = SubspaceCategory::build(gf(2), 3).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let a = cat3.object(rng.gen_range(0..cat3.len()));
        let b = cat3.object(rng.gen_range(0..cat3.len()));
        let f = LinearMap::random(&mut rng, a, b);
        ensure(factorization_ok(&f), || format!("{f:?}"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let cat = SubspaceCategory::build(gf(2), 2).map_err(|e| e.to_string())?;
    let sing = SingSemigroup::build(gf(2), 2).map_err(|e| e.to_string())?;
    let normal = brute_force_normal_cones(&cat).map_err(|e| e.to_string())?;
    let principal = principal_cones(&cat, &sing).map_err(|e| e.to_string())?;
    let principal_set: BTreeSet<_> = principal.iter().cloned().collect();
    let mut problems = Vec::new();
    for a in sing.elements() {
        for b in sing.elements() {
            let lhs = xconn::category::cone_compose(&cat, &principal_cone(&cat, a).unwrap(), &principal_cone(&cat, b).unwrap())
                .map_err(|e| e.to_string())?;
            if lhs != principal_cone(&cat, &a.mul(b)).unwrap() {
                problems.push(format!("rho({})rho({}) != rho of product", a.label(), b.label()));
            }
        }
    }
    if principal_set.len() != 10 {
        problems.push(format!("{} distinct principal cones", principal_set.len()));
    }
    if normal.len() != 10 {
        let extra = normal.iter().filter(|c| !principal_set.contains(c)).count();
        problems.push(format!("{} normal cones, {extra} not principal", normal.len()));
        if problems.len() == 1 {
            problems.push("rho is an injective homomorphism onto the 10 principal cones".into());
        }
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn criterion_6() -> Outcome {
    let cat = SubspaceCategory::build(gf(2), 2).map_err(|e| e.to_string())?;
    let sing = SingSemigroup::build(gf(2), 2).map_err(|e| e.to_string())?;
    let rows = m_set_comparisons(&cat, &sing).map_err(|e| e.to_string())?;
    ensure(rows.len() == 7, || format!("{} idempotents", rows.len()))?;
    for e in sing.elements().iter().filter(|e| e.is_idempotent()) {
        let cone = principal_cone(&cat, e).unwrap();
        let iso: Vec<usize> = (0..cat.len()).filter(|&i| cone.component(i).is_iso()).collect();
        let ker = e.kernel();
        let direct: Vec<usize> = (0..cat.len())
            .filter(|&i| {
                let a = cat.object(i);
                a.intersection(&ker).is_zero() && a.dim() + ker.dim() == 2
            })
            .collect();
        ensure(iso == direct, || format!("{}: {iso:?} vs {direct:?}", e.label()))?;
        let row = rows.iter().find(|r| r.idempotent == e.label()).ok_or("missing idempotent")?;
        ensure(row.agrees() && row.iso_objects == iso, || format!("library disagrees for {}", e.label()))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let av = build_annihilator_category(gf(2), 2).map_err(|e| e.to_string())?;
    let report = iso_to_dual_subspace_category(&av).map_err(|e| e.to_string())?;
    ensure(report.passed() && report.composition_preserved == Some(true), || format!("{report:?}"))?;
    // one object per nonzero A, each a proper subspace of the dual
    let objects_ok = |av: &xconn::dual::AnnihilatorCategory, n: usize| {
        let distinct: BTreeSet<_> = av.objects().iter().collect();
        distinct.len() == av.len()
            && (0..av.len()).all(|i| {
                let (a, y) = (av.primal(i), av.object(i));
                !a.is_zero() && y.dim() < n && a.dim() + y.dim() == n && a.annihilator() == *y
            })
    };
    ensure(av.len() == 4 && objects_ok(&av, 2), || format!("{} objects at (2,2)", av.len()))?;
    let av3 = build_annihilator_category(gf(2), 3).map_err(|e| e.to_string())?;
    ensure(av3.len() == 15 && objects_ok(&av3, 3), || format!("{} objects at (2,3)", av3.len()))?;
    let r3 = iso_to_dual_subspace_category(&av3).map_err(|e| e.to_string())?;
    ensure(r3.objects == 15 && r3.object_bijection, || format!("{r3:?}"))?;
    let ta = build_ta_semigroup(gf(2), 2).map_err(|e| e.to_string())?;
    ensure(
        ta.anti_isomorphism.is_isomorphism() && ta.transpose_reverses_products && ta.transpose_involutive,
        || "transpose anti-isomorphism fails".into(),
    )?;
    let sing = all_matrices(2, 2).into_iter().filter(|m| rank(2, m) < 2).collect::<Vec<_>>();
    for a in &sing {
        for b in &sing {
            ensure(transpose(&mat_mul(2, a, b)) == mat_mul(2, &transpose(b), &transpose(a)), || {
                format!("{a:?} {b:?}")
            })?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let gl: Vec<Endo> = enumerate_automorphisms(gf(2), 2).map_err(|e| e.to_string())?;
    let oracle_gl = all_matrices(2, 2).into_iter().filter(|m| rank(2, m) == 2).count();
    ensure(gl.len() == 6 && oracle_gl == 6, || format!("|GL| = {}", gl.len()))?;
    let sing = Arc::new(SingSemigroup::build(gf(2), 2).map_err(|e| e.to_string())?);
    for eps in &gl {
        let s = build_cross_conn_semigroup_over(eps, sing.clone()).map_err(|e| e.to_string())?;
        let t = s.semigroup();
        ensure(s.order() == 10 && is_associative(t), || format!("{}: order {}", eps.label(), s.order()))?;
        let firsts: BTreeSet<Matrix> = s.elements().iter().map(|x| x.first.rows().to_vec()).collect();
        let sing_set: BTreeSet<Matrix> = sing.elements().iter().map(|e| e.rows().to_vec()).collect();
        ensure(firsts == sing_set, || format!("{}: first projection not bijective", eps.label()))?;
        for x in 0..t.order() {
            for y in 0..t.order() {
                let lhs = s.elements()[t.mul(x, y)].first.rows().to_vec();
                let rhs = mat_mul(2, &s.elements()[x].first.rows().to_vec(), &s.elements()[y].first.rows().to_vec());
                ensure(lhs == rhs, || format!("{}: projection not multiplicative", eps.label()))?;
            }
        }
        ensure(s.projection_report().map(|r| r.is_isomorphism()).unwrap_or(false), || {
            format!("{}: projection report", eps.label())
        })?;
        let c = gamma_eps(eps).map_err(|e| e.to_string())?;
        let cover = verify_cross_connection(&c).map_err(|e| e.to_string())?;
        ensure(cover.covering_holds, || format!("{}: covering", eps.label()))?;
        let chi = chi_report(&c, MembershipReading::Literal).map_err(|e| e.to_string())?;
        ensure(chi.bijective && chi.pairs > 0, || format!("{}: chi {:?}", eps.label(), chi.failures.len()))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let a = null_semigroup_fixture();
    let expected = |extra: &str, hit: &str, out: &str, x: &str, y: &str| -> String {
        if (x == extra && y == hit) || (x == hit && y == extra) {
            out.to_string()
        } else {
            "z".to_string()
        }
    };
    for (branch, extra, hit, out) in [(0, "a", "u", "v"), (1, "b", "v", "w")] {
        let s = &a.branches[branch];
        for x in 0..s.order() {
            for y in 0..s.order() {
                let want = expected(extra, hit, out, s.label(x), s.label(y));
                ensure(s.label(s.mul(x, y)) == want, || {
                    format!("{}{} should be {want}", s.label(x), s.label(y))
                })?;
            }
        }
    }
    let core = &a.core;
    ensure((0..4).all(|x| (0..4).all(|y| core.label(core.mul(x, y)) == "z")), || "core not null".into())?;
    ensure(verify_amalgam(&a).valid, || "amalgam invalid".into())
}

fn criterion_10() -> Outcome {
    let spec = fiber_family(gf(2), 3, &[2, 2, 3], None).map_err(|e| e.to_string())?;
    let b = assemble_amalgam(&spec, Some(2), None).map_err(|e| e.to_string())?;
    let core = b.core.semigroup.semigroup();
    ensure(core.order() == 10, || format!("core order {}", core.order()))?;
    let orders: Vec<usize> = b.branches.iter().map(|s| s.order()).collect();
    ensure(orders == [10, 10, 344], || format!("branch orders {orders:?}"))?;
    ensure(b.embeddings.len() == 3, || "embedding count".into())?;
    for (i, phi) in b.embeddings.iter().enumerate() {
        let target = b.branches[i].semigroup();
        let image: BTreeSet<usize> = phi.map().iter().copied().collect();
        ensure(image.len() == 10, || format!("phi{i} not injective"))?;
        let mut pairs = 0;
        for x in 0..10 {
            for y in 0..10 {
                ensure(phi.map()[core.mul(x, y)] == target.mul(phi.map()[x], phi.map()[y]), || {
                    format!("phi{i} fails at ({x},{y})")
                })?;
                pairs += 1;
            }
        }
        ensure(pairs == 100, || "pair count".into())?;
    }
    let mut tags: Vec<&str> = vec![b.amalgam.core_tag.as_str()];
    tags.extend(b.amalgam.branch_tags.iter().map(String::as_str));
    let distinct: BTreeSet<&str> = tags.iter().copied().collect();
    ensure(tags[0] == CORE_TAG && distinct.len() == 4, || format!("tags {tags:?}"))?;
    ensure(b.report.valid && b.report.disjoint, || "amalgam report".into())
}

fn criterion_11() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_xconn"))
            .args(["verify-all", "--field", "2", "--dim", "2"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.stdout.is_empty(), || "empty report".into())?;
    serde_json::from_slice::<serde_json::Value>(&a.stdout).map_err(|e| e.to_string())?;
    ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || "reports differ".into())
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {n}: PASS ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2}s) {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
