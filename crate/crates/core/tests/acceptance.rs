//! Exit criteria. Each test writes one `criterion N: PASS|FAIL` line to stderr.

use std::io::Write;

use braidcryst::algebra::{IntMatrix, Poly};
use braidcryst::bieberbach::{
    admits_anosov, betti_1, build_gn_tilde, center_rank, holonomy_matrix, is_kahler, is_orientable,
    manifold_report, verify_bieberbach,
};
use braidcryst::crystal::{
    conjugacy_test, is_crystallographic, Conjugacy, DEFAULT_ENUMERATION_CAP,
};
use braidcryst::families::{artin_pure_image, defining_relations, kb3_quotient, relator_check};
use braidcryst::oracle::{
    brute_conjugacy, brute_order, faithfulness_enum, BruteConjugacy, BruteOrder, NaiveGroup,
    NaivePoint,
};
use braidcryst::torsion::{realize_virtually_cyclic, torsion_certificate};
use braidcryst::{
    evaluate, parse, quotient, CrystalGroup, Element, Family, GenWord, Generator, Order,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Powers tried by the brute order oracle; every finite order in `S_3` divides 6.
const BRUTE_ORDER_CAP: u64 = 12;
/// `|x|_∞` bound for the brute conjugacy search.
const CONJUGACY_RADIUS: u32 = 4;
const RANDOM_PAIRS: usize = 200;
/// Coefficient bound for the PLB and KB3 grids.
const GRID: i64 = 3;

fn report(id: u32, name: &str, pass: bool, detail: impl std::fmt::Display) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr();
    let _ = writeln!(err, "criterion {id} ({name}): {verdict} - {detail}");
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn eval(g: &CrystalGroup, word: &str) -> Element {
    evaluate(&parse(word).unwrap(), g).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// All vectors of length `m` with entries in `-b..=b`.
fn grid(m: usize, b: i64) -> Vec<Vec<i64>> {
    let side = (2 * b + 1) as usize;
    (0..side.pow(m as u32))
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let d = (code % side) as i64 - b;
                    code /= side;
                    d
                })
                .collect()
        })
        .collect()
}

fn naive(g: &CrystalGroup) -> NaiveGroup {
    NaiveGroup::new(g.family(), g.n())
}

#[test]
fn criterion_01_presentation_audit() {
    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 2..=6 {
        for family in [Family::Vb, Family::Vt, Family::PlbExt] {
            let g = quotient(family, n).unwrap();
            for rel in defining_relations(family, n) {
                instances += 1;
                if !rel.holds_in(&g).unwrap() {
                    failures.push(format!("{family} n={n} {rel}"));
                }
            }
        }
    }
    report(
        1,
        "presentation audit",
        failures.is_empty() && instances > 0,
        format!(
            "{instances} relation instances, {} failures {:?}",
            failures.len(),
            failures.first()
        ),
    );
}

#[test]
fn criterion_02_crystallographic_verdicts() {
    let mut problems = Vec::new();
    let cases: Vec<(Family, usize)> = (2..=6)
        .flat_map(|n| [(Family::Vb, n), (Family::Vt, n)])
        .chain((2..=8).map(|n| (Family::PlbExt, n)))
        .collect();
    for &(family, n) in &cases {
        let g = quotient(family, n).unwrap();
        let engine = is_crystallographic(&g, DEFAULT_ENUMERATION_CAP).unwrap();
        let kernel = faithfulness_enum(&naive(&g)).unwrap();
        if !engine.faithful || !kernel.is_empty() {
            problems.push(format!("{family} n={n} not faithful"));
        }
    }
    let kb3 = kb3_quotient();
    let engine = is_crystallographic(&kb3, DEFAULT_ENUMERATION_CAP).unwrap();
    let kernel = faithfulness_enum(&naive(&kb3)).unwrap();
    // A_3 minus the identity: the two 3-cycles, as 0-based image tables
    let a3 = vec![
        NaivePoint::Perm(vec![1, 2, 0]),
        NaivePoint::Perm(vec![2, 0, 1]),
    ];
    if engine.faithful || kernel != a3 {
        problems.push(format!("kb3 kernel {kernel:?}"));
    }
    report(
        2,
        "crystallographic verdicts",
        problems.is_empty(),
        format!(
            "{} faithful quotients, kb3 kernel = A3; problems {:?}",
            cases.len(),
            problems
        ),
    );
}

/// Orbit sums as stated for consecutive `ρ` products: for each representative
/// `(r, s)`, `Σ_{i<t} ± a_{θ^{-i}(r), θ^{-i}(s)}`, with the sign and the sorted
/// pair used for unordered labels.
fn hypothesis_orbit_sums_vanish(
    g: &CrystalGroup,
    e: &Element,
    theta: &braidcryst::algebra::Perm,
) -> bool {
    let t = theta.order() as i64;
    let inv = theta.inverse();
    let signed = g.family() == Family::Vt;
    let mut seen = vec![false; g.rank()];
    for k in 0..g.rank() {
        if seen[k] {
            continue;
        }
        let (r, s) = g.labels()[k];
        let mut sum = BigInt::zero();
        let (mut a, mut b) = (r, s);
        for _ in 0..t {
            let (lo, hi, sign) = if signed && a > b {
                (b, a, -1)
            } else {
                (a, b, 1)
            };
            let idx = g.index_of(lo, hi).unwrap();
            seen[idx] = true;
            sum += &e.v[idx] * sign;
            (a, b) = (inv.apply(a), inv.apply(b));
        }
        if !sum.is_zero() {
            return false;
        }
    }
    true
}

#[test]
fn criterion_03_order_formula_vs_oracle() {
    let mut cases = 0;
    let mut hypothesis_cases = 0;
    let mut mismatches = Vec::new();
    for family in [Family::Vb, Family::Vt] {
        let g = quotient(family, 3).unwrap();
        let ng = naive(&g);
        let consecutive: Vec<(String, Element)> = ["r1", "r2", "r1 r2"]
            .iter()
            .map(|w| (w.to_string(), eval(&g, w)))
            .collect();
        for w in g.point_elements() {
            for v in grid(g.rank(), 1) {
                let e = Element::new(ints(&v), w.clone());
                let order = g.order(&e).unwrap();
                let brute = brute_order(&ng, &ng.from_element(&g, &e).unwrap(), BRUTE_ORDER_CAP);
                let cert = torsion_certificate(&g, &e).unwrap().order;
                let agree = match (order, brute) {
                    (Order::Finite(a), BruteOrder::Finite(b)) => a == b,
                    (Order::Infinite, BruteOrder::Unknown) => true,
                    _ => false,
                } && cert == order;
                if !agree {
                    mismatches.push(format!("{family} {e:?}: {order} vs {brute:?}"));
                }
                cases += 1;
                if let Some((_, rho)) = consecutive.iter().find(|(_, r)| r.w == w) {
                    hypothesis_cases += 1;
                    let theta = rho.w.as_perm().unwrap();
                    let predicted = hypothesis_orbit_sums_vanish(&g, &e, theta);
                    if predicted != (order == Order::Finite(theta.order())) {
                        mismatches.push(format!("{family} orbit-sum rule on {e:?}"));
                    }
                }
            }
        }
    }
    report(
        3,
        "order formula vs oracle",
        mismatches.is_empty() && cases >= 4000,
        format!(
            "{cases} elements, {hypothesis_cases} in the consecutive-rho class, {} discrepancies {:?}",
            mismatches.len(),
            mismatches.first()
        ),
    );
}

#[test]
fn criterion_04_rho_product_orders() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for family in [Family::Vb, Family::Vt] {
        for n in 3..=6 {
            let g = quotient(family, n).unwrap();
            let ng = naive(&g);
            for r in 1..=n - 2 {
                for t in 1..=n - 1 - r {
                    let word: Vec<String> = (r..=r + t).map(|i| format!("r{i}")).collect();
                    let e = eval(&g, &word.join(" "));
                    let expected = (t + 2) as u64;
                    let brute = brute_order(&ng, &ng.from_element(&g, &e).unwrap(), 2 * n as u64);
                    checked += 1;
                    if g.order(&e).unwrap() != Order::Finite(expected)
                        || brute != BruteOrder::Finite(expected)
                    {
                        bad.push(format!("{family} n={n} r={r} t={t}"));
                    }
                }
            }
        }
    }
    report(
        4,
        "rho-product orders",
        bad.is_empty(),
        format!("{checked} products, mismatches {bad:?}"),
    );
}

fn random_element(g: &CrystalGroup, rng: &mut StdRng, bound: i64) -> Element {
    let points = g.point_elements();
    let v: Vec<i64> = (0..g.rank())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    Element::new(ints(&v), points[rng.gen_range(0..points.len())].clone())
}

#[test]
fn criterion_05_conjugacy() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut problems = Vec::new();
    let mut conjugate_pairs = 0;
    for family in [Family::Vb, Family::Vt] {
        let g = quotient(family, 3).unwrap();
        let ng = naive(&g);
        let points = g.point_elements();
        for i in 0..RANDOM_PAIRS {
            let e1 = random_element(&g, &mut rng, 2);
            let e2 = if i % 2 == 0 {
                let conj = random_element(&g, &mut rng, 1);
                g.conjugate(&conj, &e1).unwrap()
            } else {
                // same cycle type, independent translation
                let c = &points[rng.gen_range(0..points.len())];
                let w = c.compose(&e1.w).unwrap().compose(&c.inverse()).unwrap();
                let mut e = random_element(&g, &mut rng, 2);
                e.w = w;
                e
            };
            let (n1, n2) = (
                ng.from_element(&g, &e1).unwrap(),
                ng.from_element(&g, &e2).unwrap(),
            );
            match conjugacy_test(&g, &e1, &e2).unwrap() {
                Conjugacy::Conjugate(w) => {
                    conjugate_pairs += 1;
                    let nw = ng.from_element(&g, &w).unwrap();
                    if g.conjugate(&w, &e1).unwrap() != e2 || ng.mul(&nw, &n1) != ng.mul(&n2, &nw) {
                        problems.push(format!("{family} witness rejected for pair {i}"));
                    }
                }
                Conjugacy::NotConjugate => {
                    if let BruteConjugacy::Witness(w) =
                        brute_conjugacy(&ng, &n1, &n2, CONJUGACY_RADIUS)
                    {
                        problems.push(format!("{family} NotConjugate contradicted by {w:?}"));
                    }
                }
            }
        }
    }

    // torsion pairs in VB_3 with coefficients in {-1, 0, 1}
    let g = quotient(Family::Vb, 3).unwrap();
    let torsion: Vec<Element> = g
        .point_elements()
        .into_iter()
        .flat_map(|w| {
            grid(g.rank(), 1)
                .into_iter()
                .map(move |v| Element::new(ints(&v), w.clone()))
        })
        .filter(|e| g.order(e).unwrap().is_finite())
        .collect();
    let mut torsion_mismatch = 0;
    for a in &torsion {
        for b in &torsion {
            let same_type =
                a.w.as_perm().unwrap().cycle_type() == b.w.as_perm().unwrap().cycle_type();
            let conj = conjugacy_test(&g, a, b).unwrap().witness().is_some();
            if same_type != conj {
                torsion_mismatch += 1;
            }
        }
    }
    if torsion_mismatch > 0 {
        problems.push(format!(
            "{torsion_mismatch} torsion pairs disagree with cycle types"
        ));
    }
    report(
        5,
        "conjugacy",
        problems.is_empty(),
        format!(
            "{} random pairs ({conjugate_pairs} conjugate), {} torsion elements / {} torsion pairs; problems {:?}",
            2 * RANDOM_PAIRS,
            torsion.len(),
            torsion.len() * torsion.len(),
            problems
        ),
    );
}

fn naive_pow(
    ng: &NaiveGroup,
    e: &braidcryst::oracle::NaiveElement,
    k: u64,
) -> braidcryst::oracle::NaiveElement {
    (0..k).fold(ng.identity(), |acc, _| ng.mul(&acc, e))
}

#[test]
fn criterion_06_virtually_cyclic_realization() {
    let mut verified = 0;
    let mut failed = Vec::new();
    for family in [Family::Vb, Family::Vt] {
        for n in 2..=6usize {
            for k in (1..n).filter(|k| n.gcd(k) == 1) {
                let r = match realize_virtually_cyclic(family, n, k) {
                    Ok(r) => r,
                    Err(e) => {
                        failed.push(format!("{family}({n},{k}): {e}"));
                        continue;
                    }
                };
                let g = quotient(family, n).unwrap();
                let ng = naive(&g);
                let a = ng.from_element(&g, &r.a).unwrap();
                let b = ng.from_element(&g, &r.b).unwrap();
                let order_n = ng.is_identity(&naive_pow(&ng, &a, n as u64))
                    && (1..n as u64).all(|j| !ng.is_identity(&naive_pow(&ng, &a, j)));
                let relation = ng.mul(&b, &a) == ng.mul(&naive_pow(&ng, &a, k as u64), &b);
                let t = r.b.w.order();
                let bt = naive_pow(&ng, &b, t);
                let infinite = bt.w == ng.identity().w && bt.v.iter().any(|&x| x != 0);
                if order_n && relation && infinite {
                    verified += 1;
                } else {
                    failed.push(format!("{family}({n},{k}): direct check failed"));
                }
            }
        }
    }
    report(
        6,
        "virtually cyclic realization",
        failed.is_empty(),
        format!("{verified} realizations verified, failing {failed:?}"),
    );
}

#[test]
fn criterion_07_bieberbach_suite() {
    let mut bad = Vec::new();
    for n in 2..=6 {
        let sub = build_gn_tilde(n).unwrap();
        let v = verify_bieberbach(&sub).unwrap();
        let m = holonomy_matrix(&sub).unwrap();
        let cyclic_of_order_n = (1..n as u32).all(|j| m.pow(j) != IntMatrix::identity(m.rows()))
            && m.pow(n as u32) == IntMatrix::identity(m.rows());
        let center = center_rank(&sub).unwrap().0;
        if !(v.is_bieberbach()
            && v.dimension == n * (n - 1)
            && v.holonomy_order == n
            && cyclic_of_order_n
            && center == n - 1)
        {
            bad.push(format!("n={n}: {v:?}, center {center}"));
        }
    }
    report(
        7,
        "Bieberbach suite",
        bad.is_empty(),
        format!("n = 2..6 torsion-free with holonomy Z_n and center rank n-1; failures {bad:?}"),
    );
}

/// `(x^n - 1)^{n-1}` by the binomial theorem.
fn expected_charpoly(n: usize) -> Poly {
    let e = n - 1;
    let mut coeffs = vec![BigInt::zero(); n * e + 1];
    let mut binom = BigInt::from(1);
    for j in 0..=e {
        let sign = if (e - j).is_multiple_of(2) { 1 } else { -1 };
        coeffs[n * j] = &binom * sign;
        binom = binom * (e - j) / (j + 1);
    }
    Poly::new(coeffs)
}

#[test]
fn criterion_08_manifold_invariants() {
    let mut bad = Vec::new();
    let mut formula = String::new();
    for n in 2..=8 {
        let sub = build_gn_tilde(n).unwrap();
        let report = manifold_report(n).unwrap();
        let ok = betti_1(&sub).unwrap() == n - 1
            && report.betti1 == n - 1
            && is_orientable(&sub).unwrap() == (n % 2 == 1)
            && is_kahler(&sub).unwrap().0 == (n % 2 == 1)
            && admits_anosov(&sub).unwrap().0 == (n >= 3)
            && report.charpoly == expected_charpoly(n);
        if !ok {
            bad.push(n);
        }
        if n == 8 {
            formula = report.betti1_formula.clone();
        }
    }
    report(
        8,
        "manifold invariants",
        bad.is_empty(),
        format!("n = 2..8, betti1 = n-1 (n=8: {formula}); failing n {bad:?}"),
    );
}

#[test]
fn criterion_09_relator_isomorphisms() {
    let mut bad = Vec::new();
    for n in 3..=6 {
        let vb = quotient(Family::Vb, n).unwrap();
        let vt = quotient(Family::Vt, n).unwrap();
        for arrow in [1, 4] {
            if !relator_check(&vb, arrow).unwrap().trivial {
                bad.push(format!("vb n={n} ({arrow})"));
            }
        }
        for arrow in [1, 3] {
            if !relator_check(&vt, arrow).unwrap().trivial {
                bad.push(format!("vt n={n} ({arrow})"));
            }
        }
        let five = relator_check(&vt, 5).unwrap();
        let expected_ok = !five.trivial
            && five.images.len() == n - 1
            && five.images.iter().all(|(i, e)| {
                let mut v = vt.zero_vector();
                v[vt.index_of(*i, i + 1).unwrap()] = BigInt::from(2);
                e.v == v && e.w.is_identity()
            });
        if !expected_ok {
            bad.push(format!("vt n={n} (5)"));
        }
    }
    report(
        9,
        "relator isomorphisms",
        bad.is_empty(),
        format!("n = 3..6; (5) in vt is (2e_{{i,i+1}}, 1); failures {bad:?}"),
    );
}

/// Conjugacy predicate for `α^a τ_k` versus `α^b τ_k`: entries `(i,k)` may
/// differ by an even number, all other entries agree.
fn stated_plb_predicate(g: &CrystalGroup, a: &[i64], b: &[i64], k: usize) -> bool {
    g.labels().iter().enumerate().all(|(idx, &(_, j))| {
        if j == k {
            (b[idx] - a[idx]) % 2 == 0
        } else {
            b[idx] == a[idx]
        }
    })
}

#[test]
fn criterion_10_plb_and_kb3_theorems() {
    let mut problems = Vec::new();

    // part 1: Π_r α_{r,k}^{a_r} τ_k has order 2
    let mut order_cases = 0;
    for n in 2..=4 {
        let g = quotient(Family::PlbExt, n).unwrap();
        let ng = naive(&g);
        for k in 1..=n {
            let sources: Vec<usize> = (1..=n).filter(|&r| r != k).collect();
            for a in grid(sources.len(), GRID) {
                let mut word = GenWord::empty();
                for (&r, &x) in sources.iter().zip(&a) {
                    word = word.then(Generator::Alpha(r, k), x);
                }
                let e = evaluate(&word.then(Generator::Tau(k), 1), &g).unwrap();
                order_cases += 1;
                let brute = brute_order(&ng, &ng.from_element(&g, &e).unwrap(), 4);
                if g.order(&e).unwrap() != Order::Finite(2) || brute != BruteOrder::Finite(2) {
                    problems.push(format!("plb n={n} order of {e:?}"));
                }
            }
        }
    }

    // part 2 for PLB on two strands: every vector with |a| <= GRID over every τ_k
    let g = quotient(Family::PlbExt, 2).unwrap();
    let mut plb_pairs = 0;
    let mut plb_mismatch = Vec::new();
    for k in 1..=2 {
        let tau = braidcryst::PointElement::signs_from(2, &[k]);
        let vectors = grid(g.rank(), GRID);
        for a in &vectors {
            for b in &vectors {
                plb_pairs += 1;
                let e1 = Element::new(ints(a), tau.clone());
                let e2 = Element::new(ints(b), tau.clone());
                let conj = conjugacy_test(&g, &e1, &e2).unwrap().witness().is_some();
                if conj != stated_plb_predicate(&g, a, b, k) {
                    plb_mismatch.push((k, a.clone(), b.clone(), conj));
                }
            }
        }
    }
    if !plb_mismatch.is_empty() {
        let (k, a, b, conj) = &plb_mismatch[0];
        problems.push(format!(
            "plb: {} of {plb_pairs} pairs disagree, first tau_{k} a={a:?} b={b:?} conjugate={conj}",
            plb_mismatch.len()
        ));
    }

    // KB3, both parts: δ_{1,2}^a δ_{1,3}^b ρ_r
    let kb = kb3_quotient();
    let nkb = naive(&kb);
    let mut kb_pairs = 0;
    for r in 1..=2 {
        let rho = eval(&kb, &format!("r{r}"));
        let vectors = grid(2, GRID);
        for a in &vectors {
            let e1 = kb.mul(&kb.translation(ints(a)).unwrap(), &rho).unwrap();
            let order2 = kb.order(&e1).unwrap() == Order::Finite(2)
                && brute_order(&nkb, &nkb.from_element(&kb, &e1).unwrap(), 4)
                    == BruteOrder::Finite(2);
            if order2 != (a[0] + a[1] == 0) {
                problems.push(format!("kb3 order of {a:?} r{r}"));
            }
            for b in &vectors {
                kb_pairs += 1;
                let e2 = kb.mul(&kb.translation(ints(b)).unwrap(), &rho).unwrap();
                let conj = conjugacy_test(&kb, &e1, &e2).unwrap().witness().is_some();
                if conj != (a[0] + a[1] == b[0] + b[1]) {
                    problems.push(format!("kb3 conjugacy {a:?} {b:?} r{r}"));
                }
            }
        }
    }
    report(
        10,
        "PLB-ext and KB3 theorems",
        problems.is_empty(),
        format!(
            "{order_cases} order-2 cases, {plb_pairs} PLB pairs, {kb_pairs} KB3 pairs; problems {:?}",
            problems
        ),
    );
}

#[test]
fn criterion_11_artin_embedding() {
    let mut bad = Vec::new();
    for n in 2..=6 {
        let g = quotient(Family::Vb, n).unwrap();
        let mut rows = Vec::new();
        for i in 1..n {
            for j in i + 1..=n {
                let mut prefix = GenWord::empty();
                for k in (i + 1..j).rev() {
                    prefix = prefix.then(Generator::Lambda(k, j), 1);
                }
                let word = prefix
                    .clone()
                    .then(Generator::Lambda(i, j), 1)
                    .then(Generator::Lambda(j, i), 1)
                    .concat(&prefix.inverse());
                let e = evaluate(&word, &g).unwrap();
                if e != artin_pure_image(&g, i, j).unwrap() || !e.w.is_identity() {
                    bad.push(format!("n={n} A[{i},{j}]"));
                }
                rows.push(e.v);
            }
        }
        let rank = IntMatrix::from_rows(rows).unwrap().rank();
        if rank != n * (n - 1) / 2 {
            bad.push(format!("n={n} rank {rank}"));
        }
    }
    report(
        11,
        "Artin embedding",
        bad.is_empty(),
        format!("n = 2..6 images span rank n(n-1)/2; failures {bad:?}"),
    );
}
