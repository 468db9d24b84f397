//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::collections::BTreeSet;
use std::process::ExitCode;

use monomideal::cellres::{
    betti_formulas, boundary_maps, build_complex, face_cycle_matrix, incidence_matrix, is_acyclic, label_lcm_closure,
    multigraded_betti_oracle, restrict_complex, verify_resolution,
};
use monomideal::exactlinalg::{rank, RationalMatrix};
use monomideal::ferrers::{
    alexander_dual, complement_edge_ideal, ferrers_dual_primary_decomposition, ferrers_ideal, intersect_components,
    is_irredundant, strongly_stable_from_partition, BipartiteGraph, Partition, PrimeComponent,
};
use monomideal::fiber::{
    fiber_dimension, relations_among, symmetric_minors, toric_relations, verify_fiber_isomorphism,
};
use monomideal::sampling::{random_equigenerated, random_ideal, IdealShape};
use monomideal::text::{parse_ideal, parse_monomial, VarNames};
use monomideal::{Monomial, MonomialIdeal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn plain(s: &str) -> MonomialIdeal {
    parse_ideal(s, None, &VarNames::Plain).expect("valid ideal text")
}

fn plain_in(s: &str, n: usize) -> MonomialIdeal {
    parse_ideal(s, Some(n), &VarNames::Plain).expect("valid ideal text")
}

fn worked_examples() -> Check {
    let dual = plain("x1^3, x1^2*x2^2, x2^4").lcm_dual().map_err(|e| e.to_string())?;
    ensure(dual == plain("x1^3, x1*x2^2, x2^4"), || format!("dual of (x^3, x^2y^2, y^4) is {dual}"))?;

    let h1 = plain("x1^2, x1*x2, x1*x3");
    let back = h1.lcm_dual().and_then(|d| d.lcm_dual()).map_err(|e| e.to_string())?;
    ensure(back == plain("x1, x2, x3"), || format!("double dual of the height-1 example is {back}"))?;

    let lambda = Partition::new(vec![4, 4, 3]).unwrap();
    let ss = strongly_stable_from_partition(&lambda).map_err(|e| e.to_string())?;
    let listed = plain(
        "x2^2*x3^2*x4, x1*x2*x3^2*x4, x1*x2^2*x3*x4, x1*x2^2*x3^2, \
         x1^2*x3^2*x4, x1^2*x2*x3*x4, x1^2*x2*x3^2, x1^2*x2^2*x4",
    );
    let ss_dual = ss.lcm_dual().map_err(|e| e.to_string())?;
    ensure(ss_dual == listed && listed.len() == 8, || format!("dual of the (4,4,3) ideal is {ss_dual}"))?;
    ensure(listed.equigenerated_degree() == Some(5), || "listed generators are not of degree 5".into())?;

    let i = plain("x1^3, x1*x2, x2^2");
    let dual_sq = i.lcm_dual().and_then(|d| d.product(&d)).map_err(|e| e.to_string())?;
    let sq_dual = i.product(&i).and_then(|s| s.lcm_dual()).map_err(|e| e.to_string())?;
    ensure(dual_sq == plain("x1^6, x1^5*x2, x1^3*x2^2, x1^2*x2^3, x2^4"), || format!("(dual I)^2 = {dual_sq}"))?;
    ensure(sq_dual == plain("x1^6, x1^5*x2, x1^4*x2^2, x1^2*x2^3, x2^4"), || format!("dual(I^2) = {sq_dual}"))?;
    let witness = parse_monomial("x1^3*x2^2", 2, &VarNames::Plain).unwrap();
    ensure(dual_sq.contains_ideal(&sq_dual) && dual_sq != sq_dual, || {
        "(dual I)^2 does not strictly contain dual(I^2)".into()
    })?;
    ensure(dual_sq.contains(&witness) == Ok(true) && sq_dual.contains(&witness) == Ok(false), || {
        "x^3y^2 does not separate the two ideals".into()
    })?;
    Ok("4 worked examples reproduced".into())
}

fn double_dual_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00d0_0b1e);
    let shape = IdealShape { max_vars: 5, max_exponent: 5, max_generators: 8 };
    let (mut tall, mut short, mut short_violations) = (0, 0, 0);
    for k in 0..500 {
        let i = random_ideal(&mut rng, shape);
        let height = i.height().map_err(|e| e.to_string())?.height;
        let back = i.lcm_dual().and_then(|d| d.lcm_dual()).map_err(|e| e.to_string())?;
        if height >= 2 {
            tall += 1;
            ensure(back == i, || format!("sample {k}: double dual of {i} is {back}"))?;
        } else {
            short += 1;
            if back != i {
                short_violations += 1;
            }
        }
    }
    ensure(short_violations > 0, || "no height-1 sample violated the law".into())?;
    Ok(format!("{tall} height>=2 ideals restored; {short_violations}/{short} height-1 ideals violate"))
}

fn product_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0070_d0c7);
    for k in 0..200 {
        let n = rng.gen_range(1..=4);
        let (di, dj) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let i = random_equigenerated(&mut rng, n, di, 5);
        let j = random_equigenerated(&mut rng, n, dj, 5);
        let lhs = i.product(&j).and_then(|p| p.lcm_dual()).map_err(|e| e.to_string())?;
        let rhs = i.lcm_dual().and_then(|a| a.product(&j.lcm_dual()?)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("pair {k}: I = {i}, J = {j}: {lhs} != {rhs}"))?;
    }
    Ok("200 equigenerated pairs".into())
}

fn ferrers_decomposition() -> Check {
    let partitions = Partition::all_within(4, 5);
    for lambda in &partitions {
        let ctx = |what: &str| format!("λ = {lambda}: {what}");
        let n = lambda.m() + lambda.n();
        let components = ferrers_dual_primary_decomposition(lambda);
        let graph = BipartiteGraph::ferrers(lambda).to_simple();
        let complement: BTreeSet<PrimeComponent> =
            graph.complement().edges().iter().map(|&(a, b)| PrimeComponent::new([a, b])).collect();
        let listed: BTreeSet<PrimeComponent> = components.iter().cloned().collect();
        ensure(listed.len() == components.len() && is_irredundant(&components), || ctx("components repeat"))?;
        ensure(listed == complement, || ctx("components differ from the complement's edges"))?;

        let intersection = intersect_components(&components, n).map_err(|e| ctx(&e.to_string()))?;
        let dual = ferrers_ideal(lambda).lcm_dual().map_err(|e| ctx(&e.to_string()))?;
        let alexander = alexander_dual(&complement_edge_ideal(&graph)).map_err(|e| ctx(&e.to_string()))?;
        ensure(intersection == dual, || ctx(&format!("intersection {intersection} != dual {dual}")))?;
        ensure(alexander == dual, || ctx(&format!("Alexander dual {alexander} != dual {dual}")))?;
    }
    Ok(format!("{} partitions, four-way equality", partitions.len()))
}

fn cellular_resolution() -> Check {
    let partitions: Vec<Partition> =
        Partition::all_within(4, 6).into_iter().filter(Partition::supports_strongly_stable).collect();
    for lambda in &partitions {
        let ctx = |what: String| format!("λ = {lambda}: {what}");
        let x = build_complex(lambda).map_err(|e| ctx(e.to_string()))?;
        let c = boundary_maps(&x).map_err(|e| ctx(e.to_string()))?;
        let (nu, eps, f) = x.counts();
        ensure(c.vanishes_numerically(&c.first_primes_substitution()).map_err(|e| ctx(e.to_string()))?, || {
            ctx("d1 d2 != 0 after prime substitution".into())
        })?;
        let a = incidence_matrix(&x);
        let cf = face_cycle_matrix(&x);
        ensure(c.d1.sign_pattern() == a, || ctx("sign pattern of d1 != A(G)".into()))?;
        ensure(c.d2.sign_pattern() == cf, || ctx("sign pattern of d2 != C_f".into()))?;
        ensure(rank(&a) == nu - 1, || ctx(format!("rank A = {} != ν - 1", rank(&a))))?;
        ensure(rank(&cf) == eps + 1 - nu, || ctx(format!("rank C_f = {} != ε - ν + 1", rank(&cf))))?;
        ensure(f == eps + 1 - nu, || ctx("face count violates Euler".into()))?;
        for b in label_lcm_closure(&x) {
            ensure(is_acyclic(&restrict_complex(&x, &b)), || ctx(format!("X_<=b not acyclic for b = {b}")))?;
        }

        let summary = verify_resolution(lambda).map_err(|e| ctx(e.to_string()))?;
        let formulas = betti_formulas(lambda);
        let ideal = strongly_stable_from_partition(lambda).map_err(|e| ctx(e.to_string()))?;
        let oracle = multigraded_betti_oracle(&ideal.lcm_dual().map_err(|e| ctx(e.to_string()))?)
            .map_err(|e| ctx(e.to_string()))?;
        let mut oracle_totals = oracle.totals();
        oracle_totals.resize(3, 0);
        ensure(summary.betti == formulas.betti, || {
            ctx(format!("{:?} != formulas {:?}", summary.betti, formulas.betti))
        })?;
        ensure(oracle_totals == summary.betti.to_vec(), || ctx(format!("oracle totals {oracle_totals:?}")))?;
        for k in 0..3 {
            if summary.betti[k] > 0 {
                ensure(oracle.shifts(k + 1) == summary.shifts[k], || ctx(format!("oracle shifts at {}", k + 1)))?;
            }
        }

        let deg = x.m_i().degree();
        let expected_shifts = [vec![deg - 2], vec![deg - 1], vec![deg]];
        for (k, expected) in expected_shifts.iter().enumerate() {
            ensure(summary.betti[k] == 0 || summary.shifts[k] == *expected, || ctx(format!("shift at {}", k + 1)))?;
        }
        ensure(summary.is_linear, || ctx("resolution is not linear".into()))?;
        if lambda.m() > 1 && f > 0 {
            let reg = (lambda.n() + lambda.m()) as i64 - 3;
            ensure(summary.regularity == reg, || ctx(format!("regularity {}", summary.regularity)))?;
            ensure(summary.projective_dimension == 3, || ctx("pd != 3".into()))?;
        }
    }
    Ok(format!("{} partitions with m <= 4, λ1 <= 6", partitions.len()))
}

fn golden_example() -> Check {
    let lambda = Partition::new(vec![4, 4, 3]).unwrap();
    let x = build_complex(&lambda).map_err(|e| e.to_string())?;
    let c = boundary_maps(&x).map_err(|e| e.to_string())?;
    let d1 = [
        ["x1", "0", "0", "0", "0", "0", "0", "0", "0"],
        ["-x2", "x2", "0", "x1", "0", "0", "0", "0", "0"],
        ["0", "-x3", "x3", "0", "x1", "0", "0", "0", "0"],
        ["0", "0", "-x4", "0", "0", "x1", "0", "0", "0"],
        ["0", "0", "0", "-x2", "0", "0", "x2", "0", "0"],
        ["0", "0", "0", "0", "-x2", "0", "-x3", "x3", "x2"],
        ["0", "0", "0", "0", "0", "-x2", "0", "-x4", "0"],
        ["0", "0", "0", "0", "0", "0", "0", "0", "-x3"],
    ];
    let d2 = [
        ["0", "0"],
        ["x1", "0"],
        ["0", "x1"],
        ["-x2", "0"],
        ["x3", "-x3"],
        ["0", "x4"],
        ["-x2", "0"],
        ["0", "-x2"],
        ["0", "0"],
    ];
    let a = [
        [1, 0, 0, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 1, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 1, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, -1, 0, -1, 1, 1],
        [0, 0, 0, 0, 0, -1, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, -1],
    ];
    let cf = [[0, 0], [1, 0], [0, 1], [-1, 0], [1, -1], [0, 1], [-1, 0], [0, -1], [0, 0]];
    let as_strings = |rows: &[&[&str]]| -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    };
    let to_matrix = |rows: Vec<Vec<i64>>| RationalMatrix::from_rows(&rows).unwrap();

    let got_d1 = c.d1.format(&VarNames::Plain);
    let got_d2 = c.d2.format(&VarNames::Plain);
    ensure(got_d1 == as_strings(&d1.iter().map(|r| &r[..]).collect::<Vec<_>>()), || format!("∂1 = {got_d1:?}"))?;
    ensure(got_d2 == as_strings(&d2.iter().map(|r| &r[..]).collect::<Vec<_>>()), || format!("∂2 = {got_d2:?}"))?;
    ensure(incidence_matrix(&x) == to_matrix(a.iter().map(|r| r.to_vec()).collect()), || "A(G) differs".into())?;
    ensure(face_cycle_matrix(&x) == to_matrix(cf.iter().map(|r| r.to_vec()).collect()), || "C_f differs".into())?;
    let summary = verify_resolution(&lambda).map_err(|e| e.to_string())?;
    ensure(summary.betti == [8, 9, 2], || format!("betti {:?}", summary.betti))?;
    ensure(summary.shifts == [vec![5], vec![6], vec![7]], || format!("shifts {:?}", summary.shifts))?;
    ensure(summary.regularity == 4, || format!("regularity {}", summary.regularity))?;
    Ok("∂1, ∂2, A(G), C_f entry-for-entry; β = (8,9,2) at (5,6,7); reg 4".into())
}

fn fiber_isomorphism() -> Check {
    let partitions: Vec<Partition> =
        Partition::all_within(3, 4).into_iter().filter(Partition::supports_strongly_stable).collect();
    for lambda in &partitions {
        let ctx = |what: String| format!("λ = {lambda}: {what}");
        let ideal = strongly_stable_from_partition(lambda).map_err(|e| ctx(e.to_string()))?;
        let dual_gens = ideal.dual_generators().map_err(|e| ctx(e.to_string()))?;
        for r in 1..=3 {
            ensure(toric_relations(&ideal, r) == relations_among(&dual_gens, r), || ctx(format!("degree {r}")))?;
        }
        if lambda.m() >= 2 {
            let cmp = verify_fiber_isomorphism(&ideal, 3).map_err(|e| ctx(e.to_string()))?;
            ensure(cmp.is_isomorphic(), || ctx(format!("mismatch in degree {:?}", cmp.first_mismatch())))?;
        }
        let dual = ideal.lcm_dual().map_err(|e| ctx(e.to_string()))?;
        let dims = (
            fiber_dimension(&ideal).map_err(|e| ctx(e.to_string()))?,
            fiber_dimension(&dual).map_err(|e| ctx(e.to_string()))?,
        );
        ensure(dims == (lambda.n(), lambda.n()), || ctx(format!("fiber dimensions {dims:?}")))?;
        let minors = symmetric_minors(lambda).map_err(|e| ctx(e.to_string()))?;
        let from_minors = minors.index_relations(&ideal).ok_or_else(|| ctx("minor entry outside I".into()))?;
        ensure(from_minors == toric_relations(&ideal, 2), || ctx("minors != degree-2 relations".into()))?;
    }
    Ok(format!("{} partitions with m <= 3, λ1 <= 4, through degree 3", partitions.len()))
}

fn oracle_independence() -> Check {
    let koszul = multigraded_betti_oracle(&plain("x1, x2")).map_err(|e| e.to_string())?;
    let x = |k| Monomial::var(2, k);
    let expected: Vec<((usize, Monomial), usize)> = vec![((1, x(0)), 1), ((1, x(1)), 1), ((2, x(0).mul(&x(1))), 1)];
    ensure(koszul.entries.clone().into_iter().collect::<Vec<_>>() == expected, || {
        format!("(x,y): {:?}", koszul.entries)
    })?;
    ensure(koszul.totals() == vec![2, 1], || "(x,y) totals".into())?;

    let square = multigraded_betti_oracle(&plain_in("x1^2, x1*x2, x2^2", 2)).map_err(|e| e.to_string())?;
    ensure(square.totals() == vec![3, 2], || format!("(x^2,xy,y^2) totals {:?}", square.totals()))?;
    ensure(square.shifts(1) == vec![2] && square.shifts(2) == vec![3], || "(x^2,xy,y^2) shifts".into())?;
    Ok("Koszul (x,y) and (x^2,xy,y^2) reproduced".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked examples", worked_examples),
        ("double-dual law", double_dual_law),
        ("product law", product_law),
        ("Ferrers decomposition", ferrers_decomposition),
        ("cellular resolution", cellular_resolution),
        ("(4,4,3) golden matrices", golden_example),
        ("fiber isomorphism", fiber_isomorphism),
        ("oracle independence", oracle_independence),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
