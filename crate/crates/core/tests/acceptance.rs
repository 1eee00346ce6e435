//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use middle_cube::algebra::{binomial, rational, ratio, Polynomial, RationalMatrix};
use middle_cube::boundary::{
    binomial_identities, boundary_sum, is_boundary, mqk_boundary_sum, mqk_eigenvalues, mqk_pi_closed_form, products,
};
use middle_cube::cli::{hamilton_outcome, load_target};
use middle_cube::doubles::{diameter_report, verify_distance_relations};
use middle_cube::drg::{
    check_distance_regular, distance_polynomials, hoffman_polynomial, hoffman_report, mqk_intersection_array,
    multiplicities_from_highest, multiplicities_from_products,
};
use middle_cube::families::{
    complete, cycle, middle_cube, odd_graph, path, petersen, verify_mqk_fold, verify_mqk_isomorphism,
};
use middle_cube::graph::Graph;
use middle_cube::hamilton::{is_hamilton_cycle, HamiltonStatus, DEFAULT_BUDGET};
use middle_cube::spectral::{
    double_char_poly_sides, double_spectrum, eigenspace_basis, extended_char_poly_sides, hypercube_spectrum,
    integer_spectrum, lift_eigenvector, mqk_spectrum, odd_spectrum, LiftSign, Spectrum,
};
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn c1() -> Outcome {
    let start = Instant::now();
    let sp = integer_spectrum(&middle_cube(3).unwrap()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let want = Spectrum::from_integers(&[(3, 1), (2, 4), (1, 5), (-1, 5), (-2, 4), (-3, 1)]);
    ensure(sp == want, || format!("got {sp}"))?;
    ensure(took < Duration::from_secs(5), || format!("took {}", secs(took)))?;
    Ok(format!("{sp} in {}", secs(took)))
}

fn c2() -> Outcome {
    for k in 2..=4 {
        let closed = mqk_spectrum(k).map_err(|e| e.to_string())?;
        let doubled = double_spectrum(&odd_spectrum(k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let counted = integer_spectrum(&middle_cube(k).unwrap()).map_err(|e| e.to_string())?;
        ensure(closed == doubled && doubled == counted, || format!("k = {k}: {closed} / {doubled} / {counted}"))?;
    }
    let want = Spectrum::from_integers(&[
        (5, 1),
        (4, 8),
        (3, 27),
        (2, 48),
        (1, 42),
        (-1, 42),
        (-2, 48),
        (-3, 27),
        (-4, 8),
        (-5, 1),
    ]);
    let closed = mqk_spectrum(5).map_err(|e| e.to_string())?;
    ensure(closed == want, || format!("closed form k = 5: {closed}"))?;
    let start = Instant::now();
    let counted = integer_spectrum(&middle_cube(5).unwrap()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(counted == want, || format!("nullities k = 5: {counted}"))?;
    ensure(took < Duration::from_secs(600), || format!("k = 5 took {}", secs(took)))?;
    Ok(format!("k = 2..4 three routes agree; k = 5 nullity route in {}", secs(took)))
}

fn c3() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = vec![
        ("K3".into(), complete(3).unwrap()),
        ("C5".into(), cycle(5).unwrap()),
        ("P4".into(), path(4).unwrap()),
        ("Petersen".into(), petersen()),
        ("O4".into(), odd_graph(4).unwrap()),
    ];
    for (i, g) in common::connected_corpus(0x5eed_0003, 50, 10).into_iter().enumerate() {
        graphs.push((format!("random #{i}"), g));
    }
    for (name, g) in &graphs {
        let (l, r) = double_char_poly_sides(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(l == r, || format!("{name}: double identity fails"))?;
        let (l, r) = extended_char_poly_sides(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(l == r, || format!("{name}: extended identity fails"))?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn c4() -> Outcome {
    let g = middle_cube(3).unwrap();
    let cert = check_distance_regular(&g).map_err(|e| e.to_string())?;
    let arr = cert.array.ok_or("MQ_3 not distance-regular")?;
    ensure(arr == mqk_intersection_array(3).unwrap(), || format!("counted array {arr}"))?;
    let polys = distance_polynomials(&arr);
    let frac = |c: &[i64], d: i64| Polynomial::from_integers(c).scale(&ratio(1, d));
    let listed = [
        frac(&[1], 1),
        frac(&[0, 1], 1),
        frac(&[-3, 0, 1], 1),
        frac(&[0, -5, 0, 1], 2),
        frac(&[12, 0, -9, 0, 1], 4),
        frac(&[0, 22, 0, -11, 0, 1], 12),
    ];
    ensure(polys == listed, || format!("got {polys:?}"))?;
    let h = hoffman_polynomial(&polys);
    let roots = [1, 2, -3, -2, -1].map(rational);
    let product = Polynomial::from_roots(roots.iter().map(|r| (r, 1))).scale(&ratio(1, 12));
    ensure(h == product, || format!("sum is {h}"))?;
    ensure(h.eval(&rational(3)) == rational(20), || format!("H(3) = {}", h.eval(&rational(3))))?;
    let report = hoffman_report(&g, &polys).map_err(|e| e.to_string())?;
    ensure(report.matrix_identity == Some(true), || "H(A) != J".into())?;
    let direct = g.adjacency_matrix().poly_eval(&h);
    ensure(direct.is_constant(&rational(1)), || "H(A) has an entry other than 1".into())?;
    Ok(format!("p0..p5 verbatim, H = {h}, H(3) = 20, H(A) = J"))
}

fn c5() -> Outcome {
    let phi = [240, -60, 48, -48, 60, -240].map(rational);
    let eig = mqk_eigenvalues(3);
    let computed = products(&eig).map_err(|e| e.to_string())?.phi;
    ensure(computed == phi, || format!("phi = {computed:?}"))?;
    let p5 = Polynomial::from_integers(&[0, 22, 0, -11, 0, 1]).scale(&ratio(1, 12));
    let values: Vec<BigRational> = eig.iter().map(|l| p5.eval(l)).collect();
    let m = multiplicities_from_products(&phi, &values).map_err(|e| e.to_string())?;
    ensure(m == [1, 4, 5, 5, 4, 1], || format!("got {m:?}"))?;
    for k in 2..=6u32 {
        let eig = mqk_eigenvalues(k);
        let polys = distance_polynomials(&mqk_intersection_array(k).unwrap());
        let m = multiplicities_from_highest(&eig, polys.last().unwrap()).map_err(|e| e.to_string())?;
        let closed: Vec<usize> = eig
            .iter()
            .map(|l| {
                let i = i64::from(k) - l.to_integer().magnitude().try_into().unwrap_or(0i64);
                let num = binomial(2 * i64::from(k), i) * (i64::from(k) - i);
                usize::try_from(num / i64::from(k)).unwrap()
            })
            .collect();
        ensure(m == closed, || format!("k = {k}: {m:?} vs {closed:?}"))?;
    }
    Ok("(1,4,5,5,4,1) from listed products; k = 2..6 match closed form".into())
}

fn c6() -> Outcome {
    for k in 2..=8u32 {
        let order = rational(2) * BigRational::from_integer(binomial(2 * i64::from(k) - 1, i64::from(k)));
        let closed = mqk_boundary_sum(k).map_err(|e| e.to_string())?;
        let generic = boundary_sum(&mqk_eigenvalues(k)).map_err(|e| e.to_string())?;
        ensure(closed.full == order && generic.full == order, || format!("k = {k}: sums differ from order"))?;
    }
    for k in 2..=4 {
        let r = is_boundary(&middle_cube(k).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.is_boundary && r.conventions_agree, || format!("MQ_{k} not boundary: {r:?}"))?;
    }
    let pi: Vec<_> = (0..6).map(|i| mqk_pi_closed_form(3, i).unwrap()).collect();
    let want: Vec<_> = [240, 60, 48, 48, 60, 240].map(num_bigint::BigInt::from).to_vec();
    ensure(pi == want, || format!("pi = {pi:?}"))?;
    let counted = is_boundary(&middle_cube(3).unwrap()).unwrap().pi;
    ensure(counted == [240, 60, 48, 48, 60, 240].map(rational), || format!("graph pi = {counted:?}"))?;
    for k in 2..=10 {
        ensure(binomial_identities(k).hold(), || format!("binomial identities fail at k = {k}"))?;
    }
    Ok("k = 2..8 sums equal order; MQ_2..4 boundary; pi(MQ_3) matches".into())
}

fn c7() -> Outcome {
    let mut graphs = vec![cycle(5).unwrap(), petersen()];
    graphs.extend(common::non_bipartite_corpus(0x5eed_0007, 100, 9));
    for (i, g) in graphs.iter().enumerate() {
        let r = verify_distance_relations(g);
        ensure(r.holds, || format!("graph #{i}: {:?}", r.counterexample))?;
    }
    for (name, g) in [("C5", cycle(5).unwrap()), ("Petersen", petersen())] {
        let r = diameter_report(&g).map_err(|e| e.to_string())?;
        ensure(r.double_diameter == 5, || format!("{name}: double diameter {}", r.double_diameter))?;
    }
    for k in 2..=4u32 {
        let r = diameter_report(&odd_graph(k).unwrap()).map_err(|e| e.to_string())?;
        let direct = middle_cube(k).unwrap().diameter().unwrap();
        let want = 2 * k as usize - 1;
        ensure(r.double_diameter == want && direct == want, || format!("k = {k}: {r:?}, MQ diameter {direct}"))?;
    }
    Ok(format!("{} graphs; double diameters 5, 5 and 2k-1", graphs.len()))
}

fn c8() -> Outcome {
    for k in 2..=5 {
        verify_mqk_isomorphism(k).map_err(|e| format!("k = {k}: {e}"))?;
    }
    for k in 2..=3 {
        let cert = middle_cube(k).unwrap().antipodal_certificate().map_err(|e| e.to_string())?;
        ensure(cert.is_antipodal && cert.uniform_size == Some(2), || format!("k = {k}: {cert:?}"))?;
        verify_mqk_fold(k).map_err(|e| format!("fold k = {k}: {e}"))?;
    }
    Ok("map k = 2..5; antipodal 2-covers folding onto O_2, O_3".into())
}

fn c9() -> Outcome {
    let o = odd_graph(3).unwrap();
    let mq = middle_cube(3).unwrap();
    let map = verify_mqk_isomorphism(3).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (lambda, m) in integer_spectrum(&o).map_err(|e| e.to_string())?.pairs() {
        let basis = eigenspace_basis(&o, lambda);
        ensure(basis.len() == *m, || format!("lambda {lambda}: basis {} of {m}", basis.len()))?;
        let mut rows = Vec::new();
        for v in &basis {
            for sign in [LiftSign::Plus, LiftSign::Minus] {
                let lifted = lift_eigenvector(v, sign);
                let mut moved = lifted.clone();
                for (i, c) in lifted.charges.iter().enumerate() {
                    moved.charges[map[i]] = c.clone();
                }
                ensure(moved.eigenvalue == sign.double_eigenvalue(lambda), || "wrong lifted eigenvalue".into())?;
                ensure(moved.is_eigenvector_of(&mq), || format!("lambda {lambda}: lift fails on MQ_3"))?;
                rows.push(moved.charges);
                checked += 1;
            }
        }
        let rank = RationalMatrix::from_fn(rows.len(), mq.order(), |i, j| rows[i][j].clone()).rank();
        ensure(rank == 2 * m, || format!("lambda {lambda}: rank {rank}, want {}", 2 * m))?;
    }
    Ok(format!("{checked} lifted vectors, full rank per eigenvalue"))
}

fn c10() -> Outcome {
    let mut notes = Vec::new();
    for k in 2..=4 {
        let spec = format!("middle-cube:{k}");
        let t = load_target(&spec).map_err(|e| e.to_string())?;
        let (r, out) = hamilton_outcome(&t, DEFAULT_BUDGET);
        ensure(r.status == HamiltonStatus::Found && out.code == 0, || format!("{spec}: {:?}", r.status))?;
        ensure(is_hamilton_cycle(&t.graph, r.cycle.as_deref().unwrap()), || format!("{spec}: invalid cycle"))?;
        notes.push(format!("MQ_{k} {} nodes", r.nodes_expanded));
    }
    Ok(notes.join(", "))
}

fn c11() -> Outcome {
    for k in 2..=4u32 {
        let mq = mqk_spectrum(k).map_err(|e| e.to_string())?;
        let q = hypercube_spectrum(2 * k - 1).map_err(|e| e.to_string())?;
        ensure(mq.is_contained_in(&q), || {
            format!("k = {k}: {mq} is not contained in Q_{} spectrum {q}; the cube has only odd eigenvalues", 2 * k - 1)
        })?;
    }
    Ok("contained".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("MQ_3 spectrum", c1),
        ("closed-form spectra", c2),
        ("characteristic polynomial identities", c3),
        ("distance and Hoffman polynomials", c4),
        ("multiplicity formula", c5),
        ("boundary sums", c6),
        ("metric relations", c7),
        ("isomorphism and antipodality", c8),
        ("eigenvector lifts", c9),
        ("Hamilton cycles", c10),
        ("spectrum containment", c11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = secs(start.elapsed());
        match result {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{took}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{took}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
