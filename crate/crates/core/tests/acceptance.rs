//! Acceptance suite: one PASS/FAIL line per criterion, with timings.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistkit::algebra::factor::is_irreducible;
use twistkit::algebra::nfpoly::roots_in_field;
use twistkit::algebra::rational::rat;
use twistkit::algebra::{
    complex_embeddings, factor_rational_polynomial, field_automorphisms, minimal_polynomial, subfield_generated,
    FieldAutomorphism, NumberField, QPoly,
};
use twistkit::characters::{twist_hypotheses, DirichletCharacter};
use twistkit::fixtures::{level100, level30, reference_field_level100};
use twistkit::newforms::EigenSystem;
use twistkit::siegel_fourier::{phi_limit_residual, phi_operator, psd_indices, HalfIntegralMatrix, SiegelFourierExpansion};
use twistkit::symplectic::{
    automorphy_factor, moebius_action, random_symplectic_word, similitude_factor, yoshida_embed, RMatrix, SiegelPoint,
};
use twistkit::twists::{
    candidate_moduli, cocycle_check, detect_inner_twists, determinant_relation_check, generate_synthetic,
    group_axioms_check, uniqueness_check, TwistGroup,
};
use twistkit::yoshida::{build_lift, compare_fields, trace_field};

mod common;
use common::{brute_order, brute_orders, durand_kerner, integral_subset_degrees};

const BOUND: u64 = 100;
const MODULUS_TOL: f64 = 1e-10;
const H2_TOL: f64 = 1e-9;
const COCYCLE_REL_TOL: f64 = 1e-8;
/// Relative slack on the decay ratio, for rounding in `f64` exponentials.
const DECAY_REL_TOL: f64 = 1e-6;

type Outcome = twistkit::Result<(bool, String)>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
}

fn report(c: &Criterion, outcome: Outcome, elapsed: Duration) -> bool {
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let in_time = elapsed <= c.limit;
    let pass = ok && in_time;
    println!(
        "{} [{}] {} ({:.2} s, limit {} s){}: {}",
        if pass { "PASS" } else { "FAIL" },
        c.id,
        c.name,
        elapsed.as_secs_f64(),
        c.limit.as_secs(),
        if in_time { "" } else { " over time" },
        detail
    );
    pass
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn level30_example() -> Outcome {
    let pair = level30()?;
    let f = &pair.left;
    let k = &f.field;
    let z = k.generator();
    let chi = &f.nebentypus;
    let char_ok = chi.conductor() == 15 && chi.order() == 4;

    let brute = (1..30u64).find(|&a| gcd(a, 30) == 1 && brute_order(a, 30) == 4);
    let h = twist_hypotheses(2, 3, 30)?;
    let unit_ok = brute.is_some() && h.order_element_ok && h.witness.map(|w| brute_order(w, 30)) == Some(4);

    let theta = &z + &z.pow(3);
    let sub = subfield_generated(k, std::slice::from_ref(&theta));
    let members = (1..=8).all(|i| sub.contains(&(&z.pow(i) + &z.pow(3 * i))));
    let x2p2 = QPoly::from_i64s(&[2, 0, 1]);
    // (ζ + ζ³)² = ζ² + 2ζ⁴ + ζ⁶ = -2
    let square = &theta * &theta == k.from_int(-2);
    let sub_ok = square && sub.degree() == 2 && sub.field().poly() == &x2p2 && minimal_polynomial(&theta) == x2p2;

    let y = build_lift(f, &pair.right, BOUND)?;
    let t = trace_field(&y, BOUND);
    let strict = t.degree() == 2 && y.field().degree() == 4;

    Ok((
        char_ok && unit_ok && members && sub_ok && strict,
        format!(
            "conductor {} order {}; unit of order 4 mod 30: {:?} (brute force {:?}); ζ^i+ζ^3i in Q(ζ+ζ^3) for i=1..8: {members}; subfield {} degree {}; trace field degree {} < {}",
            chi.conductor(),
            chi.order(),
            h.witness,
            brute,
            sub.field().poly(),
            sub.degree(),
            t.degree(),
            y.field().degree()
        ),
    ))
}

fn level100_example() -> Outcome {
    let pair = level100()?;
    let (f1, f2) = (&pair.left, &pair.right);
    let k = &f1.field;
    let mu = k.generator();
    let cond_ok = f1.nebentypus.conductor() == 20;

    let octic = [16, 0, 0, 0, -7, 0, 0, 0, 1];
    let p = QPoly::from_i64s(&octic);
    let irreducible = k.poly() == &p
        && is_irreducible(&p)
        && factor_rational_polynomial(&p)?.len() == 1
        && integral_subset_degrees(&octic).is_empty();
    let m4 = mu.pow(4);
    let quartic_ok = (&(&(&m4 * &m4) - &m4.scale(&rat(7))) + &k.from_int(16)).is_zero();

    let lib_roots = complex_embeddings(k, 128)?.roots_c64();
    let oracle_roots = durand_kerner(&octic);
    let dev = lib_roots.iter().chain(&oracle_roots).map(|z| (z.norm() - 2f64.sqrt()).abs()).fold(0.0, f64::max);
    let modulus_ok = dev < MODULUS_TOL && lib_roots.len() == 8;

    let a2_ok = match (f1.a(2), f2.a(2)) {
        (Some(a), Some(b)) => (a + b).is_zero() && f2.a(2) == Some(&-&mu),
        _ => false,
    };

    let y = build_lift(f1, f2, BOUND)?;
    let l = y.field();
    let Some(s) = roots_in_field(&QPoly::from_i64s(&[15, 0, 1]), l).into_iter().next() else {
        return Ok((false, "x^2 + 15 has no root in the compositum".into()));
    };
    let q15 = subfield_generated(l, &[s]);
    let published_ok = pair.published_primes.iter().all(|&p| {
        y.eigenvalues(p).is_some_and(|(a, b)| q15.contains(&(&a + &b)))
    });
    let reference = reference_field_level100();
    let first = serde_json::to_string(&compare_fields(&y, BOUND, Some(&reference))).unwrap();
    let again = build_lift(f1, f2, BOUND)?;
    let second = serde_json::to_string(&compare_fields(&again, BOUND, Some(&reference))).unwrap();
    let deterministic = first == second;
    let synthetic: Vec<u64> = y.spin_polys.keys().copied().filter(|p| !pair.published_primes.contains(p)).collect();
    let inside = synthetic.iter().filter(|&&p| q15.contains(&y.spin_polys[&p].trace())).count();
    let cmp = compare_fields(&y, BOUND, Some(&reference));

    Ok((
        cond_ok && irreducible && quartic_ok && modulus_ok && a2_ok && published_ok && deterministic,
        format!(
            "conductor {}; octic irreducible: {irreducible}; μ^4 root of x^2-7x+16: {quartic_ok}; max ||μ|-√2| = {dev:.1e}; a2+b2 = 0: {a2_ok}; traces at published primes {:?} in Q(√-15): {published_ok}; comparison JSON deterministic: {deterministic}; synthetic extension: {inside}/{} primes in Q(√-15), trace field {} of degree {}",
            f1.nebentypus.conductor(),
            pair.published_primes,
            synthetic.len(),
            cmp.trace_field,
            cmp.trace_degree
        ),
    ))
}

fn q_char(modulus: u64, gens: &[i64], signs: &[i64]) -> DirichletCharacter {
    let q = NumberField::rationals();
    let v: Vec<_> = signs.iter().map(|&s| q.from_int(s)).collect();
    DirichletCharacter::from_generator_values(modulus, &q, gens, &v).expect("valid character")
}

/// The seven nontrivial quadratic characters of conductor dividing 40.
fn quadratic_characters_40() -> Vec<DirichletCharacter> {
    let basis = [q_char(4, &[3], &[-1]), q_char(8, &[3, 5], &[-1, -1]), q_char(5, &[2], &[-1])]
        .map(|c| c.induce(40).expect("divides 40"));
    (1u32..8)
        .map(|mask| {
            let mut c = DirichletCharacter::trivial(40, &NumberField::rationals()).unwrap();
            for (i, b) in basis.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    c = c.mul(b).unwrap();
                }
            }
            c
        })
        .collect()
}

struct OracleCase {
    system: EigenSystem,
    group: TwistGroup,
    moduli: Vec<u64>,
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Prescribes an elementary abelian subgroup of `Aut(K)` with an injective
/// map to quadratic characters.
fn prescribe(
    rng: &mut ChaCha8Rng,
    k: &NumberField,
    order: usize,
    chars: &[DirichletCharacter],
) -> Vec<(FieldAutomorphism, DirichletCharacter)> {
    let auts: Vec<FieldAutomorphism> = field_automorphisms(k).into_iter().filter(|g| !g.is_identity()).collect();
    match order {
        1 => vec![],
        2 => vec![(pick(rng, &auts).clone(), pick(rng, chars).clone())],
        _ => {
            let s = pick(rng, &auts).clone();
            let rest: Vec<_> = auts.iter().filter(|g| **g != s).cloned().collect();
            let t = pick(rng, &rest).clone();
            let a = pick(rng, chars).clone();
            let others: Vec<_> = chars.iter().filter(|c| !c.same_primitive(&a)).cloned().collect();
            let b = pick(rng, &others).clone();
            let st = s.compose(&t);
            let ab = a.mul(&b).unwrap();
            vec![(s, a), (t, b), (st, ab)]
        }
    }
}

fn oracle_suite(cases: &mut Vec<OracleCase>) -> Outcome {
    let fields: [(usize, Vec<NumberField>); 3] = [
        (2, [[2, 0, 1], [1, 0, 1], [-5, 0, 1], [3, 0, 1]].iter().map(|p| NumberField::from_i64s(p).unwrap()).collect()),
        (4, vec![NumberField::from_i64s(&[1, 0, 0, 0, 1]).unwrap(), NumberField::from_i64s(&[1, 0, -1, 0, 1]).unwrap()]),
        (8, vec![NumberField::from_i64s(&[1, 0, 0, 0, -1, 0, 0, 0, 1]).unwrap()]),
    ];
    let chars = quadratic_characters_40();
    let moduli = candidate_moduli(40, false);
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut misses = Vec::new();
    let mut by_order = [0usize; 3];
    for i in 0..100u64 {
        let (deg, ks) = &fields[(i % 3) as usize];
        let k = pick(&mut rng, ks).clone();
        let orders: &[usize] = if *deg == 2 { &[1, 2] } else { &[1, 2, 4] };
        let order = *pick(&mut rng, orders);
        let pairs = prescribe(&mut rng, &k, order, &chars);
        let e = generate_synthetic(&k, &pairs, 40, 2, BOUND, 1000 + i)?;
        let t = detect_inner_twists(&e, &moduli, BOUND)?;
        let exact = t.order() == order
            && t.inconclusive.is_empty()
            && pairs.iter().all(|(g, c)| t.find(g).is_some_and(|x| x.character.same_primitive(c)))
            && t.elements.iter().all(|x| !x.automorphism.is_identity() || x.character.conductor() == 1);
        if !exact {
            misses.push(format!("#{i} (degree {deg}, order {order}, found {})", t.order()));
        }
        by_order[order.trailing_zeros() as usize] += 1;
        cases.push(OracleCase { system: e, group: t, moduli: moduli.clone() });
    }
    Ok((
        misses.is_empty(),
        format!(
            "100 systems at level 40 (group orders 1/2/4: {}/{}/{}), {} mismatches{}",
            by_order[0],
            by_order[1],
            by_order[2],
            misses.len(),
            if misses.is_empty() { String::new() } else { format!(": {}", misses.join(", ")) }
        ),
    ))
}

fn identities(e: &EigenSystem, t: &TwistGroup, moduli: &[u64]) -> twistkit::Result<[bool; 4]> {
    Ok([
        uniqueness_check(e, t, moduli)?,
        cocycle_check(t),
        determinant_relation_check(e, t),
        group_axioms_check(t),
    ])
}

fn structural_identities(cases: &[OracleCase]) -> Outcome {
    let mut failures = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let r = identities(&c.system, &c.group, &c.moduli)?;
        if r.contains(&false) {
            failures.push(format!("oracle #{i}: {r:?}"));
        }
    }
    let p30 = level30()?;
    let p100 = level100()?;
    let k = &p30.left.field;
    let sigma = FieldAutomorphism::new(k, k.generator().pow(3))?;
    let g_conj = EigenSystem { nebentypus: p30.left.nebentypus.apply_automorphism(&sigma), ..p30.right.clone() };
    let mut orders = Vec::new();
    let mut declared = String::new();
    for (name, e) in [("f", &p30.left), ("g", &g_conj), ("f1", &p100.left), ("f2", &p100.right)] {
        let moduli = candidate_moduli(e.level, false);
        let t = detect_inner_twists(e, &moduli, BOUND)?;
        let r = identities(e, &t, &moduli)?;
        if r.contains(&false) || !t.inconclusive.is_empty() {
            failures.push(format!("{name}: {r:?}, {} inconclusive", t.inconclusive.len()));
        }
        orders.push(format!("{name} {}", t.order()));
        if name == "g" {
            let td = detect_inner_twists(&p30.right, &moduli, BOUND)?;
            declared = format!("{:?}", identities(&p30.right, &td, &moduli)?);
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "uniqueness, cocycle, determinant, closure on {} oracle groups and fixtures ({}); g checked under the conjugated nebentypus, declared one gives {declared}{}",
            cases.len(),
            orders.join(", "),
            if failures.is_empty() { String::new() } else { format!("; failures: {}", failures.join("; ")) }
        ),
    ))
}

fn random_point(rng: &mut ChaCha8Rng) -> SiegelPoint {
    let x = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    let a = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    // Y = A Aᵀ + 0.3 I with A lower triangular
    let y11 = a[0] * a[0] + 0.3;
    let y12 = a[0] * a[1];
    let y22 = a[1] * a[1] + a[2] * a[2] + 0.3;
    SiegelPoint::from_rows(&[
        vec![Complex64::new(x[0], y11), Complex64::new(x[1], y12)],
        vec![Complex64::new(x[1], y12), Complex64::new(x[2], y22)],
    ])
    .expect("symmetric with positive imaginary part")
}

fn m2(a: i64, b: i64, c: i64, d: i64) -> RMatrix {
    RMatrix::from_i64(&[vec![a, b], vec![c, d]]).unwrap()
}

fn random_sl2(rng: &mut ChaCha8Rng) -> RMatrix {
    m2(1, rng.gen_range(-3..=3), 0, 1).mul(&m2(1, 0, rng.gen_range(-3..=3), 1)).unwrap()
}

fn symplectic_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut sim_ok, mut h2_ok, mut cocycle_ok) = (0, 0, 0);
    let (mut worst_sym, mut worst_eig, mut worst_rel) = (0f64, f64::INFINITY, 0f64);
    let mut prev = RMatrix::identity(4);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=12);
        let (_, w) = random_symplectic_word(2, len, &mut rng);
        if similitude_factor(&w)? == rat(1) {
            sim_ok += 1;
        }
        let tau = random_point(&mut rng);
        let image = moebius_action(&w, &tau)?;
        worst_sym = worst_sym.max(image.symmetry_defect());
        worst_eig = worst_eig.min(image.min_imaginary_eigenvalue());
        if image.symmetry_defect() < H2_TOL && image.min_imaginary_eigenvalue() > -H2_TOL {
            h2_ok += 1;
        }
        // j(MN, τ) = j(M, Nτ) j(N, τ)
        let lhs = automorphy_factor(&w.mul(&prev).unwrap(), &tau, 1)?;
        let rhs = automorphy_factor(&w, &moebius_action(&prev, &tau)?, 1)? * automorphy_factor(&prev, &tau, 1)?;
        let rel = (lhs - rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE);
        worst_rel = worst_rel.max(rel);
        if rel <= COCYCLE_REL_TOL {
            cocycle_ok += 1;
        }
        prev = w;
    }

    let mut embed_ok = 0;
    let mut prev_pair = (RMatrix::identity(2), RMatrix::identity(2));
    let mut pairs = 0;
    while pairs < 500 {
        let x = m2(rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5));
        let d = x.determinant()?;
        if d == rat(0) {
            continue;
        }
        pairs += 1;
        let y = random_sl2(&mut rng).mul(&x).unwrap().mul(&random_sl2(&mut rng)).unwrap();
        let e = yoshida_embed(&x, &y)?;
        let (xp, yp) = &prev_pair;
        let product = e.mul(&yoshida_embed(xp, yp)?).unwrap();
        let direct = yoshida_embed(&x.mul(xp).unwrap(), &y.mul(yp).unwrap())?;
        if similitude_factor(&e)? == d
            && e.charpoly()? == &x.charpoly()? * &y.charpoly()?
            && product == direct
        {
            embed_ok += 1;
        }
        prev_pair = (x, y);
    }
    Ok((
        sim_ok == 1000 && h2_ok == 1000 && cocycle_ok == 1000 && embed_ok == 500,
        format!(
            "similitude 1: {sim_ok}/1000; H2 preserved: {h2_ok}/1000 (max asymmetry {worst_sym:.1e}, min Im eigenvalue {worst_eig:.1e}); cocycle: {cocycle_ok}/1000 (max rel. error {worst_rel:.1e}); embedding: {embed_ok}/500"
        ),
    ))
}

fn random_expansion(rng: &mut ChaCha8Rng, indices: &[HalfIntegralMatrix], density: f64) -> SiegelFourierExpansion {
    let q = NumberField::rationals();
    let terms: Vec<_> = indices
        .iter()
        .filter_map(|a| rng.gen_bool(density).then(|| (a.clone(), q.from_int(rng.gen_range(-9..=9)))))
        .collect();
    SiegelFourierExpansion::new(2, 4, &q, terms).expect("indices within the bound")
}

fn phi_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let q = NumberField::rationals();
    let all = psd_indices(2, 4);
    let definite: Vec<_> = all.iter().filter(|a| a.is_positive_definite()).cloned().collect();
    let singular: Vec<_> = all.iter().filter(|a| a.last_row_col_zero()).cloned().collect();

    let mut linear = 0;
    for _ in 0..200 {
        let f = random_expansion(&mut rng, &all, 0.5);
        let g = random_expansion(&mut rng, &all, 0.5);
        let (s, t) = (q.from_int(rng.gen_range(-5..=5)), q.from_int(rng.gen_range(-5..=5)));
        let lhs = phi_operator(&f.linear_combination(&s, &g, &t)?)?;
        let rhs = phi_operator(&f)?.linear_combination(&s, &phi_operator(&g)?, &t)?;
        if lhs == rhs {
            linear += 1;
        }
    }

    let mut killed = 0;
    for _ in 0..100 {
        if phi_operator(&random_expansion(&mut rng, &definite, 0.6))?.is_zero() {
            killed += 1;
        }
    }

    let mut survives = 0;
    for _ in 0..100 {
        let mut f = random_expansion(&mut rng, &all, 0.4);
        let a = pick(&mut rng, &singular).clone();
        let c = q.from_int(*pick(&mut rng, &[-3, -2, -1, 1, 2, 3]));
        f = f.linear_combination(&q.one(), &SiegelFourierExpansion::new(2, 4, &q, [(a, c)])?, &q.one())?;
        // oracle: the singular terms, counted directly
        let expected = f.terms().filter(|(a, _)| a.last_row_col_zero()).count();
        let phi = phi_operator(&f)?;
        if !phi.is_zero() == (expected > 0) && phi.len() == expected {
            survives += 1;
        }
    }

    let ts = [5.0, 10.0, 20.0];
    let mut decays = 0;
    let mut worst = 0f64;
    for _ in 0..20 {
        let f = random_expansion(&mut rng, &all, 0.7);
        let z = SiegelPoint::from_rows(&[vec![Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.5))]])?;
        let r: Vec<f64> = ts.iter().map(|&t| phi_limit_residual(&f, Some(&z), t, 0)).collect::<Result<_, _>>()?;
        let ok = r.windows(2).zip(ts.windows(2)).all(|(rr, tt)| {
            let bound = (-std::f64::consts::PI * (tt[1] - tt[0])).exp();
            worst = worst.max(rr[1] / rr[0] / bound);
            rr[0] > 0.0 && rr[1] / rr[0] <= bound * (1.0 + DECAY_REL_TOL)
        });
        if ok {
            decays += 1;
        }
    }
    Ok((
        linear == 200 && killed == 100 && survives == 100 && decays == 20,
        format!(
            "linear: {linear}/200; definite support killed: {killed}/100; singular term survives: {survives}/100; decay at t = 5, 10, 20: {decays}/20 (max ratio / e^(-πΔt) = {worst:.6})"
        ),
    ))
}

fn hypothesis_table() -> Outcome {
    let mut mismatches = Vec::new();
    let mut rows = 0;
    for g in [2u64, 3] {
        for k in 2..=7u64 {
            for n in [8u64, 15, 16, 30, 100] {
                rows += 1;
                let r = twist_hypotheses(g, k, n)?;
                let parity = g.abs_diff(k) % 2 == 1;
                let has = brute_orders(n).contains(&(2 * g));
                let witness_ok = r.witness.map_or(!has, |w| brute_order(w, n) == 2 * g);
                if (r.parity_ok, r.order_element_ok) != (parity, has) || !witness_ok {
                    mismatches.push(format!("(g={g}, k={k}, N={n})"));
                }
            }
        }
    }
    Ok((mismatches.is_empty(), format!("{rows} rows against brute-force unit orders, {} mismatches {:?}", mismatches.len(), mismatches)))
}

fn main() {
    let secs = Duration::from_secs;
    let mut all = true;
    let c = |id, name, limit| Criterion { id, name, limit };

    let (o, t) = timed(level30_example);
    all &= report(&c(1, "level 30 example", secs(2)), o, t);
    let (o, t) = timed(level100_example);
    all &= report(&c(2, "level 100 example", secs(2)), o, t);
    let mut cases = Vec::new();
    let (o, t) = timed(|| oracle_suite(&mut cases));
    all &= report(&c(3, "twist detector oracle suite", secs(60)), o, t);
    let (o, t) = timed(|| structural_identities(&cases));
    all &= report(&c(4, "structural identities", secs(60)), o, t);
    let (o, t) = timed(symplectic_suite);
    all &= report(&c(5, "symplectic suite", secs(30)), o, t);
    let (o, t) = timed(phi_suite);
    all &= report(&c(6, "Φ operator suite", secs(10)), o, t);
    let (o, t) = timed(hypothesis_table);
    all &= report(&c(7, "hypothesis table", secs(5)), o, t);

    if !all {
        std::process::exit(1);
    }
}
