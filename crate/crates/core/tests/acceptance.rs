//! Acceptance suite: one PASS/FAIL line per criterion, each with its time budget.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use qhk::basis::{graded_monomial_basis, GradedBasis};
use qhk::binom::{binom_mod2_i, rho};
use qhk::cache::{cache_path, encode_basis};
use qhk::hopf::{coproduct, is_primitive, square_root};
use qhk::normalize::{adem_pair, apply_q};
use qhk::parse::parse_expr;
use qhk::sieve::{max_reachable_length, primitive_in, spherical_candidates};
use qhk::steenrod::{is_a_annihilated, madsen_n, nishida_expand, sq_down};
use qhk::verify::{verify_theorem1, verify_theorem2, verify_theorem3};
use qhk::word::{enumerate_admissible, is_admissible, seq_excess};
use qhk::{Element, Monomial, Space, TensorElement};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn s1() -> Space {
    Space::sphere(1).unwrap()
}

fn p() -> Space {
    Space::real_proj()
}

fn el(text: &str, space: Space) -> Element {
    parse_expr(text, space).unwrap()
}

/// Sequences of positive integers with length `1..=max_len` and sum at most `max_sum`.
fn sequences(max_sum: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            let used: u32 = s.iter().sum();
            for i in 1..=max_sum - used {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn criterion_01() -> Outcome {
    let x = el("Q^9 Q^5 g1", s1());
    let sq4 = sq_down(4, &x).unwrap();
    let sq2 = sq_down(2, &x).unwrap();
    let adem = adem_pair(7, 3);
    let ok = sq4.is_zero() && sq2 == el("Q^7 Q^5 g1", s1()) && !sq2.is_zero() && adem.is_zero();
    outcome(ok, format!("Sq^4_* = {sq4}, Sq^2_* = {sq2}, Q^7 Q^3 -> {} terms", adem.len()))
}

fn criterion_02() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for space in [s1(), Space::sphere(2).unwrap(), p()] {
        let r = verify_theorem1(space, 32, 3);
        checked += r.checked;
        failures.extend(r.failures.iter().map(|f| format!("{space}: {f}")));
    }
    let detail = match failures.first() {
        None => format!("{checked} generators, 0 mismatches"),
        Some(f) => format!("{} mismatches, first: {f}", failures.len()),
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_03() -> Outcome {
    let class = el("Q^2 a1 + a1*a2 + a1^3 + a3", p());
    let sph = spherical_candidates(p(), 3, 3);
    let contains = sph.contains(&class).unwrap();
    let q2a1 = is_a_annihilated(&el("Q^2 a1", p())).unwrap();
    let prim = is_primitive(&class).unwrap();
    outcome(
        contains && !q2a1 && prim,
        format!("candidate dim {}, contains class {contains}, Q^2 a1 annihilated {q2a1}, class primitive {prim}", sph.dim()),
    )
}

fn criterion_04() -> Outcome {
    let mut bad = Vec::new();
    for t in 1..=4u32 {
        let n = 1u32 << t;
        let lead = el(&format!("Q^{n} a{}", n - 1), p());
        let class = lead.add(&el(&format!("a{n}*a{}", n - 1), p()));
        if !sq_down(1, &class).unwrap().is_zero() {
            bad.push(format!("t={t}: Sq^1_* does not kill the sum"));
        }
        if is_a_annihilated(&lead).unwrap() {
            bad.push(format!("t={t}: Q^{n} a{} is A-annihilated", n - 1));
        }
        if t == 1 && sq_down(1, &lead).unwrap().is_zero() {
            bad.push("t=1: Sq^1_* kills Q^2 a1".into());
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "t = 1..4 as stated".to_string() } else { bad.join("; ") })
}

fn criterion_05() -> Outcome {
    let mut hyp = 0;
    let mut terms = 0;
    let mut bad = Vec::new();
    for i in sequences(32, 4) {
        if !is_admissible(&i) {
            continue;
        }
        let pow = |x: u32| 1i64 << rho(x as u64).unwrap();
        if !i.windows(2).all(|w| 2 * w[1] as i64 - (w[0] as i64) < pow(w[1])) {
            continue;
        }
        hyp += 1;
        let bound = seq_excess(&i) - pow(i[0]);
        for a in 1..=i.iter().sum::<u32>() {
            for k in madsen_n(a, &i).normalized().iter() {
                terms += 1;
                if seq_excess(k) > bound {
                    bad.push(format!("I={i:?} a={a} K={k:?}"));
                }
            }
        }
        let rhos: Vec<u32> = i.iter().map(|&x| rho(x as u64).unwrap()).collect();
        if rhos.windows(2).any(|w| w[0] > w[1]) {
            bad.push(format!("rho not monotone along {i:?}"));
        }
    }
    outcome(bad.is_empty(), format!("{hyp} sequences, {terms} output terms, {} violations{}", bad.len(), first(&bad)))
}

fn first(v: &[String]) -> String {
    v.first().map(|s| format!(", first: {s}")).unwrap_or_default()
}

fn criterion_06() -> Outcome {
    let mut adem_bad = Vec::new();
    let mut pairs = 0;
    for a in 1..=64u32 {
        for b in 1..=64u32 {
            if a <= 2 * b {
                continue;
            }
            pairs += 1;
            for k in adem_pair(a, b).iter() {
                let (x, t) = (k[0], k[1]);
                if a % 2 == 1 && (x % 2 != 1 || t % 2 != b % 2) {
                    adem_bad.push(format!("Q^{a} Q^{b} -> Q^{x} Q^{t} breaks parity"));
                }
                if t <= b {
                    adem_bad.push(format!("Q^{a} Q^{b} -> Q^{x} Q^{t} does not lower the total order"));
                }
            }
        }
    }

    // The expansion Sq^a_* Q^I = sum Q^K Sq^{a^K}_* for all-odd I and even a.
    let mut raw_total = 0;
    let mut raw_even = Vec::new();
    let mut refined_bad = Vec::new();
    let mut n_action_bad = Vec::new();
    for i in sequences(24, 3) {
        if i.iter().any(|x| x % 2 == 0) {
            continue;
        }
        let sum: u32 = i.iter().sum();
        for a in (2..=sum).step_by(2) {
            for (k, tail) in nishida_expand(a, &i) {
                raw_total += 1;
                let odd = k.iter().all(|x| x % 2 == 1);
                if !odd {
                    raw_even.push(format!("Sq^{a}_* Q^{i:?} has raw term Q^{k:?} Sq^{tail}_*"));
                }
                if odd != (tail % 2 == 0) {
                    refined_bad.push(format!("Sq^{a}_* Q^{i:?}: Q^{k:?} Sq^{tail}_*"));
                }
            }
            for k in madsen_n(a, &i).iter() {
                if k.iter().any(|x| x % 2 == 0) {
                    n_action_bad.push(format!("N(Sq^{a}_*, Q^{i:?}) has Q^{k:?}"));
                }
            }
        }
    }
    let ok = adem_bad.is_empty() && refined_bad.is_empty() && n_action_bad.is_empty() && raw_even.is_empty();
    outcome(
        ok,
        format!(
            "Adem: {pairs} pairs, {} violations; Nishida on Sq^0 tails: {} violations; \
             K all-odd iff a^K even: {} violations; literal all-odd raw output: {} of {raw_total} raw terms violate{}",
            adem_bad.len(),
            n_action_bad.len(),
            refined_bad.len(),
            raw_even.len(),
            first(&raw_even)
        ),
    )
}

/// Binomial coefficient mod 2 with upper negation: `C(-m, k) = (-1)^k C(m + k - 1, k)`.
fn binom_mod2_ext(n: i64, k: i64) -> bool {
    if n >= 0 {
        binom_mod2_i(n, k)
    } else {
        binom_mod2_i(k - n - 1, k)
    }
}

fn criterion_07() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=65535u64 {
        let least = (0..17).find(|&t| binom_mod2_ext(n as i64 - (1 << t), 1 << t));
        if least != Some(rho(n).unwrap()) {
            bad.push(format!("n={n}"));
        }
    }
    outcome(bad.is_empty(), format!("65535 values, {} mismatches{}", bad.len(), first(&bad)))
}

type Triple = std::collections::BTreeSet<(Monomial, Monomial, Monomial)>;

fn toggle(s: &mut Triple, t: (Monomial, Monomial, Monomial)) {
    if !s.remove(&t) {
        s.insert(t);
    }
}

fn coassociative(m: &Monomial) -> bool {
    let psi = coproduct(&Element::from(m.clone()));
    let (mut lhs, mut rhs) = (Triple::new(), Triple::new());
    for (l, r) in psi.terms() {
        for (ll, lr) in coproduct(&Element::from(l.clone())).terms() {
            toggle(&mut lhs, (ll.clone(), lr.clone(), r.clone()));
        }
        for (rl, rr) in coproduct(&Element::from(r.clone())).terms() {
            toggle(&mut rhs, (l.clone(), rl.clone(), rr.clone()));
        }
    }
    lhs == rhs
}

/// `r` through duality with cup squaring: `Sq^{d/2}_*` in even degree `d`, zero otherwise.
fn root_oracle(e: &Element) -> Element {
    match e.degree().unwrap() {
        Some(d) if d % 2 == 0 => sq_down(d / 2, e).unwrap(),
        _ => Element::zero(),
    }
}

fn criterion_08() -> Outcome {
    let cap = |d| max_reachable_length(p(), d);
    let bases: Vec<Vec<Monomial>> = (0..=16).map(|d| graded_monomial_basis(p(), d, cap(16))).collect();

    let mut hopf_bad = Vec::new();
    let mut products = 0;
    for d in 1..=12usize {
        for m in &bases[d] {
            if !coassociative(m) {
                hopf_bad.push(format!("coassociativity fails on {m}"));
            }
        }
        for d1 in 1..=d / 2 {
            for x in &bases[d1] {
                let px = coproduct(&Element::from(x.clone()));
                for y in &bases[d - d1] {
                    products += 1;
                    let lhs = coproduct(&Element::from(x.mul(y)));
                    let rhs: TensorElement = px.mul(&coproduct(&Element::from(y.clone())));
                    if lhs != rhs {
                        hopf_bad.push(format!("psi({x} * {y}) is not psi({x}) psi({y})"));
                    }
                }
            }
        }
    }

    let mut sq_checked = 0;
    let mut root_of_square_bad = Vec::new();
    let mut root_of_square_frobenius_bad = Vec::new();
    for monomials in &bases[1..=10] {
        for m in monomials {
            sq_checked += 1;
            let e = Element::from(m.clone());
            let r2 = square_root(&e.frobenius(1)).unwrap();
            if r2 != e {
                root_of_square_bad.push(format!("r(({m})^2) = {r2}"));
            }
            if r2 != square_root(&e).unwrap().frobenius(1) {
                root_of_square_frobenius_bad.push(m.to_string());
            }
        }
    }

    let mut words = 0;
    let mut root_q_bad = Vec::new();
    for d in 1..=16 {
        for g in enumerate_admissible(p(), d, cap(d)) {
            let Some(inner) = g.inner() else {
                continue;
            };
            words += 1;
            let n = g.ops()[0];
            let e = Element::from_gen(g.clone());
            let lhs = root_oracle(&e);
            let rhs = if n % 2 == 0 {
                apply_q(n / 2, &root_oracle(&Element::from_gen(inner))).unwrap()
            } else {
                Element::zero()
            };
            if lhs != rhs || square_root(&e).unwrap() != lhs {
                root_q_bad.push(format!("{g}"));
            }
        }
    }

    let mut prims = 0;
    let mut ker_bad = Vec::new();
    for d in 1..=16 {
        let basis = GradedBasis::from_monomials(p(), d, cap(16), bases[d as usize].clone());
        for v in primitive_in(&basis) {
            prims += 1;
            let e = basis.element(v);
            if !square_root(&e.indecomposable_part()).unwrap().is_zero() {
                ker_bad.push(e.to_string());
            }
        }
    }

    let ok = hopf_bad.is_empty() && root_of_square_bad.is_empty() && root_q_bad.is_empty() && ker_bad.is_empty();
    outcome(
        ok,
        format!(
            "Hopf axioms: {products} products, {} violations; r(e^2) = e: {} of {sq_checked} monomials violate{} \
             (r(e^2) = r(e)^2: {} violations); r Q^(2i) = Q^i r against Sq^(d/2)_*: {words} words, {} violations; \
             primitives in ker r: {prims} primitives, {} violations",
            hopf_bad.len(),
            root_of_square_bad.len(),
            first(&root_of_square_bad),
            root_of_square_frobenius_bad.len(),
            root_q_bad.len(),
            ker_bad.len()
        ),
    )
}

fn criterion_09() -> Outcome {
    let s = verify_theorem3(s1(), &(1..=24).collect::<Vec<_>>(), 3, 64);
    let even: Vec<u32> = (2..=20).step_by(2).collect();
    let pe = verify_theorem3(p(), &even, 2, 64);
    let p3 = verify_theorem3(p(), &[3], 2, 64);
    let excluded: Vec<&String> = s.excluded.iter().chain(&pe.excluded).chain(&p3.excluded).collect();
    let expected = el("Q^2 a1 + a1*a2 + a1^3 + a3", p()).to_string();
    let exact_once = excluded.len() == 1 && excluded[0].starts_with(&format!("{expected}:"));
    let failures: Vec<String> = s.failures.iter().chain(&pe.failures).chain(&p3.failures).cloned().collect();
    outcome(
        failures.is_empty() && exact_once,
        format!(
            "S1: {} classes, P even: {} classes, P degree 3: {} classes; {} failures{}; {} exclusions",
            s.checked,
            pe.checked,
            p3.checked,
            failures.len(),
            first(&failures),
            excluded.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for space in [s1(), p()] {
        let r = verify_theorem2(space, 20, 2, 64).unwrap();
        ok &= r.passed() && r.checked > 0;
        parts.push(format!("{space}: {} classes with witnesses, {} skipped, {} failures{}", r.checked, r.skipped, r.failures.len(), first(&r.failures)));
    }
    outcome(ok, parts.join("; "))
}

fn qhk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhk")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn criterion_11() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |name: &str, got: (i32, String, String), code: i32, stdout: Option<&str>| {
        if got.0 != code || stdout.is_some_and(|s| s != got.1) {
            bad.push(format!("{name}: exit {} output {:?}", got.0, got.1));
        }
    };
    expect("act", qhk(&["act", "--sq", "2", "Q^9 Q^5 g1", "--space", "S1"]), 0, Some("Q^7 Q^5 g1\n"));
    expect(
        "normalize",
        qhk(&["normalize", "Q^2 a1 + a1*a2 + a1^3 + a3", "--space", "P"]),
        0,
        Some("Q^2 a1 + a3 + a1*a2 + a1^3\n"),
    );
    expect(
        "normalize json",
        qhk(&["normalize", "Q^2 a1 + a1^3", "--space", "P", "--format", "json"]),
        0,
        Some("{\"terms\":[{\"factors\":[{\"ops\":[2],\"gen\":{\"space\":\"P\",\"index\":1},\"exp\":1}]},{\"factors\":[{\"ops\":[],\"gen\":{\"space\":\"P\",\"index\":1},\"exp\":3}]}]}\n"),
    );
    expect(
        "sieve json",
        qhk(&["sieve", "--space", "P", "--degree", "3", "--max-length", "3", "--format", "json"]),
        0,
        Some("{\"space\":\"P\",\"max_length\":3,\"pieces\":[{\"degree\":3,\"dim\":1,\"basis\":[{\"terms\":[{\"factors\":[{\"ops\":[2],\"gen\":{\"space\":\"P\",\"index\":1},\"exp\":1}]},{\"factors\":[{\"ops\":[],\"gen\":{\"space\":\"P\",\"index\":3},\"exp\":1}]},{\"factors\":[{\"ops\":[],\"gen\":{\"space\":\"P\",\"index\":1},\"exp\":1},{\"ops\":[],\"gen\":{\"space\":\"P\",\"index\":2},\"exp\":1}]},{\"factors\":[{\"ops\":[],\"gen\":{\"space\":\"P\",\"index\":1},\"exp\":3}]}]}]}]}\n"),
    );
    expect("non-positive index", qhk(&["normalize", "Q^0 g1", "--space", "S1"]), 2, None);
    expect("verify", qhk(&["verify", "--theorem", "1", "--space", "S1", "--max-degree", "32", "--max-length", "3"]), 0, None);

    // print . parse and parse . print on every basis monomial and on sums of them.
    let mut round_trips = 0;
    let check = |x: &Element, space: Space, bad: &mut Vec<String>| {
        let text = x.to_string();
        let back = parse_expr(&text, space).unwrap();
        if &back != x || back.to_string() != text {
            bad.push(format!("round trip of {text}"));
        }
    };
    for space in [s1(), p(), Space::sigma_cp_plus(), "P^s1".parse().unwrap()] {
        for d in 1..=16 {
            let basis = graded_monomial_basis(space, d, max_reachable_length(space, d));
            let mut sum = Element::zero();
            for (k, m) in basis.iter().enumerate() {
                let e = Element::from(m.clone());
                if k % 3 != 1 {
                    sum.add_assign(&e);
                }
                round_trips += 1;
                check(&e, space, &mut bad);
            }
            round_trips += 1;
            check(&sum, space, &mut bad);
        }
    }
    let via_cli = qhk(&["normalize", "Q^2 a1 + a3 + a1*a2 + a1^3", "--space", "P"]);
    if via_cli.1 != "Q^2 a1 + a3 + a1*a2 + a1^3\n" {
        bad.push("CLI does not reproduce canonical text".into());
    }

    // Cache: file bytes equal a fresh encoding, cached output equals uncached output,
    // and a corrupted file is reported and recomputed.
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = qhk(&["basis", "--space", "S1", "--degree", "10", "--max-length", "3"]);
    let first_run = qhk(&["basis", "--space", "S1", "--degree", "10", "--max-length", "3", "--cache", d]);
    let second_run = qhk(&["basis", "--space", "S1", "--degree", "10", "--max-length", "3", "--cache", d]);
    let path = cache_path(dir.path(), s1(), 10, 3);
    let bytes = fs::read(&path).unwrap();
    if bytes != encode_basis(&GradedBasis::new(s1(), 10, 3)) {
        bad.push("cache file differs from a fresh encoding".into());
    }
    if first_run.1 != plain.1 || second_run.1 != plain.1 {
        bad.push("cached basis output differs".into());
    }
    let mut corrupt = bytes.clone();
    corrupt[20] ^= 0x40;
    fs::write(&path, corrupt).unwrap();
    let third = qhk(&["basis", "--space", "S1", "--degree", "10", "--max-length", "3", "--cache", d]);
    if third.1 != plain.1 || !third.2.contains("warning") || fs::read(&path).unwrap() != bytes {
        bad.push("corrupt cache not recomputed with a warning".into());
    }
    outcome(bad.is_empty(), format!("{round_trips} round trips, golden CLI and cache checks, {} failures{}", bad.len(), first(&bad)))
}

/// Number, title, time budget in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "Sq^2_* and Sq^4_* on Q^9 Q^5 g1, Q^7 Q^3 = 0", 1, criterion_01),
        (2, "annihilation criterion vs direct computation", 300, criterion_02),
        (3, "the degree 3 class of QP", 1, criterion_03),
        (4, "Sq^1-annihilated family", 5, criterion_04),
        (5, "excess bound for the N-action", 600, criterion_05),
        (6, "Adem and Nishida parity, total order", 120, criterion_06),
        (7, "rho via binomial coefficients", 1, criterion_07),
        (8, "Hopf and square root identities", 300, criterion_08),
        (9, "odd entries of annihilated primitives", 600, criterion_09),
        (10, "suspension witnesses for leading terms", 600, criterion_10),
        (11, "CLI golden output, round trips, cache", 60, criterion_11),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for (n, title, budget, run) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let pass = out.ok && in_time;
        let timing = format!("{:.2} s of {budget} s", took.as_secs_f64());
        println!(
            "criterion {n:>2} {}: {title} ({}; {timing}{})",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            if in_time { "" } else { ", over budget" }
        );
        if !pass {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
