//! End-to-end acceptance run. Each criterion is recomputed against an oracle
//! written here, independently of the library's own check functions where possible.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use drinfeld::counting::{check_component_classes, component_classes, fiber_statistics};
use drinfeld::fields::{Fe, FieldCtx};
use drinfeld::geometry::{
    chart_stratum, chart_to_projective, delta_di_symbolic, delta_symbolic, enumerate_omega, factorization_check,
    ChartPoint, ChartStratum, ProjectivePoint, SymbolicCap, VarietyCtx,
};
use drinfeld::groups::{
    act_projective, enumerate_subgroup, point_key, stratum_component_count, GLdElem, SimpleRootSubset, SubgroupKind,
};
use drinfeld::quotients::{
    check_boundary, check_chart_agreement, check_full_quotient, check_quotient, check_roundtrip, full_quotient_v,
    lemma_aa_certify, lusztig_l, witness_from_omega, PartialCompactPoint, QuotientMaps,
};
use rayon::prelude::*;

const FIELD_CAP: u128 = 1 << 24;

// ---------------------------------------------------------------- oracles

fn ipow(b: u64, e: u32) -> u128 {
    (b as u128).pow(e)
}

fn igcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        igcd(b, a % b)
    }
}

fn proj_size(d: usize, q: u64, m: u32) -> u128 {
    let big = ipow(q, m);
    (0..d as u32).map(|j| big.pow(j)).sum()
}

/// `∏_{j<d} (Q - q^j) / (Q - 1)`.
fn omega_oracle(d: usize, q: u64, m: u32) -> u128 {
    let big = ipow(q, m);
    let num: u128 = (0..d as u32).map(|j| big.saturating_sub(ipow(q, j))).product();
    num / (big - 1)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        // insert n-1 at position t; moves it past n-1-t entries
        for t in 0..n {
            let mut v = p.clone();
            v.insert(t, n - 1);
            out.push((v, odd ^ ((n - 1 - t) % 2 == 1)));
        }
    }
    out
}

/// Moore determinant `det(x_j^{q^r})` by the Leibniz expansion.
fn moore(k: &FieldCtx, xs: &[Fe]) -> Fe {
    let mut acc = Fe::ZERO;
    for (p, odd) in permutations(xs.len()) {
        let mut t = Fe::ONE;
        for (r, &c) in p.iter().enumerate() {
            t = k.mul(t, k.frobenius_iter(xs[c], r as u32));
        }
        acc = if odd { k.sub(acc, t) } else { k.add(acc, t) };
    }
    acc
}

/// No nonzero `F_q`-linear form vanishes on `xs`.
fn avoids_hyperplanes(ctx: &VarietyCtx, xs: &[Fe]) -> bool {
    let k = ctx.ext();
    let base: Vec<Fe> = ctx.base().elements().map(|a| ctx.embedding().apply(a)).collect();
    let q = base.len();
    (1..q.pow(xs.len() as u32)).all(|mut idx| {
        let mut s = Fe::ZERO;
        for &x in xs {
            s = k.add(s, k.mul(base[idx % q], x));
            idx /= q;
        }
        !s.is_zero()
    })
}

fn tuples(elems: &[Fe], n: usize) -> Vec<Vec<Fe>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                elems.iter().map(move |&e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

/// Codes of the representative with first nonzero coordinate 1.
fn normalized(k: &FieldCtx, xs: &[Fe]) -> Vec<u32> {
    let lead = xs.iter().copied().find(|x| !x.is_zero()).expect("nonzero vector");
    xs.iter().map(|&x| k.code(k.div(x, lead).unwrap())).collect()
}

fn sign(k: &FieldCtx, d: usize) -> Fe {
    if d.is_multiple_of(2) {
        k.neg(Fe::ONE)
    } else {
        Fe::ONE
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Orbit roots of `points` under the group generated by `gens`.
fn orbit_roots(ctx: &VarietyCtx, points: &[ProjectivePoint], gens: &[GLdElem]) -> Vec<usize> {
    let index: HashMap<u128, usize> =
        points.iter().enumerate().map(|(n, p)| (point_key(ctx.ext(), p.coords()), n)).collect();
    let images: Vec<Vec<usize>> = points
        .par_iter()
        .map(|p| {
            gens.iter()
                .map(|g| index[&point_key(ctx.ext(), act_projective(ctx, g, p).unwrap().coords())])
                .collect()
        })
        .collect();
    let mut dsu = Dsu((0..points.len()).collect());
    for (n, im) in images.iter().enumerate() {
        for &t in im {
            dsu.union(n, t);
        }
    }
    (0..points.len()).map(|n| dsu.find(n)).collect()
}

/// Elementary matrices `1 + E_{rc}` of a subgroup; they generate it when `q` is prime.
fn elementary(base: &FieldCtx, d: usize, kind: &SubgroupKind) -> Vec<GLdElem> {
    enumerate_subgroup(base, d, kind, Default::default())
        .unwrap()
        .into_iter()
        .filter(|g| {
            let off: Vec<Fe> =
                (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).filter(|(r, c)| r != c).map(|(r, c)| g.entry(r, c)).filter(|x| !x.is_zero()).collect();
            (0..d).all(|r| g.entry(r, r) == Fe::ONE) && off == [Fe::ONE]
        })
        .collect()
}

/// Number of `i`-dimensional subspaces of `F_p^d`, by listing the row spaces of all `i × d` matrices.
fn subspaces_bruteforce(d: usize, p: u64, i: usize) -> u128 {
    let vectors = p.pow(d as u32);
    let add = |a: u64, b: u64| {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..d {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    };
    let scale = |a: u64, s: u64| {
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..d {
            out += (a % p * s % p) * place;
            a /= p;
            place *= p;
        }
        out
    };
    let mut spans = HashSet::new();
    for rows in 0..vectors.pow(i as u32) {
        let mut span: HashSet<u64> = HashSet::from([0]);
        let mut r = rows;
        for _ in 0..i {
            let v = r % vectors;
            r /= vectors;
            let old: Vec<u64> = span.iter().copied().collect();
            for s in 1..p {
                for &w in &old {
                    span.insert(add(w, scale(v, s)));
                }
            }
        }
        if span.len() as u64 == p.pow(i as u32) {
            let mut mask = 0u128;
            for v in span {
                mask |= 1 << v;
            }
            spans.insert(mask);
        }
    }
    spans.len() as u128
}

// ---------------------------------------------------------------- grids

fn count_grid() -> Vec<(usize, u64, u32)> {
    let mut out = Vec::new();
    for d in 1..=4 {
        for q in [2u64, 3, 4] {
            let mut m = 1;
            while ipow(q, m) <= FIELD_CAP && proj_size(d, q, m) <= 10_000_000 {
                out.push((d, q, m));
                m += 1;
            }
        }
    }
    out
}

fn quotient_grid() -> Vec<(usize, u64, u32)> {
    let mut out = Vec::new();
    for d in 2..=4usize {
        for q in [2u64, 3] {
            for m in [d as u32, d as u32 + 1, 2 * d as u32] {
                if proj_size(d, q, m) <= 4_000_000 {
                    out.push((d, q, m));
                }
            }
        }
    }
    out
}

fn ctx(d: usize, q: u64, m: u32) -> VarietyCtx {
    VarietyCtx::new(d, q, m).unwrap()
}

// ---------------------------------------------------------------- criteria

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    for f in failures.iter().take(10) {
        eprintln!("    {f}");
    }
    Outcome { pass: failures.is_empty(), detail }
}

/// Criteria 1 and 2 share one pass over the grid.
fn counts_and_fibers() -> (Outcome, Outcome) {
    let grid = count_grid();
    let (mut f1, mut f2) = (Vec::new(), Vec::new());
    let mut brute = 0;
    for &(d, q, m) in &grid {
        let c = ctx(d, q, m);
        let s = fiber_statistics(&c).unwrap();
        let tag = format!("d={d} q={q} m={m}");
        if s.omega != omega_oracle(d, q, m) {
            f1.push(format!("{tag}: enumerated {} expected {}", s.omega, omega_oracle(d, q, m)));
        }
        let g = igcd(ipow(q, d as u32) - 1, ipow(q, m) - 1) as u64;
        if s.expected != g || !s.holds() || s.dl != s.nonempty as u128 * g as u128 {
            f2.push(format!("{tag}: gcd {g} statistics {s:?}"));
        }
        if (d, q, m) == (2, 2, 2) && (s.dl, s.omega) != (6, 2) {
            f2.push(format!("{tag}: |DL| = {} |Ω| = {}", s.dl, s.omega));
        }
        // direct listing of A^d for the small fields
        if ipow(q, m * d as u32) <= 1 << 16 {
            brute += 1;
            let k = c.ext();
            let elems: Vec<Fe> = k.elements().collect();
            let mut omega = 0u128;
            let mut fibers: HashMap<Vec<u32>, u64> = HashMap::new();
            for v in tuples(&elems, d) {
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let lead = v.iter().copied().find(|x| !x.is_zero()).unwrap();
                let det = moore(k, &v);
                if lead == Fe::ONE && avoids_hyperplanes(&c, &v) {
                    omega += 1;
                }
                if k.pow(det, q - 1) == sign(k, d) {
                    if !avoids_hyperplanes(&c, &v) {
                        f2.push(format!("{tag}: DL point {v:?} maps outside Ω"));
                    }
                    *fibers.entry(normalized(k, &v)).or_default() += 1;
                }
            }
            if omega != s.omega {
                f1.push(format!("{tag}: hyperplane count {omega} vs {}", s.omega));
            }
            let total: u64 = fibers.values().sum();
            if fibers.values().any(|&n| n != g) || fibers.len() as u128 != s.nonempty as u128 || total as u128 != s.dl {
                f2.push(format!("{tag}: listed {} fibers totalling {total}", fibers.len()));
            }
        }
    }
    (
        outcome(&f1, format!("rows={} listed={brute}", grid.len())),
        outcome(&f2, format!("rows={} listed={brute}", grid.len())),
    )
}

fn roundtrip() -> Outcome {
    let grid: Vec<_> = count_grid().into_iter().filter(|&(d, _, m)| m as usize >= d).collect();
    let mut fails = Vec::new();
    let mut direct = 0;
    for &(d, q, m) in &grid {
        let c = ctx(d, q, m);
        let tag = format!("d={d} q={q} m={m}");
        let r = check_roundtrip(&c).unwrap();
        if !r.all_pass() {
            fails.push(format!("{tag}: {r}"));
        }
        if c.projective_size() > 100_000 {
            continue;
        }
        direct += 1;
        let k = c.ext();
        let bad = enumerate_omega(&c)
            .unwrap()
            .par_iter()
            .filter(|p| {
                let w = witness_from_omega(&c, p).unwrap();
                // F(u_k) - u_k = v_k u_{k+1}, v_k != 0, and u_1 is the point itself
                let recursion = (1..d).all(|kk| {
                    let v = w.v(kk);
                    !v.is_zero()
                        && (1..=d).all(|j| {
                            let x = w.u(j, kk);
                            k.sub(k.frobenius_q(x), x) == k.mul(v, w.u(j, kk + 1))
                        })
                });
                let first: Vec<Fe> = (1..=d).map(|j| w.u(j, 1)).collect();
                let same = normalized(k, &first) == normalized(k, p.coords());
                !(recursion && same && lusztig_l(&c, &w).unwrap() == **p)
            })
            .count();
        if bad > 0 {
            fails.push(format!("{tag}: {bad} points fail the direct recursion check"));
        }
    }
    outcome(&fails, format!("rows={} direct={direct}", grid.len()))
}

fn quotient_laws() -> Outcome {
    let grid = quotient_grid();
    let mut fails = Vec::new();
    let mut cases = 0;
    for &(d, q, m) in &grid {
        let c = ctx(d, q, m);
        let k = c.ext();
        let omega = enumerate_omega(&c).unwrap();
        let tag = format!("d={d} q={q} m={m}");
        let mut lib = check_full_quotient(&c).unwrap();

        let roots = orbit_roots(&c, &omega, &elementary(c.base(), d, &SubgroupKind::U));
        let vs: Vec<Vec<Fe>> = omega.par_iter().map(|p| full_quotient_v(&c, p).unwrap()).collect();
        let mut by_image: HashMap<&Vec<Fe>, usize> = HashMap::new();
        for (n, v) in vs.iter().enumerate() {
            if *by_image.entry(v).or_insert(roots[n]) != roots[n] {
                fails.push(format!("{tag}: full quotient merges or splits U-orbits at {n}"));
                break;
            }
        }

        for i in 1..d {
            cases += 1;
            let maps = QuotientMaps::new(&c, i).unwrap();
            lib.extend(check_quotient(&maps).unwrap());
            let kind = SubgroupKind::UI(SimpleRootSubset::maximal(d, i).unwrap());
            let roots = orbit_roots(&c, &omega, &elementary(c.base(), d, &kind));
            let images: Vec<_> = omega.par_iter().map(|p| maps.rho(p).unwrap()).collect();
            let mut by_image = HashMap::new();
            for (n, img) in images.iter().enumerate() {
                if *by_image.entry(img).or_insert(roots[n]) != roots[n] {
                    fails.push(format!("{tag} i={i}: ρ does not separate U_I-orbits exactly at {n}"));
                    break;
                }
            }
            let outside = images
                .par_iter()
                .filter(|img| moore(k, img.left.coords()).is_zero() || moore(k, img.right.coords()).is_zero())
                .count();
            if outside > 0 {
                fails.push(format!("{tag} i={i}: {outside} images outside Ω × A^1 × Ω"));
            }
        }
        for l in lib.failures() {
            fails.push(l.to_string());
        }
    }
    outcome(&fails, format!("rows={} (row, i) cases={cases}", grid.len()))
}

fn symbolic() -> Outcome {
    let cap = SymbolicCap::default();
    let mut fails = Vec::new();
    for (d, q, i) in [(3, 2, 1), (3, 2, 2), (3, 3, 1), (3, 3, 2), (4, 2, 1), (4, 2, 2), (4, 2, 3)] {
        let base = ctx(d, q, 1).base().clone();
        let r = lemma_aa_certify(&base, d, i, cap).unwrap();
        if !r.all_pass() || r.lines.len() != 4 {
            fails.push(format!("lemma d={d} q={q} i={i}:\n{r}"));
        }
    }
    let mut cases = vec![(4usize, 2u64)];
    for d in 1..=3 {
        for q in [2, 3] {
            cases.push((d, q));
        }
    }
    for (d, q) in cases {
        let c = ctx(d, q, 2);
        let k = c.ext();
        let emb = c.embedding();
        let base = c.base().clone();
        let delta = delta_symbolic(&base, d, cap).unwrap();
        let chart = |ys: &[Fe]| {
            let mut x = vec![Fe::ONE];
            for &y in ys {
                x.push(k.mul(*x.last().unwrap(), y));
            }
            x
        };
        let numeric = |ys: &[Fe]| k.pow(moore(k, &chart(ys)), q - 1);
        let points = tuples(&k.elements().collect::<Vec<_>>(), d - 1);
        for ys in &points {
            if delta.evaluate(k, emb, ys).unwrap() != numeric(ys) {
                fails.push(format!("δ_{d} q={q} disagrees with the Moore determinant at {ys:?}"));
                break;
            }
        }
        for i in 1..d {
            let f = factorization_check(&base, d, i, cap).unwrap();
            let Some(cst) = f.constant.filter(|_| f.holds && f.product_holds) else {
                fails.push(format!("factorization d={d} q={q} i={i}: {f:?}"));
                continue;
            };
            // δ_d = C (y_1...y_i)^(q^{d-i}-1) δ_{d-i}(y_{>i}) δ_{d,i}, pointwise
            let di = delta_di_symbolic(&base, d, i, cap).unwrap();
            let e = q.pow((d - i) as u32) - 1;
            let bad = points.iter().any(|ys| {
                let pre = ys[..i].iter().fold(Fe::ONE, |a, &y| k.mul(a, y));
                let rhs = k.mul(
                    k.mul(emb.apply(cst), k.pow(pre, e)),
                    k.mul(numeric(&ys[i..]), di.evaluate(k, emb, ys).unwrap()),
                );
                rhs != numeric(ys)
            });
            if bad {
                fails.push(format!("factorization d={d} q={q} i={i} fails pointwise"));
            }
        }
    }
    outcome(&fails, "lemma cases=7 factorization cases=7".into())
}

fn chart_coherence() -> Outcome {
    let cap = SymbolicCap::default();
    let grid: Vec<_> = quotient_grid().into_iter().filter(|&(d, q, _)| q.pow(d as u32) <= cap.0).collect();
    let mut fails = Vec::new();
    let (mut interior, mut boundary) = (0usize, 0usize);
    for &(d, q, m) in &grid {
        let c = ctx(d, q, m);
        let k = c.ext();
        let frob = |x: Fe, t: usize| k.frobenius_iter(x, t as u32);
        let points = tuples(&k.elements().collect::<Vec<_>>(), d - 1);
        for i in 1..d {
            let tag = format!("d={d} q={q} m={m} i={i}");
            let maps = QuotientMaps::with_table(&c, i, cap).unwrap();
            let mut lib = check_chart_agreement(&maps).unwrap();
            lib.extend(check_boundary(&maps).unwrap());
            for l in lib.failures() {
                fails.push(l.to_string());
            }
            let results: Vec<Result<Option<_>, String>> = points
                .par_iter()
                .map(|ys| {
                    let y = ChartPoint(ys.clone());
                    let mut x = vec![Fe::ONE];
                    for &t in ys {
                        x.push(k.mul(*x.last().unwrap(), t));
                    }
                    let st = chart_stratum(&c, &y, i).unwrap();
                    if !moore(k, &x).is_zero() {
                        if st != ChartStratum::Interior {
                            return Err(format!("{tag}: {ys:?} misclassified as {st:?}"));
                        }
                        let direct = maps.rho(&chart_to_projective(&c, &y)).unwrap();
                        if maps.rho_chart(&y).unwrap() != direct {
                            return Err(format!("{tag}: chart path disagrees at {ys:?}"));
                        }
                        return Ok(None);
                    }
                    let on_stratum = ys[i - 1].is_zero()
                        && !moore(k, &x[..i]).is_zero()
                        && !moore(k, &chart(&ys[i..], k)).is_zero();
                    if on_stratum != (st == ChartStratum::Boundary) {
                        return Err(format!("{tag}: {ys:?} stratum {st:?}"));
                    }
                    if !on_stratum {
                        return Ok(None);
                    }
                    // left_j = (y_j ... y_{i-1})^(-q^{d-i}), middle 0, right_j = 1/(y_{j+1} ... y_{d-1})
                    let left: Vec<Fe> = (1..=i)
                        .map(|j| {
                            let pr = ys[j - 1..i - 1].iter().fold(Fe::ONE, |a, &t| k.mul(a, t));
                            k.inv(frob(pr, d - i)).unwrap()
                        })
                        .collect();
                    let right: Vec<Fe> = (i..d)
                        .map(|j| k.inv(ys[j..].iter().fold(Fe::ONE, |a, &t| k.mul(a, t))).unwrap())
                        .collect();
                    let img = maps.rho_bar(&PartialCompactPoint::Boundary(y.clone())).unwrap();
                    let expected = (normalized(k, &left), normalized(k, &right));
                    if (normalized(k, img.left.coords()), normalized(k, img.right.coords())) != expected
                        || !img.middle.is_zero()
                        || maps.rho_bar_boundary_symbolic(&y).unwrap() != img
                    {
                        return Err(format!("{tag}: boundary formula fails at {ys:?}: {img:?}"));
                    }
                    Ok(Some(img))
                })
                .collect();
            let mut seen = HashSet::new();
            for r in results {
                match r {
                    Err(e) => fails.push(e),
                    Ok(None) => interior += 1,
                    Ok(Some(img)) => {
                        boundary += 1;
                        if !seen.insert(img) {
                            fails.push(format!("{tag}: boundary map not injective"));
                        }
                    }
                }
            }
        }
    }
    outcome(&fails, format!("rows={} interior-or-outside={interior} boundary={boundary}", grid.len()))
}

fn chart(ys: &[Fe], k: &FieldCtx) -> Vec<Fe> {
    let mut x = vec![Fe::ONE];
    for &t in ys {
        x.push(k.mul(*x.last().unwrap(), t));
    }
    x
}

fn gl_order(d: usize, q: u64) -> u128 {
    (0..d as u32).map(|j| ipow(q, d as u32) - ipow(q, j)).product()
}

fn components() -> Outcome {
    let mut fails = Vec::new();
    let mut rows = 0;
    for (d, q, m) in count_grid() {
        let c = ctx(d, q, m);
        let dl = fiber_statistics(&c).unwrap().dl;
        if dl == 0 || dl * gl_order(d, q) > 20_000_000 || ipow(q, (d * d) as u32) > 10_000_000 {
            continue;
        }
        rows += 1;
        let tag = format!("d={d} q={q} m={m}");
        let k = c.ext();
        let map = component_classes(&c).unwrap();
        let mut classes: HashMap<Fe, usize> = HashMap::new();
        for v in &map.points {
            *classes.entry(moore(k, &v.0)).or_default() += 1;
        }
        if classes.len() as u64 > q - 1 || classes.len() != map.classes.len() {
            fails.push(format!("{tag}: {} classes", classes.len()));
        }
        if (d, q, m) == (2, 3, 2) {
            let sizes: Vec<usize> = classes.values().copied().collect();
            if sizes.len() != 2 || sizes[0] != sizes[1] {
                fails.push(format!("{tag}: class sizes {sizes:?}"));
            }
        }
        for l in check_component_classes(&c).unwrap().failures() {
            fails.push(l.to_string());
        }
    }
    outcome(&fails, format!("rows={rows}"))
}

fn combinatorics() -> Outcome {
    let mut fails = Vec::new();
    for d in 2..=4 {
        for q in [2u64, 3] {
            for i in 1..d {
                let lib = stratum_component_count(d, q, i).unwrap();
                let brute = subspaces_bruteforce(d, q, i);
                if lib != brute {
                    fails.push(format!("d={d} q={q} i={i}: {lib} vs {brute}"));
                }
            }
        }
    }
    outcome(&fails, "cases=12".into())
}

fn main() -> ExitCode {
    // tolerate libtest-style arguments such as --nocapture
    let start = Instant::now();
    let mut all = true;
    let mut report = |n: usize, name: &str, t: Instant, o: Outcome| {
        all &= o.pass;
        println!(
            "criterion {n} {name} {} {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    };
    let t = Instant::now();
    let (c1, c2) = counts_and_fibers();
    report(1, "count-identity", t, c1);
    report(2, "covering-fibers", t, c2);
    let t = Instant::now();
    report(3, "lusztig-roundtrip", t, roundtrip());
    let t = Instant::now();
    report(4, "quotient-laws", t, quotient_laws());
    let t = Instant::now();
    report(5, "symbolic-certificates", t, symbolic());
    let t = Instant::now();
    report(6, "chart-coherence", t, chart_coherence());
    let t = Instant::now();
    report(7, "component-invariant", t, components());
    let t = Instant::now();
    report(8, "stratum-combinatorics", t, combinatorics());
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
