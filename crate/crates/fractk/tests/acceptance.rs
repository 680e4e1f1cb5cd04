//! Acceptance gate. Runs without the libtest harness so that the verdict
//! lines reach the console: one `PASS`/`FAIL` line per criterion, then a
//! non-zero exit status if anything failed.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};
use std::time::{Duration, Instant};

use fractk::classical::{
    classical_dimension, classical_ifs, collar_area, ClassicalLevel, ClassicalParams,
};
use fractk::dimension::{family_boundary, fit_dimension, BoxCountSeries};
use fractk::geom::{hausdorff_distance, polygon_area, shoelace, Location, Point, Region, Segment, Tolerance};
use fractk::ifs::{ifs_iterate, open_set_check};
use fractk::prefractal::Family;
use fractk::spaces::*;
use fractk::square::{collar, quarter_subset, square_ifs, square_prefractal, QuarterKind, QuarterRegion};
use fractk::suite::{run_suite, SuiteConfig, SuiteReport};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn betas() -> [f64; 3] {
    [FRAC_PI_3, FRAC_PI_6, PI / 20.0]
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b;
    for b in betas() {
        let p = ClassicalParams::new(b).unwrap();
        let xi = p.xi();
        for j in 0..=6 {
            let l = ClassicalLevel::new(p, j).map_err(|e| e.to_string())?;
            let inner = l.inner.polygon();
            let outer = l.outer.polygon();
            check(inner.edge_count() == 3 << (2 * j), format!("inner edge count at beta={b}, j={j}"))?;
            check(outer.edge_count() == 6 << (2 * j), format!("outer edge count at beta={b}, j={j}"))?;
            let li = xi.powi(j as i32);
            let lo = xi.powf(j as f64 + 0.5);
            check(inner.edges().all(|e| rel(e.length(), li)), format!("inner edge length at beta={b}, j={j}"))?;
            check(outer.edges().all(|e| rel(e.length(), lo)), format!("outer edge length at beta={b}, j={j}"))?;
        }
    }
    for j in 0..=6u32 {
        let l = square_prefractal(j).map_err(|e| e.to_string())?;
        let segs = l.boundary_segments();
        check(segs.len() == 4 << (3 * j), format!("square edge count at j={j}"))?;
        let ell = 0.25f64.powi(j as i32);
        check(segs.iter().all(|s| s.length() == ell), format!("square edge length at j={j}"))?;
    }
    let el = t.elapsed();
    check(el < Duration::from_secs(30), format!("runtime {}", secs(el)))?;
    Ok(format!("edge counts and lengths exact for j <= 6 ({})", secs(el)))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for b in betas() {
        let p = ClassicalParams::new(b).unwrap();
        for j in 0..=5 {
            let l = ClassicalLevel::new(p, j).map_err(|e| e.to_string())?;
            let by_polygons = polygon_area(l.outer.polygon()) - polygon_area(l.inner.polygon());
            let by_cells: f64 = l.collar_triangles().iter().map(|t| shoelace(t).abs()).sum();
            let exact = collar_area(&p, j);
            // Independent closed form, spelled out again here.
            let xi = p.xi();
            let formula = 1.5 * (2.0 * xi).powi(2 * j as i32) * (xi - 0.25).sqrt();
            for got in [by_polygons, by_cells, exact] {
                let r = (got - formula).abs() / formula;
                worst = worst.max(r);
                check(r <= 1e-9, format!("classical collar area at beta={b}, j={j}: {got} vs {formula}"))?;
            }
        }
    }
    for j in 0..=5u32 {
        let (_, area) = collar(j).map_err(|e| e.to_string())?;
        let want = 2f64.powi(1 - j as i32);
        check((area - want).abs() <= 1e-12, format!("square collar area at j={j}: {area}"))?;
        let l = square_prefractal(j).map_err(|e| e.to_string())?;
        let (inner, outer) = (l.region(QuarterKind::Inner), l.region(QuarterKind::Outer));
        check((outer.area() - inner.area() - want).abs() <= 1e-12, format!("square outer - inner at j={j}"))?;
        check(l.area() == 1.0, format!("|Γ_j| = {} at j={j}", l.area()))?;
    }
    Ok(format!("collar areas match closed forms (worst classical rel. err {worst:.1e}); |Γ_j| = 1"))
}

fn vertices_inside(vs: impl Iterator<Item = Point>, r: &dyn Region, tol: Tolerance) -> bool {
    let mut ok = true;
    for v in vs {
        ok &= r.locate(v, tol) != Location::Outside;
    }
    ok
}

fn region_vertices(r: &QuarterRegion) -> Vec<Point> {
    r.boundary().segments().iter().map(|s: &Segment| s.a).collect()
}

fn criterion_3() -> Outcome {
    let tol = Tolerance::new(1e-9).unwrap();
    for b in betas() {
        let p = ClassicalParams::new(b).unwrap();
        let mut prev = ClassicalLevel::new(p, 0).unwrap();
        for j in 0..=5 {
            let next = ClassicalLevel::new(p, j + 1).unwrap();
            let iv = |l: &ClassicalLevel| l.inner.polygon().vertices().to_vec();
            let ov = |l: &ClassicalLevel| l.outer.polygon().vertices().to_vec();
            check(vertices_inside(iv(&prev).into_iter(), &next.inner, tol), format!("inner nesting beta={b} j={j}"))?;
            check(vertices_inside(ov(&next).into_iter(), &prev.outer, tol), format!("outer nesting beta={b} j={j}"))?;
            check(vertices_inside(iv(&prev).into_iter(), &prev.outer, tol), format!("inner in outer beta={b} j={j}"))?;
            prev = next;
        }
    }
    let mut prev = square_prefractal(0).unwrap();
    for j in 0..=5u32 {
        let next = square_prefractal(j + 1).unwrap();
        let (ai, ao) = (prev.region(QuarterKind::Inner), prev.region(QuarterKind::Outer));
        let (bi, bo) = (next.region(QuarterKind::Inner), next.region(QuarterKind::Outer));
        check(vertices_inside(region_vertices(&ai).into_iter(), &bi, tol), format!("square inner nesting j={j}"))?;
        check(vertices_inside(region_vertices(&bo).into_iter(), &ao, tol), format!("square outer nesting j={j}"))?;
        check(vertices_inside(region_vertices(&ai).into_iter(), &ao, tol), format!("square inner in outer j={j}"))?;
        if j <= 3 {
            // Exact quarter-level inclusion on top of the vertex test.
            check(quarter_subset(&ai, &bi) && quarter_subset(&bo, &ao) && quarter_subset(&ai, &ao), format!("square quarters j={j}"))?;
        }
        prev = next;
    }
    Ok("vertex containment holds for both families, j <= 5".into())
}

fn criterion_4() -> Outcome {
    let seed = [Segment::raw(Point::ORIGIN, Point::new(1.0, 0.0))];
    let mut worst: f64 = 0.0;
    for b in betas() {
        let p = ClassicalParams::new(b).unwrap();
        let maps = classical_ifs(&p);
        for j in 1..=5 {
            let img = ifs_iterate(&maps, &seed, j, 1 << 24).map_err(|e| e.to_string())?;
            // The polygon's bottom leg has its bumps below the axis; reflect it up.
            let leg: Vec<Segment> = ClassicalLevel::new(p, j)
                .unwrap()
                .inner_bottom_leg()
                .iter()
                .map(|s| Segment::raw(Point::new(s.a.x, -s.a.y), Point::new(s.b.x, -s.b.y)))
                .collect();
            let h = hausdorff_distance(&img, &leg, 1e-3 * p.xi().powi(j as i32)).map_err(|e| e.to_string())?;
            worst = worst.max(h.value);
            check(h.value <= 1e-9 + h.error_bound, format!("classical IFS beta={b} j={j}: {}", h.value))?;
        }
        let o = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, p.bump_height())];
        let osc = open_set_check(&maps, &o);
        check(osc.max_overlap < 1e-12 && osc.max_escape < 1e-12, format!("classical open set beta={b}: {osc:?}"))?;
    }
    let maps = square_ifs();
    for j in 1..=5u32 {
        let img = ifs_iterate(&maps, &seed, j, 1 << 24).map_err(|e| e.to_string())?;
        let segs = square_prefractal(j).unwrap().boundary_segments();
        let leg = &segs[..1 << (3 * j)];
        let h = hausdorff_distance(&img, leg, 1e-3 * 0.25f64.powi(j as i32)).map_err(|e| e.to_string())?;
        worst = worst.max(h.value);
        check(h.value <= 1e-9 + h.error_bound, format!("square IFS j={j}: {}", h.value))?;
    }
    let diamond = [Point::new(0.0, 0.0), Point::new(0.5, -0.5), Point::new(1.0, 0.0), Point::new(0.5, 0.5)];
    let osc = open_set_check(&maps, &diamond);
    check(osc.max_overlap < 1e-12 && osc.max_escape < 1e-12, format!("square open set: {osc:?}"))?;
    Ok(format!("IFS images match the prefractal legs (max d_H {worst:.1e}); open set condition holds"))
}

fn criterion_5() -> Outcome {
    let mut notes = vec![];
    let cases = [
        (Family::Classical { beta: FRAC_PI_6 }, 7, 3.0f64, 6, classical_dimension(&ClassicalParams::koch())),
        (Family::Square, 6, 4.0, 5, 1.5),
    ];
    for (family, level, base, kmax, want) in cases {
        let t = Instant::now();
        let segs = family_boundary(&family, level).map_err(|e| e.to_string())?;
        let radii: Vec<f64> = (1..=kmax).map(|k| base.powi(-k)).collect();
        let series = BoxCountSeries::measure(&segs, &radii).map_err(|e| e.to_string())?;
        let fit = fit_dimension(&series, 0, 0).map_err(|e| e.to_string())?;
        let el = t.elapsed();
        check((fit.slope - want).abs() <= 0.05, format!("{} slope {} vs {want}", family.name(), fit.slope))?;
        check(el < Duration::from_secs(120), format!("{} runtime {}", family.name(), secs(el)))?;
        notes.push(format!("{} slope {:.4} ({})", family.name(), fit.slope, secs(el)));
    }
    Ok(notes.join(", "))
}

fn criterion_6(r: &SuiteReport) -> Outcome {
    let mut queries = 0;
    for f in &r.families {
        let name = f.family.name();
        for c in &f.cond1 {
            check(c.satisfied && c.points >= 1000, format!("{name} collar condition at j={}: {c:?}", c.level))?;
            check(c.level <= 5, "levels above 5")?;
        }
        for (what, scans) in [
            ("interior cubes", &f.interior_cubes),
            ("exterior cubes", &f.exterior_cubes),
            ("E-thick queries", &f.e_thick),
            ("I-thick queries", &f.i_thick),
        ] {
            for s in scans {
                check(s.all_satisfied(), format!("{name} {what} at j={}: {}/{}", s.level, s.satisfied, s.queries))?;
                if what.ends_with("cubes") {
                    check(s.queries >= 1000, format!("{name} {what}: only {} queries", s.queries))?;
                }
                queries += s.queries;
            }
        }
        check(f.cond1.len() == 5, format!("{name}: expected levels 1..=5"))?;
    }
    Ok(format!("collar, cube and thickness witnesses all satisfied ({queries} queries, zero failures)"))
}

fn criterion_7(r: &SuiteReport) -> Outcome {
    let mut notes = vec![];
    for f in &r.families {
        let name = f.family.name();
        check(f.ball.min_eta > 0.0 && f.ball.centers == 100 && f.ball.radii.len() == 2 && f.ball.level == 5, format!("{name} ball: {:?}", f.ball))?;
        let g = &f.regularity;
        check(g.cubes >= 200 && g.levels == [5, 6], format!("{name} regularity setup: {g:?}"))?;
        check(g.min_ratio[0] > 0.0 && g.min_ratio[1] > 0.0, format!("{name} regularity ratio: {g:?}"))?;
        check(g.relative_change <= 0.1, format!("{name} regularity drift {}", g.relative_change))?;
        notes.push(format!("{name} η {:.3}, ratio {:.3} (drift {:.1e})", f.ball.min_eta, g.min_ratio[1], g.relative_change));
    }
    Ok(notes.join("; "))
}

struct Case {
    name: &'static str,
    verdict: Verdict,
    answer: Answer,
    tag: Option<&'static str>,
}

fn truth_table() -> Result<Vec<Case>, fractk::Error> {
    let koch_d = 4f64.ln() / 3f64.ln();
    let koch = SetDescriptor::snowflake_boundary(&Family::Classical { beta: FRAC_PI_6 })?;
    let h = |s: f64, n: u32| SpaceParams::h(s, 2.0, n);
    let dom = SetDescriptor::snowflake_domain();
    let not_thick = SetDescriptor { thick: false, e_thick: false, i_thick: false, ..dom };
    let case = |name, verdict, answer, tag| Case { name, verdict, answer, tag };
    Ok(vec![
        case("nullity: Koch, s = 0", nullity_classify(&h(0.0, 2)?, &koch)?, Answer::Null, Some(tags::NULLITY)),
        case("nullity: Koch, s = -1", nullity_classify(&h(-1.0, 2)?, &koch)?, Answer::NonNull, Some(tags::NULLITY)),
        case(
            "nullity: compact d-set at threshold",
            nullity_classify(&h((koch_d - 2.0) / 2.0, 2)?, &SetDescriptor::dset(koch_d, true))?,
            Answer::Null,
            Some(tags::NULLITY_THRESHOLD),
        ),
        case(
            "nullity: p = 1/2, s = 3, n = 1",
            nullity_classify(&SpaceParams::new(Scale::B, 3.0, 0.5, 1.0, 1)?, &SetDescriptor::new(SetKind::Custom, 0.0))?,
            Answer::Null,
            Some(tags::NULLITY),
        ),
        case("equality: thick, H, s = -7", q1_equality_decide(&dom, &h(-7.0, 2)?)?, Answer::Equal, Some(tags::THICK_H)),
        case(
            "equality: thick, B, s = 0",
            q1_equality_decide(&dom, &SpaceParams::new(Scale::B, 0.0, 2.0, 3.0, 2)?)?,
            Answer::Unknown,
            None,
        ),
        case("equality: not thick", q1_equality_decide(&not_thick, &h(1.0, 2)?)?, Answer::Unknown, None),
        case(
            "density: plane in R^3, window m = 0",
            density_decide(-0.9, -1.4, &h(0.0, 3)?, &SetDescriptor::hyperplane(2))?,
            Answer::Dense,
            Some(tags::DENSITY),
        ),
        case(
            "density: Koch across the nullity threshold",
            density_decide(0.0, -1.0, &h(0.0, 2)?, &koch)?,
            Answer::NotDense,
            Some(tags::NULLITY),
        ),
        case(
            "density: disc in R^3 across -3/2",
            density_decide(-1.4, -1.6, &h(0.0, 3)?, &SetDescriptor::disc(2))?,
            Answer::NotDense,
            Some(tags::COUNTEREXAMPLE),
        ),
        case(
            "density: non-smooth d-set at the limit case",
            density_decide(-1.0, -1.5, &h(0.0, 3)?, &SetDescriptor::dset(2.0, true))?,
            Answer::Unknown,
            None,
        ),
        case(
            "density: line in R^2, window m = 1",
            density_decide(-1.6, -2.4, &h(0.0, 2)?, &SetDescriptor::hyperplane(1))?,
            Answer::Dense,
            Some(tags::DENSITY),
        ),
        case(
            "density: line in R^2, closed lower end -3/2 - m",
            density_decide(-0.6, -1.5, &h(0.0, 2)?, &SetDescriptor::hyperplane(1))?,
            Answer::Dense,
            Some(tags::HYPERPLANE),
        ),
        case("point: both trivial", d0_density_decide(1.0, 2.0, 2.0, 0.5, 2.0, 2.0, 1)?, Answer::Trivial, Some(tags::POINT)),
        case("point: equal floors", d0_density_decide(-1.6, 2.0, 2.0, -1.9, 2.0, 2.0, 1)?, Answer::Equal, Some(tags::POINT)),
        case("point: floors -1 vs -2", d0_density_decide(-1.0, 2.0, 2.0, -2.0, 2.0, 2.0, 1)?, Answer::NotDense, Some(tags::POINT)),
        case(
            "point: trivial into non-trivial",
            d0_density_decide(-1.0, 2.0, 2.0, -2.5, 2.0, 2.0, 2)?,
            Answer::NotDense,
            Some(tags::POINT),
        ),
        case("kernel: inside (1/4, 5/4)", kernel_window_check(2, 1.5, 2.0, 0, 0.4)?, Answer::Applies, Some(tags::KERNEL)),
        case("kernel: right endpoint", kernel_window_check(2, 1.5, 2.0, 0, 1.25)?, Answer::Unknown, Some(tags::KERNEL_OPEN)),
        case("kernel: below the window", kernel_window_check(2, 1.5, 2.0, 0, 0.1)?, Answer::Unknown, Some(tags::KERNEL)),
    ])
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let cases = truth_table().map_err(|e| e.to_string())?;
    let el = t.elapsed();
    check(cases.len() == 20, format!("{} cases", cases.len()))?;
    for c in &cases {
        check(c.verdict.answer == c.answer, format!("{}: got {:?}, want {:?}", c.name, c.verdict.answer, c.answer))?;
        if let Some(tag) = c.tag {
            check(c.verdict.theorem == tag, format!("{}: tag {} vs {tag}", c.name, c.verdict.theorem))?;
        }
        if matches!(c.verdict.polarity, Polarity::Yes | Polarity::No) {
            check(!c.verdict.theorem.is_empty(), format!("{}: decisive verdict without a tag", c.name))?;
        }
    }
    // The point case also reports both dimensions.
    check(cases[16].verdict.dims == Some([0, 3]), format!("point dims {:?}", cases[16].verdict.dims))?;
    check(el < Duration::from_secs(1), format!("runtime {}", secs(el)))?;
    Ok(format!("20/20 cases match, every decisive verdict tagged ({:.1} ms)", el.as_secs_f64() * 1e3))
}

/// `#{β ∈ ℕ₀ⁿ : |β| < t}` by walking all of `{0..10}ⁿ`.
fn brute_force(n: u32, t: f64) -> u64 {
    let mut count = 0;
    let mut beta = vec![0u32; n as usize];
    loop {
        if (beta.iter().sum::<u32>() as f64) < t {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == beta.len() {
                return count;
            }
            beta[i] += 1;
            if beta[i] <= 10 {
                break;
            }
            beta[i] = 0;
            i += 1;
        }
    }
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for n in 1..=4u32 {
        for p in [0.5, 2.0, 3.0] {
            // Thresholds t from -1 to 10 in quarter steps, hitting every integer.
            for k in -4..=40 {
                let t = k as f64 / 4.0;
                let s = -t - n as f64 * (1.0 - 1.0 / p);
                let got = point_space_dimension(n, p, s);
                let want = brute_force(n, t);
                check(got == want, format!("n={n}, p={p}, t={t}: {got} vs {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, p, t) combinations agree with enumeration"))
}

fn criterion_10(a: &SuiteReport, b: &SuiteReport) -> Outcome {
    let (x, y) = (serde_json::to_vec_pretty(a).unwrap(), serde_json::to_vec_pretty(b).unwrap());
    check(x == y, "reports differ")?;
    Ok(format!("two full-suite reports are byte-identical ({} bytes)", x.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |i: usize, o: Outcome| match o {
        Ok(msg) => println!("PASS criterion {i}: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL criterion {i}: {msg}");
        }
    };
    report(1, criterion_1());
    report(2, criterion_2());
    report(3, criterion_3());
    report(4, criterion_4());
    report(5, criterion_5());

    let cfg = SuiteConfig::full(20_240_601);
    let t = Instant::now();
    let first = run_suite(&cfg);
    let el = t.elapsed();
    let second = run_suite(&cfg);
    match (first, second) {
        (Ok(a), Ok(b)) => {
            report(6, criterion_6(&a).map(|m| format!("{m} [suite {}]", secs(el))));
            report(7, criterion_7(&a));
            report(8, criterion_8());
            report(9, criterion_9());
            report(10, criterion_10(&a, &b));
        }
        (Err(e), _) | (_, Err(e)) => {
            for i in [6, 7, 10] {
                report(i, Err(format!("suite failed: {e}")));
            }
            report(8, criterion_8());
            report(9, criterion_9());
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
