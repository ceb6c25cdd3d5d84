use std::fmt::Write;
use std::path::Path;

use ditcalc::distributions as dist;
use ditcalc::verify::{self, LatticeOps, VerificationReport};
use ditcalc::{demo as demos, entropy, io, pairs, Base, Family};
use serde_json::{json, Value};

use crate::input::{parse_dist_csv, parse_distance_matrix, read_partition, read_to_string};
use crate::render::{blocks, exact, sig};
use crate::{BaseArg, CliError, Fault};

fn base_of(arg: BaseArg) -> Result<Base, CliError> {
    Ok(Base::new(arg.base)?)
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn entropy(file: &Path, base: BaseArg, json: bool, dits: bool) -> Result<String, CliError> {
    let base = base_of(base)?;
    let pi = read_partition(file)?;
    let report = entropy::entropy_report(&pi, base);
    let dit_set = dits.then(|| pairs::dit_set(&pi));
    if json {
        let mut v = json!({
            "partition": io::to_json(&pi),
            "report": report,
        });
        if let Some(d) = dit_set {
            v["dits"] = serde_json::to_value(d).expect("pair sets serialize");
        }
        return Ok(to_json(&v));
    }
    let u = pi.universe();
    let b = base.value();
    let mut out = String::new();
    writeln!(out, "partition: {}", blocks(&pi)).unwrap();
    writeln!(out, "elements: {}, blocks: {}", pi.size(), pi.num_blocks()).unwrap();
    writeln!(out, "dits: {} of {} ordered pairs", pi.dit_count(), pi.size() * pi.size()).unwrap();
    writeln!(out, "h       = {}", exact(report.logical)).unwrap();
    writeln!(out, "H_{b:<5} = {}", sig(report.shannon)).unwrap();
    writeln!(out, "H_m     = {}", sig(report.block_count)).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "block\tp_B\th(B)\tH_{b}(B)\tH_m(B)\tmembers").unwrap();
    for (be, members) in report.blocks.iter().zip(pi.blocks()) {
        let names: Vec<_> = members.iter().map(|&e| u.label(e)).collect();
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            be.block,
            be.probability,
            be.logical,
            sig(be.shannon),
            sig(be.block_count),
            names.join(" ")
        )
        .unwrap();
    }
    if let Some(d) = dit_set {
        writeln!(out).unwrap();
        let pairs: Vec<String> = d
            .pairs()
            .map(|(i, j)| format!("({},{})", u.label(i), u.label(j)))
            .collect();
        writeln!(out, "dit set: {}", pairs.join(" ")).unwrap();
    }
    Ok(out)
}

pub fn dist(
    file: &Path,
    base: BaseArg,
    json: bool,
    quadratic: Option<&Path>,
    family: Option<(Family, f64)>,
) -> Result<String, CliError> {
    let base = base_of(base)?;
    let data = parse_dist_csv(&read_to_string(file)?)
        .map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", file.display())),
            other => other,
        })?;
    let p = &data.dist;
    let h = dist::logical_entropy(p);
    let rho = dist::repeat_rate(p);
    let shannon = dist::shannon_entropy(p, base);
    let hm = dist::block_count_entropy(p);
    let parametric = match family {
        Some((f, x)) => Some((f, x, dist::parametric_entropy(p, f, x)?)),
        None => None,
    };
    let quad = match quadratic {
        Some(path) => {
            let m = parse_distance_matrix(&read_to_string(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Some(dist::quadratic_entropy(p, &m)?)
        }
        None => None,
    };
    if json {
        return Ok(to_json(&json!({
            "labels": data.labels,
            "probs": p.probs(),
            "logical_entropy": h,
            "repeat_rate": rho,
            "numbers_equivalent": 1.0 / rho,
            "shannon_entropy": shannon,
            "base": base.value(),
            "block_count_entropy": hm,
            "parametric": parametric.map(|(f, x, v)| json!({"family": f.name(), "param": x, "value": v})),
            "quadratic_entropy": quad,
        })));
    }
    let b = base.value();
    let mut out = String::new();
    writeln!(out, "outcomes: {}", p.len()).unwrap();
    writeln!(out, "h       = {}", sig(h)).unwrap();
    writeln!(out, "rho     = {}", sig(rho)).unwrap();
    writeln!(out, "1/rho   = {}", sig(1.0 / rho)).unwrap();
    writeln!(out, "H_{b:<5} = {}", sig(shannon)).unwrap();
    writeln!(out, "H_m     = {}", sig(hm)).unwrap();
    if let Some((f, x, v)) = parametric {
        writeln!(out, "{f}({}) = {}", sig(x), sig(v)).unwrap();
    }
    if let Some(q) = quad {
        writeln!(out, "quadratic = {}", sig(q)).unwrap();
    }
    Ok(out)
}

pub fn compare(a: &Path, b: &Path, base: BaseArg, json: bool) -> Result<String, CliError> {
    let base = base_of(base)?;
    let pi = read_partition(a)?;
    let sigma = read_partition(b)?
        .relabel_onto(pi.universe())
        .map_err(|_| CliError::Input(format!(
            "{} and {} do not partition the same labels",
            a.display(),
            b.display()
        )))?;
    let join = pi.join(&sigma)?;
    let meet = pi.meet(&sigma)?;
    let (ha, hb) = (entropy::logical_entropy(&pi), entropy::logical_entropy(&sigma));
    let hj = entropy::logical_entropy(&join);
    let hmeet = entropy::logical_entropy(&meet);
    let m = entropy::logical_mutual_info(&pi, &sigma)?;
    let modular_rhs = ha + hb - hj;
    let mi = entropy::shannon_mutual_info(&pi, &sigma, base)?;
    let independent = entropy::are_independent(&pi, &sigma)?;
    let (sa, sb, sj) = (
        entropy::shannon_entropy(&pi, base),
        entropy::shannon_entropy(&sigma, base),
        entropy::shannon_entropy(&join, base),
    );
    if json {
        return Ok(to_json(&json!({
            "a": io::to_json(&pi),
            "b": io::to_json(&sigma),
            "join": io::to_json(&join),
            "meet": io::to_json(&meet),
            "logical_entropy": { "a": ha, "b": hb, "join": hj, "meet": hmeet },
            "shannon_entropy": { "a": sa, "b": sb, "join": sj },
            "base": base.value(),
            "logical_mutual_info": m,
            "modular_law": { "m": m, "h_a_plus_h_b_minus_h_join": modular_rhs, "holds": m == modular_rhs },
            "shannon_mutual_info": mi,
            "independent": independent,
        })));
    }
    let bv = base.value();
    let mut out = String::new();
    writeln!(out, "A    = {}", blocks(&pi)).unwrap();
    writeln!(out, "B    = {}", blocks(&sigma)).unwrap();
    writeln!(out, "join = {}", blocks(&join)).unwrap();
    writeln!(out, "meet = {}", blocks(&meet)).unwrap();
    writeln!(out, "h(A) = {}", exact(ha)).unwrap();
    writeln!(out, "h(B) = {}", exact(hb)).unwrap();
    writeln!(out, "h(join) = {}", exact(hj)).unwrap();
    writeln!(out, "h(meet) = {}", exact(hmeet)).unwrap();
    writeln!(out, "m(A,B) = {}", exact(m)).unwrap();
    writeln!(out, "modular law: m = {}, h(A) + h(B) - h(join) = {}", m, modular_rhs).unwrap();
    writeln!(out, "H_{bv}(A) = {}, H_{bv}(B) = {}, H_{bv}(join) = {}", sig(sa), sig(sb), sig(sj)).unwrap();
    writeln!(out, "I(A;B) = {}", sig(mi)).unwrap();
    writeln!(out, "independent: {}", if independent { "yes" } else { "no" }).unwrap();
    Ok(out)
}

pub fn demo(radix: u32, n: u32, json: bool) -> Result<String, CliError> {
    let trace = match radix {
        2 => demos::binary_demo(n),
        _ => demos::coin_demo(n),
    }
    .map_err(|e| CliError::Input(format!("--n {n} is out of range: {e}")))?;
    if json {
        return Ok(to_json(&serde_json::to_value(&trace).expect("traces serialize")));
    }
    let what = if radix == 2 { "binary-digit partitions" } else { "weighings (ternary digits)" };
    let size = trace.universe_size;
    let mut out = String::new();
    writeln!(
        out,
        "{n} {what} on {radix}^{n} = {size} elements ({} dit counting)",
        trace.counting
    )
    .unwrap();
    for s in &trace.steps {
        writeln!(
            out,
            "step {}: +{} dits (expected {}), total {}",
            s.step, s.new_dits, s.expected_new_dits, s.total_dits
        )
        .unwrap();
    }
    writeln!(
        out,
        "total dits: {} (expected {} = {size}*{})",
        trace.total_dits,
        trace.expected_total_dits,
        size - 1
    )
    .unwrap();
    writeln!(out, "h = {}", exact(trace.logical_entropy)).unwrap();
    writeln!(out, "H_{radix} = {}", sig(trace.shannon_entropy)).unwrap();
    writeln!(out, "H_m = {}", sig(trace.block_count_entropy)).unwrap();
    Ok(out)
}

fn render_reports(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            out,
            "{} {} [{}] cases={}",
            if r.passed() { "PASS" } else { "FAIL" },
            r.name,
            params.join(" "),
            r.cases
        )
        .unwrap();
        if !r.passed() {
            writeln!(out, "  {} failure(s); first counterexamples:", r.failures_total).unwrap();
            for f in &r.failures {
                for line in f.lines() {
                    writeln!(out, "    {line}").unwrap();
                }
                writeln!(out).unwrap();
            }
        }
    }
    out
}

pub fn verify(
    max_n: usize,
    trials: usize,
    seed: u64,
    n_max: usize,
    grids: &[(usize, usize)],
    json: bool,
    fault: Option<Fault>,
) -> Result<String, CliError> {
    let ops = match fault {
        Some(Fault::CorruptMeet) => LatticeOps {
            meet: verify::corrupted_meet,
            ..LatticeOps::default()
        },
        None => LatticeOps::default(),
    };
    let mut reports = verify::run_exhaustive_with(max_n, &ops)?;
    reports.extend(verify::run_independence(grids)?);
    reports.extend(verify::run_distribution_trials(n_max, trials, seed)?);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let out = if json {
        to_json(&json!({
            "passed": failed == 0,
            "reports": reports,
        }))
    } else {
        let mut s = render_reports(&reports);
        writeln!(s, "{} checks, {} failed", reports.len(), failed).unwrap();
        s
    };
    if failed == 0 {
        Ok(out)
    } else {
        Err(CliError::Verification(out))
    }
}
