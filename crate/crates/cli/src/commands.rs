//! Subcommand bodies. Seeds: a random graph, the zig-zag base search and a
//! random edge labeling each take `--seed` directly; walks use
//! `seed + trial`.

use crate::*;
use expanders::codes::{self, EdgeLabeling};
use expanders::constructions::{self, BaseSearchOptions};
use expanders::graph::{self, cheeger_exact, expansion_exact, EXACT_CAP};
use expanders::group::{self, close_group, Cyclic, GenSet, GroupElement, GroupTable, ModMatrix, Perm, ZMatrix};
use expanders::group_sieve::{self as gs, Predicate, WalkConfig};
use expanders::prodrep;
use expanders::sieve::{self, Polynomial};
use expanders::spectral::{self, cheeger_bounds};
use expanders::{Error, Graph};
use num_bigint::BigInt;
use serde_json::json;
use std::path::Path;

pub fn run(cmd: &Command, seed: u64) -> Result<String, CliError> {
    match cmd {
        Command::Graph(a) => graph_cmd(a, seed),
        Command::Spectral(a) => spectral_cmd(a, seed),
        Command::Cayley(a) => cayley_cmd(a, seed),
        Command::Zigzag(a) => zigzag_cmd(a, seed),
        Command::Code(a) => code_cmd(a, seed),
        Command::Prodrep(a) => prodrep_cmd(a, seed),
        Command::Sieve(a) => sieve_cmd(a, seed),
        Command::Orbit(a) => orbit_cmd(a, seed),
        Command::Walk(a) => walk_cmd(a, seed),
    }
}

fn load_graph(src: &GraphSource, m: &mut RunManifest, seed: u64) -> Result<Graph, CliError> {
    if let Some(p) = &src.input {
        return Ok(graph::read_graph(&m.read(p)?)?);
    }
    if let Some(pre) = src.preset {
        return Ok(match pre {
            GraphPreset::K4 => Graph::complete(4),
            GraphPreset::C6 => Graph::cycle(6),
            GraphPreset::Petersen => Graph::petersen(),
        });
    }
    let (n, k) = src.random.expect("clap enforces one source");
    Ok(constructions::random_regular(n, k, seed)?)
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Lib(Error::Invalid(msg.into()))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn graph_cmd(a: &GraphArgs, seed: u64) -> Result<String, CliError> {
    let mut m = RunManifest::new("graph", seed, a);
    let g = load_graph(&a.source, &mut m, seed)?;
    if let Some(p) = &a.write {
        write_file(p, &graph::write_graph(&g))?;
    }
    let exact = |f: fn(&Graph) -> expanders::Result<graph::CutWitness>| {
        (g.n() <= EXACT_CAP && g.n() >= 2).then(|| f(&g).map(|c| c.value.to_string())).transpose()
    };
    let report = json!({
        "n": g.n(),
        "k": g.k(),
        "edges": g.edge_count(),
        "connected": g.is_connected(),
        "bipartite": graph::bipartition(&g).is_some(),
        "girth": g.girth(),
        "diameter": g.diameter().ok(),
        "expansion": exact(expansion_exact)?,
        "cheeger": exact(cheeger_exact)?,
    });
    Ok(m.json(&report))
}

fn spectral_cmd(a: &SpectralArgs, seed: u64) -> Result<String, CliError> {
    let mut m = RunManifest::new("spectral", seed, a);
    let g = load_graph(&a.source, &mut m, seed)?;
    let s = spectral::spectrum(&g)?;
    let (lo, hi) = cheeger_bounds(&s);
    let mut report = serde_json::to_value(s.report()).expect("report");
    report["cheeger_lower"] = json!(lo);
    report["cheeger_upper"] = json!(hi);
    report["partial"] = json!(s.is_partial());
    Ok(m.json(&report))
}

fn cayley_cmd(a: &CayleyArgs, seed: u64) -> Result<String, CliError> {
    let mut m = RunManifest::new("cayley", seed, a);
    let sigma = match &a.gens {
        Some(p) => {
            let (modulus, mats) = group::parse_generator_file(&m.read(p)?)?;
            if modulus == 0 {
                return Err(invalid("Cayley graphs need a finite group: the modulus must be nonzero"));
            }
            GenSet::symmetrize(mats.iter().map(|x| x.reduce(modulus)).collect())
        }
        None => group::sl2_onetwothree_generators(a.t, a.p)?,
    };
    let tbl = close_group(sigma.elements())?;
    let g = group::cayley_graph(&tbl, &sigma)?;
    if let Some(p) = &a.write {
        write_file(p, &graph::write_graph(&g))?;
    }
    let s = spectral::spectrum(&g)?;
    let report = json!({
        "order": tbl.order(),
        "degree": sigma.len(),
        "connected": g.is_connected(),
        "girth": g.girth(),
        "spectrum": s.report(),
    });
    Ok(m.json(&report))
}

fn zigzag_cmd(a: &ZigzagArgs, seed: u64) -> Result<String, CliError> {
    let mut m = RunManifest::new("zigzag", seed, a);
    let (base, search) = match &a.base {
        Some(p) => (graph::read_graph(&m.read(p)?)?, None),
        None => {
            let opts = BaseSearchOptions { trials: a.trials, threshold: a.threshold, switches: a.switches };
            let (g, s) = constructions::base_graph_search(a.d, seed, &opts)?;
            (g, Some(s))
        }
    };
    let fam = constructions::iterate_family(&base, a.levels)?;
    if let Some(dir) = &a.dump_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
        write_file(&dir.join("base.graph"), &graph::write_graph(&base))?;
        for (i, g) in fam.levels.iter().enumerate() {
            write_file(&dir.join(format!("level{}.graph", i + 1)), &graph::write_graph(g))?;
        }
    }
    let report = json!({
        "base": { "n": base.n(), "k": base.k(), "search": search },
        "levels": fam.report(),
        "truncated": fam.truncated,
    });
    Ok(m.json(&report))
}

fn code_cmd(a: &CodeArgs, seed: u64) -> Result<String, CliError> {
    let mut m = RunManifest::new("code", seed, a);
    let g = load_graph(&a.source, &mut m, seed)?;
    let Some(inner) = &a.inner else {
        let mut cc = codes::cycle_code(&g);
        let mindist = cc.code.compute_mindist()?;
        if let Some(p) = &a.write_code {
            write_file(p, &codes::write_code(&cc.code))?;
        }
        let report = json!({
            "n": cc.code.n(),
            "dim": cc.code.dim(),
            "expected_dim": cc.expected_dim,
            "mindist": mindist,
            "girth": g.girth(),
        });
        return Ok(m.json(&report));
    };
    let c0 = codes::read_code(&m.read(inner)?)?;
    let lab = match a.labeling {
        Labeling::Port => EdgeLabeling::by_port(&g),
        Labeling::Random => EdgeLabeling::random(&g, seed),
    };
    let cert = codes::rate_distance_certificate(&g, &c0, &lab)?;
    if let Some(p) = &a.write_code {
        write_file(p, &codes::write_code(&codes::tanner_code(&g, &c0, &lab)?))?;
    }
    Ok(m.json(&cert))
}

fn prodrep_cmd(a: &ProdrepArgs, seed: u64) -> Result<String, CliError> {
    let m = RunManifest::new("prodrep", seed, a);
    let (kind, arg) = a
        .group
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--group {:?}: expected cyclic:N, sym:N or sl2:P", a.group)))?;
    let n: u64 = arg.parse().map_err(|_| CliError::Usage(format!("bad group parameter {arg:?}")))?;
    let rows = match kind {
        "cyclic" if n >= 2 => profile(&[Cyclic::new(n, 1)], a, seed)?,
        "sym" if n >= 2 => {
            let cycle: Vec<u32> = (0..n as u32).collect();
            profile(&[Perm::from_cycles(n as usize, &[&[0, 1]]), Perm::from_cycles(n as usize, &[&cycle])], a, seed)?
        }
        "sl2" => {
            let gens = [ModMatrix::new(2, n, &[1, 1, 0, 1]), ModMatrix::new(2, n, &[1, 0, 1, 1])];
            profile(&gens, a, seed)?
        }
        _ => return Err(CliError::Usage(format!("unsupported group {:?}", a.group))),
    };
    Ok(match a.format {
        Format::Csv => m.csv(&prodrep::tv_csv(&rows)),
        Format::Json => m.json(&json!({ "rows": rows })),
    })
}

fn profile<E: GroupElement>(gens: &[E], a: &ProdrepArgs, seed: u64) -> Result<Vec<prodrep::TvRow>, CliError> {
    let tbl: GroupTable<E> = close_group(gens)?;
    let idx: Vec<usize> = gens.iter().map(|g| tbl.index_of(g).expect("generator is in its closure")).collect();
    let start = prodrep::padded_start(&tbl, &idx, a.r)?;
    Ok(prodrep::tv_profile(&tbl, &start, a.tmax, a.trials, seed, a.lazy)?)
}

fn sieve_cmd(a: &SieveArgs, seed: u64) -> Result<String, CliError> {
    let m = RunManifest::new("sieve", seed, a);
    let report = if let Some(x) = a.legendre {
        let count = sieve::legendre_count(x)?;
        let xi = x.floor() as u64;
        let direct = sieve::prime_pi(xi) as i64 - sieve::prime_pi(xi.isqrt()) as i64;
        json!({ "x": x, "legendre": count, "direct": direct, "agree": count == direct })
    } else if let Some(f) = &a.poly {
        let f = Polynomial::parse(f)?;
        json!({ "f": f.to_string(), "x": a.x, "z": a.z, "sifted": sieve::sieve_sum(&f, a.x, a.z)? })
    } else {
        let f = Polynomial::parse(a.beta.as_deref().expect("clap enforces one task"))?;
        json!({ "f": f.to_string(), "d": a.d, "beta": sieve::beta(&f, a.d)? })
    };
    Ok(m.json(&report))
}

fn orbit_cmd(a: &OrbitArgs, seed: u64) -> Result<String, CliError> {
    let mut m = RunManifest::new("orbit", seed, a);
    let points: Vec<sieve::Point> = match a.preset {
        Some(OrbitPreset::Apollonian) => {
            let root = sieve::parse_point(&a.root)?;
            let root: [i64; 4] = root
                .iter()
                .map(|x| i64::try_from(x).map_err(|_| invalid(format!("root entry {x} is too large"))))
                .collect::<Result<Vec<_>, _>>()?
                .try_into()
                .map_err(|_| invalid("the root must have four entries"))?;
            let o = sieve::apollonian_orbit(root, a.radius)?;
            o.quadruples.iter().map(|q| q.iter().map(|&x| BigInt::from(x)).collect()).collect()
        }
        Some(OrbitPreset::Pythagorean) => sieve::pythagorean_orbit(a.radius).points,
        Some(OrbitPreset::Pell) => {
            let (gens, base) = sieve::pell_preset();
            sieve::orbit_ball(&gens, &base, a.radius)?.points
        }
        Some(OrbitPreset::Fibonacci) => {
            let (gens, base) = sieve::fibonacci_preset();
            sieve::orbit_ball(&gens, &base, a.radius)?.points
        }
        None => {
            let path = a.gens.as_ref().expect("clap enforces one source");
            let (modulus, gens) = group::parse_generator_file(&m.read(path)?)?;
            if modulus != 0 {
                return Err(invalid("orbits need integer generators (modulus 0)"));
            }
            let base = sieve::parse_point(a.base.as_deref().expect("clap requires --base"))?;
            sieve::orbit_ball(&gens, &base, a.radius)?.points
        }
    };
    match &a.poly {
        Some(f) => Ok(m.json(&sieve::saturation_report(&points, &Polynomial::parse(f)?)?)),
        None => Ok(m.csv(&sieve::orbit_csv(&points))),
    }
}

fn walk_cmd(a: &WalkArgs, seed: u64) -> Result<String, CliError> {
    let mut m = RunManifest::new("walk", seed, a);
    let gens: Vec<ZMatrix> = match (a.preset, &a.gens) {
        (Some(WalkPreset::Sl2), _) => gs::elementary_generators(2),
        (Some(WalkPreset::Sl3), _) => gs::elementary_generators(3),
        (None, Some(p)) => {
            let (modulus, gens) = group::parse_generator_file(&m.read(p)?)?;
            if modulus != 0 {
                return Err(invalid("walks need integer generators (modulus 0)"));
            }
            gens
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    let cfg = WalkConfig::new(gens, a.steps, a.trials, seed)?;
    if let Some(primes) = &a.primes {
        let h = gs::charpoly_pattern_histogram(&cfg, primes)?;
        return Ok(match a.format {
            Format::Csv => m.csv(&gs::pattern_csv(&h)),
            Format::Json => m.json(&json!({ "histogram": h, "verdict": gs::generic_galois_verdict(&h) })),
        });
    }
    let pred = match a.predicate.strip_prefix("subset:") {
        Some(file) => {
            let (modulus, mats) = group::parse_generator_file(&m.read(Path::new(file))?)?;
            if modulus != a.modulus {
                return Err(invalid(format!("subset file is mod {modulus}, walk is mod {}", a.modulus)));
            }
            Predicate::Subset(mats.iter().map(|x| x.reduce(modulus)).collect())
        }
        None => Predicate::parse(&a.predicate)?,
    };
    let kmax = a.kmax.unwrap_or(a.steps.min(gs::TAIL_KMAX));
    let fit = gs::hit_probability_with(&cfg, &pred, a.modulus, kmax)?;
    Ok(match a.format {
        Format::Csv => m.csv(&gs::decay_csv(&fit)),
        Format::Json => {
            let exact = match gs::exact_fraction(&cfg.gens, &pred, a.modulus) {
                Ok((hits, order)) => Some(json!({ "hits": hits, "order": order, "fraction": hits as f64 / order as f64 })),
                Err(e) if e.is_limit() => None,
                Err(e) => return Err(e.into()),
            };
            m.json(&json!({ "fit": fit, "exact": exact }))
        }
    })
}
