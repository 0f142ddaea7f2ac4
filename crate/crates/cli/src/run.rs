//! Command dispatch and JSON reports.

use defcoh::algebra::{Algebra, Bimodule};
use defcoh::diffop::{self, GammaClass};
use defcoh::gs::{self, GsComplex};
use defcoh::hochschild::{center, cochain_dim, derivations, hh_capped, KnAlgebra, DEFAULT_CAP};
use defcoh::linalg::{Cohomology, CochainComplex, Scalar};
use defcoh::obstruction::{self, Stage};
use defcoh::selftest;
use defcoh::site::{cech_complex, nerve_complex};
use serde_json::{json, Map, Value};

use crate::env::{Command, Env};
use crate::manifest::CommandKind;

pub const DEFAULT_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub degree: Option<usize>,
    pub order: Option<usize>,
    pub size: Option<usize>,
    pub representatives: bool,
    pub seed: u64,
}

/// Outcome of one command: its report, and whether its built-in checks passed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn cohomology(h: &Cohomology, reps: bool) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), json!(h.degree));
    m.insert("dim".into(), json!(h.dim));
    m.insert("cocycles".into(), json!(h.cocycle_dim));
    m.insert("coboundaries".into(), json!(h.coboundary_dim));
    if reps {
        m.insert("representatives".into(), Value::Array(h.representatives.iter().map(|r| scalars(r)).collect()));
    }
    Value::Object(m)
}

fn complex_report(c: &CochainComplex, reps: bool) -> defcoh::Result<Value> {
    let degrees = (c.lo()..=c.hi()).map(|n| c.cohomology(n).map(|h| cohomology(&h, reps))).collect::<defcoh::Result<Vec<_>>>()?;
    Ok(json!({
        "dims": c.dims(),
        "d_squared_zero": c.is_complex(),
        "betti": c.betti(),
        "cohomology": degrees,
    }))
}

fn order_cap(opts: &Options, a: &Algebra) -> usize {
    opts.order.unwrap_or_else(|| diffop::default_order_cap(a.dim()))
}

fn hochschild_report(a: &Algebra, m: &Bimodule, degree: usize, cap: usize, reps: bool) -> defcoh::Result<Value> {
    cochain_dim(a.dim(), m.dim(), degree + 1, cap)?;
    let hs = (0..=degree).map(|q| hh_capped(a, m, q, cap)).collect::<defcoh::Result<Vec<_>>>()?;
    let der = derivations(a, m);
    Ok(json!({
        "dims": hs.iter().map(|h| h.dim).collect::<Vec<_>>(),
        "cohomology": hs.iter().map(|h| cohomology(h, reps)).collect::<Vec<_>>(),
        "center_dim": center(a, m).dim(),
        "derivations": { "all": der.der.len(), "inner": der.inner.dim(), "outer": der.outer_dim },
    }))
}

fn gamma_class(c: GammaClass) -> Value {
    match c {
        GammaClass::Iso => json!("iso"),
        GammaClass::Neither => json!("neither"),
        GammaClass::Inconclusive => json!("inconclusive"),
        GammaClass::OneSided { injective, surjective } => json!({ "injective": injective, "surjective": surjective }),
    }
}

fn deformation_diffops(b: &KnAlgebra, opts: &Options) -> (Value, bool) {
    let cap = order_cap(opts, b.reference());
    let g = diffop::gamma(b, cap);
    let class = diffop::gamma_iso_check(&g);
    let report = json!({
        "order": b.order(),
        "order_cap": cap,
        "gamma": {
            "source_dims": g.source_dims,
            "target_dims": g.target_dims,
            "ranks": g.ranks,
            "lands_in_target": g.lands_in_target,
            "stabilized": g.stabilized,
            "class": gamma_class(class),
        },
    });
    (report, class != GammaClass::Inconclusive)
}

fn algebra_diffops(a: &Algebra, opts: &Options) -> (Value, bool) {
    let cap = order_cap(opts, a);
    let f = diffop::diffops_algebra(a, cap);
    let kn: Vec<Value> = (1..=2)
        .map(|n| {
            let c = diffop::kn_compat_check(a, n, cap);
            json!({ "n": n, "base": c.base, "lifted": c.lifted, "factor": c.factor, "ok": c.ok() })
        })
        .collect();
    let ok = f.is_stabilized() && kn.iter().all(|v| v["ok"] == json!(true));
    let report = json!({
        "order_cap": cap,
        "dims": f.dims(),
        "stabilized_at": f.stabilized_at(),
        "kn_compat": kn,
    });
    (report, ok)
}

fn stage(s: Stage) -> &'static str {
    match s {
        Stage::Local => "local",
        Stage::OuterDerivation => "outer_derivation",
        Stage::Central => "central",
        Stage::Vanishing => "vanishing",
    }
}

fn run_command(env: &Env, cmd: &Command, opts: &Options) -> defcoh::Result<Outcome> {
    let degree = opts.degree.unwrap_or(DEFAULT_DEGREE);
    let reps = opts.representatives;
    let size = opts.size.unwrap_or(DEFAULT_CAP);
    let arg = |i: usize| cmd.args[i].as_str();
    let site = || env.site.as_ref().expect("checked at load");
    let bp = |name: &str| {
        let m = &env.bimodule_presheaves[name];
        (&env.presheaves[&m.presheaf], &m.modules)
    };
    let algebra_and_module = || {
        let a = &env.algebras[arg(0)];
        let m = cmd.args.get(1).map_or_else(|| Bimodule::regular(a), |n| env.bimodules[n].module.clone());
        (a, m)
    };
    let (report, passed) = match cmd.kind {
        CommandKind::Hochschild => {
            let (a, m) = algebra_and_module();
            (hochschild_report(a, &m, degree, size, reps)?, true)
        }
        CommandKind::Exal if env.bimodule_presheaves.contains_key(arg(0)) => {
            let (a, m) = bp(arg(0));
            (json!({ "exal": gs::exal_presheaf(site(), a, m)? }), true)
        }
        CommandKind::Exal => {
            let (a, m) = algebra_and_module();
            let h = hh_capped(a, &m, 2, size)?;
            (json!({ "exal": h.dim, "cohomology": cohomology(&h, reps) }), true)
        }
        CommandKind::Nerve => {
            let (_, m) = bp(arg(0));
            let c = nerve_complex(site(), m.linear());
            (complex_report(&c, reps)?, c.is_complex())
        }
        CommandKind::Cech => {
            let (_, m) = bp(arg(0));
            let s = site();
            let cover = s.cover().expect("checked at load");
            let c = cech_complex(s, cover, m.linear(), degree)?;
            (complex_report(&c, reps)?, c.is_complex())
        }
        CommandKind::Gs => {
            let (a, m) = bp(arg(0));
            let s = site();
            let g = GsComplex::for_degree(s, a, m, degree)?;
            let ext = (0..=degree).map(|n| gs::gs_ext_in(s, &g, n)).collect::<defcoh::Result<Vec<_>>>()?;
            let ha = (0..=degree).map(|n| gs::h_a_in(s, &g, n)).collect::<defcoh::Result<Vec<_>>>()?;
            let double_ok = g.double().check().is_ok();
            let report = json!({
                "caps": { "p": g.pmax(), "q": g.qmax() },
                "double_complex_ok": double_ok,
                "ext": ext.iter().map(|h| h.dim).collect::<Vec<_>>(),
                "h_a": ha.iter().map(|h| h.dim).collect::<Vec<_>>(),
                "ext_cohomology": ext.iter().map(|h| cohomology(h, reps)).collect::<Vec<_>>(),
                "h_a_cohomology": ha.iter().map(|h| cohomology(h, reps)).collect::<Vec<_>>(),
            });
            (report, double_ok)
        }
        CommandKind::Les => {
            let (a, m) = bp(arg(0));
            let r = gs::les_check(site(), a, m, degree)?;
            let nodes: Vec<Value> = r
                .nodes
                .iter()
                .map(|n| {
                    json!({
                        "term": n.term, "degree": n.degree, "dim": n.dim, "kernel": n.kernel,
                        "image": n.image, "composite_zero": n.composite_zero, "exact": n.defect() == 0,
                    })
                })
                .collect();
            let ok = r.exact() && r.symmetric_split != Some(false);
            let report = json!({
                "ext": r.ext, "h_a": r.h_a, "nerve": r.nerve, "nodes": nodes,
                "exact": r.exact(), "symmetric_split": r.symmetric_split,
            });
            (report, ok)
        }
        CommandKind::Obstruct => {
            let e = &env.extensions[arg(0)];
            let (a, m) = bp(&e.over);
            let s = site();
            let r = obstruction::obstruct(s, a, m, &e.extension)?;
            let mut out = Map::new();
            out.insert("stage".into(), json!(stage(r.stage)));
            out.insert("alpha1".into(), Value::Array(r.alpha1.classes.iter().map(|c| scalars(c)).collect()));
            let mut ok = true;
            if let Some(two) = &r.alpha2 {
                ok &= two.derivations_ok;
                out.insert(
                    "alpha2".into(),
                    json!({
                        "pairs": two.pairs, "cochain_dim": two.cochain_dim, "relations_dim": two.relations_dim,
                        "derivations_ok": two.derivations_ok, "zero": two.is_zero(), "class": scalars(&two.class),
                    }),
                );
            }
            if let Some(three) = &r.alpha3 {
                ok &= three.central && three.closed;
                let cocycle: Vec<Value> = three.cocycle.iter().map(|((i, j, k), v)| json!({ "triple": [i, j, k], "value": scalars(v) })).collect();
                out.insert(
                    "alpha3".into(),
                    json!({
                        "central": three.central, "closed": three.closed, "coboundaries_dim": three.coboundaries_dim,
                        "zero": three.is_zero(), "class": scalars(&three.class), "cocycle": cocycle,
                    }),
                );
            }
            if let Some(c) = &e.cochain {
                out.insert("cech_cocycle".into(), json!(c.is_cocycle(s, m)?));
            }
            (Value::Object(out), ok)
        }
        CommandKind::Diffop => match env.algebras.get(arg(0)) {
            Some(a) => algebra_diffops(a, opts),
            None => deformation_diffops(&env.deformations[arg(0)], opts),
        },
        CommandKind::Induced => {
            let b = &env.deformations[arg(0)];
            let cap = order_cap(opts, b.reference());
            let ind = diffop::induced_deformation(b, cap)?;
            let mut out = Map::new();
            out.insert("order".into(), json!(b.order()));
            out.insert("diffop_dim".into(), json!(ind.algebra.reference().dim()));
            out.insert("literally_trivial".into(), json!(ind.algebra.is_literally_trivial()));
            let mut ok = true;
            match diffop::splitting(&ind) {
                Some(s) => {
                    let f = diffop::freeness_check(b, &ind, &s)?;
                    let r = diffop::diffop_ring_comparison(b, &ind, &s, cap)?;
                    ok &= f.splitting_is_hom;
                    out.insert("splitting".into(), json!(true));
                    out.insert(
                        "freeness".into(),
                        json!({
                            "splitting_is_hom": f.splitting_is_hom, "residue_linear": f.residue_linear,
                            "determinant": f.determinant.to_string(), "free": f.free(),
                        }),
                    );
                    out.insert(
                        "ring_comparison".into(),
                        json!({ "over_b": r.over_b, "over_a": r.over_a, "equal": r.equal, "stabilized": r.stabilized }),
                    );
                }
                None => {
                    out.insert("splitting".into(), json!(false));
                }
            }
            (Value::Object(out), ok)
        }
        CommandKind::Selftest => selftest_report(opts.seed),
    };
    Ok(Outcome { report, passed })
}

fn selftest_report(seed: u64) -> (Value, bool) {
    let results = selftest::run_all(seed);
    let passed = results.iter().all(|r| r.passed);
    let rows: Vec<Value> = results
        .iter()
        .map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail }))
        .collect();
    (json!({ "seed": seed, "criteria": rows, "passed": passed }), passed)
}

/// The suite on its own, without a manifest.
pub fn selftest(seed: u64) -> Outcome {
    let (mut report, passed) = selftest_report(seed);
    report["command"] = json!("selftest");
    Outcome { report, passed }
}

/// Runs one command and tags the report with its name and arguments.
pub fn run(env: &Env, cmd: &Command, opts: &Options) -> defcoh::Result<Outcome> {
    let mut out = run_command(env, cmd, opts)?;
    if let Value::Object(m) = &mut out.report {
        m.insert("command".into(), json!(cmd.kind.name()));
        m.insert("args".into(), json!(cmd.args));
        m.insert("checks_passed".into(), json!(out.passed));
    }
    Ok(out)
}
