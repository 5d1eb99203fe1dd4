use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use slabchrom::distset::DistanceSet;
use slabchrom::exact::{LatticeVector, QuadExt};
use slabchrom::lattice::{
    certify_no_t_slab_with, find_clique_with, find_linear_coloring, propagate_forced, seed_from_clique,
    window_chromatic_with, write_points_csv, Certificate, LatticeOptions, PartialColoring, Window,
    WindowChromatic, POINTS_CSV_HEADER,
};
use slabchrom::slab::{
    chi_m_bounds_with, parse_slab_coloring, unit_slab_coloring, verify_slab, write_slab_csv, ChiMOptions,
    SlabColoring, SlabVerdict, CHI_WINDOW,
};
use slabchrom::zgraph::{chi_integer_with, ZGraphOptions};

use crate::{Cli, CliError, Command, CommandOutput, PointSource};

struct Ctx<'a> {
    cli: &'a Cli,
    ds: &'a DistanceSet,
    lattice: LatticeOptions,
    zgraph: ZGraphOptions,
}

pub(crate) fn execute(cli: &Cli, ds: &DistanceSet) -> Result<CommandOutput, CliError> {
    let mut zgraph = ZGraphOptions::default();
    if let Some(b) = cli.budget_states {
        zgraph.state_budget = b;
    }
    let ctx = Ctx { cli, ds, lattice: LatticeOptions::default(), zgraph };
    match &cli.command {
        Command::Analyze => Ok(analyze(&ctx)),
        Command::Chi => chi(&ctx),
        Command::ChiM => chi_m(&ctx),
        Command::Clique => clique(&ctx),
        Command::Propagate => propagate(&ctx),
        Command::CertifyNoSlab => certify_no_slab(&ctx),
        Command::VerifySlab { slab } => verify(&ctx, slab.as_deref()),
        Command::EmitPoints { source, slab } => emit_points(&ctx, *source, slab.as_deref()),
    }
}

impl Ctx<'_> {
    fn window(&self) -> Result<Window, CliError> {
        if self.cli.window < 0 {
            return Err(CliError::Usage(format!("--window must be nonnegative, got {}", self.cli.window)));
        }
        Ok(Window::centered(self.ds, self.cli.window))
    }

    fn required_t(&self) -> Result<usize, CliError> {
        match self.cli.t {
            Some(0) => Err(CliError::Usage("--t must be positive".into())),
            Some(t) => Ok(t),
            None => Err(CliError::Usage(format!("{} needs --t", self.cli.command.name()))),
        }
    }

    /// `--t` if given, else χ of the integer model (rank 1) or of the small
    /// window (rank 2).
    fn t_or_chi(&self) -> Result<usize, CliError> {
        if self.cli.t.is_some() {
            return self.required_t();
        }
        match self.ds.integer_form() {
            Some(ints) => Ok(chi_integer_with(ints, &self.zgraph)?.0),
            None => Ok(self.window_chi()?.0),
        }
    }

    fn window_chi(&self) -> Result<(usize, PartialColoring), CliError> {
        let upper = unit_slab_coloring(self.ds).t();
        let w = Window::centered(self.ds, CHI_WINDOW);
        match window_chromatic_with(self.ds, &w, upper, &self.lattice)? {
            WindowChromatic::Exact { chi, witness } => Ok((chi, witness)),
            WindowChromatic::Exceeds { t_max } => {
                Err(CliError::Failed(format!("window needs more than {t_max} colors")))
            }
        }
    }

    fn params(&self, extra: Value) -> Value {
        let mut p = json!({
            "window": self.cli.window,
            "budget_states": self.zgraph.state_budget,
            "max_window_points": self.lattice.max_window_points,
            "clique_budget": self.lattice.clique_budget,
        });
        if let (Value::Object(p), Value::Object(extra)) = (&mut p, extra) {
            p.extend(extra);
        }
        p
    }
}

fn output(params: Value, result: Value, certificates: Vec<Value>, positive: bool) -> CommandOutput {
    CommandOutput { params, result, certificates, positive, csv: None }
}

/// Inserts `key` with the exact string and `key_approx` with a decimal.
fn put_exact(map: &mut Map<String, Value>, key: &str, x: &QuadExt) {
    map.insert(key.to_string(), x.to_string().into());
    map.insert(format!("{key}_approx"), x.approx().into());
}

fn exact_list(xs: &[QuadExt]) -> (Value, Value) {
    (xs.iter().map(|x| x.to_string()).collect(), xs.iter().map(|x| x.approx()).collect())
}

fn points_json(ps: &[LatticeVector]) -> Value {
    ps.iter().map(|p| json!([p.a, p.b])).collect()
}

fn slab_json(c: &SlabColoring) -> Value {
    json!({
        "text": c.to_string(),
        "slabs": c.len(),
        "colors_used": c.colors_used(),
        "period": c.period().map(|p| p.to_string()),
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn analyze(ctx: &Ctx) -> CommandOutput {
    let ds = ctx.ds;
    let mut r = Map::new();
    let (elements, approx) = exact_list(ds.elements());
    r.insert("elements".into(), elements);
    r.insert("elements_approx".into(), approx);
    r.insert("rank".into(), ds.rank().into());
    r.insert("commensurable".into(), ds.is_commensurable().into());
    let (basis, basis_approx) = exact_list(ds.basis());
    r.insert("basis".into(), basis);
    r.insert("basis_approx".into(), basis_approx);
    r.insert("lattice_coords".into(), points_json(ds.lattice_coords()));
    match ds.alpha() {
        Some(a) => put_exact(&mut r, "alpha", a),
        None => {
            r.insert("alpha".into(), Value::Null);
        }
    }
    r.insert("integer_form".into(), to_value(&ds.integer_form()));
    put_exact(&mut r, "d_min", ds.min());
    put_exact(&mut r, "d_max", ds.max());
    output(ctx.params(json!({})), Value::Object(r), vec![], true)
}

fn chi(ctx: &Ctx) -> Result<CommandOutput, CliError> {
    let ds = ctx.ds;
    let mut r = Map::new();
    if let (Some(alpha), Some(ints)) = (ds.alpha(), ds.integer_form()) {
        let (chi, pc) = chi_integer_with(ints, &ctx.zgraph)?;
        r.insert("chi".into(), chi.into());
        r.insert("exact".into(), true.into());
        r.insert("method".into(), "integer_transfer_graph".into());
        put_exact(&mut r, "alpha", alpha);
        r.insert("integer_form".into(), to_value(&ints));
        r.insert("period".into(), pc.period().into());
        r.insert("periodic_witness".into(), to_value(&pc.colors));
        return Ok(output(ctx.params(json!({})), Value::Object(r), vec![], true));
    }

    let (lower, witness) = ctx.window_chi()?;
    let unit = unit_slab_coloring(ds);
    let linear = (lower..=unit.t()).find_map(|t| find_linear_coloring(ds, t));
    let upper = linear.map_or(unit.t(), |lc| lc.t);
    r.insert("lower".into(), lower.into());
    r.insert("upper".into(), upper.into());
    r.insert("exact".into(), (lower == upper).into());
    r.insert("chi".into(), if lower == upper { lower.into() } else { Value::Null });
    r.insert("method".into(), "lattice_window".into());
    r.insert("window_witness_points".into(), witness.len().into());
    r.insert(
        "linear_coloring".into(),
        linear.map_or(Value::Null, |lc| json!({ "t": lc.t, "weights": [lc.weights.0, lc.weights.1] })),
    );
    Ok(output(ctx.params(json!({ "chi_window": CHI_WINDOW })), Value::Object(r), vec![], true))
}

fn chi_m(ctx: &Ctx) -> Result<CommandOutput, CliError> {
    ctx.window()?;
    let opts = ChiMOptions { certificate_window: ctx.cli.window, lattice: ctx.lattice, zgraph: ctx.zgraph };
    let b = chi_m_bounds_with(ctx.ds, &opts)?;
    let result = json!({
        "lower": b.lower,
        "upper": b.upper,
        "exact": b.exact,
        "gap": b.upper - b.lower,
        "integer_chi": b.integer_chi,
        "integer_witness": b.integer_witness.as_ref().map(|pc| to_value(&pc.colors)),
        "window_chi": b.window_chi,
        "linear_coloring": b.linear.map(|lc| json!({ "t": lc.t, "weights": [lc.weights.0, lc.weights.1] })),
        "certified": b.certificate.as_ref().map(|c| c.certified),
        "upper_witness": slab_json(&b.upper_witness),
        "literature_bound": b.literature_bound,
    });
    let certificates = b.certificate.iter().map(to_value).collect();
    Ok(output(ctx.params(json!({ "chi_window": CHI_WINDOW })), result, certificates, true))
}

fn clique(ctx: &Ctx) -> Result<CommandOutput, CliError> {
    let t = ctx.required_t()?;
    let found = find_clique_with(ctx.ds, t, &ctx.lattice)?;
    let values: Option<Vec<QuadExt>> = found.as_ref().map(|c| c.iter().map(|&p| ctx.ds.embed(p)).collect());
    let result = json!({
        "t": t,
        "found": found.is_some(),
        "clique": found.as_deref().map(points_json),
        "values": values.as_deref().map(|v| exact_list(v).0),
        "values_approx": values.as_deref().map(|v| exact_list(v).1),
    });
    let cert = Certificate::for_clique(ctx.ds, t, found.clone());
    Ok(output(ctx.params(json!({ "t": t })), result, vec![to_value(&cert)], found.is_some()))
}

fn forced(ctx: &Ctx, t: usize, w: &Window) -> Result<Option<(PartialColoring, Certificate)>, CliError> {
    let Some(clique) = find_clique_with(ctx.ds, t, &ctx.lattice)? else {
        return Ok(None);
    };
    if let Some(p) = clique.iter().find(|&&p| !w.contains(p)) {
        return Err(CliError::Usage(format!("clique point ({}, {}) lies outside the window", p.a, p.b)));
    }
    let seed = seed_from_clique(t, &clique)?;
    let prop = propagate_forced(ctx.ds, t, &seed, w)?;
    let cert = Certificate::for_propagation(ctx.ds, &seed, w, &prop);
    Ok(Some((prop.coloring, cert)))
}

fn coloring_csv(ds: &DistanceSet, coloring: &PartialColoring) -> String {
    let mut buf = Vec::new();
    write_points_csv(ds, coloring, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

fn propagate(ctx: &Ctx) -> Result<CommandOutput, CliError> {
    let t = ctx.required_t()?;
    let w = ctx.window()?;
    let params = ctx.params(json!({ "t": t }));
    let Some((coloring, cert)) = forced(ctx, t, &w)? else {
        let result = json!({ "t": t, "clique_found": false, "fully_forced": false });
        return Ok(output(params, result, vec![], false));
    };
    let fully = cert.verdicts.fully_forced;
    let result = json!({
        "t": t,
        "clique_found": true,
        "fully_forced": fully,
        "window_points": w.len(),
        "colored_points": coloring.len(),
        "forced_steps": cert.transcript.len(),
        "colors_used": coloring.colors_used(),
    });
    let mut out = output(params, result, vec![to_value(&cert)], fully);
    out.csv = Some(coloring_csv(ctx.ds, &coloring));
    Ok(out)
}

fn certify_no_slab(ctx: &Ctx) -> Result<CommandOutput, CliError> {
    let t = ctx.t_or_chi()?;
    let w = ctx.window()?;
    let cert = certify_no_t_slab_with(ctx.ds, t, &w, &ctx.lattice)?;
    let mut r = Map::new();
    r.insert("t".into(), t.into());
    r.insert("certified".into(), cert.certified.into());
    r.insert("verdicts".into(), to_value(&cert.verdicts));
    match &cert.density {
        Some(d) => put_exact(&mut r, "ell", &d.ell),
        None => {
            r.insert("ell".into(), Value::Null);
        }
    }
    match &cert.ell_half_window {
        Some(h) => put_exact(&mut r, "ell_half_window", h),
        None => {
            r.insert("ell_half_window".into(), Value::Null);
        }
    }
    r.insert("ell_shrinks".into(), to_value(&cert.ell_shrinks));
    r.insert("linear_match".into(), to_value(&cert.linear));
    r.insert("interpretation".into(), cert.interpretation.clone().into());
    let positive = cert.certified;
    Ok(output(ctx.params(json!({ "t": t })), Value::Object(r), vec![to_value(&cert)], positive))
}

fn load_slab(ctx: &Ctx, path: Option<&Path>) -> Result<(SlabColoring, &'static str), CliError> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            Ok((parse_slab_coloring(&text, ctx.ds.radicand())?, "file"))
        }
        None => Ok((unit_slab_coloring(ctx.ds), "unit_slab")),
    }
}

fn slab_csv(c: &SlabColoring) -> String {
    let mut buf = Vec::new();
    write_slab_csv(c, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

fn verify(ctx: &Ctx, path: Option<&Path>) -> Result<CommandOutput, CliError> {
    let (c, source) = load_slab(ctx, path)?;
    let verdict = verify_slab(&c, ctx.ds);
    let violation = match &verdict {
        SlabVerdict::Proper => Value::Null,
        SlabVerdict::Violation(v) => {
            let mut m = Map::new();
            put_exact(&mut m, "x", &v.x);
            put_exact(&mut m, "d", &v.d);
            m.insert("slab_i".into(), v.slab_i.into());
            m.insert("slab_j".into(), v.slab_j.into());
            m.insert("range".into(), json!([v.range.0.to_string(), v.range.1.to_string()]));
            m.insert("range_approx".into(), json!([v.range.0.approx(), v.range.1.approx()]));
            Value::Object(m)
        }
    };
    let result = json!({
        "source": source,
        "proper": verdict.is_proper(),
        "t": c.t(),
        "slab": slab_json(&c),
        "violation": violation,
    });
    let mut out = output(ctx.params(json!({})), result, vec![], verdict.is_proper());
    out.csv = Some(slab_csv(&c));
    Ok(out)
}

fn emit_points(ctx: &Ctx, source: PointSource, slab: Option<&Path>) -> Result<CommandOutput, CliError> {
    let source_name = match source {
        PointSource::Forced => "forced",
        PointSource::Linear => "linear",
        PointSource::Slab => "slab",
    };
    let (csv, t, positive) = match source {
        PointSource::Slab => {
            let (c, _) = load_slab(ctx, slab)?;
            (slab_csv(&c), Some(c.t()), true)
        }
        _ if ctx.cli.window < 0 => (format!("{POINTS_CSV_HEADER}\n"), ctx.cli.t, true),
        PointSource::Forced => {
            let t = ctx.t_or_chi()?;
            match forced(ctx, t, &ctx.window()?)? {
                Some((coloring, cert)) => (coloring_csv(ctx.ds, &coloring), Some(t), cert.verdicts.fully_forced),
                None => (format!("{POINTS_CSV_HEADER}\n"), Some(t), false),
            }
        }
        PointSource::Linear => {
            let t = ctx.t_or_chi()?;
            match find_linear_coloring(ctx.ds, t) {
                Some(lc) => (coloring_csv(ctx.ds, &lc.restrict(&ctx.window()?)), Some(t), true),
                None => (format!("{POINTS_CSV_HEADER}\n"), Some(t), false),
            }
        }
    };
    let rows = csv.lines().count() - 1;
    let colors: std::collections::BTreeSet<&str> =
        csv.lines().skip(1).filter_map(|l| l.rsplit(',').next()).collect();
    let result = json!({
        "source": source_name,
        "rows": rows,
        "colors_used": colors.len(),
        "complete": positive,
    });
    let mut out = output(ctx.params(json!({ "t": t })), result, vec![], positive);
    out.csv = Some(csv);
    Ok(out)
}
