"""Command-line interface.

Subcommands: topology, mindensity, thresholds, simulate, resilience,
paper-demo. Experiment configuration lives in a JSON document (see
`ExperimentConfig` below); command-line flags override document fields. Every
run is deterministic for a fixed configuration and seed, producing
byte-identical output files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import PwsVectorField, SigmaQuadCertificate, SwitchTerm
from .graphs import (
    Graph,
    generate_topology,
    read_graph_file,
    write_graph_file,
)
from .min_density import EXACT_VERTEX_CAP, min_density_exact, min_density_heuristic
from .presets import relay_feedback_system
from .simulate import SimConfig, simulate, write_run_csv, write_run_metadata
from .thresholds import ThresholdReport, compute_thresholds, resilience_report

__all__ = ["main", "ExperimentConfig", "load_experiment_config", "ConfigError"]

CONFIG_VERSION = 1
AUTO_GAIN_FACTOR = 1.05  # strictly above c*, at/above cd*


class ConfigError(ValueError):
    """Configuration document problem; the message names the offending field."""


# ----------------------------------------------------------------------------
# Experiment configuration document
# ----------------------------------------------------------------------------


@dataclass
class ExperimentConfig:
    field: PwsVectorField
    cert: SigmaQuadCertificate
    gamma: np.ndarray
    gamma_d: np.ndarray
    g_diffusive: Graph
    g_discontinuous: Graph
    gains_auto: bool
    c: float | None
    cd: float | None
    dt: float
    t_end: float
    seed: int
    init_amplitude: float
    sign_mode: str
    smooth_epsilon: float
    out_dir: Path
    decimation: int
    per_node_errors: bool


def _expect_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")
    return obj


def _matrix(obj, path: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: not a numeric matrix") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ConfigError(f"{path}: expected a square matrix, got shape {arr.shape}")
    return arr


def _vector(obj, path: str, length: int) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=np.float64).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: not a numeric vector") from exc
    if arr.shape != (length,):
        raise ConfigError(f"{path}: expected length {length}, got {arr.shape[0]}")
    return arr


def _parse_system(doc: dict) -> tuple[PwsVectorField, SigmaQuadCertificate, np.ndarray, np.ndarray]:
    sys_doc = _expect_mapping(doc.get("system"), "system")
    if "a" not in sys_doc:
        raise ConfigError("system.a: required state matrix is missing")
    a = _matrix(sys_doc["a"], "system.a")
    n = a.shape[0]
    d = _vector(sys_doc["d"], "system.d", n) if "d" in sys_doc else None
    terms = []
    for i, item in enumerate(sys_doc.get("switch_terms", [])):
        item = _expect_mapping(item, f"system.switch_terms[{i}]")
        if "gain" not in item or "coordinate" not in item:
            raise ConfigError(f"system.switch_terms[{i}]: needs 'gain' and 'coordinate'")
        gain = _vector(item["gain"], f"system.switch_terms[{i}].gain", n)
        coord = int(item["coordinate"])
        if not (0 <= coord < n):
            raise ConfigError(
                f"system.switch_terms[{i}].coordinate: {coord} out of range for n={n}"
            )
        terms.append(SwitchTerm(gain=gain, coordinate=coord))
    field = PwsVectorField(a=a, d=d, switch_terms=tuple(terms))

    p = _matrix(sys_doc["p"], "system.p") if "p" in sys_doc else np.eye(n)
    if p.shape != (n, n):
        raise ConfigError(f"system.p: expected {n}x{n}, got {p.shape}")
    q = p @ a
    if "m" in sys_doc:
        m = _matrix(sys_doc["m"], "system.m")
        if m.shape != (n, n):
            raise ConfigError(f"system.m: expected {n}x{n}, got {m.shape}")
    else:
        m = np.diag(np.abs(p) @ field.switching_bound())
    try:
        cert = SigmaQuadCertificate(p, q, m)
    except ValueError as exc:
        raise ConfigError(f"system.p: {exc}") from exc

    gamma = _matrix(sys_doc["gamma"], "system.gamma") if "gamma" in sys_doc else np.eye(n)
    gamma_d = _matrix(sys_doc["gamma_d"], "system.gamma_d") if "gamma_d" in sys_doc else np.eye(n)
    if gamma.shape != (n, n) or gamma_d.shape != (n, n):
        raise ConfigError(f"system.gamma / system.gamma_d: expected {n}x{n} matrices")
    return field, cert, gamma, gamma_d


def _parse_layer(doc, path: str, base_dir: Path) -> Graph:
    layer = _expect_mapping(doc, path)
    if "file" in layer:
        try:
            return read_graph_file(base_dir / layer["file"])
        except (OSError, ValueError) as exc:
            raise ConfigError(f"{path}.file: {exc}") from exc
    if "kind" not in layer or "n" not in layer:
        raise ConfigError(f"{path}: needs either 'file' or 'kind' plus 'n'")
    try:
        return generate_topology(
            layer["kind"],
            int(layer["n"]),
            l=int(layer["l"]) if "l" in layer else None,
            p=float(layer["p"]) if "p" in layer else None,
            seed=int(layer["seed"]) if "seed" in layer else None,
        )
    except (ValueError, RuntimeError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def load_experiment_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    doc = _expect_mapping(doc, "config")
    version = doc.get("version", CONFIG_VERSION)
    if version != CONFIG_VERSION:
        raise ConfigError(f"version: unsupported config version {version!r}")

    field, cert, gamma, gamma_d = _parse_system(doc)
    layers = _expect_mapping(doc.get("layers"), "layers")
    g_diff = _parse_layer(layers.get("diffusive"), "layers.diffusive", path.parent)
    g_disc = _parse_layer(layers.get("discontinuous"), "layers.discontinuous", path.parent)
    if g_diff.n_vertices != g_disc.n_vertices:
        raise ConfigError("layers: diffusive and discontinuous layers must have the same N")

    gains = doc.get("gains", "auto")
    gains_auto = False
    c = cd = None
    if gains == "auto":
        gains_auto = True
    else:
        gains = _expect_mapping(gains, "gains")
        if "c" not in gains or "cd" not in gains:
            raise ConfigError("gains: needs numeric 'c' and 'cd', or the string \"auto\"")
        c, cd = float(gains["c"]), float(gains["cd"])

    sim = _expect_mapping(doc.get("sim", {}), "sim")
    out = _expect_mapping(doc.get("output", {}), "output")
    return ExperimentConfig(
        field=field,
        cert=cert,
        gamma=gamma,
        gamma_d=gamma_d,
        g_diffusive=g_diff,
        g_discontinuous=g_disc,
        gains_auto=gains_auto,
        c=c,
        cd=cd,
        dt=float(sim.get("dt", 1e-3)),
        t_end=float(sim.get("t_end", 5.0)),
        seed=int(sim.get("seed", 0)),
        init_amplitude=float(sim.get("init_amplitude", 5.0)),
        sign_mode=str(sim.get("sign_mode", "exact")),
        smooth_epsilon=float(sim.get("smooth_epsilon", 1e-3)),
        out_dir=Path(out.get("directory", ".")),
        decimation=int(out.get("decimation", 10)),
        per_node_errors=bool(out.get("per_node_errors", False)),
    )


def _resolve_gains(cfg: ExperimentConfig) -> tuple[float, float, ThresholdReport | None]:
    """Numeric gains from the document, or AUTO_GAIN_FACTOR times the thresholds."""
    if not cfg.gains_auto:
        assert cfg.c is not None and cfg.cd is not None
        return cfg.c, cfg.cd, None
    report = compute_thresholds(
        cfg.cert,
        cfg.gamma,
        cfg.gamma_d,
        cfg.g_diffusive,
        cfg.g_discontinuous,
        field=cfg.field,
        heuristic_seed=cfg.seed,
    )
    if report.hypotheses.certificate_verified is False:
        raise ConfigError(
            "gains: auto gains need the certificate hypothesis to hold, but a sampled "
            "counterexample falsified the (P, Q, M) growth bound for the node dynamics"
        )
    return AUTO_GAIN_FACTOR * report.c_star, AUTO_GAIN_FACTOR * report.cd_star, report


# ----------------------------------------------------------------------------
# Report formatting
# ----------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return repr(float(x))


def format_threshold_report(report: ThresholdReport) -> str:
    delta_label = "exact" if report.delta_certified else "heuristic, not certified"
    rows = [
        ("lambda2(L) diffusive layer", _fmt(report.lambda2)),
        (f"delta discontinuous layer ({delta_label})", _fmt(report.delta_d)),
        ("mu2(Q)", _fmt(report.mu2_q)),
        ("mu2_lower(P Gamma)", _fmt(report.mu2_lower_p_gamma)),
        ("mu_inf(M)", _fmt(report.mu_inf_m)),
        ("mu_inf_lower(P Gamma_d)", _fmt(report.mu_inf_lower_p_gamma_d)),
        ("c_star", _fmt(report.c_star)),
        ("cd_star", _fmt(report.cd_star)),
    ]
    verified = report.hypotheses.certificate_verified
    cert_note = {True: "passed sampling", False: "FALSIFIED by sampling", None: "not sampled"}[verified]
    rows.append(("certificate check", cert_note))
    if not report.delta_certified:
        rows.append(("note", "heuristic delta is an upper bound; cd_star is a lower bound"))
    width = max(len(name) for name, _ in rows)
    lines = ["threshold report"]
    lines += [f"  {name.ljust(width)}  {value}" for name, value in rows]
    return "\n".join(lines)


def threshold_report_json(report: ThresholdReport) -> dict:
    return {
        "c_star": report.c_star,
        "cd_star": report.cd_star,
        "lambda2": report.lambda2,
        "delta_d": report.delta_d,
        "delta_method": report.delta_method,
        "delta_certified": report.delta_certified,
        "mu2_q": report.mu2_q,
        "mu2_lower_p_gamma": report.mu2_lower_p_gamma,
        "mu_inf_m": report.mu_inf_m,
        "mu_inf_lower_p_gamma_d": report.mu_inf_lower_p_gamma_d,
        "hypotheses": {
            "certificate_verified": report.hypotheses.certificate_verified,
            "diffusive_connected": report.hypotheses.diffusive_connected,
            "discontinuous_connected": report.hypotheses.discontinuous_connected,
            "mu2_lower_p_gamma_positive": report.hypotheses.mu2_lower_p_gamma_positive,
            "mu_inf_lower_p_gamma_d_positive": report.hypotheses.mu_inf_lower_p_gamma_d_positive,
        },
    }


# ----------------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------------


def _cmd_topology(args) -> int:
    g = generate_topology(args.kind, args.n, l=args.l, p=args.p, seed=args.seed)
    if args.out:
        write_graph_file(g, args.out)
        print(f"wrote {args.kind} graph with N={g.n_vertices}, {g.n_edges} edges to {args.out}")
    else:
        sys.stdout.write(_graph_text(g))
    return 0


def _graph_text(g: Graph) -> str:
    from .graphs import graph_to_text

    return graph_to_text(g)


def _cmd_mindensity(args) -> int:
    g = read_graph_file(args.graph)
    if args.heuristic or (g.n_vertices > EXACT_VERTEX_CAP and not args.exact):
        result = min_density_heuristic(g, seed=args.seed)
    else:
        result = min_density_exact(g)
    cut = result.sparsest_cut
    print(f"delta = {_fmt(result.delta)} ({result.method})")
    print(f"side 1 ({cut.n1} vertices): {' '.join(map(str, cut.side1()))}")
    print(f"side 2 ({cut.n2} vertices): {' '.join(map(str, cut.side2()))}")
    print(f"crossing edges b = {cut.crossing_edges}, N1 = {cut.n1}, N2 = {cut.n2}")
    return 0


def _cmd_thresholds(args) -> int:
    cfg = load_experiment_config(args.config)
    report = compute_thresholds(
        cfg.cert,
        cfg.gamma,
        cfg.gamma_d,
        cfg.g_diffusive,
        cfg.g_discontinuous,
        field=cfg.field,
        heuristic_seed=cfg.seed,
    )
    print(format_threshold_report(report))
    if args.json:
        payload = json.dumps(threshold_report_json(report), indent=2, sort_keys=True) + "\n"
        if args.json == "-":
            sys.stdout.write(payload)
        else:
            Path(args.json).write_text(payload, encoding="ascii")
    return 0


def _sim_config(cfg: ExperimentConfig, c: float, cd: float, *, store_trajectory: bool = True) -> SimConfig:
    return SimConfig(
        node_field=cfg.field,
        graph_diffusive=cfg.g_diffusive,
        graph_discontinuous=cfg.g_discontinuous,
        c=c,
        cd=cd,
        gamma=cfg.gamma,
        gamma_d=cfg.gamma_d,
        dt=cfg.dt,
        t_end=cfg.t_end,
        init_seed=cfg.seed,
        init_amplitude=cfg.init_amplitude,
        sign_mode=cfg.sign_mode,
        smooth_epsilon=cfg.smooth_epsilon,
        decimation=cfg.decimation,
        store_trajectory=store_trajectory,
    )


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    for name in ("dt", "t_end", "seed"):
        value = getattr(args, name.replace("-", "_"), None)
        if value is not None:
            setattr(cfg, name, value)
    if getattr(args, "c", None) is not None or getattr(args, "cd", None) is not None:
        if args.c is None or args.cd is None:
            raise ConfigError("gains: override flags --c and --cd must be given together")
        cfg.gains_auto = False
        cfg.c, cfg.cd = args.c, args.cd
    if getattr(args, "out", None):
        cfg.out_dir = Path(args.out)
    return cfg


def _cmd_simulate(args) -> int:
    cfg = _apply_overrides(load_experiment_config(args.config), args)
    c, cd, report = _resolve_gains(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    run = simulate(_sim_config(cfg, c, cd))
    csv_path = cfg.out_dir / "run.csv"
    write_run_csv(run, csv_path, per_node_errors=cfg.per_node_errors)
    write_run_metadata(run, cfg.out_dir / "run_meta.json")
    if report is not None:
        (cfg.out_dir / "thresholds.json").write_text(
            json.dumps(threshold_report_json(report), indent=2, sort_keys=True) + "\n",
            encoding="ascii",
        )
    status = "diverged (truncated)" if run.diverged else "completed"
    print(
        f"{status}: c={_fmt(c)} cd={_fmt(cd)} e_tot {_fmt(run.e_tot_series[0])} -> "
        f"{_fmt(run.e_tot_series[-1])}; wrote {csv_path}"
    )
    return 0


def _cmd_resilience(args) -> int:
    cfg = load_experiment_config(args.config)
    try:
        doc = json.loads(Path(args.scenarios).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"scenarios: {exc}") from exc
    if isinstance(doc, dict):
        doc = doc.get("scenarios")
    if not isinstance(doc, list):
        raise ConfigError("scenarios: expected a list (or an object with a 'scenarios' list)")
    labels = []
    removals = []
    for i, item in enumerate(doc):
        item = _expect_mapping(item, f"scenarios[{i}]")
        labels.append(str(item.get("label", f"scenario_{i}")))
        edges = item.get("remove")
        if not isinstance(edges, list):
            raise ConfigError(f"scenarios[{i}].remove: expected a list of [i, j] pairs")
        removals.append([(int(u), int(v)) for u, v in edges])
    results = resilience_report(
        cfg.g_discontinuous,
        removals,
        cfg.cert,
        cfg.gamma_d,
        labels=labels,
        heuristic_seed=cfg.seed,
    )
    width = max(len(r.label) for r in results) if results else 5
    print(f"{'label'.ljust(width)}  {'delta':>22}  {'cd_star':>22}  method")
    for r in results:
        if r.error is not None:
            print(f"{r.label.ljust(width)}  {'-':>22}  {'-':>22}  error: {r.error}")
        else:
            print(
                f"{r.label.ljust(width)}  {_fmt(r.delta):>22}  {_fmt(r.cd_star):>22}  {r.delta_method}"
            )
    return 0


def _cmd_paper_demo(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    seed = args.seed

    field = relay_feedback_system()
    from .presets import relay_certificate

    cert = relay_certificate()
    n = 30
    g_diff = generate_topology("ring", n)
    g_disc = generate_topology("erdos_renyi", n, p=0.2, seed=seed)
    write_graph_file(g_diff, out_dir / "graph_diffusive.txt")
    write_graph_file(g_disc, out_dir / "graph_discontinuous.txt")

    gamma = np.eye(3)
    report = compute_thresholds(
        cert, gamma, gamma, g_diff, g_disc, field=field, heuristic_seed=seed
    )
    c_below, cd_below = 0.1, 0.001
    c_above = AUTO_GAIN_FACTOR * report.c_star
    cd_above = AUTO_GAIN_FACTOR * report.cd_star

    runs = {}
    for name, c, cd in (("below", c_below, cd_below), ("above", c_above, cd_above)):
        sim_cfg = SimConfig(
            node_field=field,
            graph_diffusive=g_diff,
            graph_discontinuous=g_disc,
            c=c,
            cd=cd,
            gamma=gamma,
            gamma_d=gamma,
            dt=args.dt,
            t_end=args.t_end,
            init_seed=seed,
            decimation=args.decimation,
        )
        run = simulate(sim_cfg)
        write_run_csv(run, out_dir / f"{name}.csv")
        write_run_metadata(run, out_dir / f"{name}_meta.json")
        runs[name] = (c, cd, run)

    density_cut = min_density_heuristic(g_disc, seed=seed).sparsest_cut
    lines = [
        f"two-layer synchronization demo (seed {seed})",
        f"nodes: {n} relay feedback systems (3 states each)",
        f"diffusive layer: ring, {g_diff.n_edges} edges; "
        f"discontinuous layer: Erdos-Renyi p=0.2, {g_disc.n_edges} edges",
        "",
        format_threshold_report(report),
        "",
        f"sparsest cut found: N1={density_cut.n1}, N2={density_cut.n2}, "
        f"b={density_cut.crossing_edges}",
        "",
    ]
    for name in ("below", "above"):
        c, cd, run = runs[name]
        lines.append(
            f"{name}-threshold run: c={_fmt(c)}, cd={_fmt(cd)}, "
            f"e_tot {_fmt(run.e_tot_series[0])} -> {_fmt(run.e_tot_series[-1])}"
        )
    converged = runs["above"][2].e_tot_series[-1] < runs["below"][2].e_tot_series[-1]
    lines.append(
        "above-threshold run ends with the smaller error"
        if converged
        else "WARNING: above-threshold run did not end with the smaller error"
    )
    summary = "\n".join(lines) + "\n"
    (out_dir / "summary.txt").write_text(summary, encoding="ascii")
    sys.stdout.write(summary)
    return 0


# ----------------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwsync",
        description=(
            "Coupling-gain certification and simulation for networks of "
            "piecewise-smooth systems with diffusive plus discontinuous coupling"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("topology", help="generate a named topology and print/write it")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_topology)

    p = sub.add_parser("mindensity", help="minimum density and sparsest cut of a graph file")
    p.add_argument("--graph", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_mindensity)

    p = sub.add_parser("thresholds", help="critical coupling gains for a configured experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--json", default=None, help="also write the report as JSON ('-' for stdout)")
    p.set_defaults(func=_cmd_thresholds)

    p = sub.add_parser("simulate", help="run the coupled network described by a config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--t-end", dest="t_end", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--cd", type=float, default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("resilience", help="minimum density and cd* across edge-removal scenarios")
    p.add_argument("--config", required=True)
    p.add_argument("--scenarios", required=True)
    p.set_defaults(func=_cmd_resilience)

    p = sub.add_parser(
        "paper-demo",
        help="end-to-end demo: 30 relay nodes, ring + random layers, below/above-threshold runs",
    )
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", default="paper_demo_out")
    p.add_argument("--dt", type=float, default=1e-4)
    p.add_argument("--t-end", dest="t_end", type=float, default=2.0)
    p.add_argument("--decimation", type=int, default=10)
    p.set_defaults(func=_cmd_paper_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
