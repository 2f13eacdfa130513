"""Scenario-file driven command line: build schedules, verify them, compute
DoF, sweep the delivery parameters, and run the association-skew experiment.

Scenarios are single JSON files; outputs are JSON (schedules, DoF reports) or
CSV (sweep, sigma experiment). Exit codes: 0 ok, 2 parse error, 3 validation
error, 4 verification failure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import analysis
from .core import ConfigError, DeliveryParams, NetworkConfig, config_from_eta, validate
from .placement import MiniFileId, SubpacketId
from .schedule import Codeword, Schedule, Transmission, UcRound
from .verify import check_coverage, check_zf_feasibility

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_VERIFY = 4
EXIT_IO = 5

SWEEP_COLUMNS = ["eta_hat", "Q", "strategy", "beta", "K_M", "K_U",
                 "T_M", "T_U", "dof_num", "dof_den", "dof_decimal", "feasible"]
SIGMA_COLUMNS = ["sigma_bin", "n_samples", "dof_m_decimal",
                 "unicast_baseline", "uniform_optimum"]


# ---- scenario files ----

def load_scenario(path):
    """Parse a scenario JSON file into (cfg, params-or-None, demands, extras).

    The association is given either explicitly ("association": {user: profile})
    or as a per-profile count vector ("eta": [...]) that auto-numbers users.
    Fixed delivery parameters (eta_hat, Q, strategy, optional beta) are needed
    by schedule/verify/dof and ignored by the search commands.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ConfigError("SCENARIO", "scenario must be a JSON object")
    for field in ("P", "tbar", "alpha", "L", "N"):
        if field not in doc:
            raise ConfigError("SCENARIO", f"missing field {field!r}")
    if ("association" in doc) == ("eta" in doc):
        raise ConfigError("SCENARIO", "give exactly one of 'association' or 'eta'")
    if "association" in doc:
        cfg = NetworkConfig(P=doc["P"], tbar=doc["tbar"], alpha=doc["alpha"],
                            L=doc["L"], N=doc["N"], association=doc["association"])
    else:
        cfg = config_from_eta(doc["P"], doc["tbar"], doc["alpha"], doc["L"], doc["N"], doc["eta"])
    demands = analysis.default_demands(cfg)
    for user, file in doc.get("demands", {}).items():
        user, file = int(user), int(file)
        if user not in cfg.association:
            raise ConfigError("SCENARIO", f"demand for unknown user {user}")
        if not (1 <= file <= cfg.N):
            raise ConfigError("SCENARIO", f"user {user} demands file {file} outside [1..{cfg.N}]")
        demands[user] = file
    params = None
    if any(k in doc for k in ("eta_hat", "Q", "strategy")):
        for field in ("eta_hat", "Q", "strategy"):
            if field not in doc:
                raise ConfigError("SCENARIO", f"fixed delivery parameters need {field!r}")
        beta = doc.get("beta", min(cfg.alpha, doc["eta_hat"]))
        params = DeliveryParams(eta_hat=doc["eta_hat"], Q=doc["Q"],
                                beta=beta, strategy=doc["strategy"])
    extras = {"seed": doc.get("seed", 0), "samples": doc.get("samples", 2000)}
    return cfg, params, demands, extras


def require_params(params):
    if params is None:
        raise ConfigError("SCENARIO", "this command needs fixed eta_hat/Q/strategy in the scenario")
    return params


# ---- schedule JSON codec ----

def schedule_to_json(schedule, cfg, params, demands, partition):
    rep = analysis.empirical_dof(schedule, params)
    return {
        "meta": {
            "P": cfg.P, "tbar": cfg.tbar, "alpha": cfg.alpha, "L": cfg.L, "N": cfg.N,
            "eta_hat": params.eta_hat, "Q": params.Q, "beta": params.beta,
            "strategy": params.strategy,
            "association": {str(u): p for u, p in sorted(cfg.association.items())},
            "demands": {str(u): f for u, f in sorted(demands.items())},
            "K_M": partition.K_M, "K_U": partition.K_U,
            "J_M": rep.J_M, "J_U": rep.J_U, "T_M": rep.T_M, "T_U": rep.T_U,
            "dof": str(rep.empirical),
        },
        "cc_transmissions": [
            {"id": list(t.id),
             "codewords": [
                 {"recipient": cw.recipient, "file": cw.subpacket.mini.file,
                  "profiles": list(cw.subpacket.mini.profiles), "q": cw.subpacket.q,
                  "nullset": sorted(cw.nullset)}
                 for cw in t.codewords]}
            for t in schedule.cc],
        "uc_rounds": [
            {"entries": [
                {"recipient": user, "file": sub.mini.file,
                 "profiles": list(sub.mini.profiles), "q": sub.q}
                for user, sub in rnd.entries]}
            for rnd in schedule.uc],
    }


def schedule_from_json(doc):
    """Rebuild (cfg, params, demands, schedule) from an emitted schedule file."""
    meta = doc["meta"]
    cfg = NetworkConfig(P=meta["P"], tbar=meta["tbar"], alpha=meta["alpha"],
                        L=meta["L"], N=meta["N"], association=meta["association"])
    params = validate(cfg, DeliveryParams(eta_hat=meta["eta_hat"], Q=meta["Q"],
                                          beta=meta["beta"], strategy=meta["strategy"]))
    demands = {int(u): int(f) for u, f in meta["demands"].items()}
    cc = tuple(
        Transmission(
            id=tuple(t["id"]),
            codewords=tuple(
                Codeword(recipient=cw["recipient"],
                         subpacket=SubpacketId(MiniFileId(cw["file"], tuple(cw["profiles"])), cw["q"]),
                         nullset=frozenset(cw["nullset"]))
                for cw in t["codewords"]))
        for t in doc["cc_transmissions"])
    uc = tuple(
        UcRound(entries=tuple(
            (e["recipient"], SubpacketId(MiniFileId(e["file"], tuple(e["profiles"])), e["q"]))
            for e in rnd["entries"]))
        for rnd in doc["uc_rounds"])
    return cfg, params, demands, Schedule(cc=cc, uc=uc)


# ---- output helpers ----

def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json_text(obj):
    return json.dumps(obj, indent=2) + "\n"


def _decimal(value):
    return f"{float(value):.6f}"


def emit_csv(rows, path, columns):
    """UTF-8 CSV with a header row; an empty row list still writes the header."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write_text(path, buf.getvalue())


def sweep_csv_rows(result):
    rows = []
    for row in result.rows:
        rows.append({
            "eta_hat": row.eta_hat, "Q": row.Q, "strategy": row.strategy,
            "beta": row.beta, "K_M": row.K_M, "K_U": row.K_U,
            "T_M": "" if row.T_M is None else row.T_M,
            "T_U": "" if row.T_U is None else row.T_U,
            "dof_num": "" if row.dof is None else row.dof.numerator,
            "dof_den": "" if row.dof is None else row.dof.denominator,
            "dof_decimal": "" if row.dof is None else _decimal(row.dof),
            "feasible": "true" if row.feasible else "false",
        })
    return rows


def sigma_csv_rows(rows):
    return [{
        "sigma_bin": f"{float(r.sigma_bin):.1f}",
        "n_samples": r.n_samples,
        "dof_m_decimal": _decimal(r.dof_m),
        "unicast_baseline": r.unicast_baseline,
        "uniform_optimum": _decimal(r.uniform_optimum),
    } for r in rows]


# ---- commands ----

def _threads():
    try:
        return max(1, int(os.environ.get("CC_SCHED_THREADS", "1")))
    except ValueError:
        return 1


def cmd_schedule(args):
    cfg, params, demands, _ = load_scenario(args.scenario)
    params = validate(cfg, require_params(params))
    schedule, partition, demands = analysis.build_schedule(cfg, params, demands=demands)
    _write_text(args.out, _json_text(schedule_to_json(schedule, cfg, params, demands, partition)))
    return EXIT_OK


def cmd_verify(args):
    cfg, params, demands, _ = load_scenario(args.scenario)
    if args.schedule:
        with open(args.schedule, "r", encoding="utf-8") as fh:
            cfg, params, demands, schedule = schedule_from_json(json.load(fh))
    else:
        params = validate(cfg, require_params(params))
        schedule, _, demands = analysis.build_schedule(cfg, params, demands=demands)
    coverage = check_coverage(schedule, cfg, params, demands)
    zf = check_zf_feasibility(schedule, cfg, params)
    ok = coverage.passed and zf.passed
    lines = [f"coverage: {coverage.summary()}", f"zero-forcing: {zf.summary()}"]
    if coverage.missing:
        lines.append(f"missing subpackets ({len(coverage.missing)} total, first 10):")
        for user, sub in coverage.missing[:10]:
            lines.append(f"  user {user}: file {sub.mini.file} profiles {sub.mini.profiles} q={sub.q}")
    summary = {"pass": ok, "max_nullset": zf.max_nullset,
               "missing": len(coverage.missing), "duplicates": len(coverage.duplicates)}
    _write_text(args.out, "\n".join(lines) + "\n" + _json_text(summary))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_dof(args):
    cfg, params, demands, _ = load_scenario(args.scenario)
    params = validate(cfg, require_params(params))
    result = analysis.run_pipeline(cfg, params, demands=demands)
    if not result.ok:
        _write_text(args.out, _json_text({"pass": False,
                                          "coverage": result.coverage.summary(),
                                          "zero_forcing": result.zf.summary()}))
        return EXIT_VERIFY
    rep = result.report
    _write_text(args.out, _json_text({
        "strategy": rep.strategy, "eta_hat": rep.eta_hat, "Q": rep.Q, "beta": rep.beta,
        "K_M": result.partition.K_M, "K_U": result.partition.K_U,
        "J_M": rep.J_M, "J_U": rep.J_U, "T_M": rep.T_M, "T_U": rep.T_U,
        "dof": str(rep.empirical), "dof_decimal": float(rep.empirical),
        "closed_form": str(rep.closed_form), "verified": True,
    }))
    return EXIT_OK


def cmd_sweep(args):
    cfg, _, _, _ = load_scenario(args.scenario)
    result = analysis.dof_sweep(cfg, threads=_threads())
    emit_csv(sweep_csv_rows(result), args.out, SWEEP_COLUMNS)
    best = result.best
    summary = {"rows": len(result.rows), "out": args.out}
    if best is not None:
        summary.update({"dof_max": str(best.dof), "dof_max_decimal": float(best.dof),
                        "eta_hat": best.eta_hat, "Q": best.Q, "strategy": best.strategy})
    sys.stdout.write(_json_text(summary))
    return EXIT_OK


def cmd_sigma(args):
    cfg, _, _, extras = load_scenario(args.scenario)
    samples = extras["samples"] if args.samples is None else args.samples
    seed = extras["seed"] if args.seed is None else args.seed
    rows, meta = analysis.sigma_experiment(cfg, samples=samples, seed=seed,
                                           exhaustive=args.exhaustive, threads=_threads())
    emit_csv(sigma_csv_rows(rows), args.out, SIGMA_COLUMNS)
    meta["out"] = args.out
    sys.stdout.write(_json_text(meta))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ccsched",
        description="Coded-caching schedule synthesizer and exact DoF analyzer")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "schedule": (cmd_schedule, "emit the full transmission listing as JSON"),
        "verify": (cmd_verify, "check decodability and ZF feasibility"),
        "dof": (cmd_dof, "compute exact and closed-form DoF"),
        "sweep": (cmd_sweep, "line search over eta_hat and Q, CSV output"),
        "sigma-experiment": (cmd_sigma, "DoF-vs-association-skew experiment, CSV output"),
    }
    for name, (fn, help_text) in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        if name == "verify":
            p.add_argument("--schedule", default=None, help="verify this schedule JSON instead of rebuilding")
        if name == "sigma-experiment":
            p.add_argument("--samples", type=int, default=None, help="association samples (default 2000)")
            p.add_argument("--seed", type=int, default=None, help="sampling seed (default 0)")
            p.add_argument("--exhaustive", action="store_true",
                           help="enumerate all associations exactly instead of sampling")
        p.set_defaults(fn=fn)
    return parser


def run_command(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    try:
        return args.fn(args)
    except ConfigError as exc:
        sys.stderr.write(f"validation error: {exc}\n")
        return EXIT_VALIDATION
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
