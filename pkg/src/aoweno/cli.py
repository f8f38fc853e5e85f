"""
Command line: ``aoweno {run,converge,shock,bench,props}``.

Options come from an INI file (``--config``) with the sections
``[problem]``, ``[scheme]``, ``[resolution]`` and ``[overrides]``; flags on
the command line win over the file::

    [problem]
    name = sod

    [scheme]
    names = js, ao53, ao543
    epsilon = 1e-12

    [resolution]
    n = 200

    [overrides]
    t_final = 0.1
    cfl = 0.8
    option.perturbation = as_printed

Exit status: 0 on success, 1 on configuration errors, 2 on numerical
failure.
"""

from __future__ import annotations

import argparse
import ast
import configparser
import csv
import logging
import pathlib
import sys
from dataclasses import fields, replace
from typing import Any, Sequence

from aoweno import harness, problems
from aoweno.mesh import ConfigurationError
from aoweno.physics import InvalidStateError, RiemannSolverError, VacuumError
from aoweno.stencil import SchemeParams, Variant
from aoweno.timestep import NumericalFailure, TimeControl

log = logging.getLogger("aoweno")

SCHEMES = tuple(v.value for v in Variant)
SPEC_FIELDS = {"t_final", "gamma", "source", "sampling"}
TIME_FIELDS = {f.name for f in fields(TimeControl)} - {"t_final"}
SCHEME_FIELDS = {f.name for f in fields(SchemeParams)} - {"variant"}


class ConfigError(ValueError):
    pass


def _literal(text: str) -> Any:
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


# {{{ configuration


def load_config(path: str | None) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    if path is not None:
        if not cfg.read(path):
            raise ConfigError(f"cannot read config file {path!r}")
    for section in ("problem", "scheme", "resolution", "overrides"):
        if not cfg.has_section(section):
            cfg.add_section(section)
    unknown = set(cfg.sections()) - {"problem", "scheme", "resolution", "overrides"}
    if unknown:
        raise ConfigError(f"unknown config sections: {', '.join(sorted(unknown))}; "
                          "expected problem, scheme, resolution, overrides")
    return cfg


def resolve_problem(args, cfg) -> problems.ProblemSpec:
    name = args.problem or cfg["problem"].get("name")
    if not name:
        raise ConfigError(f"no problem given; valid names: {', '.join(problems.names())}")
    try:
        spec = problems.build(name)
    except problems.CatalogError as exc:
        raise ConfigError(str(exc)) from None
    return apply_overrides(spec, dict(cfg["overrides"]))


def apply_overrides(spec: problems.ProblemSpec, overrides: dict[str, str]) -> problems.ProblemSpec:
    top: dict[str, Any] = {}
    timing: dict[str, Any] = {}
    options: dict[str, Any] = {}
    for key, raw in overrides.items():
        value = _literal(raw)
        if key in SPEC_FIELDS:
            top[key] = value
        elif key in TIME_FIELDS:
            timing[key] = value
        elif key.startswith("option."):
            name = key[len("option."):]
            if name not in dict(spec.options):
                valid = ", ".join(k for k, _ in spec.options) or "(none)"
                raise ConfigError(f"unknown option {name!r} for {spec.name}; valid options: {valid}")
            options[name] = value
        else:
            valid = sorted(SPEC_FIELDS | TIME_FIELDS) + ["option.<name>"]
            raise ConfigError(f"unknown override {key!r}; valid keys: {', '.join(valid)}")
    try:
        if timing:
            top["time"] = replace(spec.time, **timing)
        if options:
            top["options"] = options
        return spec.with_(**top) if top else spec
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid override: {exc}") from None


def resolve_schemes(args, cfg, default: Sequence[str]) -> list[SchemeParams]:
    sec = cfg["scheme"]
    names = _split(args.scheme) if args.scheme else _split(sec.get("names", sec.get("name", "")))
    names = names or list(default)
    extra = {k: _literal(v) for k, v in sec.items() if k not in ("name", "names")}
    bad = set(extra) - SCHEME_FIELDS
    if bad:
        raise ConfigError(f"unknown scheme keys: {', '.join(sorted(bad))}; "
                          f"valid keys: {', '.join(sorted(SCHEME_FIELDS))}")
    out = []
    for name in names:
        if name.lower() not in SCHEMES:
            raise ConfigError(f"unknown scheme {name!r}; valid schemes: {', '.join(SCHEMES)}")
        try:
            out.append(SchemeParams.for_variant(name, **extra))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid scheme parameters: {exc}") from None
    return out


def _parse_n(text: str) -> int | tuple[int, ...]:
    parts = text.lower().replace("x", ",").split(",")
    try:
        values = tuple(int(p) for p in parts if p.strip())
    except ValueError:
        raise ConfigError(f"invalid resolution {text!r}") from None
    if not values or min(values) < 1:
        raise ConfigError(f"invalid resolution {text!r}")
    return values[0] if len(values) == 1 else values


def resolve_n(args, cfg, spec) -> int | tuple[int, ...] | None:
    text = args.n or cfg["resolution"].get("n")
    return None if text is None else _parse_n(text)


def resolve_resolutions(args, cfg, spec) -> list[int]:
    text = args.n or cfg["resolution"].get("resolutions") or cfg["resolution"].get("n")
    if text is None:
        return list(spec.resolutions)
    try:
        return [int(v) for v in _split(text)]
    except ValueError:
        raise ConfigError(f"invalid resolution list {text!r}") from None


# }}}


# {{{ commands


def _out(args) -> pathlib.Path:
    path = pathlib.Path(args.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def seed_cache(spec: problems.ProblemSpec) -> None:
    """Compute a missing fine-grid reference up front."""
    if spec.reference != "fine_grid":
        log.info("%s has no fine-grid reference; nothing to seed", spec.name)
        return
    if problems.fine_reference(spec, compute=False) is None:
        log.warning("computing %s reference (%s, N=%s); estimated %.0f s",
                    spec.name, spec.reference_scheme, spec.reference_resolution,
                    problems.estimated_cost(spec))
        problems.fine_reference(spec, compute=True)


def cmd_run(args, cfg) -> int:
    spec = resolve_problem(args, cfg)
    (scheme,) = resolve_schemes(args, cfg, ["ao53"])[:1]
    n = resolve_n(args, cfg, spec)
    res = harness.simulate(spec, scheme, n)
    path = _out(args) / f"{spec.name}_{scheme.variant.value}.csv"
    harness.write_snapshot(path, res)
    print(f"{spec.name} {scheme.variant.value} t={res.t:.6g} steps={res.steps} "
          f"seconds={res.seconds:.3f} -> {path}")
    return 0


def cmd_converge(args, cfg) -> int:
    spec = resolve_problem(args, cfg)
    resolutions = resolve_resolutions(args, cfg, spec)
    out = _out(args)
    for scheme in resolve_schemes(args, cfg, ["ao53"]):
        report = harness.convergence_study(spec, scheme, resolutions)
        path = out / f"converge_{spec.name}_{report.scheme}.csv"
        path.write_text(report.to_csv())
        print(f"# {spec.name} {report.scheme} -> {path}")
        print(report.to_csv(), end="")
    return 0


def cmd_shock(args, cfg) -> int:
    spec = resolve_problem(args, cfg)
    if spec.dim != 1:
        raise ConfigError(f"shock comparisons need a 1D problem: {spec.name} is {spec.dim}D")
    if args.seed_cache:
        seed_cache(spec)
    if spec.reference == "fine_grid" and problems.fine_reference(spec, compute=False) is None:
        raise ConfigError(
            f"{spec.name} needs a fine-grid reference (estimated {problems.estimated_cost(spec):.0f} s); "
            "rerun with --seed-cache to compute it"
        )
    schemes = resolve_schemes(args, cfg, ["js", "z", "zq", "ao53", "aon53", "ao543"])
    n = resolve_n(args, cfg, spec)
    cmp = harness.shock_comparison(spec, schemes, n)
    out = _out(args)
    (out / f"shock_{spec.name}_errors.csv").write_text(cmp.errors_csv())
    (out / f"shock_{spec.name}_profiles.csv").write_text(cmp.profiles_csv())
    print(cmp.errors_csv(), end="")
    return 0


def cmd_bench(args, cfg) -> int:
    spec = resolve_problem(args, cfg)
    schemes = resolve_schemes(args, cfg, ["aon53", "js", "z", "zq", "ao543"])
    report = harness.benchmark(spec, schemes, args.repeats, n=resolve_n(args, cfg, spec),
                               max_steps=args.steps)
    out = _out(args)
    (out / f"bench_{spec.name}.csv").write_text(report.to_csv())
    (out / f"bench_{spec.name}_seconds.csv").write_text(report.seconds_csv())
    print(report.to_csv(), end="")
    return 0


def cmd_props(args, cfg) -> int:
    from aoweno.properties import property_suite

    results = property_suite(n_convex=args.windows)
    out = _out(args)
    with open(out / "properties.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(("property", "measured", "expected", "kind", "passed"))
        for r in results:
            w.writerow((r.name, f"{r.measured:.9e}", f"{r.expected:.9e}", r.kind, int(r.passed)))
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} measured={r.measured:.6g} expected={r.expected:.6g}")
    return 0 if all(r.passed for r in results) else 2


COMMANDS = {
    "run": cmd_run,
    "converge": cmd_converge,
    "shock": cmd_shock,
    "bench": cmd_bench,
    "props": cmd_props,
}


# }}}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aoweno", description="WENO solver studies")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "single simulation, writes a field snapshot CSV"),
        ("converge", "convergence table"),
        ("shock", "shock-tube L1 errors and density profiles"),
        ("bench", "relative cost of the schemes"),
        ("props", "measured accuracy properties of the reconstructions"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="INI file with problem/scheme/resolution/overrides sections")
        p.add_argument("--problem", help="catalog name")
        p.add_argument("--scheme", help="scheme name or comma-separated list")
        p.add_argument("--n", help="resolution: 200, 40x40, or a list for converge")
        p.add_argument("--out-dir", default="out")
        p.add_argument("--seed-cache", action="store_true",
                       help="compute missing fine-grid references before running")
        if name == "bench":
            p.add_argument("--repeats", type=int, default=3)
            p.add_argument("--steps", type=int, default=None, help="time this many steps only")
        if name == "props":
            p.add_argument("--windows", type=int, default=1_000_000,
                           help="random windows for the convexity check")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config)
        if args.seed_cache and args.command != "shock" and args.command != "props":
            seed_cache(resolve_problem(args, cfg))
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, ConfigurationError, configparser.Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericalFailure, InvalidStateError, VacuumError, RiemannSolverError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
