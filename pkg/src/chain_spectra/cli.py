"""Command-line interface for chain spectra.

Subcommands:
  spectrum  mode frequencies, ground energy and single-phonon levels
  verify    residual battery for the analytic eigendecomposition
  bound     supremum of admissible coupling strengths
  plot      SVG level diagram, one column per panel
  export    CSV of enumerated energy levels with degeneracies

Exit codes: 0 success, 1 failed verification, 2 invalid flags or
unsupported family/operation combinations, 3 chain not positive definite,
4 enumeration over budget.

Diagnostics (including wall-clock time) go to stderr; payloads go to
stdout or --out, byte-deterministic for fixed inputs.  The environment
variable CHAIN_SPECTRA_CONFIG may point to a key=value config file (one
pair per line, # comments allowed) overriding geometry and tolerances:
svg_width, svg_height, svg_margin, verify_ortho_tol, verify_recon_tol,
verify_eig_tol.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass

from .chain import (
    ChainSpec,
    ConstantInteraction,
    CustomInteraction,
    DualQKrawtchoukInteraction,
    HahnInteraction,
    KrawtchoukInteraction,
    _family_params,
    enumerate_levels,
    max_coupling,
    mode_frequencies,
    rescale_levels,
    single_phonon_levels,
    state_energy,
)
from .errors import (
    ChainSpectraError,
    CombinatorialLimit,
    NotPositiveDefinite,
    UnsupportedFamily,
)
from .jacobi import (
    SymTridiagonal,
    analytic_decomposition,
    build_jacobi,
    decomposition_residuals,
    numeric_decomposition,
)

_CONFIG_DEFAULTS = {
    "svg_width": 840.0,
    "svg_height": 420.0,
    "svg_margin": 42.0,
    "verify_ortho_tol": 1e-10,
    "verify_recon_tol": 1e-9,
    "verify_eig_tol": 1e-8,
}

_FAMILIES = ("constant", "krawtchouk", "hahn", "qkrawtchouk", "custom")


@dataclass(frozen=True)
class RunReport:
    """What a subcommand computed: the echoed chain spec, the command
    name, the payload to render, optional residuals and the wall time."""

    command: str
    spec_echo: dict
    payload: dict
    residuals: dict | None
    wall_ms: float


def _load_config(stderr) -> dict | None:
    cfg = dict(_CONFIG_DEFAULTS)
    path = os.environ.get("CHAIN_SPECTRA_CONFIG", "").strip()
    if not path:
        return cfg
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw_lines = fh.read().splitlines()
    except OSError as exc:
        print(f"cannot read config file {path!r}: {exc}", file=stderr)
        return None
    for lineno, line in enumerate(raw_lines, start=1):
        item = line.strip()
        if not item or item.startswith("#"):
            continue
        if "=" not in item:
            print(f"{path}:{lineno}: {item!r} is not key=value", file=stderr)
            return None
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in cfg:
            print(f"{path}:{lineno}: unknown config key {key!r}", file=stderr)
            return None
        try:
            cfg[key] = float(value)
        except ValueError:
            print(
                f"{path}:{lineno}: value for {key!r} is not a number: "
                f"{value.strip()!r}",
                file=stderr,
            )
            return None
    return cfg


def _interaction_from_args(parser: argparse.ArgumentParser, args):
    fam = args.family
    if fam == "hahn":
        if args.alpha is None:
            parser.error("--alpha is required for the hahn family")
        return HahnInteraction(alpha=args.alpha)
    if args.alpha is not None:
        parser.error("--alpha only applies to the hahn family")
    if fam == "qkrawtchouk":
        if args.q is None:
            parser.error("--q is required for the qkrawtchouk family")
        return DualQKrawtchoukInteraction(q=args.q)
    if args.q is not None:
        parser.error("--q only applies to the qkrawtchouk family")
    if fam == "custom":
        if args.gamma is None:
            parser.error("--gamma is required for the custom family")
        try:
            gammas = tuple(float(g) for g in args.gamma.split(","))
        except ValueError:
            parser.error(f"--gamma must be a comma-separated float list, got {args.gamma!r}")
        return CustomInteraction(gammas=gammas)
    if args.gamma is not None:
        parser.error("--gamma only applies to the custom family")
    if fam == "constant":
        return ConstantInteraction()
    return KrawtchoukInteraction()


def _chain_from_args(parser: argparse.ArgumentParser, args) -> ChainSpec:
    interaction = _interaction_from_args(parser, args)
    try:
        return ChainSpec(
            n=args.n,
            omega=args.omega,
            coupling=args.c,
            interaction=interaction,
            mass=args.mass,
            hbar=args.hbar,
        )
    except ChainSpectraError as exc:
        parser.error(str(exc))


def _spec_echo(chain: ChainSpec) -> dict:
    echo = {
        "family": {
            ConstantInteraction: "constant",
            KrawtchoukInteraction: "krawtchouk",
            HahnInteraction: "hahn",
            DualQKrawtchoukInteraction: "qkrawtchouk",
            CustomInteraction: "custom",
        }[type(chain.interaction)],
        "n": chain.n,
        "omega": chain.omega,
        "coupling": chain.coupling,
        "mass": chain.mass,
        "hbar": chain.hbar,
    }
    if isinstance(chain.interaction, HahnInteraction):
        echo["alpha"] = chain.interaction.alpha
    if isinstance(chain.interaction, DualQKrawtchoukInteraction):
        echo["q"] = chain.interaction.q
    if isinstance(chain.interaction, CustomInteraction):
        echo["gamma"] = list(chain.interaction.gammas)
    return echo


def _write_out(text: str, out: str | None, stdout) -> None:
    if out is None:
        stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _pd_failure(chain: ChainSpec, stderr) -> int:
    try:
        bound = max_coupling(chain)
        hint = "unbounded" if math.isinf(bound) else repr(bound)
        print(
            f"chain is not positive definite; maximum admissible coupling: {hint}",
            file=stderr,
        )
    except UnsupportedFamily:
        print("chain is not positive definite", file=stderr)
    return 3


def _cmd_spectrum(parser, args, cfg, stdout, stderr) -> int:
    chain = _chain_from_args(parser, args)
    t0 = time.perf_counter()
    custom = isinstance(chain.interaction, CustomInteraction)
    try:
        numeric = mode_frequencies(chain, method="numeric")
        closed = None if custom else mode_frequencies(chain, method="closed")
    except NotPositiveDefinite:
        return _pd_failure(chain, stderr)
    residual = None
    if closed is not None:
        residual = max(
            abs(a - b) / a for a, b in zip(closed.omegas, numeric.omegas)
        )
    ground = state_energy(chain, (0,) * chain.n)
    levels = single_phonon_levels(chain)
    payload = {
        "spec": _spec_echo(chain),
        "omegas_closed": None if closed is None else list(closed.omegas),
        "omegas_numeric": list(numeric.omegas),
        "ground_energy": ground,
        "single_phonon_levels": list(levels),
        "residual_closed_vs_numeric": residual,
    }
    report = RunReport(
        command="spectrum",
        spec_echo=payload["spec"],
        payload=payload,
        residuals=None if residual is None else {"closed_vs_numeric": residual},
        wall_ms=1e3 * (time.perf_counter() - t0),
    )
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        rows = ["index,omega_closed,omega_numeric,single_phonon_level"]
        for t in range(chain.n):
            wc = "" if closed is None else repr(closed.omegas[t])
            rows.append(f"{t},{wc},{numeric.omegas[t]!r},{levels[t]!r}")
        text = "\n".join(rows) + "\n"
    else:
        lines = [
            "spec: " + " ".join(f"{k}={v}" for k, v in payload["spec"].items()),
            f"ground_energy {ground:.6g}",
            "index omega_closed omega_numeric single_phonon_level",
        ]
        for t in range(chain.n):
            wc = "-" if closed is None else format(closed.omegas[t], ".6g")
            lines.append(
                f"{t} {wc} {numeric.omegas[t]:.6g} {levels[t]:.6g}"
            )
        if residual is not None:
            lines.append(f"residual_closed_vs_numeric {residual:.6g}")
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out, stdout)
    print(f"wall_ms={report.wall_ms:.3f}", file=stderr)
    return 0


def _cmd_verify(parser, args, cfg, stdout, stderr) -> int:
    chain = _chain_from_args(parser, args)
    if isinstance(chain.interaction, CustomInteraction):
        parser.error("closed form unavailable for custom interactions")
    t0 = time.perf_counter()
    fam = _family_params(chain)
    M = build_jacobi(fam)
    if args.perturb:
        diag = list(M.diag)
        diag[0] += 1e-6 * (1.0 + abs(diag[0]))
        M = SymTridiagonal(diag=tuple(diag), offdiag=M.offdiag)
    analytic = analytic_decomposition(fam)
    numeric = numeric_decomposition(M)
    ortho, recon = decomposition_residuals(M, analytic)
    scale = 1.0 + max(abs(x) for x in M.diag + M.offdiag)
    eig_dev = max(
        abs(a - b)
        for a, b in zip(sorted(analytic.eigenvalues), numeric.eigenvalues)
    )
    checks = [
        ("orthogonality", ortho, cfg["verify_ortho_tol"]),
        ("reconstruction", recon, cfg["verify_recon_tol"] * scale),
        ("closed_vs_numeric_eigenvalues", eig_dev, cfg["verify_eig_tol"] * scale),
    ]
    lines = [
        "eigenvalues "
        + " ".join(format(v, ".6g") for v in sorted(analytic.eigenvalues)),
        "check value threshold status",
    ]
    ok = True
    for name, value, thr in checks:
        status = "pass" if value <= thr else "FAIL"
        ok = ok and value <= thr
        lines.append(f"{name} {value:.3e} {thr:.3e} {status}")
    report = RunReport(
        command="verify",
        spec_echo=_spec_echo(chain),
        payload={name: value for name, value, _ in checks},
        residuals={"orthogonality": ortho, "reconstruction": recon,
                   "closed_vs_numeric_eigenvalues": eig_dev},
        wall_ms=1e3 * (time.perf_counter() - t0),
    )
    _write_out("\n".join(lines) + "\n", args.out, stdout)
    print(f"wall_ms={report.wall_ms:.3f}", file=stderr)
    return 0 if ok else 1


def _cmd_bound(parser, args, cfg, stdout, stderr) -> int:
    chain = _chain_from_args(parser, args)
    t0 = time.perf_counter()
    try:
        bound = max_coupling(chain)
    except UnsupportedFamily as exc:
        parser.error(str(exc))
    report = RunReport(
        command="bound",
        spec_echo=_spec_echo(chain),
        payload={"max_coupling": bound},
        residuals=None,
        wall_ms=1e3 * (time.perf_counter() - t0),
    )
    text = ("unbounded" if math.isinf(bound) else repr(bound)) + "\n"
    _write_out(text, args.out, stdout)
    print(f"wall_ms={report.wall_ms:.3f}", file=stderr)
    return 0


_DEFAULT_PANELS = (
    "constant:c=0.5",
    "krawtchouk:c=0.18",
    "qkrawtchouk:q=1.6,c=1.0",
    "qkrawtchouk:q=0.7,c=0.01",
)


def _parse_panel(parser, text: str):
    fam, _, rest = text.partition(":")
    if fam not in ("constant", "krawtchouk", "hahn", "qkrawtchouk"):
        parser.error(f"unknown panel family {fam!r}")
    keys = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                parser.error(f"panel entry {item!r} is not key=value")
            try:
                keys[key.strip()] = float(value)
            except ValueError:
                parser.error(f"panel value for {key!r} is not a number")
    if "c" not in keys:
        parser.error(f"panel {text!r} must set c")
    allowed = {"constant": {"c"}, "krawtchouk": {"c"},
               "hahn": {"c", "alpha"}, "qkrawtchouk": {"c", "q"}}[fam]
    extra = set(keys) - allowed
    if extra:
        parser.error(f"panel keys {sorted(extra)} not valid for {fam}")
    if fam == "hahn" and "alpha" not in keys:
        parser.error("hahn panels must set alpha")
    if fam == "qkrawtchouk" and "q" not in keys:
        parser.error("qkrawtchouk panels must set q")
    return fam, keys


def _panel_chain(fam: str, keys: dict, n: int, omega: float, hbar: float) -> ChainSpec:
    interaction = {
        "constant": lambda: ConstantInteraction(),
        "krawtchouk": lambda: KrawtchoukInteraction(),
        "hahn": lambda: HahnInteraction(alpha=keys["alpha"]),
        "qkrawtchouk": lambda: DualQKrawtchoukInteraction(q=keys["q"]),
    }[fam]()
    return ChainSpec(
        n=n, omega=omega, coupling=keys["c"], interaction=interaction, hbar=hbar
    )


def _panel_label(idx: int, fam: str, keys: dict) -> str:
    parts = [f"{k}={keys[k]:g}" for k in sorted(keys)]
    return f"({chr(ord('a') + idx)}) {fam} " + " ".join(parts)


def _render_svg(panels, cfg) -> str:
    width = cfg["svg_width"]
    height = cfg["svg_height"]
    margin = cfg["svg_margin"]
    band = (width - 2 * margin) / max(len(panels), 1)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f'<rect x="0" y="0" width="{width:.2f}" height="{height:.2f}" '
        'fill="white"/>',
    ]
    top = margin + 18.0
    bottom = height - margin

    def y_of(r: float) -> float:
        return bottom - r * (bottom - top)

    for idx, (label, rescaled) in enumerate(panels):
        x0 = margin + idx * band
        x1 = x0 + band * 0.78
        axis_x = x0
        parts.append(
            f'<text x="{x0:.2f}" y="{margin:.2f}" font-family="monospace" '
            f'font-size="11">{label}</text>'
        )
        parts.append(
            f'<line x1="{axis_x:.2f}" y1="{y_of(0.0):.2f}" x2="{axis_x:.2f}" '
            f'y2="{y_of(1.0):.2f}" stroke="gray" stroke-width="1"/>'
        )
        for tick in (0.0, 0.5, 1.0):
            ty = y_of(tick)
            parts.append(
                f'<line x1="{axis_x - 4:.2f}" y1="{ty:.2f}" x2="{axis_x:.2f}" '
                f'y2="{ty:.2f}" stroke="gray" stroke-width="1"/>'
            )
            parts.append(
                f'<text x="{axis_x - 28:.2f}" y="{ty + 4:.2f}" '
                f'font-family="monospace" font-size="10">{tick:.1f}</text>'
            )
        for r in rescaled:
            ry = y_of(r)
            parts.append(
                f'<line x1="{x0 + 8:.2f}" y1="{ry:.2f}" x2="{x1:.2f}" '
                f'y2="{ry:.2f}" stroke="black" stroke-width="1.2"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_plot(parser, args, cfg, stdout, stderr) -> int:
    t0 = time.perf_counter()
    specs = args.panel if args.panel else list(_DEFAULT_PANELS)
    panels = []
    for idx, text in enumerate(specs):
        fam, keys = _parse_panel(parser, text)
        try:
            chain = _panel_chain(fam, keys, args.n, args.omega, args.hbar)
        except ChainSpectraError as exc:
            parser.error(str(exc))
        try:
            levels = single_phonon_levels(chain)
        except NotPositiveDefinite:
            return _pd_failure(chain, stderr)
        panels.append((_panel_label(idx, fam, keys), rescale_levels(levels)))
    svg = _render_svg(panels, cfg)
    report = RunReport(
        command="plot",
        spec_echo={"n": args.n, "omega": args.omega, "hbar": args.hbar},
        payload={"panels": [label for label, _ in panels]},
        residuals=None,
        wall_ms=1e3 * (time.perf_counter() - t0),
    )
    _write_out(svg, args.out, stdout)
    print(f"wall_ms={report.wall_ms:.3f}", file=stderr)
    return 0


def _cmd_export(parser, args, cfg, stdout, stderr) -> int:
    chain = _chain_from_args(parser, args)
    t0 = time.perf_counter()
    try:
        groups = enumerate_levels(chain, args.levels)
    except CombinatorialLimit as exc:
        print(str(exc), file=stderr)
        return 4
    except NotPositiveDefinite:
        return _pd_failure(chain, stderr)
    rows = ["energy,degeneracy,occupations"]
    for g in groups:
        occ = ";".join("|".join(str(k) for k in ks) for ks in g.occupations)
        rows.append(f"{g.energy!r},{g.degeneracy},{occ}")
    report = RunReport(
        command="export",
        spec_echo=_spec_echo(chain),
        payload={"groups": len(groups)},
        residuals=None,
        wall_ms=1e3 * (time.perf_counter() - t0),
    )
    _write_out("\n".join(rows) + "\n", args.out, stdout)
    print(f"wall_ms={report.wall_ms:.3f}", file=stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chain-spectra",
        description="Spectra of harmonic chains with position-dependent coupling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_chain_flags(p, with_c=True):
        p.add_argument("--family", required=True, choices=_FAMILIES)
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--q", type=float, default=None)
        p.add_argument("--gamma", type=str, default=None)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--omega", type=float, default=1.0)
        if with_c:
            p.add_argument("--c", type=float, default=0.0)
        p.add_argument("--mass", type=float, default=1.0)
        p.add_argument("--hbar", type=float, default=1.0)
        p.add_argument("--out", type=str, default=None)

    p_spectrum = sub.add_parser("spectrum", help="mode frequencies and levels")
    add_chain_flags(p_spectrum)
    p_spectrum.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p_verify = sub.add_parser("verify", help="analytic-vs-numeric residual battery")
    add_chain_flags(p_verify)
    p_verify.add_argument("--perturb", action="store_true")

    p_bound = sub.add_parser("bound", help="supremum of admissible coupling")
    add_chain_flags(p_bound)

    p_plot = sub.add_parser("plot", help="SVG level diagram")
    p_plot.add_argument("--panel", action="append", default=None)
    p_plot.add_argument("--n", type=int, default=12)
    p_plot.add_argument("--omega", type=float, default=1.0)
    p_plot.add_argument("--hbar", type=float, default=1.0)
    p_plot.add_argument("--out", type=str, required=True)

    p_export = sub.add_parser("export", help="CSV of enumerated levels")
    add_chain_flags(p_export)
    p_export.add_argument("--levels", type=int, required=True)

    return parser


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "bound": _cmd_bound,
    "plot": _cmd_plot,
    "export": _cmd_export,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _load_config(sys.stderr)
    if cfg is None:
        return 2
    try:
        return _COMMANDS[args.command](parser, args, cfg, sys.stdout, sys.stderr)
    except ChainSpectraError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
