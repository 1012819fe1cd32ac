"""Command line front end: expansions and verification reports."""

from __future__ import annotations

import argparse
import logging
import os
import platform
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy
import sympy
from benedict import benedict
from benedict import __version__ as benedict_version
from prompt_toolkit import __version__ as prompt_toolkit_version
from sympy.polys.domains import QQ

from . import suites, ui
from .bch import chi_components, magnus_omega
from .core import TruncationContext, bch, homogeneous_components
from .errors import BCHFactorError, DegreeError, ParseError
from .hopf import (LinearFunctional, birkhoff_decompose, convolution_inverse, counterterm, even_odd_decompose,
                   grading_involution, is_pole_free)
from .operated import generators, render_brackets
from .polar import polar_series, render_table
from .report import Report, ReportEntry, check, check_equal
from .rota_baxter import formal_p_operator
from .serialize import loads_character
from .trees import all_trees

logger = logging.getLogger(__name__)

CONFIG_PATH = 'config.yml'
SEED_VARIABLE = 'BCHFACTOR_SEED'

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    """Everything that determines the output of a run; embedded in every report."""

    command: str = "verify-all"
    order: int = 5
    degree: int = 5
    max_degree: int = 8
    seed: int = 0
    instances: int = 20
    seeds: int = 10
    format: str = "text"
    out: Optional[str] = None
    symbolic: bool = False
    only: Optional[str] = None
    algebra: Optional[str] = None
    character: Optional[str] = None
    log_level: str = "WARNING"


# Config file keys, per RunConfig field.
CONFIG_KEYS = {
    "order": ("Truncation", "order"),
    "degree": ("Hopf", "degree"),
    "max_degree": ("Hopf", "max_degree"),
    "seed": ("Sampling", "seed"),
    "instances": ("Sampling", "instances"),
    "seeds": ("Sampling", "seeds"),
    "algebra": ("Sampling", "algebra"),
    "format": ("Report", "format"),
    "out": ("Report", "out"),
    "log_level": ("Logging", "level"),
}


ExpansionCallback = Callable[[RunConfig], list]


class Command:
    """A subcommand: the suites it runs and the expansions it prints."""

    name: str
    help: str
    suites: list[str]
    expansions: list[ExpansionCallback]

    def __init__(self, name: str, help: str, suites: Sequence[str]):
        self.name = name
        self.help = help
        self.suites = list(suites)
        self.expansions = []


REGISTERED_COMMANDS: dict[str, Command] = {}


def command(name: str, help: str, suites: Sequence[str]) -> Command:
    cmd = Command(name, help, suites)
    REGISTERED_COMMANDS[name] = cmd
    return cmd


def expansion(cmd: Command):
    "Attach an expansion printer to a command."
    def decorator(fn: ExpansionCallback) -> ExpansionCallback:
        cmd.expansions.append(fn)
        return fn
    return decorator


BCH = command("bch", "BCH series of two letters", ["bch-terms"])
CHI = command("chi", "the BCH-recursion and its defining identity",
              ["chi-expansion", "defining-identity", "variant-agreement"])
FACTORIZE = command("factorize", "exponential factorization and operator identities",
                    ["factorization", "operator-identities"])
SPITZER = command("spitzer", "Spitzer, Atkinson and Bogoliubov identities",
                  ["atkinson", "spitzer-classical", "spitzer-noncommutative", "bogoliubov",
                   "multiplicative-closed-form"])
MAGNUS = command("magnus", "Magnus expansion and Bernoulli numbers", ["magnus", "bernoulli"])
EVENODD = command("evenodd", "even-odd factorization of characters on rooted trees", ["even-odd"])
BIRKHOFF = command("birkhoff", "Connes-Kreimer Birkhoff decomposition", ["connes-kreimer"])
POLAR = command("polar", "polar factorization series", ["polar"])
UNIFORMIZE = command("uniformize", "uniformization of exp(a+)exp(a-)", ["uniformization"])
VERIFY_ALL = command("verify-all", "every verification suite", list(suites.REGISTERED_SUITES))


@expansion(BCH)
def _bch_expansion(cfg: RunConfig) -> list:
    x, y = generators("x y", TruncationContext(cfg.degree))
    series = bch(x, y)
    entry = ReportEntry("bch-expansion", f"BCH(x, y) through degree {cfg.degree}")
    entry.info["degree"] = cfg.degree
    entry.info["terms"] = [f"{k}: {render_brackets(part)}" for k, part in homogeneous_components(series).items()]
    return [entry]


@expansion(CHI)
def _chi_expansion(cfg: RunConfig) -> list:
    if not cfg.symbolic:
        return []
    (a,) = generators("a", TruncationContext(cfg.order))
    parts = chi_components(a, formal_p_operator(1))
    entry = ReportEntry("chi-components", f"χ(a) through degree {cfg.order}")
    entry.info["degree"] = cfg.order
    entry.info["terms"] = [f"{k}: {render_brackets(part)}" for k, part in sorted(parts.items())]
    return [entry]


@expansion(MAGNUS)
def _magnus_expansion(cfg: RunConfig) -> list:
    if not cfg.symbolic:
        return []
    (a,) = generators("a", TruncationContext(cfg.order))
    omega = magnus_omega(a, formal_p_operator(0))
    entry = ReportEntry("magnus-components", f"Ω(a) through degree {cfg.order}")
    entry.info["degree"] = cfg.order
    entry.info["terms"] = [f"{k}: {render_brackets(part)}" for k, part in homogeneous_components(omega).items()]
    return [entry]


@expansion(POLAR)
def _polar_expansion(cfg: RunConfig) -> list:
    entry = ReportEntry("polar-table", f"X-(k) and X+(k) for k ≤ {cfg.order}")
    entry.info["degree"] = cfg.order
    entry.info["terms"] = render_table(polar_series(cfg.order))
    return [entry]


def load_character_file(path: str, degree: int, laurent: Optional[bool] = None) -> LinearFunctional:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"Cannot read character file {path}: {exc}") from exc
    return loads_character(text, degree, laurent)


def _tree_values(f: LinearFunctional, degree: int) -> dict:
    return {str(tree): str(f(tree)) for tree in all_trees(degree)}


@expansion(EVENODD)
def _evenodd_character(cfg: RunConfig) -> list:
    if cfg.character is None:
        return []
    phi = load_character_file(cfg.character, cfg.degree)
    phi_minus, phi_plus = even_odd_decompose(phi)
    entry = ReportEntry("even-odd-character", f"φ = φ₋ ⋆ φ₊ for {cfg.character}")
    entry.checks += [check("product", phi_minus * phi_plus - phi, cfg.character),
                     check("odd-factor", grading_involution(phi_minus) - convolution_inverse(phi_minus),
                           cfg.character),
                     check("even-factor", grading_involution(phi_plus) - phi_plus, cfg.character)]
    entry.info["minus"] = _tree_values(phi_minus, cfg.degree)
    entry.info["plus"] = _tree_values(phi_plus, cfg.degree)
    return [entry]


@expansion(BIRKHOFF)
def _birkhoff_character(cfg: RunConfig) -> list:
    if cfg.character is None:
        return []
    phi = load_character_file(cfg.character, cfg.degree, laurent=True)
    phi_minus, phi_plus = birkhoff_decompose(phi)
    entry = ReportEntry("birkhoff-character", f"φ = φ₋⁻¹ ⋆ φ₊ for {cfg.character}")
    entry.checks += [check("birkhoff", convolution_inverse(phi_minus) * phi_plus - phi, cfg.character),
                     check("bogoliubov-route", counterterm(phi) - phi_minus, cfg.character),
                     check_equal("plus-pole-free", is_pole_free(phi_plus), True, cfg.character)]
    entry.info["minus"] = _tree_values(phi_minus, cfg.degree)
    entry.info["plus"] = _tree_values(phi_plus, cfg.degree)
    return [entry]


def print_version():
    print(f"{platform.system()} {platform.release()}")
    print(f"Python {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}")
    print(f"Python-Prompt {prompt_toolkit_version}")
    print(f"Python-Benedict {benedict_version}")
    print(f"SymPy {sympy.__version__} (ground types {type(QQ(1)).__module__})")
    print(f"NumPy {numpy.__version__}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--order", type=int, help="truncation order N")
    common.add_argument("-d", "--degree", type=int, help="degree cap D for trees and BCH terms")
    common.add_argument("--seed", type=int, help=f"random seed (the {SEED_VARIABLE} variable overrides it)")
    common.add_argument("--format", choices=["text", "json"], help="report format")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--algebra", choices=list(suites.CHI_FAMILIES),
                        help="check the BCH-recursion on this algebra only")
    common.add_argument("--symbolic", action="store_true", help="also print symbolic expansions")
    common.add_argument("--config", default=CONFIG_PATH, help="YAML configuration file")
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level to stderr")

    parser = argparse.ArgumentParser(prog="bchfactor", description=__doc__)
    parser.add_argument("--version", action="store_true", help="print library versions and exit")
    sub = parser.add_subparsers(dest="command", metavar="command")
    for name, cmd in REGISTERED_COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=cmd.help)
        if cmd is VERIFY_ALL:
            p.add_argument("--only", choices=list(suites.REGISTERED_SUITES), help="run a single suite")
        if cmd in (EVENODD, BIRKHOFF):
            p.add_argument("--character", metavar="FILE",
                           help="JSON map from tree literals to values, decomposed and checked")
    return parser


def load_config(path: str, explicit: bool) -> benedict:
    if not Path(path).is_file():
        if explicit:
            raise ParseError(f"Config file not found: {path}")
        return benedict()
    try:
        return benedict.from_yaml(path)
    except ValueError as exc:
        raise ParseError(f"Invalid config file {path}: {exc}") from exc


def resolve_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    """Defaults, then config.yml, then flags, then the seed variable."""
    config = load_config(args.config, args.config != CONFIG_PATH)
    cfg = RunConfig(command=args.command)
    for name, (section, key) in CONFIG_KEYS.items():
        value = config.get(section, {}) or {}
        if key in value and value[key] is not None:
            setattr(cfg, name, value[key])
    for name in ("order", "degree", "seed", "format", "out", "only", "algebra", "character"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    cfg.symbolic = bool(args.symbolic)
    if args.verbose:
        cfg.log_level = "DEBUG"
    if SEED_VARIABLE in environ:
        try:
            cfg.seed = int(environ[SEED_VARIABLE])
        except ValueError as exc:
            raise ParseError(f"{SEED_VARIABLE} is not an integer: {environ[SEED_VARIABLE]!r}") from exc
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    if cfg.order < 1:
        raise DegreeError(f"Truncation order must be at least 1, got {cfg.order}")
    if not 1 <= cfg.degree <= cfg.max_degree:
        raise DegreeError(f"Degree cap must be between 1 and {cfg.max_degree}, got {cfg.degree}")
    if cfg.format not in ("text", "json"):
        raise ParseError(f"Unknown report format: {cfg.format!r}")
    if cfg.algebra is not None and cfg.algebra not in suites.CHI_FAMILIES:
        raise ParseError(f"Unknown algebra {cfg.algebra!r}, expected one of {', '.join(suites.CHI_FAMILIES)}")


_handler: Optional[logging.Handler] = None


def setup_logging(level: str) -> None:
    "Install a single stderr handler on the package logger."
    global _handler
    root = logging.getLogger(__package__)
    if _handler is not None:
        root.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(_handler)
    root.setLevel(level)


def build_report(cfg: RunConfig) -> Report:
    cmd = REGISTERED_COMMANDS[cfg.command]
    report = Report(cfg)
    for fn in cmd.expansions:
        report.entries.extend(fn(cfg))
    names = [cfg.only] if cfg.only else cmd.suites
    for name in names:
        report.entries.append(suites.run_suite(name, cfg))
    return report


def emit(report: Report, cfg: RunConfig) -> None:
    if cfg.format == "json":
        text = report.dumps_json()
    else:
        text = report.render_text(color=cfg.out is None and ui.use_color())
    if cfg.out is not None:
        Path(cfg.out).write_text(text, encoding="utf-8")
    elif ui.use_color():
        ui.get_terminal_size()
        ui.print_header(f"bchfactor {cfg.command}", ui.BOLD + ui.CYAN)
        ui.print_ansi(text, end="")
        ui.print_div(ui.FAINT)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None, environ=os.environ) -> int:
    """Parse the arguments, run the command and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.version:
        print_version()
        return EXIT_PASS
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = resolve_config(args, environ)
        setup_logging(cfg.log_level)
        logger.info("running %s with order %d, degree %d, seed %d", cfg.command, cfg.order, cfg.degree, cfg.seed)
        report = build_report(cfg)
        emit(report, cfg)
    except ParseError as exc:
        sys.stderr.write(f"{ui.RED + ui.BOLD}{exc}{ui.ENDC}\n")
        return EXIT_USAGE
    except BCHFactorError as exc:
        sys.stderr.write(f"{ui.RED + ui.BOLD}{type(exc).__name__}: {exc}{ui.ENDC}\n")
        return EXIT_FAIL
    return EXIT_PASS if report.passed else EXIT_FAIL


def main():
    sys.exit(run())
