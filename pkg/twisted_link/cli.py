# -*- coding: utf-8 -*-
#
# Copyright (c) 2022 Adam Solchenberger <asolchenberger@gmail.com>
# Copyright (c) 2022 Jason Engman <jengman@testtech-solutions.com>
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
"""
twisted-link command line.

Exit codes:
    0: every cross-check agreed
    1: a check failed
    2: bad input, or a cap was hit
"""
import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from .abelian import (fin_fix_check, fixed_abelian, fixed_on_torsion_check, is_finite, quasicyclic_iteration,
                      quasicyclic_quotient, quasicyclic_truncation, reidemeister_abelian, tbft_witness_abelian,
                      torsion_decompose)
from .api import TwistedLinkError
from .characters import character_table, verify_tbft_finite
from .corpus import ConfigError, jsonable, run_corpus
from .database import ReportDb
from .group import BudgetExceeded, conjugacy_classes, derived_series, rank
from .morphism import fixed_subgroup, identity_automorphism
from .settings import Settings
from .specfile import GroupSpec, SpecParseError, load_spec
from .twisted import reidemeister_classes, semidirect_coset_oracle

__all__ = ["main", "build_parser"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _settings(args: argparse.Namespace) -> Settings:
    params = {
        'closure_cap': args.cap,
        'truncation_level': args.truncation_level,
        'seed': args.seed,
        'workers': getattr(args, 'workers', None),
    }
    return Settings.from_env({k: v for k, v in params.items() if v is not None})


def _pretty(data) -> str:
    if isinstance(data, list):
        return "\n".join(_pretty(item) for item in data)
    if isinstance(data, dict):
        width = max((len(k) for k in data), default=0)
        return "\n".join(f"{k.ljust(width)}  {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}"
                         for k, v in sorted(data.items()))
    return str(data)


def _write(text: str, args: argparse.Namespace) -> None:
    if text:
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit(data, args: argparse.Namespace) -> None:
    data = jsonable(data)
    _write(_pretty(data) if args.pretty else json.dumps(data, sort_keys=True, indent=2), args)


def _abelian_summary(spec: GroupSpec, settings: Settings) -> tuple:
    e = spec.endo
    R = reidemeister_abelian(e)
    fixed = fixed_abelian(e)
    data = {
        'R': R,
        'fixed': fixed.order,
        'fixed_invariants': list(fixed.invariant_factors),
        'torsion': torsion_decompose(e.group).to_json(),
        'automorphism': e.is_automorphism,
        'fin_fix': fin_fix_check(e, settings).ok,
        'torsion_fixed': fixed_on_torsion_check(e).ok,
    }
    ok = data['fin_fix'] and data['torsion_fixed']
    if is_finite(R):
        witness = tbft_witness_abelian(e, settings)
        data['witness_order'] = witness.F_order
        data['witness_ok'] = witness.bijection_ok
        ok = ok and witness.bijection_ok
    return data, ok


def _prufer_summary(spec: GroupSpec, settings: Settings) -> tuple:
    q = spec.endo
    truncation = quasicyclic_truncation(q, settings)
    iteration = quasicyclic_iteration(q)
    data = {
        'p': q.p,
        'd': q.d,
        'R': truncation.R,
        'fixed': truncation.fixed,
        'automorphism': q.is_automorphism,
        'levels': {lv.level: lv.fixed for lv in truncation.levels},
        'skipped_levels': list(truncation.skipped),
        'truncation_ok': truncation.ok,
        'iteration': {'steps': iteration.steps, 'dimensions': list(iteration.dimensions),
                      'stopped_on': iteration.stopped_on},
        'fin_fix': fin_fix_check(q, settings).ok,
    }
    ok = truncation.ok and iteration.ok and data['fin_fix']
    if spec.subgroups:
        quotients = [quasicyclic_quotient(q.p, q.d, H, settings) for H in spec.subgroups]
        data['quotients'] = [{'form': r.form, 'finite': r.finite, 'order': r.order,
                              'dimension': r.quotient_dimension, 'ok': r.ok} for r in quotients]
        ok = ok and all(r.ok for r in quotients)
    return data, ok


def cmd_info(spec: GroupSpec, args: argparse.Namespace, settings: Settings) -> int:
    if spec.kind == 'abelian':
        A = spec.endo.group
        _emit({'ambient_rank': A.ambient_rank, 'free_rank': A.free_rank, 'order': A.order,
               'invariants': list(A.invariant_factors)}, args)
        return EXIT_OK
    if spec.kind == 'prufer':
        _emit({'p': spec.endo.p, 'd': spec.endo.d, 'order': 'infinite'}, args)
        return EXIT_OK
    G = spec.group
    data = {'order': G.order, 'classes': len(conjugacy_classes(G))}
    series = derived_series(G)
    if series.soluble:
        data['derived_length'] = series.derived_length
    if G.order > 1:
        try:
            data['rank'] = rank(G, settings)
        except BudgetExceeded as e:
            logger.info("rank skipped: %s", e)
    _emit(data, args)
    return EXIT_OK


def cmd_twisted(spec: GroupSpec, args: argparse.Namespace, settings: Settings) -> int:
    if spec.kind == 'abelian':
        data, ok = _abelian_summary(spec, settings)
        _emit({k: data[k] for k in ('R', 'fixed', 'witness_order') if k in data}, args)
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if spec.kind == 'prufer':
        return cmd_prufer(spec, args, settings)
    G = spec.group
    phi = spec.automorphism or identity_automorphism(G)
    part = reidemeister_classes(G, phi)
    oracle = semidirect_coset_oracle(G, phi, settings)
    tbft = verify_tbft_finite(G, phi, settings)
    _emit({
        'R': part.R,
        'class_sizes': part.sizes,
        'fixed': fixed_subgroup(phi).order,
        'fixed_characters': tbft.fixed_characters,
        'oracle': oracle == part.R,
        'tbft': tbft.ok,
    }, args)
    return EXIT_OK if oracle == part.R and tbft.ok else EXIT_CHECK_FAILED


def cmd_chartable(spec: GroupSpec, args: argparse.Namespace, settings: Settings) -> int:
    if spec.kind != 'perm':
        raise SpecParseError("chartable needs a perm spec")
    table = character_table(spec.group, settings)
    data = table.to_json()
    data['orthogonality'] = table.check_orthogonality()
    _emit(data, args)
    return EXIT_OK if data['orthogonality'] else EXIT_CHECK_FAILED


def cmd_abelian(spec: GroupSpec, args: argparse.Namespace, settings: Settings) -> int:
    if spec.kind != 'abelian':
        raise SpecParseError("abelian needs an abelian spec")
    data, ok = _abelian_summary(spec, settings)
    _emit(data, args)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_prufer(spec: GroupSpec, args: argparse.Namespace, settings: Settings) -> int:
    if spec.kind != 'prufer':
        raise SpecParseError("prufer needs a prufer spec")
    data, ok = _prufer_summary(spec, settings)
    _emit(data, args)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_corpus(args: argparse.Namespace, settings: Settings) -> int:
    config = None
    if args.config:
        try:
            with open(args.config) as f:
                config = json.load(f)
        except OSError as e:
            raise ConfigError(f"cannot read {args.config}: {e}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"{args.config} is not valid JSON: {e}")
    reports = run_corpus(config, settings)
    if args.db:
        with ReportDb(args.db) as db:
            db.store_reports(args.run_name, reports)
    if args.pretty:
        lines = [f"{'PASS' if r.passed else 'FAIL'} {r.case_id}" + (f"  {r.error}" if r.error else "")
                 for r in reports]
        _write("\n".join(lines), args)
    else:
        _emit([r.to_dict(timings=args.timings) for r in reports], args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


SPEC_COMMANDS = {
    'info': (cmd_info, "order, classes, derived length and rank of a group"),
    'twisted': (cmd_twisted, "Reidemeister number of an automorphism with its cross-checks"),
    'chartable': (cmd_chartable, "character table mod p of a permutation group"),
    'abelian': (cmd_abelian, "twisted classes and fixed points of a lattice endomorphism"),
    'prufer': (cmd_prufer, "fixed points of an endomorphism of Z(p^inf)^d"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="closure cap on group orders")
    common.add_argument("--truncation-level", type=int, help="highest p-power level for quasicyclic checks")
    common.add_argument("--seed", type=int, help="seed for automorphism sampling")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human readable output")
    common.add_argument("--verbose", "-v", action="count", default=0, help="-v for info, -vv for debug logging")

    parser = argparse.ArgumentParser(prog="twisted-link",
                                     description="twisted conjugacy classes and their cross-checks")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in SPEC_COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("spec", help="JSON spec file")
    p = sub.add_parser("corpus", parents=[common], help="run every check over a corpus of groups")
    p.add_argument("config", nargs="?", help="JSON corpus config (default: the built-in corpus)")
    p.add_argument("--workers", type=int, help="worker threads")
    p.add_argument("--db", help="also store the run in this sqlite file")
    p.add_argument("--run-name", default="corpus", help="name of the stored run")
    p.add_argument("--timings", action="store_true", help="include timings in the report")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        settings = _settings(args)
        if args.command == 'corpus':
            return cmd_corpus(args, settings)
        command, _ = SPEC_COMMANDS[args.command]
        spec = load_spec(args.spec, settings)
        return command(spec, args, settings)
    except TwistedLinkError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return EXIT_INPUT_ERROR
