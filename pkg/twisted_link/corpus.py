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
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .abelian import (INFINITE, Cardinality, fin_fix_check, fixed_abelian, fixed_abelian_bruteforce,
                      fixed_on_torsion_check, is_finite, primary_fixed_orders, quasicyclic_iteration,
                      quasicyclic_quotient, quasicyclic_truncation, reidemeister_abelian,
                      reidemeister_abelian_bruteforce, tbft_witness_abelian, torsion_decompose)
from .api import TwistedLinkError
from .characters import verify_tbft_finite
from .constructions import construct
from .group import (FiniteGroup, GroupError, commutator_subgroup, conjugacy_classes, derived_series,
                    subgroups_of_index)
from .morphism import Automorphism
from .pipeline import (GroupWorkspace, class_coset_union, derived_reduction, inner_bound_check,
                       reduction_witness, soluble_profile, subgroup_counting_check)
from .settings import DEFAULT_SETTINGS, Settings
from .specfile import parse_abelian, parse_automorphism, parse_prufer
from .twisted import (jabara_check, reidemeister_classes, semidirect_coset_oracle, sigma_witness,
                      verify_characteristic_quotient, verify_extension, verify_shift)

__all__ = ["ConfigError", "VerificationReport", "DEFAULT_CORPUS", "run_corpus", "jsonable"]

logger = logging.getLogger(__name__)

# integers past this are written as decimal strings
JSON_INT_LIMIT = 2 ** 63 - 1


class ConfigError(TwistedLinkError):
    """
    raised when a corpus configuration cannot be used
    """


DEFAULT_CORPUS = {
    "groups": [
        {"name": "1", "constructor": "trivial", "args": []},
        {"name": "C2", "constructor": "cyclic", "args": [2]},
        {"name": "C3", "constructor": "cyclic", "args": [3]},
        {"name": "C4", "constructor": "cyclic", "args": [4]},
        {"name": "C5", "constructor": "cyclic", "args": [5]},
        {"name": "C6", "constructor": "cyclic", "args": [6]},
        {"name": "C7", "constructor": "cyclic", "args": [7]},
        {"name": "C8", "constructor": "cyclic", "args": [8]},
        {"name": "C9", "constructor": "cyclic", "args": [9]},
        {"name": "V4", "constructor": "klein_four", "args": []},
        {"name": "C2^3", "constructor": "elementary_abelian", "args": [2, 3]},
        {"name": "C4xC2", "constructor": "abelian", "args": [4, 2]},
        {"name": "C3^2", "constructor": "elementary_abelian", "args": [3, 2]},
        {"name": "C6xC2", "constructor": "abelian", "args": [6, 2]},
        {"name": "S3", "constructor": "symmetric", "args": [3]},
        {"name": "D4", "constructor": "dihedral", "args": [4]},
        {"name": "D5", "constructor": "dihedral", "args": [5]},
        {"name": "D6", "constructor": "dihedral", "args": [6]},
        {"name": "Q8", "constructor": "quaternion", "args": []},
        {"name": "A4", "constructor": "alternating", "args": [4]},
        {"name": "S4", "constructor": "symmetric", "args": [4]},
        {"name": "Heis3", "constructor": "heisenberg", "args": [3]},
        {"name": "C2xQ8", "constructor": "direct_product", "args": [["cyclic", [2]], ["quaternion", []]]},
        {"name": "D8", "constructor": "dihedral", "args": [8]},
        {"name": "A5", "constructor": "alternating", "args": [5]},
        {"name": "S5", "constructor": "symmetric", "args": [5]},
        {"name": "A5xC2", "constructor": "direct_product", "args": [["alternating", [5]], ["cyclic", [2]]]},
    ],
    "abelian": [
        {"name": "Z2-quarter-turn", "ambient_rank": 2, "relations": [], "matrix": [[0, -1], [1, 0]]},
        {"name": "Z-negation", "ambient_rank": 1, "relations": [], "matrix": [[-1]]},
        {"name": "Z-identity", "ambient_rank": 1, "relations": [], "matrix": [[1]]},
        {"name": "Z6-negation", "ambient_rank": 1, "relations": [[6]], "matrix": [[5]]},
        {"name": "Z4xZ2-swap", "ambient_rank": 2, "relations": [[4, 0], [0, 2]], "matrix": [[1, 2], [1, 1]]},
        {"name": "Z2-hyperbolic", "ambient_rank": 2, "relations": [], "matrix": [[2, 1], [1, 1]]},
        {"name": "Z3-cycle", "ambient_rank": 3, "relations": [], "matrix": [[0, 0, 1], [1, 0, 0], [0, 1, 0]]},
        {"name": "Z-x-Z6", "ambient_rank": 2, "relations": [[0, 6]], "matrix": [[-1, 0], [0, 5]]},
    ],
    "prufer": [
        {"name": "Z(2)-times-3", "p": 2, "d": 1, "matrix": [[3]],
         "subgroups": [{"finite": [["1/8"]]}, {"image": [[0]]}]},
        {"name": "Z(3)-times-4", "p": 3, "d": 1, "matrix": [[4]]},
        {"name": "Z(2)-identity", "p": 2, "d": 1, "matrix": [[1]]},
        {"name": "Z(2)^2-shear", "p": 2, "d": 2, "matrix": [[1, 1], [0, 1]],
         "subgroups": [{"image": [[1], [0]]}]},
        {"name": "Z(5)^2-diagonal", "p": 5, "d": 2, "matrix": [[6, 0], [0, 2]]},
    ],
}


@dataclass
class VerificationReport:
    """
    the outcome of one corpus case. checks map a check name to pass/fail,
    values hold the numbers the checks were computed from
    """
    case_id: str
    kind: str
    group: dict = field(default_factory=dict)
    automorphism: Optional[dict] = None
    checks: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    error: Optional[str] = None
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.error is None and all(self.checks.values())

    def run_check(self, name: str, check: Callable[[], bool]) -> None:
        start = time.perf_counter()
        self.checks[name] = bool(check())
        self.timings[name] = round(time.perf_counter() - start, 6)

    def to_dict(self, timings: bool = False) -> dict:
        data = {
            'case_id': self.case_id,
            'kind': self.kind,
            'group': jsonable(self.group),
            'automorphism': jsonable(self.automorphism),
            'checks': dict(sorted(self.checks.items())),
            'values': jsonable(self.values),
            'error': self.error,
            'passed': self.passed,
        }
        if timings:
            data['timings'] = dict(sorted(self.timings.items()))
        return data


def jsonable(value: Any) -> Any:
    """INFINITE and oversized integers become strings, tuples become lists"""
    if isinstance(value, Cardinality):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > JSON_INT_LIMIT else value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, 'is_Integer') and value.is_Integer:
        return jsonable(int(value))
    return str(value)


def _capture(report: VerificationReport, run: Callable[[VerificationReport], None]) -> VerificationReport:
    start = time.perf_counter()
    try:
        run(report)
    except TwistedLinkError as e:
        report.error = f"{type(e).__name__}: {e}"
        logger.warning("case %s failed: %s", report.case_id, report.error)
    report.timings['total'] = round(time.perf_counter() - start, 6)
    logger.info("case %s %s", report.case_id, "passed" if report.passed else "FAILED")
    return report


def _shift_points(G: FiniteGroup, settings: Settings) -> list:
    if G.order <= settings.shift_exhaustive_cap:
        return list(range(G.order))
    return sorted({0, *G.generator_ids, *(c[0] for c in conjugacy_classes(G))})


def _perm_case(workspace: GroupWorkspace, name: str, phi: Automorphism, settings: Settings) -> Callable:
    def run(report: VerificationReport) -> None:
        G = workspace.group(name)
        report.automorphism = phi.fingerprint()
        part = reidemeister_classes(G, phi)
        report.values['R'] = part.R
        report.values['class_sizes'] = part.sizes
        report.run_check('shift', lambda: all(verify_shift(G, phi, x) for x in _shift_points(G, settings)))
        if G.order <= settings.extension_cap:
            invariant = [N for N in workspace.normal_subgroups(name) if N.is_invariant_under(phi.map)]
            report.run_check('extension', lambda: all(verify_extension(G, N, phi).ok for N in invariant))
        report.run_check('jabara', lambda: jabara_check(G, phi))
        report.run_check('oracle', lambda: semidirect_coset_oracle(G, phi, settings) == part.R)
        tbft = verify_tbft_finite(G, phi, settings)
        report.values['fixed_characters'] = tbft.fixed_characters
        report.run_check('tbft', lambda: tbft.ok)
        witness = sigma_witness(G, phi)
        report.values['sigma_degree'] = witness.action_degree
        report.values['sigma_kernel'] = witness.kernel.order
        report.run_check('sigma', lambda: witness.bijection_ok and witness.R_quotient == part.R)
        report.run_check('coset_union', lambda: class_coset_union(G, phi, witness.kernel))
        for n in range(2, settings.counting_max_index + 1):
            if subgroups_of_index(G, n, settings):
                report.run_check('characteristic_quotient',
                                 lambda: verify_characteristic_quotient(G, phi, n, settings).ok)
                break
        if derived_series(G).soluble:
            report.run_check('derived_reduction', lambda: derived_reduction(G, phi).ok)
        if G.order <= settings.extension_cap:
            report.run_check('reduction_witness', lambda: reduction_witness(G, phi, settings=settings).ok)
        report.values['profile'] = soluble_profile(G, phi, settings).to_json()
    return run


def _group_case(workspace: GroupWorkspace, name: str, settings: Settings) -> Callable:
    def run(report: VerificationReport) -> None:
        G = workspace.group(name)
        if G.order <= settings.counting_cap:
            counting = subgroup_counting_check(G, settings.counting_max_index, settings)
            report.values['rank'] = counting.rank
            report.values['subgroup_counts'] = {n: a for n, (a, _) in counting.counts.items()}
            report.run_check('counting', lambda: counting.ok)
        derived = commutator_subgroup(G.whole()).member_ids
        kernels = [F for F in workspace.normal_subgroups(name) if derived <= F.member_ids]
        report.values['inner_bound_pairs'] = len(kernels)
        report.run_check('inner_bound', lambda: all(inner_bound_check(G, F).ok for F in kernels))
    return run


def _explicit_case(workspace: GroupWorkspace, name: str, images: list, settings: Settings) -> Callable:
    def run(report: VerificationReport) -> None:
        G = workspace.group(name)
        phi = parse_automorphism(G, images)
        _perm_case(workspace, name, phi, settings)(report)
    return run


def _abelian_case(entry: dict, settings: Settings) -> Callable:
    def run(report: VerificationReport) -> None:
        e = parse_abelian(entry)
        A = e.group
        report.group = {'ambient_rank': A.ambient_rank, 'free_rank': A.free_rank,
                        'invariants': list(A.invariant_factors)}
        R = reidemeister_abelian(e)
        fixed = fixed_abelian(e)
        report.values.update({'R': R, 'fixed': fixed.order, 'fixed_invariants': list(fixed.invariant_factors),
                              'torsion': torsion_decompose(A).to_json()})
        report.run_check('fin_fix', lambda: fin_fix_check(e, settings).ok)
        report.run_check('torsion_fixed', lambda: fixed_on_torsion_check(e).ok)
        if A.rank_of_relations == 0:
            det = int(e.N.det()) if A.ambient_rank else 1
            report.values['det'] = det
            report.run_check('det_formula', lambda: (R is INFINITE) == (det == 0) and (
                det == 0 or (R == abs(det) and fixed.order == 1)))
        if A.is_finite and A.order <= settings.enumeration_cap:
            report.run_check('bruteforce', lambda: reidemeister_abelian_bruteforce(e, settings) == R
                             and len(fixed_abelian_bruteforce(e, settings)) == fixed.order)
            report.run_check('primary', lambda: primary_fixed_orders(e, settings).ok)
        if is_finite(R) and R <= settings.witness_R_cap:
            witness = tbft_witness_abelian(e, settings)
            report.values['witness_order'] = witness.F_order
            report.run_check('tbft_witness', lambda: witness.bijection_ok)
    return run


def _prufer_case(entry: dict, settings: Settings) -> Callable:
    def run(report: VerificationReport) -> None:
        q = parse_prufer(entry)
        report.group = {'p': q.p, 'd': q.d}
        truncation = quasicyclic_truncation(q, settings)
        iteration = quasicyclic_iteration(q)
        report.values.update({
            'R': truncation.R,
            'fixed': truncation.fixed,
            'level_counts': {lv.level: lv.fixed for lv in truncation.levels},
            'iteration_dimensions': list(iteration.dimensions),
            'iteration_stop': iteration.stopped_on,
        })
        report.run_check('truncation', lambda: truncation.ok)
        report.run_check('fin_fix', lambda: fin_fix_check(q, settings).ok)
        report.run_check('iteration', lambda: iteration.ok)
        subgroups = entry.get('subgroups', [])
        if subgroups:
            reports = [quasicyclic_quotient(q.p, q.d, H, settings) for H in subgroups]
            report.values['quotients'] = [
                {'form': r.form, 'finite': r.finite, 'order': r.order, 'dimension': r.quotient_dimension}
                for r in reports]
            report.run_check('quotient', lambda: all(r.ok for r in reports))
    return run


def _entries(config: dict, key: str) -> list:
    entries = config.get(key, [])
    if not isinstance(entries, list) or not all(isinstance(entry, dict) for entry in entries):
        raise ConfigError(f"'{key}' must be a list of objects, got {entries!r}")
    return entries


def _build_groups(config: dict, workspace: GroupWorkspace, settings: Settings) -> list:
    names = []
    for entry in _entries(config, 'groups'):
        try:
            name = entry.get('name') or entry['constructor']
            group = construct(entry['constructor'], entry.get('args', []), settings)
        except KeyError as e:
            raise ConfigError(f"group entry {entry!r} is missing {e}")
        except GroupError as e:
            raise ConfigError(f"group entry {entry!r}: {e}")
        if name in workspace.groups:
            raise ConfigError(f"duplicate group name {name}")
        workspace.add_group(name, group)
        names.append((name, entry))
    return names


def run_corpus(config: Optional[dict] = None, settings: Optional[Settings] = None) -> list:
    """
    Run every check on every case of the corpus and return the reports in
    case order. A failing case records its error and never stops the sweep.
    """
    config = DEFAULT_CORPUS if config is None else config
    if not isinstance(config, dict):
        raise ConfigError("the corpus configuration must be a JSON object")
    settings = (settings or DEFAULT_SETTINGS).updated(config.get('settings', {}))
    workspace = GroupWorkspace(settings)
    cases = []
    for name, entry in _build_groups(config, workspace, settings):
        G = workspace.group(name)
        fingerprint = G.fingerprint()
        cases.append((VerificationReport(f"{name}/group", 'group', fingerprint),
                      _group_case(workspace, name, settings)))
        if 'automorphisms' in entry:
            for k, images in enumerate(entry['automorphisms']):
                cases.append((VerificationReport(f"{name}/{k}", 'perm', fingerprint),
                              _explicit_case(workspace, name, images, settings)))
        else:
            for k, phi in enumerate(workspace.automorphisms(name)):
                cases.append((VerificationReport(f"{name}/{k}", 'perm', fingerprint),
                              _perm_case(workspace, name, phi, settings)))
    for entry in _entries(config, 'abelian'):
        cases.append((VerificationReport(f"abelian/{entry.get('name', len(cases))}", 'abelian'),
                      _abelian_case(entry, settings)))
    for entry in _entries(config, 'prufer'):
        cases.append((VerificationReport(f"prufer/{entry.get('name', len(cases))}", 'prufer'),
                      _prufer_case(entry, settings)))
    logger.info("running %d corpus cases with %d workers", len(cases), settings.workers)
    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        return list(pool.map(lambda case: _capture(*case), cases))
