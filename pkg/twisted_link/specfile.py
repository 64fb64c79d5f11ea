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
import json
import logging
from dataclasses import dataclass
from typing import Any, Optional, Union

from .abelian import AbelianError, LatticeAbelianEndo, LatticeAbelianGroup, QuasicyclicEndo
from .api import TwistedLinkError
from .constructions import construct
from .group import FiniteGroup, GroupError, generate_group
from .morphism import Automorphism, MorphismError, automorphism_from_images, identity_automorphism
from .perm import Perm, PermError, parse_cycles
from .settings import DEFAULT_SETTINGS, Settings

__all__ = [
    "SpecParseError", "GroupSpec", "load_spec", "parse_spec", "parse_group", "parse_element",
    "parse_automorphism", "parse_abelian", "parse_prufer", "KINDS",
]

logger = logging.getLogger(__name__)

KINDS = ("perm", "abelian", "prufer")


class SpecParseError(TwistedLinkError):
    """
    raised when a spec file is malformed
    """


@dataclass
class GroupSpec:
    """
    a parsed spec file; perm specs fill group and automorphism, abelian specs
    fill endo with a LatticeAbelianEndo and prufer specs with a QuasicyclicEndo
    """
    kind: str
    group: Optional[FiniteGroup] = None
    automorphism: Optional[Automorphism] = None
    endo: Union[LatticeAbelianEndo, QuasicyclicEndo, None] = None
    subgroups: tuple = ()
    options: Optional[dict] = None


def _infer_kind(data: dict) -> str:
    kind = data.get('kind')
    if kind is None:
        if 'prufer' in data:
            kind = 'prufer'
        elif 'ambient_rank' in data:
            kind = 'abelian'
        else:
            kind = 'perm'
    if kind not in KINDS:
        raise SpecParseError(f"unknown spec kind {kind!r}, expected one of {', '.join(KINDS)}")
    return kind


def _integer_rows(value: Any, what: str) -> list:
    if not isinstance(value, list) or any(not isinstance(row, list) for row in value):
        raise SpecParseError(f"{what} must be a list of rows")
    widths = {len(row) for row in value}
    if len(widths) > 1:
        raise SpecParseError(f"{what} is not rectangular")
    for row in value:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise SpecParseError(f"{what} entries must be integers, got {x!r}")
    return value


def _plain_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecParseError(f"{what} must be an integer, got {value!r}")
    return value


def parse_element(value: Any, degree: int) -> Perm:
    """a cycle string such as "(0 1 2)" or an image array"""
    try:
        if isinstance(value, str):
            return parse_cycles(value, degree)
        if isinstance(value, list):
            perm = Perm(tuple(value))
            if len(perm) != degree:
                raise SpecParseError(f"image array {value!r} does not have {degree} points")
            return perm
    except PermError as e:
        raise SpecParseError(str(e))
    raise SpecParseError(f"cannot read {value!r} as a permutation")


def parse_group(data: dict, settings: Optional[Settings] = None) -> FiniteGroup:
    settings = settings or DEFAULT_SETTINGS
    if 'constructor' in data:
        ctor = data['constructor']
        if isinstance(ctor, str):
            ctor = {'name': ctor}
        if not isinstance(ctor, dict) or 'name' not in ctor:
            raise SpecParseError(f"constructor must name a group, got {ctor!r}")
        try:
            return construct(ctor['name'], ctor.get('args', data.get('args', [])), settings)
        except GroupError as e:
            raise SpecParseError(str(e))
    if 'degree' not in data:
        raise SpecParseError("a perm spec needs a degree and generators, or a constructor")
    degree = data['degree']
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
        raise SpecParseError(f"degree must be a positive integer, got {degree!r}")
    gens = [parse_element(g, degree) for g in data.get('generators', [])]
    try:
        return generate_group(gens, degree=degree, settings=settings, name=data.get('name'))
    except GroupError as e:
        raise SpecParseError(str(e))


def parse_automorphism(G: FiniteGroup, data: Any) -> Automorphism:
    """
    {"images": [...]} with one entry per generator, each an element id,
    a cycle string or an image array
    """
    if data is None:
        return identity_automorphism(G)
    images = data.get('images') if isinstance(data, dict) else data
    if not isinstance(images, list):
        raise SpecParseError("automorphism images must be a list")
    resolved = []
    for value in images:
        if isinstance(value, int) and not isinstance(value, bool):
            resolved.append(value)
            continue
        perm = parse_element(value, G.degree)
        if perm not in G.elem_index:
            raise SpecParseError(f"image {value!r} is not an element of the group")
        resolved.append(perm)
    return automorphism_from_images(G, resolved)


def parse_abelian(data: dict) -> LatticeAbelianEndo:
    if not isinstance(data, dict):
        raise SpecParseError("an abelian spec must be a JSON object")
    try:
        k = data['ambient_rank']
        matrix = _integer_rows(data['matrix'], 'matrix')
    except KeyError as e:
        raise SpecParseError(f"abelian spec is missing {e}")
    k = _plain_int(k, 'ambient_rank')
    relations = _integer_rows(data.get('relations', []), 'relations')
    try:
        return LatticeAbelianEndo(LatticeAbelianGroup(k, relations), matrix)
    except AbelianError as e:
        raise SpecParseError(str(e))


def parse_prufer(data: dict) -> QuasicyclicEndo:
    body = data.get('prufer', data) if isinstance(data, dict) else data
    if not isinstance(body, dict):
        raise SpecParseError("a prufer spec must be a JSON object")
    try:
        p, d = _plain_int(body['p'], 'p'), _plain_int(body['d'], 'd')
        matrix = _integer_rows(body['matrix'], 'matrix')
    except KeyError as e:
        raise SpecParseError(f"prufer spec is missing {e}")
    try:
        return QuasicyclicEndo(p, d, matrix)
    except AbelianError as e:
        raise SpecParseError(str(e))


def parse_spec(data: Any, settings: Optional[Settings] = None) -> GroupSpec:
    if not isinstance(data, dict):
        raise SpecParseError("a spec must be a JSON object")
    kind = _infer_kind(data)
    options = data.get('options')
    if kind == 'abelian':
        return GroupSpec(kind, endo=parse_abelian(data), options=options)
    if kind == 'prufer':
        body = data.get('prufer', data)
        return GroupSpec(kind, endo=parse_prufer(data), subgroups=tuple(body.get('subgroups', [])),
                         options=options)
    group = parse_group(data, settings)
    automorphism = None
    if 'automorphism' in data:
        try:
            automorphism = parse_automorphism(group, data['automorphism'])
        except (MorphismError, GroupError) as e:
            raise SpecParseError(f"{type(e).__name__}: {e}")
    return GroupSpec(kind, group=group, automorphism=automorphism, options=options)


def load_spec(path: str, settings: Optional[Settings] = None) -> GroupSpec:
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise SpecParseError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise SpecParseError(f"{path} is not valid JSON: {e}")
    logger.debug("loaded %s spec from %s", _infer_kind(data) if isinstance(data, dict) else '?', path)
    return parse_spec(data, settings)
