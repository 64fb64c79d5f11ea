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
import os
from typing import Any, Optional

from .api import APIClass, PropertyError

__all__ = ["Settings", "DEFAULT_SETTINGS", "ENV_PREFIX"]

logger = logging.getLogger(__name__)

ENV_PREFIX = "TWISTED_LINK_"

# name: (default, minimum)
DEFAULTS = {
    'closure_cap': (20000, 1),
    'table_cap': (500, 1),
    'subgroup_budget': (200000, 1),
    'rank_cap': (200, 1),
    'truncation_level': (4, 1),
    'enumeration_cap': (400000, 1),
    'all_automorphisms_cap': (64, 1),
    'automorphism_sample': (48, 1),
    'shift_exhaustive_cap': (24, 1),
    'extension_cap': (64, 1),
    'counting_cap': (64, 1),
    'counting_max_index': (8, 1),
    'witness_R_cap': (50, 1),
    'witness_box': (2, 0),
    'workers': (1, 1),
    'seed': (0, 0),
}


class Settings(APIClass):
    """
    Caps and knobs shared by every computation. Pass params for the
    properties to override, anything not passed keeps its default.
    """

    def __repr__(self) -> str:
        changed = {k: v for k, v in self.as_dict().items() if v != DEFAULTS[k][0]}
        return f"Settings({changed})"

    def __init__(self, params: Optional[dict] = None) -> None:
        super().__init__()
        self.properties += list(DEFAULTS)
        for prop, (default, _) in DEFAULTS.items():
            setattr(self, prop, default)
        for prop, value in (params or {}).items():
            self.set(prop, value)

    def validate(self, prop: str, value: Any) -> int:
        minimum = DEFAULTS[prop][1]
        if isinstance(value, bool):
            raise PropertyError(f"'{prop}' expects an integer, got {value!r}")
        try:
            value = int(value)
        except (TypeError, ValueError):
            raise PropertyError(f"'{prop}' expects an integer, got {value!r}")
        if value < minimum:
            raise PropertyError(f"'{prop}' must be at least {minimum}, got {value}")
        return value

    @classmethod
    def from_env(cls, params: Optional[dict] = None, environ: Optional[dict] = None) -> "Settings":
        """
        build settings from TWISTED_LINK_<NAME> environment variables,
        explicit params win over the environment
        """
        environ = os.environ if environ is None else environ
        merged = {}
        for prop in DEFAULTS:
            key = ENV_PREFIX + prop.upper()
            if key in environ:
                logger.debug("setting %s from %s", prop, key)
                merged[prop] = environ[key]
        merged.update(params or {})
        return cls(merged)

    def updated(self, params: dict) -> "Settings":
        merged = self.as_dict()
        merged.update({k: v for k, v in params.items() if v is not None})
        return Settings(merged)


DEFAULT_SETTINGS = Settings()
