"""Classification of corank-1 map germs from the plane to 3-space."""

import json
from dataclasses import dataclass, field

from . import _core

__all__ = ["Result", "classify", "ruled", "center", "folded", "oracle", "fuzz", "parse_poly", "normalize_doc", "CrosscapError"]

EXIT_DEFINITE = 0
EXIT_INPUT_ERROR = 1
EXIT_MORE_DEGENERATE = 2
EXIT_DISAGREEMENT = 3


@dataclass
class Result:
    exit_code: int
    data: dict = field(default_factory=dict)
    text: str = ""

    @property
    def verdict(self):
        if "verdict" in self.data:
            return self.data["verdict"]
        return self.data.get("generic", {}).get("verdict")


def _wrap(raw):
    code, payload, text = raw
    return Result(code, json.loads(payload), text)


def classify(text, verify=False):
    return _wrap(_core.classify(text, verify))


def ruled(text, verify=False):
    return _wrap(_core.ruled(text, verify))


def center(text, verify=False):
    return _wrap(_core.center(text, verify))


def folded(text, verify=False):
    return _wrap(_core.folded(text, verify))


def oracle(text, verify=False):
    return _wrap(_core.oracle(text, verify))


def fuzz(seed=1, trials=100, degree=3, bound=9, order=_core.DEFAULT_ORDER, jobs=1):
    return _wrap(_core.fuzz(seed, trials, degree, bound, order, jobs))


parse_poly = _core.parse_poly
normalize_doc = _core.normalize_doc
CrosscapError = _core.CrosscapError
