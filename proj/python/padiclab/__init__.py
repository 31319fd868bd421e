"""p-adic integration, pseudonorms, equimeasurability and F_q point existence.

Every function returns plain Python data decoded from the library's JSON
output. Rationals are strings "a/b"; radical values are dicts with the exact
form, the generator p^(1/m) and a decimal approximation.
"""

import json
from fractions import Fraction

from . import _core
from ._core import DomainError, DEFAULT_SEED

__all__ = [
    "DomainError",
    "DEFAULT_SEED",
    "integrate",
    "pseudonorm",
    "equimeasure",
    "witness",
    "fourier",
    "count_points",
    "verify_nontrivial",
    "theorem_threshold",
    "surface_threshold",
    "hasse_weil_threshold",
    "complete_intersection_threshold",
    "corpus",
    "exact",
]


def _text(x):
    return x if isinstance(x, str) else json.dumps(x)


def exact(value):
    """The exact rational of a serialized rational or rational radical value."""
    if isinstance(value, dict):
        if value.get("generator", "1") != "1":
            raise ValueError(f"not rational: {value['exact']}")
        value = value["exact"]
    return Fraction(value)


def integrate(p, factors, nvars=1, depth=8, coset=None, exact_tails=None):
    """Enclosure of the integral of prod |F|^r over a coset (level, center) of Z_p^n.

    factors is a list of (polynomial text, exponent) pairs.
    """
    level, center = coset if coset is not None else (0, [])
    pairs = [(str(f), str(r)) for f, r in factors]
    return json.loads(_core.integrate(p, pairs, nvars, depth, level, [str(c) for c in center], exact_tails))


def pseudonorm(curve, form=0, depth=6, cut=0):
    """curve is a dict {"p", "h", "forms": [{"m", "numerator"}]} or its JSON text."""
    return json.loads(_core.pseudonorm(_text(curve), form, depth, cut))


def equimeasure(left, right, depth=1, window=1):
    return json.loads(_core.equimeasure(_text(left), _text(right), depth, window))


def witness(p, r, window=2, depth=2):
    return json.loads(_core.witness(p, str(r), window, depth))


def fourier(fn, taus, sign=-1):
    return json.loads(_core.fourier(_text(fn), [str(t) for t in taus], sign))


def count_points(field, poly, nvars=0, search_degree=1):
    return json.loads(_core.count_points(str(field), poly, nvars, search_degree))


def verify_nontrivial(field, poly):
    return json.loads(_core.verify_nontrivial(str(field), poly))


def theorem_threshold(n, hn, khn1):
    return int(_core.theorem_threshold(n, str(hn), str(khn1)))


def surface_threshold(k_squared):
    return int(_core.surface_threshold(str(k_squared)))


def hasse_weil_threshold(genus):
    return int(_core.hasse_weil_threshold(str(genus)))


def complete_intersection_threshold(degrees):
    return int(_core.complete_intersection_threshold([str(d) for d in degrees]))


def corpus(criteria=range(1, 11), seed=DEFAULT_SEED):
    return json.loads(_core.corpus(list(criteria), seed))
