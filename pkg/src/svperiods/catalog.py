"""The rank-2 case table, newform construction recipes, and curve models.

Newforms are produced as exact rational q-expansions from one of three
recipes: eta quotients, level-1 products Delta * {1, E4, E6, E4^2, E4*E6,
E4^2*E6}, or plain-text data files shipped with the package (regenerable
with tools/generate_data.py).  Eigenform and point-counting invariants in
the test suite validate every entry, so no recipe is trusted blindly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .qexp import QSeries, delta_qexp, eisenstein, eta_quotient

_DATA_ENV = "SVP_DATA_DIR"

# (level, weight) rows of the rank-2 table; cm flags the five CM entries
_TABLE = [
    (1, 12, False), (1, 16, False), (1, 18, False), (1, 20, False), (1, 22, False), (1, 26, False),
    (2, 8, False), (2, 10, False),
    (3, 6, False), (3, 8, False),
    (4, 6, False),
    (5, 4, False), (5, 6, False),
    (6, 4, False),
    (7, 4, False),
    (8, 4, False),
    (9, 4, True),
    (11, 2, False),
    (14, 2, False),
    (15, 2, False),
    (17, 2, False),
    (19, 2, False),
    (20, 2, False),
    (21, 2, False),
    (24, 2, False),
    (27, 2, True),
    (32, 2, True),
    (36, 2, True),
    (49, 2, True),
]

_ETA_RECIPES = {
    (2, 8): [(1, 8), (2, 8)],
    (3, 6): [(1, 6), (3, 6)],
    (4, 6): [(2, 12)],
    (5, 4): [(1, 4), (5, 4)],
    (6, 4): [(1, 2), (2, 2), (3, 2), (6, 2)],
    (9, 4): [(3, 8)],
    (11, 2): [(1, 2), (11, 2)],
    (14, 2): [(1, 1), (2, 1), (7, 1), (14, 1)],
    (15, 2): [(1, 1), (3, 1), (5, 1), (15, 1)],
    (20, 2): [(2, 2), (10, 2)],
    (24, 2): [(2, 1), (4, 1), (6, 1), (12, 1)],
    (27, 2): [(3, 2), (9, 2)],
    (32, 2): [(4, 2), (8, 2)],
    (36, 2): [(6, 4)],
}

# level-1 weights -> (E4 power, E6 power) multiplying Delta
_LEVEL1_BLOCKS = {12: (0, 0), 16: (1, 0), 18: (0, 1), 20: (2, 0), 22: (1, 1), 26: (2, 1)}

_FILE_CASES = {(2, 10), (3, 8), (5, 6), (7, 4), (8, 4), (17, 2), (19, 2), (21, 2), (49, 2)}


@dataclass(frozen=True)
class RankTwoCase:
    level: int
    weight: int
    cm: bool

    @property
    def k(self):
        """The symmetric-power degree; form weight is k + 2."""
        return self.weight - 2


def rank_two_table():
    """All 29 (level, weight) cases with dim S_weight(Gamma_0(level)) = 1."""
    return [RankTwoCase(*row) for row in _TABLE]


def lookup_case(level, weight):
    for row in _TABLE:
        if row[0] == level and row[1] == weight:
            return RankTwoCase(*row)
    raise KeyError("(%d, %d) is not a rank-2 case" % (level, weight))


def recipe_kind(case):
    key = (case.level, case.weight)
    if case.level == 1:
        return "product"
    if key in _FILE_CASES:
        return "file"
    if key in _ETA_RECIPES:
        return "eta"
    raise KeyError("no recipe for %s" % (case,))


def data_dir():
    override = os.environ.get(_DATA_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def newform_qexp(case, T):
    """Exact q-expansion (a_1 = 1) of the unique newform of the given case."""
    kind = recipe_kind(case)
    if kind == "product":
        b4, b6 = _LEVEL1_BLOCKS[case.weight]
        f = delta_qexp(T)
        if b4:
            f = f * eisenstein(4, T) ** b4
        if b6:
            f = f * eisenstein(6, T) ** b6
        f = f.truncate(T)
    elif kind == "eta":
        f = eta_quotient(_ETA_RECIPES[(case.level, case.weight)], T)
    else:
        path = data_dir() / ("qexp_N%d_k%d.txt" % (case.level, case.weight))
        f = load_qexp_file(path)
        if f.T < T:
            raise ValueError("data file %s truncated at %d < requested %d" % (path, f.T, T))
        f = f.truncate(T)
    if f.is_zero() or f.valuation != 1 or f.coeff(1) != 1:
        raise ValueError("recipe for %s did not produce a normalized newform" % (case,))
    return f


def curve_model(N):
    """Minimal Weierstrass coefficients (a1, a2, a3, a4, a6) of X_0(N), weight-2 cases."""
    lookup_case(N, 2)  # raises if not a weight-2 rank-2 level
    path = data_dir() / "curves.txt"
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 6:
            raise ValueError("%s:%d: expected 'N a1 a2 a3 a4 a6'" % (path, lineno))
        if int(parts[0]) == N:
            return tuple(int(p) for p in parts[1:])
    raise KeyError("no curve model for level %d in %s" % (N, path))


def load_qexp_file(path):
    """Parse the one-coefficient-per-line q-expansion format.

    Lines are "<exponent> <rational>" ('#' starts a comment, exponents
    strictly increasing, absent exponents mean zero); the final exponent is
    the certified truncation.
    """
    path = Path(path)
    coeffs = {}
    last = None
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise ValueError("%s:%d: expected '<exponent> <rational>'" % (path, lineno))
        try:
            n = int(parts[0])
        except ValueError:
            raise ValueError("%s:%d: malformed exponent %r" % (path, lineno, parts[0])) from None
        try:
            c = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise ValueError("%s:%d: malformed rational %r" % (path, lineno, parts[1])) from None
        if last is not None and n <= last:
            raise ValueError("%s:%d: exponents must be strictly increasing" % (path, lineno))
        last = n
        coeffs[n] = c
    if last is None:
        raise ValueError("%s: empty q-expansion file" % path)
    return QSeries.from_dict(coeffs, last)


def weight2_levels():
    return [c.level for c in rank_two_table() if c.weight == 2]
