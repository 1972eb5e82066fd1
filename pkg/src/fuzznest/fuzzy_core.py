"""Fuzzy sets over set expressions.

A FuzzySet pairs canonical expressions with membership degrees in [0,1].
Membership propagates from base atoms to arbitrary superstructure
elements by three rules applied in order:

1. the empty set has membership 1,
2. an element listed in the base keeps its stored membership,
3. otherwise a braced atom {a}^(n) gets the n-fold level map of the
   atom's membership, and a set gets the product of (2^mu - 1) over its
   members' propagated memberships.

Because 2^v - 1 maps [0,1] onto [0,1], every propagated value stays a
valid membership. The power set of a flat fuzzy set then has scalar
cardinality exactly 2^(scalar cardinality of the base), which
verify_power_cardinality checks numerically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from ._backend import impl as _impl
from .errors import (
    CapExceededError,
    DomainError,
    DuplicateElementError,
    InvariantError,
    MissingMembershipError,
    ParseError,
    UniverseError,
)
from .set_expr import (
    EMPTY,
    AtomUniverse,
    Braced,
    Empty,
    SetExpr,
    SetOf,
    atoms_of,
    in_superstructure,
    normalize,
    parse_expr,
    print_expr,
)

__all__ = [
    "FuzzySet",
    "VerificationReport",
    "scalar_cardinality",
    "propagate_membership",
    "construct_fuzzy_set",
    "fuzzy_power_set",
    "verify_power_cardinality",
    "verify_classical_degeneracy",
    "fuzzyset_to_json",
    "fuzzyset_from_json",
    "POWER_SET_CAP",
]

POWER_SET_CAP = 20


@dataclass(frozen=True, slots=True)
class FuzzySet:
    """Finite fuzzy set: (expression, membership) pairs over an atom universe.

    The plain constructor trusts its arguments (internal fast paths rely
    on that); use build() for validated construction from outside input.
    """

    universe: AtomUniverse
    elements: tuple[tuple[SetExpr, float], ...]

    @classmethod
    def build(
        cls,
        universe: AtomUniverse,
        pairs: Iterable[tuple[SetExpr, float]],
    ) -> "FuzzySet":
        """Validate, canonicalize, and construct.

        Raises InvariantError for memberships outside [0,1] or a
        non-unit empty set, UniverseError for foreign atoms, and
        DuplicateElementError when two expressions share one canonical
        form.
        """
        seen: set[SetExpr] = set()
        out: list[tuple[SetExpr, float]] = []
        for expr, mu in pairs:
            e = normalize(expr)
            mu = float(mu)
            if not (0.0 <= mu <= 1.0):
                raise InvariantError(
                    f"membership {mu!r} for {print_expr(e)} is outside [0,1]"
                )
            if isinstance(e, Empty) and mu != 1.0:
                raise InvariantError("the empty set must have membership 1")
            if not in_superstructure(e, universe):
                raise UniverseError(
                    f"{print_expr(e)} uses atoms outside the universe"
                )
            if e in seen:
                raise DuplicateElementError(
                    f"duplicate element {print_expr(e)}"
                )
            seen.add(e)
            out.append((e, mu))
        return cls(universe, tuple(out))

    @classmethod
    def flat(cls, memberships: Iterable[tuple[str, float]]) -> "FuzzySet":
        """Fuzzy set of bare atoms; the universe is taken from the names."""
        items = list(memberships)
        universe = AtomUniverse(tuple(name for name, _ in items))
        return cls.build(universe, [(Braced(name, 0), mu) for name, mu in items])

    def membership_table(self) -> dict[SetExpr, float]:
        return dict(self.elements)


@dataclass(frozen=True, slots=True)
class VerificationReport:
    """Outcome of one numeric check: computed vs expected at a tolerance."""

    label: str
    computed: float
    expected: float
    abs_diff: float
    tolerance: float
    passed: bool

    def __post_init__(self):
        if self.abs_diff != abs(self.computed - self.expected):
            raise InvariantError("abs_diff must equal |computed - expected|")
        if self.passed != (self.abs_diff <= self.tolerance):
            raise InvariantError("passed must mean abs_diff <= tolerance")

    @classmethod
    def check(
        cls, label: str, computed: float, expected: float, tolerance: float
    ) -> "VerificationReport":
        diff = abs(computed - expected)
        return cls(label, computed, expected, diff, tolerance, diff <= tolerance)


def scalar_cardinality(fs: FuzzySet) -> float:
    """Sum of all membership degrees (the sigma count)."""
    return math.fsum(mu for _, mu in fs.elements)


def _propagate(table: Mapping[SetExpr, float], y: SetExpr) -> float:
    if isinstance(y, Empty):
        return 1.0
    stored = table.get(y)
    if stored is not None:
        return stored
    if isinstance(y, Braced):
        base = table.get(Braced(y.atom, 0))
        if base is None:
            raise MissingMembershipError(
                f"atom {y.atom!r} has no base membership"
            )
        return _impl.level_value(base, y.level)
    product = 1.0
    for element in y.elements:
        product *= 2.0 ** _propagate(table, element) - 1.0
    return product


def propagate_membership(base: FuzzySet, y: SetExpr) -> float:
    """Membership of y derived from the base fuzzy set.

    y may be any superstructure element over the base universe; see the
    module docstring for the rule order.
    """
    y = normalize(y)
    if not in_superstructure(y, base.universe):
        raise UniverseError(f"{print_expr(y)} uses atoms outside the universe")
    return _propagate(base.membership_table(), y)


def construct_fuzzy_set(
    base: FuzzySet, universe_exprs: Iterable[SetExpr]
) -> FuzzySet:
    """New fuzzy set over the given expressions with propagated memberships.

    Input order is preserved; expressions that normalize to the same
    canonical form raise DuplicateElementError.
    """
    table = base.membership_table()
    seen: set[SetExpr] = set()
    out: list[tuple[SetExpr, float]] = []
    for expr in universe_exprs:
        e = normalize(expr)
        if e in seen:
            raise DuplicateElementError(f"duplicate element {print_expr(e)}")
        seen.add(e)
        if not in_superstructure(e, base.universe):
            raise UniverseError(
                f"{print_expr(e)} uses atoms outside the universe"
            )
        out.append((e, _propagate(table, e)))
    return FuzzySet(base.universe, tuple(out))


def _require_flat(base: FuzzySet) -> dict[str, float]:
    """Membership by atom name, or DomainError if base is not flat."""
    expected = {Braced(name, 0) for name in base.universe.atoms}
    actual = [expr for expr, _ in base.elements]
    if len(actual) != len(expected) or set(actual) != expected:
        raise DomainError(
            "operation needs a flat fuzzy set: exactly the universe atoms "
            "at level 0, nothing else"
        )
    return {expr.atom: mu for expr, mu in base.elements}  # type: ignore[union-attr]


def fuzzy_power_set(base: FuzzySet, cap: int = POWER_SET_CAP) -> FuzzySet:
    """Fuzzy set over all 2^n subsets of a flat base's universe.

    Each subset's membership is the product of (2^mu - 1) over its
    atoms; the empty subset gets 1. Elements are ordered by subset size,
    then lexicographically by atom names. CapExceededError guards the
    exponential blowup for n > cap.
    """
    mu_by_name = _require_flat(base)
    n = len(base.universe.atoms)
    if n > cap:
        raise CapExceededError(
            f"{n} atoms would enumerate 2^{n} subsets (cap is {cap})"
        )
    names = sorted(base.universe.atoms)
    factor = {name: 2.0 ** mu_by_name[name] - 1.0 for name in names}
    level0 = {name: Braced(name, 0) for name in names}

    elements: list[tuple[SetExpr, float]] = [(EMPTY, 1.0)]
    for size in range(1, n + 1):
        for combo in combinations(names, size):
            mu = math.prod(factor[name] for name in combo)
            if size == 1:
                expr: SetExpr = Braced(combo[0], 1)
            else:
                expr = SetOf(tuple(level0[name] for name in combo))
            elements.append((expr, mu))
    return FuzzySet(base.universe, tuple(elements))


def verify_power_cardinality(
    base: FuzzySet, tol: float = 1e-9, cap: int = POWER_SET_CAP
) -> VerificationReport:
    """Check card(power set) against 2^card(base)."""
    computed = scalar_cardinality(fuzzy_power_set(base, cap=cap))
    expected = 2.0 ** scalar_cardinality(base)
    return VerificationReport.check(
        "power-set cardinality law", computed, expected, tol
    )


def verify_classical_degeneracy(
    base: FuzzySet, probe_exprs: Iterable[SetExpr]
) -> VerificationReport:
    """Check that a 0/1-valued base propagates to 0/1 values exactly.

    A probe's expected value is 1 when it contains no membership-0 atom
    (the empty set included), else 0. The report's computed field is the
    largest deviation from that indicator over all probes, and the
    tolerance is zero: pass means bit-exact classical behavior.
    """
    for expr, mu in base.elements:
        if mu != 0.0 and mu != 1.0:
            raise DomainError(
                f"base is not classical: mu({print_expr(expr)}) = {mu!r}"
            )
    zero_atoms = {
        expr.atom
        for expr, mu in base.elements
        if isinstance(expr, Braced) and expr.level == 0 and mu == 0.0
    }
    table = base.membership_table()
    worst = 0.0
    for probe in probe_exprs:
        e = normalize(probe)
        if not in_superstructure(e, base.universe):
            raise UniverseError(
                f"{print_expr(e)} uses atoms outside the universe"
            )
        value = _propagate(table, e)
        expected = 0.0 if any(a in zero_atoms for a in atoms_of(e)) else 1.0
        worst = max(worst, abs(value - expected))
    return VerificationReport.check("classical degeneracy", worst, 0.0, 0.0)


# ------------------------------------------------------------------- JSON


def _num17(x: float) -> str:
    return format(x, ".17g")


def fuzzyset_to_json(fs: FuzzySet) -> str:
    """Serialize with 17 significant digits so values survive round trips."""
    atoms = ",".join(json.dumps(name) for name in fs.universe.atoms)
    rows = ",".join(
        '{"expr":%s,"mu":%s}' % (json.dumps(print_expr(expr)), _num17(mu))
        for expr, mu in fs.elements
    )
    return '{"atoms":[%s],"elements":[%s]}' % (atoms, rows)


def fuzzyset_from_json(text: str) -> FuzzySet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as ex:
        offset = len(text[: ex.pos].encode("utf-8")) if ex.pos is not None else 0
        raise ParseError(f"invalid JSON: {ex.msg}", offset) from None
    if not isinstance(doc, dict):
        raise ParseError("fuzzy set JSON must be an object", 0)
    atoms = doc.get("atoms")
    rows = doc.get("elements")
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise ParseError('"atoms" must be a list of names', 0)
    if not isinstance(rows, list):
        raise ParseError('"elements" must be a list', 0)
    pairs: list[tuple[SetExpr, float]] = []
    for row in rows:
        if not isinstance(row, dict) or "expr" not in row or "mu" not in row:
            raise ParseError('each element needs "expr" and "mu"', 0)
        if not isinstance(row["expr"], str) or not isinstance(
            row["mu"], (int, float)
        ):
            raise ParseError('"expr" must be text and "mu" a number', 0)
        pairs.append((parse_expr(row["expr"]), float(row["mu"])))
    return FuzzySet.build(AtomUniverse(tuple(atoms)), pairs)
