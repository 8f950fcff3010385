"""Generic Harder-Narasimhan filtration engine.

The engine is category-agnostic: a client supplies an adapter with
degree, rank, a finite deterministic iterator over strict subobjects
(closed under the intersections the engine needs and containing 0 and
the object itself), quotients, and pull-backs.  Slopes are exact
rationals deg/rank.  The filtration is computed by greedy extraction of
the maximal destabilizing subobject: among all subobjects, maximal
slope, then maximal rank.  That maximizer is the unique semistable and
costable subobject, costability being exactly "every strictly larger
subobject has strictly smaller slope"; uniqueness and the axioms are
re-checkable at runtime through check_axioms.

Categories with infinite subobject families must supply their own
finite reduction; the engine never samples on its own.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field as dc_field
from fractions import Fraction


class HNAdapter(ABC):
    """Capabilities a client category must provide.

    Required laws (validated by check_axioms on samples):
      - rank(E) == 0 exactly for the zero object;
      - deg and rank are additive over F <= E with quotient E/F;
      - strict_subobjects(E) is finite, deterministic, contains the zero
        subobject and E itself;
      - pull_back inverts push_forward on subobjects containing F.
    """

    @abstractmethod
    def deg(self, obj) -> int: ...

    @abstractmethod
    def rank(self, obj) -> int: ...

    @abstractmethod
    def is_zero(self, obj) -> bool: ...

    @abstractmethod
    def strict_subobjects(self, obj): ...

    @abstractmethod
    def contains(self, a, b) -> bool:
        """Whether b <= a, for subobjects of a common ambient object."""

    @abstractmethod
    def equals(self, a, b) -> bool: ...

    @abstractmethod
    def quotient(self, obj, sub): ...

    @abstractmethod
    def pull_back(self, obj, sub, quotient_sub):
        """Preimage in obj of a subobject of quotient(obj, sub)."""

    @abstractmethod
    def push_forward(self, obj, sub, larger):
        """Image in quotient(obj, sub) of a subobject larger >= sub."""


def slope(adapter: HNAdapter, obj) -> Fraction:
    r = adapter.rank(obj)
    if r == 0:
        raise ValueError("slope of a zero object is undefined")
    return Fraction(adapter.deg(obj), r)


def is_semistable(adapter: HNAdapter, obj) -> bool:
    if adapter.rank(obj) == 0:
        return False
    mu = slope(adapter, obj)
    return all(
        slope(adapter, sub) <= mu
        for sub in adapter.strict_subobjects(obj)
        if adapter.rank(sub) > 0
    )


def is_stable(adapter: HNAdapter, obj) -> bool:
    if adapter.rank(obj) == 0:
        return False
    mu = slope(adapter, obj)
    for sub in adapter.strict_subobjects(obj):
        if adapter.rank(sub) == 0 or adapter.equals(sub, obj):
            continue
        if slope(adapter, sub) >= mu:
            return False
    return True


def max_destabilizing(adapter: HNAdapter, obj):
    """The subobject of maximal slope and, among those, maximal rank."""
    if adapter.rank(obj) == 0:
        raise ValueError("zero object has no destabilizing subobject")
    best = None
    best_key = None
    for sub in adapter.strict_subobjects(obj):
        r = adapter.rank(sub)
        if r == 0:
            continue
        key = (Fraction(adapter.deg(sub), r), r)
        if best_key is None or key > best_key:
            best, best_key = sub, key
    return best


@dataclass(frozen=True)
class HNStep:
    """One filtration step: the subobject F_i of the total object and
    the slope of the graded quotient F_i / F_(i-1)."""

    subobject: object
    graded_slope: Fraction
    graded_degree: int
    graded_rank: int


@dataclass(frozen=True)
class HNFiltration:
    total: object
    steps: tuple[HNStep, ...]

    @property
    def graded_slopes(self) -> tuple[Fraction, ...]:
        return tuple(s.graded_slope for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)


def hn_filtration(adapter: HNAdapter, obj) -> HNFiltration:
    """The unique increasing filtration with semistable graded
    quotients of strictly decreasing slopes."""
    if adapter.rank(obj) == 0:
        raise ValueError("zero object has no filtration")
    steps = []
    first = max_destabilizing(adapter, obj)
    mu1 = slope(adapter, first)
    steps.append(HNStep(first, mu1, adapter.deg(first), adapter.rank(first)))
    if not adapter.equals(first, obj):
        quot = adapter.quotient(obj, first)
        for qstep in hn_filtration(adapter, quot).steps:
            lifted = adapter.pull_back(obj, first, qstep.subobject)
            steps.append(
                HNStep(lifted, qstep.graded_slope, qstep.graded_degree, qstep.graded_rank)
            )
    slopes_ = [s.graded_slope for s in steps]
    assert all(a > b for a, b in zip(slopes_, slopes_[1:])), "graded slopes must strictly decrease"
    return HNFiltration(obj, tuple(steps))


def fil_alpha(adapter: HNAdapter, obj, alpha, filtration: HNFiltration | None = None):
    """Largest filtration step whose (subobject) slope is >= alpha; the
    zero subobject when even the first step falls below."""
    if filtration is None:
        filtration = hn_filtration(adapter, obj)
    alpha = Fraction(alpha) if alpha != float("inf") else alpha
    chosen = None
    for step in filtration.steps:
        if slope(adapter, step.subobject) >= alpha:
            chosen = step.subobject
        else:
            break
    if chosen is None:
        for sub in adapter.strict_subobjects(obj):
            if adapter.rank(sub) == 0:
                return sub
        raise ValueError("adapter does not expose a zero subobject")
    return chosen


def is_costable(adapter: HNAdapter, obj, sub) -> bool:
    """No subobject strictly containing sub has slope >= its own.

    (Equivalently: every strictly larger subobject has strictly smaller
    slope.  This is the property the maximal destabilizing subobject
    satisfies and the slope-gap lemma needs.)
    """
    mu = slope(adapter, sub)
    for other in adapter.strict_subobjects(obj):
        if adapter.rank(other) == 0:
            continue
        if adapter.contains(other, sub) and not adapter.equals(other, sub):
            if slope(adapter, other) >= mu:
                return False
    return True


@dataclass
class AxiomCheck:
    name: str
    passed: bool = True
    failures: list[str] = dc_field(default_factory=list)

    def fail(self, message: str):
        self.passed = False
        self.failures.append(message)


@dataclass
class AxiomReport:
    checks: dict[str, AxiomCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def summary(self) -> str:
        return "\n".join(
            f"{'PASS' if c.passed else 'FAIL'} {name}"
            + ("" if c.passed else f" ({len(c.failures)} failures, e.g. {c.failures[0]})")
            for name, c in self.checks.items()
        )


def check_axioms(adapter: HNAdapter, objects) -> AxiomReport:
    """Validate the adapter contract on a finite sample of objects.

    Checks, per object: rank-zero detection agrees with is_zero;
    degree/rank additivity over every (subobject, quotient) pair; the
    slope inequality mu(F1) < mu(F2) for every semistable F1 and
    costable F2 with F1 not contained in F2; and, on the computed
    filtration, that graded steps are costable in the successive
    quotients exactly when the graded slopes strictly decrease.
    """
    zero_rank = AxiomCheck("rank-zero-detection")
    additivity = AxiomCheck("degree-rank-additivity")
    slope_gap = AxiomCheck("semistable-costable-slope-gap")
    graded = AxiomCheck("graded-steps-costable")
    for idx, obj in enumerate(objects):
        subs = list(adapter.strict_subobjects(obj))
        for sub in subs:
            if (adapter.rank(sub) == 0) != adapter.is_zero(sub):
                zero_rank.fail(f"object {idx}: rank/is_zero disagree on a subobject")
            quot = adapter.quotient(obj, sub)
            if adapter.deg(sub) + adapter.deg(quot) != adapter.deg(obj):
                additivity.fail(
                    f"object {idx}: deg {adapter.deg(sub)} + {adapter.deg(quot)} != {adapter.deg(obj)}"
                )
            if adapter.rank(sub) + adapter.rank(quot) != adapter.rank(obj):
                additivity.fail(
                    f"object {idx}: rank {adapter.rank(sub)} + {adapter.rank(quot)} != {adapter.rank(obj)}"
                )
        semis = [s for s in subs if adapter.rank(s) > 0 and is_semistable(adapter, s)]
        cost = [s for s in subs if adapter.rank(s) > 0 and is_costable(adapter, obj, s)]
        for f1 in semis:
            for f2 in cost:
                if adapter.contains(f2, f1):
                    continue
                if not slope(adapter, f1) < slope(adapter, f2):
                    slope_gap.fail(
                        f"object {idx}: mu(F1)={slope(adapter, f1)} not < mu(F2)={slope(adapter, f2)}"
                    )
        if adapter.rank(obj) > 0:
            filt = hn_filtration(adapter, obj)
            slopes_ = filt.graded_slopes
            if not all(a > b for a, b in zip(slopes_, slopes_[1:])):
                graded.fail(f"object {idx}: graded slopes not strictly decreasing")
            prev = None
            for step in filt.steps:
                if prev is None:
                    piece, ambient = step.subobject, obj
                else:
                    ambient = adapter.quotient(obj, prev)
                    piece = adapter.push_forward(obj, prev, step.subobject)
                if not is_costable(adapter, ambient, piece):
                    graded.fail(f"object {idx}: a graded step is not costable in its quotient")
                prev = step.subobject
    checks = {c.name: c for c in (zero_rank, additivity, slope_gap, graded)}
    return AxiomReport(checks)
