"""Bound ladder ``c >= E_l >= E_k >= F_k`` and the equality diagnosis.

``E_k = sum_{j<=k} e_(j-1)/e_j`` is rational.  ``F_k = k e_k^(-1/k)`` is not,
so it is carried as the pair ``(k, e_k)`` and every comparison ``x ? F_k`` is
decided through the rational identity ``x^k e_k ? k^k`` (valid for x > 0).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .invariants import compute_invariants, minimum_hitting_sets
from .newton import Kind, build_polyhedron, contains

ASYMPTOTICS_NOTE = "asymptotics not machine-checked"


class TheoremViolation(AssertionError):
    """An exact computation contradicted one of the inequalities or equality characterisations."""


def _sign(x):
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class RootBound:
    """``F_k = k * e_k^(-1/k)``, kept exact."""

    k: int
    e_k: Fraction

    def compare(self, x):
        """Sign of ``x - F_k`` for a positive rational x."""
        return _sign(Fraction(x) ** self.k * self.e_k - self.k ** self.k)

    def __float__(self):
        return self.k * float(self.e_k) ** (-1.0 / self.k)


@dataclass(frozen=True)
class EqualityStructure:
    J: frozenset
    s: Fraction

    def sorted_J(self):
        return sorted(self.J)


@dataclass
class ThresholdReport:
    invariants: object
    E: tuple
    F: tuple
    verdicts: dict
    equality: EqualityStructure | None = None
    notes: list = field(default_factory=list)


def bound_ladder(inv):
    if inv.lelong <= 0:
        raise ValueError("bound ladder needs a positive Lelong number")
    c = inv.lct
    E, F = [], []
    total = Fraction(0)
    for k in range(1, inv.l + 1):
        total += inv.e(k - 1) / inv.e(k)
        E.append(total)
        F.append(RootBound(k, inv.e(k)))

    verdicts = {}
    for k in range(1, inv.l + 1):
        Ek, Fk = E[k - 1], F[k - 1]
        verdicts[f"c>=E{k}"] = c >= Ek
        verdicts[f"c>=F{k}"] = Fk.compare(c) >= 0
        verdicts[f"E{k}>=F{k}"] = Fk.compare(Ek) >= 0
        verdicts[f"E{inv.l}>=E{k}"] = E[-1] >= Ek
        verdicts[f"e{k}>=e1^{k}"] = inv.e(k) >= inv.lelong ** k
    verdicts["skoda"] = c * inv.lelong >= 1
    broken = sorted(name for name, ok in verdicts.items() if not ok)
    if broken:
        raise TheoremViolation(f"ladder verdicts failed: {', '.join(broken)} for {inv}")
    return ThresholdReport(inv, tuple(E), tuple(F), verdicts)


def equality_holds(inv, k):
    """Exact test of ``c = F_k``."""
    return RootBound(k, inv.e(k)).compare(inv.lct) == 0


def equality_test(data, inv, report=None):
    """Witness ``(J, s)`` when ``c = F_l``, otherwise None.

    A positive verdict must come with a unique minimum hitting set J and
    ``Gamma = s conv(e_j : j in J) + orthant``, ``s = e_1``; anything else is a
    TheoremViolation.
    """
    report = report or bound_ladder(inv)
    l = inv.l
    # c >= E_l > E_k >= F_k rules out equality below l
    for k in range(1, l):
        if not (report.E[l - 1] > report.E[k - 1] and report.F[k - 1].compare(report.E[k - 1]) >= 0):
            raise TheoremViolation(f"strict step E{l} > E{k} >= F{k} failed")
        if equality_holds(inv, k):
            raise TheoremViolation(f"c = F{k} with k = {k} < l = {l}")
    if not equality_holds(inv, l):
        return None

    s = inv.lelong
    hits = minimum_hitting_sets(data)
    if len(hits) != 1:
        raise TheoremViolation(f"c = F{l} but the minimum hitting set is not unique: {hits}")
    J = hits[0]
    if any(inv.e(k) != s ** k for k in range(1, l + 1)):
        raise TheoremViolation(f"c = F{l} but e_k != e_1^k: {inv.mixed}")
    if any(sum(g[j] for j in J) < s for g in data.generators):
        raise TheoremViolation(f"c = F{l} but some generator has sum over J below {s}")
    poly = build_polyhedron(data)
    expected = tuple(sorted(tuple(s if k == j else Fraction(0) for k in range(data.n)) for j in J))
    if poly.apexes != expected:
        raise TheoremViolation(f"c = F{l} but Gamma has apexes {poly.apexes}, expected {expected}")
    if data.kind is Kind.IDEAL and s.denominator != 1:
        raise TheoremViolation(f"ideal with c = F{l} but non-integral power s = {s}")
    return EqualityStructure(J, s)


def closure_power_test(data):
    """Decide ``Gamma = s Delta_J + orthant`` directly from the apexes, without lct."""
    if data.kind is not Kind.IDEAL:
        raise ValueError("closure_power_test applies to monomial ideals")
    poly = build_polyhedron(data)
    J = frozenset(j for a in poly.apexes for j, c in enumerate(a) if c > 0)
    s = sum(poly.apexes[0])
    if any(sum(a) != s for a in poly.apexes):
        return None
    corners = [tuple(s if k == j else 0 for k in range(data.n)) for j in sorted(J)]
    if not all(contains(poly, x) for x in corners):
        return None
    return EqualityStructure(J, s)


def analyze(data, n_max=None):
    inv = compute_invariants(data, n_max=n_max)
    report = bound_ladder(inv)
    report.equality = equality_test(data, inv, report)
    if report.equality is not None:
        report.notes.append(ASYMPTOTICS_NOTE)
    return report


def cross_validate_equality(data, n_max=None):
    """Equality verdict (via lct and e_l) and closure structure (via apexes) must agree."""
    lhs = analyze(data, n_max=n_max).equality
    rhs = closure_power_test(data)
    if lhs is None or rhs is None:
        return lhs is None and rhs is None
    return lhs == rhs
