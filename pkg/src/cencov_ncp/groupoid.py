"""Finite groupoids with outcome measure, Haar fiber weights, and modular data.

A finite groupoid is a set of transitions with a partial associative
composition, a unit per outcome, and inverses.  The outcome space carries a
strictly positive probability vector P, each target fiber carries a positive
weight function (counting measure by default), and the total measure
disintegrates as ``nu(alpha) = w(alpha) * P(t(alpha))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .errors import (
    AssociativityViolation,
    BadMeasure,
    BadWeight,
    CoherenceViolation,
    HomomorphismViolation,
    InverseViolation,
    NotAGroup,
    SchemaError,
    UnitViolation,
    UnknownOutcome,
)

MEASURE_TOL = 1e-9


@dataclass(frozen=True)
class GroupoidSpec:
    """Raw groupoid tables prior to validation."""

    outcomes: Sequence[str]
    elements: Sequence[str]
    source: Mapping[str, str]
    target: Mapping[str, str]
    inverse: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]
    units: Mapping[str, str]
    P: Mapping[str, float]
    fiber_weight: Optional[Mapping[str, float]] = None


@dataclass(frozen=True)
class FiniteGroupoid:
    """A validated finite groupoid; immutable after construction."""

    elements: tuple[str, ...]
    outcomes: tuple[str, ...]
    source: Mapping[str, str]
    target: Mapping[str, str]
    inverse_map: Mapping[str, str]
    compose_table: Mapping[tuple[str, str], str]
    unit_of: Mapping[str, str]
    P: Mapping[str, float]
    fiber_weight: Mapping[str, float]

    # -- basic accessors ---------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def s(self, alpha: str) -> str:
        return self.source[alpha]

    def t(self, alpha: str) -> str:
        return self.target[alpha]

    def inv(self, alpha: str) -> str:
        return self.inverse_map[alpha]

    def compose(self, beta: str, alpha: str) -> Optional[str]:
        """``beta o alpha``, or None when not composable."""
        return self.compose_table.get((beta, alpha))

    def is_unit(self, alpha: str) -> bool:
        return self.unit_of[self.source[alpha]] == alpha

    def nu(self, alpha: str) -> float:
        """Total measure nu(alpha) = w(alpha) * P(t(alpha))."""
        return self.fiber_weight[alpha] * self.P[self.target[alpha]]

    def delta(self, alpha: str) -> float:
        """Modular function delta(alpha) = nu(inv(alpha)) / nu(alpha)."""
        return self.nu(self.inverse_map[alpha]) / self.nu(alpha)

    @cached_property
    def composable_pairs(self) -> tuple[tuple[str, str, str], ...]:
        """All triples ``(beta, alpha, beta o alpha)`` in canonical order."""
        return tuple(
            (b, a, g) for (b, a), g in sorted(
                self.compose_table.items(),
                key=lambda kv: (self.index[kv[0][0]], self.index[kv[0][1]]),
            )
        )

    def target_fiber(self, x: str) -> tuple[str, ...]:
        """Elements with target x, in canonical element order."""
        if x not in self.P:
            raise UnknownOutcome(f"unknown outcome {x!r}")
        return tuple(a for a in self.elements if self.target[a] == x)

    def source_fiber(self, x: str) -> tuple[str, ...]:
        if x not in self.P:
            raise UnknownOutcome(f"unknown outcome {x!r}")
        return tuple(a for a in self.elements if self.source[a] == x)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _check_measure(outcomes: Sequence[str], P: Mapping[str, float]) -> None:
    for x in outcomes:
        if x not in P:
            raise BadMeasure(f"P missing outcome {x!r}")
        if not (P[x] > 0.0) or not math.isfinite(P[x]):
            raise BadMeasure(f"P({x!r}) = {P[x]} is not strictly positive")
    total = sum(P[x] for x in outcomes)
    if abs(total - 1.0) > MEASURE_TOL:
        raise BadMeasure(f"P sums to {total}, expected 1")


def validate(spec: GroupoidSpec) -> FiniteGroupoid:
    """Check every groupoid axiom on the raw tables and return the groupoid.

    Raises the violation class matching the first defect found; the check
    order is measure, table well-formedness, units, coherence, inverses,
    associativity, fiber weights.
    """
    outcomes = tuple(spec.outcomes)
    elements = tuple(spec.elements)
    _check_measure(outcomes, spec.P)

    oset, eset = set(outcomes), set(elements)
    if len(oset) != len(outcomes) or len(eset) != len(elements):
        raise SchemaError("duplicate outcome or element ids")
    for a in elements:
        for table, name, domain in (
            (spec.source, "source", oset),
            (spec.target, "target", oset),
            (spec.inverse, "inverse", eset),
        ):
            if a not in table:
                raise SchemaError(f"{name} table missing element {a!r}")
            if table[a] not in domain:
                raise SchemaError(f"{name}[{a!r}] references undeclared id")
    for (b, a), g in spec.compose.items():
        if b not in eset or a not in eset or g not in eset:
            raise SchemaError(f"compose entry ({b!r},{a!r}) references undeclared id")
    for x in outcomes:
        if x not in spec.units or spec.units[x] not in eset:
            raise SchemaError(f"units table missing outcome {x!r}")

    s, t, inv = spec.source, spec.target, spec.inverse
    comp = dict(spec.compose)
    units = spec.units

    # units act as identities on both sides
    for x in outcomes:
        u = units[x]
        if s[u] != x or t[u] != x:
            raise UnitViolation(f"unit {u!r} of {x!r} is not an endo-transition")
    for a in elements:
        if comp.get((a, units[s[a]])) != a:
            raise UnitViolation(f"compose({a!r}, unit of source) != {a!r}")
        if comp.get((units[t[a]], a)) != a:
            raise UnitViolation(f"compose(unit of target, {a!r}) != {a!r}")

    # definedness and source/target coherence
    for b in elements:
        for a in elements:
            defined = (b, a) in comp
            if defined != (t[a] == s[b]):
                raise CoherenceViolation(
                    f"compose({b!r},{a!r}) definedness disagrees with t/s match"
                )
            if defined:
                g = comp[(b, a)]
                if s[g] != s[a] or t[g] != t[b]:
                    raise CoherenceViolation(
                        f"compose({b!r},{a!r}) = {g!r} breaks source/target coherence"
                    )

    # inverses
    for a in elements:
        ia = inv[a]
        if comp.get((ia, a)) != units[s[a]] or comp.get((a, ia)) != units[t[a]]:
            raise InverseViolation(f"inverse law fails for {a!r}")

    # associativity on all doubly-composable triples
    for (c, b), cb in comp.items():
        for a in elements:
            if t[a] != s[b]:
                continue
            ba = comp[(b, a)]
            left = comp.get((cb, a))
            right = comp.get((c, ba))
            if left is None or right is None or left != right:
                raise AssociativityViolation(
                    f"(({c!r} o {b!r}) o {a!r}) != ({c!r} o ({b!r} o {a!r}))"
                )

    weights = dict(spec.fiber_weight) if spec.fiber_weight else {a: 1.0 for a in elements}
    for a in elements:
        w = weights.get(a)
        if w is None or not (w > 0.0) or not math.isfinite(w):
            raise BadWeight(f"fiber weight of {a!r} must be a positive number")
    # left invariance of the Haar system: w(alpha o beta) = w(beta)
    for (b, a), g in comp.items():
        if abs(weights[g] - weights[a]) > MEASURE_TOL * (1.0 + abs(weights[a])):
            raise BadWeight(
                f"fiber weights are not left-invariant at compose({b!r},{a!r})"
            )

    return FiniteGroupoid(
        elements=elements,
        outcomes=outcomes,
        source=dict(s),
        target=dict(t),
        inverse_map=dict(inv),
        compose_table=comp,
        unit_of=dict(units),
        P=dict(spec.P),
        fiber_weight=weights,
    )


def modular_function(G: FiniteGroupoid) -> dict[str, float]:
    """The modular map delta, verified to be a groupoid homomorphism."""
    delta = {a: G.delta(a) for a in G.elements}
    for x in G.outcomes:
        u = G.unit_of[x]
        if abs(delta[u] - 1.0) > MEASURE_TOL:
            raise HomomorphismViolation(f"delta(unit of {x!r}) != 1")
    for b, a, g in G.composable_pairs:
        if abs(delta[g] - delta[b] * delta[a]) > MEASURE_TOL * (1.0 + abs(delta[g])):
            raise HomomorphismViolation(
                f"delta is not multiplicative on compose({b!r},{a!r})"
            )
    return delta


def target_fiber(G: FiniteGroupoid, x: str) -> tuple[str, ...]:
    return G.target_fiber(x)


# ---------------------------------------------------------------------------
# standard constructions
# ---------------------------------------------------------------------------

def _uniform(outcomes: Sequence[str]) -> dict[str, float]:
    n = len(outcomes)
    return {x: 1.0 / n for x in outcomes}


def _spec_to_groupoid(spec: GroupoidSpec) -> FiniteGroupoid:
    return validate(spec)


def pair_groupoid(n: int, P: Optional[Mapping[str, float]] = None) -> FiniteGroupoid:
    """The pair groupoid on n outcomes: element ``(y,x)`` is the transition x -> y."""
    if n < 1:
        raise BadMeasure("need at least one outcome")
    outcomes = [str(i + 1) for i in range(n)]
    elements = [f"({y},{x})" for y in outcomes for x in outcomes]
    source = {f"({y},{x})": x for y in outcomes for x in outcomes}
    target = {f"({y},{x})": y for y in outcomes for x in outcomes}
    inverse = {f"({y},{x})": f"({x},{y})" for y in outcomes for x in outcomes}
    compose = {}
    for z in outcomes:
        for y in outcomes:
            for x in outcomes:
                compose[(f"({z},{y})", f"({y},{x})")] = f"({z},{x})"
    units = {x: f"({x},{x})" for x in outcomes}
    return _spec_to_groupoid(GroupoidSpec(
        outcomes=outcomes, elements=elements, source=source, target=target,
        inverse=inverse, compose=compose, units=units,
        P=dict(P) if P else _uniform(outcomes),
    ))


def trivial_groupoid(n: int, P: Optional[Mapping[str, float]] = None) -> FiniteGroupoid:
    """The trivial groupoid on n outcomes: units only (classical probability)."""
    if n < 1:
        raise BadMeasure("need at least one outcome")
    outcomes = [str(i + 1) for i in range(n)]
    elements = [f"1_{x}" for x in outcomes]
    return _spec_to_groupoid(GroupoidSpec(
        outcomes=outcomes, elements=elements,
        source={f"1_{x}": x for x in outcomes},
        target={f"1_{x}": x for x in outcomes},
        inverse={f"1_{x}": f"1_{x}" for x in outcomes},
        compose={(f"1_{x}", f"1_{x}"): f"1_{x}" for x in outcomes},
        units={x: f"1_{x}" for x in outcomes},
        P=dict(P) if P else _uniform(outcomes),
    ))


def group_groupoid(table: Mapping[tuple[str, str], str],
                   labels: Sequence[str]) -> FiniteGroupoid:
    """A finite group viewed as a one-outcome groupoid.

    ``table[(g, h)]`` is the product g*h.  Raises NotAGroup when the table
    is not a group multiplication table.
    """
    labels = list(labels)
    lset = set(labels)
    for g in labels:
        for h in labels:
            if table.get((g, h)) not in lset:
                raise NotAGroup(f"product of {g!r} and {h!r} missing or out of range")
    identity = None
    for e in labels:
        if all(table[(e, g)] == g and table[(g, e)] == g for g in labels):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no identity element")
    inverse = {}
    for g in labels:
        invs = [h for h in labels if table[(g, h)] == identity and table[(h, g)] == identity]
        if not invs:
            raise NotAGroup(f"{g!r} has no inverse")
        inverse[g] = invs[0]
    for a in labels:
        for b in labels:
            for c in labels:
                if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                    raise NotAGroup("multiplication table is not associative")
    o = "*"
    return _spec_to_groupoid(GroupoidSpec(
        outcomes=[o], elements=labels,
        source={g: o for g in labels}, target={g: o for g in labels},
        inverse=inverse, compose=dict(table), units={o: identity},
        P={o: 1.0},
    ))


def cyclic_group_groupoid(n: int) -> FiniteGroupoid:
    """Z_n as a one-outcome groupoid with elements ``g0 .. g{n-1}``."""
    labels = [f"g{i}" for i in range(n)]
    table = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return group_groupoid(table, labels)


def disjoint_union(G1: FiniteGroupoid, G2: FiniteGroupoid, w: float) -> FiniteGroupoid:
    """Disjoint union, with P re-normalized by the mixing weight w in (0,1)."""
    if not (0.0 < w < 1.0):
        raise BadWeight(f"mixing weight {w} not in (0,1)")

    def l(x: str) -> str:
        return f"1:{x}"

    def r(x: str) -> str:
        return f"2:{x}"

    outcomes = [l(x) for x in G1.outcomes] + [r(x) for x in G2.outcomes]
    elements = [l(a) for a in G1.elements] + [r(a) for a in G2.elements]
    source = {l(a): l(G1.source[a]) for a in G1.elements}
    source.update({r(a): r(G2.source[a]) for a in G2.elements})
    target = {l(a): l(G1.target[a]) for a in G1.elements}
    target.update({r(a): r(G2.target[a]) for a in G2.elements})
    inverse = {l(a): l(G1.inverse_map[a]) for a in G1.elements}
    inverse.update({r(a): r(G2.inverse_map[a]) for a in G2.elements})
    compose = {(l(b), l(a)): l(g) for (b, a), g in G1.compose_table.items()}
    compose.update({(r(b), r(a)): r(g) for (b, a), g in G2.compose_table.items()})
    units = {l(x): l(G1.unit_of[x]) for x in G1.outcomes}
    units.update({r(x): r(G2.unit_of[x]) for x in G2.outcomes})
    P = {l(x): w * G1.P[x] for x in G1.outcomes}
    P.update({r(x): (1.0 - w) * G2.P[x] for x in G2.outcomes})
    weights = {l(a): G1.fiber_weight[a] for a in G1.elements}
    weights.update({r(a): G2.fiber_weight[a] for a in G2.elements})
    return _spec_to_groupoid(GroupoidSpec(
        outcomes=outcomes, elements=elements, source=source, target=target,
        inverse=inverse, compose=compose, units=units, P=P, fiber_weight=weights,
    ))


def product(G1: FiniteGroupoid, G2: FiniteGroupoid) -> FiniteGroupoid:
    """Componentwise product groupoid with P = P1 (x) P2."""

    def po(x: str, y: str) -> str:
        return f"{x}*{y}"

    outcomes = [po(x, y) for x in G1.outcomes for y in G2.outcomes]
    elements = [po(a, b) for a in G1.elements for b in G2.elements]
    source = {po(a, b): po(G1.source[a], G2.source[b])
              for a in G1.elements for b in G2.elements}
    target = {po(a, b): po(G1.target[a], G2.target[b])
              for a in G1.elements for b in G2.elements}
    inverse = {po(a, b): po(G1.inverse_map[a], G2.inverse_map[b])
               for a in G1.elements for b in G2.elements}
    compose = {}
    for (b1, a1), g1 in G1.compose_table.items():
        for (b2, a2), g2 in G2.compose_table.items():
            compose[(po(b1, b2), po(a1, a2))] = po(g1, g2)
    units = {po(x, y): po(G1.unit_of[x], G2.unit_of[y])
             for x in G1.outcomes for y in G2.outcomes}
    P = {po(x, y): G1.P[x] * G2.P[y] for x in G1.outcomes for y in G2.outcomes}
    weights = {po(a, b): G1.fiber_weight[a] * G2.fiber_weight[b]
               for a in G1.elements for b in G2.elements}
    return _spec_to_groupoid(GroupoidSpec(
        outcomes=outcomes, elements=elements, source=source, target=target,
        inverse=inverse, compose=compose, units=units, P=P, fiber_weight=weights,
    ))


# ---------------------------------------------------------------------------
# pair-groupoid structure detection
# ---------------------------------------------------------------------------

def pair_structure(G: FiniteGroupoid) -> Optional[dict[tuple[str, str], str]]:
    """Map ``(target, source) -> element`` when G is a pair groupoid, else None."""
    n = len(G.outcomes)
    if len(G.elements) != n * n:
        return None
    table: dict[tuple[str, str], str] = {}
    for a in G.elements:
        key = (G.target[a], G.source[a])
        if key in table:
            return None
        table[key] = a
    return table


def has_uniform_P(G: FiniteGroupoid, tol: float = MEASURE_TOL) -> bool:
    n = len(G.outcomes)
    return all(abs(G.P[x] - 1.0 / n) <= tol for x in G.outcomes)
