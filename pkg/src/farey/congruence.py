"""
Congruence subgroups of PSL(2,Z) and their coset actions.
"""

from __future__ import annotations
import logging
import re
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, List, Tuple

from sympy import primefactors

from farey.errors import ParseError
from farey.graphs import RibbonGraph, from_permutation_pair

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]


@dataclass
class FamilyDefinition:
    """A family of congruence subgroups indexed by the level N."""
    name: str
    symbol: str
    coset_model: str
    description: str


FAMILIES: Dict[str, FamilyDefinition] = {
    "gamma0": FamilyDefinition(
        name="Gamma0",
        symbol="Γ₀(N)",
        coset_model="projective line over Z/N",
        description="Lower-left entry divisible by N"
    ),
    "gamma1": FamilyDefinition(
        name="Gamma1",
        symbol="Γ₁(N)",
        coset_model="vectors ±(u,v) of exact order N",
        description="Bottom row congruent to ±(0,1) mod N"
    ),
    "gamma": FamilyDefinition(
        name="Gamma",
        symbol="Γ(N)",
        coset_model="PSL(2,Z/N)",
        description="Principal congruence subgroup, kernel of reduction mod N"
    ),
}

_ALIASES = {"gammafull": "gamma", "g0": "gamma0", "g1": "gamma1", "g": "gamma"}


def get_family(name: str) -> FamilyDefinition:
    """
    Get a family definition by name.

    Args:
        name: Family name (case-insensitive, "_" and "-" ignored)

    Raises:
        ParseError: If the family is unknown
    """
    key = name.lower().replace("-", "").replace("_", "")
    key = _ALIASES.get(key, key)
    if key in FAMILIES:
        return FAMILIES[key]
    raise ParseError(f"Unknown family: {name}. Available: {', '.join(list_families())}", token=name)


def list_families() -> List[str]:
    return [f.name for f in FAMILIES.values()]


@dataclass(frozen=True)
class CongruenceSpec:
    """A congruence subgroup: family name and level N >= 1."""
    family: str
    level: int

    def __post_init__(self):
        object.__setattr__(self, "family", get_family(self.family).name)
        if self.level < 1:
            raise ValueError(f"level must be at least 1, got {self.level}")

    def __str__(self) -> str:
        return f"{self.family}({self.level})"


_SPEC_PATTERN = re.compile(r"^\s*([A-Za-z_-]+[01]?)\s*\(\s*(-?\d+)\s*\)\s*$")


def parse_congruence(text: str) -> CongruenceSpec:
    """
    Parse text such as "Gamma0(11)" or "gamma(2)".

    Raises:
        ParseError: On malformed text, unknown family or level below 1
    """
    match = _SPEC_PATTERN.match(text)
    if not match:
        raise ParseError(f"expected FAMILY(N), got {text!r}", token=text)
    family, level = match.group(1), int(match.group(2))
    if level < 1:
        raise ParseError(f"level must be at least 1, got {level}", token=match.group(2))
    return CongruenceSpec(family, level)


# Right action of the generators on row vectors and matrices
_S = (0, -1, 1, 0)
_L = (1, -1, 1, 0)


def _act_row(point: Point, m: Point, n: int) -> Point:
    c, d = point
    p, q, r, s = m
    return ((c * p + d * r) % n, (c * q + d * s) % n)


def _act_matrix(point: Point, m: Point, n: int) -> Point:
    a, b, c, d = point
    p, q, r, s = m
    return (
        (a * p + b * r) % n,
        (a * q + b * s) % n,
        (c * p + d * r) % n,
        (c * q + d * s) % n,
    )


def _negate(point: Point, n: int) -> Point:
    return tuple((-x) % n for x in point)


def _coset_model(spec: CongruenceSpec) -> Tuple[Point, Callable[[Point, Point], Point]]:
    n = spec.level
    if spec.family == "Gamma0":
        units = [u for u in range(n) if gcd(u, n) == 1]

        def canonical(pt: Point) -> Point:
            return min(((u * pt[0]) % n, (u * pt[1]) % n) for u in units)

        return (0, 1), lambda pt, m: canonical(_act_row(pt, m, n))

    if spec.family == "Gamma1":
        return (0, 1), lambda pt, m: min(_act_row(pt, m, n), _negate(_act_row(pt, m, n), n))

    def step(pt: Point, m: Point) -> Point:
        image = _act_matrix(pt, m, n)
        return min(image, _negate(image, n))

    return (1, 0, 0, 1), step


def coset_action(spec: CongruenceSpec) -> Tuple[List[int], List[int]]:
    """
    Permutation action of S and L on the cosets of a congruence subgroup.

    Cosets are enumerated breadth-first from the identity coset, which is
    point 0.

    Returns:
        (sigma_s, sigma_l) in 0-based array form
    """
    start, step = _coset_model(spec)
    if spec.family == "Gamma0":
        start = step(start, (1, 0, 0, 1))
    else:
        start = tuple(x % spec.level for x in start)
        start = min(start, _negate(start, spec.level))
    index = {start: 0}
    points = [start]
    sigma_s: Dict[int, int] = {}
    sigma_l: Dict[int, int] = {}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for m, table in ((_S, sigma_s), (_L, sigma_l)):
            image = step(points[i], m)
            if image not in index:
                index[image] = len(points)
                points.append(image)
                queue.append(index[image])
            table[i] = index[image]
    d = len(points)
    logger.debug("%s: %d cosets", spec, d)
    return [sigma_s[i] for i in range(d)], [sigma_l[i] for i in range(d)]


def congruence_graph(spec: CongruenceSpec) -> RibbonGraph:
    """Modular graph of a congruence subgroup; the base is the identity coset."""
    return from_permutation_pair(*coset_action(spec))


def index_formula(spec: CongruenceSpec) -> int:
    """Closed-form index in PSL(2,Z)."""
    n = spec.level
    primes = primefactors(n)
    if spec.family == "Gamma0":
        value = n
        for p in primes:
            value = value // p * (p + 1)
        return value
    if n <= 2:
        return {("Gamma1", 1): 1, ("Gamma1", 2): 3, ("Gamma", 1): 1, ("Gamma", 2): 6}[(spec.family, n)]
    value = n * n if spec.family == "Gamma1" else n ** 3
    for p in primes:
        value = value // (p * p) * (p * p - 1)
    return value // 2
