"""
Indefinite binary quadratic forms ax² + bxy + cy².

Classes are PSL(2,Z)-classes (narrow classes). Every comparison against √Δ is
done on squares of integers.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from math import gcd, isqrt
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import divisors
from sympy.core.intfunc import igcdex
from sympy.ntheory import sqrt_mod

from farey.errors import (
    BadDiscriminant,
    DiscriminantMismatch,
    LimitExceeded,
    NotPrimitive,
    ParseError,
    SquareDiscriminant,
    ZeroTarget,
)
from farey.words import Mat

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class QuadForm:
    """The form ax² + bxy + cy²."""
    a: int
    b: int
    c: int

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __neg__(self) -> "QuadForm":
        return QuadForm(-self.a, -self.b, -self.c)

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def opposite(self) -> "QuadForm":
        """(a, -b, c), the inverse class under composition."""
        return QuadForm(self.a, -self.b, self.c)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class PellSolution:
    """Least positive solution of t² - Δu² = 4."""
    discriminant: int
    t: int
    u: int

    def __str__(self) -> str:
        return f"t={self.t} u={self.u}"


@dataclass(frozen=True)
class FormClass:
    """The ρ-cycle of reduced forms of one class, starting at its least member."""
    forms: Tuple[QuadForm, ...]

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self) -> Iterator[QuadForm]:
        return iter(self.forms)

    def __contains__(self, f: QuadForm) -> bool:
        return f in self.forms

    @property
    def representative(self) -> QuadForm:
        return self.forms[0]

    @property
    def discriminant(self) -> int:
        return self.forms[0].discriminant


@dataclass(frozen=True)
class Representation:
    """Answer to f(x,y) = N: a witness, or the candidate forms that ruled it out."""
    target: int
    witness: Optional[Tuple[int, int]]
    checked: Tuple[QuadForm, ...] = ()

    @property
    def found(self) -> bool:
        return self.witness is not None


def discriminant(f: QuadForm) -> int:
    return f.discriminant


def evaluate(f: QuadForm, x: int, y: int) -> int:
    return f(x, y)


def parse_form(text: str) -> QuadForm:
    """
    Parse "a,b,c" or "(a,b,c)".

    Raises:
        ParseError: If the text is not three integers
    """
    cells = text.strip().strip("()").split(",")
    if len(cells) != 3:
        raise ParseError(f"form needs three coefficients: {text!r}", token=text)
    values = []
    for cell in cells:
        try:
            values.append(int(cell.strip()))
        except ValueError:
            raise ParseError(f"not an integer: {cell.strip()!r}", token=cell.strip())
    return QuadForm(*values)


def check_discriminant(d: int, fundamental_shape: bool = True):
    """
    Raises:
        BadDiscriminant: If d <= 0, or d is not 0 or 1 mod 4 when required
        SquareDiscriminant: If d is a perfect square
    """
    if d <= 0:
        raise BadDiscriminant(f"discriminant must be positive, got {d}")
    if isqrt(d) ** 2 == d:
        raise SquareDiscriminant(f"discriminant {d} is a perfect square")
    if fundamental_shape and d % 4 not in (0, 1):
        raise BadDiscriminant(f"discriminant {d} is not 0 or 1 mod 4")


def check_form(f: QuadForm):
    check_discriminant(f.discriminant, fundamental_shape=False)
    if not f.is_primitive:
        raise NotPrimitive(f"{f} is not primitive")


def act(m: Mat, f: QuadForm) -> QuadForm:
    """
    Change of variables f∘m: x -> px + qy, y -> rx + sy.

    This is a right action: act(m1 @ m2, f) == act(m2, act(m1, f)).
    """
    p, q, r, s = m.as_tuple()
    a, b, c = f.as_tuple()
    return QuadForm(
        f(p, r),
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        f(q, s),
    )


def is_reduced(f: QuadForm) -> bool:
    """0 < b < √Δ and √Δ - b < 2|a| < √Δ + b."""
    d = f.discriminant
    b = f.b
    twice_a = 2 * abs(f.a)
    if b <= 0 or b * b >= d:
        return False
    if (twice_a + b) ** 2 <= d:
        return False
    return twice_a - b <= 0 or (twice_a - b) ** 2 < d


def _rho_step(f: QuadForm) -> Tuple[QuadForm, Mat]:
    a, b, c = f.as_tuple()
    d = f.discriminant
    n = 2 * abs(c)
    if c * c > d:
        b2 = (-b) % n
        if b2 > abs(c):
            b2 -= n
    else:
        s = isqrt(d)
        b2 = s - ((s + b) % n)
    t = (b + b2) // (2 * c)
    return QuadForm(c, b2, (b2 * b2 - d) // (4 * c)), Mat(0, -1, 1, t)


def rho(f: QuadForm) -> QuadForm:
    """One reduction step (a,b,c) -> (c, b', (b'² - Δ)/4c) with b' ≡ -b mod 2c."""
    return _rho_step(f)[0]


def reduce(f: QuadForm) -> Tuple[QuadForm, Mat]:
    """
    Reduce f by ρ steps.

    Returns:
        (g, m) with g reduced and act(m, f) == g

    Raises:
        NotPrimitive: If f is not primitive
        SquareDiscriminant: If the discriminant is a perfect square
    """
    check_form(f)
    g = f
    m = Mat.identity()
    steps = 0
    while not is_reduced(g):
        g, step = _rho_step(g)
        m = m @ step
        steps += 1
    logger.debug("reduced %s to %s in %d steps", f, g, steps)
    return g, m


def _cycle_from(g: QuadForm) -> List[QuadForm]:
    members = [g]
    nxt = rho(g)
    while nxt != g:
        members.append(nxt)
        nxt = rho(nxt)
    return members


def _canonical_rotation(members: Sequence[QuadForm]) -> Tuple[QuadForm, ...]:
    i = members.index(min(members))
    return tuple(members[i:]) + tuple(members[:i])


def cycle(f: QuadForm) -> FormClass:
    """The ρ-cycle of reduced forms equivalent to f."""
    g, _ = reduce(f)
    return FormClass(_canonical_rotation(_cycle_from(g)))


def equivalent(f1: QuadForm, f2: QuadForm) -> bool:
    """
    Whether f1 and f2 are PSL(2,Z)-equivalent.

    Raises:
        DiscriminantMismatch: If the discriminants differ
    """
    if f1.discriminant != f2.discriminant:
        raise DiscriminantMismatch(f"{f1} has discriminant {f1.discriminant}, {f2} has {f2.discriminant}")
    return cycle(f1) == cycle(f2)


def cycle_automorph(f: QuadForm) -> Mat:
    """
    Automorph of f from one turn around its cycle.

    The ρ matrices of the cycle multiply to an automorph of the reduced form;
    conjugating by the reduction matrix carries it back to f.
    """
    g, m = reduce(f)
    turn = Mat.identity()
    h = g
    while True:
        h, step = _rho_step(h)
        turn = turn @ step
        if h == g:
            break
    return m @ turn @ m.inverse()


def principal_form(d: int) -> QuadForm:
    """
    (1, σ, (σ - Δ)/4) with σ = Δ mod 2.

    Raises:
        BadDiscriminant: If Δ is not a valid non-square discriminant
    """
    check_discriminant(d)
    sigma = d % 2
    return QuadForm(1, sigma, (sigma - d) // 4)


def _reduced_forms_for(args: Tuple[int, Sequence[int]]) -> List[QuadForm]:
    d, b_values = args
    found = []
    for b in b_values:
        n = (d - b * b) // 4
        for k in divisors(n):
            for a in (k, -k):
                f = QuadForm(a, b, -n // a)
                if is_reduced(f) and f.is_primitive:
                    found.append(f)
    return found


def _b_values(d: int) -> List[int]:
    s = isqrt(d)
    return [b for b in range(1, s + 1) if (b - d) % 2 == 0 and b * b < d]


def reduced_forms(d: int, jobs: int = 1) -> List[QuadForm]:
    """
    All primitive reduced forms of discriminant d, sorted.

    Forms are enumerated per middle coefficient b; with jobs > 1 the b values
    are sharded across worker processes and the results merged.
    """
    check_discriminant(d)
    bs = _b_values(d)
    if jobs > 1 and len(bs) > 1:
        shards = [(d, bs[i::jobs]) for i in range(jobs)]
        logger.debug("sharding %d b values over %d workers", len(bs), jobs)
        with Pool(jobs) as pool:
            parts = pool.map(_reduced_forms_for, shards)
        forms = [f for part in parts for f in part]
    else:
        forms = _reduced_forms_for((d, bs))
    return sorted(forms)


def class_representatives(d: int, jobs: int = 1, limit: Optional[int] = None) -> List[FormClass]:
    """
    The ρ-cycles partitioning the reduced forms of discriminant d.

    Raises:
        BadDiscriminant: If d is not a valid non-square discriminant
        LimitExceeded: If d exceeds limit
    """
    if limit is not None and d > limit:
        raise LimitExceeded(f"discriminant {d} exceeds the limit {limit}")
    forms = reduced_forms(d, jobs=jobs)
    seen = set()
    classes = []
    for f in forms:
        if f in seen:
            continue
        members = _cycle_from(f)
        seen.update(members)
        classes.append(FormClass(_canonical_rotation(members)))
    return classes


def class_number(d: int, jobs: int = 1, limit: Optional[int] = None) -> int:
    """Number of PSL(2,Z)-classes of primitive forms of discriminant d."""
    return len(class_representatives(d, jobs=jobs, limit=limit))


def _primitive_vectors() -> Iterator[Tuple[int, int]]:
    r = 1
    while True:
        for x in range(-r, r + 1):
            for y in (-r, r) if abs(x) != r else range(-r, r + 1):
                if gcd(x, y) == 1:
                    yield x, y
        r += 1


def _column_matrix(x: int, y: int) -> Mat:
    u, v, _ = igcdex(x, y)
    return Mat(x, -int(v), y, int(u))


def _move_leading(f: QuadForm, coprime_to: int = 1) -> QuadForm:
    # equivalent form whose leading coefficient is positive and coprime to coprime_to
    if f.a > 0 and gcd(f.a, coprime_to) == 1:
        return f
    for x, y in _primitive_vectors():
        value = f(x, y)
        if value > 0 and gcd(value, coprime_to) == 1:
            return act(_column_matrix(x, y), f)


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """
    Gauss product of the classes of f1 and f2, as the least form of its cycle.

    Dirichlet composition: both forms are moved to coprime positive leading
    coefficients a1, a2 and a common middle coefficient B.

    Raises:
        DiscriminantMismatch: If the discriminants differ
    """
    if f1.discriminant != f2.discriminant:
        raise DiscriminantMismatch(f"{f1} has discriminant {f1.discriminant}, {f2} has {f2.discriminant}")
    check_form(f1)
    check_form(f2)
    d = f1.discriminant
    g1 = _move_leading(f1)
    g2 = _move_leading(f2, coprime_to=g1.a)
    a1, a2 = g1.a, g2.a
    k = ((g1.b - g2.b) // 2) * pow(a2, -1, a1) % a1 if a1 > 1 else 0
    big_b = g2.b + 2 * a2 * k
    product = QuadForm(a1 * a2, big_b, (big_b * big_b - d) // (4 * a1 * a2))
    return cycle(product).representative


def pell_fundamental(d: int) -> PellSolution:
    """
    Least positive (t, u) with t² - d·u² = 4, from a continued fraction.

    For d ≡ 0, 1 mod 4 the expansion of (σ + √d)/2 is used; otherwise u is
    even and the solution doubles that of x² - d·y² = 1.

    Raises:
        SquareDiscriminant: If d is a perfect square
        BadDiscriminant: If d <= 0
    """
    check_discriminant(d, fundamental_shape=False)
    if d % 4 in (0, 1):
        sigma = d % 2
        for p, q in _convergents(d, sigma, 2):
            t, u = 2 * p - sigma * q, q
            if t * t - d * u * u == 4:
                return PellSolution(d, t, u)
    for p, q in _convergents(d, 0, 1):
        if p * p - d * q * q == 1:
            return PellSolution(d, 2 * p, 2 * q)


def _convergents(d: int, p0: int, q0: int) -> Iterator[Tuple[int, int]]:
    # continued fraction of (p0 + √d)/q0, with q0 dividing d - p0²
    s = isqrt(d)
    big_p, big_q = p0, q0
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    while True:
        if big_q > 0:
            a = (big_p + s) // big_q
        else:
            a = -((big_p + s) // -big_q + 1)
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield h, k
        big_p = a * big_q - big_p
        big_q = (d - big_p * big_p) // big_q


def minimum(f: QuadForm) -> int:
    """
    Least positive value of f on nonzero integer pairs.

    Away from the river of the topograph values only climb, so the least
    positive value is a positive leading coefficient of the cycle.
    """
    return min(g.a for g in cycle(f) if g.a > 0)


def _walk_to(start: QuadForm, target: QuadForm) -> Mat:
    # matrix taking start to target along the cycle
    m = Mat.identity()
    g = start
    while g != target:
        g, step = _rho_step(g)
        m = m @ step
    return m


def _candidates(d: int, n: int) -> Iterator[Tuple[int, QuadForm]]:
    for k in range(1, isqrt(abs(n)) + 1):
        if n % (k * k):
            continue
        m = n // (k * k)
        modulus = 4 * abs(m)
        roots = sorted(set(sqrt_mod(d % modulus, modulus, all_roots=True) or []))
        for beta in roots:
            if beta >= 2 * abs(m):
                continue
            candidate = QuadForm(m, beta, (beta * beta - d) // (4 * m))
            if candidate.is_primitive:
                yield k, candidate


def _witness(f: QuadForm, candidate: QuadForm, k: int) -> Tuple[int, int]:
    g_f, m_f = reduce(f)
    g_c, m_c = reduce(candidate)
    p = m_f @ _walk_to(g_f, g_c) @ m_c.inverse()
    return (k * p.p, k * p.r)


def representations(f: QuadForm, n: int) -> List[Tuple[int, int]]:
    """
    One solution of f(x,y) = n for each orbit under the automorphs of f.

    Raises:
        ZeroTarget: If n is 0
    """
    if n == 0:
        raise ZeroTarget("representations of 0 are not supported")
    target = cycle(f)
    found = []
    for k, candidate in _candidates(f.discriminant, n):
        if cycle(candidate) == target:
            found.append(_witness(f, candidate, k))
    return found


def represents(f: QuadForm, n: int) -> Representation:
    """
    Decide whether f(x,y) = n has an integer solution.

    Each representation of n with gcd(x,y) = k gives a form (n/k², β, ·)
    equivalent to f, with β² ≡ Δ mod 4|n/k²| and 0 <= β < 2|n/k²|. Those
    candidates are compared with the cycle of f; a match is turned into a
    witness through the reduction matrices.

    Raises:
        ZeroTarget: If n is 0
    """
    if n == 0:
        raise ZeroTarget("representations of 0 are not supported")
    check_form(f)
    if f(1, 0) == n:
        return Representation(n, (1, 0))
    if f(0, 1) == n:
        return Representation(n, (0, 1))
    target = cycle(f)
    checked = []
    for k, candidate in _candidates(f.discriminant, n):
        if cycle(candidate) == target:
            return Representation(n, _witness(f, candidate, k))
        checked.append(candidate)
    return Representation(n, None, tuple(checked))


def class_table(d: int, jobs: int = 1, limit: Optional[int] = None) -> Dict[Tuple[QuadForm, QuadForm], QuadForm]:
    """Composition table on the class representatives of discriminant d."""
    reps = [c.representative for c in class_representatives(d, jobs=jobs, limit=limit)]
    return {(x, y): compose(x, y) for x in reps for y in reps}
